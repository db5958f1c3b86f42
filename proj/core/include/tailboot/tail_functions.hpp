/*
   Copyright 2026 the tailboot authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "tailboot/evt_core.hpp"

namespace tailboot {

/// q_gamma(t) = integral over [1, t] of s^(gamma-1) log s ds, for t >= 1.
///
/// Closed form (t^gamma (gamma log t - 1) + 1) / gamma^2, evaluated through
/// expm1 and a short series so no accuracy is lost when gamma*log(t) is
/// small; exactly (log t)^2 / 2 for |gamma| <= kGammaSwitchTol.
double q_gamma(double gamma, double t);

/// w_gamma(t) = t^(-gamma) q_gamma(t) via the fused form
/// (t^(-gamma) - 1 + gamma log t) / gamma^2, same small-gamma handling.
double w_gamma(double gamma, double t);

/// Asymptotic variance of the normalized tail-probability pivot:
/// gamma^2 + 1 for gamma >= 0, and
/// (1-g)^2 (1-3g+4g^2) / ((1-2g)(1-3g)(1-4g)) for -1/2 < g < 0.
/// Throws OutOfDomain for gamma <= -1/2.
double sigma_sq(double gamma);

namespace detail {
// q/w on log-t argument, valid for any finite log_t (analytic continuation
// below t = 1, used for in-sample extrapolation depths).
double q_gamma_log(double gamma, double log_t);
double w_gamma_log(double gamma, double log_t);
}  // namespace detail

/// High-quantile estimate x_hat(p) = b + a (d^gamma - 1)/gamma with
/// extrapolation depth d = k/(n p).
struct QuantileEstimate {
    double p_target = 0.0;
    double x_hat = 0.0;
    double d_n = 0.0;
    /// a * q_gamma(d): the pivot normalizer recorded for law comparisons.
    double scale_factor = 0.0;
    /// Set when d < 1, i.e. p_target > k/n and the "quantile" sits inside
    /// the top-k range rather than beyond it.
    bool in_sample = false;
    TailFit fit;
};

QuantileEstimate estimate_high_quantile(const TailFit& fit, double p_target);

/// Tail-probability estimate
/// p_hat(x) = (k/n) (max{0, 1 + gamma (x-b)/a})^(-1/gamma),
/// with the gamma -> 0 limit (k/n) exp(-(x-b)/a).
///
/// Total on all inputs: the max{0,.} branch and the [0, 1] cap replace
/// errors, and `clamped` records that either fired.
struct ProbabilityEstimate {
    double x_target = 0.0;
    double p_hat = 0.0;
    /// k / (n p_hat); +inf when p_hat == 0.
    double d_hat = 0.0;
    bool clamped = false;
    TailFit fit;
};

ProbabilityEstimate estimate_tail_probability(const TailFit& fit, double x_target);

}  // namespace tailboot
