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

#include "tailboot/tail_functions.hpp"

#include <cmath>
#include <limits>

#include "tailboot/errors.hpp"
#include "tailboot/numeric.hpp"

namespace tailboot {
namespace detail {

namespace {

// Both q and w reduce to L^2 * f(x) with x = gamma * L, L = log t:
//   q: f(x) = sum_{m>=0} x^m / (m! (m+2))        = 1/2 + x/3 + x^2/8 + ...
//   w: f(x) = sum_{m>=0} (-x)^m / (m+2)!          = 1/2 - x/6 + x^2/24 - ...
// The closed forms lose ~|eps/x| relative accuracy near x = 0, so below
// |x| = 0.1 the truncated series (error < 1e-13 there) takes over.
constexpr double kSeriesSwitch = 0.1;

double q_series(double x) {
    double term = 1.0;  // x^m / m!
    double acc = 0.0;
    for (int m = 0; m <= 12; ++m) {
        acc += term / (m + 2);
        term *= x / (m + 1);
    }
    return acc;
}

double w_series(double x) {
    double term = 1.0;
    double acc = 0.0;
    for (int m = 0; m <= 12; ++m) {
        acc += term;
        term *= -x / (m + 3);
    }
    return acc * 0.5;  // leading 1/2! factored out
}

}  // namespace

double q_gamma_log(double gamma, double log_t) {
    if (log_t == 0.0) return 0.0;
    if (std::abs(gamma) <= kGammaSwitchTol) return 0.5 * log_t * log_t;
    const double x = gamma * log_t;
    if (std::abs(x) <= kSeriesSwitch) return log_t * log_t * q_series(x);
    const double e = std::expm1(x);  // t^gamma - 1
    return (x * e - (e - x)) / (gamma * gamma);
}

double w_gamma_log(double gamma, double log_t) {
    if (log_t == 0.0) return 0.0;
    if (std::abs(gamma) <= kGammaSwitchTol) return 0.5 * log_t * log_t;
    const double x = gamma * log_t;
    if (std::abs(x) <= kSeriesSwitch) return log_t * log_t * w_series(x);
    return (std::expm1(-x) + x) / (gamma * gamma);
}

}  // namespace detail

double q_gamma(double gamma, double t) {
    if (!(t >= 1.0)) throw BadT("q_gamma requires t >= 1");
    return detail::q_gamma_log(gamma, std::log(t));
}

double w_gamma(double gamma, double t) {
    if (!(t >= 1.0)) throw BadT("w_gamma requires t >= 1");
    return detail::w_gamma_log(gamma, std::log(t));
}

double sigma_sq(double gamma) {
    if (!(gamma > -0.5)) throw OutOfDomain("sigma_sq requires gamma > -1/2");
    if (gamma >= 0.0) return gamma * gamma + 1.0;
    const double om = 1.0 - gamma;
    const double num = om * om * (1.0 - 3.0 * gamma + 4.0 * gamma * gamma);
    const double den = (1.0 - 2.0 * gamma) * (1.0 - 3.0 * gamma) * (1.0 - 4.0 * gamma);
    return num / den;
}

QuantileEstimate estimate_high_quantile(const TailFit& fit, double p_target) {
    if (!(p_target > 0.0 && p_target < 1.0)) {
        throw OutOfDomain("estimate_high_quantile requires 0 < p < 1");
    }
    QuantileEstimate est;
    est.p_target = p_target;
    est.fit = fit;
    est.d_n = static_cast<double>(fit.k) / (static_cast<double>(fit.n) * p_target);
    est.in_sample = est.d_n < 1.0;
    est.x_hat = fit.loc_b + fit.scale_a * pow_ratio(fit.gamma, est.d_n);
    est.scale_factor = fit.scale_a * detail::q_gamma_log(fit.gamma, std::log(est.d_n));
    return est;
}

ProbabilityEstimate estimate_tail_probability(const TailFit& fit, double x_target) {
    ProbabilityEstimate est;
    est.x_target = x_target;
    est.fit = fit;

    const double k_over_n = static_cast<double>(fit.k) / static_cast<double>(fit.n);
    const double u = (x_target - fit.loc_b) / fit.scale_a;
    const double gamma = fit.gamma;

    double p;
    if (std::abs(gamma) <= kGammaSwitchTol) {
        p = k_over_n * std::exp(-u);
    } else {
        const double arg = gamma * u;
        if (arg <= -1.0) {
            // max{0, 1 + gamma u} branch: beyond the estimated endpoint for
            // gamma < 0, a 0^(negative power) blow-up for gamma > 0.
            est.clamped = true;
            p = gamma < 0.0 ? 0.0 : 1.0;
        } else {
            // (1 + gamma u)^(-1/gamma) through log1p keeps the gamma -> 0
            // branches consistent to machine precision.
            p = k_over_n * std::exp(-std::log1p(arg) / gamma);
        }
    }
    if (p > 1.0) {
        p = 1.0;
        est.clamped = true;
    }
    est.p_hat = p;
    est.d_hat = p > 0.0
                    ? static_cast<double>(fit.k) / (static_cast<double>(fit.n) * p)
                    : std::numeric_limits<double>::infinity();
    return est;
}

}  // namespace tailboot
