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

#include <cstddef>

#include "tailboot/sample.hpp"

namespace tailboot {

/// Moment (Dekkers-Einmahl-de Haan) fit of the right tail at threshold k.
///
/// Built from the k log-spacings over the intermediate order statistic
/// X_{n-k,n}:
///
///   H = mean of  log X_{n-i,n} - log X_{n-k,n},   i = 0..k-1
///   M = mean of (log X_{n-i,n} - log X_{n-k,n})^2
///
///   gamma_plus  = H
///   gamma_minus = 1 - (1/2) / (1 - H^2/M)
///   gamma       = gamma_plus + gamma_minus
///   scale_a     = X_{n-k,n} * H * (1 - gamma_minus)
///   loc_b       = X_{n-k,n}
///
/// gamma_minus is not clamped to <= 0; the finite-sample value can exceed 0.
struct TailFit {
    std::size_t n = 0;
    std::size_t k = 0;
    double h_n = 0.0;
    double m_n = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma = 0.0;
    double scale_a = 0.0;
    double loc_b = 0.0;
};

enum class FitStatus { Ok, BadK, NonPositiveTail, DegenerateTail };

/// Non-throwing fit; used in resampling loops where failures are counted
/// rather than raised.
FitStatus try_fit_tail(const Sample& sample, std::size_t k, TailFit& out) noexcept;

/// Fits the tail at threshold k (1 <= k <= n-1).
///
/// Throws BadK, NonPositiveTail (order_stat(n-k) <= 0, logs undefined), or
/// DegenerateTail (top k+1 order statistics carry no usable spread).
/// Sums H and M with compensated accumulation so the result matches direct
/// extended-precision summation to ~1e-15 relative even for k ~ 1e5.
TailFit fit_tail(const Sample& sample, std::size_t k);

/// gamma_minus as a function of the two log-spacing moments. Substituting
/// the population values H -> 1/(1-g), M -> 2/((1-g)(1-2g)) returns g
/// exactly for every g <= 0.
double gamma_minus_from_moments(double h, double m);

}  // namespace tailboot
