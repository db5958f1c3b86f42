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

#include <span>
#include <vector>

namespace tailboot {

/// Standard normal distribution function Phi(x).
double normal_cdf(double x);

/// Inverse of Phi. Acklam's rational approximation polished with one
/// Halley step against the erfc-based CDF; accurate to ~1 ulp over (0, 1).
/// Returns -inf at p == 0 and +inf at p == 1.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation (Lentz). Domain: a, b > 0 and x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// One-sample Kolmogorov-Smirnov distance between `sorted_data` (ascending)
/// and the distribution function evaluated by `cdf`.
double ks_distance(std::span<const double> sorted_data,
                   const std::vector<double>& cdf_at_data);

/// Two-sample Kolmogorov-Smirnov distance between two ascending samples.
double ks_distance_two_sample(std::span<const double> sorted_a,
                              std::span<const double> sorted_b);

/// Sample mean.
double mean_of(std::span<const double> xs);

/// Unbiased sample variance (denominator n-1).
double variance_of(std::span<const double> xs);

}  // namespace tailboot
