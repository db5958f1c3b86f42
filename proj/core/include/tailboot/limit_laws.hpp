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

#include <cstdint>
#include <span>
#include <vector>

namespace tailboot {

/// Discretized standard Wiener path on (0, 1]: values[j] = W(grid[j]), built
/// as a cumulative sum of independent Gaussian increments with variances
/// equal to the grid spacings. W(0) = 0 is implicit.
struct WienerPath {
    std::vector<double> grid;    ///< strictly increasing, ends at 1
    std::vector<double> values;  ///< W on the grid
    std::uint64_t seed = 0;
};

WienerPath sample_wiener(std::size_t grid_size, std::uint64_t seed);

/// Joint draw of the Wiener integrals that arise as the limiting laws of
/// the tail estimators. With g- = min(0, gamma), g+ = max(0, gamma), and
/// Z(s) = W(s)/s^(g-+1) - W(1):
///
///   P     = int_0^1 Z(s) ds
///   Q     = 2 int_0^1 ((s^(-g-) - 1)/g-) Z(s) ds    (-log s at g- = 0)
///   R     = (1-g-)^2 (1-2g-) ((1-2g-) Q/2 - 2 P)
///   Gamma = g+ P + R                                 (tail-index pivot)
///   A     = g+ B + (1-g-)(3-4g-) P - (1-g-)(1-2g-)^2 Q / 2   (scale pivot)
///   B     = W(1)                                     (threshold pivot)
///
/// The probability / quantile pivot limit is Gamma + g-^2 B - g- A.
struct LimitFunctionals {
    double P = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double Gamma = 0.0;
    double A = 0.0;
    double B = 0.0;
};

/// Precomputes the quadrature weights for one (gamma, grid) pair so that an
/// ensemble of paths over the same grid costs one multiply-add per cell.
/// Integration is the composite midpoint rule on the cells between grid
/// points (the first cell touches 0), with W linearly interpolated at cell
/// midpoints; the weight is never evaluated at the singular point s = 0.
class LimitFunctionalEvaluator {
public:
    LimitFunctionalEvaluator(double gamma, std::span<const double> grid);

    LimitFunctionals evaluate(const WienerPath& path) const;

    /// Midpoint-rule contribution of the cell touching 0 to P (used by the
    /// discretization-convergence checks).
    double first_cell_p(const WienerPath& path) const;

private:
    double gamma_;
    double gamma_minus_;
    double gamma_plus_;
    std::vector<double> p_weight_;  // dt * mid^-(g-+1) per cell
    std::vector<double> q_weight_;  // 2 dt g(mid) mid^-(g-+1) per cell
    double p_w1_ = 0.0;             // total weight multiplying -W(1) in P
    double q_w1_ = 0.0;             // total weight multiplying -W(1) in Q
};

/// Convenience wrapper for a single path.
LimitFunctionals limit_functionals(const WienerPath& path, double gamma);

struct LimitLawDraws {
    double gamma = 0.0;
    std::size_t grid_size = 0;
    std::uint64_t seed = 0;
    std::vector<LimitFunctionals> draws;
};

/// Ensemble of `paths` independent functional draws; path i runs on the
/// stream keyed by derive_key(seed, i), so the ensemble is deterministic and
/// independent of the worker count.
LimitLawDraws limit_law_sample(double gamma, std::size_t paths, std::size_t grid_size,
                               std::uint64_t seed, std::size_t workers = 1);

}  // namespace tailboot
