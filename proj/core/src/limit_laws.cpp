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

#include "tailboot/limit_laws.hpp"

#include <algorithm>
#include <cmath>

#include "tailboot/errors.hpp"
#include "tailboot/numeric.hpp"
#include "tailboot/parallel.hpp"
#include "tailboot/rng.hpp"

namespace tailboot {

namespace {

void fill_wiener(WienerPath& path, std::size_t grid_size, std::uint64_t seed) {
    path.seed = seed;
    path.grid.resize(grid_size);
    path.values.resize(grid_size);
    const double m = static_cast<double>(grid_size);
    Rng rng(seed);
    double w = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double s = static_cast<double>(j + 1) / m;
        w += rng.normal() * std::sqrt(s - prev);
        path.grid[j] = s;
        path.values[j] = w;
        prev = s;
    }
}

}  // namespace

WienerPath sample_wiener(std::size_t grid_size, std::uint64_t seed) {
    if (grid_size < 2) throw ConfigError("sample_wiener requires grid_size >= 2");
    WienerPath path;
    fill_wiener(path, grid_size, seed);
    return path;
}

LimitFunctionalEvaluator::LimitFunctionalEvaluator(double gamma,
                                                   std::span<const double> grid)
    : gamma_(gamma),
      gamma_minus_(std::min(0.0, gamma)),
      gamma_plus_(std::max(0.0, gamma)) {
    const std::size_t m = grid.size();
    p_weight_.resize(m);
    q_weight_.resize(m);
    double prev = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double s = grid[j];
        const double dt = s - prev;
        const double mid = 0.5 * (prev + s);
        const double kernel = std::pow(mid, -(gamma_minus_ + 1.0));
        // (mid^(-g-) - 1)/g-, continuous at g- = 0 where it is -log(mid).
        const double log_mid = std::log(mid);
        const double g = std::abs(gamma_minus_) <= kGammaSwitchTol
                             ? -log_mid
                             : std::expm1(-gamma_minus_ * log_mid) / gamma_minus_;
        p_weight_[j] = dt * kernel;
        q_weight_[j] = 2.0 * dt * g * kernel;
        p_w1_ += dt;
        q_w1_ += 2.0 * dt * g;
        prev = s;
    }
}

LimitFunctionals LimitFunctionalEvaluator::evaluate(const WienerPath& path) const {
    const std::size_t m = path.grid.size();
    double sum_p = 0.0;
    double sum_q = 0.0;
    double prev_w = 0.0;  // W(0) = 0
    for (std::size_t j = 0; j < m; ++j) {
        const double w_mid = 0.5 * (prev_w + path.values[j]);
        sum_p += p_weight_[j] * w_mid;
        sum_q += q_weight_[j] * w_mid;
        prev_w = path.values[j];
    }
    const double w1 = path.values.back();

    LimitFunctionals f;
    f.B = w1;
    f.P = sum_p - w1 * p_w1_;
    f.Q = sum_q - w1 * q_w1_;
    const double om = 1.0 - gamma_minus_;   // 1 - g-
    const double o2 = 1.0 - 2.0 * gamma_minus_;
    f.R = om * om * o2 * (0.5 * o2 * f.Q - 2.0 * f.P);
    f.Gamma = gamma_plus_ * f.P + f.R;
    f.A = gamma_plus_ * f.B + om * (3.0 - 4.0 * gamma_minus_) * f.P -
          0.5 * om * o2 * o2 * f.Q;
    return f;
}

double LimitFunctionalEvaluator::first_cell_p(const WienerPath& path) const {
    return p_weight_.front() * 0.5 * path.values.front();
}

LimitFunctionals limit_functionals(const WienerPath& path, double gamma) {
    return LimitFunctionalEvaluator(gamma, path.grid).evaluate(path);
}

LimitLawDraws limit_law_sample(double gamma, std::size_t paths, std::size_t grid_size,
                               std::uint64_t seed, std::size_t workers) {
    if (grid_size < 2) throw ConfigError("limit_law_sample requires grid_size >= 2");
    LimitLawDraws out;
    out.gamma = gamma;
    out.grid_size = grid_size;
    out.seed = seed;
    out.draws.resize(paths);
    if (paths == 0) return out;

    // The uniform grid is shared by every path; build weights once.
    std::vector<double> grid(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        grid[j] = static_cast<double>(j + 1) / static_cast<double>(grid_size);
    }
    const LimitFunctionalEvaluator eval(gamma, grid);

    workers = std::max<std::size_t>(workers, 1);
    const std::size_t chunk = (paths + workers - 1) / workers;
    parallel_for(workers, workers, [&](std::size_t w) {
        WienerPath path;  // reused across this worker's paths
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(paths, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            fill_wiener(path, grid_size, derive_key(seed, i));
            out.draws[i] = eval.evaluate(path);
        }
    });
    return out;
}

}  // namespace tailboot
