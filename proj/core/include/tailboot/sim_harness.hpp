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
#include <string>
#include <string_view>
#include <vector>

#include "tailboot/bootstrap.hpp"

namespace tailboot {

enum class Family { StudentT, Frechet, Exponential, StdNormal, Beta, Pareto };

/// One of the test distributions: Student t(df), Frechet(alpha),
/// Exponential(rate), N(0,1), Beta(a,b), Pareto(alpha).
class ModelSpec {
public:
    static ModelSpec student_t(double df);
    static ModelSpec frechet(double alpha);
    static ModelSpec exponential(double rate);
    static ModelSpec std_normal();
    static ModelSpec beta(double a, double b);
    static ModelSpec pareto(double alpha);

    /// Parses "t:4", "frechet:2", "exp:5", "normal", "beta:2,10",
    /// "pareto:1.5". Throws ConfigError on anything else.
    static ModelSpec parse(std::string_view text);

    Family family() const noexcept { return family_; }
    double param1() const noexcept { return p1_; }
    double param2() const noexcept { return p2_; }

    /// Extreme value index of the family: 1/df for t, 1/alpha for Frechet
    /// and Pareto, 0 for exponential and normal, -1/b for Beta(a, b).
    double true_gamma() const noexcept;

    double cdf(double x) const;

    /// Canonical parseable name, e.g. "frechet:2".
    std::string name() const;

private:
    ModelSpec(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}
    Family family_;
    double p1_;
    double p2_;
};

/// n i.i.d. draws from the model; inverse transforms where the quantile has
/// a closed form, standard normal/chi-square/gamma transforms otherwise.
/// Deterministic per seed.
Sample draw(const ModelSpec& model, std::size_t n, std::uint64_t seed);

/// Upper tail quantile x = F^-1(1 - p). Closed form where available,
/// otherwise bisection on the distribution function to 1e-12 relative.
double true_tail_quantile(const ModelSpec& model, double p);

struct StudyConfig {
    ModelSpec model = ModelSpec::frechet(1.0);
    std::size_t n = 1000;
    double np_n = 0.5;  ///< p_n = np_n / n
    std::vector<std::size_t> k_grid;
    std::size_t replicates = 1000;  ///< bootstrap resamples per trial (B)
    std::size_t mc_reps = 1000;
    double level = 0.95;
    std::vector<CiMethod> methods;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
    CiOptions ci_options{};
    bool studentized = true;
    /// Scale the probability pivots with the known simulation depth
    /// d = k/(n p_n) instead of the estimated k/(n p_hat).
    bool use_true_depth = false;
};

struct CoverageCell {
    std::size_t k = 0;
    CiMethod method = CiMethod::EfronPercentile;
    std::size_t contain = 0;
    std::size_t miss = 0;
    std::size_t failures = 0;  ///< trials with no interval for this cell
    /// contain / (contain + miss); 0 when no interval was produced.
    double coverage = 0.0;
    /// Mean of log(upper/lower) over produced intervals with lower > 0.
    double mean_log_length = 0.0;
    std::size_t log_length_count = 0;
    /// Mean of (upper - lower) over produced intervals.
    double mean_raw_length = 0.0;
};

struct CoverageReport {
    StudyConfig config;
    double p_n = 0.0;       ///< target tail probability np_n / n
    double x_target = 0.0;  ///< F^-1(1 - p_n)
    std::vector<CoverageCell> cells;  ///< one per (k, method), k-major order
};

/// Monte-Carlo coverage study: per trial, draw a fresh sample, estimate the
/// tail probability at the true quantile x_target for every k, build the
/// requested intervals, and record whether each contains the true p_n.
/// Per-trial failures are counted, never abort the study. Deterministic per
/// master_seed and invariant to `workers`.
CoverageReport coverage_study(const StudyConfig& config);

struct SweepRow {
    std::size_t k = 0;
    bool ok = false;
    std::string error;  ///< failure reason when !ok
    double p_hat = 0.0;
    bool clamped = false;
    ConfidenceInterval bootstrap_ci{};
    ConfidenceInterval asymptotic_ci{};
};

/// Per-k table of tail-probability estimates with bootstrap and asymptotic
/// intervals, sharing one set of resamples across the whole grid.
/// `method` selects the bootstrap interval construction (Efron percentile,
/// percentile, or t).
std::vector<SweepRow> k_sweep(const Sample& sample, double x_target,
                              const std::vector<std::size_t>& k_grid,
                              std::size_t replicates, double level,
                              std::uint64_t seed,
                              CiMethod method = CiMethod::Percentile,
                              const CiOptions& opts = {}, bool studentized = true);

/// Round-trip helpers between CiMethod and the CLI / report spelling
/// ("efron", "percentile", "t", "asymptotic").
std::string method_name(CiMethod method);
CiMethod method_from_name(std::string_view name);

}  // namespace tailboot
