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
#include <limits>
#include <optional>
#include <vector>

#include "tailboot/tail_functions.hpp"

namespace tailboot {

/// Tail statistic evaluated on each bootstrap replicate.
enum class Statistic { TailProb, HighQuantile, GammaHat, ScaleA, LocB };

struct StatisticSpec {
    Statistic kind = Statistic::GammaHat;
    /// x_target for TailProb, p_target for HighQuantile; unused otherwise.
    double target = 0.0;
};

/// Full-sample (n-out-of-n, with replacement) resampling plan.
///
/// Replicate r draws from the stream keyed by derive_key(master_seed, r),
/// so results are bitwise reproducible and independent of how replicates
/// are scheduled across workers.
struct ResamplePlan {
    std::uint64_t master_seed = 0;
    std::size_t replicates = 1000;
    StatisticSpec statistic{};
};

/// Per-replicate refit summary kept alongside the sorted statistic values.
struct BootstrapReplicate {
    double value = 0.0;    ///< the chosen statistic on this replicate
    double gamma = 0.0;    ///< replicate tail index
    double scale_a = 0.0;  ///< replicate scale
    double loc_b = 0.0;    ///< replicate threshold order statistic
    /// Statistic-specific pivot normalizer: w_gamma*(d_hat*) for TailProb,
    /// a* q_gamma*(d) for HighQuantile, NaN otherwise (or when undefined).
    double norm = std::numeric_limits<double>::quiet_NaN();
    bool clamped = false;
};

struct BootstrapDistribution {
    TailFit base_fit;
    ResamplePlan plan;
    /// Successful replicate statistic values, sorted ascending.
    std::vector<double> values;
    /// Successful replicates in replicate order (for studentized pivots).
    std::vector<BootstrapReplicate> records;
    std::size_t failures = 0;
    std::size_t clamp_count = 0;
};

enum class CiMethod { EfronPercentile, Percentile, StudentT, AsymptoticNormal };

struct CiDiagnostics {
    std::size_t boot_failures = 0;      ///< replicates that failed to refit
    std::size_t ci_excluded = 0;        ///< additional replicates unusable for this CI
    std::size_t clamped_replicates = 0; ///< replicates where the estimator clamped
    std::size_t used = 0;               ///< replicates the quantiles are built from
    bool upper_capped = false;
    bool lower_floored = false;
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    CiMethod method = CiMethod::EfronPercentile;
    CiDiagnostics diagnostics{};
};

/// Options threaded through the CI constructions.
struct CiOptions {
    /// Depth argument of w in the probability pivots. Defaults to the
    /// estimated k/(n p_hat); a simulation that knows the true p_n can
    /// override it with k/(n p_n).
    std::optional<double> depth_override{};
    /// Normalize each replicate pivot with its own w_gamma*(d_hat*) instead
    /// of the fixed base w.
    bool replicate_scaling = false;
    std::size_t workers = 1;
};

/// Which side of the pivot normalizer to use when comparing laws.
enum class PivotScaling { Base, Replicate };

/// One resample: n draws with replacement from the sample's values,
/// deterministic in `seed`.
Sample resample(const Sample& sample, std::uint64_t seed);

/// Order-statistic quantile of an ascending vector: z_(ceil(alpha B)),
/// clamped into [1, B]. Total and monotone; quantile(0) is the minimum and
/// quantile(1) the maximum.
double empirical_quantile(const std::vector<double>& sorted_values, double alpha);

/// Refits the chosen statistic on `plan.replicates` resamples at the same k.
/// Replicates that fail (non-positive or degenerate tails) are counted in
/// `failures` and excluded from `values`. Throws AllReplicatesFailed when no
/// replicate produces a value (or the base sample itself cannot be fit).
BootstrapDistribution bootstrap_distribution(const Sample& sample, std::size_t k,
                                             const ResamplePlan& plan,
                                             std::size_t workers = 1);

/// Same as bootstrap_distribution for several k at once; replicate r uses
/// one shared resample across all entries of k_grid, and the result for
/// each k is bitwise identical to the single-k call with the same plan.
std::vector<BootstrapDistribution> bootstrap_distribution_multi_k(
    const Sample& sample, const std::vector<std::size_t>& k_grid,
    const ResamplePlan& plan, std::size_t workers = 1);

namespace detail {
/// Non-throwing multi-k driver for harness loops: entry j is empty when the
/// base fit failed at k_grid[j] or no replicate succeeded there. Still
/// throws BadK / ConfigError for malformed inputs.
std::vector<std::optional<BootstrapDistribution>> bootstrap_multi_k(
    const Sample& sample, const std::vector<std::size_t>& k_grid,
    const ResamplePlan& plan, std::size_t workers);
}  // namespace detail

/// Efron percentile interval: (alpha/2, 1-alpha/2) empirical quantiles of
/// the replicate values themselves.
ConfidenceInterval ci_efron_percentile(const BootstrapDistribution& boot, double level);

/// Percentile interval for a tail probability, built from quantiles of the
/// log-ratio pivot sqrt(k) log(p*/p_hat) / w. Replicates with p* == 0 are
/// excluded. Algebraically the bounds reduce to p_hat^2 / p*-quantiles.
ConfidenceInterval ci_percentile(const BootstrapDistribution& boot,
                                 const ProbabilityEstimate& base, double level,
                                 const CiOptions& opts = {});

/// t interval for a tail probability. In literal mode (studentized=false)
/// the pivot carries the constant sigma(gamma_hat), which cancels exactly,
/// so the interval equals ci_percentile and is computed as such. The default
/// studentized mode divides each replicate pivot by sigma(gamma*) instead;
/// replicates with gamma* <= -1/2 are excluded.
ConfidenceInterval ci_t(const BootstrapDistribution& boot,
                        const ProbabilityEstimate& base, double level,
                        bool studentized = true, const CiOptions& opts = {});

/// Closed-form interval from the asymptotic normality of the probability
/// pivot: (p_hat/(1 + z s), p_hat/(1 - z s)) with
/// s = sigma(gamma_hat) w_gamma_hat(d_hat) / sqrt(k). The upper bound is
/// capped at 1 (flagged), including when 1 - z s <= 0.
ConfidenceInterval ci_asymptotic(const ProbabilityEstimate& base, double level,
                                 const CiOptions& opts = {});

/// One-call facade: fit, resample, and build the requested interval.
/// Percentile / t / asymptotic methods require a TailProb statistic; the
/// Efron percentile interval applies to any statistic.
ConfidenceInterval bootstrap_ci_for(const Sample& sample, std::size_t k,
                                    const StatisticSpec& statistic, CiMethod method,
                                    std::size_t replicates, std::uint64_t seed,
                                    double level, const CiOptions& opts = {},
                                    bool studentized = true);

/// Sorted pivot values of the bootstrap law matching the statistic:
///   GammaHat:     sqrt(k) (gamma* - gamma_hat)
///   ScaleA:       sqrt(k) (a*/a - 1)
///   LocB:         sqrt(k) (b* - b_hat) / a   (/ a* under Replicate scaling)
///   HighQuantile: sqrt(k) (x* - x_hat) / (a q_gamma(d))   [Base]
///                 sqrt(k) (x* - x_hat) / (a* q_gamma*(d)) [Replicate]
///   TailProb:     sqrt(k) (p*/p_hat - 1) / w              [Base|Replicate]
std::vector<double> pivot_values(const BootstrapDistribution& boot,
                                 PivotScaling scaling = PivotScaling::Replicate);

}  // namespace tailboot
