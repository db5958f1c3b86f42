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

#include "tailboot/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailboot/errors.hpp"
#include "tailboot/numeric.hpp"
#include "tailboot/parallel.hpp"
#include "tailboot/rng.hpp"
#include "tailboot/stats.hpp"

namespace tailboot {

namespace {

double base_depth(const ProbabilityEstimate& base, const CiOptions& opts) {
    return opts.depth_override.value_or(base.d_hat);
}

// p_hat * exp(-zeta * sigma_ratio * w_over_sqrt_k). Shared by the
// percentile and t constructions so that the constant-sigma case reproduces
// the percentile bounds bit for bit.
double percentile_bound(double p_hat, double zeta, double sigma_ratio,
                        double w_over_sqrt_k) {
    return p_hat * std::exp(-zeta * sigma_ratio * w_over_sqrt_k);
}

struct PivotEntry {
    double key = 0.0;    // sorted on this
    double zeta = 0.0;   // raw log-ratio pivot
    double sigma = 1.0;  // replicate sigma (studentized mode)
};

// Order-statistic selection, same index rule as empirical_quantile but on
// pre-sorted pivot entries.
const PivotEntry& select_entry(const std::vector<PivotEntry>& sorted, double alpha) {
    const auto count = static_cast<double>(sorted.size());
    const double x = alpha * count;
    const double snapped = std::nearbyint(x);
    std::size_t idx;
    if (std::abs(x - snapped) <= 1e-9 * std::max(1.0, std::abs(x))) {
        idx = static_cast<std::size_t>(snapped);
    } else {
        idx = static_cast<std::size_t>(std::ceil(x));
    }
    idx = std::clamp<std::size_t>(idx, 1, sorted.size());
    return sorted[idx - 1];
}

void require_level(double level) {
    if (!(level > 0.0 && level <= 1.0)) {
        throw OutOfDomain("confidence level must be in (0, 1]");
    }
}

// Shared failure policy: no usable replicates -> EmptyBootstrap; less than
// half of the requested B usable -> AllReplicatesFailed.
void require_enough(std::size_t usable, std::size_t requested) {
    if (usable == 0) throw EmptyBootstrap("no usable bootstrap replicates");
    if (2 * usable < requested) {
        throw AllReplicatesFailed("only " + std::to_string(usable) + " of " +
                                  std::to_string(requested) +
                                  " bootstrap replicates are usable");
    }
}

ConfidenceInterval percentile_family_ci(const BootstrapDistribution& boot,
                                        const ProbabilityEstimate& base, double level,
                                        bool studentize, const CiOptions& opts) {
    require_level(level);
    if (boot.plan.statistic.kind != Statistic::TailProb) {
        throw ConfigError("percentile/t intervals require a TailProb statistic");
    }
    if (!(base.p_hat > 0.0)) throw ZeroBaseEstimate("base tail-probability estimate is 0");

    const double sqrt_k = std::sqrt(static_cast<double>(boot.base_fit.k));
    const double depth = base_depth(base, opts);
    const double w = detail::w_gamma_log(boot.base_fit.gamma, std::log(depth));
    const double w_over_sqrt_k = w / sqrt_k;
    const double sigma_hat =
        studentize ? std::sqrt(sigma_sq(boot.base_fit.gamma)) : 1.0;

    std::vector<PivotEntry> pivots;
    pivots.reserve(boot.records.size());
    std::size_t excluded = 0;
    for (const auto& rec : boot.records) {
        if (!(rec.value > 0.0)) {
            ++excluded;
            continue;
        }
        double denom = w;
        if (opts.replicate_scaling) {
            if (!std::isfinite(rec.norm)) {
                ++excluded;
                continue;
            }
            denom = rec.norm;
        }
        PivotEntry e;
        e.zeta = sqrt_k * std::log(rec.value / base.p_hat) / denom;
        if (studentize) {
            if (!(rec.gamma > -0.5)) {
                ++excluded;
                continue;
            }
            e.sigma = std::sqrt(sigma_sq(rec.gamma));
        }
        e.key = e.zeta / e.sigma;
        pivots.push_back(e);
    }
    require_enough(pivots.size(), boot.plan.replicates);

    std::sort(pivots.begin(), pivots.end(), [](const PivotEntry& a, const PivotEntry& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.zeta != b.zeta) return a.zeta < b.zeta;
        return a.sigma < b.sigma;
    });

    const double alpha = 1.0 - level;
    const PivotEntry& hi = select_entry(pivots, 1.0 - alpha / 2.0);
    const PivotEntry& lo = select_entry(pivots, alpha / 2.0);

    ConfidenceInterval ci;
    ci.method = studentize ? CiMethod::StudentT : CiMethod::Percentile;
    ci.level = level;
    ci.lower = percentile_bound(base.p_hat, hi.zeta, sigma_hat / hi.sigma, w_over_sqrt_k);
    ci.upper = percentile_bound(base.p_hat, lo.zeta, sigma_hat / lo.sigma, w_over_sqrt_k);
    if (ci.upper > 1.0) {
        ci.upper = 1.0;
        ci.diagnostics.upper_capped = true;
    }
    if (ci.lower > ci.upper) std::swap(ci.lower, ci.upper);
    ci.diagnostics.boot_failures = boot.failures;
    ci.diagnostics.ci_excluded = excluded;
    ci.diagnostics.clamped_replicates = boot.clamp_count;
    ci.diagnostics.used = pivots.size();
    return ci;
}

}  // namespace

Sample resample(const Sample& sample, std::uint64_t seed) {
    Rng rng(seed);
    const auto& values = sample.sorted();
    const std::uint64_t n = values.size();
    std::vector<double> drawn(n);
    for (auto& x : drawn) x = values[rng.below(n)];
    return Sample(std::move(drawn));
}

double empirical_quantile(const std::vector<double>& sorted_values, double alpha) {
    if (sorted_values.empty()) throw EmptyBootstrap("quantile of an empty vector");
    const auto count = static_cast<double>(sorted_values.size());
    const double x = alpha * count;
    // Snap to the nearest integer before taking the ceiling so that e.g.
    // 0.05 * 100 selects the 5th order statistic regardless of how the
    // product rounds in binary.
    const double snapped = std::nearbyint(x);
    std::size_t idx;
    if (std::abs(x - snapped) <= 1e-9 * std::max(1.0, std::abs(x))) {
        idx = static_cast<std::size_t>(snapped);
    } else {
        idx = static_cast<std::size_t>(std::ceil(x));
    }
    idx = std::clamp<std::size_t>(idx, 1, sorted_values.size());
    return sorted_values[idx - 1];
}

namespace {

// Evaluates the plan's statistic on one refit; layout shared by the
// single-k and multi-k drivers.
BootstrapReplicate evaluate_replicate(const TailFit& fit, const StatisticSpec& stat,
                                      std::size_t n, std::size_t k) {
    BootstrapReplicate rec;
    rec.gamma = fit.gamma;
    rec.scale_a = fit.scale_a;
    rec.loc_b = fit.loc_b;
    switch (stat.kind) {
        case Statistic::TailProb: {
            const ProbabilityEstimate pe = estimate_tail_probability(fit, stat.target);
            rec.value = pe.p_hat;
            rec.clamped = pe.clamped;
            if (pe.p_hat > 0.0) {
                rec.norm = detail::w_gamma_log(fit.gamma, std::log(pe.d_hat));
            }
            break;
        }
        case Statistic::HighQuantile: {
            const QuantileEstimate qe = estimate_high_quantile(fit, stat.target);
            rec.value = qe.x_hat;
            rec.norm = qe.scale_factor;  // a* q_gamma*(d)
            break;
        }
        case Statistic::GammaHat:
            rec.value = fit.gamma;
            break;
        case Statistic::ScaleA:
            rec.value = fit.scale_a;
            break;
        case Statistic::LocB:
            rec.value = fit.loc_b;
            break;
    }
    (void)n;
    (void)k;
    return rec;
}

}  // namespace

namespace detail {

std::vector<std::optional<BootstrapDistribution>> bootstrap_multi_k(
    const Sample& sample, const std::vector<std::size_t>& k_grid,
    const ResamplePlan& plan, std::size_t workers) {
    if (plan.replicates < 1) throw ConfigError("plan.replicates must be >= 1");
    if (k_grid.empty()) throw ConfigError("k_grid must not be empty");
    const std::size_t n = sample.size();
    for (std::size_t k : k_grid) {
        if (k < 1 || k > n - 1) {
            throw BadK("bootstrap k must satisfy 1 <= k <= n-1; got k=" +
                       std::to_string(k));
        }
    }

    const std::size_t n_k = k_grid.size();
    const std::size_t reps = plan.replicates;

    std::vector<std::optional<BootstrapDistribution>> result(n_k);
    for (std::size_t j = 0; j < n_k; ++j) {
        TailFit base;
        if (try_fit_tail(sample, k_grid[j], base) != FitStatus::Ok) continue;
        result[j].emplace();
        result[j]->base_fit = base;
        result[j]->plan = plan;
    }

    // One shared resample per replicate; per-k refits indexed as r * n_k + j.
    std::vector<BootstrapReplicate> slots(reps * n_k);
    std::vector<unsigned char> ok(reps * n_k, 0);

    parallel_for(reps, workers, [&](std::size_t r) {
        const Sample rs = resample(sample, derive_key(plan.master_seed, r));
        for (std::size_t j = 0; j < n_k; ++j) {
            if (!result[j]) continue;
            TailFit fit;
            if (try_fit_tail(rs, k_grid[j], fit) != FitStatus::Ok) continue;
            slots[r * n_k + j] =
                evaluate_replicate(fit, plan.statistic, sample.size(), k_grid[j]);
            ok[r * n_k + j] = 1;
        }
    });

    for (std::size_t j = 0; j < n_k; ++j) {
        if (!result[j]) continue;
        auto& boot = *result[j];
        boot.records.reserve(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            if (!ok[r * n_k + j]) {
                ++boot.failures;
                continue;
            }
            const auto& rec = slots[r * n_k + j];
            if (rec.clamped) ++boot.clamp_count;
            boot.records.push_back(rec);
        }
        if (boot.records.empty()) {
            result[j].reset();
            continue;
        }
        boot.values.reserve(boot.records.size());
        for (const auto& rec : boot.records) boot.values.push_back(rec.value);
        std::sort(boot.values.begin(), boot.values.end());
    }
    return result;
}

}  // namespace detail

std::vector<BootstrapDistribution> bootstrap_distribution_multi_k(
    const Sample& sample, const std::vector<std::size_t>& k_grid,
    const ResamplePlan& plan, std::size_t workers) {
    auto maybe = detail::bootstrap_multi_k(sample, k_grid, plan, workers);
    std::vector<BootstrapDistribution> result;
    result.reserve(maybe.size());
    for (std::size_t j = 0; j < maybe.size(); ++j) {
        if (!maybe[j]) {
            // Either the base fit failed (the bootstrap of this statistic is
            // undefined; a constant sample is the typical case) or every
            // replicate refit failed.
            throw AllReplicatesFailed("bootstrap produced no usable replicates at k=" +
                                      std::to_string(k_grid[j]));
        }
        result.push_back(std::move(*maybe[j]));
    }
    return result;
}

BootstrapDistribution bootstrap_distribution(const Sample& sample, std::size_t k,
                                             const ResamplePlan& plan,
                                             std::size_t workers) {
    return std::move(bootstrap_distribution_multi_k(sample, {k}, plan, workers).front());
}

ConfidenceInterval ci_efron_percentile(const BootstrapDistribution& boot, double level) {
    require_level(level);
    require_enough(boot.values.size(), boot.plan.replicates);

    const double alpha = 1.0 - level;
    ConfidenceInterval ci;
    ci.method = CiMethod::EfronPercentile;
    ci.level = level;
    ci.lower = empirical_quantile(boot.values, alpha / 2.0);
    ci.upper = empirical_quantile(boot.values, 1.0 - alpha / 2.0);
    ci.diagnostics.boot_failures = boot.failures;
    ci.diagnostics.clamped_replicates = boot.clamp_count;
    ci.diagnostics.used = boot.values.size();
    return ci;
}

ConfidenceInterval ci_percentile(const BootstrapDistribution& boot,
                                 const ProbabilityEstimate& base, double level,
                                 const CiOptions& opts) {
    return percentile_family_ci(boot, base, level, /*studentize=*/false, opts);
}

ConfidenceInterval ci_t(const BootstrapDistribution& boot, const ProbabilityEstimate& base,
                        double level, bool studentized, const CiOptions& opts) {
    if (!studentized) {
        // With the constant sigma(gamma_hat) in both the pivot and the bound,
        // the factor cancels identically, so the literal interval IS the
        // percentile interval.
        ConfidenceInterval ci = percentile_family_ci(boot, base, level, false, opts);
        ci.method = CiMethod::StudentT;
        return ci;
    }
    return percentile_family_ci(boot, base, level, /*studentize=*/true, opts);
}

ConfidenceInterval ci_asymptotic(const ProbabilityEstimate& base, double level,
                                 const CiOptions& opts) {
    require_level(level);
    const double gamma = base.fit.gamma;
    if (!(gamma > -0.5)) throw OutOfDomain("asymptotic interval requires gamma > -1/2");
    if (!(base.p_hat > 0.0)) throw ZeroBaseEstimate("base tail-probability estimate is 0");

    const double depth = base_depth(base, opts);
    const double w = detail::w_gamma_log(gamma, std::log(depth));
    const double sqrt_k = std::sqrt(static_cast<double>(base.fit.k));
    const double s = std::sqrt(sigma_sq(gamma)) * w / sqrt_k;
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const double zs = z * s;

    ConfidenceInterval ci;
    ci.method = CiMethod::AsymptoticNormal;
    ci.level = level;
    ci.lower = base.p_hat / (1.0 + zs);
    if (1.0 - zs <= 0.0) {
        ci.upper = 1.0;
        ci.diagnostics.upper_capped = true;
    } else {
        ci.upper = base.p_hat / (1.0 - zs);
        if (ci.upper > 1.0) {
            ci.upper = 1.0;
            ci.diagnostics.upper_capped = true;
        }
    }
    if (ci.lower < 0.0) {
        ci.lower = 0.0;
        ci.diagnostics.lower_floored = true;
    }
    return ci;
}

ConfidenceInterval bootstrap_ci_for(const Sample& sample, std::size_t k,
                                    const StatisticSpec& statistic, CiMethod method,
                                    std::size_t replicates, std::uint64_t seed,
                                    double level, const CiOptions& opts,
                                    bool studentized) {
    const TailFit fit = fit_tail(sample, k);

    if (method == CiMethod::AsymptoticNormal) {
        if (statistic.kind != Statistic::TailProb) {
            throw ConfigError("asymptotic interval requires a TailProb statistic");
        }
        return ci_asymptotic(estimate_tail_probability(fit, statistic.target), level,
                             opts);
    }

    ResamplePlan plan;
    plan.master_seed = seed;
    plan.replicates = replicates;
    plan.statistic = statistic;
    const BootstrapDistribution boot =
        bootstrap_distribution(sample, k, plan, opts.workers);

    switch (method) {
        case CiMethod::EfronPercentile:
            return ci_efron_percentile(boot, level);
        case CiMethod::Percentile:
            return ci_percentile(boot, estimate_tail_probability(fit, statistic.target),
                                 level, opts);
        case CiMethod::StudentT:
            return ci_t(boot, estimate_tail_probability(fit, statistic.target), level,
                        studentized, opts);
        case CiMethod::AsymptoticNormal:
            break;
    }
    throw Error("unreachable");
}

std::vector<double> pivot_values(const BootstrapDistribution& boot, PivotScaling scaling) {
    const TailFit& base = boot.base_fit;
    const double sqrt_k = std::sqrt(static_cast<double>(base.k));
    std::vector<double> pivots;
    pivots.reserve(boot.records.size());

    switch (boot.plan.statistic.kind) {
        case Statistic::GammaHat:
            for (const auto& rec : boot.records) {
                pivots.push_back(sqrt_k * (rec.gamma - base.gamma));
            }
            break;
        case Statistic::ScaleA:
            for (const auto& rec : boot.records) {
                pivots.push_back(sqrt_k * (rec.scale_a / base.scale_a - 1.0));
            }
            break;
        case Statistic::LocB:
            // Base: the printed pivot sqrt(k)(b* - b)/a. Replicate: the same
            // with the bootstrap-counterpart scale a*, which smooths the
            // order-statistic lattice of b*.
            for (const auto& rec : boot.records) {
                const double norm =
                    scaling == PivotScaling::Replicate ? rec.scale_a : base.scale_a;
                pivots.push_back(sqrt_k * (rec.loc_b - base.loc_b) / norm);
            }
            break;
        case Statistic::HighQuantile: {
            const QuantileEstimate base_est =
                estimate_high_quantile(base, boot.plan.statistic.target);
            for (const auto& rec : boot.records) {
                const double norm =
                    scaling == PivotScaling::Replicate ? rec.norm : base_est.scale_factor;
                if (!std::isfinite(norm) || norm == 0.0) continue;
                pivots.push_back(sqrt_k * (rec.value - base_est.x_hat) / norm);
            }
            break;
        }
        case Statistic::TailProb: {
            const ProbabilityEstimate base_est =
                estimate_tail_probability(base, boot.plan.statistic.target);
            if (!(base_est.p_hat > 0.0)) {
                throw ZeroBaseEstimate("base tail-probability estimate is 0");
            }
            const double base_w =
                detail::w_gamma_log(base.gamma, std::log(base_est.d_hat));
            for (const auto& rec : boot.records) {
                const double norm = scaling == PivotScaling::Replicate ? rec.norm : base_w;
                if (!std::isfinite(norm) || norm == 0.0) continue;
                pivots.push_back(sqrt_k * (rec.value / base_est.p_hat - 1.0) / norm);
            }
            break;
        }
    }
    std::sort(pivots.begin(), pivots.end());
    return pivots;
}

}  // namespace tailboot
