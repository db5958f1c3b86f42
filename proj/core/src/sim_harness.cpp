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

#include "tailboot/sim_harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

#include "tailboot/errors.hpp"
#include "tailboot/numeric.hpp"
#include "tailboot/parallel.hpp"
#include "tailboot/rng.hpp"
#include "tailboot/stats.hpp"

namespace tailboot {

// ---------------------------------------------------------------------------
// ModelSpec

ModelSpec ModelSpec::student_t(double df) {
    if (!(df > 0)) throw ConfigError("t model needs df > 0");
    return ModelSpec(Family::StudentT, df, 0);
}
ModelSpec ModelSpec::frechet(double alpha) {
    if (!(alpha > 0)) throw ConfigError("frechet model needs alpha > 0");
    return ModelSpec(Family::Frechet, alpha, 0);
}
ModelSpec ModelSpec::exponential(double rate) {
    if (!(rate > 0)) throw ConfigError("exp model needs rate > 0");
    return ModelSpec(Family::Exponential, rate, 0);
}
ModelSpec ModelSpec::std_normal() { return ModelSpec(Family::StdNormal, 0, 0); }
ModelSpec ModelSpec::beta(double a, double b) {
    if (!(a > 0) || !(b > 0)) throw ConfigError("beta model needs a, b > 0");
    return ModelSpec(Family::Beta, a, b);
}
ModelSpec ModelSpec::pareto(double alpha) {
    if (!(alpha > 0)) throw ConfigError("pareto model needs alpha > 0");
    return ModelSpec(Family::Pareto, alpha, 0);
}

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) {
        throw ConfigError("bad numeric parameter '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

ModelSpec ModelSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    auto one_arg = [&](const char* what) {
        if (args.empty()) throw ConfigError(std::string(what) + " needs one parameter");
        return parse_double(args);
    };

    if (head == "t" || head == "student") return student_t(one_arg("t"));
    if (head == "frechet") return frechet(one_arg("frechet"));
    if (head == "exp" || head == "exponential") return exponential(one_arg("exp"));
    if (head == "normal" || head == "n01") return std_normal();
    if (head == "pareto") return pareto(one_arg("pareto"));
    if (head == "beta") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError("beta needs two parameters, e.g. beta:2,10");
        }
        return beta(parse_double(args.substr(0, comma)), parse_double(args.substr(comma + 1)));
    }
    throw ConfigError("unknown model '" + std::string(text) +
                      "' (expected t:NU, frechet:A, exp:RATE, normal, beta:A,B, pareto:A)");
}

double ModelSpec::true_gamma() const noexcept {
    switch (family_) {
        case Family::StudentT: return 1.0 / p1_;
        case Family::Frechet: return 1.0 / p1_;
        case Family::Exponential: return 0.0;
        case Family::StdNormal: return 0.0;
        case Family::Beta: return -1.0 / p2_;
        case Family::Pareto: return 1.0 / p1_;
    }
    return 0.0;
}

double ModelSpec::cdf(double x) const {
    switch (family_) {
        case Family::StudentT: {
            if (x == 0.0) return 0.5;
            const double nu = p1_;
            const double z = nu / (nu + x * x);
            const double half_tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, z);
            return x > 0.0 ? 1.0 - half_tail : half_tail;
        }
        case Family::Frechet:
            return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -p1_));
        case Family::Exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
        case Family::StdNormal:
            return normal_cdf(x);
        case Family::Beta:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return incomplete_beta(p1_, p2_, x);
        case Family::Pareto:
            return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -p1_);
    }
    return 0.0;
}

std::string ModelSpec::name() const {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (family_) {
        case Family::StudentT: return "t:" + num(p1_);
        case Family::Frechet: return "frechet:" + num(p1_);
        case Family::Exponential: return "exp:" + num(p1_);
        case Family::StdNormal: return "normal";
        case Family::Beta: return "beta:" + num(p1_) + "," + num(p2_);
        case Family::Pareto: return "pareto:" + num(p1_);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

// Marsaglia-Tsang; boosted below shape 1.
double gamma_draw(Rng& rng, double shape) {
    if (shape < 1.0) {
        return gamma_draw(rng, shape + 1.0) * std::pow(rng.uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double chi_square_draw(Rng& rng, double df) { return 2.0 * gamma_draw(rng, 0.5 * df); }

double draw_one(const ModelSpec& model, Rng& rng) {
    switch (model.family()) {
        case Family::StudentT: {
            const double nu = model.param1();
            const double z = rng.normal();
            return z / std::sqrt(chi_square_draw(rng, nu) / nu);
        }
        case Family::Frechet:
            return std::pow(-std::log(rng.uniform01()), -1.0 / model.param1());
        case Family::Exponential:
            return rng.exponential() / model.param1();
        case Family::StdNormal:
            return rng.normal();
        case Family::Beta: {
            const double x = gamma_draw(rng, model.param1());
            const double y = gamma_draw(rng, model.param2());
            return x / (x + y);
        }
        case Family::Pareto:
            return std::pow(rng.uniform01(), -1.0 / model.param1());
    }
    return 0.0;
}

}  // namespace

Sample draw(const ModelSpec& model, std::size_t n, std::uint64_t seed) {
    if (n < 3) throw ConfigError("draw requires n >= 3");
    Rng rng(seed);
    std::vector<double> values(n);
    for (auto& v : values) v = draw_one(model, rng);
    return Sample(std::move(values));
}

double true_tail_quantile(const ModelSpec& model, double p) {
    if (!(p > 0.0 && p < 1.0)) throw OutOfDomain("true_tail_quantile requires 0 < p < 1");
    switch (model.family()) {
        case Family::Frechet:
            // F = 1-p  <=>  x^-alpha = -log(1-p)
            return std::pow(-std::log1p(-p), -1.0 / model.param1());
        case Family::Exponential:
            return -std::log(p) / model.param1();
        case Family::Pareto:
            return std::pow(p, -1.0 / model.param1());
        case Family::StdNormal:
            return -normal_quantile(p);
        case Family::Beta:
            if (model.param1() == 1.0) {
                // F(x) = 1 - (1-x)^b
                return -std::expm1(std::log(p) / model.param2());
            }
            break;
        case Family::StudentT:
            break;
    }

    // Bisection on the distribution function to 1e-12 relative.
    const double target = 1.0 - p;
    double lo;
    double hi;
    if (model.family() == Family::Beta) {
        lo = 0.0;
        hi = 1.0;
    } else {
        lo = p >= 0.5 ? -1.0 : 0.0;
        hi = 1.0;
        while (model.cdf(hi) < target) hi *= 2.0;
        while (model.cdf(lo) > target) lo = lo == 0.0 ? -1.0 : lo * 2.0;
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (model.cdf(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Coverage study

namespace {

struct CellAccumulator {
    std::size_t contain = 0;
    std::size_t miss = 0;
    std::size_t failures = 0;
    CompensatedSum log_length;
    std::size_t log_length_count = 0;
    CompensatedSum raw_length;
};

struct TrialOutcome {
    // per cell (k-major): 0 fail, 1 miss, 2 contain
    std::vector<unsigned char> status;
    std::vector<double> log_length;  // NaN when undefined
    std::vector<double> raw_length;
};

bool needs_bootstrap(const std::vector<CiMethod>& methods) {
    return std::any_of(methods.begin(), methods.end(),
                       [](CiMethod m) { return m != CiMethod::AsymptoticNormal; });
}

}  // namespace

CoverageReport coverage_study(const StudyConfig& config) {
    if (config.k_grid.empty()) throw ConfigError("coverage study needs a k grid");
    if (config.methods.empty()) throw ConfigError("coverage study needs methods");
    for (std::size_t k : config.k_grid) {
        if (k < 1 || k >= config.n) throw BadK("k grid entry out of [1, n-1]");
    }
    const double p_n = config.np_n / static_cast<double>(config.n);
    if (!(p_n > 0.0 && p_n < 1.0)) throw ConfigError("np_n/n must land in (0, 1)");

    CoverageReport report;
    report.config = config;
    report.p_n = p_n;
    report.x_target = true_tail_quantile(config.model, p_n);

    const std::size_t n_k = config.k_grid.size();
    const std::size_t n_m = config.methods.size();
    const std::size_t n_cells = n_k * n_m;
    const bool want_boot = needs_bootstrap(config.methods);

    std::vector<TrialOutcome> outcomes(config.mc_reps);

    parallel_for(config.mc_reps, config.workers, [&](std::size_t trial) {
        TrialOutcome& out = outcomes[trial];
        out.status.assign(n_cells, 0);
        out.log_length.assign(n_cells, std::numeric_limits<double>::quiet_NaN());
        out.raw_length.assign(n_cells, std::numeric_limits<double>::quiet_NaN());

        const std::uint64_t trial_key = derive_key(config.master_seed, trial);
        const Sample sample = draw(config.model, config.n, derive_key(trial_key, 0));

        ResamplePlan plan;
        plan.master_seed = derive_key(trial_key, 1);
        plan.replicates = config.replicates;
        plan.statistic = StatisticSpec{Statistic::TailProb, report.x_target};

        // Bootstraps for every k share the per-replicate resamples.
        std::vector<std::optional<BootstrapDistribution>> boots;
        if (want_boot) {
            boots = detail::bootstrap_multi_k(sample, config.k_grid, plan, 1);
        }

        for (std::size_t j = 0; j < n_k; ++j) {
            TailFit fit;
            const bool fit_ok =
                try_fit_tail(sample, config.k_grid[j], fit) == FitStatus::Ok;
            ProbabilityEstimate base;
            if (fit_ok) base = estimate_tail_probability(fit, report.x_target);

            CiOptions cell_opts = config.ci_options;
            if (config.use_true_depth) {
                cell_opts.depth_override = static_cast<double>(config.k_grid[j]) /
                                           (static_cast<double>(config.n) * p_n);
            }

            for (std::size_t mi = 0; mi < n_m; ++mi) {
                const std::size_t cell = j * n_m + mi;
                if (!fit_ok) continue;  // stays a failure
                try {
                    ConfidenceInterval ci;
                    const CiMethod method = config.methods[mi];
                    if (method == CiMethod::AsymptoticNormal) {
                        ci = ci_asymptotic(base, config.level, cell_opts);
                    } else {
                        if (!boots[j]) continue;
                        switch (method) {
                            case CiMethod::EfronPercentile:
                                ci = ci_efron_percentile(*boots[j], config.level);
                                break;
                            case CiMethod::Percentile:
                                ci = ci_percentile(*boots[j], base, config.level,
                                                   cell_opts);
                                break;
                            case CiMethod::StudentT:
                                ci = ci_t(*boots[j], base, config.level,
                                          config.studentized, cell_opts);
                                break;
                            default:
                                break;
                        }
                    }
                    const bool contain = ci.lower <= p_n && p_n <= ci.upper;
                    out.status[cell] = contain ? 2 : 1;
                    out.raw_length[cell] = ci.upper - ci.lower;
                    if (ci.lower > 0.0) {
                        out.log_length[cell] = std::log(ci.upper / ci.lower);
                    }
                } catch (const Error&) {
                    // counted as a failure for this cell
                }
            }
        }
    });

    // Sequential merge in trial order keeps the report bitwise deterministic.
    std::vector<CellAccumulator> acc(n_cells);
    for (const auto& out : outcomes) {
        for (std::size_t c = 0; c < n_cells; ++c) {
            switch (out.status[c]) {
                case 2: ++acc[c].contain; break;
                case 1: ++acc[c].miss; break;
                default: ++acc[c].failures; break;
            }
            if (out.status[c] != 0) {
                acc[c].raw_length.add(out.raw_length[c]);
                if (std::isfinite(out.log_length[c])) {
                    acc[c].log_length.add(out.log_length[c]);
                    ++acc[c].log_length_count;
                }
            }
        }
    }

    report.cells.resize(n_cells);
    for (std::size_t j = 0; j < n_k; ++j) {
        for (std::size_t mi = 0; mi < n_m; ++mi) {
            const std::size_t c = j * n_m + mi;
            CoverageCell& cell = report.cells[c];
            cell.k = config.k_grid[j];
            cell.method = config.methods[mi];
            cell.contain = acc[c].contain;
            cell.miss = acc[c].miss;
            cell.failures = acc[c].failures;
            const std::size_t produced = cell.contain + cell.miss;
            cell.coverage =
                produced ? static_cast<double>(cell.contain) / produced : 0.0;
            cell.mean_log_length = acc[c].log_length_count
                                       ? acc[c].log_length.value() / acc[c].log_length_count
                                       : 0.0;
            cell.log_length_count = acc[c].log_length_count;
            cell.mean_raw_length =
                produced ? acc[c].raw_length.value() / produced : 0.0;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// k sweep

std::vector<SweepRow> k_sweep(const Sample& sample, double x_target,
                              const std::vector<std::size_t>& k_grid,
                              std::size_t replicates, double level, std::uint64_t seed,
                              CiMethod method, const CiOptions& opts, bool studentized) {
    if (k_grid.empty()) throw ConfigError("k_sweep needs a k grid");
    const std::size_t n = sample.size();
    for (std::size_t k : k_grid) {
        if (k < 1 || k >= n) throw BadK("k grid entry out of [1, n-1]");
    }
    if (method == CiMethod::AsymptoticNormal) {
        throw ConfigError("k_sweep's bootstrap column needs a bootstrap method");
    }

    // Keep only fit-able k's for the shared bootstrap; flag the others.
    std::vector<SweepRow> rows(k_grid.size());
    std::vector<std::size_t> usable;
    usable.reserve(k_grid.size());
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        rows[j].k = k_grid[j];
        TailFit fit;
        switch (try_fit_tail(sample, k_grid[j], fit)) {
            case FitStatus::Ok:
                usable.push_back(j);
                break;
            case FitStatus::NonPositiveTail:
                rows[j].error = "non-positive tail";
                break;
            case FitStatus::DegenerateTail:
                rows[j].error = "degenerate tail";
                break;
            default:
                rows[j].error = "bad k";
                break;
        }
    }
    if (usable.empty()) return rows;

    ResamplePlan plan;
    plan.master_seed = seed;
    plan.replicates = replicates;
    plan.statistic = StatisticSpec{Statistic::TailProb, x_target};

    std::vector<std::size_t> ks;
    ks.reserve(usable.size());
    for (std::size_t j : usable) ks.push_back(k_grid[j]);
    const auto boots = detail::bootstrap_multi_k(sample, ks, plan, opts.workers);

    for (std::size_t u = 0; u < usable.size(); ++u) {
        SweepRow& row = rows[usable[u]];
        if (!boots[u]) {
            row.error = "all bootstrap replicates failed";
            continue;
        }
        const BootstrapDistribution& boot = *boots[u];
        const ProbabilityEstimate base =
            estimate_tail_probability(boot.base_fit, x_target);
        row.p_hat = base.p_hat;
        row.clamped = base.clamped;
        try {
            switch (method) {
                case CiMethod::EfronPercentile:
                    row.bootstrap_ci = ci_efron_percentile(boot, level);
                    break;
                case CiMethod::Percentile:
                    row.bootstrap_ci = ci_percentile(boot, base, level, opts);
                    break;
                case CiMethod::StudentT:
                    row.bootstrap_ci = ci_t(boot, base, level, studentized, opts);
                    break;
                default:
                    break;
            }
            row.asymptotic_ci = ci_asymptotic(base, level, opts);
            row.ok = true;
        } catch (const Error& e) {
            row.error = e.what();
        }
    }
    return rows;
}

std::string method_name(CiMethod method) {
    switch (method) {
        case CiMethod::EfronPercentile: return "efron";
        case CiMethod::Percentile: return "percentile";
        case CiMethod::StudentT: return "t";
        case CiMethod::AsymptoticNormal: return "asymptotic";
    }
    return "?";
}

CiMethod method_from_name(std::string_view name) {
    if (name == "efron") return CiMethod::EfronPercentile;
    if (name == "percentile") return CiMethod::Percentile;
    if (name == "t") return CiMethod::StudentT;
    if (name == "asymptotic") return CiMethod::AsymptoticNormal;
    throw ConfigError("unknown CI method '" + std::string(name) +
                      "' (expected efron, percentile, t, asymptotic)");
}

}  // namespace tailboot
