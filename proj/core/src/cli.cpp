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

#include "tailboot/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailboot/csv.hpp"
#include "tailboot/errors.hpp"
#include "tailboot/limit_laws.hpp"
#include "tailboot/sim_harness.hpp"
#include "tailboot/stats.hpp"

namespace tailboot {

namespace {

using ordered_json = nlohmann::ordered_json;

struct HelpRequested {
    std::string text;
};

// ---------------------------------------------------------------------------
// Result table shared by the JSON and CSV emitters, so both formats carry
// identical numeric content by construction.

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
    return std::string(buf, p);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string table_to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out += format_double(v);
                    } else if constexpr (std::is_same_v<T, std::int64_t>) {
                        out += std::to_string(v);
                    } else if constexpr (std::is_same_v<T, bool>) {
                        out += v ? "true" : "false";
                    } else {
                        out += csv_escape(v);
                    }
                },
                row[c]);
        }
        out += '\n';
    }
    return out;
}

ordered_json table_to_json(const Table& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::int64_t as_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

// ---------------------------------------------------------------------------
// Config echo (everything needed to reproduce the run; workers is execution
// detail and deliberately left out so artifacts are invariant to it).

ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j = ordered_json::object();
    j["seed"] = cfg.seed;
    j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
    switch (cfg.command) {
        case Command::Fit:
            j["input"] = cfg.input_path;
            j["k"] = cfg.k;
            break;
        case Command::Ci:
            j["input"] = cfg.input_path;
            j["k"] = cfg.k;
            j["stat"] = cfg.stat;
            if (cfg.x_target) j["x_target"] = *cfg.x_target;
            if (cfg.p_target) j["p_target"] = *cfg.p_target;
            j["B"] = cfg.replicates;
            j["method"] = cfg.method;
            j["level"] = cfg.level;
            j["studentized"] = cfg.studentized;
            j["scaling"] = cfg.scaling;
            if (cfg.true_pn) j["true_pn"] = *cfg.true_pn;
            j["replicate_scaling"] = cfg.replicate_scaling;
            break;
        case Command::Sweep:
            j["input"] = cfg.input_path;
            j["x_target"] = cfg.x_target.value_or(0.0);
            if (!cfg.k_list.empty()) {
                j["k"] = cfg.k_list;
            } else {
                j["k_min"] = cfg.k_min;
                j["k_max"] = cfg.k_max;
                j["k_step"] = cfg.k_step;
            }
            j["B"] = cfg.replicates;
            j["method"] = cfg.method;
            j["level"] = cfg.level;
            j["studentized"] = cfg.studentized;
            break;
        case Command::Coverage:
            j["model"] = cfg.model;
            j["n"] = cfg.n;
            j["npn"] = cfg.np_n;
            j["k"] = cfg.k_list;
            j["B"] = cfg.replicates;
            j["reps"] = cfg.mc_reps;
            j["methods"] = cfg.methods;
            j["level"] = cfg.level;
            j["studentized"] = cfg.studentized;
            j["scaling"] = cfg.scaling;
            break;
        case Command::LimitDist:
            j["gamma"] = cfg.gamma;
            j["paths"] = cfg.paths;
            j["grid"] = cfg.grid;
            break;
    }
    return j;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Fit: return "fit";
        case Command::Ci: return "ci";
        case Command::Sweep: return "sweep";
        case Command::Coverage: return "coverage";
        case Command::LimitDist: return "limitdist";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Command implementations: each fills a Table plus optional diagnostics.

void append_ci_columns(Table& table) {
    for (const char* c : {"lower", "upper", "boot_failures", "ci_excluded",
                          "clamped_replicates", "used", "upper_capped"}) {
        table.columns.push_back(c);
    }
}

void append_ci_cells(std::vector<Cell>& row, const ConfidenceInterval& ci) {
    row.emplace_back(ci.lower);
    row.emplace_back(ci.upper);
    row.emplace_back(as_i64(ci.diagnostics.boot_failures));
    row.emplace_back(as_i64(ci.diagnostics.ci_excluded));
    row.emplace_back(as_i64(ci.diagnostics.clamped_replicates));
    row.emplace_back(as_i64(ci.diagnostics.used));
    row.emplace_back(ci.diagnostics.upper_capped);
}

Table run_fit(const RunConfig& cfg) {
    const Sample sample = load_csv(cfg.input_path);
    const TailFit fit = fit_tail(sample, cfg.k);
    Table t;
    t.columns = {"n",     "k",           "h_n",   "m_n",    "gamma_plus",
                 "gamma_minus", "gamma", "scale_a", "loc_b"};
    t.rows.push_back({as_i64(fit.n), as_i64(fit.k), fit.h_n, fit.m_n, fit.gamma_plus,
                      fit.gamma_minus, fit.gamma, fit.scale_a, fit.loc_b});
    return t;
}

CiOptions ci_options_from(const RunConfig& cfg, std::size_t n) {
    CiOptions opts;
    opts.workers = cfg.workers;
    opts.replicate_scaling = cfg.replicate_scaling;
    if (cfg.scaling == "true") {
        if (!cfg.true_pn) {
            throw ConfigError("--scaling true needs --true-pn");
        }
        opts.depth_override =
            static_cast<double>(cfg.k) / (static_cast<double>(n) * *cfg.true_pn);
    } else if (cfg.scaling != "hat") {
        throw ConfigError("--scaling must be 'hat' or 'true'");
    }
    return opts;
}

Table run_ci(const RunConfig& cfg) {
    const Sample sample = load_csv(cfg.input_path);
    const CiMethod method = method_from_name(cfg.method);
    const CiOptions opts = ci_options_from(cfg, sample.size());

    StatisticSpec stat;
    std::string stat_name = cfg.stat;
    if (cfg.x_target) {
        stat = {Statistic::TailProb, *cfg.x_target};
        stat_name = "tailprob";
    } else if (cfg.p_target) {
        stat = {Statistic::HighQuantile, *cfg.p_target};
        stat_name = "quantile";
    } else if (cfg.stat == "gamma") {
        stat.kind = Statistic::GammaHat;
    } else if (cfg.stat == "scale") {
        stat.kind = Statistic::ScaleA;
    } else if (cfg.stat == "loc") {
        stat.kind = Statistic::LocB;
    } else {
        throw ConfigError("ci needs --x-target, --p-target, or --stat gamma|scale|loc");
    }

    const TailFit fit = fit_tail(sample, cfg.k);
    double estimate = 0.0;
    bool clamped = false;
    switch (stat.kind) {
        case Statistic::TailProb: {
            const auto pe = estimate_tail_probability(fit, stat.target);
            estimate = pe.p_hat;
            clamped = pe.clamped;
            break;
        }
        case Statistic::HighQuantile:
            estimate = estimate_high_quantile(fit, stat.target).x_hat;
            break;
        case Statistic::GammaHat: estimate = fit.gamma; break;
        case Statistic::ScaleA: estimate = fit.scale_a; break;
        case Statistic::LocB: estimate = fit.loc_b; break;
    }

    const ConfidenceInterval ci =
        bootstrap_ci_for(sample, cfg.k, stat, method, cfg.replicates, cfg.seed,
                         cfg.level, opts, cfg.studentized);

    Table t;
    t.columns = {"n", "k", "stat", "target", "estimate", "clamped", "method", "level"};
    append_ci_columns(t);
    std::vector<Cell> row = {as_i64(sample.size()),
                             as_i64(cfg.k),
                             stat_name,
                             stat.target,
                             estimate,
                             clamped,
                             method_name(method),
                             cfg.level};
    append_ci_cells(row, ci);
    t.rows.push_back(std::move(row));
    return t;
}

std::vector<std::size_t> sweep_grid(const RunConfig& cfg) {
    if (!cfg.k_list.empty()) return cfg.k_list;
    if (cfg.k_step == 0 || cfg.k_max < cfg.k_min) {
        throw ConfigError("bad sweep grid: need k_min <= k_max and k_step > 0");
    }
    std::vector<std::size_t> grid;
    for (std::size_t k = cfg.k_min; k <= cfg.k_max; k += cfg.k_step) grid.push_back(k);
    return grid;
}

Table run_sweep(const RunConfig& cfg) {
    if (!cfg.x_target) throw ConfigError("sweep needs --x-target");
    const Sample sample = load_csv(cfg.input_path);
    const CiMethod method = method_from_name(cfg.method);
    CiOptions opts;
    opts.workers = cfg.workers;
    opts.replicate_scaling = cfg.replicate_scaling;

    const auto rows = k_sweep(sample, *cfg.x_target, sweep_grid(cfg), cfg.replicates,
                              cfg.level, cfg.seed, method, opts, cfg.studentized);

    Table t;
    t.columns = {"k",          "ok",         "p_hat",      "clamped",
                 "boot_lower", "boot_upper", "asym_lower", "asym_upper",
                 "boot_failures", "error"};
    for (const auto& row : rows) {
        t.rows.push_back({as_i64(row.k), row.ok, row.p_hat, row.clamped,
                          row.bootstrap_ci.lower, row.bootstrap_ci.upper,
                          row.asymptotic_ci.lower, row.asymptotic_ci.upper,
                          as_i64(row.bootstrap_ci.diagnostics.boot_failures),
                          row.error});
    }
    return t;
}

Table run_coverage(const RunConfig& cfg, ordered_json& diagnostics) {
    StudyConfig study;
    study.model = ModelSpec::parse(cfg.model);
    study.n = cfg.n;
    study.np_n = cfg.np_n;
    study.k_grid = cfg.k_list;
    study.replicates = cfg.replicates;
    study.mc_reps = cfg.mc_reps;
    study.level = cfg.level;
    study.master_seed = cfg.seed;
    study.workers = cfg.workers;
    study.studentized = cfg.studentized;
    study.ci_options.replicate_scaling = cfg.replicate_scaling;
    if (cfg.scaling == "true") {
        study.use_true_depth = true;
    } else if (cfg.scaling != "hat") {
        throw ConfigError("--scaling must be 'hat' or 'true'");
    }
    for (const auto& m : cfg.methods) study.methods.push_back(method_from_name(m));

    const CoverageReport report = coverage_study(study);
    diagnostics["p_n"] = report.p_n;
    diagnostics["x_target"] = report.x_target;
    diagnostics["true_gamma"] = study.model.true_gamma();

    Table t;
    t.columns = {"k",        "method",        "contain",          "miss",
                 "failures", "coverage",      "coverage_se",      "mean_log_length",
                 "log_length_count", "mean_raw_length"};
    for (const auto& cell : report.cells) {
        const std::size_t produced = cell.contain + cell.miss;
        const double se = produced ? std::sqrt(cell.coverage * (1.0 - cell.coverage) /
                                               static_cast<double>(produced))
                                   : 0.0;
        t.rows.push_back({as_i64(cell.k), method_name(cell.method), as_i64(cell.contain),
                          as_i64(cell.miss), as_i64(cell.failures), cell.coverage, se,
                          cell.mean_log_length, as_i64(cell.log_length_count),
                          cell.mean_raw_length});
    }
    return t;
}

Table run_limitdist(const RunConfig& cfg, ordered_json& diagnostics) {
    const LimitLawDraws draws =
        limit_law_sample(cfg.gamma, cfg.paths, cfg.grid, cfg.seed, cfg.workers);

    const std::size_t n = draws.draws.size();
    std::vector<double> buf(n);
    Table t;
    t.columns = {"functional", "mean", "variance"};

    auto add_row = [&](const char* name, auto getter) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = getter(draws.draws[i]);
        t.rows.push_back({std::string(name), mean_of(buf), variance_of(buf)});
    };
    add_row("P", [](const LimitFunctionals& f) { return f.P; });
    add_row("Q", [](const LimitFunctionals& f) { return f.Q; });
    add_row("R", [](const LimitFunctionals& f) { return f.R; });
    add_row("Gamma", [](const LimitFunctionals& f) { return f.Gamma; });
    add_row("A", [](const LimitFunctionals& f) { return f.A; });
    add_row("B", [](const LimitFunctionals& f) { return f.B; });

    const double gm = std::min(0.0, cfg.gamma);
    add_row("prob_pivot", [gm](const LimitFunctionals& f) {
        return f.Gamma + gm * gm * f.B - gm * f.A;
    });

    if (cfg.gamma > -0.5) diagnostics["sigma_sq"] = sigma_sq(cfg.gamma);
    return t;
}

// ---------------------------------------------------------------------------

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const EmptyFile*>(&e) || dynamic_cast<const BadSample*>(&e) ||
        dynamic_cast<const BadK*>(&e)) {
        return 2;
    }
    return 3;
}

const char* error_type_name(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const EmptyFile*>(&e)) return "empty_file";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    if (dynamic_cast<const BadSample*>(&e)) return "bad_sample";
    if (dynamic_cast<const BadK*>(&e)) return "bad_k";
    if (dynamic_cast<const NonPositiveTail*>(&e)) return "non_positive_tail";
    if (dynamic_cast<const DegenerateTail*>(&e)) return "degenerate_tail";
    if (dynamic_cast<const BadT*>(&e)) return "bad_t";
    if (dynamic_cast<const OutOfDomain*>(&e)) return "out_of_domain";
    if (dynamic_cast<const EmptyBootstrap*>(&e)) return "empty_bootstrap";
    if (dynamic_cast<const ZeroBaseEstimate*>(&e)) return "zero_base_estimate";
    if (dynamic_cast<const AllReplicatesFailed*>(&e)) return "all_replicates_failed";
    return "error";
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;

    if (const char* env = std::getenv("TAILBOOT_SEED")) {
        std::uint64_t v = 0;
        const char* end = env;
        while (*end) ++end;
        auto [p, ec] = std::from_chars(env, end, v);
        if (ec != std::errc() || p != end) {
            throw ConfigError("TAILBOOT_SEED must be an unsigned integer");
        }
        cfg.seed = v;
    }

    CLI::App app{"tail estimation and full-sample bootstrap toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--seed", cfg.seed, "master seed (default TAILBOOT_SEED or 1729)");
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output_path, "output path, '-' for stdout");
    app.add_option("--workers", cfg.workers, "worker threads (never changes results)")
        ->check(CLI::PositiveNumber);

    std::string k_csv;
    std::string methods_csv = "efron,percentile,t,asymptotic";
    double x_target = 0.0;
    double p_target = 0.0;
    double true_pn = 0.0;
    bool literal = false;

    auto* fit = app.add_subcommand("fit", "moment tail fit at one k");
    fit->add_option("--input", cfg.input_path, "single-column CSV")->required();
    fit->add_option("--k", cfg.k, "tail threshold index")->required();

    auto* ci = app.add_subcommand("ci", "confidence interval for a tail parameter");
    ci->add_option("--input", cfg.input_path, "single-column CSV")->required();
    ci->add_option("--k", cfg.k, "tail threshold index")->required();
    auto* xt = ci->add_option("--x-target", x_target, "tail probability target P(X > x)");
    auto* pt = ci->add_option("--p-target", p_target, "high quantile target probability");
    ci->add_option("--stat", cfg.stat, "statistic: gamma, scale or loc");
    xt->excludes(pt);
    ci->add_option("--B", cfg.replicates, "bootstrap replicates");
    ci->add_option("--method", cfg.method, "efron | percentile | t | asymptotic");
    ci->add_option("--level", cfg.level, "confidence level");
    ci->add_flag("--literal", literal, "constant-sigma t pivot instead of studentized");
    ci->add_option("--scaling", cfg.scaling, "pivot depth: hat (estimated) or true");
    auto* tp = ci->add_option("--true-pn", true_pn, "true tail probability for --scaling true");
    ci->add_flag("--replicate-scaling", cfg.replicate_scaling,
                 "normalize each replicate pivot with its own w");

    auto* sweep = app.add_subcommand("sweep", "per-k estimates and intervals");
    sweep->add_option("--input", cfg.input_path, "single-column CSV")->required();
    auto* sxt = sweep->add_option("--x-target", x_target, "tail probability target");
    sxt->required();
    sweep->add_option("--k-min", cfg.k_min, "sweep start");
    sweep->add_option("--k-max", cfg.k_max, "sweep end (inclusive)");
    sweep->add_option("--k-step", cfg.k_step, "sweep step");
    sweep->add_option("--k", k_csv, "explicit comma-separated k list");
    sweep->add_option("--B", cfg.replicates, "bootstrap replicates");
    sweep->add_option("--method", cfg.method, "bootstrap interval method");
    sweep->add_option("--level", cfg.level, "confidence level");
    sweep->add_flag("--literal", literal, "constant-sigma t pivot");
    sweep->add_flag("--replicate-scaling", cfg.replicate_scaling,
                    "normalize each replicate pivot with its own w");

    auto* coverage = app.add_subcommand("coverage", "Monte-Carlo coverage study");
    coverage->add_option("--model", cfg.model, "t:NU frechet:A exp:RATE normal beta:A,B pareto:A")
        ->required();
    coverage->add_option("--n", cfg.n, "sample size")->required();
    coverage->add_option("--npn", cfg.np_n, "n * p_n (sets the target probability)")
        ->required();
    coverage->add_option("--k", k_csv, "comma-separated k list")->required();
    coverage->add_option("--B", cfg.replicates, "bootstrap replicates per trial");
    coverage->add_option("--reps", cfg.mc_reps, "Monte-Carlo trials");
    coverage->add_option("--methods", methods_csv, "comma-separated method list");
    coverage->add_option("--level", cfg.level, "confidence level");
    coverage->add_flag("--literal", literal, "constant-sigma t pivot");
    coverage->add_option("--scaling", cfg.scaling, "pivot depth: hat or true");
    coverage->add_flag("--replicate-scaling", cfg.replicate_scaling,
                       "normalize each replicate pivot with its own w");

    auto* limitdist = app.add_subcommand("limitdist", "sample the limiting laws");
    limitdist->add_option("--gamma", cfg.gamma, "extreme value index")->required();
    limitdist->add_option("--paths", cfg.paths, "number of paths");
    limitdist->add_option("--grid", cfg.grid, "grid points per path");

    std::vector<const char*> argv;
    argv.push_back("tailboot");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        os << app.help();
        throw HelpRequested{os.str()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (fit->parsed()) cfg.command = Command::Fit;
    if (ci->parsed()) cfg.command = Command::Ci;
    if (sweep->parsed()) cfg.command = Command::Sweep;
    if (coverage->parsed()) cfg.command = Command::Coverage;
    if (limitdist->parsed()) cfg.command = Command::LimitDist;

    cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    cfg.studentized = !literal;
    if (xt->count()) cfg.x_target = x_target;
    if (sxt->count()) cfg.x_target = x_target;
    if (pt->count()) cfg.p_target = p_target;
    if (tp->count()) cfg.true_pn = true_pn;

    if (!k_csv.empty()) {
        cfg.k_list.clear();
        std::size_t pos = 0;
        while (pos <= k_csv.size()) {
            const auto comma = k_csv.find(',', pos);
            const std::string token =
                k_csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                             : comma - pos);
            std::size_t v = 0;
            auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || p != token.data() + token.size() || v == 0) {
                throw ConfigError("bad k list entry '" + token + "'");
            }
            cfg.k_list.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (coverage->parsed()) {
        cfg.methods.clear();
        std::size_t pos = 0;
        while (pos <= methods_csv.size()) {
            const auto comma = methods_csv.find(',', pos);
            cfg.methods.push_back(methods_csv.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return cfg;
}

RunResult run(const RunConfig& cfg) {
    RunResult result;
    ordered_json artifact;
    artifact["command"] = command_name(cfg.command);
    artifact["config"] = config_echo(cfg);

    try {
        ordered_json diagnostics = ordered_json::object();
        Table table;
        switch (cfg.command) {
            case Command::Fit: table = run_fit(cfg); break;
            case Command::Ci: table = run_ci(cfg); break;
            case Command::Sweep: table = run_sweep(cfg); break;
            case Command::Coverage: table = run_coverage(cfg, diagnostics); break;
            case Command::LimitDist: table = run_limitdist(cfg, diagnostics); break;
        }
        if (cfg.format == OutputFormat::Csv) {
            result.artifact = table_to_csv(table);
        } else {
            artifact["results"] = table_to_json(table);
            artifact["diagnostics"] = diagnostics;
            result.artifact = artifact.dump(2) + "\n";
        }
        result.exit_code = 0;
    } catch (const Error& e) {
        result.exit_code = exit_code_for(e);
        result.message = e.what();
        artifact["error"] = {{"type", error_type_name(e)}, {"message", e.what()}};
        result.artifact = artifact.dump(2) + "\n";
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = e.what();
        artifact["error"] = {{"type", "error"}, {"message", e.what()}};
        result.artifact = artifact.dump(2) + "\n";
    }
    return result;
}

RunResult run_cli(const std::vector<std::string>& args) {
    try {
        return run(parse_args(args));
    } catch (const HelpRequested& h) {
        return RunResult{0, h.text, ""};
    } catch (const Error& e) {
        return RunResult{2, "", e.what()};
    } catch (const std::exception& e) {
        return RunResult{2, "", e.what()};
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    RunConfig cfg;
    RunResult result;
    bool have_cfg = false;
    try {
        cfg = parse_args(args);
        have_cfg = true;
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    result = run(cfg);
    if (!result.message.empty()) {
        std::cerr << "error: " << result.message << "\n";
    }
    if (!result.artifact.empty() && have_cfg) {
        if (cfg.output_path == "-" || cfg.output_path.empty()) {
            std::cout << result.artifact;
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
                return 2;
            }
            out << result.artifact;
        }
    }
    return result.exit_code;
}

}  // namespace tailboot
