#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailboot/cli.hpp"
#include "tailboot/csv.hpp"
#include "tailboot/errors.hpp"
#include "tailboot/rng.hpp"

using namespace tailboot;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "tailboot_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string pareto_csv(std::size_t n, std::uint64_t seed, bool header) {
    Rng rng(seed);
    std::string text = header ? "claims\n" : "";
    for (std::size_t i = 0; i < n; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g\n", 1.0 / rng.uniform01());
        text += buf;
    }
    return text;
}

}  // namespace

TEST_CASE("csv loader") {
    SUBCASE("header auto-detection") {
        TempFile f("x\n1.0\n2.5\n");
        const auto values = load_csv_values(f.path);
        CHECK(values == std::vector<double>{1.0, 2.5});
    }
    SUBCASE("no header") {
        TempFile f("1.0\n2.5\n-3e2\n");
        const auto values = load_csv_values(f.path);
        CHECK(values == std::vector<double>{1.0, 2.5, -300.0});
    }
    SUBCASE("CRLF") {
        TempFile f("x\r\n1\r\n2\r\n3\r\n");
        CHECK(load_csv(f.path).size() == 3);
    }
    SUBCASE("parse error carries the line number") {
        TempFile f("1\n2\nabc\n4\n");
        try {
            load_csv_values(f.path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("non-finite rows are rejected") {
        TempFile f("x\n1\ninf\n");
        try {
            load_csv_values(f.path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("empty and header-only files") {
        TempFile f1("");
        CHECK_THROWS_AS(load_csv_values(f1.path), EmptyFile);
        TempFile f2("claims\n");
        CHECK_THROWS_AS(load_csv_values(f2.path), EmptyFile);
    }
    SUBCASE("a 2156-row claims file loads in full") {
        TempFile f(pareto_csv(2156, 42, true));
        CHECK(load_csv(f.path).size() == 2156);
    }
    SUBCASE("missing file is an input error") {
        CHECK_THROWS_AS(load_csv_values("no_such_file.csv"), ConfigError);
    }
}

TEST_CASE("seed resolution: default, environment, flag") {
    unsetenv("TAILBOOT_SEED");
    TempFile f(pareto_csv(50, 1, false));
    const auto base = parse_args({"fit", "--input", f.path, "--k", "5"});
    CHECK(base.seed == kDefaultSeed);

    setenv("TAILBOOT_SEED", "777", 1);
    const auto env = parse_args({"fit", "--input", f.path, "--k", "5"});
    CHECK(env.seed == 777);

    const auto flag =
        parse_args({"fit", "--input", f.path, "--k", "5", "--seed", "9"});
    CHECK(flag.seed == 9);

    setenv("TAILBOOT_SEED", "bogus", 1);
    CHECK_THROWS_AS(parse_args({"fit", "--input", f.path, "--k", "5"}), ConfigError);
    unsetenv("TAILBOOT_SEED");
}

TEST_CASE("fit command end to end") {
    TempFile f(pareto_csv(500, 3, true));
    const auto result = run_cli({"fit", "--input", f.path, "--k", "50"});
    REQUIRE(result.exit_code == 0);
    const json artifact = json::parse(result.artifact);
    CHECK(artifact["command"] == "fit");
    CHECK(artifact["config"]["k"] == 50);
    CHECK(artifact["results"].size() == 1);
    const auto& row = artifact["results"][0];
    CHECK(row["n"] == 500);
    const double gamma = row["gamma"].get<double>();
    CHECK(gamma > 0.0);
    CHECK(row["gamma"].get<double>() ==
          row["gamma_plus"].get<double>() + row["gamma_minus"].get<double>());
}

TEST_CASE("ci command is deterministic and worker-invariant") {
    TempFile f(pareto_csv(800, 9, false));
    const std::vector<std::string> base_args = {
        "ci",      "--input", f.path, "--x-target", "60",  "--k",
        "80",      "--B",     "400",  "--method",   "percentile", "--level",
        "0.95",    "--seed",  "7"};
    auto with_workers = base_args;
    with_workers.push_back("--workers");
    with_workers.push_back("4");

    const auto r1 = run_cli(base_args);
    const auto r2 = run_cli(base_args);
    const auto r3 = run_cli(with_workers);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.artifact == r2.artifact);
    CHECK(r1.artifact == r3.artifact);

    const json artifact = json::parse(r1.artifact);
    const auto& row = artifact["results"][0];
    CHECK(row["lower"].get<double>() <= row["upper"].get<double>());
    CHECK(row["estimate"].get<double>() > 0.0);
}

TEST_CASE("rerunning the echoed config reproduces the artifact bitwise") {
    TempFile f(pareto_csv(600, 21, false));
    const auto first = run_cli({"ci", "--input", f.path, "--x-target", "40", "--k",
                                "60", "--B", "300", "--method", "t", "--level", "0.9",
                                "--seed", "1234"});
    REQUIRE(first.exit_code == 0);
    const json cfg = json::parse(first.artifact)["config"];

    std::vector<std::string> args = {"ci",
                                     "--input",
                                     cfg["input"].get<std::string>(),
                                     "--x-target",
                                     std::to_string(cfg["x_target"].get<double>()),
                                     "--k",
                                     std::to_string(cfg["k"].get<std::size_t>()),
                                     "--B",
                                     std::to_string(cfg["B"].get<std::size_t>()),
                                     "--method",
                                     cfg["method"].get<std::string>(),
                                     "--level",
                                     std::to_string(cfg["level"].get<double>()),
                                     "--seed",
                                     std::to_string(cfg["seed"].get<std::uint64_t>()),
                                     "--scaling",
                                     cfg["scaling"].get<std::string>()};
    if (!cfg["studentized"].get<bool>()) args.push_back("--literal");
    const auto second = run_cli(args);
    CHECK(second.artifact == first.artifact);
}

TEST_CASE("csv and json outputs carry identical numbers") {
    TempFile f(pareto_csv(400, 33, false));
    const std::vector<std::string> common = {"sweep",   "--input", f.path,
                                             "--x-target", "30",   "--k-min", "20",
                                             "--k-max", "60",      "--k-step", "20",
                                             "--B",     "150",     "--seed",  "5"};
    auto json_args = common;
    auto csv_args = common;
    csv_args.push_back("--format");
    csv_args.push_back("csv");

    const auto rj = run_cli(json_args);
    const auto rc = run_cli(csv_args);
    REQUIRE(rj.exit_code == 0);
    REQUIRE(rc.exit_code == 0);

    const json results = json::parse(rj.artifact)["results"];

    // parse the CSV payload
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : rc.artifact) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    REQUIRE(lines.size() == results.size() + 1);  // header + rows

    std::vector<std::string> cols;
    {
        std::string tok;
        for (char ch : lines[0]) {
            if (ch == ',') {
                cols.push_back(tok);
                tok.clear();
            } else {
                tok += ch;
            }
        }
        cols.push_back(tok);
    }

    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<std::string> cells;
        std::string tok;
        for (char ch : lines[i + 1]) {
            if (ch == ',') {
                cells.push_back(tok);
                tok.clear();
            } else {
                tok += ch;
            }
        }
        cells.push_back(tok);
        REQUIRE(cells.size() == cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& jv = results[i][cols[c]];
            if (jv.is_number_float()) {
                double parsed = 0.0;
                auto [p, ec] = std::from_chars(cells[c].data(),
                                               cells[c].data() + cells[c].size(), parsed);
                CHECK(ec == std::errc());
                CHECK(parsed == jv.get<double>());
            } else if (jv.is_number_integer()) {
                CHECK(std::stoll(cells[c]) == jv.get<std::int64_t>());
            }
        }
    }
}

TEST_CASE("exit codes") {
    SUBCASE("missing input file") {
        const auto r = run_cli({"fit", "--input", "nope.csv", "--k", "10"});
        CHECK(r.exit_code == 2);
        CHECK(json::parse(r.artifact)["error"]["type"] == "config_error");
    }
    SUBCASE("k out of range") {
        TempFile f(pareto_csv(50, 2, false));
        const auto r = run_cli({"fit", "--input", f.path, "--k", "50"});
        CHECK(r.exit_code == 2);
        CHECK(json::parse(r.artifact)["error"]["type"] == "bad_k");
    }
    SUBCASE("estimator failure") {
        TempFile f("1\n1\n1\n1\n1\n");
        const auto r = run_cli({"fit", "--input", f.path, "--k", "2"});
        CHECK(r.exit_code == 3);
        CHECK(json::parse(r.artifact)["error"]["type"] == "degenerate_tail");
    }
    SUBCASE("malformed row") {
        TempFile f("1\n2\nabc\n");
        const auto r = run_cli({"fit", "--input", f.path, "--k", "1"});
        CHECK(r.exit_code == 2);
        CHECK(json::parse(r.artifact)["error"]["type"] == "parse_error");
    }
    SUBCASE("unknown flag") {
        const auto r = run_cli({"fit", "--nope", "1"});
        CHECK(r.exit_code == 2);
    }
    SUBCASE("unknown method") {
        TempFile f(pareto_csv(100, 4, false));
        const auto r = run_cli({"ci", "--input", f.path, "--x-target", "5", "--k",
                                "10", "--method", "bca"});
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("limitdist command echoes moments for every functional") {
    const auto r = run_cli({"limitdist", "--gamma", "0.5", "--paths", "500", "--grid",
                            "512", "--seed", "2"});
    REQUIRE(r.exit_code == 0);
    const json artifact = json::parse(r.artifact);
    REQUIRE(artifact["results"].size() == 7);  // P Q R Gamma A B + prob_pivot
    CHECK(artifact["results"][3]["functional"] == "Gamma");
    CHECK(artifact["diagnostics"]["sigma_sq"] == 1.25);
}

TEST_CASE("quantile and parameter statistics through the ci command") {
    TempFile f(pareto_csv(500, 61, false));
    const auto quantile = run_cli({"ci", "--input", f.path, "--p-target", "0.002",
                                   "--k", "50", "--B", "200", "--method", "efron",
                                   "--seed", "2"});
    REQUIRE(quantile.exit_code == 0);
    const json qrow = json::parse(quantile.artifact)["results"][0];
    CHECK(qrow["stat"] == "quantile");
    CHECK(qrow["estimate"].get<double>() > 0.0);
    CHECK(qrow["lower"].get<double>() <= qrow["upper"].get<double>());

    const auto gamma = run_cli({"ci", "--input", f.path, "--stat", "gamma", "--k",
                                "50", "--B", "200", "--method", "efron", "--seed", "2"});
    REQUIRE(gamma.exit_code == 0);
    CHECK(json::parse(gamma.artifact)["results"][0]["stat"] == "gamma");

    // percentile/t pivots are probability-specific
    const auto bad = run_cli({"ci", "--input", f.path, "--stat", "gamma", "--k", "50",
                              "--method", "percentile"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("scaling flags are accepted and wired through") {
    TempFile f(pareto_csv(400, 44, false));
    const auto hat = run_cli({"ci", "--input", f.path, "--x-target", "40", "--k", "40",
                              "--B", "200", "--method", "asymptotic", "--seed", "1"});
    const auto truth = run_cli({"ci", "--input", f.path, "--x-target", "40", "--k",
                                "40", "--B", "200", "--method", "asymptotic", "--seed",
                                "1", "--scaling", "true", "--true-pn", "0.002"});
    REQUIRE(hat.exit_code == 0);
    REQUIRE(truth.exit_code == 0);
    CHECK(json::parse(hat.artifact)["results"][0]["lower"] !=
          json::parse(truth.artifact)["results"][0]["lower"]);

    // --scaling true without --true-pn is an input error
    const auto missing = run_cli({"ci", "--input", f.path, "--x-target", "40", "--k",
                                  "40", "--method", "asymptotic", "--scaling", "true"});
    CHECK(missing.exit_code == 2);

    const auto rep = run_cli({"ci", "--input", f.path, "--x-target", "40", "--k", "40",
                              "--B", "200", "--method", "t", "--seed", "1",
                              "--replicate-scaling"});
    CHECK(rep.exit_code == 0);
}

TEST_CASE("coverage table renders as CSV") {
    const auto r = run_cli({"coverage", "--model", "exp:5", "--n", "60", "--npn", "1",
                            "--k", "6", "--B", "30", "--reps", "5", "--methods",
                            "efron", "--seed", "4", "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.artifact.rfind("k,method,contain,miss,failures,coverage", 0) == 0);
    // header + one cell row
    CHECK(std::count(r.artifact.begin(), r.artifact.end(), '\n') == 2);
}

TEST_CASE("coverage command produces a cell per (k, method)") {
    const auto r = run_cli({"coverage", "--model", "frechet:1", "--n", "80", "--npn",
                            "1", "--k", "8,16", "--B", "40", "--reps", "10",
                            "--methods", "efron,asymptotic", "--seed", "3"});
    REQUIRE(r.exit_code == 0);
    const json artifact = json::parse(r.artifact);
    CHECK(artifact["results"].size() == 4);
    for (const auto& row : artifact["results"]) {
        CHECK(row["contain"].get<int>() + row["miss"].get<int>() +
                  row["failures"].get<int>() ==
              10);
    }
}
