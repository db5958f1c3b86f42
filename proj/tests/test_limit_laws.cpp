#include <doctest.h>

#include <cmath>
#include <vector>

#include "tailboot/errors.hpp"
#include "tailboot/limit_laws.hpp"
#include "tailboot/rng.hpp"
#include "tailboot/stats.hpp"
#include "tailboot/tail_functions.hpp"

using namespace tailboot;

TEST_CASE("zero path maps to zero functionals") {
    WienerPath path;
    const std::size_t m = 64;
    for (std::size_t j = 0; j < m; ++j) {
        path.grid.push_back(static_cast<double>(j + 1) / m);
        path.values.push_back(0.0);
    }
    for (double gamma : {-0.5, 0.0, 0.8}) {
        const auto f = limit_functionals(path, gamma);
        CHECK(f.P == 0.0);
        CHECK(f.Q == 0.0);
        CHECK(f.R == 0.0);
        CHECK(f.Gamma == 0.0);
        CHECK(f.A == 0.0);
        CHECK(f.B == 0.0);
    }
}

TEST_CASE("wiener endpoint variance and reproducibility") {
    CHECK_THROWS_AS(sample_wiener(1, 0), ConfigError);

    const std::size_t paths = 100000;
    std::vector<double> w1(paths);
    for (std::size_t i = 0; i < paths; ++i) {
        const auto path = sample_wiener(2, derive_key(2, i));
        CHECK(path.grid.size() == 2);
        CHECK(path.grid.back() == 1.0);
        w1[i] = path.values.back();
    }
    const double se = std::sqrt(2.0 / paths);
    CHECK(std::abs(variance_of(w1) - 1.0) <= 3.0 * se);

    const auto a = sample_wiener(16, 99);
    const auto b = sample_wiener(16, 99);
    CHECK(a.values == b.values);
}

TEST_CASE("wiener covariance E[W(s)W(t)] = min(s,t)") {
    const std::size_t paths = 100000;
    double acc = 0.0;
    for (std::size_t i = 0; i < paths; ++i) {
        const auto path = sample_wiener(4, derive_key(5, i));
        acc += path.values[0] * path.values[2];  // W(0.25) W(0.75)
    }
    const double cov = acc / paths;
    // Var(W(.25) W(.75)) = s t + (min(s,t))^2 = 0.25
    const double se = std::sqrt(0.25 / paths);
    CHECK(std::abs(cov - 0.25) <= 3.0 * se);
}

TEST_CASE("draw tuples satisfy the algebraic reconstructions") {
    for (double gamma : {-0.7, -0.25, 0.0, 0.5, 1.2}) {
        const auto draws = limit_law_sample(gamma, 50, 512, 21);
        const double gm = std::min(0.0, gamma);
        const double gp = std::max(0.0, gamma);
        for (const auto& f : draws.draws) {
            const double r = (1 - gm) * (1 - gm) * (1 - 2 * gm) *
                             (0.5 * (1 - 2 * gm) * f.Q - 2.0 * f.P);
            const double a = gp * f.B + (1 - gm) * (3 - 4 * gm) * f.P -
                             0.5 * (1 - gm) * (1 - 2 * gm) * (1 - 2 * gm) * f.Q;
            CHECK(f.R == doctest::Approx(r).epsilon(1e-12));
            CHECK(f.Gamma == doctest::Approx(gp * f.P + f.R).epsilon(1e-12));
            CHECK(f.A == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("ensemble basics") {
    const auto empty = limit_law_sample(0.5, 0, 1024, 3);
    CHECK(empty.draws.empty());

    const auto a = limit_law_sample(-0.25, 2000, 2048, 17, 1);
    const auto b = limit_law_sample(-0.25, 2000, 2048, 17, 3);
    REQUIRE(a.draws.size() == b.draws.size());
    for (std::size_t i = 0; i < a.draws.size(); ++i) {
        CHECK(a.draws[i].Gamma == b.draws[i].Gamma);  // worker invariance
    }

    // every functional is a centered Gaussian: means within 3 SE of 0
    std::vector<double> buf(a.draws.size());
    auto check_mean = [&](auto getter) {
        for (std::size_t i = 0; i < a.draws.size(); ++i) buf[i] = getter(a.draws[i]);
        const double se = std::sqrt(variance_of(buf) / static_cast<double>(buf.size()));
        CHECK(std::abs(mean_of(buf)) <= 3.0 * se);
    };
    check_mean([](const LimitFunctionals& f) { return f.P; });
    check_mean([](const LimitFunctionals& f) { return f.Q; });
    check_mean([](const LimitFunctionals& f) { return f.R; });
    check_mean([](const LimitFunctionals& f) { return f.Gamma; });
    check_mean([](const LimitFunctionals& f) { return f.A; });
    check_mean([](const LimitFunctionals& f) { return f.B; });
}

TEST_CASE("tail-index pivot variance approaches sigma_sq (smoke scale)") {
    const auto draws = limit_law_sample(0.0, 5000, 4096, 8);
    std::vector<double> g(draws.draws.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = draws.draws[i].Gamma;
    CHECK(std::abs(variance_of(g) - sigma_sq(0.0)) < 0.08);
}

TEST_CASE("first integration cell is a vanishing share of P") {
    const std::size_t m = 32768;
    std::vector<double> grid(m);
    for (std::size_t j = 0; j < m; ++j) grid[j] = static_cast<double>(j + 1) / m;

    for (double gamma : {0.5, -0.25}) {
        const LimitFunctionalEvaluator eval(gamma, grid);
        double first_abs = 0.0;
        double p_abs = 0.0;
        const std::size_t paths = 2000;
        const std::uint64_t seed = gamma > 0 ? 1001 : 1002;
        for (std::size_t i = 0; i < paths; ++i) {
            const auto path = sample_wiener(m, derive_key(seed, i));
            first_abs += std::abs(eval.first_cell_p(path));
            p_abs += std::abs(eval.evaluate(path).P);
        }
        CHECK(first_abs < 0.01 * p_abs);
    }
}
