#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "quadrature_oracle.hpp"
#include "tailboot/errors.hpp"
#include "tailboot/rng.hpp"
#include "tailboot/tail_functions.hpp"

using namespace tailboot;
using tailboot_test::q_oracle;

namespace {

TailFit synthetic_fit(double gamma, double scale_a, double loc_b, std::size_t n,
                      std::size_t k) {
    TailFit fit;
    fit.n = n;
    fit.k = k;
    fit.gamma = gamma;
    fit.gamma_plus = std::max(0.0, gamma);
    fit.gamma_minus = std::min(0.0, gamma);
    fit.h_n = fit.gamma_plus;
    fit.m_n = 1.0;
    fit.scale_a = scale_a;
    fit.loc_b = loc_b;
    return fit;
}

}  // namespace

TEST_CASE("q_gamma spot values") {
    CHECK(q_gamma(0.0, std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(q_gamma(1.0, std::exp(1.0)) ==
          doctest::Approx(q_oracle(1.0, std::exp(1.0))).epsilon(1e-12));
    CHECK(q_gamma(-0.5, 100.0) == doctest::Approx(q_oracle(-0.5, 100.0)).epsilon(1e-10));
    CHECK(q_gamma(0.3, 1.0) == 0.0);
    CHECK_THROWS_AS(q_gamma(0.5, 0.999), BadT);
}

TEST_CASE("w_gamma spot values") {
    CHECK(w_gamma(0.0, std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w_gamma(1.0, std::exp(1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    // branch continuity right at the switch tolerance
    const double l10 = std::log(10.0);
    CHECK(w_gamma(1e-12, 10.0) == doctest::Approx(0.5 * l10 * l10).epsilon(1e-6));
    CHECK_THROWS_AS(w_gamma(0.0, 0.5), BadT);
}

TEST_CASE("closed forms agree with quadrature over the whole grid") {
    for (double gamma : {-1.0, -0.5, -1e-6, 0.0, 1e-6, 0.5, 1.0}) {
        for (double t : {1.0 + 1e-9, 1.5, 10.0, 1e4}) {
            const double oracle = q_oracle(gamma, t);
            const double q = q_gamma(gamma, t);
            CHECK(std::abs(q - oracle) <= 1e-8 * (1.0 + std::abs(oracle)));
            const double w = w_gamma(gamma, t);
            const double w_oracle = std::pow(t, -gamma) * oracle;
            CHECK(std::abs(w - w_oracle) <= 1e-8 * (1.0 + std::abs(w_oracle)));
        }
    }
}

TEST_CASE("q and w branch forms agree at twice the switch tolerance") {
    for (double t : {1.5, 10.0, 1e4}) {
        const double limit = 0.5 * std::log(t) * std::log(t);
        for (double g : {2e-8, -2e-8}) {
            CHECK(q_gamma(g, t) == doctest::Approx(limit).epsilon(1e-6));
            CHECK(w_gamma(g, t) == doctest::Approx(limit).epsilon(1e-6));
        }
    }
}

TEST_CASE("sigma_sq spot values and domain") {
    CHECK(sigma_sq(0.0) == 1.0);
    CHECK(sigma_sq(0.5) == 1.25);
    // hand evaluation of the negative branch at gamma = -1/4:
    // (1.25^2 * 2) / (1.5 * 1.75 * 2) = 3.125/5.25
    CHECK(sigma_sq(-0.25) == doctest::Approx(3.125 / 5.25).epsilon(1e-12));
    CHECK(sigma_sq(-1e-8) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(sigma_sq(-0.5), OutOfDomain);
    CHECK_THROWS_AS(sigma_sq(-2.0), OutOfDomain);
}

TEST_CASE("high quantile estimator") {
    SUBCASE("d == 1 returns the threshold bitwise") {
        const TailFit fit = synthetic_fit(0.7, 2.0, 5.0, 512, 64);
        const auto est = estimate_high_quantile(fit, 0.125);  // k/n exactly
        CHECK(est.d_n == 1.0);
        CHECK(est.x_hat == 5.0);
        CHECK(!est.in_sample);
    }
    SUBCASE("hand value at gamma=1, d=10") {
        const TailFit fit = synthetic_fit(1.0, 1.0, 0.0, 1000, 100);
        const auto est = estimate_high_quantile(fit, 0.01);
        CHECK(est.d_n == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(est.x_hat == doctest::Approx(9.0).epsilon(1e-12));
        CHECK(est.scale_factor > 0.0);
    }
    SUBCASE("log branch at tiny gamma") {
        const TailFit fit = synthetic_fit(1e-14, 1.0, 0.0, 1000, 100);
        const double p = 100.0 / (1000.0 * std::exp(1.0));
        CHECK(estimate_high_quantile(fit, p).x_hat == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("in-sample depths are flagged, not rejected") {
        const TailFit fit = synthetic_fit(0.5, 1.0, 2.0, 1000, 100);
        const auto est = estimate_high_quantile(fit, 0.5);  // d = 0.2
        CHECK(est.in_sample);
        CHECK(est.x_hat < fit.loc_b);
        CHECK_THROWS_AS(estimate_high_quantile(fit, 0.0), OutOfDomain);
        CHECK_THROWS_AS(estimate_high_quantile(fit, 1.0), OutOfDomain);
    }
}

TEST_CASE("tail probability estimator") {
    SUBCASE("x at the threshold gives exactly k/n") {
        const TailFit fit = synthetic_fit(0.37, 1.5, 4.0, 500, 50);
        const auto est = estimate_tail_probability(fit, 4.0);
        CHECK(est.p_hat == 0.1);
        CHECK(!est.clamped);
        CHECK(est.d_hat == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("hand value, inverse of the quantile example") {
        const TailFit fit = synthetic_fit(1.0, 1.0, 0.0, 1000, 100);
        const auto est = estimate_tail_probability(fit, 9.0);
        CHECK(est.p_hat == doctest::Approx(0.01).epsilon(1e-12));
    }
    SUBCASE("beyond the estimated endpoint") {
        const TailFit fit = synthetic_fit(-0.5, 1.0, 0.0, 1000, 100);
        const auto est = estimate_tail_probability(fit, 3.0);  // endpoint is 2
        CHECK(est.p_hat == 0.0);
        CHECK(est.clamped);
        CHECK(std::isinf(est.d_hat));
    }
    SUBCASE("max-branch blow-up with positive gamma caps at 1") {
        const TailFit fit = synthetic_fit(1.0, 1.0, 5.0, 1000, 100);
        const auto est = estimate_tail_probability(fit, 3.0);  // arg = -2
        CHECK(est.p_hat == 1.0);
        CHECK(est.clamped);
    }
    SUBCASE("light-tail cap below the threshold") {
        const TailFit fit = synthetic_fit(0.0, 1.0, 10.0, 1000, 100);
        const auto est = estimate_tail_probability(fit, 0.1);
        CHECK(est.p_hat == 1.0);
        CHECK(est.clamped);
    }
}

TEST_CASE("round trip p_hat(x_hat(p)) == p over fuzzed fits") {
    Rng rng(31);
    int checked = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        double gamma;
        switch (rep % 7) {
            case 0: gamma = 0.0; break;
            case 1: gamma = 1e-9; break;
            case 2: gamma = -1e-9; break;
            case 3: gamma = 2e-8; break;
            case 4: gamma = -2e-8; break;
            default: gamma = -2.0 + 4.0 * rng.uniform01(); break;
        }
        const double a = 0.1 + 10.0 * rng.uniform01();
        const double b = 0.5 + 100.0 * rng.uniform01();
        const std::size_t n = 100 + rng.below(10000);
        const std::size_t k = 1 + rng.below(n / 2);
        const TailFit fit = synthetic_fit(gamma, a, b, n, k);

        // d in [1, 1e6], capped for gamma < 0 so the inverse stays
        // well-conditioned: nearer the endpoint than d^gamma ~ 1e-3, a
        // double-precision x_hat cannot carry what the round trip needs.
        double max_log_depth = std::log(1e6);
        if (gamma < 0.0) {
            max_log_depth = std::min(max_log_depth, std::log(1e3) / -gamma);
        }
        const double depth = std::exp(max_log_depth * rng.uniform01());
        const double p = static_cast<double>(k) / (static_cast<double>(n) * depth);
        if (!(p > 0.0 && p < 1.0)) continue;

        const auto qe = estimate_high_quantile(fit, p);
        const auto pe = estimate_tail_probability(fit, qe.x_hat);
        CHECK(!pe.clamped);
        CHECK(pe.p_hat == doctest::Approx(p).epsilon(1e-10));
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("estimators are monotone in their targets") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const double gamma = -1.5 + 3.0 * rng.uniform01();
        const TailFit fit =
            synthetic_fit(gamma, 0.5 + rng.uniform01(), 1.0 + rng.uniform01(), 2000, 100);

        double prev_x = INFINITY;
        for (double p = 1e-6; p < 0.5; p *= 3.7) {
            const double x = estimate_high_quantile(fit, p).x_hat;
            CHECK(x <= prev_x);
            prev_x = x;
        }
        double prev_p = INFINITY;
        for (double x = fit.loc_b; x < fit.loc_b + 50.0; x += 2.0) {
            const double p = estimate_tail_probability(fit, x).p_hat;
            CHECK(p <= prev_p);
            prev_p = p;
        }
    }
}

TEST_CASE("quantile and probability branches agree across the gamma switch") {
    const TailFit fit0 = synthetic_fit(0.0, 1.0, 2.0, 1000, 100);
    for (double g : {2e-8, -2e-8}) {
        const TailFit fit = synthetic_fit(g, 1.0, 2.0, 1000, 100);
        for (double p : {1e-5, 1e-3, 0.05}) {
            const double x0 = estimate_high_quantile(fit0, p).x_hat;
            const double xg = estimate_high_quantile(fit, p).x_hat;
            CHECK(xg == doctest::Approx(x0).epsilon(1e-6));
        }
        for (double x : {2.5, 4.0, 8.0}) {
            const double p0 = estimate_tail_probability(fit0, x).p_hat;
            const double pg = estimate_tail_probability(fit, x).p_hat;
            CHECK(pg == doctest::Approx(p0).epsilon(1e-6));
        }
    }
}
