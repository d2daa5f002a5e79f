#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "csgn/quadrature.hpp"

using namespace csgn;

TEST_CASE("gauss rules") {
    for (int n : {4, 5, 16, 24, 32}) {
        const GaussRule& rule = gauss_rule(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0, xmom = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += rule.weights[i];
            xmom += rule.weights[i] * rule.nodes[i];
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(std::abs(xmom) < 1e-15);
    }
    // n-point rule is exact through degree 2n-1
    const GaussRule& r5 = gauss_rule(5);
    double v = 0.0;
    for (int i = 0; i < 5; ++i) v += r5.weights[i] * std::pow(r5.nodes[i], 8);
    CHECK(v == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("integrate_1d basics") {
    QuadConfig cfg;
    const auto sq = [](double x) { return x * x; };
    const QuadResult r = integrate_1d(sq, {{0.0, 1.0}}, cfg);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r.converged);

    CHECK(integrate_1d(sq, {}, cfg).value == 0.0);
    CHECK(integrate_1d(sq, {}, cfg).converged);

    // interval list additivity
    const QuadResult r2 = integrate_1d(sq, {{0.0, 0.5}, {0.5, 1.0}}, cfg);
    CHECK(r2.value == doctest::Approx(r.value).epsilon(1e-14));
}

TEST_CASE("integrate_1d on a bump scales with its width") {
    QuadConfig cfg;
    const auto eta = [](double t) {
        return std::abs(t) < 1.0 ? std::exp(1.0 / (t * t - 1.0)) : 0.0;
    };
    QuadConfig hi = cfg;
    hi.gauss_order = 48;
    hi.panels_per_bump = 32;
    const double ref = integrate_1d(eta, {{-1.0, 1.0}}, hi).value;
    for (auto [R, S] : {std::pair{10.0, 1.0}, {100.0, 7.0}}) {
        const auto f = [&](double r) { return eta((r - R) / S); };
        const QuadResult r = integrate_1d(f, {{R - S, R + S}}, cfg);
        CHECK(r.value == doctest::Approx(S * ref).epsilon(1e-9));
        CHECK(r.converged);
    }
}

TEST_CASE("integrate_1d_refined handles endpoint power growth") {
    QuadConfig cfg;
    // x^{-1/2} * x = sqrt(x): mimics vanishing-times-singular data
    const auto f = [](double x) { return std::sqrt(x); };
    const QuadResult refined = integrate_1d_refined(f, {0.0, 1.0}, cfg, true, false);
    CHECK(refined.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    const QuadResult plain = integrate_1d(f, {{0.0, 1.0}}, cfg);
    CHECK(std::abs(refined.value - 2.0 / 3.0) <
          std::abs(plain.value - 2.0 / 3.0));
}

TEST_CASE("square scheme: smooth and singular oracles") {
    QuadConfig cfg;
    const QuadResult one = integrate_square_diag(
        [](double, double, double) { return 1.0; }, {0.0, 1.0}, 0.0, cfg);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));

    // int int |r - rho| over the unit square = 1/3
    const QuadResult lin = integrate_square_diag(
        [](double, double, double u) { return std::abs(u); }, {0.0, 1.0}, 1.0,
        cfg);
    CHECK(lin.value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    // int int |r - rho|^{-1/2} over the unit square = 8/3
    const QuadResult sing = integrate_square_diag(
        [](double, double, double u) { return std::pow(std::abs(u), -0.5); },
        {0.0, 1.0}, -0.5, cfg);
    CHECK(sing.value == doctest::Approx(8.0 / 3.0).epsilon(1e-8));
    CHECK(sing.converged);

    CHECK_THROWS_AS(integrate_square_diag(
                        [](double, double, double) { return 1.0; }, {0.0, 1.0},
                        -1.5, cfg),
                    Error);
}

TEST_CASE("diagonal refinement demonstrably helps") {
    // seminorm-style integrand: |f(r)-f(rho)|^2 |r-rho|^{-3/2}, f = sin;
    // behaves like |r-rho|^{1/2} at the diagonal (not smooth there)
    const auto F = [](double r, double rho, double u) {
        const double d = std::sin(r) - std::sin(rho);
        return d * d * std::pow(std::abs(u), -1.5);
    };
    QuadConfig cfg;
    QuadConfig ref = cfg;
    ref.gauss_order = 32;
    ref.diagonal_refinement_levels = 24;
    const double truth = integrate_square_diag(F, {0.0, 1.0}, 0.5, ref).value;
    const double refined = integrate_square_diag(F, {0.0, 1.0}, 0.5, cfg).value;
    // raw tensor Gauss on the same square, no diagonal treatment
    const GaussRule& rule = gauss_rule(cfg.gauss_order);
    double raw = 0.0;
    const int panels = cfg.panels_per_bump;
    const double w = 1.0 / panels;
    for (int a = 0; a < panels; ++a) {
        for (int b = 0; b < panels; ++b) {
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double r = (a + 0.5 + 0.5 * rule.nodes[i]) * w;
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                    const double rho = (b + 0.5 + 0.5 * rule.nodes[j]) * w;
                    if (r == rho) continue;
                    raw += rule.weights[i] * rule.weights[j] * 0.25 * w * w *
                           F(r, rho, r - rho);
                }
            }
        }
    }
    const double err_refined = std::abs(refined - truth);
    const double err_raw = std::abs(raw - truth);
    CHECK(err_refined * 10.0 < err_raw);
    CHECK(err_refined / std::abs(truth) < 1e-9);
}

TEST_CASE("refinement stability of the singular square") {
    const auto F = [](double r, double rho, double u) {
        return std::pow(std::abs(u), -0.5) * std::cos(r + rho);
    };
    QuadConfig cfg;
    QuadConfig deeper = cfg;
    deeper.diagonal_refinement_levels *= 2;
    const double a = integrate_square_diag(F, {1.0, 2.0}, -0.5, cfg).value;
    const double b = integrate_square_diag(F, {1.0, 2.0}, -0.5, deeper).value;
    CHECK(std::abs(a - b) / std::abs(b) < cfg.target_rel_tol);
}

TEST_CASE("rectangle scheme") {
    QuadConfig cfg;
    const QuadResult r = integrate_rect(
        [](double, double, double) { return 1.0; }, {1.0, 2.0}, {3.0, 4.0},
        cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    // near pair with an integrable cross-gap singularity
    const auto F = [](double, double, double u) {
        return std::pow(-u, -0.5);  // u = x - y < 0 here
    };
    // int_0^1 int_1^2 (y-x)^{-1/2} = int_0^1 2[(2-x)^{1/2} - (1-x)^{1/2}] dx
    // = (4/3)[2^{3/2} - 1 - 1] = (4/3)(2 sqrt 2 - 2)
    const double exact = 4.0 / 3.0 * (2.0 * std::sqrt(2.0) - 2.0);
    const QuadResult near =
        integrate_rect(F, {0.0, 1.0}, {1.0, 2.0}, cfg);
    CHECK(near.value == doctest::Approx(exact).epsilon(1e-7));

    CHECK_THROWS_AS(integrate_rect(F, {0.0, 1.5}, {1.0, 2.0}, cfg), Error);
}

TEST_CASE("pair decomposition") {
    QuadConfig cfg;
    const std::vector<Interval> iv = {{0.0, 1.0}, {2.0, 3.0}};
    const QuadResult r = integrate_2d_offdiag(
        [](double, double, double) { return 1.0; }, iv, iv, 0.0, cfg);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("order doubling error estimate shrinks with order") {
    const auto f = [](double x) { return std::exp(std::sin(3.0 * x)); };
    QuadConfig lo;
    lo.gauss_order = 4;
    lo.panels_per_bump = 2;
    QuadConfig hi = lo;
    hi.gauss_order = 12;
    const QuadResult a = integrate_1d(f, {{0.0, 2.0}}, lo);
    const QuadResult b = integrate_1d(f, {{0.0, 2.0}}, hi);
    CHECK(b.est_rel_error < a.est_rel_error);
}

TEST_CASE("determinism across worker counts") {
    const auto F = [](double r, double rho, double u) {
        return std::pow(std::abs(u), -0.5) * std::exp(-r - rho);
    };
    QuadConfig cfg;
    const std::vector<Interval> iv = {{0.0, 1.0}, {1.5, 2.0}, {4.0, 4.5}};
    setenv("CSGN_WORKERS", "1", 1);
    const QuadResult a = integrate_2d_offdiag(F, iv, iv, -0.5, cfg);
    setenv("CSGN_WORKERS", "3", 1);
    const QuadResult b = integrate_2d_offdiag(F, iv, iv, -0.5, cfg);
    unsetenv("CSGN_WORKERS");
    CHECK(a.value == b.value);  // bit identical
    CHECK(a.est_rel_error == b.est_rel_error);
}

TEST_CASE("config validation") {
    QuadConfig cfg;
    cfg.gauss_order = 2;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = QuadConfig{};
    cfg.target_rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}
