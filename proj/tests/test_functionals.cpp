#include "doctest.h"

#include <cmath>

#include "csgn/functionals.hpp"
#include "csgn/kernels.hpp"

using namespace csgn;

namespace {

constexpr double kPi = 3.14159265358979323846;

RadialProfile bump(double lambda, double R, double S) {
    return RadialProfile({{lambda, R, S}});
}

QuadConfig high_order() {
    QuadConfig cfg;
    cfg.gauss_order = 40;
    cfg.panels_per_bump = 24;
    return cfg;
}

}  // namespace

TEST_CASE("lgamma_norm: homogeneity, dilation, oracle") {
    QuadConfig cfg;
    const double base = lgamma_norm(bump(1.0, 10.0, 1.0), 3.0, 3, cfg);
    CHECK(base > 0.0);
    CHECK(lgamma_norm(bump(2.0, 10.0, 1.0), 3.0, 3, cfg) ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
    // dilation (R,S) -> (2R,2S) multiplies by 2^{d/gamma} = 2
    CHECK(lgamma_norm(bump(1.0, 20.0, 2.0), 3.0, 3, cfg) ==
          doctest::Approx(2.0 * base).epsilon(1e-10));
    // direct high-order radial oracle
    const RadialProfile g = bump(1.0, 10.0, 1.0);
    const auto f = [&](double r) {
        return std::pow(g.eval(r), 3.0) * r * r;
    };
    const double oracle =
        std::cbrt(4.0 * kPi * integrate_1d(f, g.support(), high_order()).value);
    CHECK(base == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("seminorm s=1 gradient oracle") {
    QuadConfig cfg;
    const RadialProfile g = bump(1.0, 10.0, 1.0);
    const double v = sobolev_seminorm(g, 1.0, 2.0, 3, cfg);
    const auto f = [&](double r) {
        const double d = g.eval_derivative(r);
        return d * d * r * r;
    };
    const double oracle =
        std::sqrt(4.0 * kPi * integrate_1d(f, g.support(), high_order()).value);
    CHECK(v == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("complement kernel integral: closed form vs numeric") {
    const RadialProfile g({{1.0, 10.0, 1.0}, {1.0, 20.0, 2.0}});
    QuadConfig cfg;
    for (double sp : {0.75, 1.0, 1.5}) {
        for (double r : {9.5, 10.0, 10.5, 19.0, 20.0, 21.5}) {
            const double closed = frac_complement_integral(r, g, 3, sp, cfg);
            // numeric: complement pieces (0, 9), (11, 18), (22, T) + tail
            const double s = 0.5, p = 2.0 * sp;  // any split with s*p = sp
            const auto f = [&](double rho) {
                return frac_angular(r, rho, 3, s, p) * rho * rho;
            };
            QuadConfig hi = high_order();
            double numeric = integrate_1d(f, {{1e-9, 9.0}, {11.0, 18.0}}, hi).value;
            double a = 22.0;
            while (a < 1e7) {
                numeric += integrate_1d(f, {{a, 4.0 * a}}, hi).value;
                a *= 4.0;
            }
            numeric += 4.0 * kPi * std::pow(a, -sp) / sp;  // analytic tail
            CHECK(closed == doctest::Approx(numeric).epsilon(1e-6));
        }
    }
}

TEST_CASE("seminorm s<1: dilation scaling and refinement stability") {
    QuadConfig cfg;
    const double v1 = sobolev_seminorm(bump(1.0, 10.0, 1.0), 0.5, 2.0, 3, cfg);
    CHECK(v1 > 0.0);
    // x -> 2x scales the seminorm by 2^{(d-sp)/p} = 2
    const double v2 = sobolev_seminorm(bump(1.0, 20.0, 2.0), 0.5, 2.0, 3, cfg);
    CHECK(v2 == doctest::Approx(2.0 * v1).epsilon(1e-6));

    QuadConfig deeper = cfg;
    deeper.diagonal_refinement_levels *= 2;
    const double v3 =
        sobolev_seminorm(bump(1.0, 10.0, 1.0), 0.5, 2.0, 3, deeper);
    CHECK(std::abs(v3 - v1) / v3 < cfg.target_rel_tol);

    // amplitude homogeneity
    const double v4 = sobolev_seminorm(bump(3.0, 10.0, 1.0), 0.5, 2.0, 3, cfg);
    CHECK(v4 == doctest::Approx(3.0 * v1).epsilon(1e-12));
}

TEST_CASE("coulomb energy: oracle for alpha = 2") {
    QuadConfig cfg;
    const RadialProfile g = bump(1.0, 10.0, 1.0);
    const double e = coulomb_energy(g, 2.0, 2.0, 3, cfg);
    // alpha = 2, d = 3: A r^2 rho^2 = 4 pi min(r,rho) r rho, so
    // E = 32 pi^2 int g^2(r) r [ int_{rho<r} g^2(rho) rho^2 drho ] dr
    QuadConfig hi = high_order();
    const auto outer = [&](double r) {
        const auto inner = [&](double rho) {
            const double v = g.eval(rho);
            return v * v * rho * rho;
        };
        const double gr = g.eval(r);
        return gr * gr * r * integrate_1d(inner, {{9.0, r}}, hi).value;
    };
    const double oracle =
        32.0 * kPi * kPi * integrate_1d(outer, {{9.0, 11.0}}, hi).value;
    CHECK(e == doctest::Approx(oracle).epsilon(1e-8));

    // amplitude homogeneity: lambda -> 2 lambda scales by 2^{2q} = 16
    CHECK(coulomb_energy(bump(2.0, 10.0, 1.0), 2.0, 2.0, 3, cfg) ==
          doctest::Approx(16.0 * e).epsilon(1e-12));
    // dilation scales by 2^{d+alpha} = 32
    CHECK(coulomb_energy(bump(1.0, 20.0, 2.0), 2.0, 2.0, 3, cfg) ==
          doctest::Approx(32.0 * e).epsilon(1e-7));
}

TEST_CASE("coulomb energy: superadditivity over bumps") {
    QuadConfig cfg;
    const RadialProfile both({{1.0, 10.0, 1.0}, {0.7, 15.0, 1.0}});
    const double e_both = coulomb_energy(both, 2.0, 1.5, 3, cfg);
    const double e1 = coulomb_energy(bump(1.0, 10.0, 1.0), 2.0, 1.5, 3, cfg);
    const double e2 = coulomb_energy(bump(0.7, 15.0, 1.0), 2.0, 1.5, 3, cfg);
    CHECK(e_both > e1 + e2);
}

TEST_CASE("weighted_lq regions") {
    QuadConfig cfg;
    const RadialProfile g = bump(1.0, 10.0, 1.0);
    const double full = weighted_lq(g, 2.0, 0.0, Region::OutsideR, 0.5, 3, cfg);
    const double lq = lgamma_norm(g, 2.0, 3, cfg);
    CHECK(full == doctest::Approx(lq * lq).epsilon(1e-10));
    CHECK(weighted_lq(g, 2.0, 0.0, Region::InsideR, 0.5, 3, cfg) == 0.0);
    // split at the bump center: the two halves sum to the whole
    const double lo = weighted_lq(g, 2.0, 0.7, Region::InsideR, 10.0, 3, cfg);
    const double hi = weighted_lq(g, 2.0, 0.7, Region::OutsideR, 10.0, 3, cfg);
    const double whole = weighted_lq(g, 2.0, 0.7, Region::OutsideR, 0.5, 3, cfg);
    CHECK(lo + hi == doctest::Approx(whole).epsilon(1e-9));
    CHECK(lo > 0.0);
    CHECK(hi > 0.0);
}

TEST_CASE("quotient: amplitude and dilation invariance (Lions tuple)") {
    const ParamTuple t{3, 1, 2, 2, 2, 3};
    const DerivedParams dp = derive(t);
    QuadConfig cfg;
    const double q0 = quotient(bump(1.0, 10.0, 1.0), t, dp, cfg).quotient;
    CHECK(q0 > 0.0);
    for (double c : {0.25, 4.0}) {
        const double qc = quotient(bump(c, 10.0, 1.0), t, dp, cfg).quotient;
        CHECK(std::abs(qc - q0) / q0 < 1e-6);
    }
    for (double c : {0.5, 2.0, 4.0}) {
        const double qc =
            quotient(bump(1.0, 10.0 * c, c), t, dp, cfg).quotient;
        CHECK(std::abs(qc - q0) / q0 < 1e-6);
    }
}

TEST_CASE("quotient: fractional tuple invariance and stability") {
    const ParamTuple t{3, Rational(1, 2), 2, 4, 2, Rational(47, 10)};
    const DerivedParams dp = derive(t);
    QuadConfig cfg;
    const FunctionalReport rep = quotient(bump(1.0, 10.0, 1.0), t, dp, cfg);
    CHECK(rep.quotient > 0.0);
    CHECK(rep.all_converged());
    for (double c : {0.5, 2.0}) {
        const double qc =
            quotient(bump(1.0, 10.0 * c, c), t, dp, cfg).quotient;
        CHECK(std::abs(qc - rep.quotient) / rep.quotient < 1e-6);
    }
    QuadConfig finer = cfg;
    finer.gauss_order = 24;
    finer.diagonal_refinement_levels = 18;
    const double qf = quotient(bump(1.0, 10.0, 1.0), t, dp, finer).quotient;
    CHECK(std::abs(qf - rep.quotient) / qf < 1e-6);
}

TEST_CASE("trivial profile is rejected") {
    const ParamTuple t{3, 1, 2, 2, 2, 3};
    const DerivedParams dp = derive(t);
    QuadConfig cfg;
    try {
        quotient(RadialProfile{}, t, dp, cfg);
        FAIL("expected trivial-profile error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TrivialProfile);
    }
}

TEST_CASE("report serializes with diagnostics") {
    const ParamTuple t{3, 1, 2, 2, 2, 3};
    QuadConfig cfg;
    const FunctionalReport rep =
        quotient(bump(1.0, 10.0, 1.0), t, derive(t), cfg);
    const std::string j = rep.to_json();
    CHECK(j.find("\"quotient\"") != std::string::npos);
    CHECK(j.find("\"est_rel_error\"") != std::string::npos);
    CHECK(j.find("\"converged\": true") != std::string::npos);
}
