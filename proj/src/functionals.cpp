#include "csgn/functionals.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "csgn/kernels.hpp"

namespace csgn {

namespace {

double pow_d(double x, double e) { return std::pow(x, e); }

void check_nontrivial(const RadialProfile& g) {
    if (g.trivial())
        throw Error(ErrorCode::TrivialProfile,
                    "functional of the zero profile requested");
}

// ---- closed-form d = 3 complement primitives -------------------------
//
// With m = 1 + sp, the d = 3 kernel satisfies
//   A(r, rho) rho^2 = (2 pi / (r m)) * rho [ |rho-r|^{-m} - (rho+r)^{-m} ].
// The two families below are antiderivatives in rho of the bracketed
// expression (times rho), valid on one side of r.

// antiderivative of rho[ (rho-r)^{-m} - (rho+r)^{-m} ] for rho > r;
// tends to 0 as rho -> infinity
double prim_above(double rho, double r, double m) {
    const double u = rho - r;
    const double w = rho + r;
    if (m == 2.0)
        return std::log1p(-2.0 * r / w) - r * (1.0 / u + 1.0 / w);
    const double e = 2.0 - m;
    const double diff = pow_d(w, e) * std::expm1(e * std::log1p(-2.0 * r / w));
    return diff / e + r * (pow_d(u, 1.0 - m) + pow_d(w, 1.0 - m)) / (1.0 - m);
}

// antiderivative of rho[ (r-rho)^{-m} - (rho+r)^{-m} ] for 0 <= rho < r,
// normalized so the value at rho = 0 is 0
double prim_below(double rho, double r, double m) {
    const double u = r - rho;
    const double w = r + rho;
    if (m == 2.0) return std::log(u / w) + r * (1.0 / u - 1.0 / w);
    return r * (pow_d(u, 1.0 - m) - pow_d(w, 1.0 - m)) / (m - 1.0) +
           (pow_d(u, 2.0 - m) - pow_d(w, 2.0 - m)) / (2.0 - m);
}

double complement_d3(double r, const std::vector<Interval>& supports,
                     double sp) {
    const double m = 1.0 + sp;
    KahanSum acc;
    // inner piece (0, lo_1)
    const double lo1 = supports.front().first;
    if (lo1 > 0.0 && r > lo1) acc.add(prim_below(lo1, r, m));
    // gaps
    for (std::size_t k = 0; k + 1 < supports.size(); ++k) {
        const double a = supports[k].second;
        const double b = supports[k + 1].first;
        if (b <= r)
            acc.add(prim_below(b, r, m) - prim_below(a, r, m));
        else
            acc.add(prim_above(b, r, m) - prim_above(a, r, m));
    }
    // outer piece (hi_N, infinity); the primitive vanishes at infinity
    acc.add(-prim_above(supports.back().second, r, m));
    return 2.0 * M_PI / (r * m) * acc.value();
}

double complement_generic(double r, const std::vector<Interval>& supports,
                          int d, double sp, const QuadConfig& cfg) {
    const double e = d + sp;
    const auto f = [&](double rho) {
        return angular_numeric(r, rho, d, e) * pow_d(rho, d - 1);
    };
    KahanSum acc;
    const double lo1 = supports.front().first;
    if (lo1 > 0.0)
        acc.add(integrate_1d_refined(f, {0.0, lo1}, cfg, false, true).value);
    for (std::size_t k = 0; k + 1 < supports.size(); ++k)
        acc.add(integrate_1d_refined(
                    f, {supports[k].second, supports[k + 1].first}, cfg, true,
                    true)
                    .value);
    // outer tail by interval doubling with a power-law cutoff check
    double a = supports.back().second;
    for (int it = 0; it < 200; ++it) {
        const double b = 2.0 * a;
        const QuadResult seg =
            integrate_1d_refined(f, {a, b}, cfg, it == 0, false);
        acc.add(seg.value);
        a = b;
        const double tail_est = f(a) * a / sp;  // integrand ~ rho^{-(1+sp)}
        if (tail_est < 1e-3 * cfg.target_rel_tol * std::abs(acc.value())) break;
    }
    return acc.value();
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double frac_complement_integral(double r, const RadialProfile& g, int d,
                                double sp, const QuadConfig& cfg) {
    check_nontrivial(g);
    const auto supports = g.support();
    if (d == 3) return complement_d3(r, supports, sp);
    return complement_generic(r, supports, d, sp, cfg);
}

double lgamma_norm(const RadialProfile& g, double gamma, int d,
                   const QuadConfig& cfg, QuadResult* diag) {
    check_nontrivial(g);
    if (!(gamma > 0.0))
        throw Error(ErrorCode::InvalidParams, "lgamma_norm needs gamma > 0");
    const auto f = [&](double r) {
        return pow_d(std::abs(g.eval(r)), gamma) * pow_d(r, d - 1);
    };
    const QuadResult q = integrate_1d(f, g.support(), cfg);
    if (diag) *diag = q;
    return pow_d(sphere_area(d) * q.value, 1.0 / gamma);
}

double sobolev_seminorm(const RadialProfile& g, double s, double p, int d,
                        const QuadConfig& cfg, QuadResult* diag) {
    check_nontrivial(g);
    if (!(s > 0.0) || !(s <= 1.0) || !(p >= 1.0))
        throw Error(ErrorCode::InvalidParams,
                    "seminorm needs 0 < s <= 1, p >= 1");
    const auto supports = g.support();
    if (s == 1.0) {
        const auto f = [&](double r) {
            return pow_d(std::abs(g.eval_derivative(r)), p) * pow_d(r, d - 1);
        };
        const QuadResult q = integrate_1d(f, supports, cfg);
        if (diag) *diag = q;
        return pow_d(sphere_area(d) * q.value, 1.0 / p);
    }
    const double sp = s * p;
    // support-pair part
    const auto F = [&](double r, double rho, double diff) {
        const double dg = std::abs(g.eval(r) - g.eval(rho));
        if (dg == 0.0) return 0.0;
        return pow_d(dg, p) * frac_angular(r, rho, d, s, p, std::abs(diff)) *
               pow_d(r, d - 1) * pow_d(rho, d - 1);
    };
    const QuadResult pair =
        integrate_2d_offdiag(F, supports, supports, p - (1.0 + sp), cfg);
    // complement part: rho outside every support, g(rho) = 0
    KahanSum comp_value, comp_err;
    for (const Interval& iv : supports) {
        const auto fc = [&](double r) {
            const double gr = std::abs(g.eval(r));
            if (gr == 0.0) return 0.0;
            return pow_d(gr, p) * frac_complement_integral(r, g, d, sp, cfg) *
                   pow_d(r, d - 1);
        };
        const QuadResult q = integrate_1d_refined(fc, iv, cfg, true, true);
        comp_value.add(2.0 * q.value);
        comp_err.add(2.0 * q.est_rel_error * std::abs(q.value));
    }
    const double total = pair.value + comp_value.value();
    QuadResult q;
    q.value = total;
    q.est_rel_error =
        (pair.est_rel_error * std::abs(pair.value) + comp_err.value()) /
        std::max(std::abs(total), 1e-300);
    q.converged = q.est_rel_error <= cfg.target_rel_tol;
    if (diag) *diag = q;
    return pow_d(sphere_area(d) * total, 1.0 / p);
}

double coulomb_energy(const RadialProfile& g, double q, double alpha, int d,
                      const QuadConfig& cfg, QuadResult* diag) {
    check_nontrivial(g);
    if (!(alpha > 0.0) || !(alpha < d))
        throw Error(ErrorCode::InvalidParams,
                    "coulomb energy needs 0 < alpha < d");
    const auto F = [&](double r, double rho, double diff) {
        const double gr = std::abs(g.eval(r));
        const double gp = std::abs(g.eval(rho));
        if (gr == 0.0 || gp == 0.0) return 0.0;
        return pow_d(gr, q) * pow_d(gp, q) *
               riesz_angular(r, rho, d, alpha, std::abs(diff)) *
               pow_d(r, d - 1) * pow_d(rho, d - 1);
    };
    const auto supports = g.support();
    const QuadResult res =
        integrate_2d_offdiag(F, supports, supports, alpha - 1.0, cfg);
    if (diag) *diag = res;
    return sphere_area(d) * res.value;
}

double weighted_lq(const RadialProfile& g, double q, double w, Region region,
                   double R0, int d, const QuadConfig& cfg, QuadResult* diag) {
    check_nontrivial(g);
    if (!(R0 > 0.0))
        throw Error(ErrorCode::InvalidParams, "weighted_lq needs R0 > 0");
    std::vector<Interval> intervals;
    for (const Interval& iv : g.support()) {
        double a = iv.first, b = iv.second;
        if (region == Region::InsideR)
            b = std::min(b, R0);
        else
            a = std::max(a, R0);
        if (a < b) intervals.emplace_back(a, b);
    }
    if (intervals.empty()) {
        if (diag) *diag = QuadResult{0.0, 0.0, true};
        return 0.0;
    }
    const auto f = [&](double r) {
        return pow_d(std::abs(g.eval(r)), q) * pow_d(r, -w) * pow_d(r, d - 1);
    };
    const QuadResult res = integrate_1d(f, intervals, cfg);
    if (diag) *diag = res;
    return sphere_area(d) * res.value;
}

FunctionalReport quotient(const RadialProfile& g, const ParamTuple& params,
                          const DerivedParams& derived, const QuadConfig& cfg) {
    check_nontrivial(g);
    FunctionalReport rep;
    rep.lgamma_norm = lgamma_norm(g, to_double(params.gamma), params.d, cfg,
                                  &rep.lgamma_quad);
    rep.seminorm = sobolev_seminorm(g, to_double(params.s), to_double(params.p),
                                    params.d, cfg, &rep.seminorm_quad);
    rep.coulomb_energy = coulomb_energy(g, to_double(params.q),
                                        to_double(params.alpha), params.d, cfg,
                                        &rep.coulomb_quad);
    const double b1p = to_double(derived.beta1 * params.p);
    const double b2 = to_double(derived.beta2);
    rep.quotient = rep.lgamma_norm /
                   (pow_d(rep.seminorm, b1p) * pow_d(rep.coulomb_energy, b2));
    return rep;
}

std::string FunctionalReport::to_json() const {
    const auto quad = [](const QuadResult& q) {
        std::ostringstream os;
        os << "{\"value\": " << format_double(q.value)
           << ", \"est_rel_error\": " << format_double(q.est_rel_error)
           << ", \"converged\": " << (q.converged ? "true" : "false") << "}";
        return os.str();
    };
    std::ostringstream os;
    os << "{\"lgamma_norm\": " << format_double(lgamma_norm)
       << ", \"seminorm\": " << format_double(seminorm)
       << ", \"coulomb_energy\": " << format_double(coulomb_energy)
       << ", \"quotient\": " << format_double(quotient)
       << ", \"quad\": {\"lgamma\": " << quad(lgamma_quad)
       << ", \"seminorm\": " << quad(seminorm_quad)
       << ", \"coulomb\": " << quad(coulomb_quad) << "}}";
    return os.str();
}

}  // namespace csgn
