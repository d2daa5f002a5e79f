#include "csgn/kernels.hpp"

#include <cmath>
#include <sstream>

#include "csgn/quadrature.hpp"

namespace csgn {

namespace {

void check_radii(double r, double rho) {
    if (!(r > 0.0) || !(rho > 0.0))
        throw Error(ErrorCode::InvalidParams, "angular kernels need r, rho > 0");
}

// Squared chord length at polar angle theta, stable near theta = 0.
double chord_sq(double diff, double r, double rho, double theta) {
    const double sn = std::sin(0.5 * theta);
    return diff * diff + 4.0 * r * rho * sn * sn;
}

double resolve_diff(double r, double rho, double absdiff) {
    return absdiff >= 0.0 ? absdiff : std::abs(r - rho);
}

}  // namespace

double sphere_area(int d) {
    if (d < 1) throw Error(ErrorCode::InvalidParams, "sphere_area needs d >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double angular_numeric(double r, double rho, int d, double e, double absdiff) {
    check_radii(r, rho);
    if (d < 2)
        throw Error(ErrorCode::InvalidParams, "angular average needs d >= 2");
    const double rdiff = resolve_diff(r, rho, absdiff);
    if (rdiff == 0.0 && e >= d - 1)
        throw Error(ErrorCode::NonIntegrableDiagonal,
                    "sphere average diverges at r = rho for e >= d-1");
    // c_d * int_0^pi chord^{-e} sin^{d-2} dtheta with c_d the area of
    // the (d-2)-sphere; dyadic panels toward theta = 0 where the
    // integrand behaves like a power of theta.
    const double cd = (d == 2) ? 2.0
                               : 2.0 * std::pow(M_PI, 0.5 * (d - 1)) /
                                     std::tgamma(0.5 * (d - 1));
    const auto f = [&](double theta) {
        const double sn = std::sin(theta);
        return std::pow(chord_sq(rdiff, r, rho, theta), -0.5 * e) *
               (d == 2 ? 1.0 : std::pow(sn, static_cast<double>(d - 2)));
    };
    const GaussRule& rule = gauss_rule(24);
    const int max_levels = 160;
    KahanSum total;
    double a = M_PI;
    int k = 0;
    for (; k < max_levels; ++k) {
        const double b = a;
        a = M_PI * std::ldexp(1.0, -(k + 1));
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        KahanSum panel;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            panel.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
        total.add(panel.value() * half);
        // local power-law tail estimate from two probes
        const double fa = f(a);
        const double fh = f(0.5 * a);
        if (fa <= 0.0 || fh <= 0.0) break;
        const double kappa = std::log2(fa / fh);  // f ~ theta^kappa locally
        if (kappa <= -1.0) continue;              // keep refining
        const double tail = fa * a / (kappa + 1.0);
        if (tail < 1e-13 * std::abs(total.value())) {
            total.add(tail);
            break;
        }
    }
    if (k == max_levels)
        throw Error(ErrorCode::NonIntegrableDiagonal,
                    "sphere average did not converge; kernel too singular");
    return cd * total.value();
}

double riesz_angular(double r, double rho, int d, double alpha,
                     double absdiff) {
    check_radii(r, rho);
    if (!(alpha > 0.0) || !(alpha < d))
        throw Error(ErrorCode::InvalidParams, "riesz kernel needs 0 < alpha < d");
    const double diff = resolve_diff(r, rho, absdiff);
    if (diff == 0.0 && alpha <= 1.0) {
        std::ostringstream os;
        os << "riesz sphere average infinite at r = rho = " << r
           << " for alpha <= 1";
        throw Error(ErrorCode::NonIntegrableDiagonal, os.str());
    }
    if (d != 3) return angular_numeric(r, rho, d, d - alpha, absdiff);
    const double sum = r + rho;
    if (alpha == 1.0) return 2.0 * M_PI / (r * rho) * std::log(sum / diff);
    const double a1 = alpha - 1.0;
    return 2.0 * M_PI / (r * rho * a1) *
           (std::pow(sum, a1) - (diff == 0.0 ? 0.0 : std::pow(diff, a1)));
}

double frac_angular(double r, double rho, int d, double s, double p,
                    double absdiff) {
    check_radii(r, rho);
    if (!(s > 0.0) || !(s < 1.0) || !(p >= 1.0))
        throw Error(ErrorCode::InvalidParams,
                    "fractional kernel needs 0 < s < 1 and p >= 1");
    const double diff = resolve_diff(r, rho, absdiff);
    if (diff == 0.0)
        throw Error(ErrorCode::DiagonalSingularity,
                    "fractional kernel diverges at r = rho");
    const double sp = s * p;
    if (d != 3) return angular_numeric(r, rho, d, d + sp, absdiff);
    const double m = 1.0 + sp;
    return 2.0 * M_PI / (r * rho * m) *
           (std::pow(diff, -m) - std::pow(r + rho, -m));
}

}  // namespace csgn
