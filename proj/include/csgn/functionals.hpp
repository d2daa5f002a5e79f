#pragma once

// The three functionals of the interpolation inequality (L^gamma norm,
// fractional Sobolev seminorm, Coulomb energy) and the scale-invariant
// quotient, evaluated on radial bump profiles.

#include <string>

#include "csgn/exactparams.hpp"
#include "csgn/profiles.hpp"
#include "csgn/quadrature.hpp"

namespace csgn {

struct FunctionalReport {
    double lgamma_norm = 0.0;
    double seminorm = 0.0;
    double coulomb_energy = 0.0;
    double quotient = 0.0;

    QuadResult lgamma_quad;
    QuadResult seminorm_quad;
    QuadResult coulomb_quad;

    bool all_converged() const {
        return lgamma_quad.converged && seminorm_quad.converged &&
               coulomb_quad.converged;
    }

    std::string to_json() const;
};

// ( sigma_{d-1} * int |g|^gamma r^{d-1} dr )^{1/gamma}
double lgamma_norm(const RadialProfile& g, double gamma, int d,
                   const QuadConfig& cfg, QuadResult* diag = nullptr);

// Gagliardo double integral to the 1/p for 0 < s < 1; gradient form
// ( sigma_{d-1} * int |g'|^p r^{d-1} dr )^{1/p} at s = 1.
double sobolev_seminorm(const RadialProfile& g, double s, double p, int d,
                        const QuadConfig& cfg, QuadResult* diag = nullptr);

// Un-rooted double integral of |g(x)|^q |g(y)|^q |x-y|^{-(d-alpha)}.
double coulomb_energy(const RadialProfile& g, double q, double alpha, int d,
                      const QuadConfig& cfg, QuadResult* diag = nullptr);

enum class Region { InsideR, OutsideR };

// sigma_{d-1} * int_region |g|^q r^{-w} r^{d-1} dr
double weighted_lq(const RadialProfile& g, double q, double w, Region region,
                   double R0, int d, const QuadConfig& cfg,
                   QuadResult* diag = nullptr);

// Q = ||g||_gamma / ( seminorm^{beta1 p} * energy^{beta2} ); throws
// Error(TrivialProfile) on an empty profile.
FunctionalReport quotient(const RadialProfile& g, const ParamTuple& params,
                          const DerivedParams& derived, const QuadConfig& cfg);

// int over the complement of the profile supports of
// A_{d+sp}(r, rho) rho^{d-1} drho, for r inside a support. Closed form
// in d = 3 (including the unbounded tail); truncated numeric
// integration otherwise. Exposed for oracle tests.
double frac_complement_integral(double r, const RadialProfile& g, int d,
                                double sp, const QuadConfig& cfg);

// %.17g formatting used by every float that crosses a text boundary.
std::string format_double(double x);

}  // namespace csgn
