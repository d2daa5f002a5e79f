#pragma once

// Sphere-averaged interaction kernels A_e(r, rho) = integral over the
// unit sphere of |r e_1 - rho w|^{-e} dS(w). They reduce the
// d-dimensional double integrals (Coulomb energy, fractional seminorm)
// to double integrals over radii.
//
// Each kernel takes an optional absdiff = |r - rho|. The rotated square
// quadrature knows the off-diagonal offset exactly; recomputing it as
// r - rho would quantize it to the floating-point grid at |r|, which
// for bumps at radius ~1e5 destroys the near-diagonal singularity.
// Negative absdiff (the default) means "compute it from r and rho".

#include "csgn/errors.hpp"

namespace csgn {

// Riesz kernel |x-y|^{-(d-alpha)}. Closed form in d = 3, numeric sphere
// average otherwise. Finite on the diagonal iff alpha > 1; throws
// Error(NonIntegrableDiagonal) at r = rho with alpha <= 1.
double riesz_angular(double r, double rho, int d, double alpha,
                     double absdiff = -1.0);

// Fractional-seminorm kernel |x-y|^{-(d+sp)}. Always infinite on the
// diagonal; throws Error(DiagonalSingularity) at r = rho.
double frac_angular(double r, double rho, int d, double s, double p,
                    double absdiff = -1.0);

// Generic-dimension sphere average for kernel exponent e, computed by
// dyadically refined Gauss quadrature in the polar angle. Serves d != 3
// and acts as the oracle for the d = 3 closed forms.
double angular_numeric(double r, double rho, int d, double e,
                       double absdiff = -1.0);

// Surface area of the unit (d-1)-sphere in R^d.
double sphere_area(int d);

}  // namespace csgn
