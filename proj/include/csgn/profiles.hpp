#pragma once

// Radial test profiles: finite sums of disjoint annular bumps built
// from one fixed smooth mother bump.

#include <string>
#include <vector>

#include "csgn/errors.hpp"

namespace csgn {

// The standard bump eta(t) = exp(1/(t^2-1)) on (-1,1), zero outside.
// Smooth, even, eta'(0) = 0.
namespace mother_bump {
double eval(double t);
double derivative(double t);
}  // namespace mother_bump

struct BumpSpec {
    double lambda;  // amplitude > 0
    double R;       // center radius, R > S
    double S;       // half-width > 0

    double support_lo() const { return R - S; }
    double support_hi() const { return R + S; }
};

class RadialProfile {
  public:
    RadialProfile() = default;

    // Bumps are sorted by center; throws Error(InvalidParams) on a bad
    // bump and Error(OverlappingSupports) naming the first bad pair.
    explicit RadialProfile(std::vector<BumpSpec> bumps);

    const std::vector<BumpSpec>& bumps() const { return bumps_; }
    bool trivial() const;  // no bumps, or all amplitudes zero

    double eval(double r) const;
    double eval_derivative(double r) const;

    // Support intervals in increasing order, one per bump.
    std::vector<std::pair<double, double>> support() const;

    std::string to_json() const;
    static RadialProfile from_json(const std::string& text);

  private:
    std::vector<BumpSpec> bumps_;
};

struct MultiBumpSpec {
    int m;       // bump count >= 1
    double R;    // geometric base; R > 1 with xi1 < 1, or R < 1 with xi1 > 1
    double xi1;  // width exponent
    double xi2;  // amplitude exponent
};

// Bumps (R^{k*xi2}, R^k, R^{k*xi1}) for k = 1..m; throws
// Error(OverlappingSupports) if the supports collide.
RadialProfile expand_multibump(const MultiBumpSpec& spec);

}  // namespace csgn
