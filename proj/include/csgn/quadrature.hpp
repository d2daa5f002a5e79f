#pragma once

// Singularity-aware Gauss-Legendre quadrature over bump supports:
// composite 1D rules with optional geometric endpoint refinement, and
// 2D bump-pair integration with a rotated-coordinate treatment of the
// diagonal. Deterministic: fixed panel order, compensated summation,
// and a parallel scheduler whose reduction order is independent of the
// worker count.

#include <functional>
#include <utility>
#include <vector>

#include "csgn/errors.hpp"

namespace csgn {

struct QuadConfig {
    int gauss_order = 16;
    int panels_per_bump = 8;
    int diagonal_refinement_levels = 12;
    double target_rel_tol = 1e-7;
    // A bump pair whose gap exceeds far_pair_cutoff times the smaller
    // width is smooth enough for the base rule without edge refinement.
    double far_pair_cutoff = 50.0;

    void validate() const;  // throws Error(InvalidParams)
};

struct QuadResult {
    double value = 0.0;
    double est_rel_error = 0.0;  // from order-doubling comparison
    bool converged = true;
};

using Interval = std::pair<double, double>;
using Fn1 = std::function<double(double)>;
// 2D integrands receive (r, rho, diff) with diff = r - rho. In the
// rotated diagonal scheme diff is the exact slab offset, which stays
// accurate when |r - rho| falls below the floating-point spacing at r;
// integrands with diagonal singularities must use it instead of
// recomputing r - rho.
using Fn2 = std::function<double(double, double, double)>;

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

// Worker count from the CSGN_WORKERS environment variable (0 or unset
// = hardware concurrency). Results never depend on it.
int worker_count();

// Runs fn(i) for i in [0, n); partitioning varies with the worker
// count, but each index is processed exactly once into caller-indexed
// storage, so downstream ordered reductions are bit-stable.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Composite Gauss over an interval list, panels_per_bump panels per
// interval; error estimate from comparing order n with 2n.
QuadResult integrate_1d(const Fn1& f, const std::vector<Interval>& intervals,
                        const QuadConfig& cfg);

// As integrate_1d on a single interval, but the end panels are split
// geometrically toward the flagged endpoints (for integrands with
// endpoint blow-up tamed by a vanishing factor).
QuadResult integrate_1d_refined(const Fn1& f, const Interval& iv,
                                const QuadConfig& cfg, bool refine_lo,
                                bool refine_hi);

// Integral of a symmetric F over I x I where F ~ |r-rho|^diag_exponent
// near the diagonal (diag_exponent > -1). Rotated coordinates
// u = r-rho, v = r+rho with geometric u-refinement toward u = 0 and a
// power-flattening substitution on the innermost slab.
QuadResult integrate_square_diag(const Fn2& F, const Interval& iv,
                                 double diag_exponent, const QuadConfig& cfg);

// Tensor Gauss over a pair of disjoint intervals; edges facing the gap
// are geometrically refined when the pair is closer than
// far_pair_cutoff times the smaller width.
QuadResult integrate_rect(const Fn2& F, const Interval& ir,
                          const Interval& ip, const QuadConfig& cfg);

// Bump-pair decomposition of a double integral over rows x cols.
// Identical interval pairs go through the diagonal scheme, distinct
// pairs through the rectangle scheme; contributions are accumulated by
// compensated summation in a fixed order. Interval lists must each be
// pairwise disjoint; rows and cols either share an identical entry or
// are disjoint.
QuadResult integrate_2d_offdiag(const Fn2& F, const std::vector<Interval>& rows,
                                const std::vector<Interval>& cols,
                                double diag_exponent, const QuadConfig& cfg);

// Compensated (Kahan) accumulator for deterministic reductions.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace csgn
