#pragma once

// Exact parameter algebra for the radial Coulomb-Sobolev interpolation
// inequality: derived exponents, admissible-range classification,
// theorem verdicts, the epsilon approximation family, multi-bump
// exponents, and the proof-identity suite. Everything here is exact
// rational arithmetic; no floating point.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "csgn/errors.hpp"
#include "csgn/rational.hpp"

namespace csgn {

// The six parameters (d, s, p, q, alpha, gamma) of the inequality.
struct ParamTuple {
    int d = 3;
    Rational s = 1;       // 0 < s <= 1
    Rational p = 2;       // >= 1
    Rational q = 2;       // >= 1
    Rational alpha = 2;   // 0 < alpha < d
    Rational gamma = 3;   // > 1

    Rational sp() const { return s * p; }

    // D = p(d+alpha) - 2q(d-sp); its sign picks the admissible branch.
    Rational discriminant() const {
        return p * (d + alpha) - 2 * q * (d - s * p);
    }

    void validate() const;  // throws Error(InvalidParams)
};

struct DerivedParams {
    Rational D;
    Rational beta1;
    Rational beta2;
    Rational gamma_rad;
    Rational gamma_cs;
};

enum class RangeClass {
    RangeA,
    RangeB,
    RangeC,
    AdmissibleNonRadialOnly,
    Inadmissible,
};

const char* range_class_name(RangeClass r);

struct TheoremVerdict {
    enum class Thm13 { HoldsStrict, HoldsEquality, NotSatisfied };
    enum class Thm14 { FailsStrict, FailsEqualityMismatch, NotApplicable };
    enum class Thm15 { Fails, NotApplicable };

    Thm13 thm13 = Thm13::NotSatisfied;
    Thm14 thm14 = Thm14::NotApplicable;
    Thm15 thm15 = Thm15::NotApplicable;

    // beta1*gamma + (d+alpha-2)/(d-1)*beta2*gamma, the radial criterion value.
    Rational radial_value;
    // beta1*gamma + beta2*gamma, the non-radial criterion value.
    Rational nonradial_value;
};

const char* thm13_name(TheoremVerdict::Thm13 v);
const char* thm14_name(TheoremVerdict::Thm14 v);
const char* thm15_name(TheoremVerdict::Thm15 v);

enum class EpsilonSign { PlusD, MinusD };

struct EpsilonFamily {
    Rational eps;
    EpsilonSign sign;
    Rational gamma_eps;
    Rational a_eps;
};

struct MultiBumpExponents {
    Rational xi1;
    Rational xi2;
};

// Weighted-inequality parameters assembled for the alpha_tilde - sigma
// identity check; gamma_w (the target weight exponent) is 0 here.
struct CknCheckTuple {
    Rational a;            // interpolation weight in (0,1]
    Rational tau;          // Lebesgue exponent, >= 1
    Rational beta_w;       // weight exponent of the L^q factor
    Rational sigma;        // (gamma_w - (1-a)*beta_w)/a with gamma_w = 0
    Rational alpha_tilde;  // sum of the two seminorm weight exponents (0 here)
};

enum class IdentityStatus { Pass, Fail, Skipped };

struct IdentityResult {
    std::string name;
    IdentityStatus status;
    std::string note;  // skip reason or failure detail
};

struct IdentityReport {
    std::vector<IdentityResult> results;

    bool all_passed() const;  // Skipped does not count as failure
    const IdentityResult* find(const std::string& name) const;
};

// Derived exponents per the closed-form beta formulas; throws
// Error(DegenerateD) when D = 0.
DerivedParams derive(const ParamTuple& params);

RangeClass classify(const ParamTuple& params);

TheoremVerdict theorem_verdicts(const ParamTuple& params);

// Supremum of the concrete epsilon window for the branch matching
// sign(D): PlusD needs eps < D/(2p), MinusD needs eps < -D/(2p) and
// eps < (d-alpha)/2; both need eps < (d+alpha-2)/2.
Rational epsilon_window(const ParamTuple& params);

EpsilonFamily epsilon_family(const ParamTuple& params, const Rational& eps);

MultiBumpExponents multibump_exponents(const ParamTuple& params);

IdentityReport identity_suite(const ParamTuple& params, const Rational& eps);

// Seeded sampler of admissible tuples (invariants hold, D != 0,
// beta1 > 0, beta2 > 0) for randomized identity runs.
class TupleSampler {
  public:
    explicit TupleSampler(std::uint64_t seed);

    ParamTuple next();

    // Epsilon strictly inside the tuple's branch window.
    Rational next_epsilon(const ParamTuple& params);

  private:
    std::mt19937_64 rng_;

    int uniform_int(int lo, int hi);
};

namespace detail {
// Epsilon-perturbed exponent of the plus branch; also the exponent used
// by the small-q counterexample construction regardless of sign(D).
Rational gamma_eps_plus(const ParamTuple& t, const Rational& eps);
Rational gamma_eps_minus(const ParamTuple& t, const Rational& eps);
Rational a_eps_plus(const ParamTuple& t, const Rational& gamma_eps,
                    const Rational& eps);
Rational a_eps_minus(const ParamTuple& t, const Rational& gamma_eps,
                     const Rational& eps);
}  // namespace detail

}  // namespace csgn
