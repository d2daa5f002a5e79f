#include "csgn/exactparams.hpp"

#include <utility>

namespace csgn {

namespace {

int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

}  // namespace

void ParamTuple::validate() const {
    if (d < 2) throw Error(ErrorCode::InvalidParams, "d must be >= 2");
    if (!(s > 0 && s <= 1))
        throw Error(ErrorCode::InvalidParams, "s must satisfy 0 < s <= 1");
    if (p < 1) throw Error(ErrorCode::InvalidParams, "p must be >= 1");
    if (q < 1) throw Error(ErrorCode::InvalidParams, "q must be >= 1");
    if (!(alpha > 0 && alpha < d))
        throw Error(ErrorCode::InvalidParams, "alpha must satisfy 0 < alpha < d");
    if (!(gamma > 1)) throw Error(ErrorCode::InvalidParams, "gamma must be > 1");
}

const char* range_class_name(RangeClass r) {
    switch (r) {
        case RangeClass::RangeA: return "RangeA";
        case RangeClass::RangeB: return "RangeB";
        case RangeClass::RangeC: return "RangeC";
        case RangeClass::AdmissibleNonRadialOnly: return "AdmissibleNonRadialOnly";
        case RangeClass::Inadmissible: return "Inadmissible";
    }
    return "Unknown";
}

const char* thm13_name(TheoremVerdict::Thm13 v) {
    switch (v) {
        case TheoremVerdict::Thm13::HoldsStrict: return "HoldsStrict";
        case TheoremVerdict::Thm13::HoldsEquality: return "HoldsEquality";
        case TheoremVerdict::Thm13::NotSatisfied: return "NotSatisfied";
    }
    return "Unknown";
}

const char* thm14_name(TheoremVerdict::Thm14 v) {
    switch (v) {
        case TheoremVerdict::Thm14::FailsStrict: return "FailsStrict";
        case TheoremVerdict::Thm14::FailsEqualityMismatch:
            return "FailsEqualityMismatch";
        case TheoremVerdict::Thm14::NotApplicable: return "NotApplicable";
    }
    return "Unknown";
}

const char* thm15_name(TheoremVerdict::Thm15 v) {
    switch (v) {
        case TheoremVerdict::Thm15::Fails: return "Fails";
        case TheoremVerdict::Thm15::NotApplicable: return "NotApplicable";
    }
    return "Unknown";
}

bool IdentityReport::all_passed() const {
    for (const auto& r : results)
        if (r.status == IdentityStatus::Fail) return false;
    return true;
}

const IdentityResult* IdentityReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

DerivedParams derive(const ParamTuple& t) {
    t.validate();
    const Rational D = t.discriminant();
    if (D == 0)
        throw Error(ErrorCode::DegenerateD,
                    "betas are not determined when p(d+alpha) = 2q(d-sp)");

    const int d = t.d;
    const Rational sp = t.sp();

    DerivedParams out;
    out.D = D;
    out.beta1 = (t.gamma * (d + t.alpha) - 2 * t.q * d) / (t.gamma * D);
    out.beta2 = (t.p * d - t.gamma * (d - sp)) / (t.gamma * D);
    // gamma_rad = (2qsp(d-1) + p(d-alpha)) / (sp(d+alpha-2) + (d-alpha))
    const Rational denom = sp * (d + t.alpha - 2) + (d - t.alpha);
    out.gamma_rad = (2 * t.q * sp * (d - 1) + t.p * (d - t.alpha)) / denom;
    out.gamma_cs = t.p * (t.alpha + 2 * t.q * t.s) / (t.alpha + sp);
    return out;
}

RangeClass classify(const ParamTuple& t) {
    const DerivedParams dp = derive(t);  // throws DegenerateD when D = 0
    if (dp.beta1 < 0 || dp.beta2 < 0) return RangeClass::Inadmissible;

    const int d = t.d;
    const Rational sp = t.sp();

    if (sp < d) {
        const Rational sobolev_critical = t.p * d / (d - sp);
        if (dp.D > 0 && dp.gamma_rad < t.gamma && t.gamma <= sobolev_critical)
            return RangeClass::RangeA;
        if (dp.D < 0 && sobolev_critical <= t.gamma && t.gamma < dp.gamma_rad)
            return RangeClass::RangeB;
    } else if (t.gamma > dp.gamma_rad) {
        return RangeClass::RangeA;  // D > 0 automatically when sp >= d
    }

    if (t.gamma == dp.gamma_rad && t.q * (1 - sp) == t.p) return RangeClass::RangeC;

    return RangeClass::AdmissibleNonRadialOnly;
}

TheoremVerdict theorem_verdicts(const ParamTuple& t) {
    const DerivedParams dp = derive(t);
    if (dp.beta1 <= 0 || dp.beta2 <= 0)
        throw Error(ErrorCode::InadmissibleBetas,
                    "theorem hypotheses need beta1 > 0 and beta2 > 0");

    const int d = t.d;
    TheoremVerdict v;
    v.radial_value = dp.beta1 * t.gamma +
                     Rational(d + t.alpha - 2) / (d - 1) * dp.beta2 * t.gamma;
    v.nonradial_value = (dp.beta1 + dp.beta2) * t.gamma;

    const bool alpha_mid = t.alpha > 1 && t.alpha < t.d;
    if (alpha_mid) {
        const bool equality_case = t.q * (1 - t.sp()) == t.p;
        if (v.radial_value > 1) {
            v.thm13 = TheoremVerdict::Thm13::HoldsStrict;
        } else if (v.radial_value == 1) {
            if (equality_case)
                v.thm13 = TheoremVerdict::Thm13::HoldsEquality;
            else
                v.thm14 = TheoremVerdict::Thm14::FailsEqualityMismatch;
        } else {
            v.thm14 = TheoremVerdict::Thm14::FailsStrict;
        }
    }
    if (t.alpha > 0 && t.alpha <= 1 && v.nonradial_value < 1)
        v.thm15 = TheoremVerdict::Thm15::Fails;
    return v;
}

namespace detail {

Rational gamma_eps_plus(const ParamTuple& t, const Rational& eps) {
    const int d = t.d;
    const Rational sp = t.sp();
    const Rational denom = sp * (d + t.alpha - 2 * eps - 2) + (d - t.alpha + 2 * eps);
    return t.q + (t.q * (sp - 1) + t.p) * (d - t.alpha + 2 * eps) / denom;
}

Rational gamma_eps_minus(const ParamTuple& t, const Rational& eps) {
    const int d = t.d;
    const Rational sp = t.sp();
    const Rational denom = sp * (d + t.alpha + 2 * eps - 2) + (d - t.alpha - 2 * eps);
    return t.q + (t.q * (sp - 1) + t.p) * (d - t.alpha - 2 * eps) / denom;
}

Rational a_eps_plus(const ParamTuple& t, const Rational& ge, const Rational& eps) {
    const int d = t.d;
    const Rational da = d + t.alpha - 2 * eps;
    return t.p * (ge * da - 2 * t.q * d) / (ge * (t.p * da - 2 * t.q * (d - t.sp())));
}

Rational a_eps_minus(const ParamTuple& t, const Rational& ge, const Rational& eps) {
    const int d = t.d;
    const Rational da = d + t.alpha + 2 * eps;
    return t.p * (ge * da - 2 * t.q * d) / (ge * (t.p * da - 2 * t.q * (d - t.sp())));
}

}  // namespace detail

Rational epsilon_window(const ParamTuple& t) {
    const Rational D = t.discriminant();
    if (D == 0)
        throw Error(ErrorCode::DegenerateD, "no epsilon branch when D = 0");
    Rational window = Rational(t.d + t.alpha - 2) / 2;
    if (D > 0) {
        window = std::min(window, Rational(D / (2 * t.p)));
    } else {
        window = std::min(window, Rational(-D / (2 * t.p)));
        // keep d - alpha - 2*eps positive on the minus branch
        window = std::min(window, Rational(t.d - t.alpha) / 2);
    }
    return window;
}

EpsilonFamily epsilon_family(const ParamTuple& t, const Rational& eps) {
    t.validate();
    if (eps <= 0) throw Error(ErrorCode::InvalidParams, "eps must be positive");
    const Rational D = t.discriminant();
    if (D == 0)
        throw Error(ErrorCode::DegenerateD, "no epsilon branch when D = 0");
    if (eps >= epsilon_window(t))
        throw Error(ErrorCode::EpsilonTooLarge,
                    "eps outside the branch's sign-condition window");

    EpsilonFamily fam;
    fam.eps = eps;
    if (D > 0) {
        fam.sign = EpsilonSign::PlusD;
        fam.gamma_eps = detail::gamma_eps_plus(t, eps);
        fam.a_eps = detail::a_eps_plus(t, fam.gamma_eps, eps);
    } else {
        fam.sign = EpsilonSign::MinusD;
        fam.gamma_eps = detail::gamma_eps_minus(t, eps);
        fam.a_eps = detail::a_eps_minus(t, fam.gamma_eps, eps);
    }
    return fam;
}

MultiBumpExponents multibump_exponents(const ParamTuple& t) {
    t.validate();
    const Rational pivot = t.q * (t.sp() - 1) + t.p;
    if (pivot == 0)
        throw Error(ErrorCode::DegenerateFamily,
                    "multi-bump exponents undefined when q(sp-1)+p = 0");
    const int d = t.d;
    MultiBumpExponents out;
    out.xi1 = (2 * t.q * (d - 1) - t.p * (d + t.alpha - 2)) / (2 * pivot);
    out.xi2 = -(t.sp() * (d + t.alpha - 2) + (d - t.alpha)) / (2 * pivot);
    return out;
}

IdentityReport identity_suite(const ParamTuple& t, const Rational& eps) {
    t.validate();
    IdentityReport report;
    auto pass = [&](const std::string& name, bool ok, const std::string& detail = "") {
        report.results.push_back(
            {name, ok ? IdentityStatus::Pass : IdentityStatus::Fail, detail});
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        report.results.push_back({name, IdentityStatus::Skipped, why});
    };

    const int d = t.d;
    const Rational sp = t.sp();
    const Rational D = t.discriminant();

    if (D == 0) {
        for (const char* name :
             {"balance-beta1", "balance-beta2", "radial-margin-factorization",
              "gamma-rad-offset-factorization", "gamma-ordering",
              "gamma-cs-balance", "a-eps-range", "gamma-eps-ac2",
              "gamma-eps-offset-sign", "one-minus-a-eps", "dp-over-dsp-gap",
              "alpha-tilde-minus-sigma"})
            skip(name, "D = 0");
    } else {
        const DerivedParams dp = derive(t);

        pass("balance-beta1", dp.beta1 * t.p + 2 * dp.beta2 * t.q == 1);
        pass("balance-beta2",
             (d - sp) * dp.beta1 + (d + t.alpha) * dp.beta2 == Rational(d) / t.gamma);

        {
            const Rational lhs =
                dp.beta1 * t.gamma +
                Rational(d + t.alpha - 2) / (d - 1) * dp.beta2 * t.gamma - 1;
            const Rational rhs = (sp * (d + t.alpha - 2) + (d - t.alpha)) /
                                 Rational(d - 1) * (t.gamma - dp.gamma_rad) / D;
            pass("radial-margin-factorization", lhs == rhs);
        }
        {
            const Rational lhs = dp.gamma_rad - 2 * t.q * d / (d + t.alpha);
            const Rational rhs =
                (d - t.alpha) /
                ((d + t.alpha) * (sp * (d + t.alpha - 2) + (d - t.alpha))) * D;
            pass("gamma-rad-offset-factorization", lhs == rhs);
        }

        if (t.alpha > 1 && t.alpha < d && dp.beta2 > 0)
            pass("gamma-ordering",
                 sign_of(dp.gamma_cs - dp.gamma_rad) == sign_of(D));
        else
            skip("gamma-ordering", "needs 1 < alpha < d and beta2 > 0");

        {
            ParamTuple at_cs = t;
            at_cs.gamma = dp.gamma_cs;
            if (at_cs.gamma > 1) {
                const DerivedParams dcs = derive(at_cs);
                pass("gamma-cs-balance",
                     (dcs.beta1 + dcs.beta2) * dp.gamma_cs == 1);
            } else {
                skip("gamma-cs-balance", "gamma_cs <= 1");
            }
        }

        if (eps > 0 && eps < epsilon_window(t)) {
            const EpsilonFamily fam = epsilon_family(t, eps);
            pass("a-eps-range", fam.a_eps > 0 && fam.a_eps < 1);

            const bool plus = fam.sign == EpsilonSign::PlusD;
            const Rational e2 = plus ? 2 * eps : -2 * eps;
            const Rational da = d + t.alpha - e2;   // d+alpha -/+ 2eps
            const Rational dma = d - t.alpha + e2;  // d-alpha +/- 2eps
            const Rational denom = sp * (da - 2) + dma;

            pass("gamma-eps-ac2",
                 fam.gamma_eps == (2 * t.q * sp * (d - 1) + t.p * dma) / denom);

            {
                const Rational lhs = fam.gamma_eps - 2 * t.q * d / da;
                const Rational shifted_D = t.p * da - 2 * t.q * (d - sp);
                const Rational rhs = shifted_D * dma / (da * denom);
                pass("gamma-eps-offset-sign",
                     lhs == rhs && sign_of(lhs) == sign_of(shifted_D));
            }
            {
                const Rational lhs = 1 - fam.a_eps;
                const Rational rhs =
                    2 * t.q * (d * t.p - fam.gamma_eps * (d - sp)) /
                    (fam.gamma_eps * (t.p * da - 2 * t.q * (d - sp)));
                pass("one-minus-a-eps", lhs == rhs);
            }
            if (sp < d) {
                const Rational lhs = t.p * d / (d - sp) - fam.gamma_eps;
                const Rational rhs =
                    sp * (d - 1) * (t.p * da - 2 * t.q * (d - sp)) /
                    ((d - sp) * denom);
                pass("dp-over-dsp-gap", lhs == rhs);
            } else {
                skip("dp-over-dsp-gap", "sp >= d");
            }
            {
                CknCheckTuple ckn;
                ckn.a = fam.a_eps;
                ckn.tau = fam.gamma_eps;
                ckn.beta_w = -dma / (2 * t.q);
                ckn.alpha_tilde = 0;
                ckn.sigma = (0 - (1 - ckn.a) * ckn.beta_w) / ckn.a;
                pass("alpha-tilde-minus-sigma",
                     ckn.alpha_tilde - ckn.sigma == -(d - 1) * t.s);
            }
        } else {
            const std::string why = "eps outside the branch window";
            for (const char* name :
                 {"a-eps-range", "gamma-eps-ac2", "gamma-eps-offset-sign",
                  "one-minus-a-eps", "dp-over-dsp-gap", "alpha-tilde-minus-sigma"})
                skip(name, why);
        }
    }

    const Rational pivot = t.q * (sp - 1) + t.p;
    if (pivot == 0) {
        for (const char* name :
             {"xi-system", "xi1-rewrite", "xi-gamma-rad", "xi2-alternate"})
            skip(name, "q(sp-1)+p = 0");
    } else {
        const MultiBumpExponents xi = multibump_exponents(t);
        pass("xi-system",
             t.p * xi.xi2 + (1 - sp) * xi.xi1 + (d - 1) == 0 &&
                 2 * t.q * xi.xi2 + 2 * xi.xi1 + (d + t.alpha - 2) == 0);
        if (D == 0) {
            skip("xi1-rewrite", "D = 0");
            skip("xi-gamma-rad", "D = 0");
            skip("xi2-alternate", "D = 0");
        } else {
            const DerivedParams dp = derive(t);
            pass("xi1-rewrite", xi.xi1 == 1 - D / (2 * pivot) && xi.xi1 != 1);
            pass("xi-gamma-rad",
                 dp.gamma_rad * xi.xi2 + xi.xi1 + (d - 1) == 0);
            if (dp.gamma_rad != t.q)
                pass("xi2-alternate",
                     xi.xi2 == -(d - t.alpha) / (2 * (dp.gamma_rad - t.q)));
            else
                skip("xi2-alternate", "gamma_rad = q");
        }
    }

    if (sp < 1) {
        const Rational r = t.p / (1 - sp);
        const Rational denom = sp * (d + t.alpha - 2 * eps - 2) + (d - t.alpha + 2 * eps);
        if (eps > 0 && denom > 0) {
            const Rational ge = detail::gamma_eps_plus(t, eps);
            pass("gamma-eps-minus-r",
                 ge - r == 2 * (t.q - r) * sp * (d - 1) / denom);
            pass("q-minus-gamma-eps",
                 t.q - ge ==
                     -(t.q - r) * (sp - 1) * (d - t.alpha + 2 * eps) / denom);
            if (pivot < 0) {
                const Rational eta = (d - t.alpha) / 2 + eps;
                pass("case3-weight-exponent",
                     -(ge - r) * eta / ((t.q - ge) * r) == -(d - 1) * t.s);
            } else {
                skip("case3-weight-exponent", "needs q(sp-1)+p < 0");
            }
        } else {
            for (const char* name :
                 {"gamma-eps-minus-r", "q-minus-gamma-eps", "case3-weight-exponent"})
                skip(name, "eps outside the construction window");
        }
        pass("weighted-embedding-r",
             1 / r == 1 / t.p + (-(d - 1) * t.s - t.s) / d);
    } else {
        for (const char* name : {"gamma-eps-minus-r", "q-minus-gamma-eps",
                                 "case3-weight-exponent", "weighted-embedding-r"})
            skip(name, "sp >= 1");
    }

    return report;
}

TupleSampler::TupleSampler(std::uint64_t seed) : rng_(seed) {}

int TupleSampler::uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

ParamTuple TupleSampler::next() {
    for (;;) {
        ParamTuple t;
        t.d = uniform_int(2, 5);
        const int sden = uniform_int(1, 8);
        t.s = Rational(uniform_int(1, sden), sden);
        t.p = 1 + Rational(uniform_int(0, 12), 4);
        t.q = 1 + Rational(uniform_int(0, 12), 4);
        const int aden = uniform_int(2, 8);
        t.alpha = Rational(uniform_int(1, aden - 1), aden) * t.d;

        const Rational D = t.discriminant();
        if (D == 0) continue;

        // gamma strictly between the beta-positivity bounds
        const Rational sp = t.sp();
        Rational lo, hi;
        if (D > 0) {
            lo = 2 * t.q * t.d / (t.d + t.alpha);
            hi = sp < t.d ? Rational(t.p * t.d / (t.d - sp))
                          : Rational(lo + 4);
        } else {
            lo = t.p * t.d / (t.d - sp);
            hi = 2 * t.q * t.d / (t.d + t.alpha);
        }
        if (!(lo < hi)) continue;
        t.gamma = lo + Rational(uniform_int(1, 15), 16) * (hi - lo);
        if (!(t.gamma > 1)) continue;

        const DerivedParams dp = derive(t);
        if (dp.beta1 <= 0 || dp.beta2 <= 0) continue;
        return t;
    }
}

Rational TupleSampler::next_epsilon(const ParamTuple& t) {
    return epsilon_window(t) * Rational(uniform_int(1, 7), 8);
}

}  // namespace csgn
