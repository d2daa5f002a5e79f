#include "csgn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csgn {

namespace {

// pinned pass tolerances
constexpr double kBlowupSlopeRelTol = 0.25;
constexpr double kBoundedSlopeTol = 0.005;
constexpr double kBoundedSpreadTol = 1.5;
constexpr double kRatioSlopeTol = 0.01;
constexpr int kStraussSamplesPerBump = 512;

std::string param_json(const ParamTuple& t) {
    std::ostringstream os;
    os << "{\"d\": " << t.d << ", \"s\": \"" << rational_to_string(t.s)
       << "\", \"p\": \"" << rational_to_string(t.p) << "\", \"q\": \""
       << rational_to_string(t.q) << "\", \"alpha\": \""
       << rational_to_string(t.alpha) << "\", \"gamma\": \""
       << rational_to_string(t.gamma) << "\"}";
    return os.str();
}

std::string fit_json(const SlopeFit& f) {
    std::ostringstream os;
    os << "{\"slope\": " << format_double(f.slope)
       << ", \"intercept\": " << format_double(f.intercept)
       << ", \"max_residual\": " << format_double(f.max_residual) << "}";
    return os.str();
}

std::size_t upper_half_start(std::size_t n) { return n / 2; }

template <class Row, class Get>
SlopeFit upper_half_fit(const std::vector<Row>& rows, Get value) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = upper_half_start(rows.size()); i < rows.size(); ++i)
        pts.emplace_back(rows[i].scan_var, value(rows[i]));
    return fit_slope(pts);
}

RadialProfile family_bump(double lambda, double R, double S) {
    return RadialProfile({{lambda, R, S}});
}

}  // namespace

const char* scan_kind_name(ScanKind k) {
    switch (k) {
        case ScanKind::SingleBumpR: return "SingleBumpR";
        case ScanKind::MultiBumpM: return "MultiBumpM";
        case ScanKind::StraussRatio: return "StraussRatio";
        case ScanKind::RuizRatio: return "RuizRatio";
        case ScanKind::Boundedness: return "Boundedness";
    }
    return "?";
}

ScanKind parse_scan_kind(const std::string& name) {
    if (name == "SingleBumpR" || name == "blowup") return ScanKind::SingleBumpR;
    if (name == "MultiBumpM" || name == "multibump") return ScanKind::MultiBumpM;
    if (name == "StraussRatio" || name == "strauss") return ScanKind::StraussRatio;
    if (name == "RuizRatio" || name == "ruiz") return ScanKind::RuizRatio;
    if (name == "Boundedness" || name == "boundedness")
        return ScanKind::Boundedness;
    throw Error(ErrorCode::InvalidParams, "unknown scan kind: " + name);
}

void ScanSpec::validate() const {
    quad.validate();
    params.validate();
    if (grid.size() < 4)
        throw Error(ErrorCode::InsufficientPoints,
                    "scan grid needs at least 4 points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw Error(ErrorCode::InvalidParams,
                        "scan grid must be strictly increasing");
    if (!(grid.front() > 0.0))
        throw Error(ErrorCode::InvalidParams, "scan grid must be positive");
    if (!(lambda > 0.0) || !(S > 0.0) || !(multibump_R > 0.0) ||
        !(ruiz_eps > 0.0) || !(ruiz_R0 > 0.0))
        throw Error(ErrorCode::InvalidParams,
                    "scan family parameters must be positive");
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw Error(ErrorCode::InsufficientPoints,
                    "slope fit needs at least 2 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            throw Error(ErrorCode::InvalidParams,
                        "slope fit needs positive coordinates");
        if (i > 0 && !(points[i].first > points[i - 1].first))
            throw Error(ErrorCode::InvalidParams,
                        "slope fit abscissas must increase");
        lx.push_back(std::log(points[i].first));
        ly.push_back(std::log(points[i].second));
    }
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < lx.size(); ++i)
        fit.max_residual = std::max(
            fit.max_residual,
            std::abs(ly[i] - (fit.intercept + fit.slope * lx[i])));
    return fit;
}

PredictedExponent predict_exponent(const ParamTuple& params,
                                   const DerivedParams& derived,
                                   ScanKind kind) {
    const TheoremVerdict v = theorem_verdicts(params);
    const Rational b1g = derived.beta1 * params.gamma;
    const Rational b2g = derived.beta2 * params.gamma;
    PredictedExponent out;
    if (kind == ScanKind::MultiBumpM) {
        if (params.q * (params.sp() - 1) + params.p == 0)
            throw Error(ErrorCode::DegenerateFamily,
                        "multi-bump family undefined: q(sp-1)+p = 0");
        if (!(b1g + b2g < 1))
            throw Error(ErrorCode::NotApplicable,
                        "multi-bump growth needs beta1*gamma + beta2*gamma < 1");
        out.value = (1 - b1g - b2g) / params.gamma;
        out.provenance = "equal-contribution multi-bump power counting";
        return out;
    }
    if (kind != ScanKind::SingleBumpR)
        throw Error(ErrorCode::NotApplicable,
                    "predicted exponents exist only for blow-up scans");
    if (params.alpha > 1) {
        if (v.thm14 != TheoremVerdict::Thm14::FailsStrict)
            throw Error(ErrorCode::NotApplicable,
                        "single-bump blow-up needs the radial criterion to "
                        "fail strictly");
        out.value = (Rational(params.d - 1) -
                     ((params.d - 1) * b1g + (params.d + params.alpha - 2) * b2g)) /
                    params.gamma;
        out.provenance = "single-bump radial power counting, 1 < alpha < d";
        return out;
    }
    if (v.thm15 != TheoremVerdict::Thm15::Fails)
        throw Error(ErrorCode::NotApplicable,
                    "single-bump blow-up needs beta1*gamma + beta2*gamma < 1 "
                    "for alpha <= 1");
    out.value = (params.d - 1) * (1 - b1g - b2g) / params.gamma;
    out.provenance = "single-bump power counting, alpha <= 1";
    out.log_correction = params.alpha == 1;
    return out;
}

bool FunctionalScanResult::all_converged() const {
    for (const ScanRow& r : rows)
        if (!r.report.all_converged()) return false;
    return true;
}

std::string FunctionalScanResult::csv() const {
    std::ostringstream os;
    os << "scan_var,lgamma,seminorm,coulomb,quotient,converged\n";
    for (const ScanRow& r : rows) {
        os << format_double(r.scan_var) << ','
           << format_double(r.report.lgamma_norm) << ','
           << format_double(r.report.seminorm) << ','
           << format_double(r.report.coulomb_energy) << ','
           << format_double(r.report.quotient) << ','
           << (r.report.all_converged() ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string FunctionalScanResult::json_summary() const {
    std::ostringstream os;
    os << "{\"kind\": \"" << scan_kind_name(kind) << "\", \"rows\": "
       << rows.size() << ", \"fit\": " << fit_json(fit);
    if (has_predicted) {
        os << ", \"predicted\": {\"value\": \""
           << rational_to_string(predicted.value)
           << "\", \"approx\": " << format_double(to_double(predicted.value))
           << ", \"provenance\": \"" << predicted.provenance
           << "\", \"log_correction\": "
           << (predicted.log_correction ? "true" : "false") << "}";
    }
    os << ", \"monotone_upper_half\": "
       << (monotone_upper_half ? "true" : "false")
       << ", \"max_over_min\": " << format_double(max_over_min)
       << ", \"converged\": " << (all_converged() ? "true" : "false")
       << ", \"pass\": " << (pass ? "true" : "false") << ", \"detail\": \""
       << detail << "\"}";
    return os.str();
}

namespace {

std::vector<ScanRow> run_functional_rows(const ScanSpec& spec,
                                         const DerivedParams& derived,
                                         bool dilation_family) {
    std::vector<ScanRow> rows;
    for (double v : spec.grid) {
        RadialProfile profile;
        if (spec.kind == ScanKind::MultiBumpM) {
            const MultiBumpExponents xi = multibump_exponents(spec.params);
            const int m = static_cast<int>(std::lround(v));
            profile = expand_multibump({m, spec.multibump_R, to_double(xi.xi1),
                                        to_double(xi.xi2)});
        } else if (dilation_family) {
            profile = family_bump(spec.lambda, v, 0.5 * v);
        } else {
            profile = family_bump(spec.lambda, v, spec.S);
        }
        ScanRow row;
        row.scan_var = v;
        row.report = quotient(profile, spec.params, derived, spec.quad);
        rows.push_back(std::move(row));
    }
    return rows;
}

bool strictly_increasing_quotient(const std::vector<ScanRow>& rows,
                                  std::size_t from) {
    for (std::size_t i = from + 1; i < rows.size(); ++i)
        if (!(rows[i].report.quotient > rows[i - 1].report.quotient))
            return false;
    return true;
}

double quotient_spread(const std::vector<ScanRow>& rows) {
    double lo = rows.front().report.quotient, hi = lo;
    for (const ScanRow& r : rows) {
        lo = std::min(lo, r.report.quotient);
        hi = std::max(hi, r.report.quotient);
    }
    return hi / lo;
}

}  // namespace

FunctionalScanResult blowup_scan(const ScanSpec& spec) {
    spec.validate();
    if (spec.kind != ScanKind::SingleBumpR && spec.kind != ScanKind::MultiBumpM)
        throw Error(ErrorCode::InvalidParams,
                    "blowup_scan handles SingleBumpR and MultiBumpM");
    const DerivedParams derived = derive(spec.params);
    FunctionalScanResult res;
    res.kind = spec.kind;
    res.predicted = predict_exponent(spec.params, derived, spec.kind);
    res.has_predicted = true;
    res.rows = run_functional_rows(spec, derived, false);
    res.fit = upper_half_fit(res.rows,
                             [](const ScanRow& r) { return r.report.quotient; });
    res.monotone_upper_half =
        strictly_increasing_quotient(res.rows, upper_half_start(res.rows.size()));
    res.max_over_min = quotient_spread(res.rows);
    std::ostringstream detail;
    if (spec.kind == ScanKind::MultiBumpM) {
        res.pass = strictly_increasing_quotient(res.rows, 0);
        detail << "strict growth in m required; slope "
               << format_double(res.fit.slope) << " vs predicted "
               << rational_to_string(res.predicted.value)
               << " is informational";
    } else if (spec.params.alpha == 1) {
        res.pass = res.monotone_upper_half && res.fit.slope > 0.0;
        detail << "alpha = 1: require strict growth and positive slope "
                  "(log-corrected power)";
    } else {
        const double pred = to_double(res.predicted.value);
        const double dev = std::abs(res.fit.slope - pred) / pred;
        res.pass = res.monotone_upper_half && dev <= kBlowupSlopeRelTol;
        detail << "slope " << format_double(res.fit.slope) << " vs predicted "
               << format_double(pred) << ", rel dev " << format_double(dev)
               << " (tol " << format_double(kBlowupSlopeRelTol) << ")";
    }
    res.detail = detail.str();
    return res;
}

FunctionalScanResult boundedness_scan(const ScanSpec& spec) {
    spec.validate();
    if (spec.kind != ScanKind::Boundedness)
        throw Error(ErrorCode::InvalidParams,
                    "boundedness_scan needs kind Boundedness");
    const TheoremVerdict v = theorem_verdicts(spec.params);
    if (v.thm13 != TheoremVerdict::Thm13::HoldsStrict &&
        v.thm13 != TheoremVerdict::Thm13::HoldsEquality)
        throw Error(ErrorCode::NotApplicable,
                    "boundedness scan needs an admissible (radially "
                    "improved) tuple");
    const DerivedParams derived = derive(spec.params);
    FunctionalScanResult res;
    res.kind = spec.kind;
    res.rows = run_functional_rows(spec, derived, true);
    res.fit = upper_half_fit(res.rows,
                             [](const ScanRow& r) { return r.report.quotient; });
    res.monotone_upper_half =
        strictly_increasing_quotient(res.rows, upper_half_start(res.rows.size()));
    res.max_over_min = quotient_spread(res.rows);
    res.pass = std::abs(res.fit.slope) <= kBoundedSlopeTol &&
               res.max_over_min <= kBoundedSpreadTol;
    std::ostringstream detail;
    detail << "|slope| " << format_double(std::abs(res.fit.slope)) << " (tol "
           << format_double(kBoundedSlopeTol) << "), max/min "
           << format_double(res.max_over_min) << " (tol "
           << format_double(kBoundedSpreadTol) << ")";
    res.detail = detail.str();
    return res;
}

std::string RatioScanResult::csv() const {
    std::ostringstream os;
    os << "scan_var,sup_weighted,seminorm,ratio,converged\n";
    for (const RatioRow& r : rows) {
        os << format_double(r.scan_var) << ',' << format_double(r.numer) << ','
           << format_double(r.denom) << ',' << format_double(r.ratio) << ','
           << (r.converged ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string RatioScanResult::json_summary() const {
    std::ostringstream os;
    os << "{\"kind\": \"StraussRatio\", \"rows\": " << rows.size()
       << ", \"fit\": " << fit_json(fit) << ", \"pass\": "
       << (pass ? "true" : "false") << ", \"detail\": \"" << detail << "\"}";
    return os.str();
}

RatioScanResult strauss_ratio_scan(const ScanSpec& spec) {
    spec.validate();
    if (spec.kind != ScanKind::StraussRatio)
        throw Error(ErrorCode::InvalidParams,
                    "strauss_ratio_scan needs kind StraussRatio");
    const ParamTuple& t = spec.params;
    if (!(t.sp() > 1) || !(t.sp() < t.d))
        throw Error(ErrorCode::PreconditionViolated,
                    "Strauss decay needs 1 < sp < d");
    const double decay = to_double((Rational(t.d) - t.sp()) / t.p);
    RatioScanResult res;
    for (double R : spec.grid) {
        const RadialProfile g = family_bump(spec.lambda, R, 0.5 * R);
        RatioRow row;
        row.scan_var = R;
        for (const auto& [lo, hi] : g.support()) {
            for (int i = 0; i <= kStraussSamplesPerBump; ++i) {
                const double r =
                    lo + (hi - lo) * (i + 0.5) / (kStraussSamplesPerBump + 1);
                row.numer = std::max(row.numer,
                                     std::pow(r, decay) * std::abs(g.eval(r)));
            }
        }
        for (const BumpSpec& b : g.bumps())
            row.numer = std::max(row.numer,
                                 std::pow(b.R, decay) * std::abs(g.eval(b.R)));
        QuadResult diag;
        row.denom = sobolev_seminorm(g, to_double(t.s), to_double(t.p), t.d,
                                     spec.quad, &diag);
        row.converged = diag.converged;
        row.ratio = row.numer / row.denom;
        res.rows.push_back(row);
    }
    res.fit = upper_half_fit(res.rows,
                             [](const RatioRow& r) { return r.ratio; });
    res.pass = std::abs(res.fit.slope) <= kRatioSlopeTol;
    std::ostringstream detail;
    detail << "|slope| " << format_double(std::abs(res.fit.slope)) << " (tol "
           << format_double(kRatioSlopeTol) << ")";
    res.detail = detail.str();
    return res;
}

std::string RuizScanResult::csv() const {
    std::ostringstream os;
    os << "scan_var,weighted_plus,weighted_minus,coulomb,ratio_plus,"
          "ratio_minus,converged\n";
    for (const RuizRow& r : rows) {
        os << format_double(r.scan_var) << ','
           << format_double(r.weighted_plus) << ','
           << format_double(r.weighted_minus) << ','
           << format_double(r.coulomb) << ',' << format_double(r.ratio_plus)
           << ',' << format_double(r.ratio_minus) << ','
           << (r.converged ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string RuizScanResult::json_summary() const {
    std::ostringstream os;
    os << "{\"kind\": \"RuizRatio\", \"rows\": " << rows.size()
       << ", \"fit_plus\": " << fit_json(fit_plus)
       << ", \"fit_minus\": " << fit_json(fit_minus) << ", \"pass\": "
       << (pass ? "true" : "false") << ", \"detail\": \"" << detail << "\"}";
    return os.str();
}

RuizScanResult ruiz_ratio_scan(const ScanSpec& spec) {
    spec.validate();
    if (spec.kind != ScanKind::RuizRatio)
        throw Error(ErrorCode::InvalidParams,
                    "ruiz_ratio_scan needs kind RuizRatio");
    const ParamTuple& t = spec.params;
    const double alpha = to_double(t.alpha);
    const double q = to_double(t.q);
    const double eps = spec.ruiz_eps;
    RuizScanResult res;
    for (double R : spec.grid) {
        const RadialProfile g = family_bump(spec.lambda, R, 0.5 * R);
        const double R0 = spec.ruiz_R0 * R;
        RuizRow row;
        row.scan_var = R;
        QuadResult dplus, dminus, denergy;
        row.weighted_plus =
            weighted_lq(g, q, 0.5 * (t.d - alpha) + eps, Region::OutsideR, R0,
                        t.d, spec.quad, &dplus);
        row.weighted_minus =
            weighted_lq(g, q, 0.5 * (t.d - alpha) - eps, Region::InsideR, R0,
                        t.d, spec.quad, &dminus);
        row.coulomb = coulomb_energy(g, q, alpha, t.d, spec.quad, &denergy);
        const double root = std::sqrt(row.coulomb);
        row.ratio_plus = std::pow(R0, eps) * row.weighted_plus / root;
        row.ratio_minus = std::pow(R0, -eps) * row.weighted_minus / root;
        row.converged = dplus.converged && dminus.converged && denergy.converged;
        res.rows.push_back(row);
    }
    res.fit_plus = upper_half_fit(
        res.rows, [](const RuizRow& r) { return r.ratio_plus; });
    res.fit_minus = upper_half_fit(
        res.rows, [](const RuizRow& r) { return r.ratio_minus; });
    res.pass = std::abs(res.fit_plus.slope) <= kRatioSlopeTol &&
               std::abs(res.fit_minus.slope) <= kRatioSlopeTol;
    std::ostringstream detail;
    detail << "|slope+| " << format_double(std::abs(res.fit_plus.slope))
           << ", |slope-| " << format_double(std::abs(res.fit_minus.slope))
           << " (tol " << format_double(kRatioSlopeTol) << ")";
    res.detail = detail.str();
    return res;
}

ParamTuple preset_tuple(const std::string& name) {
    if (name == "lions") return {3, 1, 2, 2, 2, 3};
    if (name == "case1") return {3, Rational(1, 2), 2, 4, 2, Rational(47, 10)};
    if (name == "case2") return {3, 1, 2, 2, 2, Rational(18, 7)};
    if (name == "thm15")
        return {3, Rational(1, 2), 2, 2, Rational(1, 2), Rational(17, 5)};
    if (name == "rangeb") return {3, Rational(1, 2), 2, 4, 2, 4};
    throw Error(ErrorCode::InvalidParams, "unknown preset: " + name);
}

std::vector<double> default_grid(ScanKind kind) {
    switch (kind) {
        case ScanKind::SingleBumpR:
        case ScanKind::Boundedness: {
            std::vector<double> g;
            for (int k = 4; k <= 10; ++k) g.push_back(std::pow(10.0, 0.5 * k));
            return g;
        }
        case ScanKind::MultiBumpM: {
            std::vector<double> g;
            for (int m = 2; m <= 10; ++m) g.push_back(m);
            return g;
        }
        case ScanKind::StraussRatio:
        case ScanKind::RuizRatio: {
            std::vector<double> g;
            for (int k = 2; k <= 8; ++k) g.push_back(std::pow(10.0, 0.5 * k));
            return g;
        }
    }
    return {};
}

}  // namespace csgn
