#pragma once

// Scan harness: blow-up scans along the counterexample families,
// boundedness scans in the admissible range, and the Strauss / Ruiz
// ratio scans, with exact predicted exponents and log-log slope fits.

#include <string>
#include <vector>

#include "csgn/exactparams.hpp"
#include "csgn/functionals.hpp"
#include "csgn/profiles.hpp"

namespace csgn {

enum class ScanKind { SingleBumpR, MultiBumpM, StraussRatio, RuizRatio, Boundedness };

const char* scan_kind_name(ScanKind k);
ScanKind parse_scan_kind(const std::string& name);

struct ScanSpec {
    ScanKind kind = ScanKind::SingleBumpR;
    ParamTuple params;
    std::vector<double> grid;  // R values; bump counts for MultiBumpM

    double lambda = 1.0;
    double S = 1.0;            // fixed half-width of the blow-up family
    double multibump_R = 10.0; // geometric base of the multi-bump family
    double ruiz_eps = 0.1;
    double ruiz_R0 = 1.0;

    QuadConfig quad;

    void validate() const;  // grid strictly increasing, length >= 4
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// OLS of log y against log x; throws Error(InsufficientPoints).
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

struct PredictedExponent {
    Rational value;
    std::string provenance;
    bool log_correction = false;  // alpha = 1: power carries a log factor
};

// Exact blow-up exponent for the scan kind; throws Error(NotApplicable)
// when the tuple does not fail the matching hypothesis.
PredictedExponent predict_exponent(const ParamTuple& params,
                                   const DerivedParams& derived, ScanKind kind);

struct ScanRow {
    double scan_var = 0.0;
    FunctionalReport report;
};

struct FunctionalScanResult {
    ScanKind kind;
    std::vector<ScanRow> rows;
    SlopeFit fit;  // log Q vs log scan_var over the upper half of the grid
    bool has_predicted = false;
    PredictedExponent predicted;
    bool monotone_upper_half = false;
    double max_over_min = 0.0;
    bool pass = false;
    std::string detail;

    bool all_converged() const;
    std::string csv() const;  // scan_var,lgamma,seminorm,coulomb,quotient,converged
    std::string json_summary() const;
};

// Q along the failing family; pass = slope within 25% of the predicted
// exponent plus strict growth (MultiBumpM: strict growth only;
// alpha = 1: strict growth and positive slope).
FunctionalScanResult blowup_scan(const ScanSpec& spec);

// Q along the dilation family (1, R, R/2); pass = |slope| <= 0.005 and
// max/min <= 1.5.
FunctionalScanResult boundedness_scan(const ScanSpec& spec);

struct RatioRow {
    double scan_var = 0.0;
    double numer = 0.0;
    double denom = 0.0;
    double ratio = 0.0;
    bool converged = true;
};

struct RatioScanResult {
    std::vector<RatioRow> rows;
    SlopeFit fit;
    bool pass = false;
    std::string detail;

    std::string csv() const;  // scan_var,sup_weighted,seminorm,ratio,converged
    std::string json_summary() const;
};

// sup_r r^{(d-sp)/p} |g(r)| over the seminorm, dilation family;
// pass = |slope| <= 0.01. Throws Error(PreconditionViolated) unless
// 1 < sp < d.
RatioScanResult strauss_ratio_scan(const ScanSpec& spec);

struct RuizRow {
    double scan_var = 0.0;
    double weighted_plus = 0.0;
    double weighted_minus = 0.0;
    double coulomb = 0.0;
    double ratio_plus = 0.0;
    double ratio_minus = 0.0;
    bool converged = true;
};

struct RuizScanResult {
    std::vector<RuizRow> rows;
    SlopeFit fit_plus;
    SlopeFit fit_minus;
    bool pass = false;
    std::string detail;

    std::string csv() const;
    std::string json_summary() const;
};

// Normalized Ruiz ratios R0^{+eps} W_out / E^{1/2} and
// R0^{-eps} W_in / E^{1/2} with the split radius R0 = ruiz_R0 * R
// riding the family; pass = both |slopes| <= 0.01.
RuizScanResult ruiz_ratio_scan(const ScanSpec& spec);

// Named parameter tuples: lions, case1, case2, thm15, rangeb.
ParamTuple preset_tuple(const std::string& name);

std::vector<double> default_grid(ScanKind kind);

}  // namespace csgn
