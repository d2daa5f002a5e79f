#include "csgn/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace csgn {

namespace mother_bump {

double eval(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(1.0 / (t * t - 1.0));
}

double derivative(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    const double d = t * t - 1.0;
    return std::exp(1.0 / d) * (-2.0 * t / (d * d));
}

}  // namespace mother_bump

RadialProfile::RadialProfile(std::vector<BumpSpec> bumps) : bumps_(std::move(bumps)) {
    for (const BumpSpec& b : bumps_) {
        if (!(b.lambda > 0.0) || !(b.S > 0.0) || !(b.R > b.S)) {
            std::ostringstream os;
            os << "bump (lambda=" << b.lambda << ", R=" << b.R << ", S=" << b.S
               << ") must satisfy lambda > 0, S > 0, R > S";
            throw Error(ErrorCode::InvalidParams, os.str());
        }
    }
    std::sort(bumps_.begin(), bumps_.end(),
              [](const BumpSpec& a, const BumpSpec& b) { return a.R < b.R; });
    for (std::size_t i = 0; i + 1 < bumps_.size(); ++i) {
        if (!(bumps_[i].support_hi() < bumps_[i + 1].support_lo())) {
            std::ostringstream os;
            os << "bumps " << i << " and " << i + 1 << " overlap: ["
               << bumps_[i].support_lo() << ", " << bumps_[i].support_hi()
               << "] meets [" << bumps_[i + 1].support_lo() << ", "
               << bumps_[i + 1].support_hi() << "]";
            throw Error(ErrorCode::OverlappingSupports, os.str());
        }
    }
}

bool RadialProfile::trivial() const { return bumps_.empty(); }

double RadialProfile::eval(double r) const {
    for (const BumpSpec& b : bumps_) {
        if (r > b.support_lo() && r < b.support_hi())
            return b.lambda * mother_bump::eval((r - b.R) / b.S);
    }
    return 0.0;
}

double RadialProfile::eval_derivative(double r) const {
    for (const BumpSpec& b : bumps_) {
        if (r > b.support_lo() && r < b.support_hi())
            return b.lambda / b.S * mother_bump::derivative((r - b.R) / b.S);
    }
    return 0.0;
}

std::vector<std::pair<double, double>> RadialProfile::support() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(bumps_.size());
    for (const BumpSpec& b : bumps_)
        out.emplace_back(b.support_lo(), b.support_hi());
    return out;
}

std::string RadialProfile::to_json() const {
    nlohmann::json j;
    j["bumps"] = nlohmann::json::array();
    for (const BumpSpec& b : bumps_)
        j["bumps"].push_back({{"lambda", b.lambda}, {"R", b.R}, {"S", b.S}});
    return j.dump();
}

RadialProfile RadialProfile::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("bad profile JSON: ") + e.what());
    }
    if (!j.contains("bumps") || !j["bumps"].is_array())
        throw Error(ErrorCode::InvalidParams, "profile JSON needs a \"bumps\" array");
    std::vector<BumpSpec> bumps;
    for (const auto& jb : j["bumps"]) {
        if (!jb.contains("lambda") || !jb.contains("R") || !jb.contains("S"))
            throw Error(ErrorCode::InvalidParams,
                        "each bump needs \"lambda\", \"R\", \"S\"");
        bumps.push_back({jb["lambda"].get<double>(), jb["R"].get<double>(),
                         jb["S"].get<double>()});
    }
    return RadialProfile(std::move(bumps));
}

RadialProfile expand_multibump(const MultiBumpSpec& spec) {
    if (spec.m < 1)
        throw Error(ErrorCode::InvalidParams, "multibump count must be >= 1");
    if (!(spec.R > 0.0) || spec.R == 1.0)
        throw Error(ErrorCode::InvalidParams, "multibump base R must be positive and != 1");
    std::vector<BumpSpec> bumps;
    bumps.reserve(static_cast<std::size_t>(spec.m));
    for (int k = 1; k <= spec.m; ++k) {
        bumps.push_back({std::pow(spec.R, k * spec.xi2), std::pow(spec.R, k),
                         std::pow(spec.R, k * spec.xi1)});
    }
    return RadialProfile(std::move(bumps));  // overlap check happens here
}

}  // namespace csgn
