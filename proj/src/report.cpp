#include "duhem/report.hpp"

#include <cmath>
#include <limits>

namespace duhem {

void VerificationReport::record(double violation, const Location& where) {
    if (samples_checked == 0 || violation > worst_violation || std::isnan(violation)) {
        worst_violation = violation;
        worst_location = where;
    }
    ++samples_checked;
}

void VerificationReport::finalize() {
    passed = !std::isnan(worst_violation) && worst_violation <= tolerance;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["name"] = report.name;
    j["passed"] = report.passed;
    // JSON has no NaN/inf; emit null instead.
    j["worst_violation"] = std::isfinite(report.worst_violation)
                               ? nlohmann::json(report.worst_violation)
                               : nlohmann::json(nullptr);
    j["worst_location"] = {{"t", optional_number(report.worst_location.t)},
                           {"sigma", optional_number(report.worst_location.sigma)},
                           {"xi", optional_number(report.worst_location.xi)}};
    j["tolerance"] = report.tolerance;
    j["samples_checked"] = report.samples_checked;
    j["notes"] = report.notes;
    return j;
}

nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

}  // namespace duhem
