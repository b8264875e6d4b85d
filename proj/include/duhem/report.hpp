#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace duhem {

// Where a check saw its worst case: a time stamp, a phase-plane point, or both.
struct Location {
    std::optional<double> t;
    std::optional<double> sigma;
    std::optional<double> xi;
};

// Pass/fail record of a checked inequality.
//
// `worst_violation` is the largest signed excess over the inequality seen
// among all checked samples (negative means every sample held with margin).
// The report passes iff worst_violation <= tolerance.
struct VerificationReport {
    std::string name;
    bool passed = true;
    double worst_violation = 0.0;
    Location worst_location;
    double tolerance = 0.0;
    std::size_t samples_checked = 0;
    std::vector<std::string> notes;

    // Folds one sample into the running worst case. The first sample always
    // replaces the initial (empty) worst value.
    void record(double violation, const Location& where);

    // Recomputes `passed` from the invariant.
    void finalize();
};

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const std::vector<VerificationReport>& reports);

}  // namespace duhem
