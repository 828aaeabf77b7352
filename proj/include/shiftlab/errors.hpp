#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Thrown when an enumeration or solver would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by arc_sweep when a swept window fails an admissibility spot-check.
// This indicates a non-safe symbol or an implementation bug, never a tolerance
// issue, so it is a distinct error class (CLI exit code 3).
struct AdmissibilityViolation : std::runtime_error {
    AdmissibilityViolation(double beta_value, std::string word, long long position)
        : std::runtime_error("admissibility violation at beta=" + std::to_string(beta_value) +
                             ", subword \"" + word + "\" at coordinate " + std::to_string(position)),
          beta(beta_value),
          subword(std::move(word)),
          coordinate(position) {}

    double beta;
    std::string subword;
    long long coordinate;
};

}  // namespace shiftlab
