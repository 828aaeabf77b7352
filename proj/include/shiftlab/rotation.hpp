#pragma once

#include "shiftlab/fixed_fraction.hpp"
#include "shiftlab/window.hpp"

namespace shiftlab {

/// Parameters of the rotation-coded binary sequence whose entry at j is
/// chi_[0,beta)(j*alpha mod 1).
struct RotationCoding {
    FixedFraction alpha;
    UnitValue beta;
};

/// The coded sequence restricted to [base, base+length). The orbit values
/// j*alpha mod 1 are accumulated in exact fixed-point arithmetic, so two
/// calls with identical parameters agree bit-for-bit.
Window sturmian_window(const RotationCoding& coding, std::int64_t base, std::size_t length);

/// Truncation of a rational in [0,1) onto the fixed-point lattice.
FixedFraction fraction_from_rational(const Rational& r);
/// Same for the closed interval [0,1]; 1 maps to the exact endpoint.
UnitValue unit_from_rational(const Rational& r);

}  // namespace shiftlab
