#include "shiftlab/rotation.hpp"

#include <stdexcept>

namespace shiftlab {

Window sturmian_window(const RotationCoding& coding, std::int64_t base, std::size_t length) {
    if (length == 0) throw std::invalid_argument("window length must be >= 1");
    std::vector<std::uint8_t> symbols(length);
    FixedFraction orbit = coding.alpha.times(base);
    for (std::size_t i = 0; i < length; ++i) {
        symbols[i] = coding.beta.contains_half_open(orbit) ? 1 : 0;
        orbit = orbit.plus(coding.alpha);
    }
    return Window(Alphabet(2), base, std::move(symbols));
}

FixedFraction fraction_from_rational(const Rational& r) {
    if (r < 0 || r >= 1) throw std::invalid_argument("fraction must be in [0,1)");
    BigInt scaled = (boost::multiprecision::numerator(r) << 128) /
                    boost::multiprecision::denominator(r);
    FixedFraction::u128 v = 0;
    for (int word = 1; word >= 0; --word)
        v = (v << 64) | ((scaled >> (64 * word)) & 0xFFFFFFFFFFFFFFFFULL).convert_to<std::uint64_t>();
    return FixedFraction::from_bits(v);
}

UnitValue unit_from_rational(const Rational& r) {
    if (r == 1) return UnitValue::one();
    return UnitValue::from_fraction(fraction_from_rational(r));
}

}  // namespace shiftlab
