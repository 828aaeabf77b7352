#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace shiftlab {

/// Unsigned fixed-point fraction in [0,1) with 128 fractional bits.
///
/// All arithmetic is modulo 1 and exact on the 2^-128 lattice, so orbits
/// j*alpha mod 1 accumulate no rounding drift no matter how long the window.
class FixedFraction {
public:
    using u128 = unsigned __int128;

    FixedFraction() = default;

    static FixedFraction from_bits(u128 raw) { return FixedFraction(raw); }
    /// Truncating conversion from a decimal string in [0,1): "0.5", ".5", "0".
    static FixedFraction from_decimal(std::string_view s);
    /// 1..32 hex digits, most significant first (inverse of hex()).
    static FixedFraction from_hex(std::string_view s);
    /// Truncating conversion; d must lie in [0,1).
    static FixedFraction from_double(double d);
    /// (sqrt(5)-1)/2 truncated to the lattice, computed by exact bisection.
    static FixedFraction golden();

    u128 raw() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    /// True when the lattice denominator divides 2^64 (low 64 bits zero);
    /// such values count as low-denominator rationals for the alpha guard.
    bool denominator_at_most_2_64() const { return static_cast<std::uint64_t>(v_) == 0; }

    FixedFraction plus(FixedFraction o) const { return FixedFraction(v_ + o.v_); }
    FixedFraction negated() const { return FixedFraction(static_cast<u128>(0) - v_); }
    /// j * x mod 1, exact at the lattice (negative j via exact complement).
    FixedFraction times(std::int64_t j) const;
    /// Truncate to `bits` fractional bits, 96 <= bits <= 128.
    FixedFraction quantized(int bits) const;

    double to_double() const;
    std::string hex() const;  // 32 lowercase hex digits

    friend bool operator==(FixedFraction a, FixedFraction b) { return a.v_ == b.v_; }
    friend bool operator!=(FixedFraction a, FixedFraction b) { return a.v_ != b.v_; }
    friend bool operator<(FixedFraction a, FixedFraction b) { return a.v_ < b.v_; }
    friend bool operator<=(FixedFraction a, FixedFraction b) { return a.v_ <= b.v_; }

private:
    explicit constexpr FixedFraction(u128 v) : v_(v) {}
    u128 v_ = 0;
};

/// A value in the closed interval [0,1]; the masking parameter beta.
/// Endpoint 1 is carried exactly (it is not representable as a FixedFraction).
class UnitValue {
public:
    UnitValue() = default;  // zero
    static UnitValue zero() { return UnitValue(); }
    static UnitValue one();
    static UnitValue from_fraction(FixedFraction f);
    /// Accepts "1", "1.0", and decimals in [0,1) (truncating).
    static UnitValue from_decimal(std::string_view s);
    static UnitValue from_double(double d);

    bool is_one() const { return one_; }
    bool is_zero() const { return !one_ && frac_.is_zero(); }
    FixedFraction fraction() const { return frac_; }
    double to_double() const { return one_ ? 1.0 : frac_.to_double(); }
    std::string text() const;  // "1" or the 32-digit hex of the fraction

    /// chi_[0,beta)(t): half-open interval membership, boundary excluded.
    bool contains_half_open(FixedFraction t) const { return one_ || t < frac_; }

    friend bool operator==(const UnitValue& a, const UnitValue& b) {
        return a.one_ == b.one_ && a.frac_ == b.frac_;
    }
    friend bool operator<(const UnitValue& a, const UnitValue& b) {
        if (a.one_ || b.one_) return !a.one_ && b.one_;
        return a.frac_ < b.frac_;
    }
    friend bool operator<=(const UnitValue& a, const UnitValue& b) { return a == b || a < b; }

private:
    bool one_ = false;
    FixedFraction frac_;
};

}  // namespace shiftlab
