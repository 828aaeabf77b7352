#include "shiftlab/fixed_fraction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace shiftlab {

namespace {

using u128 = FixedFraction::u128;

struct U256 {
    u128 hi;
    u128 lo;
};

U256 mul_full(u128 a, u128 b) {
    const u128 mask = (~static_cast<u128>(0)) >> 64;
    u128 a0 = a & mask, a1 = a >> 64;
    u128 b0 = b & mask, b1 = b >> 64;
    u128 ll = a0 * b0;
    u128 lh = a0 * b1;
    u128 hl = a1 * b0;
    u128 hh = a1 * b1;
    u128 mid = (ll >> 64) + (lh & mask) + (hl & mask);
    u128 lo = (mid << 64) | (ll & mask);
    u128 hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    return {hi, lo};
}

// Fractional digits as a decimal digit array, doubled 128 times; the carries
// out of the leading digit are the binary expansion, truncated.
u128 bits_from_decimal_digits(const std::vector<std::uint8_t>& digits) {
    std::vector<std::uint8_t> frac = digits;
    u128 v = 0;
    for (int bit = 0; bit < 128; ++bit) {
        int carry = 0;
        for (auto it = frac.rbegin(); it != frac.rend(); ++it) {
            int t = *it * 2 + carry;
            *it = static_cast<std::uint8_t>(t % 10);
            carry = t / 10;
        }
        v = (v << 1) | static_cast<unsigned>(carry);
    }
    return v;
}

}  // namespace

FixedFraction FixedFraction::from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty fraction literal");
    std::size_t pos = 0;
    if (s[pos] == '+') ++pos;
    std::string int_part;
    while (pos < s.size() && s[pos] != '.') {
        if (s[pos] < '0' || s[pos] > '9')
            throw std::invalid_argument("malformed fraction literal: " + std::string(s));
        int_part.push_back(s[pos++]);
    }
    for (char c : int_part)
        if (c != '0') throw std::invalid_argument("fraction not in [0,1): " + std::string(s));
    std::vector<std::uint8_t> digits;
    if (pos < s.size()) {
        ++pos;  // '.'
        for (; pos < s.size(); ++pos) {
            if (s[pos] < '0' || s[pos] > '9')
                throw std::invalid_argument("malformed fraction literal: " + std::string(s));
            digits.push_back(static_cast<std::uint8_t>(s[pos] - '0'));
        }
    }
    return FixedFraction(bits_from_decimal_digits(digits));
}

FixedFraction FixedFraction::from_hex(std::string_view s) {
    if (s.empty() || s.size() > 32) throw std::invalid_argument("hex fraction needs 1..32 digits");
    u128 v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
        else if (c >= 'A' && c <= 'F') d = 10 + (c - 'A');
        else throw std::invalid_argument("malformed hex fraction: " + std::string(s));
        v = (v << 4) | static_cast<unsigned>(d);
    }
    v <<= 4 * (32 - s.size());
    return FixedFraction(v);
}

FixedFraction FixedFraction::from_double(double d) {
    if (!(d >= 0.0) || d >= 1.0) throw std::invalid_argument("from_double needs [0,1)");
    long double x = d;
    u128 v = 0;
    for (int bit = 0; bit < 128; ++bit) {
        x *= 2;
        int b = x >= 1.0L ? 1 : 0;
        if (b) x -= 1.0L;
        v = (v << 1) | static_cast<unsigned>(b);
    }
    return FixedFraction(v);
}

FixedFraction FixedFraction::times(std::int64_t j) const {
    const bool negative = j < 0;
    const std::uint64_t magnitude =
        negative ? ~static_cast<std::uint64_t>(j) + 1 : static_cast<std::uint64_t>(j);
    u128 prod = v_ * static_cast<u128>(magnitude);  // wraps mod 2^128: exact mod 1
    if (negative) prod = static_cast<u128>(0) - prod;
    return FixedFraction(prod);
}

FixedFraction FixedFraction::quantized(int bits) const {
    if (bits < 96 || bits > 128)
        throw std::invalid_argument("fraction precision must be in [96,128] bits");
    if (bits == 128) return *this;
    u128 mask = (~static_cast<u128>(0)) << (128 - bits);
    return FixedFraction(v_ & mask);
}

double FixedFraction::to_double() const {
    const double two64 = 18446744073709551616.0;
    double hi = static_cast<double>(static_cast<std::uint64_t>(v_ >> 64));
    double lo = static_cast<double>(static_cast<std::uint64_t>(v_));
    return hi / two64 + lo / (two64 * two64);
}

std::string FixedFraction::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(32, '0');
    u128 v = v_;
    for (int i = 31; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(v & 0xF)];
        v >>= 4;
    }
    return out;
}

FixedFraction FixedFraction::golden() {
    // Largest lattice x with x^2 + x <= 1, i.e. the truncation of (sqrt(5)-1)/2.
    static const u128 cached = [] {
        auto le_one = [](u128 x) {
            U256 sq = mul_full(x, x);
            u128 hi = sq.hi + x;
            if (hi >= sq.hi) return true;  // no carry: total < 2^256
            return hi == 0 && sq.lo == 0;  // total == 2^256 exactly
        };
        u128 v = 0;
        for (int bit = 127; bit >= 0; --bit) {
            u128 candidate = v | (static_cast<u128>(1) << bit);
            if (le_one(candidate)) v = candidate;
        }
        return v;
    }();
    return FixedFraction(cached);
}

UnitValue UnitValue::one() {
    UnitValue u;
    u.one_ = true;
    return u;
}

UnitValue UnitValue::from_fraction(FixedFraction f) {
    UnitValue u;
    u.frac_ = f;
    return u;
}

UnitValue UnitValue::from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty unit-interval literal");
    std::size_t pos = 0;
    if (s[pos] == '+') ++pos;
    std::string int_part;
    while (pos < s.size() && s[pos] != '.') int_part.push_back(s[pos++]);
    bool int_is_one = int_part == "1";
    if (int_is_one) {
        for (std::size_t i = pos; i < s.size(); ++i)
            if (s[i] != '.' && s[i] != '0')
                throw std::invalid_argument("unit-interval literal above 1: " + std::string(s));
        return one();
    }
    return from_fraction(FixedFraction::from_decimal(s));
}

UnitValue UnitValue::from_double(double d) {
    if (d == 1.0) return one();
    return from_fraction(FixedFraction::from_double(d));
}

std::string UnitValue::text() const {
    return one_ ? std::string("1") : frac_.hex();
}

}  // namespace shiftlab
