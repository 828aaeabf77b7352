#pragma once

#include "shiftlab/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace shiftlab {

/// The finite alphabet {0,...,size-1}. Symbols are stored as bytes, so
/// size is capped at 256.
struct Alphabet {
    explicit Alphabet(int n);
    int size;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.size == b.size; }
    friend bool operator!=(const Alphabet& a, const Alphabet& b) { return a.size != b.size; }
};

/// A finite indexed block of symbols: the computational stand-in for a point
/// of the full shift, anchored at an absolute coordinate `base`.
class Window {
public:
    Window(Alphabet alphabet, std::int64_t base, std::vector<std::uint8_t> symbols);

    static Window zeros(Alphabet alphabet, std::int64_t base, std::size_t length);

    const Alphabet& alphabet() const { return alphabet_; }
    std::int64_t base() const { return base_; }
    std::size_t length() const { return symbols_.size(); }
    /// One past the last absolute coordinate.
    std::int64_t end() const { return base_ + static_cast<std::int64_t>(symbols_.size()); }

    std::uint8_t symbol(std::size_t i) const { return symbols_[i]; }
    std::uint8_t at(std::int64_t absolute) const;
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

    /// Sub-block covering [from, from+len) in absolute coordinates.
    Window subwindow(std::int64_t from, std::size_t len) const;

    std::string symbols_text() const;  // digits when n <= 10, else space-separated

    /// Plain-text serialization: header "#base=<int> n=<int>", then symbols as
    /// contiguous digits (n <= 10) or whitespace-separated integers.
    /// Round-trips bit-exactly. read() skips additional '#' comment lines.
    void write(std::ostream& out) const;
    static Window read(std::istream& in);

    friend bool operator==(const Window& a, const Window& b) {
        return a.alphabet_ == b.alphabet_ && a.base_ == b.base_ && a.symbols_ == b.symbols_;
    }

private:
    Alphabet alphabet_;
    std::int64_t base_;
    std::vector<std::uint8_t> symbols_;
};

/// Absolute coordinate range shared by two windows, empty when disjoint.
struct Overlap {
    std::int64_t from;
    std::size_t length;
};
std::optional<Overlap> overlap(const Window& x, const Window& y);

/// Coordinate-wise product of x with a binary mask y on the overlap of the
/// two ranges. Output alphabet is x's. Throws on empty overlap.
Window star_product(const Window& x, const Window& y);

/// Fraction of overlap coordinates where the windows differ, exact.
/// Finite-window surrogate for the d-bar pseudometric on sequences.
Rational disagreement_density(const Window& x, const Window& y);

/// m-th entry is (number of true flags among the first m) / m, exact.
std::vector<Rational> running_density(const std::vector<bool>& flags);

}  // namespace shiftlab
