#pragma once

#include "shiftlab/errors.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/window.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace shiftlab {

/// Empirical frequency distribution of k-blocks: the finite-resolution
/// stand-in for an invariant measure restricted to k-cylinders. Blocks are
/// encoded base-n with the first symbol most significant; weights are exact
/// rationals summing to 1.
class BlockDistribution {
public:
    BlockDistribution(Alphabet alphabet, int k,
                      std::vector<std::pair<std::uint64_t, Rational>> weights);

    const Alphabet& alphabet() const { return alphabet_; }
    int k() const { return k_; }
    /// Sorted by block code; all weights positive.
    const std::vector<std::pair<std::uint64_t, Rational>>& weights() const { return weights_; }
    Rational weight(std::uint64_t code) const;

    std::vector<std::uint8_t> decode(std::uint64_t code) const;
    std::string block_text(std::uint64_t code) const;

    /// Lines "block<TAB>numerator/denominator" under a "#k=.. n=.." header.
    void write(std::ostream& out) const;
    static BlockDistribution read(std::istream& in);

private:
    Alphabet alphabet_;
    int k_;
    std::vector<std::pair<std::uint64_t, Rational>> weights_;
};

/// Number of distinct k-blocks over the alphabet; throws when it would not
/// fit the 64-bit block encoding.
std::uint64_t block_space_size(Alphabet alphabet, int k);

/// Sliding-block empirical distribution: weight of u is (occurrences of u) /
/// (length - k + 1), exact.
BlockDistribution empirical_blocks(const Window& w, int k);

/// Half the L1 distance between the weight vectors, exact.
Rational tv_distance(const BlockDistribution& p, const BlockDistribution& q);

}  // namespace shiftlab
