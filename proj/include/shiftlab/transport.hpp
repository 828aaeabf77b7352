#pragma once

#include "shiftlab/block_dist.hpp"

#include <iosfwd>
#include <vector>

namespace shiftlab {

struct TransportEntry {
    std::uint64_t from_code;
    std::uint64_t to_code;
    Rational mass;
};

/// A coupling of two block distributions: row sums equal the source weights
/// and column sums the target weights, exactly. The finite-k surrogate of a
/// joining.
struct TransportPlan {
    std::vector<TransportEntry> entries;
    Rational cost;

    void write(std::ostream& out, const BlockDistribution& p, const BlockDistribution& q) const;
};

struct TransportBudget {
    std::size_t max_support_each = std::size_t(1) << 16;
    std::size_t max_support_product = std::size_t(1) << 20;
    // Cap on the common denominator after scaling masses to integers.
    BigInt max_scaled_mass = BigInt(1) << 48;
};

/// Exact minimum of sum mass * hamming(u,v)/k over couplings of p and q:
/// the k-block transportation distance with normalized Hamming cost, solved
/// as an integer min-cost flow after exact common-denominator scaling.
std::pair<Rational, TransportPlan> dbar_blocks(const BlockDistribution& p,
                                               const BlockDistribution& q,
                                               TransportBudget budget = {});

/// dbar_blocks over empirical k-block distributions of the two windows for
/// each k. Every cost is a finite-resolution lower approximation of the
/// d-bar distance between the underlying measures.
std::vector<std::pair<int, Rational>> dbar_ladder(const Window& x, const Window& y,
                                                  const std::vector<int>& ks,
                                                  TransportBudget budget = {});

}  // namespace shiftlab
