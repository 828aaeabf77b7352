#pragma once

#include "shiftlab/block_dist.hpp"

#include <string>
#include <vector>

namespace shiftlab {

/// Block and conditional plug-in entropies of a window, in nats.
/// chosen_estimate is the conditional entropy h_k at the largest requested k,
/// clamped to [0, log n]; raw conditionals are kept unclamped. Monotonicity
/// of H(k) and h_k is recorded (sampling noise can break it on empirical
/// data), not enforced.
struct EntropyProfile {
    std::vector<int> k_values;
    std::vector<double> block_entropies;  // H(k)
    std::vector<double> conditional;      // h_k = H(k) - H(k-1), h_1 = H(1)
    double chosen_estimate = 0.0;
    std::string method = "plugin-conditional";
    int adequacy_factor = 100;
    bool monotone_block_entropy = true;
    bool monotone_conditional = true;
};

/// -sum w log w in nats, with 0 log 0 = 0.
double block_entropy(const BlockDistribution& p);

/// Plug-in profile H(1..k), h_1..h_k from sliding-block frequencies.
/// Requires length >= adequacy_factor * n^k and reports the required length
/// when the guard fails.
EntropyProfile entropy_estimate(const Window& w, int k, int adequacy_factor = 100);

/// Incremental-parse estimate: (distinct phrases) * log(distinct phrases) / N
/// in nats. Upper-biased; a cross-check, never the chosen estimate.
double lz_entropy_estimate(const Window& w);

/// Fano-type continuity envelope H_b(delta) + delta*log(n-1) in nats.
double fano_bound(double delta, int alphabet_size);

}  // namespace shiftlab
