#include "shiftlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace shiftlab {

double block_entropy(const BlockDistribution& p) {
    double h = 0.0;
    for (const auto& [code, w] : p.weights()) {
        double v = to_double(w);
        if (v > 0.0) h -= v * std::log(v);
    }
    return std::max(h, 0.0);
}

EntropyProfile entropy_estimate(const Window& w, int k, int adequacy_factor) {
    if (k < 1) throw std::invalid_argument("entropy block length must be >= 1");
    if (adequacy_factor < 1) throw std::invalid_argument("adequacy factor must be >= 1");
    const std::uint64_t space = block_space_size(w.alphabet(), k);
    const auto required =
        static_cast<unsigned __int128>(adequacy_factor) * static_cast<unsigned __int128>(space);
    if (static_cast<unsigned __int128>(w.length()) < required) {
        std::string digits;
        for (auto r = required; r > 0; r /= 10)
            digits.insert(digits.begin(), static_cast<char>('0' + int(r % 10)));
        throw std::invalid_argument("window too short for k=" + std::to_string(k) +
                                    ": need length >= " + digits + ", have " +
                                    std::to_string(w.length()));
    }

    EntropyProfile profile;
    profile.adequacy_factor = adequacy_factor;
    const double log_n = std::log(double(w.alphabet().size));
    double previous = 0.0;
    for (int j = 1; j <= k; ++j) {
        double h_block = block_entropy(empirical_blocks(w, j));
        profile.k_values.push_back(j);
        profile.block_entropies.push_back(h_block);
        profile.conditional.push_back(h_block - previous);
        if (h_block < previous - 1e-12) profile.monotone_block_entropy = false;
        previous = h_block;
    }
    for (std::size_t i = 1; i < profile.conditional.size(); ++i)
        if (profile.conditional[i] > profile.conditional[i - 1] + 1e-12)
            profile.monotone_conditional = false;
    profile.chosen_estimate = std::clamp(profile.conditional.back(), 0.0, log_n);
    return profile;
}

double lz_entropy_estimate(const Window& w) {
    if (w.length() < 10000)
        throw std::invalid_argument("window too short for the parse estimate (need >= 10^4)");
    // LZ78 incremental parse: each phrase is the shortest prefix not yet in
    // the dictionary.
    std::unordered_map<std::uint64_t, std::uint32_t> children;
    children.reserve(w.length() / 4);
    std::uint32_t next_id = 1;
    std::uint32_t node = 0;
    std::uint64_t phrases = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
        const std::uint64_t key = (static_cast<std::uint64_t>(node) << 8) | w.symbol(i);
        auto it = children.find(key);
        if (it != children.end()) {
            node = it->second;
        } else {
            children.emplace(key, next_id++);
            node = 0;
            ++phrases;
        }
    }
    if (node != 0) ++phrases;  // trailing partial phrase
    const double c = static_cast<double>(phrases);
    return c * std::log(c) / static_cast<double>(w.length());
}

double fano_bound(double delta, int alphabet_size) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in [0,1]");
    if (alphabet_size < 2) throw std::invalid_argument("alphabet size must be >= 2");
    double binary = 0.0;
    if (delta > 0.0 && delta < 1.0)
        binary = -delta * std::log(delta) - (1.0 - delta) * std::log(1.0 - delta);
    return binary + delta * std::log(double(alphabet_size - 1));
}

}  // namespace shiftlab
