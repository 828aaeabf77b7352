#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/window.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace shiftlab {

/// Independent draws over {0..n-1}; probabilities are exact rationals and
/// must sum to 1 exactly.
struct BernoulliSource {
    std::vector<Rational> probs;
};

/// Stationary Markov chain: rows sum to 1 exactly; the initial distribution
/// is the stationary vector, solved in exact rational arithmetic.
struct MarkovSource {
    std::vector<std::vector<Rational>> rows;
};

/// Max-entropy (Parry) chain of a primitive 0/1 adjacency matrix.
struct SftParrySource {
    std::vector<std::vector<int>> adjacency;
};

struct FileSource {
    std::string path;
};

using GenericSource = std::variant<BernoulliSource, MarkovSource, SftParrySource, FileSource>;

Alphabet source_alphabet(const GenericSource& source);
std::string source_text(const GenericSource& source);

/// Deterministic sample given (source, length, seed): a stand-in for a
/// generic point of the source's measure. FileSource reads and validates a
/// window file (length/seed ignored apart from length checks).
Window sample_generic(const GenericSource& source, std::size_t length, std::uint64_t seed,
                      std::int64_t base = 0);

struct ParryData {
    std::vector<std::vector<double>> transition;  // rows sum to 1 exactly after renormalization
    std::vector<double> stationary;
    double log_perron_root = 0.0;
};

/// Perron eigendata of a primitive adjacency matrix by power iteration
/// (relative tolerance on the root), then P(i,j) = A(i,j) v_j / (lambda v_i).
ParryData parry_measure(const std::vector<std::vector<int>>& adjacency, double tolerance = 1e-12,
                        int max_iterations = 200000);

/// Exact stationary row vector of a rational stochastic matrix.
std::vector<Rational> stationary_distribution(const std::vector<std::vector<Rational>>& rows);

}  // namespace shiftlab
