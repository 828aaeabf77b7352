#include "shiftlab/sources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

namespace {

void validate_probability_vector(const std::vector<Rational>& probs, const char* what) {
    if (probs.size() < 2) throw std::invalid_argument(std::string(what) + " needs >= 2 entries");
    if (probs.size() > 256) throw std::invalid_argument(std::string(what) + " capped at 256 entries");
    Rational total = 0;
    for (const auto& p : probs) {
        if (p < 0 || p > 1) throw std::invalid_argument(std::string(what) + " entries must be in [0,1]");
        total += p;
    }
    if (total != 1) throw std::invalid_argument(std::string(what) + " must sum to 1 exactly");
}

// Cumulative thresholds scaled to 2^64 so sampling is a pure integer
// comparison; entries for symbols 0..n-2 (the last symbol absorbs the rest).
std::vector<std::uint64_t> thresholds_from_rationals(const std::vector<Rational>& probs) {
    std::vector<std::uint64_t> out;
    out.reserve(probs.size() - 1);
    Rational cumulative = 0;
    const BigInt two64 = BigInt(1) << 64;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        cumulative += probs[i];
        BigInt scaled = (boost::multiprecision::numerator(cumulative) * two64) /
                        boost::multiprecision::denominator(cumulative);
        out.push_back(scaled.convert_to<std::uint64_t>());
    }
    return out;
}

std::vector<std::uint64_t> thresholds_from_doubles(const std::vector<double>& probs) {
    std::vector<std::uint64_t> out;
    out.reserve(probs.size() - 1);
    long double cumulative = 0;
    const long double two64 = 18446744073709551616.0L;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        cumulative += probs[i];
        long double v = std::min(cumulative, 1.0L) * two64;
        out.push_back(v >= two64 ? ~std::uint64_t(0) : static_cast<std::uint64_t>(v));
    }
    return out;
}

std::uint8_t pick(const std::vector<std::uint64_t>& thresholds, std::uint64_t r) {
    std::size_t sym = 0;
    while (sym < thresholds.size() && r >= thresholds[sym]) ++sym;
    return static_cast<std::uint8_t>(sym);
}

void validate_adjacency(const std::vector<std::vector<int>>& a) {
    const std::size_t d = a.size();
    if (d < 2 || d > 256) throw std::invalid_argument("adjacency must be 2..256 states");
    for (const auto& row : a) {
        if (row.size() != d) throw std::invalid_argument("adjacency must be square");
        for (int v : row)
            if (v != 0 && v != 1) throw std::invalid_argument("adjacency entries must be 0/1");
    }
}

// Wielandt bound: a primitive d x d matrix has a strictly positive power with
// exponent at most (d-1)^2 + 1.
bool is_primitive(const std::vector<std::vector<int>>& a) {
    const std::size_t d = a.size();
    std::vector<std::vector<bool>> reach(d, std::vector<bool>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) reach[i][j] = a[i][j] != 0;
    const std::size_t limit = (d - 1) * (d - 1) + 1;
    for (std::size_t power = 1; power <= limit; ++power) {
        bool all = true;
        for (std::size_t i = 0; i < d && all; ++i)
            for (std::size_t j = 0; j < d && all; ++j) all = reach[i][j];
        if (all) return true;
        std::vector<std::vector<bool>> next(d, std::vector<bool>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t t = 0; t < d; ++t) {
                if (!reach[i][t]) continue;
                for (std::size_t j = 0; j < d; ++j)
                    if (a[t][j]) next[i][j] = true;
            }
        reach.swap(next);
    }
    return false;
}

std::vector<double> power_iterate(const std::vector<std::vector<int>>& a, bool transpose,
                                  double tolerance, int max_iterations, double* root_out) {
    const std::size_t d = a.size();
    std::vector<double> v(d, 1.0 / double(d)), next(d);
    double root = 0.0, previous_root = -1.0;
    for (int it = 0; it < max_iterations; ++it) {
        for (std::size_t i = 0; i < d; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                sum += (transpose ? a[j][i] : a[i][j]) * v[j];
            next[i] = sum;
        }
        double norm = 0.0;
        for (double x : next) norm += x;
        if (norm <= 0.0) throw std::runtime_error("power iteration collapsed to zero");
        root = norm;
        for (std::size_t i = 0; i < d; ++i) next[i] /= norm;
        v.swap(next);
        if (previous_root > 0 && std::abs(root - previous_root) <= tolerance * root) {
            if (root_out) *root_out = root;
            return v;
        }
        previous_root = root;
    }
    throw std::runtime_error("power iteration did not converge within the iteration budget");
}

}  // namespace

ParryData parry_measure(const std::vector<std::vector<int>>& adjacency, double tolerance,
                        int max_iterations) {
    validate_adjacency(adjacency);
    if (!is_primitive(adjacency)) throw std::invalid_argument("non-primitive adjacency matrix");
    const std::size_t d = adjacency.size();

    double lambda = 0.0;
    std::vector<double> right = power_iterate(adjacency, false, tolerance, max_iterations, &lambda);
    std::vector<double> left = power_iterate(adjacency, true, tolerance, max_iterations, nullptr);

    ParryData out;
    out.log_perron_root = std::log(lambda);
    out.transition.assign(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            out.transition[i][j] = adjacency[i][j] ? right[j] / (lambda * right[i]) : 0.0;
            row_sum += out.transition[i][j];
        }
        if (std::abs(row_sum - 1.0) > 1e-10)
            throw std::runtime_error("parry rows did not normalize within 1e-10");
        for (std::size_t j = 0; j < d; ++j) out.transition[i][j] /= row_sum;
    }
    double total = 0.0;
    out.stationary.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        out.stationary[i] = left[i] * right[i];
        total += out.stationary[i];
    }
    for (double& x : out.stationary) x /= total;
    return out;
}

std::vector<Rational> stationary_distribution(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t d = rows.size();
    if (d < 2 || d > 256) throw std::invalid_argument("markov matrix must be 2..256 states");
    for (const auto& row : rows) {
        if (row.size() != d) throw std::invalid_argument("markov matrix must be square");
        validate_probability_vector(row, "markov row");
    }
    // Solve pi (P - I) = 0 with sum(pi) = 1 by exact Gaussian elimination on
    // the transposed system; the last equation is replaced by the sum
    // constraint.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    for (std::size_t i = 0; i + 1 < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m[i][j] = rows[j][i] - Rational(i == j ? 1 : 0);
        m[i][d] = 0;
    }
    for (std::size_t j = 0; j < d; ++j) m[d - 1][j] = 1;
    m[d - 1][d] = 1;

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) throw std::invalid_argument("markov chain has no unique stationary vector");
        std::swap(m[col], m[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= d; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::vector<Rational> pi(d);
    for (std::size_t i = 0; i < d; ++i) {
        pi[i] = m[i][d] / m[i][i];
        if (pi[i] < 0) throw std::invalid_argument("markov chain has no unique stationary vector");
    }
    return pi;
}

Alphabet source_alphabet(const GenericSource& source) {
    return std::visit(
        [](const auto& s) -> Alphabet {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BernoulliSource>)
                return Alphabet(static_cast<int>(s.probs.size()));
            else if constexpr (std::is_same_v<T, MarkovSource>)
                return Alphabet(static_cast<int>(s.rows.size()));
            else if constexpr (std::is_same_v<T, SftParrySource>)
                return Alphabet(static_cast<int>(s.adjacency.size()));
            else {
                std::ifstream in(s.path);
                if (!in) throw std::invalid_argument("cannot open window file: " + s.path);
                return Window::read(in).alphabet();
            }
        },
        source);
}

std::string source_text(const GenericSource& source) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BernoulliSource>) {
                std::string out = "bernoulli:";
                for (std::size_t i = 0; i < s.probs.size(); ++i) {
                    if (i) out.push_back(',');
                    out += rational_string(s.probs[i]);
                }
                return out;
            } else if constexpr (std::is_same_v<T, MarkovSource>) {
                std::string out = "markov:";
                for (std::size_t i = 0; i < s.rows.size(); ++i) {
                    if (i) out.push_back(';');
                    for (std::size_t j = 0; j < s.rows[i].size(); ++j) {
                        if (j) out.push_back(',');
                        out += rational_string(s.rows[i][j]);
                    }
                }
                return out;
            } else if constexpr (std::is_same_v<T, SftParrySource>) {
                std::string out = "parry:";
                for (std::size_t i = 0; i < s.adjacency.size(); ++i) {
                    if (i) out.push_back(';');
                    for (std::size_t j = 0; j < s.adjacency[i].size(); ++j)
                        out.push_back(s.adjacency[i][j] ? '1' : '0');
                }
                return out;
            } else {
                return "file:" + s.path;
            }
        },
        source);
}

Window sample_generic(const GenericSource& source, std::size_t length, std::uint64_t seed,
                      std::int64_t base) {
    if (length == 0) throw std::invalid_argument("sample length must be >= 1");
    if (const auto* file = std::get_if<FileSource>(&source)) {
        std::ifstream in(file->path);
        if (!in) throw std::invalid_argument("cannot open window file: " + file->path);
        Window w = Window::read(in);
        if (w.length() < length)
            throw std::invalid_argument("window file shorter than requested length");
        return w.subwindow(w.base(), length);
    }

    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> symbols(length);

    if (const auto* bernoulli = std::get_if<BernoulliSource>(&source)) {
        validate_probability_vector(bernoulli->probs, "bernoulli probabilities");
        auto thresholds = thresholds_from_rationals(bernoulli->probs);
        for (auto& s : symbols) s = pick(thresholds, rng());
    } else if (const auto* markov = std::get_if<MarkovSource>(&source)) {
        auto pi = stationary_distribution(markov->rows);
        auto initial = thresholds_from_rationals(pi);
        std::vector<std::vector<std::uint64_t>> per_state;
        per_state.reserve(markov->rows.size());
        for (const auto& row : markov->rows) per_state.push_back(thresholds_from_rationals(row));
        std::uint8_t state = pick(initial, rng());
        symbols[0] = state;
        for (std::size_t i = 1; i < length; ++i) {
            state = pick(per_state[state], rng());
            symbols[i] = state;
        }
    } else {
        const auto& parry = std::get<SftParrySource>(source);
        ParryData data = parry_measure(parry.adjacency);
        auto initial = thresholds_from_doubles(data.stationary);
        std::vector<std::vector<std::uint64_t>> per_state;
        per_state.reserve(data.transition.size());
        for (const auto& row : data.transition) per_state.push_back(thresholds_from_doubles(row));
        std::uint8_t state = pick(initial, rng());
        symbols[0] = state;
        for (std::size_t i = 1; i < length; ++i) {
            state = pick(per_state[state], rng());
            symbols[i] = state;
        }
    }
    return Window(source_alphabet(source), base, std::move(symbols));
}

}  // namespace shiftlab
