#pragma once

#include "shiftlab/errors.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/window.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shiftlab {

/// The allowed-gap set P of a spacing shift: an explicit finite list or a
/// named rule ("evens", "all").
struct SpacingSet {
    enum class Rule { explicit_list, evens, all };
    Rule rule = Rule::explicit_list;
    std::vector<std::int64_t> list;          // sorted, used for explicit_list
    std::optional<std::int64_t> max;         // metadata for explicit lists

    static SpacingSet evens();
    static SpacingSet all();
    static SpacingSet explicit_set(std::vector<std::int64_t> values,
                                   std::optional<std::int64_t> max = std::nullopt);
    bool contains(std::int64_t gap) const;
};

struct SpacingSpec {
    SpacingSet P;
};

/// Bounded density shift: subword sums of length p may not exceed f(p),
/// for p = 1..f.size(). Lengths beyond the table are unconstrained.
struct BoundedDensitySpec {
    std::vector<double> f;
};

/// Beta shift with the Parry lexicographic criterion. The decimal string is
/// interpreted as an exact rational, and the greedy orbit of 1 is computed in
/// exact rational arithmetic; digits_budget caps the expansion depth (and so
/// the longest checkable word).
class BetaSpec {
public:
    BetaSpec(const std::string& beta_decimal, int digits_budget = 64);

    const Rational& beta() const { return beta_; }
    const std::string& beta_text() const { return beta_text_; }
    int digits_budget() const { return digits_budget_; }
    int alphabet_size() const { return alphabet_size_; }
    /// Quasi-greedy expansion of 1, digits_budget entries.
    const std::vector<std::uint8_t>& quasi_greedy() const { return quasi_greedy_; }
    bool greedy_terminates() const { return terminated_; }

private:
    Rational beta_;
    std::string beta_text_;
    int digits_budget_;
    int alphabet_size_;
    std::vector<std::uint8_t> quasi_greedy_;
    bool terminated_ = false;
};

/// Finite truncation of the divisor set. For an infinite intended set (all
/// prime squares, say) the characteristic window is exact only for |j| below
/// the smallest omitted divisor.
struct BFreeSpec {
    std::vector<std::int64_t> B;
};

struct BAdmissibleSpec {
    std::vector<std::int64_t> B;
};

struct SftSpec {
    Alphabet alphabet;
    std::vector<std::vector<std::uint8_t>> forbidden;
};

struct FullSpec {
    Alphabet alphabet;
};

using ShiftFamilySpec =
    std::variant<SpacingSpec, BoundedDensitySpec, BetaSpec, BFreeSpec, BAdmissibleSpec, SftSpec,
                 FullSpec>;

Alphabet family_alphabet(const ShiftFamilySpec& spec);
std::string family_name(const ShiftFamilySpec& spec);

ShiftFamilySpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ShiftFamilySpec& spec);
ShiftFamilySpec load_spec_file(const std::string& path);

/// Word-level admissibility by each family's finite criterion. Spacing,
/// bounded-density, beta, B-admissible, SFT and full-shift checks are
/// translation invariant; the B-free check is anchored at the window's
/// absolute coordinates (it compares against the characteristic sequence).
bool is_admissible(const ShiftFamilySpec& spec, const Window& w);

/// Characteristic window of the B-free integers on [j_lo, j_hi]; entry 1 iff
/// no b in B divides |j|. Entry at 0 is always 0.
Window bfree_characteristic(const std::vector<std::int64_t>& B, std::int64_t j_lo,
                            std::int64_t j_hi);

/// Outcome of a bounded word-level check; when holds is false the witness is
/// a pair (admissible word, related inadmissible word).
struct Verdict {
    bool holds = true;
    std::optional<std::pair<Window, Window>> witness;
};

struct CheckBudget {
    // Upper bound for n^max_len; enumeration refuses to start beyond it.
    std::uint64_t max_words = std::uint64_t(1) << 24;
};

/// Word-level heredity up to max_len: every admissible word must stay
/// admissible under any coordinatewise decrease. "holds" means no
/// counterexample up to max_len, not a theorem.
Verdict heredity_check(const ShiftFamilySpec& spec, int max_len, CheckBudget budget = {});

/// Word-level safe-symbol check: replacing any subset of positions of an
/// admissible word by `a` must stay admissible.
Verdict safe_symbol_check(const ShiftFamilySpec& spec, std::uint8_t a, int max_len,
                          CheckBudget budget = {});

/// Downward closure of a set of words under the coordinatewise order.
std::vector<Window> hereditary_closure(const std::vector<Window>& words);

struct CountBudget {
    std::uint64_t max_states = std::uint64_t(1) << 22;   // SFT transfer contexts
    std::uint64_t max_nodes = std::uint64_t(1) << 26;    // enumeration nodes
};

/// Number of admissible words of exactly the given length (exact integer).
BigInt count_words(const ShiftFamilySpec& spec, int length, CountBudget budget = {});

struct EntropyCurve {
    std::vector<double> log_count_over_length;  // entry L-1 is log c(L) / L
    double estimate = 0.0;                      // value at max_len
};

/// log(count_words(L))/L for L = 1..max_len, in nats.
EntropyCurve topological_entropy_estimate(const ShiftFamilySpec& spec, int max_len,
                                          CountBudget budget = {});

}  // namespace shiftlab
