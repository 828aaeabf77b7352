#include "shiftlab/families.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

namespace shiftlab {

namespace {

using Word = std::vector<std::uint8_t>;

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs

SpacingSet SpacingSet::evens() {
    SpacingSet s;
    s.rule = Rule::evens;
    return s;
}

SpacingSet SpacingSet::all() {
    SpacingSet s;
    s.rule = Rule::all;
    return s;
}

SpacingSet SpacingSet::explicit_set(std::vector<std::int64_t> values,
                                    std::optional<std::int64_t> max) {
    SpacingSet s;
    s.rule = Rule::explicit_list;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto v : values)
        if (v <= 0) throw std::invalid_argument("spacing set entries must be positive");
    if (max)
        for (auto v : values)
            if (v > *max) throw std::invalid_argument("spacing set entry above declared max");
    s.list = std::move(values);
    s.max = max;
    return s;
}

bool SpacingSet::contains(std::int64_t gap) const {
    switch (rule) {
        case Rule::all: return gap >= 1;
        case Rule::evens: return gap >= 1 && gap % 2 == 0;
        case Rule::explicit_list:
            return std::binary_search(list.begin(), list.end(), gap);
    }
    return false;
}

BetaSpec::BetaSpec(const std::string& beta_decimal, int digits_budget)
    : beta_(parse_rational(beta_decimal)), beta_text_(beta_decimal), digits_budget_(digits_budget) {
    if (beta_ <= 1) throw std::invalid_argument("beta must be > 1");
    if (digits_budget_ < 1 || digits_budget_ > 4096)
        throw std::invalid_argument("digits_budget must be in [1,4096]");
    const BigInt num = boost::multiprecision::numerator(beta_);
    const BigInt den = boost::multiprecision::denominator(beta_);
    const bool integral = den == 1;
    BigInt floor_beta = num / den;
    BigInt alpha_size = integral ? floor_beta : floor_beta + 1;
    if (alpha_size > 256) throw std::invalid_argument("beta alphabet capped at 256 symbols");
    alphabet_size_ = alpha_size.convert_to<int>();

    // Greedy expansion of 1: t -> beta*t - floor(beta*t), exact rationals.
    std::vector<std::uint8_t> greedy;
    Rational t = 1;
    for (int i = 0; i < digits_budget_; ++i) {
        Rational u = beta_ * t;
        BigInt digit = boost::multiprecision::numerator(u) / boost::multiprecision::denominator(u);
        greedy.push_back(static_cast<std::uint8_t>(digit.convert_to<int>()));
        t = u - Rational(digit);
        if (t == 0) {
            terminated_ = true;
            break;
        }
    }
    if (terminated_) {
        // Quasi-greedy expansion: (e_1 ... e_{m-1} (e_m - 1)) repeated.
        Word period = greedy;
        period.back() -= 1;
        quasi_greedy_.resize(static_cast<std::size_t>(digits_budget_));
        for (std::size_t i = 0; i < quasi_greedy_.size(); ++i)
            quasi_greedy_[i] = period[i % period.size()];
    } else {
        quasi_greedy_ = std::move(greedy);
    }
}

Alphabet family_alphabet(const ShiftFamilySpec& spec) {
    return std::visit(
        [](const auto& s) -> Alphabet {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SftSpec> || std::is_same_v<T, FullSpec>)
                return s.alphabet;
            else if constexpr (std::is_same_v<T, BetaSpec>)
                return Alphabet(s.alphabet_size());
            else
                return Alphabet(2);
        },
        spec);
}

std::string family_name(const ShiftFamilySpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpacingSpec>) return "spacing";
            else if constexpr (std::is_same_v<T, BoundedDensitySpec>) return "bounded_density";
            else if constexpr (std::is_same_v<T, BetaSpec>) return "beta";
            else if constexpr (std::is_same_v<T, BFreeSpec>) return "bfree";
            else if constexpr (std::is_same_v<T, BAdmissibleSpec>) return "badmissible";
            else if constexpr (std::is_same_v<T, SftSpec>) return "sft";
            else return "full";
        },
        spec);
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

std::vector<std::int64_t> parse_int_list(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<std::int64_t> out;
    for (const auto& v : j) out.push_back(v.get<std::int64_t>());
    return out;
}

Word parse_word(const nlohmann::json& j, int n) {
    Word w;
    if (j.is_string()) {
        for (char c : j.get<std::string>()) {
            if (c < '0' || c > '9') throw std::invalid_argument("word digits must be 0-9");
            w.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    } else if (j.is_array()) {
        for (const auto& v : j) w.push_back(static_cast<std::uint8_t>(v.get<int>()));
    } else {
        throw std::invalid_argument("forbidden word must be a digit string or int array");
    }
    if (w.empty()) throw std::invalid_argument("forbidden words must be nonempty");
    for (auto s : w)
        if (s >= n) throw std::invalid_argument("forbidden word symbol outside alphabet");
    return w;
}

}  // namespace

ShiftFamilySpec spec_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "spacing") {
        const auto& p = j.at("P");
        if (p.contains("rule")) {
            const std::string rule = p.at("rule").get<std::string>();
            if (rule == "evens") return SpacingSpec{SpacingSet::evens()};
            if (rule == "all") return SpacingSpec{SpacingSet::all()};
            throw std::invalid_argument("unknown spacing rule: " + rule);
        }
        std::optional<std::int64_t> max;
        if (p.contains("max")) max = p.at("max").get<std::int64_t>();
        return SpacingSpec{SpacingSet::explicit_set(parse_int_list(p.at("list"), "P.list"), max)};
    }
    if (family == "bounded_density") {
        std::vector<double> f = j.at("f").get<std::vector<double>>();
        if (f.empty()) throw std::invalid_argument("bounded_density needs a nonempty f table");
        for (double v : f)
            if (!(v >= 0)) throw std::invalid_argument("f values must be nonnegative");
        return BoundedDensitySpec{std::move(f)};
    }
    if (family == "beta") {
        int budget = j.value("digits_budget", 64);
        return BetaSpec(j.at("beta").get<std::string>(), budget);
    }
    if (family == "bfree") return BFreeSpec{parse_int_list(j.at("B"), "B")};
    if (family == "badmissible") return BAdmissibleSpec{parse_int_list(j.at("B"), "B")};
    if (family == "sft") {
        Alphabet alphabet(j.at("alphabet").get<int>());
        std::vector<Word> forbidden;
        for (const auto& w : j.at("forbidden")) forbidden.push_back(parse_word(w, alphabet.size));
        return SftSpec{alphabet, std::move(forbidden)};
    }
    if (family == "full") return FullSpec{Alphabet(j.at("alphabet").get<int>())};
    throw std::invalid_argument("unknown family: " + family);
}

nlohmann::json spec_to_json(const ShiftFamilySpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpacingSpec>) {
                if (s.P.rule == SpacingSet::Rule::evens) j["P"] = {{"rule", "evens"}};
                else if (s.P.rule == SpacingSet::Rule::all) j["P"] = {{"rule", "all"}};
                else {
                    j["P"] = {{"list", s.P.list}};
                    if (s.P.max) j["P"]["max"] = *s.P.max;
                }
            } else if constexpr (std::is_same_v<T, BoundedDensitySpec>) {
                j["f"] = s.f;
            } else if constexpr (std::is_same_v<T, BetaSpec>) {
                j["beta"] = s.beta_text();
                j["digits_budget"] = s.digits_budget();
            } else if constexpr (std::is_same_v<T, BFreeSpec>) {
                j["B"] = s.B;
            } else if constexpr (std::is_same_v<T, BAdmissibleSpec>) {
                j["B"] = s.B;
            } else if constexpr (std::is_same_v<T, SftSpec>) {
                j["alphabet"] = s.alphabet.size;
                auto words = nlohmann::json::array();
                for (const auto& w : s.forbidden) {
                    if (s.alphabet.size <= 10) {
                        std::string text;
                        for (auto c : w) text.push_back(static_cast<char>('0' + c));
                        words.push_back(text);
                    } else {
                        words.push_back(std::vector<int>(w.begin(), w.end()));
                    }
                }
                j["forbidden"] = words;
            } else {
                j["alphabet"] = s.alphabet.size;
            }
        },
        spec);
    return j;
}

ShiftFamilySpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

// ---------------------------------------------------------------------------
// Admissibility

namespace {

bool word_admissible_spacing(const SpacingSpec& spec, const std::uint8_t* w, std::size_t len) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < len; ++i)
        if (w[i]) ones.push_back(i);
    for (std::size_t a = 0; a < ones.size(); ++a)
        for (std::size_t b = a + 1; b < ones.size(); ++b)
            if (!spec.P.contains(static_cast<std::int64_t>(ones[b] - ones[a]))) return false;
    return true;
}

bool word_admissible_bounded_density(const BoundedDensitySpec& spec, const std::uint8_t* w,
                                     std::size_t len) {
    const std::size_t p_max = std::min(len, spec.f.size());
    for (std::size_t p = 1; p <= p_max; ++p) {
        long long sum = 0;
        for (std::size_t i = 0; i < p; ++i) sum += w[i];
        if (double(sum) > spec.f[p - 1]) return false;
        for (std::size_t i = p; i < len; ++i) {
            sum += w[i] - w[i - p];
            if (double(sum) > spec.f[p - 1]) return false;
        }
    }
    return true;
}

// Parry criterion: every suffix must be lexicographically <= the quasi-greedy
// expansion of 1 truncated to its length.
bool word_admissible_beta(const BetaSpec& spec, const std::uint8_t* w, std::size_t len) {
    const auto& d = spec.quasi_greedy();
    if (len > d.size())
        throw BudgetExceeded("beta digits budget exceeded: word length " + std::to_string(len) +
                             " > digits_budget " + std::to_string(spec.digits_budget()));
    for (std::size_t start = 0; start < len; ++start) {
        for (std::size_t i = 0; start + i < len; ++i) {
            if (w[start + i] < d[i]) break;
            if (w[start + i] > d[i]) return false;
        }
    }
    return true;
}

bool word_admissible_sft(const SftSpec& spec, const std::uint8_t* w, std::size_t len) {
    for (const auto& f : spec.forbidden) {
        if (f.size() > len) continue;
        for (std::size_t i = 0; i + f.size() <= len; ++i)
            if (std::equal(f.begin(), f.end(), w + i)) return false;
    }
    return true;
}

bool word_admissible_badmissible(const BAdmissibleSpec& spec, const std::uint8_t* w,
                                 std::size_t len) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < len; ++i)
        if (w[i]) ones.push_back(i);
    for (auto b : spec.B) {
        if (static_cast<std::size_t>(b) > ones.size()) continue;  // some residue is free
        std::vector<bool> hit(static_cast<std::size_t>(b), false);
        std::size_t distinct = 0;
        for (auto pos : ones) {
            auto r = static_cast<std::size_t>(pos % static_cast<std::size_t>(b));
            if (!hit[r]) {
                hit[r] = true;
                ++distinct;
            }
        }
        if (distinct == static_cast<std::size_t>(b)) return false;
    }
    return true;
}

// Translation-invariant word check; BFree is excluded (anchored semantics).
bool word_admissible(const ShiftFamilySpec& spec, const std::uint8_t* w, std::size_t len) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpacingSpec>)
                return word_admissible_spacing(s, w, len);
            else if constexpr (std::is_same_v<T, BoundedDensitySpec>)
                return word_admissible_bounded_density(s, w, len);
            else if constexpr (std::is_same_v<T, BetaSpec>)
                return word_admissible_beta(s, w, len);
            else if constexpr (std::is_same_v<T, SftSpec>)
                return word_admissible_sft(s, w, len);
            else if constexpr (std::is_same_v<T, BAdmissibleSpec>)
                return word_admissible_badmissible(s, w, len);
            else if constexpr (std::is_same_v<T, FullSpec>)
                return true;
            else
                throw std::invalid_argument(
                    "bfree admissibility is anchored at absolute coordinates; "
                    "word-level enumeration is not defined for it");
        },
        spec);
}

bool bfree_entry(const std::vector<std::int64_t>& B, std::int64_t j) {
    for (auto b : B)
        if (((j % b) + b) % b == 0) return false;
    return true;
}

void validate_b_set(const std::vector<std::int64_t>& B) {
    for (auto b : B)
        if (b < 2) throw std::invalid_argument("B entries must be >= 2 (got " + std::to_string(b) + ")");
}

}  // namespace

bool is_admissible(const ShiftFamilySpec& spec, const Window& w) {
    if (w.alphabet() != family_alphabet(spec))
        throw std::invalid_argument("alphabet mismatch: window n=" + std::to_string(w.alphabet().size) +
                                    ", family n=" + std::to_string(family_alphabet(spec).size));
    if (const auto* bf = std::get_if<BFreeSpec>(&spec)) {
        validate_b_set(bf->B);
        for (std::int64_t j = w.base(); j < w.end(); ++j)
            if ((w.at(j) != 0) != bfree_entry(bf->B, j)) return false;
        return true;
    }
    return word_admissible(spec, w.symbols().data(), w.length());
}

Window bfree_characteristic(const std::vector<std::int64_t>& B, std::int64_t j_lo,
                            std::int64_t j_hi) {
    if (j_lo > j_hi) throw std::invalid_argument("bfree range needs j_lo <= j_hi");
    validate_b_set(B);
    if (B.empty())
        std::cerr << "warning: empty B set, characteristic sequence is all ones\n";
    const auto len = static_cast<std::size_t>(j_hi - j_lo + 1);
    std::vector<std::uint8_t> symbols(len, 1);
    for (auto b : B) {
        // first multiple of b that is >= j_lo
        std::int64_t r = ((j_lo % b) + b) % b;
        std::int64_t start = r == 0 ? j_lo : j_lo + (b - r);
        for (std::int64_t j = start; j <= j_hi; j += b)
            symbols[static_cast<std::size_t>(j - j_lo)] = 0;
    }
    return Window(Alphabet(2), j_lo, std::move(symbols));
}

// ---------------------------------------------------------------------------
// Word enumeration and bounded checks

namespace {

// Depth-first enumeration of admissible words of length exactly `length`,
// pruning at inadmissible prefixes (valid because admissibility is
// subword-closed for every supported family). Visitor returns false to stop.
bool enumerate_exact(const ShiftFamilySpec& spec, int n, int length, std::uint64_t& nodes_left,
                     Word& scratch, const std::function<bool(const Word&)>& visit) {
    if (static_cast<int>(scratch.size()) == length) return visit(scratch);
    for (int a = 0; a < n; ++a) {
        scratch.push_back(static_cast<std::uint8_t>(a));
        if (nodes_left == 0) throw BudgetExceeded("word enumeration node budget exceeded");
        --nodes_left;
        if (word_admissible(spec, scratch.data(), scratch.size())) {
            if (!enumerate_exact(spec, n, length, nodes_left, scratch, visit)) return false;
        }
        scratch.pop_back();
    }
    return true;
}

void guard_word_budget(int n, int max_len, std::uint64_t cap) {
    if (checked_pow(static_cast<std::uint64_t>(n), max_len, cap) > cap)
        throw BudgetExceeded("word budget exceeded: n^max_len = " + std::to_string(n) + "^" +
                             std::to_string(max_len) + " > " + std::to_string(cap));
}

Window word_window(const Word& w, Alphabet alphabet) { return Window(alphabet, 0, w); }

// Lexicographically largest admissible word in a per-position candidate box,
// used to canonicalize witnesses. Returns nothing if the box is too large.
std::optional<Word> max_admissible_in_box(const ShiftFamilySpec& spec,
                                          const std::vector<std::pair<std::uint8_t, std::uint8_t>>& box) {
    std::uint64_t combos = 1;
    for (auto [lo, hi] : box) {
        combos *= static_cast<std::uint64_t>(hi - lo + 1);
        if (combos > (std::uint64_t(1) << 16)) return std::nullopt;
    }
    Word candidate(box.size());
    std::optional<Word> best;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == box.size()) {
            if (word_admissible(spec, candidate.data(), candidate.size()))
                if (!best || candidate > *best) best = candidate;
            return;
        }
        for (int v = box[i].first; v <= box[i].second; ++v) {
            candidate[i] = static_cast<std::uint8_t>(v);
            rec(i + 1);
        }
    };
    rec(0);
    return best;
}

}  // namespace

Verdict heredity_check(const ShiftFamilySpec& spec, int max_len, CheckBudget budget) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    const int n = family_alphabet(spec).size;
    guard_word_budget(n, max_len, budget.max_words);

    // Coordinatewise decrease is generated by single-position decrements, so
    // heredity up to max_len holds iff every admissible word survives every
    // single decrement. Scanning lengths in increasing order yields a
    // shortest counterexample.
    for (int length = 1; length <= max_len; ++length) {
        std::optional<std::pair<Word, Word>> failure;
        std::uint64_t nodes = budget.max_words * static_cast<std::uint64_t>(max_len) + 1;
        Word scratch;
        enumerate_exact(spec, n, length, nodes, scratch, [&](const Word& w) {
            Word lowered = w;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] == 0) continue;
                lowered[i] = static_cast<std::uint8_t>(w[i] - 1);
                if (!word_admissible(spec, lowered.data(), lowered.size())) {
                    failure = {w, lowered};
                    return false;
                }
                lowered[i] = w[i];
            }
            return true;
        });
        if (failure) {
            // Report the lexicographically largest admissible word dominating
            // the failing one; the single-step word is kept as a fallback.
            std::vector<std::pair<std::uint8_t, std::uint8_t>> box;
            for (auto s : failure->second) box.emplace_back(s, static_cast<std::uint8_t>(n - 1));
            Word top = max_admissible_in_box(spec, box).value_or(failure->first);
            Alphabet alphabet = family_alphabet(spec);
            return Verdict{false,
                           std::make_pair(word_window(top, alphabet),
                                          word_window(failure->second, alphabet))};
        }
    }
    return Verdict{};
}

Verdict safe_symbol_check(const ShiftFamilySpec& spec, std::uint8_t a, int max_len,
                          CheckBudget budget) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    const int n = family_alphabet(spec).size;
    if (a >= n) throw std::invalid_argument("replacement symbol outside alphabet");
    guard_word_budget(n, max_len, budget.max_words);

    // Replacing a subset of positions by `a` factors into single-position
    // replacements, so it is enough to check those.
    for (int length = 1; length <= max_len; ++length) {
        std::optional<std::pair<Word, Word>> failure;
        std::uint64_t nodes = budget.max_words * static_cast<std::uint64_t>(max_len) + 1;
        Word scratch;
        enumerate_exact(spec, n, length, nodes, scratch, [&](const Word& w) {
            Word replaced = w;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] == a) continue;
                replaced[i] = a;
                if (!word_admissible(spec, replaced.data(), replaced.size())) {
                    failure = {w, replaced};
                    return false;
                }
                replaced[i] = w[i];
            }
            return true;
        });
        if (failure) {
            // Positions already equal to `a` may have been replaced from any
            // symbol; the rest are pinned.
            std::vector<std::pair<std::uint8_t, std::uint8_t>> box;
            for (auto s : failure->second) {
                if (s == a) box.emplace_back(0, static_cast<std::uint8_t>(n - 1));
                else box.emplace_back(s, s);
            }
            Word top = max_admissible_in_box(spec, box).value_or(failure->first);
            Alphabet alphabet = family_alphabet(spec);
            return Verdict{false,
                           std::make_pair(word_window(top, alphabet),
                                          word_window(failure->second, alphabet))};
        }
    }
    return Verdict{};
}

std::vector<Window> hereditary_closure(const std::vector<Window>& words) {
    if (words.empty()) return {};
    Alphabet alphabet = words.front().alphabet();
    for (const auto& w : words)
        if (w.alphabet() != alphabet)
            throw std::invalid_argument("hereditary_closure needs a common alphabet");
    std::set<std::pair<std::int64_t, Word>> seen;
    for (const auto& w : words) {
        Word current(w.symbols());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == current.size()) {
                seen.emplace(w.base(), current);
                return;
            }
            for (int v = w.symbol(i); v >= 0; --v) {
                current[i] = static_cast<std::uint8_t>(v);
                rec(i + 1);
            }
            current[i] = w.symbol(i);
        };
        rec(0);
    }
    std::vector<Window> out;
    out.reserve(seen.size());
    for (const auto& [base, symbols] : seen) out.emplace_back(alphabet, base, symbols);
    return out;
}

// ---------------------------------------------------------------------------
// Word counting and topological entropy

namespace {

BigInt count_words_sft(const SftSpec& spec, int length, const CountBudget& budget) {
    const int n = spec.alphabet.size;
    std::size_t max_f = 0;
    for (const auto& f : spec.forbidden) max_f = std::max(max_f, f.size());
    if (max_f == 0) {  // no constraints
        BigInt r = 1;
        for (int i = 0; i < length; ++i) r *= n;
        return r;
    }
    const int context = static_cast<int>(max_f) - 1;

    if (context == 0) {
        std::set<std::uint8_t> banned;
        for (const auto& f : spec.forbidden)
            if (f.size() == 1) banned.insert(f[0]);
        BigInt r = 1;
        for (int i = 0; i < length; ++i) r *= n - static_cast<int>(banned.size());
        return r;
    }

    const std::uint64_t states =
        checked_pow(static_cast<std::uint64_t>(n), context, budget.max_states);
    if (states > budget.max_states)
        throw BudgetExceeded("sft transfer-matrix state budget exceeded: n^" +
                             std::to_string(context) + " states");

    // Direct enumeration below the context length.
    if (length <= context) {
        std::uint64_t nodes = budget.max_nodes;
        BigInt total = 0;
        Word scratch;
        ShiftFamilySpec wrapped = spec;
        enumerate_exact(wrapped, n, length, nodes, scratch, [&](const Word&) {
            ++total;
            return true;
        });
        return total;
    }

    // DP over length-`context` suffix contexts.
    auto decode = [&](std::uint64_t code) {
        Word w(static_cast<std::size_t>(context));
        for (int i = context - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % n);
            code /= static_cast<std::uint64_t>(n);
        }
        return w;
    };
    std::vector<BigInt> counts(states, BigInt(0));
    for (std::uint64_t code = 0; code < states; ++code) {
        Word w = decode(code);
        if (word_admissible_sft(spec, w.data(), w.size())) counts[code] = 1;
    }
    const std::uint64_t drop = states / static_cast<std::uint64_t>(n);
    Word extended(static_cast<std::size_t>(context) + 1);
    for (int step = context; step < length; ++step) {
        std::vector<BigInt> next(states, BigInt(0));
        for (std::uint64_t code = 0; code < states; ++code) {
            if (counts[code] == 0) continue;
            Word ctx = decode(code);
            std::copy(ctx.begin(), ctx.end(), extended.begin());
            for (int a = 0; a < n; ++a) {
                extended.back() = static_cast<std::uint8_t>(a);
                // Only suffixes ending at the new symbol need checking.
                bool ok = true;
                for (const auto& f : spec.forbidden) {
                    if (f.size() > extended.size()) continue;
                    if (std::equal(f.begin(), f.end(), extended.end() - f.size())) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                std::uint64_t next_code =
                    (code % drop) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(a);
                next[next_code] += counts[code];
            }
        }
        counts.swap(next);
    }
    BigInt total = 0;
    for (const auto& c : counts) total += c;
    return total;
}

}  // namespace

BigInt count_words(const ShiftFamilySpec& spec, int length, CountBudget budget) {
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    if (const auto* full = std::get_if<FullSpec>(&spec)) {
        BigInt r = 1;
        for (int i = 0; i < length; ++i) r *= full->alphabet.size;
        return r;
    }
    if (const auto* sft = std::get_if<SftSpec>(&spec)) return count_words_sft(*sft, length, budget);
    if (std::holds_alternative<BFreeSpec>(spec))
        throw std::invalid_argument("count_words is not defined for the anchored bfree family");
    const int n = family_alphabet(spec).size;
    std::uint64_t nodes = budget.max_nodes;
    BigInt total = 0;
    Word scratch;
    enumerate_exact(spec, n, length, nodes, scratch, [&](const Word&) {
        ++total;
        return true;
    });
    return total;
}

EntropyCurve topological_entropy_estimate(const ShiftFamilySpec& spec, int max_len,
                                          CountBudget budget) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    EntropyCurve curve;
    curve.log_count_over_length.reserve(static_cast<std::size_t>(max_len));
    using Float = boost::multiprecision::cpp_bin_float_100;
    for (int length = 1; length <= max_len; ++length) {
        BigInt c = count_words(spec, length, budget);
        double value = 0.0;
        if (c > 0) {
            Float lc = boost::multiprecision::log(Float(c));
            value = lc.convert_to<double>() / length;
        }
        curve.log_count_over_length.push_back(value);
    }
    curve.estimate = curve.log_count_over_length.back();
    return curve;
}

}  // namespace shiftlab
