#include "shiftlab/block_dist.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace shiftlab {

std::uint64_t block_space_size(Alphabet alphabet, int k) {
    if (k < 1) throw std::invalid_argument("block length must be >= 1");
    std::uint64_t v = 1;
    const auto n = static_cast<std::uint64_t>(alphabet.size);
    for (int i = 0; i < k; ++i) {
        if (v > (std::uint64_t(1) << 62) / n)
            throw BudgetExceeded("block space n^k does not fit the 64-bit encoding");
        v *= n;
    }
    return v;
}

BlockDistribution::BlockDistribution(Alphabet alphabet, int k,
                                     std::vector<std::pair<std::uint64_t, Rational>> weights)
    : alphabet_(alphabet), k_(k), weights_(std::move(weights)) {
    const std::uint64_t space = block_space_size(alphabet, k);
    std::sort(weights_.begin(), weights_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational total = 0;
    std::uint64_t previous = 0;
    bool first = true;
    for (const auto& [code, w] : weights_) {
        if (code >= space) throw std::invalid_argument("block code outside n^k block space");
        if (!first && code == previous) throw std::invalid_argument("duplicate block in distribution");
        if (w <= 0) throw std::invalid_argument("block weights must be positive");
        total += w;
        previous = code;
        first = false;
    }
    if (total != 1) throw std::invalid_argument("block weights must sum to 1 exactly");
}

Rational BlockDistribution::weight(std::uint64_t code) const {
    auto it = std::lower_bound(weights_.begin(), weights_.end(), code,
                               [](const auto& a, std::uint64_t c) { return a.first < c; });
    if (it == weights_.end() || it->first != code) return Rational(0);
    return it->second;
}

std::vector<std::uint8_t> BlockDistribution::decode(std::uint64_t code) const {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(k_));
    const auto n = static_cast<std::uint64_t>(alphabet_.size);
    for (int i = k_ - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % n);
        code /= n;
    }
    return out;
}

std::string BlockDistribution::block_text(std::uint64_t code) const {
    auto symbols = decode(code);
    std::string out;
    if (alphabet_.size <= 10) {
        for (auto s : symbols) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(int(symbols[i]));
        }
    }
    return out;
}

void BlockDistribution::write(std::ostream& out) const {
    out << "#k=" << k_ << " n=" << alphabet_.size << "\n";
    for (const auto& [code, w] : weights_)
        out << block_text(code) << "\t" << rational_string(w) << "\n";
}

BlockDistribution BlockDistribution::read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("#k=", 0) != 0)
        throw std::invalid_argument("missing block distribution header '#k=... n=...'");
    std::istringstream hs(line.substr(1));
    std::string k_kv, n_kv;
    hs >> k_kv >> n_kv;
    int k = std::stoi(k_kv.substr(2));
    int n = std::stoi(n_kv.substr(2));
    Alphabet alphabet(n);
    std::vector<std::pair<std::uint64_t, Rational>> weights;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("malformed distribution line");
        std::string block = line.substr(0, tab);
        Rational w = parse_rational(line.substr(tab + 1));
        std::uint64_t code = 0;
        if (n <= 10) {
            for (char c : block) code = code * static_cast<std::uint64_t>(n) +
                                        static_cast<std::uint64_t>(c - '0');
        } else {
            std::istringstream bs(block);
            std::string tok;
            while (std::getline(bs, tok, ','))
                code = code * static_cast<std::uint64_t>(n) + std::stoull(tok);
        }
        weights.emplace_back(code, w);
    }
    return BlockDistribution(alphabet, k, std::move(weights));
}

BlockDistribution empirical_blocks(const Window& w, int k) {
    if (k < 1) throw std::invalid_argument("block length must be >= 1");
    if (w.length() < static_cast<std::size_t>(k))
        throw std::invalid_argument("block length " + std::to_string(k) +
                                    " exceeds window length " + std::to_string(w.length()));
    const std::uint64_t space = block_space_size(w.alphabet(), k);
    const auto n = static_cast<std::uint64_t>(w.alphabet().size);
    const std::uint64_t drop = space / n;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
        code = (i < static_cast<std::size_t>(k) ? code : code % drop) * n + w.symbol(i);
        if (i + 1 >= static_cast<std::size_t>(k)) ++counts[code];
    }
    const std::uint64_t total = w.length() - static_cast<std::size_t>(k) + 1;
    std::vector<std::pair<std::uint64_t, Rational>> weights;
    weights.reserve(counts.size());
    for (const auto& [c, cnt] : counts) weights.emplace_back(c, Rational(cnt, total));
    return BlockDistribution(w.alphabet(), k, std::move(weights));
}

Rational tv_distance(const BlockDistribution& p, const BlockDistribution& q) {
    if (p.alphabet() != q.alphabet() || p.k() != q.k())
        throw std::invalid_argument("tv_distance needs matching alphabet and k");
    Rational sum = 0;
    const auto& pw = p.weights();
    const auto& qw = q.weights();
    std::size_t i = 0, j = 0;
    while (i < pw.size() || j < qw.size()) {
        if (j == qw.size() || (i < pw.size() && pw[i].first < qw[j].first)) {
            sum += pw[i].second;
            ++i;
        } else if (i == pw.size() || qw[j].first < pw[i].first) {
            sum += qw[j].second;
            ++j;
        } else {
            sum += boost::multiprecision::abs(pw[i].second - qw[j].second);
            ++i;
            ++j;
        }
    }
    return sum / 2;
}

}  // namespace shiftlab
