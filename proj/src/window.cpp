#include "shiftlab/window.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

Alphabet::Alphabet(int n) : size(n) {
    if (n < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (n > 256) throw std::invalid_argument("alphabet size capped at 256");
}

Window::Window(Alphabet alphabet, std::int64_t base, std::vector<std::uint8_t> symbols)
    : alphabet_(alphabet), base_(base), symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("window must be nonempty");
    for (std::uint8_t s : symbols_)
        if (s >= alphabet_.size)
            throw std::invalid_argument("symbol " + std::to_string(int(s)) +
                                        " outside alphabet of size " +
                                        std::to_string(alphabet_.size));
}

Window Window::zeros(Alphabet alphabet, std::int64_t base, std::size_t length) {
    return Window(alphabet, base, std::vector<std::uint8_t>(length, 0));
}

std::uint8_t Window::at(std::int64_t absolute) const {
    if (absolute < base_ || absolute >= end())
        throw std::out_of_range("coordinate outside window range");
    return symbols_[static_cast<std::size_t>(absolute - base_)];
}

Window Window::subwindow(std::int64_t from, std::size_t len) const {
    if (from < base_ || from + static_cast<std::int64_t>(len) > end() || len == 0)
        throw std::out_of_range("subwindow outside window range");
    auto offset = static_cast<std::size_t>(from - base_);
    return Window(alphabet_, from,
                  std::vector<std::uint8_t>(symbols_.begin() + offset,
                                            symbols_.begin() + offset + len));
}

std::string Window::symbols_text() const {
    std::string out;
    if (alphabet_.size <= 10) {
        out.reserve(symbols_.size());
        for (std::uint8_t s : symbols_) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string(int(symbols_[i]));
        }
    }
    return out;
}

void Window::write(std::ostream& out) const {
    out << "#base=" << base_ << " n=" << alphabet_.size << "\n";
    out << symbols_text() << "\n";
}

Window Window::read(std::istream& in) {
    std::string line;
    std::int64_t base = 0;
    int n = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#base=", 0) == 0) {
                std::istringstream hs(line.substr(1));
                std::string base_kv, n_kv;
                hs >> base_kv >> n_kv;
                if (base_kv.rfind("base=", 0) != 0 || n_kv.rfind("n=", 0) != 0)
                    throw std::invalid_argument("malformed window header: " + line);
                base = std::stoll(base_kv.substr(5));
                n = std::stoi(n_kv.substr(2));
                have_header = true;
            }
            continue;  // other comment lines are skipped
        }
        break;
    }
    if (!have_header) throw std::invalid_argument("missing window header line '#base=... n=...'");
    Alphabet alphabet(n);
    std::vector<std::uint8_t> symbols;
    auto consume = [&](const std::string& text) {
        if (n <= 10) {
            for (char c : text) {
                if (c == '\r' || c == ' ' || c == '\t') continue;
                if (c < '0' || c > '9')
                    throw std::invalid_argument("malformed window symbol character");
                symbols.push_back(static_cast<std::uint8_t>(c - '0'));
            }
        } else {
            std::istringstream ss(text);
            int v;
            while (ss >> v) symbols.push_back(static_cast<std::uint8_t>(v));
        }
    };
    consume(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        consume(line);
    }
    return Window(alphabet, base, std::move(symbols));
}

std::optional<Overlap> overlap(const Window& x, const Window& y) {
    std::int64_t from = std::max(x.base(), y.base());
    std::int64_t to = std::min(x.end(), y.end());
    if (from >= to) return std::nullopt;
    return Overlap{from, static_cast<std::size_t>(to - from)};
}

Window star_product(const Window& x, const Window& y) {
    if (y.alphabet().size != 2) throw std::invalid_argument("star mask must be binary");
    auto ov = overlap(x, y);
    if (!ov) throw std::invalid_argument("disjoint windows");
    std::vector<std::uint8_t> out(ov->length);
    auto xoff = static_cast<std::size_t>(ov->from - x.base());
    auto yoff = static_cast<std::size_t>(ov->from - y.base());
    for (std::size_t i = 0; i < ov->length; ++i)
        out[i] = static_cast<std::uint8_t>(x.symbol(xoff + i) * y.symbol(yoff + i));
    return Window(x.alphabet(), ov->from, std::move(out));
}

Rational disagreement_density(const Window& x, const Window& y) {
    auto ov = overlap(x, y);
    if (!ov) throw std::invalid_argument("disjoint windows");
    auto xoff = static_cast<std::size_t>(ov->from - x.base());
    auto yoff = static_cast<std::size_t>(ov->from - y.base());
    std::size_t differing = 0;
    for (std::size_t i = 0; i < ov->length; ++i)
        differing += x.symbol(xoff + i) != y.symbol(yoff + i);
    return Rational(differing, ov->length);
}

std::vector<Rational> running_density(const std::vector<bool>& flags) {
    if (flags.empty()) throw std::invalid_argument("running_density needs a nonempty input");
    std::vector<Rational> out;
    out.reserve(flags.size());
    std::size_t trues = 0;
    for (std::size_t m = 0; m < flags.size(); ++m) {
        trues += flags[m] ? 1 : 0;
        out.emplace_back(trues, m + 1);
    }
    return out;
}

}  // namespace shiftlab
