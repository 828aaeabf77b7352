#include "shiftlab/transport.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace shiftlab {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct ScaledProblem {
    std::int64_t common_denominator;
    std::vector<std::int64_t> supply;  // scaled source masses
    std::vector<std::int64_t> demand;  // scaled target masses
};

ScaledProblem scale_masses(const BlockDistribution& p, const BlockDistribution& q,
                           const TransportBudget& budget) {
    BigInt common = 1;
    auto fold = [&](const BlockDistribution& d) {
        for (const auto& [code, w] : d.weights())
            common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(w));
    };
    fold(p);
    fold(q);
    if (common > budget.max_scaled_mass)
        throw BudgetExceeded("transport budget exceeded: common mass denominator too large");
    ScaledProblem out;
    out.common_denominator = common.convert_to<std::int64_t>();
    auto scaled = [&](const Rational& w) {
        BigInt v = boost::multiprecision::numerator(w) *
                   (common / boost::multiprecision::denominator(w));
        return v.convert_to<std::int64_t>();
    };
    for (const auto& [code, w] : p.weights()) out.supply.push_back(scaled(w));
    for (const auto& [code, w] : q.weights()) out.demand.push_back(scaled(w));
    return out;
}

}  // namespace

void TransportPlan::write(std::ostream& out, const BlockDistribution& p,
                          const BlockDistribution& q) const {
    out << "#cost=" << rational_string(cost) << "\n";
    for (const auto& e : entries)
        out << p.block_text(e.from_code) << "\t" << q.block_text(e.to_code) << "\t"
            << rational_string(e.mass) << "\n";
}

std::pair<Rational, TransportPlan> dbar_blocks(const BlockDistribution& p,
                                               const BlockDistribution& q,
                                               TransportBudget budget) {
    if (p.alphabet() != q.alphabet() || p.k() != q.k())
        throw std::invalid_argument("dbar_blocks needs matching alphabet and k");
    const std::size_t m = p.weights().size();
    const std::size_t n = q.weights().size();
    if (m > budget.max_support_each || n > budget.max_support_each ||
        m * n > budget.max_support_product)
        throw BudgetExceeded("transport budget exceeded: support " + std::to_string(m) + "x" +
                             std::to_string(n));

    ScaledProblem scaled = scale_masses(p, q, budget);
    const int k = p.k();

    // Per-unit costs are Hamming distances between decoded blocks (the /k
    // normalization is applied once at the end).
    std::vector<std::vector<std::uint8_t>> pb(m), qb(n);
    for (std::size_t i = 0; i < m; ++i) pb[i] = p.decode(p.weights()[i].first);
    for (std::size_t j = 0; j < n; ++j) qb[j] = q.decode(q.weights()[j].first);
    std::vector<std::int32_t> ham(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int32_t h = 0;
            for (int t = 0; t < k; ++t) h += pb[i][size_t(t)] != qb[j][size_t(t)];
            ham[i * n + j] = h;
        }

    // Successive shortest paths with Johnson potentials; everything stays in
    // exact integers, so the optimum and the plan are exact.
    std::vector<std::int64_t> flow(m * n, 0);
    std::vector<std::int64_t> supply = scaled.supply;
    std::vector<std::int64_t> demand = scaled.demand;
    const std::size_t nodes = m + n;
    std::vector<std::int64_t> potential(nodes, 0), dist(nodes);
    std::vector<std::int32_t> parent(nodes);  // for sinks: source index; for sources: sink index
    std::vector<char> done(nodes);

    std::int64_t remaining = 0;
    for (auto s : supply) remaining += s;

    while (remaining > 0) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(done.begin(), done.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        for (std::size_t i = 0; i < m; ++i)
            if (supply[i] > 0) dist[i] = 0;

        for (std::size_t round = 0; round < nodes; ++round) {
            std::size_t u = nodes;
            std::int64_t best = kInf;
            for (std::size_t v = 0; v < nodes; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u == nodes) break;
            done[u] = 1;
            if (u < m) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::int64_t w = dist[u] + ham[u * n + j] + potential[u] - potential[m + j];
                    if (w < dist[m + j]) {
                        dist[m + j] = w;
                        parent[m + j] = static_cast<std::int32_t>(u);
                    }
                }
            } else {
                const std::size_t j = u - m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (flow[i * n + j] <= 0) continue;
                    std::int64_t w = dist[u] - ham[i * n + j] + potential[u] - potential[i];
                    if (w < dist[i]) {
                        dist[i] = w;
                        parent[i] = static_cast<std::int32_t>(j);
                    }
                }
            }
        }

        std::size_t target = n;
        std::int64_t best = kInf;
        for (std::size_t j = 0; j < n; ++j)
            if (demand[j] > 0 && dist[m + j] < best) {
                best = dist[m + j];
                target = j;
            }
        if (target == n)
            throw std::logic_error("transport solver: no augmenting path with demand left");

        // Walk back to a root source to find the bottleneck.
        std::int64_t bottleneck = demand[target];
        std::size_t j = target;
        while (true) {
            auto i = static_cast<std::size_t>(parent[m + j]);
            if (parent[i] < 0) {
                bottleneck = std::min(bottleneck, supply[i]);
                break;
            }
            auto prev_j = static_cast<std::size_t>(parent[i]);
            bottleneck = std::min(bottleneck, flow[i * n + prev_j]);
            j = prev_j;
        }
        j = target;
        while (true) {
            auto i = static_cast<std::size_t>(parent[m + j]);
            flow[i * n + j] += bottleneck;
            if (parent[i] < 0) {
                supply[i] -= bottleneck;
                break;
            }
            auto prev_j = static_cast<std::size_t>(parent[i]);
            flow[i * n + prev_j] -= bottleneck;
            j = prev_j;
        }
        demand[target] -= bottleneck;
        remaining -= bottleneck;

        const std::int64_t cap = dist[m + target];
        for (std::size_t v = 0; v < nodes; ++v)
            potential[v] += std::min(dist[v], cap);
    }

    BigInt total = 0;
    TransportPlan plan;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t f = flow[i * n + j];
            if (f <= 0) continue;
            total += BigInt(f) * ham[i * n + j];
            plan.entries.push_back(TransportEntry{p.weights()[i].first, q.weights()[j].first,
                                                  Rational(f, scaled.common_denominator)});
        }
    Rational cost(total, BigInt(scaled.common_denominator) * k);
    plan.cost = cost;
    return {cost, std::move(plan)};
}

std::vector<std::pair<int, Rational>> dbar_ladder(const Window& x, const Window& y,
                                                  const std::vector<int>& ks,
                                                  TransportBudget budget) {
    if (ks.empty()) throw std::invalid_argument("dbar_ladder needs at least one k");
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw std::invalid_argument("dbar_ladder ks must be sorted ascending");
    std::vector<std::pair<int, Rational>> out;
    out.reserve(ks.size());
    for (int k : ks) {
        auto [cost, plan] = dbar_blocks(empirical_blocks(x, k), empirical_blocks(y, k), budget);
        out.emplace_back(k, cost);
    }
    return out;
}

}  // namespace shiftlab
