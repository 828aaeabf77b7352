#include <doctest.h>

#include "shiftlab/block_dist.hpp"
#include "shiftlab/sources.hpp"
#include "shiftlab/transport.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace shiftlab;

namespace {

Window win(const std::string& digits, int n = 2) {
    std::vector<std::uint8_t> symbols;
    for (char c : digits) symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    return Window(Alphabet(n), 0, std::move(symbols));
}

BlockDistribution dist(int k, std::vector<std::pair<std::uint64_t, Rational>> w, int n = 2) {
    return BlockDistribution(Alphabet(n), k, std::move(w));
}

// Random distribution with a common small denominator, so the transport
// scaling stays tiny.
BlockDistribution random_dist(std::mt19937_64& rng, int k) {
    const std::uint64_t space = std::uint64_t(1) << k;
    std::vector<std::uint64_t> mass(space);
    std::uint64_t total = 0;
    for (auto& m : mass) {
        m = rng() % 8;
        total += m;
    }
    if (total == 0) {
        mass[rng() % space] = 1;
        total = 1;
    }
    std::vector<std::pair<std::uint64_t, Rational>> weights;
    for (std::uint64_t code = 0; code < space; ++code)
        if (mass[code]) weights.emplace_back(code, Rational(mass[code], total));
    return BlockDistribution(Alphabet(2), k, std::move(weights));
}

// Product (iid) distribution of a biased coin at block length k, exact.
BlockDistribution bernoulli_blocks(const Rational& p1, int k) {
    const std::uint64_t space = std::uint64_t(1) << k;
    std::vector<std::pair<std::uint64_t, Rational>> weights;
    for (std::uint64_t code = 0; code < space; ++code) {
        Rational w = 1;
        for (int t = 0; t < k; ++t) w *= (code >> t) & 1 ? p1 : Rational(1) - p1;
        if (w > 0) weights.emplace_back(code, w);
    }
    return BlockDistribution(Alphabet(2), k, std::move(weights));
}

void check_plan_feasible(const TransportPlan& plan, const BlockDistribution& p,
                         const BlockDistribution& q) {
    std::map<std::uint64_t, Rational> rows, cols;
    for (const auto& e : plan.entries) {
        rows[e.from_code] += e.mass;
        cols[e.to_code] += e.mass;
        CHECK(e.mass > 0);
    }
    for (const auto& [code, w] : p.weights()) CHECK(rows[code] == w);
    for (const auto& [code, w] : q.weights()) CHECK(cols[code] == w);
    CHECK(rows.size() <= p.weights().size());
    CHECK(cols.size() <= q.weights().size());
}

}  // namespace

TEST_CASE("empirical blocks") {
    auto d = empirical_blocks(win("0101"), 2);
    CHECK(d.weight(0b01) == Rational(2, 3));
    CHECK(d.weight(0b10) == Rational(1, 3));
    CHECK(d.weight(0b00) == Rational(0));

    auto solo = empirical_blocks(win("0000"), 3);
    CHECK(solo.weight(0) == Rational(1));
    CHECK(solo.weights().size() == 1);

    CHECK_THROWS_AS(empirical_blocks(win("01"), 3), std::invalid_argument);
}

TEST_CASE("empirical blocks of a fair-coin sample") {
    auto w = sample_generic(BernoulliSource{{Rational(1, 2), Rational(1, 2)}}, 1000000, 42);
    auto d = empirical_blocks(w, 1);
    CHECK(std::abs(to_double(d.weight(1)) - 0.5) <= 0.002);  // 3-sigma binomial bound
}

TEST_CASE("tv distance") {
    auto p = dist(1, {{0, Rational(4, 5)}, {1, Rational(1, 5)}});
    auto q = dist(1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    CHECK(tv_distance(p, p) == Rational(0));
    CHECK(tv_distance(p, q) == Rational(3, 10));
    auto d0 = dist(1, {{0, Rational(1)}});
    auto d1 = dist(1, {{1, Rational(1)}});
    CHECK(tv_distance(d0, d1) == Rational(1));
    CHECK_THROWS_AS(tv_distance(p, dist(2, {{0, Rational(1)}})), std::invalid_argument);
}

TEST_CASE("dbar on identical distributions is the identity plan") {
    std::mt19937_64 rng(1);
    auto p = random_dist(rng, 3);
    auto [cost, plan] = dbar_blocks(p, p);
    CHECK(cost == Rational(0));
    for (const auto& e : plan.entries) CHECK(e.from_code == e.to_code);
    check_plan_feasible(plan, p, p);
}

TEST_CASE("dbar point masses and the 2x2 oracle") {
    auto d0 = dist(1, {{0, Rational(1)}});
    auto d1 = dist(1, {{1, Rational(1)}});
    CHECK(dbar_blocks(d0, d1).first == Rational(1));

    // Monotone-coupling oracle for two coins: cost |p - q|.
    auto p = dist(1, {{0, Rational(4, 5)}, {1, Rational(1, 5)}});
    auto q = dist(1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    auto [cost, plan] = dbar_blocks(p, q);
    CHECK(cost == Rational(3, 10));
    check_plan_feasible(plan, p, q);
}

TEST_CASE("dbar at k=1 equals tv distance") {
    // With 0/1 ground cost the optimal coupling realizes the total variation,
    // which gives an independent oracle for both routes.
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial) {
        auto p = random_dist(rng, 1);
        auto q = random_dist(rng, 1);
        CHECK(dbar_blocks(p, q).first == tv_distance(p, q));
    }
}

TEST_CASE("dbar metric axioms hold exactly") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 1 + int(rng() % 4);
        auto p = random_dist(rng, k);
        auto q = random_dist(rng, k);
        auto r = random_dist(rng, k);
        auto dpq = dbar_blocks(p, q).first;
        auto dqp = dbar_blocks(q, p).first;
        auto dpr = dbar_blocks(p, r).first;
        auto drq = dbar_blocks(r, q).first;
        CHECK(dpq == dqp);
        CHECK(dpq <= dpr + drq);
        if (!(p.weights() == q.weights())) CHECK(dpq > 0);
    }
}

TEST_CASE("dbar plans are exactly feasible") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        int k = 1 + int(rng() % 3);
        auto p = random_dist(rng, k);
        auto q = random_dist(rng, k);
        auto [cost, plan] = dbar_blocks(p, q);
        check_plan_feasible(plan, p, q);
        // Recompute the cost from the plan.
        Rational total = 0;
        for (const auto& e : plan.entries) {
            auto u = p.decode(e.from_code);
            auto v = q.decode(e.to_code);
            int ham = 0;
            for (int t = 0; t < k; ++t) ham += u[size_t(t)] != v[size_t(t)];
            total += e.mass * Rational(ham, k);
        }
        CHECK(total == cost);
    }
}

TEST_CASE("dbar dominated by tv") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 1 + int(rng() % 3);
        auto p = random_dist(rng, k);
        auto q = random_dist(rng, k);
        CHECK(dbar_blocks(p, q).first <= tv_distance(p, q));
    }
}

TEST_CASE("dbar at k=1 bounds the mean-frequency difference") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        auto p = random_dist(rng, 1);
        auto q = random_dist(rng, 1);
        Rational diff = p.weight(1) - q.weight(1);
        if (diff < 0) diff = -diff;
        CHECK(dbar_blocks(p, q).first >= diff);
    }
}

TEST_CASE("dbar monotone in k on exact product distributions") {
    auto p1 = bernoulli_blocks(Rational(1, 5), 1);
    auto q1 = bernoulli_blocks(Rational(1, 2), 1);
    auto p2 = bernoulli_blocks(Rational(1, 5), 2);
    auto q2 = bernoulli_blocks(Rational(1, 2), 2);
    auto p4 = bernoulli_blocks(Rational(1, 5), 4);
    auto q4 = bernoulli_blocks(Rational(1, 2), 4);
    auto c1 = dbar_blocks(p1, q1).first;
    auto c2 = dbar_blocks(p2, q2).first;
    auto c4 = dbar_blocks(p4, q4).first;
    CHECK(c1 == Rational(3, 10));
    CHECK(c2 >= c1);
    CHECK(c4 >= c2);
}

TEST_CASE("dbar ladder stays below the disagreement density") {
    // The aligned sliding coupling is feasible, so every ladder cost is at
    // most the disagreement density up to an O(k/N) edge effect.
    auto x = sample_generic(BernoulliSource{{Rational(1, 2), Rational(1, 2)}}, 100000, 7);
    std::mt19937_64 rng(8);
    std::vector<std::uint8_t> mask(x.length());
    for (auto& m : mask) m = rng() % 2;
    auto y = star_product(x, Window(Alphabet(2), 0, mask));
    auto d = disagreement_density(x, y);
    for (const auto& [k, cost] : dbar_ladder(x, y, {1, 2, 4})) {
        CHECK(cost <= d + Rational(1, 100));
    }
    // Identical windows: all costs zero.
    for (const auto& [k, cost] : dbar_ladder(x, x, {1, 2, 4})) CHECK(cost == Rational(0));
    CHECK_THROWS_AS(dbar_ladder(x, y, {4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(dbar_ladder(x, y, {}), std::invalid_argument);

    // Empirical echo of the marginalization property: the ladder is
    // nondecreasing in k up to 0.01.
    auto ladder = dbar_ladder(x, y, {1, 2, 4});
    for (std::size_t i = 1; i < ladder.size(); ++i)
        CHECK(to_double(ladder[i].second) >= to_double(ladder[i - 1].second) - 0.01);
}

TEST_CASE("dbar validation and budgets") {
    auto p = dist(1, {{0, Rational(1)}});
    auto q2 = dist(2, {{0, Rational(1)}});
    CHECK_THROWS_AS(dbar_blocks(p, q2), std::invalid_argument);
    auto tern = dist(1, {{0, Rational(1)}}, 3);
    CHECK_THROWS_AS(dbar_blocks(p, tern), std::invalid_argument);
    TransportBudget tiny;
    tiny.max_support_product = 1;
    std::mt19937_64 rng(11);
    CHECK_THROWS_AS(dbar_blocks(random_dist(rng, 2), random_dist(rng, 2), tiny), BudgetExceeded);
}

TEST_CASE("solver optimum matches brute-force enumeration") {
    // Independent route: enumerate every integer transportation matrix with
    // the given margins and take the cheapest. Masses use a tiny common
    // denominator so the enumeration stays small.
    std::mt19937_64 rng(31);
    auto tiny_dist = [&](int k) {
        const std::uint64_t space = std::uint64_t(1) << k;
        std::vector<std::uint64_t> mass(space, 0);
        for (int unit = 0; unit < 6; ++unit) ++mass[rng() % space];
        std::vector<std::pair<std::uint64_t, Rational>> weights;
        for (std::uint64_t code = 0; code < space; ++code)
            if (mass[code]) weights.emplace_back(code, Rational(mass[code], 6));
        return BlockDistribution(Alphabet(2), k, std::move(weights));
    };
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + int(rng() % 3);
        auto p = tiny_dist(k);
        auto q = tiny_dist(k);
        const std::size_t m = p.weights().size(), n = q.weights().size();
        std::vector<int> supply, demand;
        for (const auto& [c, w] : p.weights()) {
            Rational scaled = w * 6;
            supply.push_back(boost::multiprecision::numerator(scaled).convert_to<int>());
        }
        for (const auto& [c, w] : q.weights()) {
            Rational scaled = w * 6;
            demand.push_back(boost::multiprecision::numerator(scaled).convert_to<int>());
        }
        std::vector<std::vector<int>> ham(m, std::vector<int>(n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto u = p.decode(p.weights()[i].first);
                auto v = q.decode(q.weights()[j].first);
                int h = 0;
                for (int t = 0; t < k; ++t) h += u[size_t(t)] != v[size_t(t)];
                ham[i][j] = h;
            }
        int best = 1 << 30;
        std::vector<int> row(m);
        // Fill the matrix cell by cell, tracking remaining margins.
        std::function<void(std::size_t, std::vector<int>&, std::vector<int>&, int)> rec =
            [&](std::size_t cell, std::vector<int>& s, std::vector<int>& d, int cost) {
                if (cost >= best) return;
                if (cell == m * n) {
                    bool done = true;
                    for (int v : s) done = done && v == 0;
                    for (int v : d) done = done && v == 0;
                    if (done) best = cost;
                    return;
                }
                std::size_t i = cell / n, j = cell % n;
                int cap = std::min(s[i], d[j]);
                // On the last column/row the flow is forced by the margin.
                for (int f = cap; f >= 0; --f) {
                    s[i] -= f;
                    d[j] -= f;
                    bool feasible = !(j == n - 1 && s[i] != 0);
                    if (feasible && i == m - 1 && d[j] != 0) feasible = false;
                    if (feasible) rec(cell + 1, s, d, cost + f * ham[i][j]);
                    s[i] += f;
                    d[j] += f;
                }
            };
        rec(0, supply, demand, 0);
        CHECK(dbar_blocks(p, q).first == Rational(best, 6 * k));
    }
}

TEST_CASE("transport plan serialization") {
    auto p = dist(1, {{0, Rational(4, 5)}, {1, Rational(1, 5)}});
    auto q = dist(1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    auto [cost, plan] = dbar_blocks(p, q);
    std::ostringstream out;
    plan.write(out, p, q);
    CHECK(out.str().rfind("#cost=3/10", 0) == 0);
    CHECK(out.str().find("\t") != std::string::npos);
}

TEST_CASE("distribution serialization round trip") {
    std::mt19937_64 rng(12);
    auto p = random_dist(rng, 3);
    std::ostringstream out;
    p.write(out);
    std::istringstream in(out.str());
    auto back = BlockDistribution::read(in);
    CHECK(back.k() == p.k());
    CHECK(back.weights() == p.weights());

    // Weight validation.
    CHECK_THROWS_AS(dist(1, {{0, Rational(1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(dist(1, {{0, Rational(1, 2)}, {0, Rational(1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(dist(1, {{2, Rational(1)}}), std::invalid_argument);
}
