#include <doctest.h>

#include "shiftlab/arc.hpp"
#include "shiftlab/sources.hpp"

#include <cmath>

using namespace shiftlab;

namespace {

Window fair_coin(std::size_t n, std::uint64_t seed) {
    return sample_generic(BernoulliSource{{Rational(1, 2), Rational(1, 2)}}, n, seed);
}

std::vector<UnitValue> uniform_grid(int points) {
    std::vector<UnitValue> betas;
    for (int i = 0; i < points; ++i)
        betas.push_back(i == points - 1 ? UnitValue::one()
                                        : UnitValue::from_double(double(i) / (points - 1)));
    return betas;
}

}  // namespace

TEST_CASE("alpha selection policies") {
    CHECK(select_alpha_default() == FixedFraction::golden());
    CHECK_THROWS_AS(select_alpha_explicit(FixedFraction::from_decimal("0.5")),
                    std::invalid_argument);
    CHECK_THROWS_AS(select_alpha_explicit(FixedFraction::from_decimal("0")),
                    std::invalid_argument);
    CHECK_NOTHROW(select_alpha_explicit(FixedFraction::from_decimal("0.3")));
    CHECK(select_alpha_randomized(7) == select_alpha_randomized(7));
    CHECK(select_alpha_randomized(7) != select_alpha_randomized(8));
}

TEST_CASE("parry measure eigendata") {
    auto uniform = parry_measure({{1, 1}, {1, 1}});
    CHECK(uniform.log_perron_root == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    for (const auto& row : uniform.transition)
        for (double p : row) CHECK(p == doctest::Approx(0.5).epsilon(1e-9));

    // Perron-root oracle: golden-mean adjacency has root (1+sqrt(5))/2.
    auto gm = parry_measure({{1, 1}, {1, 0}});
    CHECK(std::abs(gm.log_perron_root - std::log((1.0 + std::sqrt(5.0)) / 2.0)) < 1e-6);
    CHECK(gm.transition[1][1] == 0.0);

    CHECK_THROWS_AS(parry_measure({{0, 1}, {1, 0}}), std::invalid_argument);  // period 2
}

TEST_CASE("stationary distribution is exact") {
    std::vector<std::vector<Rational>> rows = {{Rational(9, 10), Rational(1, 10)},
                                               {Rational(2, 5), Rational(3, 5)}};
    auto pi = stationary_distribution(rows);
    // Balance: pi_0 * 1/10 = pi_1 * 2/5 and pi_0 + pi_1 = 1.
    CHECK(pi[0] == Rational(4, 5));
    CHECK(pi[1] == Rational(1, 5));
}

TEST_CASE("sample generic sources") {
    auto ones = sample_generic(BernoulliSource{{Rational(0), Rational(1)}}, 4, 9);
    CHECK(ones.symbols_text() == "1111");

    auto coin = fair_coin(1000000, 5);
    std::size_t count = 0;
    for (std::size_t i = 0; i < coin.length(); ++i) count += coin.symbol(i);
    CHECK(std::abs(double(count) / 1e6 - 0.5) <= 0.002);
    CHECK(coin == fair_coin(1000000, 5));

    auto parry = sample_generic(SftParrySource{{{1, 1}, {1, 0}}}, 100000, 12);
    for (std::size_t i = 0; i + 1 < parry.length(); ++i)
        CHECK((parry.symbol(i) & parry.symbol(i + 1)) == 0);

    CHECK_THROWS_AS(sample_generic(SftParrySource{{{0, 1}, {1, 0}}}, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sample_generic(BernoulliSource{{Rational(1, 2), Rational(1, 3)}}, 10, 1),
        std::invalid_argument);
}

TEST_CASE("arc endpoints are exact identities") {
    auto x = fair_coin(5000, 21);
    auto alpha = select_alpha_default();
    CHECK(arc_point(x, alpha, UnitValue::zero()) ==
          Window::zeros(Alphabet(2), x.base(), x.length()));
    CHECK(arc_point(x, alpha, UnitValue::one()) == x);
}

TEST_CASE("arc point at half mask keeps a quarter of the ones") {
    // Direct-count oracle: P(mask=1) = 1/2, P(x=1) = 1/2, independent phases.
    auto x = fair_coin(1000000, 71);
    auto w = arc_point(x, select_alpha_default(), UnitValue::from_decimal("0.5"));
    std::size_t ones = 0;
    for (std::size_t i = 0; i < w.length(); ++i) ones += w.symbol(i);
    CHECK(std::abs(double(ones) / 1e6 - 0.25) <= 0.005);
}

TEST_CASE("arc masking is monotone in beta") {
    auto x = fair_coin(2000, 33);
    auto alpha = select_alpha_default();
    Window previous = arc_point(x, alpha, UnitValue::zero());
    for (int i = 1; i <= 10; ++i) {
        Window current = arc_point(x, alpha, UnitValue::from_double(i / 10.0));
        for (std::size_t t = 0; t < x.length(); ++t) CHECK(previous.symbol(t) <= current.symbol(t));
        previous = current;
    }
}

TEST_CASE("arc sweep profile") {
    auto x = fair_coin(100000, 8);
    auto alpha = select_alpha_default();
    auto samples = arc_sweep(x, alpha, uniform_grid(21), 8);
    REQUIRE(samples.size() == 21);

    // Endpoints.
    for (double h : samples.front().entropy.block_entropies) CHECK(h == 0.0);
    CHECK(samples.back().window == x);

    const double h_x = samples.back().entropy.chosen_estimate;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // Entropy sandwich and the nonzero-density identity.
        CHECK(samples[i].entropy.chosen_estimate <= h_x + 0.02);
        std::size_t nonzero = 0;
        for (std::size_t t = 0; t < samples[i].window.length(); ++t)
            nonzero += samples[i].window.symbol(t) != 0;
        CHECK(samples[i].dbar_to_zero == Rational(nonzero, samples[i].window.length()));
        if (i > 0) {
            // Lipschitz step: consecutive windows differ on at most a
            // |beta - beta'| share of coordinates plus discrepancy slack.
            double step = samples[i].beta.to_double() - samples[i - 1].beta.to_double();
            double d = to_double(disagreement_density(samples[i].window, samples[i - 1].window));
            CHECK(d <= step + 0.01);
            CHECK(samples[i - 1].dbar_to_zero <= samples[i].dbar_to_zero);
        }
    }

    // Determinism: the sweep reproduces bit-for-bit.
    auto again = arc_sweep(x, alpha, uniform_grid(21), 8);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(again[i].window == samples[i].window);
        CHECK(again[i].dbar_to_x == samples[i].dbar_to_x);
        CHECK(again[i].entropy.chosen_estimate == samples[i].entropy.chosen_estimate);
    }
}

TEST_CASE("arc sweep spot-checks admissibility") {
    // A window whose ones sit on even coordinates is admissible for the
    // evens spacing shift, and stays so after masking (heredity).
    auto coin = fair_coin(60000, 13);
    std::vector<std::uint8_t> parity_mask(coin.length());
    for (std::size_t i = 0; i < parity_mask.size(); ++i) parity_mask[i] = i % 2 == 0;
    auto x = star_product(coin, Window(Alphabet(2), 0, parity_mask));
    ShiftFamilySpec evens = SpacingSpec{SpacingSet::evens()};
    REQUIRE(is_admissible(evens, x.subwindow(0, 64)));

    auto alpha = select_alpha_default();
    CHECK_NOTHROW(arc_sweep(x, alpha, uniform_grid(6), 4, &evens));

    // Forbidding "00" has no safe zero: masking must violate admissibility.
    ShiftFamilySpec no00 = SftSpec{Alphabet(2), {{0, 0}}};
    CHECK_THROWS_AS(arc_sweep(coin, alpha, uniform_grid(6), 4, &no00), AdmissibilityViolation);
}

TEST_CASE("bisect entropy endpoints and interior targets") {
    auto x = fair_coin(200000, 99);
    auto alpha = select_alpha_default();

    auto zero = bisect_entropy(x, alpha, 0.0, 0.02);
    CHECK(zero.converged);
    CHECK(zero.beta_star == 0.0);
    CHECK(zero.achieved == 0.0);
    CHECK(zero.iterations == 0);

    const double h_x = entropy_estimate(x, 8).chosen_estimate;
    auto top = bisect_entropy(x, alpha, h_x, 0.02);
    CHECK(top.converged);
    CHECK(top.beta_star == doctest::Approx(1.0).epsilon(0.05));

    auto mid = bisect_entropy(x, alpha, 0.35, 0.02);
    CHECK(mid.converged);
    CHECK(mid.iterations <= 20);
    CHECK(std::abs(mid.achieved - 0.35) <= 0.02);

    CHECK_THROWS_AS(bisect_entropy(x, alpha, h_x + 0.1, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(bisect_entropy(x, alpha, -0.5, 0.02), std::invalid_argument);
}

TEST_CASE("product genericity diagnostic") {
    auto x = fair_coin(200000, 55);
    auto alpha = select_alpha_default();
    CHECK(product_genericity_diagnostic(x, alpha, UnitValue::zero(), 1) == Rational(0));
    CHECK(product_genericity_diagnostic(x, alpha, UnitValue::one(), 2) == Rational(0));
    auto tv1 = product_genericity_diagnostic(x, alpha, UnitValue::from_double(0.5), 1);
    auto tv2 = product_genericity_diagnostic(x, alpha, UnitValue::from_double(0.5), 2);
    CHECK(to_double(tv1) <= 0.01);
    CHECK(to_double(tv2) <= 0.01);
}
