#include "shiftlab/arc.hpp"

#include "shiftlab/block_dist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace shiftlab {

FixedFraction select_alpha_default() { return FixedFraction::golden(); }

FixedFraction select_alpha_explicit(FixedFraction value) {
    if (value.is_zero()) throw std::invalid_argument("alpha must be in (0,1)");
    if (value.denominator_at_most_2_64())
        throw std::invalid_argument(
            "low-denominator rational alpha rejected (denominator <= 2^64 on the lattice)");
    return value;
}

FixedFraction select_alpha_randomized(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    while (true) {
        FixedFraction::u128 hi = rng();
        FixedFraction::u128 lo = rng();
        auto v = FixedFraction::from_bits((hi << 64) | lo);
        if (!v.is_zero() && !v.denominator_at_most_2_64()) return v;
    }
}

Window arc_point(const Window& x, const FixedFraction& alpha, const UnitValue& beta) {
    return star_product(x, sturmian_window({alpha, beta}, x.base(), x.length()));
}

namespace {

void spot_check(const Window& w, const ShiftFamilySpec& family, const UnitValue& beta,
                const SpotCheckPolicy& policy) {
    const std::size_t len = std::min(policy.word_length, w.length());
    if (len == 0 || policy.samples == 0) return;
    const std::size_t span = w.length() - len;
    const std::size_t step = std::max<std::size_t>(1, span / std::max<std::size_t>(1, policy.samples - 1));
    for (std::size_t off = 0;; off += step) {
        if (off > span) break;
        auto sub = w.subwindow(w.base() + static_cast<std::int64_t>(off), len);
        if (!is_admissible(family, sub))
            throw AdmissibilityViolation(beta.to_double(), sub.symbols_text(), sub.base());
        if (off == span) break;
    }
}

}  // namespace

std::vector<ArcSample> arc_sweep(const Window& x, const FixedFraction& alpha,
                                 const std::vector<UnitValue>& betas, int entropy_k,
                                 const ShiftFamilySpec* family, SpotCheckPolicy spot) {
    if (betas.empty()) throw std::invalid_argument("arc sweep needs a nonempty beta grid");
    if (!std::is_sorted(betas.begin(), betas.end()))
        throw std::invalid_argument("beta grid must be sorted ascending");
    const Window zero = Window::zeros(x.alphabet(), x.base(), x.length());
    std::vector<ArcSample> samples;
    samples.reserve(betas.size());
    for (const auto& beta : betas) {
        Window w = arc_point(x, alpha, beta);
        if (family) spot_check(w, *family, beta, spot);
        EntropyProfile profile = entropy_estimate(w, entropy_k);
        Rational to_x = disagreement_density(w, x);
        Rational to_zero = disagreement_density(w, zero);
        samples.push_back(ArcSample{beta, std::move(w), std::move(profile), std::move(to_x),
                                    std::move(to_zero)});
    }
    return samples;
}

BisectResult bisect_entropy(const Window& x, const FixedFraction& alpha, double target,
                            double tolerance, int max_iterations, int entropy_k,
                            int coarse_grid_points) {
    if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
    if (coarse_grid_points < 3) throw std::invalid_argument("coarse grid needs >= 3 points");
    auto estimate = [&](const UnitValue& beta) {
        return entropy_estimate(arc_point(x, alpha, beta), entropy_k).chosen_estimate;
    };
    const double h_full = estimate(UnitValue::one());
    if (target < 0 || target > h_full + tolerance)
        throw std::invalid_argument("target out of range [0, h(x) + tol]");

    // Endpoints are exact identities of the construction.
    if (target <= tolerance) return BisectResult{0.0, 0.0, 0, true};
    if (std::abs(h_full - target) <= tolerance) return BisectResult{1.0, h_full, 0, true};

    // Coarse scan for an adjacent bracketing pair around the target.
    const int grid = coarse_grid_points;
    std::vector<double> values(static_cast<std::size_t>(grid));
    std::vector<double> points(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        double b = double(i) / double(grid - 1);
        points[size_t(i)] = b;
        values[size_t(i)] = i == 0 ? 0.0 : (i == grid - 1 ? h_full : estimate(UnitValue::from_double(b)));
        if (std::abs(values[size_t(i)] - target) <= tolerance)
            return BisectResult{b, values[size_t(i)], 0, true};
    }
    int bracket = -1;
    for (int i = 0; i + 1 < grid; ++i)
        if ((values[size_t(i)] - target) * (values[size_t(i + 1)] - target) <= 0) {
            bracket = i;
            break;
        }
    if (bracket < 0) throw std::invalid_argument("target outside achieved range on the coarse grid");

    double lo = points[size_t(bracket)], hi = points[size_t(bracket + 1)];
    double h_lo = values[size_t(bracket)];
    BisectResult best{lo, h_lo, 0, false};
    for (int it = 1; it <= max_iterations; ++it) {
        double mid = (lo + hi) / 2;
        double h_mid = estimate(UnitValue::from_double(mid));
        if (std::abs(h_mid - target) < std::abs(best.achieved - target)) {
            best.beta_star = mid;
            best.achieved = h_mid;
        }
        best.iterations = it;
        if (std::abs(h_mid - target) <= tolerance) {
            best.beta_star = mid;
            best.achieved = h_mid;
            best.converged = true;
            return best;
        }
        if ((h_lo - target) * (h_mid - target) <= 0) {
            hi = mid;
        } else {
            lo = mid;
            h_lo = h_mid;
        }
    }
    return best;
}

Rational product_genericity_diagnostic(const Window& x, const FixedFraction& alpha,
                                       const UnitValue& beta, int k) {
    const int n = x.alphabet().size;
    if (n > 128) throw std::invalid_argument("product alphabet capped at 256 symbols");
    Window y = sturmian_window({alpha, beta}, x.base(), x.length());

    // Pair symbols over the product alphabet (a, b) -> 2a + b.
    std::vector<std::uint8_t> paired(x.length());
    for (std::size_t i = 0; i < x.length(); ++i)
        paired[i] = static_cast<std::uint8_t>(x.symbol(i) * 2 + y.symbol(i));
    Window joint_window(Alphabet(2 * n), x.base(), std::move(paired));

    BlockDistribution joint = empirical_blocks(joint_window, k);
    BlockDistribution px = empirical_blocks(x, k);
    BlockDistribution py = empirical_blocks(y, k);
    if (px.weights().size() * py.weights().size() > (std::size_t(1) << 20))
        throw BudgetExceeded("product support too large for the genericity diagnostic");

    // Recombine marginal block codes into the joint encoding to compare
    // weight by weight; joint blocks always project to observed marginals.
    Rational tv = 0;
    for (const auto& [ucode, uw] : px.weights()) {
        auto u = px.decode(ucode);
        for (const auto& [vcode, vw] : py.weights()) {
            auto v = py.decode(vcode);
            std::uint64_t code = 0;
            for (int t = 0; t < k; ++t)
                code = code * static_cast<std::uint64_t>(2 * n) +
                       static_cast<std::uint64_t>(u[size_t(t)] * 2 + v[size_t(t)]);
            tv += boost::multiprecision::abs(joint.weight(code) - uw * vw);
        }
    }
    return tv / 2;
}

}  // namespace shiftlab
