#pragma once

#include "shiftlab/entropy.hpp"
#include "shiftlab/families.hpp"
#include "shiftlab/fixed_fraction.hpp"
#include "shiftlab/rotation.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace shiftlab {

/// Default rotation angle: the golden-mean fraction. Badly approximable, so
/// its orbit has the best equidistribution discrepancy at finite window
/// lengths; for the bundled weakly-mixing sources any irrational works.
FixedFraction select_alpha_default();

/// Explicit angle in (0,1). Values whose denominator on the fixed-point
/// lattice is <= 2^64 are rejected as low-denominator rationals; anything
/// else counts as effectively irrational.
FixedFraction select_alpha_explicit(FixedFraction value);

/// Uniform draw from the seeded generator, re-drawn until it passes the
/// rationality guard. Deterministic per seed.
FixedFraction select_alpha_randomized(std::uint64_t seed);

/// One point of the interpolation arc: x masked by the rotation coding at
/// level beta, on x's coordinate range.
Window arc_point(const Window& x, const FixedFraction& alpha, const UnitValue& beta);

/// One sample of the arc sweep.
struct ArcSample {
    UnitValue beta;
    Window window;
    EntropyProfile entropy;
    Rational dbar_to_x;
    Rational dbar_to_zero;
};

struct SpotCheckPolicy {
    std::size_t samples = 64;
    std::size_t word_length = 16;
};

/// Builds arc_point, entropy profile and disagreement densities to x and to
/// the zero window for each beta (sorted ascending). When a family spec is
/// given, sampled subwords of every swept window are checked admissible;
/// a violation throws AdmissibilityViolation.
std::vector<ArcSample> arc_sweep(const Window& x, const FixedFraction& alpha,
                                 const std::vector<UnitValue>& betas, int entropy_k,
                                 const ShiftFamilySpec* family = nullptr,
                                 SpotCheckPolicy spot = {});

struct BisectResult {
    double beta_star = 0.0;
    double achieved = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Searches the arc for a window whose entropy estimate hits the target:
/// coarse grid scan for a bracketing pair, then bisection against the noisy
/// estimator. The estimated entropy along the arc need not be monotone; the
/// returned beta is one witness, not unique.
BisectResult bisect_entropy(const Window& x, const FixedFraction& alpha, double target,
                            double tolerance, int max_iterations = 20, int entropy_k = 8,
                            int coarse_grid_points = 41);

/// TV distance between the joint k-block distribution of the aligned pair
/// (x, rotation coding) and the product of the marginal distributions; small
/// values are consistent with the pair being generic for the product measure.
Rational product_genericity_diagnostic(const Window& x, const FixedFraction& alpha,
                                       const UnitValue& beta, int k);

}  // namespace shiftlab
