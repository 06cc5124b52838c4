#pragma once

/**
 * @file analysis.hpp
 * @brief Exhaustive certification of the theorem hypotheses on a sphere
 *        slice: the Hilbert-Lipschitz constant L, the uniform positivity
 *        constant c, growth constants a and b, plus discrete-concavity,
 *        nonexpansiveness, and scalability checks.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "perron/maps.hpp"
#include "perron/slice.hpp"

namespace perron {

struct CertifyOptions {
    std::uint64_t pair_cap = 10'000'000;  // hard cap for the exhaustive pair scan
    int threads = 1;
    bool sample = false;           // sample pairs instead of scanning all
    std::uint64_t sample_pairs = 100'000;
    std::uint64_t seed = 0;
};

/// Measured hypothesis constants on one slice, each with the witness that
/// attains it. Witnesses re-evaluate exactly to the recorded extrema.
struct ConstantsCertificate {
    SphereSlice slice;

    double L = 0.0;  // max d_H(Ax,Ay)/d_H(x,y) over finite nonzero pairs
    bool has_L_witness = false;
    LatticeVector L_witness_x, L_witness_y;
    Rat L_image_lambda, L_domain_lambda;  // exact lambda products at the witness
    bool expansive = false;               // exact: some pair with lp(Ax,Ay) < lp(x,y)

    Rat c;  // min over points and coordinates of (Ax)_i / ||Ax||_1
    LatticeVector c_witness;
    int c_index = -1;

    Rat a;  // min ||Ax||_1 / ||x||_1
    LatticeVector a_witness;
    Rat b;  // max ||Ax||_1 / ||x||_1
    LatticeVector b_witness;

    bool exhaustive = false;
    std::uint64_t points = 0;
    std::uint64_t pairs = 0;
};

/// Scans the slice (all points, then all unordered pairs) and measures
/// L, c, a, b. Throws certification_error with a witness when a
/// hypothesis fails, too_large_error when the pair count exceeds the cap
/// and sampling is not enabled.
ConstantsCertificate certify_constants(const IntegerMap& map, const SphereSlice& slice,
                                       const CertifyOptions& opts = {});

/// d_H(Ax,Ay) <= d_H(x,y) for every slice pair, decided entirely on exact
/// lambda products (lp(Ax,Ay) >= lp(x,y)).
struct NonexpansiveResult {
    bool pass = true;
    LatticeVector witness_x, witness_y;  // expanding pair when pass = false
    Rat image_lambda, domain_lambda;
};

NonexpansiveResult check_nonexpansive(const IntegerMap& map, const SphereSlice& slice,
                                      const CertifyOptions& opts = {});

/// Budget for bounded concavity refutation: decompositions m x = sum m_i x_i
/// with sum m_i = m <= max_weight, at most max_parts parts, all parts
/// drawn from the window box [0, W]^d.
struct ConcavityBudget {
    Int window = 4;
    int max_parts = 3;
    Int max_weight = 4;
};

struct ConcavityCounterexample {
    LatticeVector x;
    Int m = 0;
    std::vector<Int> weights;
    std::vector<LatticeVector> parts;
};

struct ConcavityResult {
    bool pass = true;
    bool equality_throughout = true;  // affine iff equality in every decomposition
    std::uint64_t decompositions = 0;
    std::optional<ConcavityCounterexample> counterexample;
};

/// Checks m A(x) >= sum m_i A(x_i) over the enumerated budget. Pass means
/// no violation found within the budget (bounded refutation, not proof).
ConcavityResult verify_concavity(const IntegerMap& map, const ConcavityBudget& budget = {});

/// Lipschitz bound of the ceiling composition: 1 + 2/(a c).
Rat ceil_lipschitz_bound(const Rat& a, const Rat& c);

/// A(m x) <= m A(x) componentwise for all x in the window and 1 <= m <=
/// max_scale with m x in the map's domain.
struct ScalabilityResult {
    bool pass = true;
    Int m = 0;
    LatticeVector x;
};

ScalabilityResult check_scalability(const IntegerMap& map, Int window, Int max_scale);

/// Per-k exhaustive growth maxima; reference_bound is a sound per-kind
/// upper bound on the ratio when one is available (affine, zigzag,
/// ceiling kinds), reported for comparison only.
struct GrowthRow {
    Int k = 0;
    Rat max_ratio;
    LatticeVector witness;
    std::optional<Rat> reference_bound;
};

std::vector<GrowthRow> growth_bound_estimate(const IntegerMap& map, Int k_lo, Int k_hi);

/// Positivity / monotonicity / scalability in the standard-interference
/// sense, each pass-or-witness, over the window box.
struct StandardMapReport {
    bool positivity = true;
    LatticeVector positivity_witness;
    bool monotonicity = true;
    LatticeVector monotonicity_x, monotonicity_y;
    bool scalability = true;
    Int scalability_m = 0;
    LatticeVector scalability_x;
};

StandardMapReport standard_map_check(const IntegerMap& map, Int window, Int max_scale);

}  // namespace perron
