#pragma once

/**
 * @file slice.hpp
 * @brief The integer sphere {||x||_1 = k}, its clipped variant, streaming
 *        enumeration, and nearest-point lookup.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "perron/cone.hpp"

namespace perron {

/// A sphere slice: lattice points with ||x||_1 = k, optionally clipped to
/// x >= c*k*e (the integer preimage of S_k intersected with D).
struct SphereSlice {
    int d = 1;
    Int k = 1;
    std::optional<Rat> c;  // in (0, 1/d] when present

    SphereSlice() = default;
    SphereSlice(int dim, Int radius, std::optional<Rat> clip = std::nullopt);

    /// Common per-coordinate lower bound: ceil(c*k), or 0 when c is absent.
    Int lower_bound() const;

    /// Exact membership test (||x||_1 = k and the c-clip).
    bool contains(const LatticeVector& x) const;

    /// |slice| = binomial(k - d*lb + d - 1, d - 1), zero when negative.
    BigInt count() const;

    bool empty() const { return count() == 0; }
};

/// Streaming lexicographic enumeration, constant memory per point.
/// Yields every slice point exactly once in ascending lexicographic order.
class SliceEnumerator {
  public:
    explicit SliceEnumerator(const SphereSlice& slice);

    /// Restrict the first coordinate to [first_lo, first_hi] (used for
    /// range-partitioned parallel enumeration).
    SliceEnumerator(const SphereSlice& slice, Int first_lo, Int first_hi);

    /// Returns the next point, or nullopt when exhausted.
    std::optional<LatticeVector> next();

  private:
    SphereSlice slice_;
    Int lb_ = 0;
    Int first_hi_ = 0;
    LatticeVector current_;
    bool done_ = false;
    bool started_ = false;

    bool advance();
    bool reset_from_first(Int first);
};

/// Materialized enumeration (ascending lexicographic order).
std::vector<LatticeVector> enumerate_slice(const SphereSlice& slice);

/// Serial streaming visit.
void for_each_slice_point(const SphereSlice& slice,
                          const std::function<void(const LatticeVector&)>& fn);

/// Range-partitioned parallel enumeration by first coordinate; the merged
/// output is identical to the serial stream for any thread count.
std::vector<LatticeVector> enumerate_slice_parallel(const SphereSlice& slice, int threads);

/// Nearest slice point to a normalized rational x in D: minimizes
/// ||x - y/k||_inf, ties to the lexicographically smallest y. Exhaustive
/// scan for k <= exhaustive_threshold, rounding plus repair above it;
/// either way the result is checked against the 2/k guarantee.
struct NearestOptions {
    Int exhaustive_threshold = 64;
};

LatticeVector nearest_slice_point(const RationalVector& x, const SphereSlice& slice,
                                  const NearestOptions& opts = {});

/// Exact ||x - y/k||_inf for a candidate y on the slice.
Rat slice_distance_inf(const RationalVector& x, const LatticeVector& y, Int k);

}  // namespace perron
