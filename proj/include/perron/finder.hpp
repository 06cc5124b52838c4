#pragma once

/**
 * @file finder.hpp
 * @brief Approximate-eigenvector search on a sphere slice: exhaustive
 *        residual minimization, the residual bound, and the growth-
 *        inequality checks.
 */

#include <optional>
#include <vector>

#include "perron/analysis.hpp"

namespace perron {

/// (4 L d c^-2 + 2 sqrt(d)) / k.
double theorem_bound(double L, const Rat& c, int d, Int k);

struct ResidualReport {
    SphereSlice slice;
    LatticeVector y;      // best approximate eigenvector
    LatticeVector image;  // A(y)

    Rat residual_sq;      // exact || A(y)/||A(y)||_1 - y/k ||_2^2
    double residual = 0.0;
    double bound = 0.0;   // theorem_bound(L, c, d, k)
    bool theorem_pass = false;

    double corollary_epsilon = 0.0;  // bound / c
    std::optional<Rat> a, b;         // growth constants used, when supplied
    std::optional<bool> lower_pass;  // a (1 - eps) y <= A y
    std::optional<bool> upper_pass;  // A y <= b (1 + eps) y
    bool lower_vacuous = false;      // eps >= 1: the lower check holds trivially

    enum class SearchMode { exhaustive, heuristic };
    SearchMode search_mode = SearchMode::exhaustive;
};

/// Exhaustively scans the slice for the argmin of the exact squared
/// residual (ties to the lexicographically smallest point) and fills the
/// report. The certificate must be exhaustive on the same slice with
/// c > 0; a bound violation at the argmin is an internal hard failure.
ResidualReport find_best(const IntegerMap& map, const SphereSlice& slice,
                         const ConstantsCertificate& cert, int threads = 1);

/// Fills lower_pass/upper_pass from the growth constants. The comparisons
/// run in exact rationals against a conservative rational lower bound of
/// epsilon (outward 1e-12 on the real factor).
void verify_corollary(ResidualReport& report, const std::optional<Rat>& a,
                      const std::optional<Rat>& b);

/// Advisory local search: y -> nearest slice point of the normalized image
/// clamped into D. Stops on revisit or max_steps. Never a substitute for
/// find_best.
struct HeuristicResult {
    std::vector<LatticeVector> trajectory;
    bool cycle = false;
    std::size_t cycle_start = 0;
    LatticeVector best;
    Rat best_residual_sq;
    double best_residual = 0.0;
    bool clamped = false;  // some image needed clamping into D
};

HeuristicResult heuristic_iterate(const IntegerMap& map, const SphereSlice& slice,
                                  const LatticeVector& start, int max_steps);

/// Exact squared residual of one slice point (helper shared with tests).
Rat residual_squared(const IntegerMap& map, const LatticeVector& y, Int k);

}  // namespace perron
