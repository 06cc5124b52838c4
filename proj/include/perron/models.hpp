#pragma once

/**
 * @file models.hpp
 * @brief The three application maps: discrete SIS epidemics, AIMD resource
 *        sharing, and fixed-assignment wireless interference, with their
 *        closed-form constants.
 */

#include <optional>
#include <string>
#include <vector>

#include "perron/cone.hpp"

namespace perron {

// ----------------------------------------------------------------------
// Discrete SIS epidemics
// ----------------------------------------------------------------------

/// Per-location populations M_i, survival fractions delta'_i in [0,1],
/// and contact matrix b_{i,j} >= 0. Domain is the box prod_i [0, M_i].
struct SISConfig {
    std::vector<Int> M;
    std::vector<Rat> delta_prime;
    std::vector<std::vector<Rat>> B;

    int dim() const { return static_cast<int>(M.size()); }
    void validate() const;

    Int min_population() const;
    Rat delta_lo() const;  // delta_*
    Rat delta_hi() const;  // delta^*
    Rat b_lo() const;      // B_*
    Rat b_hi() const;      // B^*
    Rat ratio_lo() const;  // R_* = min M_i/M_j
    Rat ratio_hi() const;  // R^*

    bool in_domain(const LatticeVector& x) const;
};

/// Exact infected-population functional P_i(x), before ceiling/capping.
RationalVector sis_pressure(const SISConfig& cfg, const LatticeVector& x);

/// A_i(x) = min{ M_i, ceil(P_i(x)) }.
LatticeVector sis_evaluate(const SISConfig& cfg, const LatticeVector& x);

/// Closed-form constants and the two k-admissibility thresholds.
struct SISConstants {
    Rat L;  // Lipschitz bound
    Rat a;  // lower growth
    Rat b;  // upper growth
    Rat c;  // uniform positivity
    Int k_max_domain;   // k <= min M_i          (image bound regime)
    Rat k_max_lipschitz;  // k <= min M_i / (d*+R*B*+1)  (Lipschitz regime)

    bool k_admissible_domain(Int k) const { return k >= 1 && k <= k_max_domain; }
    bool k_admissible_lipschitz(Int k) const {
        return k >= 1 && Rat(static_cast<long>(k)) <= k_max_lipschitz;
    }
};

SISConstants sis_constants(const SISConfig& cfg);

// ----------------------------------------------------------------------
// AIMD
// ----------------------------------------------------------------------

/// Scalar concave piecewise-affine function: pointwise minimum of affine
/// pieces with exact rational coefficients.
struct PiecewiseAffine {
    struct Piece {
        Rat slope;
        Rat intercept;
    };
    std::vector<Piece> pieces;

    Rat eval(const Rat& t) const;
    bool nondecreasing() const;           // all slopes >= 0
    bool eventually_constant() const;     // some piece has slope 0
    Rat limit_at_infinity() const;        // finite only when eventually constant
};

/// d users with concave additive laws A_i, nondecreasing release laws B_i,
/// and a shared integer capacity. The map's domain is the capacity sphere.
struct AIMDConfig {
    Int capacity = 0;
    std::vector<PiecewiseAffine> A;
    std::vector<PiecewiseAffine> B;

    int dim() const { return static_cast<int>(A.size()); }
    void validate() const;
};

/// One capacity event: T = sup{ T >= 0 : sum_i ceil(A_i(x_i) + B_i(T)) <= k },
/// found on the exact ceiling breakpoints; next_i = ceil(A_i(x_i) + B_i(T)).
struct AimdStep {
    LatticeVector next;
    Rat T;
};

AimdStep aimd_step(const AIMDConfig& cfg, const LatticeVector& x);

/// Residual bound of the AIMD proposition with L = 1 + 1/(ac):
/// (4(1 + 1/(ac)) d c^-2 + 2 sqrt(d)) / k.
double aimd_residual_bound(const Rat& a, const Rat& c, int d, Int k);

// ----------------------------------------------------------------------
// Fixed-assignment interference
// ----------------------------------------------------------------------

struct InterferenceConfig {
    enum class Mode { integral, ceiling };

    std::vector<std::vector<Int>> h;  // bases x users, gains >= 1
    std::vector<Int> sigma;           // per-base noise >= 1
    std::vector<Int> gamma;           // per-user targets >= 0
    std::vector<Int> assignment;      // user j -> base a_j (1-based)
    Mode mode = Mode::integral;

    int users() const { return static_cast<int>(gamma.size()); }
    int bases() const { return static_cast<int>(sigma.size()); }
    void validate() const;
};

/// I_j(x) = gamma_j (sum_{i != j} h_{a_j,i} x_i + sigma_{a_j}) / h_{a_j,j}.
/// Integral mode divides exactly; ceiling mode rounds up and reports it.
LatticeVector interference_evaluate(const InterferenceConfig& cfg, const LatticeVector& x,
                                    bool* ceiling_applied = nullptr);

struct FeasibilityResult {
    bool feasible = false;          // x >= I(x) componentwise
    bool factor_infinite = false;   // some x_i = 0 with I(x)_i > 0
    Rat factor;                     // max_i I(x)_i / x_i over x_i > 0
};

FeasibilityResult feasibility_check(const InterferenceConfig& cfg, const LatticeVector& x);

}  // namespace perron
