#pragma once

/**
 * @file cone.hpp
 * @brief Exact primitives on the nonnegative cone: partial order, norms,
 *        the lambda factor, and the Hilbert projective metric.
 *
 * Vectors live either on the integer lattice (LatticeVector) or in the
 * rational cone (RationalVector). The metric is represented by its exact
 * lambda product; -log is taken only when a real number is reported.
 */

#include <optional>
#include <vector>

#include "perron/errors.hpp"
#include "perron/rational.hpp"

namespace perron {

/// Point of the integer lattice Z_+^d. Entries are validated nonnegative
/// at the API boundary.
using LatticeVector = std::vector<Int>;

/// Point of the rational cone Q_+^d, stored exactly.
using RationalVector = std::vector<Rat>;

RationalVector to_rational(const LatticeVector& x);
LatticeVector basis_vector(int d, int i);  // e_i
LatticeVector ones_vector(int d);          // e = (1,...,1)

bool is_zero(const LatticeVector& x);
bool is_zero(const RationalVector& x);

// ----------------------------------------------------------------------
// Norms
// ----------------------------------------------------------------------

Int norm1(const LatticeVector& x);
Int norm_inf(const LatticeVector& x);
Rat norm1(const RationalVector& x);
Rat norm_inf(const RationalVector& x);

/// Exact squared Euclidean norm; callers compare on squares.
Rat norm2_squared(const RationalVector& x);
BigInt norm2_squared(const LatticeVector& x);
double norm2(const RationalVector& x);
double norm2(const LatticeVector& x);

// ----------------------------------------------------------------------
// Componentwise partial order
// ----------------------------------------------------------------------

/// Result of comparing two vectors under the cone order. Flags combine:
/// equality implies le and ge; ll implies le.
struct ConeOrder {
    bool le = false;  // x <= y componentwise
    bool ge = false;  // x >= y componentwise
    bool ll = false;  // x_i < y_i for every i
    bool gg = false;  // x_i > y_i for every i
    bool equal() const { return le && ge; }
    bool incomparable() const { return !le && !ge; }
};

ConeOrder cone_compare(const LatticeVector& x, const LatticeVector& y);
ConeOrder cone_compare(const RationalVector& x, const RationalVector& y);

LatticeVector cone_max(const LatticeVector& x, const LatticeVector& y);
LatticeVector cone_min(const LatticeVector& x, const LatticeVector& y);
RationalVector cone_max(const RationalVector& x, const RationalVector& y);
RationalVector cone_min(const RationalVector& x, const RationalVector& y);

// ----------------------------------------------------------------------
// Lambda factor and Hilbert metric
// ----------------------------------------------------------------------

/// lambda(x, y) = sup{ l >= 0 : l x <= y } = min over x_i > 0 of y_i / x_i.
/// Requires x != 0, y != 0, equal dimensions.
Rat lambda_factor(const RationalVector& x, const RationalVector& y);
Rat lambda_factor(const LatticeVector& x, const LatticeVector& y);

/// Hilbert projective distance, kept as the exact lambda product.
/// value() = -log(lambda_product) when positive, infinity otherwise.
struct HilbertDistance {
    Rat lambda_product;  // exact, in [0, 1]
    bool finite() const { return lambda_product > 0; }
    bool zero() const { return lambda_product == 1; }
    double value() const;
};

HilbertDistance hilbert_distance(const RationalVector& x, const RationalVector& y);
HilbertDistance hilbert_distance(const LatticeVector& x, const LatticeVector& y);

/// Exact lambda product lambda(x,y) * lambda(y,x) for integer vectors.
/// Hot path for slice pair scans; avoids intermediate rationals.
Rat lambda_product(const LatticeVector& x, const LatticeVector& y);

}  // namespace perron
