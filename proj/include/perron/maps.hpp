#pragma once

/**
 * @file maps.hpp
 * @brief The integer-map abstraction: affine, zigzag (max of min of
 *        affine), ceiling-composed concave, custom-table, and the three
 *        application models behind one evaluatable descriptor.
 */

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "perron/models.hpp"

namespace perron {

/// x -> M x + v with nonnegative integer entries.
struct AffineMap {
    std::vector<std::vector<Int>> matrix;
    std::vector<Int> offset;

    int dim() const { return static_cast<int>(offset.size()); }
    void validate() const;
    LatticeVector evaluate(const LatticeVector& x) const;
};

/// A = max_i min_j A_{i,j}, componentwise over an I x J grid of affine maps.
struct ZigzagMap {
    std::vector<std::vector<AffineMap>> grid;

    int dim() const;
    void validate() const;
    LatticeVector evaluate(const LatticeVector& x) const;
};

/// Concave map R_+^d -> R_+^d; each component is a pointwise minimum of
/// affine functions with exact rational coefficients.
struct ConcaveRealMap {
    struct Piece {
        std::vector<Rat> coeffs;
        Rat intercept;
    };
    std::vector<std::vector<Piece>> components;  // components[i] = pieces of F_i

    int dim() const { return static_cast<int>(components.size()); }
    void validate() const;
    RationalVector evaluate(const RationalVector& x) const;
    RationalVector evaluate(const LatticeVector& x) const;
};

/// A = ceil(F) componentwise, F exact rational.
struct CeilingOfConcaveMap {
    ConcaveRealMap F;

    int dim() const { return F.dim(); }
    void validate() const { F.validate(); }
    LatticeVector evaluate(const LatticeVector& x) const;
};

/// Explicit finite input -> output table; domain is exactly the keys.
struct CustomTableMap {
    int dimension = 0;
    std::map<LatticeVector, LatticeVector> table;

    int dim() const { return dimension; }
    void validate() const;
    LatticeVector evaluate(const LatticeVector& x) const;
    bool in_domain(const LatticeVector& x) const { return table.count(x) > 0; }
};

/// Evaluatable description of A : Z_+^d -> Z_+^d. Value semantics; all
/// evaluation is pure and deterministic.
class IntegerMap {
  public:
    using Kind = std::variant<AffineMap, ZigzagMap, CeilingOfConcaveMap, CustomTableMap,
                              SISConfig, AIMDConfig, InterferenceConfig>;

    IntegerMap() = default;
    explicit IntegerMap(Kind kind);

    int dim() const { return dim_; }
    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

    /// A(x); throws map_domain_error for out-of-domain x.
    LatticeVector evaluate(const LatticeVector& x) const;

    bool in_domain(const LatticeVector& x) const;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&kind_);
    }

  private:
    Kind kind_;
    int dim_ = 0;
};

}  // namespace perron
