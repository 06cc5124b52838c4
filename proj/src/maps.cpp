#include "perron/maps.hpp"

#include <algorithm>

namespace perron {

void AffineMap::validate() const {
    const int d = dim();
    if (d < 1) throw invalid_input("affine: empty offset");
    if (static_cast<int>(matrix.size()) != d) throw invalid_input("affine: matrix is not d x d");
    for (const auto& row : matrix) {
        if (static_cast<int>(row.size()) != d) throw invalid_input("affine: matrix is not d x d");
        for (Int v : row)
            if (v < 0) throw invalid_input("affine: negative matrix entry");
    }
    for (Int v : offset)
        if (v < 0) throw invalid_input("affine: negative offset entry");
}

LatticeVector AffineMap::evaluate(const LatticeVector& x) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d) throw invalid_input("affine: dimension mismatch");
    LatticeVector out(d);
    for (int i = 0; i < d; ++i) {
        Int acc = offset[i];
        for (int j = 0; j < d; ++j) acc += matrix[i][j] * x[j];
        out[i] = acc;
    }
    return out;
}

int ZigzagMap::dim() const {
    if (grid.empty() || grid[0].empty()) return 0;
    return grid[0][0].dim();
}

void ZigzagMap::validate() const {
    if (grid.empty()) throw invalid_input("zigzag: empty grid");
    const std::size_t cols = grid[0].size();
    if (cols == 0) throw invalid_input("zigzag: empty grid row");
    for (const auto& row : grid) {
        if (row.size() != cols) throw invalid_input("zigzag: ragged grid");
        for (const auto& piece : row) {
            piece.validate();
            if (piece.dim() != dim()) throw invalid_input("zigzag: mixed dimensions");
        }
    }
}

LatticeVector ZigzagMap::evaluate(const LatticeVector& x) const {
    LatticeVector best;
    for (const auto& row : grid) {
        LatticeVector inner = row[0].evaluate(x);
        for (std::size_t j = 1; j < row.size(); ++j)
            inner = cone_min(inner, row[j].evaluate(x));
        best = best.empty() ? inner : cone_max(best, inner);
    }
    return best;
}

void ConcaveRealMap::validate() const {
    const int d = dim();
    if (d < 1) throw invalid_input("concave map: no components");
    for (const auto& pieces : components) {
        if (pieces.empty()) throw invalid_input("concave map: component with no pieces");
        for (const auto& p : pieces)
            if (static_cast<int>(p.coeffs.size()) != d)
                throw invalid_input("concave map: piece coefficient count mismatch");
    }
}

RationalVector ConcaveRealMap::evaluate(const RationalVector& x) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d) throw invalid_input("concave map: dimension mismatch");
    RationalVector out(d);
    for (int i = 0; i < d; ++i) {
        bool first = true;
        for (const auto& p : components[i]) {
            Rat v = p.intercept;
            for (int j = 0; j < d; ++j) v += p.coeffs[j] * x[j];
            if (first || v < out[i]) {
                out[i] = v;
                first = false;
            }
        }
    }
    return out;
}

RationalVector ConcaveRealMap::evaluate(const LatticeVector& x) const {
    return evaluate(to_rational(x));
}

LatticeVector CeilingOfConcaveMap::evaluate(const LatticeVector& x) const {
    RationalVector v = F.evaluate(x);
    LatticeVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) throw map_domain_error("ceiling map: negative component value");
        out[i] = ceil_rat_int(v[i]);
    }
    return out;
}

void CustomTableMap::validate() const {
    if (dimension < 1) throw invalid_input("table: bad dimension");
    for (const auto& [key, value] : table) {
        if (static_cast<int>(key.size()) != dimension ||
            static_cast<int>(value.size()) != dimension)
            throw invalid_input("table: entry dimension mismatch");
        for (Int v : key)
            if (v < 0) throw invalid_input("table: negative input entry");
        for (Int v : value)
            if (v < 0) throw invalid_input("table: negative output entry");
    }
}

LatticeVector CustomTableMap::evaluate(const LatticeVector& x) const {
    auto it = table.find(x);
    if (it == table.end()) throw map_domain_error("table: point not covered");
    return it->second;
}

namespace {

struct DimVisitor {
    int operator()(const AffineMap& m) const { return m.dim(); }
    int operator()(const ZigzagMap& m) const { return m.dim(); }
    int operator()(const CeilingOfConcaveMap& m) const { return m.dim(); }
    int operator()(const CustomTableMap& m) const { return m.dim(); }
    int operator()(const SISConfig& m) const { return m.dim(); }
    int operator()(const AIMDConfig& m) const { return m.dim(); }
    int operator()(const InterferenceConfig& m) const { return m.users(); }
};

struct ValidateVisitor {
    void operator()(const AffineMap& m) const { m.validate(); }
    void operator()(const ZigzagMap& m) const { m.validate(); }
    void operator()(const CeilingOfConcaveMap& m) const { m.validate(); }
    void operator()(const CustomTableMap& m) const { m.validate(); }
    void operator()(const SISConfig& m) const { m.validate(); }
    void operator()(const AIMDConfig& m) const { m.validate(); }
    void operator()(const InterferenceConfig& m) const { m.validate(); }
};

}  // namespace

IntegerMap::IntegerMap(Kind kind) : kind_(std::move(kind)) {
    std::visit(ValidateVisitor{}, kind_);
    dim_ = std::visit(DimVisitor{}, kind_);
    if (dim_ < 1) throw invalid_input("map with dimension < 1");
}

std::string IntegerMap::kind_name() const {
    struct Name {
        std::string operator()(const AffineMap&) const { return "affine"; }
        std::string operator()(const ZigzagMap&) const { return "zigzag"; }
        std::string operator()(const CeilingOfConcaveMap&) const { return "ceiling_of_concave"; }
        std::string operator()(const CustomTableMap&) const { return "custom_table"; }
        std::string operator()(const SISConfig&) const { return "sis"; }
        std::string operator()(const AIMDConfig&) const { return "aimd"; }
        std::string operator()(const InterferenceConfig&) const { return "interference"; }
    };
    return std::visit(Name{}, kind_);
}

LatticeVector IntegerMap::evaluate(const LatticeVector& x) const {
    if (static_cast<int>(x.size()) != dim_) throw invalid_input("evaluate: dimension mismatch");
    for (Int v : x)
        if (v < 0) throw invalid_input("evaluate: negative entry");
    struct Eval {
        const LatticeVector& x;
        LatticeVector operator()(const AffineMap& m) const { return m.evaluate(x); }
        LatticeVector operator()(const ZigzagMap& m) const { return m.evaluate(x); }
        LatticeVector operator()(const CeilingOfConcaveMap& m) const { return m.evaluate(x); }
        LatticeVector operator()(const CustomTableMap& m) const { return m.evaluate(x); }
        LatticeVector operator()(const SISConfig& m) const { return sis_evaluate(m, x); }
        LatticeVector operator()(const AIMDConfig& m) const { return aimd_step(m, x).next; }
        LatticeVector operator()(const InterferenceConfig& m) const {
            return interference_evaluate(m, x);
        }
    };
    return std::visit(Eval{x}, kind_);
}

bool IntegerMap::in_domain(const LatticeVector& x) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    for (Int v : x)
        if (v < 0) return false;
    struct InDomain {
        const LatticeVector& x;
        bool operator()(const AffineMap&) const { return true; }
        bool operator()(const ZigzagMap&) const { return true; }
        bool operator()(const CeilingOfConcaveMap&) const { return true; }
        bool operator()(const CustomTableMap& m) const { return m.in_domain(x); }
        bool operator()(const SISConfig& m) const { return m.in_domain(x); }
        bool operator()(const AIMDConfig& m) const { return norm1(x) == m.capacity; }
        bool operator()(const InterferenceConfig&) const { return true; }
    };
    return std::visit(InDomain{x}, kind_);
}

}  // namespace perron
