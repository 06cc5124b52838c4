#include "perron/cone.hpp"

#include <algorithm>
#include <limits>

namespace perron {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) throw invalid_input("dimension mismatch");
    if (a == 0) throw invalid_input("empty vector");
}

void require_nonneg(const LatticeVector& x) {
    for (Int v : x)
        if (v < 0) throw invalid_input("negative lattice entry");
}

void require_nonneg(const RationalVector& x) {
    for (const Rat& v : x)
        if (v < 0) throw invalid_input("negative rational entry");
}

}  // namespace

RationalVector to_rational(const LatticeVector& x) {
    RationalVector r;
    r.reserve(x.size());
    for (Int v : x) r.emplace_back(static_cast<long>(v));
    return r;
}

LatticeVector basis_vector(int d, int i) {
    if (d < 1 || i < 0 || i >= d) throw invalid_input("bad basis index");
    LatticeVector e(d, 0);
    e[i] = 1;
    return e;
}

LatticeVector ones_vector(int d) {
    if (d < 1) throw invalid_input("bad dimension");
    return LatticeVector(d, 1);
}

bool is_zero(const LatticeVector& x) {
    return std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
}

bool is_zero(const RationalVector& x) {
    return std::all_of(x.begin(), x.end(), [](const Rat& v) { return v == 0; });
}

Int norm1(const LatticeVector& x) {
    require_nonneg(x);
    Int s = 0;
    for (Int v : x) s += v;
    return s;
}

Int norm_inf(const LatticeVector& x) {
    require_nonneg(x);
    Int m = 0;
    for (Int v : x) m = std::max(m, v);
    return m;
}

Rat norm1(const RationalVector& x) {
    require_nonneg(x);
    Rat s = 0;
    for (const Rat& v : x) s += v;
    return s;
}

Rat norm_inf(const RationalVector& x) {
    require_nonneg(x);
    Rat m = 0;
    for (const Rat& v : x) m = std::max(m, v);
    return m;
}

Rat norm2_squared(const RationalVector& x) {
    Rat s = 0;
    for (const Rat& v : x) s += v * v;
    return s;
}

BigInt norm2_squared(const LatticeVector& x) {
    BigInt s = 0;
    for (Int v : x) {
        BigInt b(static_cast<long>(v));
        s += b * b;
    }
    return s;
}

double norm2(const RationalVector& x) { return std::sqrt(norm2_squared(x).get_d()); }

double norm2(const LatticeVector& x) { return std::sqrt(norm2_squared(x).get_d()); }

ConeOrder cone_compare(const LatticeVector& x, const LatticeVector& y) {
    require_same_dim(x.size(), y.size());
    ConeOrder o{true, true, true, true};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > y[i]) o.le = false;
        if (x[i] < y[i]) o.ge = false;
        if (x[i] >= y[i]) o.ll = false;
        if (x[i] <= y[i]) o.gg = false;
    }
    return o;
}

ConeOrder cone_compare(const RationalVector& x, const RationalVector& y) {
    require_same_dim(x.size(), y.size());
    ConeOrder o{true, true, true, true};
    for (std::size_t i = 0; i < x.size(); ++i) {
        int rel = cmp(x[i], y[i]);
        if (rel > 0) o.le = false;
        if (rel < 0) o.ge = false;
        if (rel >= 0) o.ll = false;
        if (rel <= 0) o.gg = false;
    }
    return o;
}

LatticeVector cone_max(const LatticeVector& x, const LatticeVector& y) {
    require_same_dim(x.size(), y.size());
    LatticeVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::max(x[i], y[i]);
    return r;
}

LatticeVector cone_min(const LatticeVector& x, const LatticeVector& y) {
    require_same_dim(x.size(), y.size());
    LatticeVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::min(x[i], y[i]);
    return r;
}

RationalVector cone_max(const RationalVector& x, const RationalVector& y) {
    require_same_dim(x.size(), y.size());
    RationalVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::max(x[i], y[i]);
    return r;
}

RationalVector cone_min(const RationalVector& x, const RationalVector& y) {
    require_same_dim(x.size(), y.size());
    RationalVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::min(x[i], y[i]);
    return r;
}

Rat lambda_factor(const RationalVector& x, const RationalVector& y) {
    require_same_dim(x.size(), y.size());
    require_nonneg(x);
    require_nonneg(y);
    if (is_zero(x) || is_zero(y)) throw invalid_input("lambda_factor of zero vector");
    bool found = false;
    Rat best;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        Rat ratio = y[i] / x[i];
        if (!found || ratio < best) {
            best = ratio;
            found = true;
        }
    }
    // x != 0 guarantees at least one positive coordinate.
    return best;
}

namespace {

// min over x_i > 0 of y_i/x_i as an integer fraction, compared by
// cross-multiplication in 128-bit to avoid rational churn.
struct Frac {
    Int num = 0;
    Int den = 1;
};

Frac min_ratio(const LatticeVector& x, const LatticeVector& y) {
    bool found = false;
    Frac best;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        if (!found || static_cast<__int128>(y[i]) * best.den <
                          static_cast<__int128>(best.num) * x[i]) {
            best = Frac{y[i], x[i]};
            found = true;
        }
    }
    return best;
}

}  // namespace

Rat lambda_factor(const LatticeVector& x, const LatticeVector& y) {
    require_same_dim(x.size(), y.size());
    require_nonneg(x);
    require_nonneg(y);
    if (is_zero(x) || is_zero(y)) throw invalid_input("lambda_factor of zero vector");
    Frac f = min_ratio(x, y);
    return make_rat(f.num, f.den);
}

double HilbertDistance::value() const {
    if (!finite()) return std::numeric_limits<double>::infinity();
    if (zero()) return 0.0;
    return -log_rat(lambda_product);
}

HilbertDistance hilbert_distance(const RationalVector& x, const RationalVector& y) {
    Rat fwd = lambda_factor(x, y);
    Rat bwd = lambda_factor(y, x);
    return HilbertDistance{fwd * bwd};
}

HilbertDistance hilbert_distance(const LatticeVector& x, const LatticeVector& y) {
    return HilbertDistance{lambda_product(x, y)};
}

Rat lambda_product(const LatticeVector& x, const LatticeVector& y) {
    require_same_dim(x.size(), y.size());
    require_nonneg(x);
    require_nonneg(y);
    if (is_zero(x) || is_zero(y)) throw invalid_input("lambda_product of zero vector");
    Frac fwd = min_ratio(x, y);
    Frac bwd = min_ratio(y, x);
    if (fwd.num == 0 || bwd.num == 0) return Rat(0);
    return make_rat(BigInt(static_cast<long>(fwd.num)) * static_cast<long>(bwd.num),
                    BigInt(static_cast<long>(fwd.den)) * static_cast<long>(bwd.den));
}

}  // namespace perron
