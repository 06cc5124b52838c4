#pragma once

// Shared helpers for the unit and acceptance suites: map generators and the
// log-free Lipschitz comparison used to check bounds exactly.

#include <random>

#include "perron/analysis.hpp"

namespace perron::testing {

inline AffineMap make_affine(std::vector<std::vector<Int>> m, std::vector<Int> v) {
    AffineMap a;
    a.matrix = std::move(m);
    a.offset = std::move(v);
    return a;
}

// d_H(img pair) <= (p/q) * d_H(dom pair), decided exactly:
// lp_img^q >= lp_dom^p for lambda products in (0, 1].
inline bool hilbert_le_scaled(const Rat& lp_img, const Rat& lp_dom, const Rat& bound) {
    if (lp_dom <= 0 || lp_img <= 0) throw std::invalid_argument("need finite distances");
    if (lp_img == 1) return true;  // zero image distance
    const unsigned long p = static_cast<unsigned long>(bound.get_num().get_ui());
    const unsigned long q = static_cast<unsigned long>(bound.get_den().get_ui());
    BigInt img_num_q, img_den_q, dom_num_p, dom_den_p;
    mpz_pow_ui(img_num_q.get_mpz_t(), lp_img.get_num_mpz_t(), q);
    mpz_pow_ui(img_den_q.get_mpz_t(), lp_img.get_den_mpz_t(), q);
    mpz_pow_ui(dom_num_p.get_mpz_t(), lp_dom.get_num_mpz_t(), p);
    mpz_pow_ui(dom_den_p.get_mpz_t(), lp_dom.get_den_mpz_t(), p);
    // img^q >= dom^p
    return img_num_q * dom_den_p >= dom_num_p * img_den_q;
}

// Exhaustive exact check that the map is Lipschitz with the given rational
// bound on the slice. Pairs at infinite domain distance impose nothing;
// a finite-to-infinite pair fails.
inline bool lipschitz_bound_holds(const IntegerMap& map, const SphereSlice& slice,
                                  const Rat& bound) {
    const auto pts = enumerate_slice(slice);
    std::vector<LatticeVector> images;
    images.reserve(pts.size());
    for (const auto& x : pts) images.push_back(map.evaluate(x));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Rat dom = lambda_product(pts[i], pts[j]);
            if (dom == 0) continue;
            const Rat img = lambda_product(images[i], images[j]);
            if (img == 0) return false;
            if (!hilbert_le_scaled(img, dom, bound)) return false;
        }
    }
    return true;
}

inline ZigzagMap random_zigzag(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> grid_size(1, 2);
    std::uniform_int_distribution<Int> entry(0, 5), offset(1, 5);
    ZigzagMap z;
    const int rows = grid_size(rng), cols = grid_size(rng);
    for (int r = 0; r < rows; ++r) {
        std::vector<AffineMap> row;
        for (int cidx = 0; cidx < cols; ++cidx) {
            AffineMap a;
            a.matrix.assign(d, std::vector<Int>(d));
            a.offset.assign(d, 0);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) a.matrix[i][j] = entry(rng);
                a.offset[i] = offset(rng);
            }
            row.push_back(std::move(a));
        }
        z.grid.push_back(std::move(row));
    }
    return z;
}

inline ConcaveRealMap random_concave_map(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> piece_count(1, 2);
    std::uniform_int_distribution<Int> num(1, 6), den(1, 3);
    ConcaveRealMap F;
    F.components.resize(d);
    for (int i = 0; i < d; ++i) {
        const int pieces = piece_count(rng);
        for (int p = 0; p < pieces; ++p) {
            ConcaveRealMap::Piece piece;
            piece.coeffs.resize(d);
            for (int j = 0; j < d; ++j) piece.coeffs[j] = make_rat(num(rng), den(rng));
            piece.intercept = make_rat(num(rng), den(rng));
            F.components[i].push_back(std::move(piece));
        }
    }
    return F;
}

// Valid hypothesis constants of a positive min-of-affine map on the real
// sphere ||x||_1 = k, from vertex bounds:
//   a: exact minimum of ||F x||_1 / k (attained at a vertex by concavity),
//   c: min_i (min F_i) / (upper bound on ||F x||_1), clamped to 1/d.
struct RealSphereConstants {
    Rat a;
    Rat c;
};

inline RealSphereConstants concave_sphere_constants(const ConcaveRealMap& F, Int k) {
    const int d = F.dim();
    const Rat kk(static_cast<long>(k));

    Rat a;
    bool first_a = true;
    for (int j = 0; j < d; ++j) {
        RationalVector vertex(d, Rat(0));
        vertex[j] = kk;
        const Rat total = norm1(F.evaluate(vertex));
        if (first_a || total < a * kk) {
            a = total / kk;
            first_a = false;
        }
    }

    Rat floor_min;  // min_i over the sphere of F_i, via vertex minima
    bool first_m = true;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            RationalVector vertex(d, Rat(0));
            vertex[j] = kk;
            const Rat v = F.evaluate(vertex)[i];
            if (first_m || v < floor_min) {
                floor_min = v;
                first_m = false;
            }
        }
    }

    Rat upper = 0;  // sound upper bound on ||F x||_1 over the sphere
    for (int i = 0; i < d; ++i) {
        bool first_u = true;
        Rat comp;
        for (const auto& piece : F.components[i]) {
            Rat coeff_max = 0;
            for (const Rat& cf : piece.coeffs)
                if (cf > coeff_max) coeff_max = cf;
            const Rat bound = piece.intercept + coeff_max * kk;
            if (first_u || bound < comp) {
                comp = bound;
                first_u = false;
            }
        }
        upper += comp;
    }

    RealSphereConstants out;
    out.a = a;
    out.c = floor_min / upper;
    const Rat cap = make_rat(1, d);
    if (out.c > cap) out.c = cap;
    return out;
}

}  // namespace perron::testing
