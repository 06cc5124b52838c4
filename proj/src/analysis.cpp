#include "perron/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace perron {

namespace {

std::string vec_str(const LatticeVector& x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

namespace {

// Ratio d_H(Ax,Ay)/d_H(x,y) as a double, clamped so that the comparison
// against 1 agrees with the exact lambda-product comparison.
double lipschitz_ratio(const Rat& img, const Rat& dom) {
    if (img == 1) return 0.0;  // zero image distance
    double r = log_rat(img) / log_rat(dom);
    if (img >= dom) {
        r = std::min(r, 1.0);
    } else {
        r = std::max(r, std::nextafter(1.0, 2.0));
    }
    return r;
}

struct PairScanState {
    double best_ratio = 0.0;
    bool has_witness = false;
    std::size_t wx = 0, wy = 0;
    Rat img, dom;
    bool expansive = false;
    // first (lex) pair with finite domain distance but infinite image distance
    bool failed = false;
    std::size_t fx = 0, fy = 0;
    std::uint64_t pairs = 0;
};

void scan_pair(PairScanState& st, const std::vector<LatticeVector>& pts,
               const std::vector<LatticeVector>& images, std::size_t i, std::size_t j) {
    const Rat dom = lambda_product(pts[i], pts[j]);
    ++st.pairs;
    if (dom == 0) return;  // infinite domain distance: no constraint
    const Rat img = lambda_product(images[i], images[j]);
    if (img == 0) {
        if (!st.failed || std::tie(i, j) < std::tie(st.fx, st.fy)) {
            st.failed = true;
            st.fx = i;
            st.fy = j;
        }
        return;
    }
    if (img < dom) st.expansive = true;
    const double r = lipschitz_ratio(img, dom);
    if (!st.has_witness || r > st.best_ratio ||
        (r == st.best_ratio &&
         std::tie(pts[i], pts[j]) < std::tie(pts[st.wx], pts[st.wy]))) {
        st.has_witness = true;
        st.best_ratio = r;
        st.wx = i;
        st.wy = j;
        st.img = img;
        st.dom = dom;
    }
}

void merge_state(PairScanState& into, const PairScanState& from,
                 const std::vector<LatticeVector>& pts) {
    into.pairs += from.pairs;
    into.expansive = into.expansive || from.expansive;
    if (from.failed &&
        (!into.failed || std::tie(from.fx, from.fy) < std::tie(into.fx, into.fy))) {
        into.failed = true;
        into.fx = from.fx;
        into.fy = from.fy;
    }
    if (from.has_witness &&
        (!into.has_witness || from.best_ratio > into.best_ratio ||
         (from.best_ratio == into.best_ratio &&
          std::tie(pts[from.wx], pts[from.wy]) < std::tie(pts[into.wx], pts[into.wy])))) {
        into.has_witness = true;
        into.best_ratio = from.best_ratio;
        into.wx = from.wx;
        into.wy = from.wy;
        into.img = from.img;
        into.dom = from.dom;
    }
}

// Splits rows [0, n) into contiguous chunks with roughly equal pair counts.
std::vector<std::pair<std::size_t, std::size_t>> partition_rows(std::size_t n, int threads) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0) return out;
    const double total = static_cast<double>(n) * (n - 1) / 2.0;
    const int chunks = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::size_t row = 0;
    for (int t = 0; t < chunks && row < n; ++t) {
        double want = total * (t + 1) / chunks;
        std::size_t hi = row;
        double done = static_cast<double>(row) * n - static_cast<double>(row) * (row + 1) / 2.0;
        while (hi < n && (done < want || hi == row)) {
            done += static_cast<double>(n - 1 - hi);
            ++hi;
        }
        if (t == chunks - 1) hi = n;
        out.emplace_back(row, hi);
        row = hi;
    }
    return out;
}

std::vector<LatticeVector> evaluate_slice(const IntegerMap& map, const SphereSlice& slice,
                                          std::vector<LatticeVector>& points) {
    points = enumerate_slice(slice);
    if (points.empty()) throw certification_error(certification_error::Kind::empty_slice,
                                                  "empty slice");
    std::vector<LatticeVector> images;
    images.reserve(points.size());
    for (const auto& x : points) {
        if (!map.in_domain(x))
            throw map_domain_error("slice point " + vec_str(x) + " outside the map domain");
        images.push_back(map.evaluate(x));
    }
    return images;
}

}  // namespace

ConstantsCertificate certify_constants(const IntegerMap& map, const SphereSlice& slice,
                                       const CertifyOptions& opts) {
    std::vector<LatticeVector> points;
    std::vector<LatticeVector> images = evaluate_slice(map, slice, points);
    const std::size_t n = points.size();

    ConstantsCertificate cert;
    cert.slice = slice;
    cert.points = n;

    // Zero images first: they fail certification outright and are a
    // precondition of every lambda computation below.
    for (std::size_t p = 0; p < n; ++p) {
        if (is_zero(images[p]))
            throw certification_error(certification_error::Kind::zero_image,
                                      "A" + vec_str(points[p]) + " = 0", points[p]);
    }

    // Pair pass: the Lipschitz constant. Runs before the positivity pass
    // so a finite-to-infinite pair reports as such rather than as the
    // zero-coordinate point it implies.
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    PairScanState st;
    if (!opts.sample && total_pairs > opts.pair_cap)
        throw too_large_error("pair scan over " + std::to_string(total_pairs) +
                                  " pairs exceeds the cap; use sampling mode",
                              total_pairs, opts.pair_cap);

    if (opts.sample && total_pairs > opts.pair_cap) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t t = 0; t < opts.sample_pairs; ++t) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            scan_pair(st, points, images, i, j);
        }
        cert.exhaustive = false;
    } else {
        const int threads = std::max(1, opts.threads);
        if (threads == 1 || n < 64) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) scan_pair(st, points, images, i, j);
        } else {
            auto ranges = partition_rows(n, threads);
            std::vector<PairScanState> states(ranges.size());
            std::vector<std::thread> workers;
            for (std::size_t t = 0; t < ranges.size(); ++t) {
                workers.emplace_back([&, t] {
                    for (std::size_t i = ranges[t].first; i < ranges[t].second; ++i)
                        for (std::size_t j = i + 1; j < n; ++j)
                            scan_pair(states[t], points, images, i, j);
                });
            }
            for (auto& w : workers) w.join();
            for (const auto& s : states) merge_state(st, s, points);
        }
        cert.exhaustive = true;
    }
    cert.pairs = st.pairs;

    if (st.failed)
        throw certification_error(certification_error::Kind::infinite_image_distance,
                                  "finite d_H" + vec_str(points[st.fx]) + vec_str(points[st.fy]) +
                                      " maps to infinite image distance",
                                  points[st.fx], points[st.fy]);

    if (st.has_witness) {
        cert.L = st.best_ratio;
        cert.has_L_witness = true;
        cert.L_witness_x = points[st.wx];
        cert.L_witness_y = points[st.wy];
        cert.L_image_lambda = st.img;
        cert.L_domain_lambda = st.dom;
    }
    cert.expansive = st.expansive;

    // Point pass: positivity constant c and the growth constants a, b.
    // Serial: O(n), and failure witnesses stay deterministic.
    bool first = true;
    for (std::size_t p = 0; p < n; ++p) {
        const Int s = norm1(images[p]);
        int arg = 0;
        for (int i = 1; i < slice.d; ++i)
            if (images[p][i] < images[p][arg]) arg = i;
        if (images[p][arg] == 0)
            throw certification_error(certification_error::Kind::zero_positivity,
                                      "A" + vec_str(points[p]) + " has a zero coordinate",
                                      points[p], {}, arg);
        const Rat cc = make_rat(images[p][arg], s);
        const Rat growth = make_rat(s, slice.k);
        if (first) {
            cert.c = cc;
            cert.c_witness = points[p];
            cert.c_index = arg;
            cert.a = growth;
            cert.a_witness = points[p];
            cert.b = growth;
            cert.b_witness = points[p];
            first = false;
        } else {
            if (cc < cert.c) {
                cert.c = cc;
                cert.c_witness = points[p];
                cert.c_index = arg;
            }
            if (growth < cert.a) {
                cert.a = growth;
                cert.a_witness = points[p];
            }
            if (growth > cert.b) {
                cert.b = growth;
                cert.b_witness = points[p];
            }
        }
    }
    return cert;
}

NonexpansiveResult check_nonexpansive(const IntegerMap& map, const SphereSlice& slice,
                                      const CertifyOptions& opts) {
    std::vector<LatticeVector> points;
    std::vector<LatticeVector> images = evaluate_slice(map, slice, points);
    const std::size_t n = points.size();
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (total_pairs > opts.pair_cap)
        throw too_large_error("pair scan exceeds the cap", total_pairs, opts.pair_cap);

    NonexpansiveResult out;
    for (std::size_t i = 0; i < n && out.pass; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rat dom = lambda_product(points[i], points[j]);
            if (dom == 0) continue;
            const Rat img = lambda_product(images[i], images[j]);
            if (img < dom) {  // exact: d_H(Ax,Ay) > d_H(x,y)
                out.pass = false;
                out.witness_x = points[i];
                out.witness_y = points[j];
                out.image_lambda = img;
                out.domain_lambda = dom;
                break;
            }
        }
    }
    return out;
}

namespace {

// Odometer over the box [0, window]^d in lexicographic order.
bool next_box_point(LatticeVector& x, Int window) {
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
        if (x[i] < window) {
            ++x[i];
            std::fill(x.begin() + i + 1, x.end(), 0);
            return true;
        }
    }
    return false;
}

// Ordered compositions of m into exactly n positive parts, lexicographic.
void weight_compositions(Int m, int n, std::vector<Int>& cur,
                         const std::function<void(const std::vector<Int>&)>& fn) {
    if (n == 1) {
        if (m >= 1) {
            cur.push_back(m);
            fn(cur);
            cur.pop_back();
        }
        return;
    }
    for (Int first = 1; first + (n - 1) <= m; ++first) {
        cur.push_back(first);
        weight_compositions(m - first, n - 1, cur, fn);
        cur.pop_back();
    }
}

}  // namespace

ConcavityResult verify_concavity(const IntegerMap& map, const ConcavityBudget& budget) {
    const int d = map.dim();
    ConcavityResult result;

    // Memoized window evaluations.
    std::map<LatticeVector, LatticeVector> memo;
    const auto eval = [&](const LatticeVector& x) -> const LatticeVector& {
        auto it = memo.find(x);
        if (it == memo.end()) it = memo.emplace(x, map.evaluate(x)).first;
        return it->second;
    };

    std::vector<std::vector<Int>> weight_lists;
    for (Int m = 1; m <= budget.max_weight; ++m) {
        for (int n = 1; n <= budget.max_parts && n <= m; ++n) {
            std::vector<Int> cur;
            weight_compositions(m, n, cur, [&](const std::vector<Int>& w) {
                weight_lists.push_back(w);
            });
        }
    }

    LatticeVector x(d, 0);
    do {
        const LatticeVector& Ax = eval(x);
        for (const auto& weights : weight_lists) {
            const Int m = std::accumulate(weights.begin(), weights.end(), Int{0});
            const int n = static_cast<int>(weights.size());

            // Enumerate the first n-1 parts; the last one is forced by
            // m x = sum m_i x_i and must land in the window.
            std::vector<LatticeVector> parts(n, LatticeVector(d, 0));
            const std::function<bool(int)> rec = [&](int level) -> bool {
                if (level == n - 1) {
                    LatticeVector& last = parts[n - 1];
                    for (int t = 0; t < d; ++t) {
                        Int rem = m * x[t];
                        for (int p = 0; p < n - 1; ++p) rem -= weights[p] * parts[p][t];
                        if (rem < 0 || rem % weights[n - 1] != 0) return false;
                        const Int q = rem / weights[n - 1];
                        if (q > budget.window) return false;
                        last[t] = q;
                    }
                    ++result.decompositions;
                    // m A(x) >= sum m_i A(x_i), componentwise
                    bool equal = true;
                    for (int t = 0; t < d; ++t) {
                        Int rhs = 0;
                        for (int p = 0; p < n; ++p) rhs += weights[p] * eval(parts[p])[t];
                        const Int lhs = m * Ax[t];
                        if (lhs < rhs) {
                            result.pass = false;
                            result.counterexample = ConcavityCounterexample{
                                x, m, std::vector<Int>(weights.begin(), weights.end()), parts};
                            return true;
                        }
                        if (lhs != rhs) equal = false;
                    }
                    if (!equal) result.equality_throughout = false;
                    return false;
                }
                parts[level].assign(d, 0);
                while (true) {
                    if (rec(level + 1)) return true;
                    if (!next_box_point(parts[level], budget.window)) break;
                }
                return false;
            };
            if (rec(0)) return result;
        }
    } while (next_box_point(x, budget.window));

    return result;
}

Rat ceil_lipschitz_bound(const Rat& a, const Rat& c) {
    if (a <= 0 || c <= 0) throw invalid_input("ceil_lipschitz_bound needs a > 0 and c > 0");
    return 1 + 2 / (a * c);
}

ScalabilityResult check_scalability(const IntegerMap& map, Int window, Int max_scale) {
    const int d = map.dim();
    ScalabilityResult out;
    LatticeVector x(d, 0);
    do {
        if (!map.in_domain(x)) continue;
        const LatticeVector Ax = map.evaluate(x);
        for (Int m = 1; m <= max_scale; ++m) {
            LatticeVector mx(d);
            for (int i = 0; i < d; ++i) mx[i] = m * x[i];
            if (!map.in_domain(mx)) continue;
            const LatticeVector Amx = map.evaluate(mx);
            for (int i = 0; i < d; ++i) {
                if (Amx[i] > m * Ax[i]) {
                    out.pass = false;
                    out.m = m;
                    out.x = x;
                    return out;
                }
            }
        }
    } while (next_box_point(x, window));
    return out;
}

namespace {

std::optional<Rat> growth_reference_bound(const IntegerMap& map, Int k) {
    if (const auto* aff = map.as<AffineMap>()) {
        Int off = 0;
        for (Int v : aff->offset) off += v;
        Int colsum_max = 0;
        for (int j = 0; j < aff->dim(); ++j) {
            Int s = 0;
            for (int i = 0; i < aff->dim(); ++i) s += aff->matrix[i][j];
            colsum_max = std::max(colsum_max, s);
        }
        return make_rat(off, k) + Rat(static_cast<long>(colsum_max));
    }
    if (const auto* zz = map.as<ZigzagMap>()) {
        const int d = zz->dim();
        Int off = 0, slope = 0;
        for (int i = 0; i < d; ++i) {
            Int vmax = 0, rowmax = 0;
            for (const auto& row : zz->grid)
                for (const auto& piece : row) {
                    vmax = std::max(vmax, piece.offset[i]);
                    Int entry_max = 0;
                    for (int j = 0; j < d; ++j)
                        entry_max = std::max(entry_max, piece.matrix[i][j]);
                    rowmax = std::max(rowmax, entry_max);
                }
            off += vmax;
            slope += rowmax;
        }
        return make_rat(off, k) + Rat(static_cast<long>(slope));
    }
    if (const auto* ceil = map.as<CeilingOfConcaveMap>()) {
        const int d = ceil->dim();
        Rat total = 0;
        const Rat kk(static_cast<long>(k));
        for (int i = 0; i < d; ++i) {
            bool first = true;
            Rat comp;
            for (const auto& piece : ceil->F.components[i]) {
                Rat coeff_max = 0;
                for (const Rat& cf : piece.coeffs) coeff_max = std::max(coeff_max, cf);
                Rat bound = piece.intercept + coeff_max * kk;
                if (first || bound < comp) {
                    comp = bound;
                    first = false;
                }
            }
            total += comp + 1;  // ceil adds at most one per component
        }
        return total / kk;
    }
    return std::nullopt;
}

}  // namespace

std::vector<GrowthRow> growth_bound_estimate(const IntegerMap& map, Int k_lo, Int k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw invalid_input("bad k range");
    std::vector<GrowthRow> out;
    for (Int k = k_lo; k <= k_hi; ++k) {
        SphereSlice slice(map.dim(), k);
        GrowthRow row;
        row.k = k;
        bool first = true;
        SliceEnumerator it(slice);
        while (auto x = it.next()) {
            if (!map.in_domain(*x))
                throw map_domain_error("slice point " + vec_str(*x) + " outside the map domain");
            const Rat ratio = make_rat(norm1(map.evaluate(*x)), k);
            if (first || ratio > row.max_ratio) {
                row.max_ratio = ratio;
                row.witness = *x;
                first = false;
            }
        }
        if (first) throw invalid_slice("empty slice at k = " + std::to_string(k));
        row.reference_bound = growth_reference_bound(map, k);
        out.push_back(std::move(row));
    }
    return out;
}

StandardMapReport standard_map_check(const IntegerMap& map, Int window, Int max_scale) {
    const int d = map.dim();
    StandardMapReport out;

    std::vector<LatticeVector> points;
    LatticeVector x(d, 0);
    do {
        if (map.in_domain(x)) points.push_back(x);
    } while (next_box_point(x, window));

    std::map<LatticeVector, LatticeVector> memo;
    const auto eval = [&](const LatticeVector& p) -> const LatticeVector& {
        auto it = memo.find(p);
        if (it == memo.end()) it = memo.emplace(p, map.evaluate(p)).first;
        return it->second;
    };

    for (const auto& p : points) {
        const LatticeVector& Ap = eval(p);
        if (out.positivity && std::any_of(Ap.begin(), Ap.end(), [](Int v) { return v == 0; })) {
            out.positivity = false;
            out.positivity_witness = p;
        }
    }

    for (std::size_t i = 0; i < points.size() && out.monotonicity; ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            const ConeOrder ord = cone_compare(points[i], points[j]);
            if (!ord.ge) continue;  // need x >= y
            const ConeOrder img = cone_compare(eval(points[i]), eval(points[j]));
            if (!img.ge) {
                out.monotonicity = false;
                out.monotonicity_x = points[i];
                out.monotonicity_y = points[j];
                break;
            }
        }
    }

    for (const auto& p : points) {
        if (!out.scalability) break;
        const LatticeVector& Ap = eval(p);
        for (Int m = 2; m <= max_scale; ++m) {
            LatticeVector mp(d);
            for (int i = 0; i < d; ++i) mp[i] = m * p[i];
            if (!map.in_domain(mp)) continue;
            const LatticeVector Amp = map.evaluate(mp);
            bool ok = true;
            for (int i = 0; i < d; ++i) ok = ok && Amp[i] <= m * Ap[i];
            if (!ok) {
                out.scalability = false;
                out.scalability_m = m;
                out.scalability_x = p;
                break;
            }
        }
    }
    return out;
}

}  // namespace perron
