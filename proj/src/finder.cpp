#include "perron/finder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace perron {

double theorem_bound(double L, const Rat& c, int d, Int k) {
    if (L < 0) throw invalid_input("theorem_bound needs L >= 0");
    if (c <= 0 || c * d > 1) throw invalid_input("theorem_bound needs c in (0, 1/d]");
    if (d < 1 || k < 1) throw invalid_input("theorem_bound needs d >= 1 and k >= 1");
    const double inv_c = rat_to_double(1 / c);
    return (4.0 * L * d * inv_c * inv_c + 2.0 * std::sqrt(static_cast<double>(d))) /
           static_cast<double>(k);
}

Rat residual_squared(const IntegerMap& map, const LatticeVector& y, Int k) {
    const LatticeVector image = map.evaluate(y);
    const Int s = norm1(image);
    if (s == 0)
        throw certification_error(certification_error::Kind::zero_image, "zero image norm", y);
    // sum_i (A(y)_i / s - y_i / k)^2 = sum_i (A(y)_i k - y_i s)^2 / (s k)^2
    BigInt num = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        BigInt diff = BigInt(static_cast<long>(image[i])) * static_cast<long>(k) -
                      BigInt(static_cast<long>(y[i])) * static_cast<long>(s);
        num += diff * diff;
    }
    BigInt den = BigInt(static_cast<long>(s)) * static_cast<long>(k);
    return make_rat(num, den * den);
}

namespace {

constexpr double kSlack = 1e-12;

struct BestPoint {
    bool found = false;
    LatticeVector y;
    LatticeVector image;
    Rat residual_sq;
};

void consider(BestPoint& best, const IntegerMap& map, const LatticeVector& y, Int k) {
    const LatticeVector image = map.evaluate(y);
    const Int s = norm1(image);
    if (s == 0)
        throw certification_error(certification_error::Kind::zero_image, "zero image norm", y);
    BigInt num = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        BigInt diff = BigInt(static_cast<long>(image[i])) * static_cast<long>(k) -
                      BigInt(static_cast<long>(y[i])) * static_cast<long>(s);
        num += diff * diff;
    }
    BigInt den = BigInt(static_cast<long>(s)) * static_cast<long>(k);
    Rat rsq = make_rat(num, den * den);
    if (!best.found || rsq < best.residual_sq ||
        (rsq == best.residual_sq && y < best.y)) {
        best.found = true;
        best.y = y;
        best.image = image;
        best.residual_sq = rsq;
    }
}

void merge_best(BestPoint& into, BestPoint& from) {
    if (!from.found) return;
    if (!into.found || from.residual_sq < into.residual_sq ||
        (from.residual_sq == into.residual_sq && from.y < into.y)) {
        into = std::move(from);
    }
}

}  // namespace

ResidualReport find_best(const IntegerMap& map, const SphereSlice& slice,
                         const ConstantsCertificate& cert, int threads) {
    if (!cert.exhaustive)
        throw invalid_input("find_best needs an exhaustive certificate");
    if (cert.slice.d != slice.d || cert.slice.k != slice.k)
        throw invalid_input("certificate was issued for a different slice");
    if (cert.c <= 0) throw invalid_input("find_best needs a positive certified c");

    std::vector<LatticeVector> points = enumerate_slice(slice);
    if (points.empty())
        throw certification_error(certification_error::Kind::empty_slice, "empty slice");

    BestPoint best;
    threads = std::max(1, threads);
    if (threads == 1 || points.size() < 256) {
        for (const auto& y : points) consider(best, map, y, slice.k);
    } else {
        const std::size_t n = points.size();
        const int chunks = std::min<std::size_t>(threads, n);
        std::vector<BestPoint> bests(chunks);
        std::vector<std::thread> workers;
        for (int t = 0; t < chunks; ++t) {
            workers.emplace_back([&, t] {
                const std::size_t lo = n * t / chunks, hi = n * (t + 1) / chunks;
                for (std::size_t i = lo; i < hi; ++i)
                    consider(bests[t], map, points[i], slice.k);
            });
        }
        for (auto& w : workers) w.join();
        for (auto& b : bests) merge_best(best, b);
    }

    ResidualReport report;
    report.slice = slice;
    report.y = best.y;
    report.image = best.image;
    report.residual_sq = best.residual_sq;
    report.residual = std::sqrt(rat_to_double(best.residual_sq));
    report.bound = theorem_bound(cert.L, cert.c, slice.d, slice.k);
    report.corollary_epsilon = report.bound * rat_to_double(1 / cert.c);
    report.search_mode = ResidualReport::SearchMode::exhaustive;

    if (cert.L == 0.0) {
        // bound^2 = 4d / k^2 is exact here; compare squares in rationals.
        report.theorem_pass =
            report.residual_sq * static_cast<long>(slice.k) * static_cast<long>(slice.k) <=
            Rat(static_cast<long>(4 * slice.d));
    } else {
        // Outward-rounded comparison: residual inflated, bound deflated.
        report.theorem_pass = report.residual * (1.0 + kSlack) <= report.bound * (1.0 - kSlack);
    }
    if (!report.theorem_pass && slice.k >= slice.d) {
        // With an exhaustive certificate and k >= d the theorem guarantees a
        // point under the bound; the argmin exceeding it is a hard failure.
        throw certification_error(certification_error::Kind::internal,
                                  "argmin residual exceeds the theorem bound", best.y);
    }
    return report;
}

void verify_corollary(ResidualReport& report, const std::optional<Rat>& a,
                      const std::optional<Rat>& b) {
    if (report.y.empty()) throw invalid_input("verify_corollary needs a filled report");

    // Conservative rational lower bound of the real epsilon: both the lower
    // and the upper inequality get harder when epsilon shrinks.
    Rat eps = rat_from_double(report.corollary_epsilon);
    eps *= Rat(999999999999L) / Rat(1000000000000L);

    if (a) {
        report.a = *a;
        report.lower_vacuous = eps >= 1;
        bool pass = true;
        const Rat factor = *a * (1 - eps);
        for (std::size_t i = 0; i < report.y.size(); ++i) {
            if (factor * static_cast<long>(report.y[i]) >
                Rat(static_cast<long>(report.image[i]))) {
                pass = false;
                break;
            }
        }
        report.lower_pass = pass;
    }
    if (b) {
        report.b = *b;
        bool pass = true;
        const Rat factor = *b * (1 + eps);
        for (std::size_t i = 0; i < report.y.size(); ++i) {
            if (Rat(static_cast<long>(report.image[i])) >
                factor * static_cast<long>(report.y[i])) {
                pass = false;
                break;
            }
        }
        report.upper_pass = pass;
    }
}

namespace {

// Exact projection into D: raise below-c coordinates to c, shed the surplus
// proportionally from the above-c mass.
RationalVector clamp_into_D(const RationalVector& v, const Rat& c, bool* clamped) {
    const int d = static_cast<int>(v.size());
    bool need = false;
    for (const Rat& t : v) need = need || t < c;
    if (!need) return v;
    if (clamped) *clamped = true;

    Rat free_mass = 0;
    for (const Rat& t : v)
        if (t > c) free_mass += t - c;
    RationalVector w(d, c);
    if (free_mass == 0) {
        // everything at or below c: total mass 1 <= c d <= 1 forces c = 1/d
        return RationalVector(d, Rat(1) / d);
    }
    const Rat scale = (1 - c * d) / free_mass;
    for (int i = 0; i < d; ++i)
        if (v[i] > c) w[i] = c + (v[i] - c) * scale;
    return w;
}

}  // namespace

HeuristicResult heuristic_iterate(const IntegerMap& map, const SphereSlice& slice,
                                  const LatticeVector& start, int max_steps) {
    if (!slice.contains(start)) throw invalid_input("heuristic start off the slice");
    if (max_steps < 1) throw invalid_input("heuristic needs at least one step");

    HeuristicResult out;
    std::map<LatticeVector, std::size_t> seen;
    LatticeVector y = start;
    bool best_set = false;

    for (int step = 0; step < max_steps; ++step) {
        auto it = seen.find(y);
        if (it != seen.end()) {
            out.cycle = true;
            out.cycle_start = it->second;
            break;
        }
        seen.emplace(y, out.trajectory.size());
        out.trajectory.push_back(y);

        const Rat rsq = residual_squared(map, y, slice.k);
        if (!best_set || rsq < out.best_residual_sq ||
            (rsq == out.best_residual_sq && y < out.best)) {
            best_set = true;
            out.best = y;
            out.best_residual_sq = rsq;
        }

        const LatticeVector image = map.evaluate(y);
        const Int s = norm1(image);
        if (s == 0)
            throw certification_error(certification_error::Kind::zero_image, "zero image norm", y);
        RationalVector v(image.size());
        for (std::size_t i = 0; i < image.size(); ++i)
            v[i] = make_rat(image[i], s);
        if (slice.c) v = clamp_into_D(v, *slice.c, &out.clamped);
        y = nearest_slice_point(v, slice);
    }

    out.best_residual = std::sqrt(rat_to_double(out.best_residual_sq));
    return out;
}

}  // namespace perron
