#include "perron/slice.hpp"

#include <algorithm>
#include <thread>

namespace perron {

SphereSlice::SphereSlice(int dim, Int radius, std::optional<Rat> clip)
    : d(dim), k(radius), c(std::move(clip)) {
    if (d < 1) throw invalid_slice("slice dimension must be >= 1");
    if (k < 1) throw invalid_slice("slice radius must be >= 1");
    if (c) {
        if (*c <= 0) throw invalid_slice("clip constant must be positive");
        if (*c * d > 1) throw invalid_slice("clip constant exceeds 1/d (empty D)");
    }
}

Int SphereSlice::lower_bound() const {
    if (!c) return 0;
    return ceil_rat_int(*c * Rat(static_cast<long>(k)));
}

bool SphereSlice::contains(const LatticeVector& x) const {
    if (static_cast<int>(x.size()) != d) return false;
    Int sum = 0;
    const Int lb = lower_bound();
    for (Int v : x) {
        if (v < lb) return false;
        sum += v;
    }
    return sum == k;
}

BigInt SphereSlice::count() const {
    const Int rest = k - static_cast<Int>(d) * lower_bound();
    if (rest < 0) return BigInt(0);
    BigInt r;
    // compositions of `rest` into d nonnegative parts
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(rest + d - 1),
                 static_cast<unsigned long>(d - 1));
    return r;
}

SliceEnumerator::SliceEnumerator(const SphereSlice& slice)
    : SliceEnumerator(slice, slice.lower_bound(),
                      slice.k - (slice.d - 1) * slice.lower_bound()) {}

SliceEnumerator::SliceEnumerator(const SphereSlice& slice, Int first_lo, Int first_hi)
    : slice_(slice), lb_(slice.lower_bound()), first_hi_(first_hi) {
    const Int lo = std::max(first_lo, lb_);
    first_hi_ = std::min(first_hi_, slice_.k - (slice_.d - 1) * lb_);
    done_ = !reset_from_first(lo);
}

// Positions the cursor at the lexicographically smallest point whose first
// coordinate is >= first; returns false when none exists in range.
bool SliceEnumerator::reset_from_first(Int first) {
    const int d = slice_.d;
    for (Int f = first; f <= first_hi_; ++f) {
        const Int rest = slice_.k - f - (d - 1) * lb_;
        if (rest < 0) continue;
        current_.assign(d, lb_);
        current_[0] = f;
        if (d > 1) current_[d - 1] = lb_ + rest;
        else if (rest != 0) continue;  // d == 1: only f == k qualifies
        return true;
    }
    return false;
}

std::optional<LatticeVector> SliceEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        return current_;
    }
    if (!advance()) {
        done_ = true;
        return std::nullopt;
    }
    return current_;
}

// Lexicographic successor among {x : sum x = k, x_i >= lb}, first
// coordinate capped at first_hi_.
bool SliceEnumerator::advance() {
    const int d = slice_.d;
    if (d == 1) return false;
    // Find the rightmost position (excluding the last) whose suffix still
    // holds shiftable mass.
    Int suffix = current_[d - 1] - lb_;
    for (int j = d - 2; j >= 0; --j) {
        if (suffix > 0) {
            if (j == 0 && current_[0] + 1 > first_hi_) return false;
            current_[j] += 1;
            const Int rest = suffix - 1;
            for (int i = j + 1; i < d - 1; ++i) current_[i] = lb_;
            current_[d - 1] = lb_ + rest;
            return true;
        }
        suffix += current_[j] - lb_;
    }
    return false;
}

std::vector<LatticeVector> enumerate_slice(const SphereSlice& slice) {
    std::vector<LatticeVector> out;
    SliceEnumerator it(slice);
    while (auto x = it.next()) out.push_back(std::move(*x));
    return out;
}

void for_each_slice_point(const SphereSlice& slice,
                          const std::function<void(const LatticeVector&)>& fn) {
    SliceEnumerator it(slice);
    while (auto x = it.next()) fn(*x);
}

std::vector<LatticeVector> enumerate_slice_parallel(const SphereSlice& slice, int threads) {
    if (threads < 1) threads = 1;
    const Int lb = slice.lower_bound();
    const Int first_lo = lb;
    const Int first_hi = slice.k - (slice.d - 1) * lb;
    if (first_hi < first_lo || threads == 1) return enumerate_slice(slice);

    const Int span = first_hi - first_lo + 1;
    const Int chunks = std::min<Int>(threads, span);
    std::vector<std::vector<LatticeVector>> parts(chunks);
    std::vector<std::thread> workers;
    for (Int t = 0; t < chunks; ++t) {
        const Int lo = first_lo + span * t / chunks;
        const Int hi = first_lo + span * (t + 1) / chunks - 1;
        workers.emplace_back([&slice, &parts, t, lo, hi] {
            SliceEnumerator it(slice, lo, hi);
            while (auto x = it.next()) parts[t].push_back(std::move(*x));
        });
    }
    for (auto& w : workers) w.join();

    std::vector<LatticeVector> out;
    for (auto& p : parts)
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

Rat slice_distance_inf(const RationalVector& x, const LatticeVector& y, Int k) {
    if (x.size() != y.size()) throw invalid_input("dimension mismatch");
    Rat best = 0;
    const Rat kk(static_cast<long>(k));
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rat diff = x[i] - Rat(static_cast<long>(y[i])) / kk;
        if (diff < 0) diff = -diff;
        if (diff > best) best = diff;
    }
    return best;
}

namespace {

void require_in_D(const RationalVector& x, const SphereSlice& slice) {
    if (static_cast<int>(x.size()) != slice.d) throw invalid_input("dimension mismatch");
    if (norm1(x) != 1) throw invalid_input("nearest_slice_point needs ||x||_1 = 1");
    if (slice.c) {
        for (const Rat& v : x)
            if (v < *slice.c) throw invalid_input("point below the c-floor of D");
    }
}

LatticeVector nearest_exhaustive(const RationalVector& x, const SphereSlice& slice) {
    // Compare on scaled numerators: with x_i = p_i / q (common denominator),
    // |x_i - y_i/k| = |p_i k - y_i q| / (q k); only the numerator varies.
    BigInt q = 1;
    for (const Rat& v : x) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> scaled(x.size());  // p_i * k
    for (std::size_t i = 0; i < x.size(); ++i) {
        BigInt p = x[i].get_num() * (q / x[i].get_den());
        scaled[i] = p * static_cast<long>(slice.k);
    }

    bool found = false;
    BigInt best_num;
    LatticeVector best;
    BigInt tmp, cand;
    SliceEnumerator it(slice);
    while (auto y = it.next()) {
        cand = 0;
        for (std::size_t i = 0; i < y->size(); ++i) {
            tmp = scaled[i] - q * static_cast<long>((*y)[i]);
            mpz_abs(tmp.get_mpz_t(), tmp.get_mpz_t());
            if (tmp > cand) cand = tmp;
        }
        if (!found || cand < best_num) {  // strict: ties keep the earlier (lex smaller) y
            found = true;
            best_num = cand;
            best = *y;
        }
    }
    if (!found) throw invalid_slice("empty slice");
    return best;
}

LatticeVector nearest_rounding_repair(const RationalVector& x, const SphereSlice& slice) {
    const Int lb = slice.lower_bound();
    const int d = slice.d;
    const Rat kk(static_cast<long>(slice.k));

    // Round k*x_i half-up, clamp to [lb, k], then repair the sum.
    std::vector<Rat> target(d);
    LatticeVector y(d);
    Int sum = 0;
    for (int i = 0; i < d; ++i) {
        target[i] = x[i] * kk;
        Int r = floor_rat_int(target[i] + Rat(1, 2));
        r = std::max(lb, std::min(slice.k, r));
        y[i] = r;
        sum += r;
    }
    while (sum != slice.k) {
        const bool dec = sum > slice.k;
        int pick = -1;
        Rat pick_err;  // signed y_i - target_i
        for (int i = 0; i < d; ++i) {
            if (dec && y[i] <= lb) continue;
            if (!dec && y[i] >= slice.k) continue;
            Rat err = Rat(static_cast<long>(y[i])) - target[i];
            if (pick < 0 || (dec ? err > pick_err : err < pick_err)) {
                pick = i;
                pick_err = err;
            }
        }
        if (pick < 0) throw invalid_slice("slice repair failed (empty slice?)");
        y[pick] += dec ? -1 : 1;
        sum += dec ? -1 : 1;
    }
    return y;
}

}  // namespace

LatticeVector nearest_slice_point(const RationalVector& x, const SphereSlice& slice,
                                  const NearestOptions& opts) {
    if (slice.empty()) throw invalid_slice("empty slice");
    require_in_D(x, slice);

    LatticeVector y = slice.k <= opts.exhaustive_threshold ? nearest_exhaustive(x, slice)
                                                           : nearest_rounding_repair(x, slice);

    // The 2/k approximation guarantee is asserted on every path.
    if (slice_distance_inf(x, y, slice.k) * static_cast<long>(slice.k) > 2)
        throw std::logic_error("nearest_slice_point exceeded the 2/k guarantee");
    return y;
}

}  // namespace perron
