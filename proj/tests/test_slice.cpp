#include <doctest.h>

#include <algorithm>
#include <random>

#include "perron/slice.hpp"

using namespace perron;

namespace {

// Stars-and-bars oracle.
BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::mt19937_64 rng(77001);

// Random rational point of D = {||x||_1 = 1, c e <= x}: a clipped mix of
// the c-floor with a random direction.
RationalVector random_point_in_D(int d, const Rat& c) {
    RationalVector u(d);
    std::uniform_int_distribution<Int> num(0, 999);
    Rat total = 0;
    for (auto& e : u) {
        e = make_rat(num(rng) + 1, 1000);
        total += e;
    }
    const Rat slack = 1 - c * d;  // >= 0 by slice validity
    RationalVector x(d);
    for (int i = 0; i < d; ++i) x[i] = c + slack * (u[i] / total);
    return x;
}

// Exhaustive argmin oracle with lexicographic tie-break, independent of
// the library's scaled-integer comparison path.
LatticeVector nearest_oracle(const RationalVector& x, const SphereSlice& slice) {
    bool found = false;
    Rat best;
    LatticeVector arg;
    for (const auto& y : enumerate_slice(slice)) {
        Rat dist = slice_distance_inf(x, y, slice.k);
        if (!found || dist < best) {
            found = true;
            best = dist;
            arg = y;
        }
    }
    REQUIRE(found);
    return arg;
}

}  // namespace

TEST_CASE("slice validation") {
    CHECK_THROWS_AS(SphereSlice(3, 2, make_rat(1, 2)), invalid_slice);  // c > 1/d
    CHECK_THROWS_AS(SphereSlice(0, 2), invalid_slice);
    CHECK_THROWS_AS(SphereSlice(2, 0), invalid_slice);
    CHECK_NOTHROW(SphereSlice(3, 2, make_rat(1, 3)));  // boundary c = 1/d is legal
}

TEST_CASE("enumeration: worked examples") {
    // d=2, k=7: the 8 points (0,7)...(7,0) in ascending lexicographic order
    const auto pts = enumerate_slice(SphereSlice(2, 7));
    REQUIRE(pts.size() == 8);
    CHECK(pts.front() == LatticeVector{0, 7});
    CHECK(pts.back() == LatticeVector{7, 0});

    // d=3, k=7: binomial(9,2) = 36
    CHECK(enumerate_slice(SphereSlice(3, 7)).size() == 36);
    CHECK(SphereSlice(3, 7).count() == 36);

    // k < d with a positive clip: only points with a zero coordinate exist,
    // so the clipped slice is empty
    const SphereSlice empty(3, 2, make_rat(1, 3));
    CHECK(empty.count() == 0);
    CHECK(enumerate_slice(empty).empty());
}

TEST_CASE("enumeration: counts, membership, sortedness") {
    for (int d = 1; d <= 5; ++d) {
        for (Int k = 1; k <= 12; ++k) {
            const SphereSlice slice(d, k);
            const auto pts = enumerate_slice(slice);
            CHECK(BigInt(static_cast<long>(pts.size())) ==
                  binomial(static_cast<unsigned long>(k + d - 1),
                           static_cast<unsigned long>(d - 1)));
            CHECK(slice.count() == static_cast<long>(pts.size()));
            CHECK(std::is_sorted(pts.begin(), pts.end()));
            CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
            for (const auto& p : pts) CHECK(slice.contains(p));
        }
    }
}

TEST_CASE("enumeration: clipped slices use the exact rational bound") {
    const SphereSlice slice(2, 5, make_rat(1, 5));  // lower bound ceil(1) = 1
    const auto pts = enumerate_slice(slice);
    REQUIRE(pts.size() == 4);
    CHECK(pts.front() == LatticeVector{1, 4});
    CHECK(pts.back() == LatticeVector{4, 1});

    // boundary c = 1/d with k not divisible by d: empty
    const SphereSlice odd(2, 5, make_rat(1, 2));
    CHECK(odd.count() == 0);
    // ... and k divisible by d: exactly the balanced point
    const SphereSlice even(2, 6, make_rat(1, 2));
    const auto balanced = enumerate_slice(even);
    REQUIRE(balanced.size() == 1);
    CHECK(balanced[0] == LatticeVector{3, 3});
}

TEST_CASE("enumeration: parallel partition matches serial for any thread count") {
    for (int d = 2; d <= 4; ++d) {
        for (Int k : {5, 9, 12}) {
            const SphereSlice slice(d, k);
            const auto serial = enumerate_slice(slice);
            for (int threads : {1, 2, 8}) {
                CHECK(enumerate_slice_parallel(slice, threads) == serial);
            }
        }
    }
    const SphereSlice clipped(3, 11, make_rat(1, 6));
    const auto serial = enumerate_slice(clipped);
    for (int threads : {2, 8}) CHECK(enumerate_slice_parallel(clipped, threads) == serial);
}

TEST_CASE("nearest_slice_point: worked examples") {
    // already on the slice
    RationalVector half{make_rat(1, 2), make_rat(1, 2)};
    CHECK(nearest_slice_point(half, SphereSlice(2, 4, make_rat(1, 8))) ==
          LatticeVector{2, 2});

    // tie between (1,4) and (2,3) at distance 1/10 breaks lexicographically
    RationalVector x{make_rat(3, 10), make_rat(7, 10)};
    const SphereSlice s5(2, 5, make_rat(1, 5));
    const auto y = nearest_slice_point(x, s5);
    CHECK(y == LatticeVector{1, 4});
    CHECK(slice_distance_inf(x, y, 5) == make_rat(1, 10));

    // empty slice and off-D points are rejected
    CHECK_THROWS_AS(nearest_slice_point(half, SphereSlice(2, 5, make_rat(1, 2))),
                    invalid_slice);
    RationalVector off{make_rat(1, 10), make_rat(9, 10)};
    CHECK_THROWS_AS(nearest_slice_point(off, s5), invalid_input);
    RationalVector unnormalized{make_rat(1, 2), make_rat(1, 3)};
    CHECK_THROWS_AS(nearest_slice_point(unnormalized, s5), invalid_input);
}

TEST_CASE("nearest_slice_point: argmin and the 2/k guarantee") {
    for (int d = 2; d <= 4; ++d) {
        const Rat c = make_rat(1, 2 * d);
        for (Int k = d; k <= 15; ++k) {
            const SphereSlice slice(d, k, c);
            REQUIRE(!slice.empty());
            for (int t = 0; t < 60; ++t) {
                const RationalVector x = random_point_in_D(d, c);
                const LatticeVector y = nearest_slice_point(x, slice);
                CHECK(slice.contains(y));
                CHECK(y == nearest_oracle(x, slice));
                CHECK(slice_distance_inf(x, y, k) * static_cast<long>(k) <= 2);
            }
        }
    }
}

TEST_CASE("nearest_slice_point: corners of D stay within 2/k") {
    // The corner (1 - (d-1)c, c, ..., c) is the worst case of the
    // approximation argument.
    for (int d = 2; d <= 3; ++d) {
        const Rat c = make_rat(1, 2 * d);
        for (Int k = d; k <= 15; ++k) {
            RationalVector corner(d, c);
            corner[0] = 1 - c * (d - 1);
            const SphereSlice slice(d, k, c);
            const LatticeVector y = nearest_slice_point(corner, slice);
            CHECK(slice_distance_inf(corner, y, k) * static_cast<long>(k) <= 2);
        }
    }
}

TEST_CASE("nearest_slice_point: rounding path agrees with the guarantee") {
    // Force the rounding+repair path with a tiny threshold.
    NearestOptions opts;
    opts.exhaustive_threshold = 1;
    for (int d = 2; d <= 3; ++d) {
        const Rat c = make_rat(1, 2 * d);
        for (Int k : {6, 11, 15}) {
            const SphereSlice slice(d, k, c);
            for (int t = 0; t < 50; ++t) {
                const RationalVector x = random_point_in_D(d, c);
                const LatticeVector y = nearest_slice_point(x, slice, opts);
                CHECK(slice.contains(y));
                CHECK(slice_distance_inf(x, y, k) * static_cast<long>(k) <= 2);
            }
        }
    }
}

TEST_CASE("streaming visit covers the slice exactly once") {
    const SphereSlice slice(3, 9, make_rat(1, 9));
    std::vector<LatticeVector> seen;
    for_each_slice_point(slice, [&](const LatticeVector& x) { seen.push_back(x); });
    CHECK(seen == enumerate_slice(slice));
}
