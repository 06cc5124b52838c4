#include <doctest.h>

#include "perron/maps.hpp"

using namespace perron;

namespace {

AffineMap affine(std::vector<std::vector<Int>> m, std::vector<Int> v) {
    AffineMap a;
    a.matrix = std::move(m);
    a.offset = std::move(v);
    return a;
}

}  // namespace

TEST_CASE("affine evaluation") {
    const IntegerMap identity(affine({{1, 0}, {0, 1}}, {0, 0}));
    CHECK(identity.evaluate({3, 9}) == LatticeVector{3, 9});

    // row sums
    const IntegerMap ones(affine({{1, 1}, {1, 1}}, {0, 0}));
    CHECK(ones.evaluate({2, 3}) == LatticeVector{5, 5});

    const IntegerMap shifted(affine({{2, 1}, {1, 2}}, {1, 1}));
    CHECK(shifted.evaluate({0, 4}) == LatticeVector{5, 9});

    CHECK_THROWS_AS(IntegerMap(affine({{1, -1}, {0, 1}}, {0, 0})), invalid_input);
    CHECK_THROWS_AS(identity.evaluate({1, 2, 3}), invalid_input);
    CHECK_THROWS_AS(identity.evaluate({-1, 2}), invalid_input);
}

TEST_CASE("zigzag evaluation is componentwise max of min") {
    ZigzagMap z;
    z.grid = {{affine({{2, 0}, {0, 2}}, {1, 1}), affine({{1, 1}, {1, 1}}, {3, 3})},
              {affine({{0, 3}, {3, 0}}, {2, 2}), affine({{0, 3}, {3, 0}}, {2, 2})}};
    const IntegerMap map(z);
    const LatticeVector x{1, 4};
    // row 0: min{(2*1+1, 2*4+1), (1+4+3, 1+4+3)} = min{(3,9),(8,8)} = (3,8)
    // row 1: min of two identical pieces, (3*4+2, 3*1+2) = (14,5)
    // max componentwise: (14,8)
    CHECK(map.evaluate(x) == LatticeVector{14, 8});
    CHECK_THROWS_AS(IntegerMap(ZigzagMap{}), invalid_input);
}

TEST_CASE("ceiling of concave evaluation is exact") {
    // F(x) = (x1/2 + x2/3, x1): F(3,4) = (17/6, 3), ceil -> (3, 3)
    ConcaveRealMap F;
    F.components = {
        {{{make_rat(1, 2), make_rat(1, 3)}, make_rat(0, 1)}},
        {{{make_rat(1, 1), make_rat(0, 1)}, make_rat(0, 1)}},
    };
    const IntegerMap map(CeilingOfConcaveMap{F});
    CHECK(map.evaluate({3, 4}) == LatticeVector{3, 3});

    // exact rational evaluation: 1/3 + 1/3 + 1/3 lands exactly on 1
    ConcaveRealMap G;
    G.components = {
        {{{make_rat(1, 3), make_rat(1, 3)}, make_rat(1, 3)}},
        {{{make_rat(0, 1), make_rat(0, 1)}, make_rat(1, 1)}},
    };
    const IntegerMap g(CeilingOfConcaveMap{G});
    CHECK(g.evaluate({1, 1}) == LatticeVector{1, 1});
}

TEST_CASE("custom table domain is exactly the table") {
    CustomTableMap t;
    t.dimension = 1;
    for (Int v = 0; v <= 4; ++v) t.table[{v}] = {v * v};
    const IntegerMap map(t);
    CHECK(map.evaluate({3}) == LatticeVector{9});
    CHECK(map.in_domain({4}));
    CHECK(!map.in_domain({5}));
    CHECK_THROWS_AS(map.evaluate({5}), map_domain_error);
}

TEST_CASE("model kinds dispatch through the descriptor") {
    SISConfig sis;
    sis.M = {10, 10};
    sis.delta_prime = {make_rat(1, 2), make_rat(1, 2)};
    sis.B = {{make_rat(1, 2), make_rat(1, 2)}, {make_rat(1, 2), make_rat(1, 2)}};
    const IntegerMap map(sis);
    CHECK(map.kind_name() == "sis");
    CHECK(map.evaluate({2, 4}) == LatticeVector{4, 4});
    CHECK(map.in_domain({10, 10}));
    CHECK(!map.in_domain({11, 0}));
    CHECK_THROWS_AS(map.evaluate({11, 0}), map_domain_error);
}
