#include "doctest.h"

#include <cmath>

#include "optorus/polygon.hpp"

using namespace optorus;

namespace {
Polygon unit_square() {
    return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}
} // namespace

TEST_CASE("unit square angles are quarter turns") {
    Polygon p = unit_square();
    REQUIRE(p.size() == 4);
    double sum = 0.0;
    for (double a : p.alphas) {
        CHECK(a == doctest::Approx(0.5).epsilon(1e-14));
        sum += a;
    }
    CHECK(std::abs(sum - 2.0) < 1e-12);
}

TEST_CASE("equilateral triangle angles") {
    double h = std::sqrt(3.0) / 2.0;
    Polygon p = make_polygon({{0, 0}, {1, 0}, {0.5, h}});
    for (double a : p.alphas) CHECK(a == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("clockwise input is normalized to counterclockwise") {
    Polygon p = make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(p.signed_area() > 0.0);
}

TEST_CASE("self-intersecting input is rejected with the edge pair") {
    CHECK_THROWS_WITH_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                         doctest::Contains("self-intersects"), std::invalid_argument);
}

TEST_CASE("collinear consecutive vertices are rejected") {
    CHECK_THROWS_WITH_AS(make_polygon({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}),
                         doctest::Contains("collinear"), std::invalid_argument);
}

TEST_CASE("supplied alphas must match geometry") {
    CHECK_NOTHROW(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {0.5, 0.5, 0.5, 0.5}));
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {0.5, 0.5, 0.6, 0.4}),
                    std::invalid_argument);
}

TEST_CASE("interior and boundary predicates") {
    Polygon p = unit_square();
    CHECK(p.contains({0.5, 0.5}));
    CHECK_FALSE(p.contains({1.5, 0.5}));
    CHECK_FALSE(p.contains({1.0, 0.5})); // boundary is not interior
    CHECK(p.boundary_distance({0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(p.diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rationality of angle fractions") {
    Polygon sq = unit_square();
    auto r = is_rational(sq, 100);
    CHECK(r.all_rational);
    for (auto [num, den] : r.fractions) {
        CHECK(num == 1);
        CHECK(den == 2);
    }

    double h = std::sqrt(3.0) / 2.0;
    auto tri = is_rational(make_polygon({{0, 0}, {1, 0}, {0.5, h}}), 100);
    CHECK(tri.all_rational);
    for (auto [num, den] : tri.fractions) {
        CHECK(num == 1);
        CHECK(den == 3);
    }
}

TEST_CASE("irrational angle is flagged at small denominators") {
    // build a triangle with one angle pi/sqrt(2) (slightly perturbed); its
    // continued fraction expansion has no small-denominator approximation
    double a1 = 1.0 / std::sqrt(2.0) - 1e-4;
    double ang = a1 * std::numbers::pi;
    // place vertices so the angle at the origin equals ang
    Complex v0(0, 0), v1(2, 0);
    Complex v2 = 1.5 * Complex(std::cos(ang), std::sin(ang));
    Polygon t = make_polygon({v0, v1, v2});
    CHECK(std::abs(t.alphas[0] - a1) < 1e-12);
    auto r = is_rational(t, 100);
    CHECK_FALSE(r.all_rational);
    // generous denominators eventually approximate anything to 1e-9
    auto r2 = is_rational(t, 200000);
    CHECK(r2.all_rational);
}

TEST_CASE("pivot rotation relabels cyclically") {
    Polygon p = unit_square();
    Polygon q = p.rotated(2);
    CHECK(q.vertices[0] == Complex(1, 1));
    CHECK(q.vertices[3] == Complex(1, 0));
    CHECK(q.alphas[0] == doctest::Approx(0.5));
}
