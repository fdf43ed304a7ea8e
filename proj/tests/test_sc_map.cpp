#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "optorus/billiard.hpp"
#include "optorus/quadrature.hpp"
#include "optorus/sc_map.hpp"

using namespace optorus;

namespace {
constexpr double kDefault = 0.7071067811865475244;

double side_singular_integral(const std::vector<double>& a, double lo, double hi) {
    // integral of prod_i |x - a_i|^{-1/2} over [lo, hi], both endpoints in a;
    // Gauss-Chebyshev absorbs the endpoint factors
    auto& rule = gauss_jacobi(64, -0.5, -0.5);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double x = mid + half * rule.nodes[i];
        double rest = 1.0;
        for (double ai : a)
            if (ai != lo && ai != hi) rest *= std::abs(x - ai);
        s += rule.weights[i] / std::sqrt(rest);
    }
    return s; // the half^{-1/2} factors from the two absorbed endpoints cancel half^1 from dx
}
} // namespace

TEST_CASE("rectangle side-length ratio oracle: symmetric prevertices") {
    // direct quadrature of the SC integral with prevertices (-1/k,-1,1,1/k)
    // and all exponents -1/2 must give side ratio K(k')/(2K(k))
    double k = 0.5;
    auto m = EllipticModulus::from_k(k);
    std::vector<double> a = {-1.0 / k, -1.0, 1.0, 1.0 / k};
    double bottom = side_singular_integral(a, -1.0, 1.0);
    double right = side_singular_integral(a, 1.0, 1.0 / k);
    CHECK(right / bottom == doctest::Approx(m.b / (2.0 * m.a)).epsilon(1e-12));
}

TEST_CASE("triangle chart: no unknowns, vertices reproduced") {
    SolveReport rep;
    SCChart c = solve_parameters(fixtures::equilateral_triangle(), kDefault, 0, &rep);
    CHECK(c.prevertices.size() == 3);
    CHECK(c.prevertices[0] == -1.0 / kDefault);
    CHECK(c.prevertices[1] == -1.0);
    CHECK(c.prevertices[2] == 1.0);
    CHECK(rep.vertex_error < 1e-10 * c.diameter);
    double esum = 0.0;
    for (double e : c.exponents) esum += e;
    CHECK(esum == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("square chart with default k converges") {
    SolveReport rep;
    SCChart c = solve_parameters(fixtures::unit_square(), kDefault, 0, &rep);
    REQUIRE(c.prevertices.size() == 4);
    CHECK(c.prevertices[3] > 1.0);
    CHECK(rep.vertex_error < 1e-9 * c.diameter);
    CHECK(rep.residual < 1e-11);
}

TEST_CASE("matched rectangle chart returns a4 = 1/k (similarity)") {
    double k = 0.5;
    int pivot = 0;
    Polygon rect = fixtures::matched_rectangle(k, &pivot);
    SolveReport rep;
    SCChart c = solve_parameters(rect, k, pivot, &rep);
    REQUIRE(c.prevertices.size() == 4);
    CHECK(c.prevertices[3] == doctest::Approx(1.0 / k).epsilon(1e-9));
    CHECK(rep.vertex_error < 1e-9 * c.diameter);
}

TEST_CASE("hexagon chart: three accessory parameters solved") {
    SolveReport rep;
    SCChart c = solve_parameters(fixtures::scalene_hexagon(), kDefault, 0, &rep);
    REQUIRE(c.prevertices.size() == 6);
    for (int i = 0; i + 1 < 6; ++i) CHECK(c.prevertices[i] < c.prevertices[i + 1]);
    CHECK(rep.vertex_error < 1e-8 * c.diameter);
    INFO("iterations ", rep.iterations, " restarts ", rep.restarts);
    CHECK(rep.residual < 1e-11);
}

TEST_CASE("evaluation at prevertices returns the vertices despite the singular derivative") {
    SCChart c = solve_parameters(fixtures::acute_triangle(), kDefault, 0);
    for (int i = 0; i < 3; ++i) {
        Complex z = eval_halfplane_to_polygon(c, Complex(c.prevertices[i], 0.0));
        CHECK(std::abs(z - c.target.vertices[i]) < 1e-6 * c.diameter);
        // approaching along the axis converges to the vertex too
        Complex znear = eval_halfplane_to_polygon(c, Complex(c.prevertices[i] + 1e-9, 0.0));
        CHECK(std::abs(znear - c.target.vertices[i]) < 1e-4 * c.diameter);
    }
}

TEST_CASE("boundary correspondence: prevertex segments map onto polygon sides") {
    SCChart c = solve_parameters(fixtures::scalene_hexagon(), kDefault, 0);
    int n = c.size();
    for (int i = 0; i + 1 < n; ++i) {
        Complex A = c.target.vertices[i], B = c.target.vertices[i + 1];
        double len = std::abs(B - A);
        Complex tdir = (B - A) / len;
        for (double fr : {0.21, 0.5, 0.83}) {
            double eta = c.prevertices[i] + fr * (c.prevertices[i + 1] - c.prevertices[i]);
            Complex z = eval_halfplane_to_polygon(c, Complex(eta, 0.0));
            CHECK(std::abs(cross(tdir, z - A)) < 1e-8 * len);
            double t = dot(z - A, tdir);
            CHECK(t > -1e-8);
            CHECK(t < len + 1e-8);
        }
    }
    // wrap side through infinity: f_infinity lies on side Pn-P1
    Complex A = c.target.vertices[n - 1], B = c.target.vertices[0];
    Complex tdir = normalized(B - A);
    CHECK(std::abs(cross(tdir, c.f_infinity - A)) < 1e-8 * std::abs(B - A));
}

TEST_CASE("path independence of the SC integral") {
    SCChart c = solve_parameters(fixtures::scalene_hexagon(), kDefault, 0);
    for (Complex eta : {Complex(0.4, 0.8), Complex(-1.5, 0.4), Complex(2.0, 2.0)}) {
        Complex z0 = eval_halfplane_to_polygon(c, eta, 0);
        Complex z2 = eval_halfplane_to_polygon(c, eta, 2);
        Complex z5 = eval_halfplane_to_polygon(c, eta, 5);
        CHECK(std::abs(z0 - z2) < 1e-10);
        CHECK(std::abs(z0 - z5) < 1e-10);
    }
}

TEST_CASE("far-field evaluation matches direct integration") {
    SCChart c = solve_parameters(fixtures::acute_triangle(), kDefault, 0);
    // just beyond the asymptotic switch radius the two code paths must agree
    double R = 10.0 * std::max(std::abs(c.prevertices.front()), c.prevertices.back());
    for (Complex eta : {Complex(1.2 * R, 0.4 * R), Complex(-0.9 * R, 1.1 * R)}) {
        Complex far = eval_halfplane_to_polygon(c, eta);
        Complex anchored = eval_halfplane_to_polygon(c, eta, 2);
        CHECK(std::abs(far - anchored) < 1e-9);
    }
}

TEST_CASE("inversion: forward-inverse identity on random interior points") {
    SCChart c = solve_parameters(fixtures::scalene_hexagon(), kDefault, 0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-0.9, 1.0);
    int tested = 0;
    for (int i = 0; i < 200 && tested < 60; ++i) {
        Complex z(ux(rng), uy(rng));
        if (!c.target.contains(z) || c.target.boundary_distance(z) < 1e-3) continue;
        ++tested;
        Complex eta = invert_polygon_map(c, z);
        CHECK(eta.imag() > 0.0);
        CHECK(std::abs(eval_halfplane_to_polygon(c, eta) - z) < 1e-8);
    }
    CHECK(tested >= 60);
}

TEST_CASE("inversion round trip through a known point") {
    SCChart c = solve_parameters(fixtures::unit_square(), kDefault, 0);
    Complex z = eval_halfplane_to_polygon(c, Complex(0, 1));
    Complex eta = invert_polygon_map(c, z);
    CHECK(std::abs(eta - Complex(0, 1)) < 1e-9);
}

TEST_CASE("inversion refuses exterior and near-vertex points") {
    SCChart c = solve_parameters(fixtures::unit_square(), kDefault, 0);
    CHECK_THROWS_AS(invert_polygon_map(c, Complex(2.0, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(invert_polygon_map(c, Complex(1e-12, 1e-12)), std::invalid_argument);
}

TEST_CASE("boundary preimage on ordinary and wrap sides") {
    SCChart c = solve_parameters(fixtures::scalene_hexagon(), kDefault, 0);
    int n = c.size();
    for (int edge : {0, 1, 3}) {
        Complex A = c.target.vertices[edge], B = c.target.vertices[(edge + 1) % n];
        Complex z = A + 0.37 * (B - A);
        double eta = boundary_preimage(c, edge, z);
        CHECK(std::abs(eval_halfplane_to_polygon(c, Complex(eta, 0.0)) - z) < 1e-8);
    }
    // wrap side: points on both sides of f_infinity
    Complex A = c.target.vertices[n - 1], B = c.target.vertices[0];
    for (double fr : {0.15, 0.5, 0.9}) {
        Complex z = A + fr * (B - A);
        double eta = boundary_preimage(c, n - 1, z);
        CHECK(std::abs(eval_halfplane_to_polygon(c, Complex(eta, 0.0)) - z) < 1e-7);
    }
}

TEST_CASE("rectangle chart corners") {
    auto m = EllipticModulus::from_k(0.37);
    auto rc = RectangleChart::from_modulus(m);
    CHECK(rc.corners[0] == Complex(-m.a, m.b));
    CHECK(rc.corners[1] == Complex(-m.a, 0.0));
    CHECK(rc.corners[2] == Complex(m.a, 0.0));
    CHECK(rc.corners[3] == Complex(m.a, m.b));
    for (int i = 0; i < 4; ++i) {
        double cpts[4] = {-m.inv_k(), -1.0, 1.0, m.inv_k()};
        CHECK(std::abs(eval_halfplane_to_rectangle(m, Complex(cpts[i], 0.0)) - rc.corners[i]) <
              1e-11);
    }
}

TEST_CASE("composed chart h = g o f^{-1} and its inverse") {
    ConformalChart cc = build_chart(fixtures::acute_triangle(), kDefault, 0);
    const auto& m = cc.modulus;

    // corner vertices land on R1, R2, R3
    CHECK(std::abs(incomplete_F(Complex(cc.sc.prevertices[0], 0), m) - Complex(-m.a, m.b)) < 1e-11);
    CHECK(std::abs(incomplete_F(Complex(cc.sc.prevertices[1], 0), m) - Complex(-m.a, 0)) < 1e-11);
    CHECK(std::abs(incomplete_F(Complex(cc.sc.prevertices[2], 0), m) - Complex(m.a, 0)) < 1e-11);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ux(0.2, 3.0), uy(0.2, 2.0);
    int tested = 0;
    while (tested < 25) {
        Complex z(ux(rng), uy(rng));
        if (!cc.original.contains(z) || cc.original.boundary_distance(z) < 0.05) continue;
        ++tested;
        Complex w = cc.forward(z);
        CHECK(w.real() > -m.a - 1e-9);
        CHECK(w.real() < m.a + 1e-9);
        CHECK(w.imag() > -1e-9);
        CHECK(w.imag() < m.b + 1e-9);
        CHECK(std::abs(cc.inverse(w) - z) < 1e-8);
    }
}

TEST_CASE("h is conformal: finite-difference Jacobian is a similarity") {
    ConformalChart cc = build_chart(fixtures::scalene_hexagon(), kDefault, 0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-0.9, 1.0);
    int tested = 0;
    double h = 1e-6;
    while (tested < 50) {
        Complex z(ux(rng), uy(rng));
        if (!cc.original.contains(z) || cc.original.boundary_distance(z) < 0.05) continue;
        ++tested;
        Complex du = (cc.forward(z + Complex(h, 0)) - cc.forward(z - Complex(h, 0))) / (2 * h);
        Complex dv = (cc.forward(z + Complex(0, h)) - cc.forward(z - Complex(0, h))) / (2 * h);
        // columns (Re du, Im du) and (Re dv, Im dv): similarity means
        // |du| = |dv| and du ⟂ dv
        double s1 = std::abs(du), s2 = std::abs(dv);
        CHECK(std::abs(s1 - s2) / s1 < 1e-5);
        CHECK(std::abs(dot(du, dv)) / (s1 * s2) < 1e-5);
        // and the analytic derivative matches the finite difference
        CHECK(std::abs(du - cc.dw_dz(z)) / s1 < 1e-5);
    }
}

TEST_CASE("matched rectangle chart is a similarity") {
    double k = 0.5;
    int pivot = 0;
    Polygon rect = fixtures::matched_rectangle(k, &pivot);
    ConformalChart cc = build_chart(rect, k, pivot);
    Complex d0 = cc.dw_dz(Complex(1.0, 0.8));
    for (Complex z : {Complex(0.4, 0.3), Complex(2.2, 1.5), Complex(3.0, 0.4)}) {
        CHECK(std::abs(cc.dw_dz(z) - d0) < 1e-8 * std::abs(d0));
    }
    // |h'| equals the similarity ratio: rectangle width / polygon width = 1
    CHECK(std::abs(d0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("specular bounces map to specular bounces on the rectangle wall") {
    ConformalChart cc = build_chart(fixtures::acute_triangle(), kDefault, 0);
    auto traj = trace_billiard(cc.original, {1.3, 0.7}, normalized({0.3, 1.0}), 6);
    REQUIRE(traj.bounces.size() == 6);
    const auto& m = cc.modulus;

    Complex prev = traj.start;
    Complex dir = traj.dir0;
    for (const auto& bounce : traj.bounces) {
        Complex wb = cc.forward_boundary(bounce.edge, bounce.point);
        // rectangle wall normal at wb (axis-aligned sides)
        Complex nrm;
        if (std::abs(wb.real() + m.a) < 1e-7 || std::abs(wb.real() - m.a) < 1e-7)
            nrm = Complex(1, 0);
        else if (std::abs(wb.imag()) < 1e-7 || std::abs(wb.imag() - m.b) < 1e-7)
            nrm = Complex(0, 1);
        else
            FAIL("mapped bounce point not on the rectangle boundary: ", wb.real(), " ", wb.imag());

        // mapped tangents on the incident and reflected legs near the bounce
        double eps = 1e-5 * cc.original.diameter();
        Complex zin = bounce.point - eps * dir;
        Complex zout = bounce.point + eps * bounce.dir_out;
        Complex tin = cc.dw_dz(zin) * dir;
        Complex tout = cc.dw_dz(zout) * bounce.dir_out;
        // specular: normal components opposite, tangential equal (up to O(eps))
        Complex tangent(-nrm.imag(), nrm.real());
        double in_n = dot(normalized(tin), nrm), out_n = dot(normalized(tout), nrm);
        double in_t = dot(normalized(tin), tangent), out_t = dot(normalized(tout), tangent);
        CHECK(std::abs(in_n + out_n) < 1e-4);
        CHECK(std::abs(in_t - out_t) < 1e-4);
        prev = bounce.point;
        dir = bounce.dir_out;
    }
    (void)prev;
}

TEST_CASE("solver reports crowding or divergence as typed failures") {
    // extremely elongated rectangle: prevertices crowd and the solve reports it
    Polygon sliver = make_polygon({{0, 0}, {60, 0}, {60, 1}, {0, 1}});
    try {
        solve_parameters(sliver, kDefault, 0);
        // convergence without crowding is acceptable on some platforms;
        // nothing to assert in that case
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        bool informative = msg.find("crowding") != std::string::npos ||
                           msg.find("converge") != std::string::npos ||
                           msg.find("reproduction") != std::string::npos;
        CHECK(informative);
    }
}
