#pragma once

#include <cmath>

#include "optorus/elliptic.hpp"
#include "optorus/polygon.hpp"

namespace fixtures {

inline optorus::Polygon unit_square() {
    return optorus::make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline optorus::Polygon equilateral_triangle() {
    return optorus::make_polygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
}

// acute scalene triangle; its orthic triangle (Fagnano orbit) has vertices
// (1,0), (2,2), (0.4,1.2)
inline optorus::Polygon acute_triangle() {
    return optorus::make_polygon({{0, 0}, {4, 0}, {1, 3}});
}

// convex scalene hexagon, all angle fractions away from 1
inline optorus::Polygon scalene_hexagon() {
    return optorus::make_polygon({
        {1, 0},
        {0.504126818807439, 1.033613153244042},
        {-0.4312909747525693, 0.8464561979789494},
        {-1.079342093180623, -0.03769145643870098},
        {-0.5162187927159417, -0.7372368398600925},
        {0.6099957192168299, -0.9393110360988752},
    });
}

// rectangle similar to the conformal image [-K(k), K(k)] x [0, K(k')];
// with pivot at the top-left vertex the chart degenerates to a similarity
inline optorus::Polygon matched_rectangle(double k, int* pivot_out) {
    auto m = optorus::EllipticModulus::from_k(k);
    double W = 2.0 * m.a, H = m.b;
    *pivot_out = 3; // vertex (0, H) plays P1 -> R1 (top-left corner)
    return optorus::make_polygon({{0, 0}, {W, 0}, {W, H}, {0, H}});
}

} // namespace fixtures
