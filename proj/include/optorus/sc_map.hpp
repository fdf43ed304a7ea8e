#pragma once

#include <vector>

#include "optorus/elliptic.hpp"
#include "optorus/polygon.hpp"

namespace optorus {

// One evaluable half-plane -> polygon map with the paper's three-point
// normalization a1 = -1/k, a2 = -1, a3 = 1. The remaining prevertices are
// the accessory parameters determined by the polygon.
struct SCChart {
    Polygon target; // pivot-rotated: target.vertices[0] is the image of a1
    int pivot = 0;  // index of P1 in the original polygon
    double k = 0.0;
    std::vector<double> prevertices; // ascending, n entries
    std::vector<double> exponents;   // alpha_i - 1, sum = -2
    Complex multiplier{1.0, 0.0};    // A
    Complex offset{0.0, 0.0};        // z0 = f(a1) = P1
    std::vector<Complex> vertex_values; // f(a_i), should reproduce target vertices
    Complex f_infinity{0.0, 0.0};       // image of eta = inf, interior of side Pn-P1
    double diameter = 0.0;

    int size() const { return static_cast<int>(prevertices.size()); }
};

struct SolveReport {
    int iterations = 0;
    int restarts = 0;
    double residual = 0.0;
    double vertex_error = 0.0; // max |f(a_i) - z_i|
};

// Solve the accessory-parameter problem: n-3 prevertex gaps from side-length
// ratios, log-gap parameterization, damped Newton with multistart.
// Throws std::runtime_error mentioning "crowding" when the solved
// prevertices collapse (gap < 1e-12), or "did not converge" with the
// residual vector otherwise.
SCChart solve_parameters(const Polygon& p, double k, int pivot, SolveReport* report = nullptr);

// f(eta) for eta in the closed upper half-plane: compound Gauss-Jacobi
// quadrature from the nearest prevertex anchor, asymptotic form far away.
Complex eval_halfplane_to_polygon(const SCChart& c, Complex eta);

// Same value integrated from an explicit prevertex anchor (exercises path
// independence of the SC integral).
Complex eval_halfplane_to_polygon(const SCChart& c, Complex eta, int anchor);

// f'(eta) = A * prod (eta - a_i)^{alpha_i - 1}
Complex sc_derivative(const SCChart& c, Complex eta);

// Thin wrapper over incomplete_F (Eq. 8 with the corner bookkeeping).
inline Complex eval_halfplane_to_rectangle(const EllipticModulus& m, Complex eta) {
    return incomplete_F(eta, m);
}

// eta with f(eta) = z for strictly interior z, by ODE continuation from an
// interior anchor plus damped Newton. Refuses z within the vertex-exclusion
// radius; throws std::runtime_error with the residual on failure.
Complex invert_polygon_map(const SCChart& c, Complex z);

// Preimage of a boundary point lying on edge `edge` (rotated indexing,
// edge i joins target vertex i and i+1). Returns the real prevertex-line
// coordinate; for the wrap side the value may have huge magnitude.
double boundary_preimage(const SCChart& c, int edge, Complex z);

struct RectangleChart {
    EllipticModulus modulus;
    Complex corners[4]; // R1(-a+ib), R2(-a), R3(a), R4(a+ib)
    static RectangleChart from_modulus(const EllipticModulus& m);
};

// h = g o f^{-1} : polygon -> rectangle, with its inverse f o g^{-1}.
struct ConformalChart {
    SCChart sc;
    EllipticModulus modulus;
    Polygon original; // user's vertex order; sc.target is the pivot rotation

    Complex forward(Complex z) const;  // h(z), z strictly interior
    Complex inverse(Complex w) const;  // f(sn(w))
    Complex dw_dz(Complex z) const;    // h'(z)
    Complex dz_dw(Complex w) const;    // derivative of the inverse at w

    // image of a boundary point on original-polygon edge `edge`
    Complex forward_boundary(int edge, Complex z) const;

    int rotated_edge(int original_edge) const {
        int n = original.size();
        return ((original_edge - sc.pivot) % n + n) % n;
    }
};

// Runs solve_parameters, attaches the modulus, and verifies the
// side-placement rule (vertices after P3 land on side R3-R4 when a_i < 1/k
// and on R4-R1 when a_i > 1/k).
ConformalChart build_chart(const Polygon& p, double k, int pivot);

} // namespace optorus
