#pragma once

#include "optorus/geometry.hpp"

namespace optorus {

double agm(double a, double b);

// Complete elliptic integral of the first kind, AGM evaluation.
// Domain 0 <= k < 1; throws std::domain_error otherwise.
double complete_K(double k);

// Modulus data for the half-plane -> rectangle map. The rectangle is
// [-a, a] x [0, b] with a = K(k), b = K(k').
struct EllipticModulus {
    double k = 0.0;
    double k_prime = 0.0;
    double a = 0.0; // K(k), rectangle half-width
    double b = 0.0; // K(k'), rectangle height

    double inv_k() const { return 1.0 / k; }

    // k restricted to [1e-6, 1 - 1e-6]; outside, the rectangle degenerates
    // and construction is refused.
    static EllipticModulus from_k(double k);
};

struct SnCnDnReal {
    double sn, cn, dn;
};

// Real Jacobi elliptic functions by the descending Landen (AGM) recursion.
SnCnDnReal jacobi_sncndn_real(double u, double k);

struct SnValue {
    Complex sn, cn, dn; // cn, dn may carry a common sign flip from lattice wrapping;
                        // sn and the product cn*dn are wrap-invariant
    bool at_pole = false;
    bool near_pole = false; // within eps_p = 1e-6 * b of a pole (torus distance)
};

// sn(w; k) for complex w, with cn, dn byproducts. w is reduced modulo the
// period lattice (4a, 2ib). Poles (w = ib and w = 2a + ib mod lattice) are
// reported through at_pole; near_pole is the 1e-6*b neighbourhood flag.
// Near a pole the value is computed through the quarter-period shift
// identity, so it stays fully accurate until at_pole triggers.
SnValue jacobi_sn(Complex w, const EllipticModulus& m);

// Incomplete elliptic integral of the first kind, F(eta; k), for eta in the
// closed upper half-plane, branch fixed by continuation of the real integral
// from the segment (-1, 1). Maps Im >= 0 into [-a, a] x [0, b]. Computed by
// path integration along a two-leg contour (real axis, then vertical) with
// Gauss-Jacobi-type endpoint treatment at the branch points.
Complex incomplete_F(Complex eta, const EllipticModulus& m);

// dF/deta = (1-eta^2)^{-1/2} (1-k^2 eta^2)^{-1/2}, same branch as
// incomplete_F. Throws std::domain_error at the branch points {±1, ±1/k}.
Complex dF_deta(Complex eta, const EllipticModulus& m);

} // namespace optorus
