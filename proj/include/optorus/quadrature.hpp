#pragma once

#include <functional>
#include <vector>

#include "optorus/geometry.hpp"

namespace optorus {

struct QuadRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Gauss rule for the weight (1-x)^alpha (1+x)^beta on [-1,1] (Golub-Welsch).
// alpha = beta = 0 is Gauss-Legendre. Results are cached per (n,alpha,beta).
const QuadRule& gauss_jacobi(int n, double alpha, double beta);
inline const QuadRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// integral of f over the straight segment [p, q], plain Gauss-Legendre(n)
Complex segment_gl(const std::function<Complex(Complex)>& f, Complex p, Complex q, int n = 24);

// integral of (t)^expo * phi(p + t*u) * u dt over t in [0, L], u = (q-p)/L,
// i.e. the segment [p, q] whose integrand has a (z-p)^expo factor already
// divided out of phi... see sc_map.cpp for usage.
Complex segment_power_gl(const std::function<Complex(Complex)>& phi, Complex p, Complex q,
                         double expo, int n = 24);

// Adaptive composite Gauss-Legendre on a real interval; oracle-grade helper
// used by tests and by smooth one-dimensional integrals in the library.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-13, int depth = 48);

} // namespace optorus
