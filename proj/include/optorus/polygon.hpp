#pragma once

#include <string>
#include <vector>

#include "optorus/geometry.hpp"

namespace optorus {

// Simple polygon, counterclockwise, with interior angles alpha_i * pi.
// Immutable after construction; safe to share between threads.
struct Polygon {
    std::vector<Complex> vertices;
    std::vector<double> alphas; // interior angle fractions, 0 < alpha_i < 2, sum = n-2

    int size() const { return static_cast<int>(vertices.size()); }
    Complex vertex(int i) const { return vertices[mod_index(i)]; }
    double alpha(int i) const { return alphas[mod_index(i)]; }
    int mod_index(int i) const {
        int n = size();
        return ((i % n) + n) % n;
    }

    double diameter() const;
    double signed_area() const;
    bool contains(Complex p) const;            // strict interior (boundary excluded)
    double boundary_distance(Complex p) const; // min distance to any edge
    double vertex_distance(Complex p) const;   // min distance to any vertex

    // Same polygon with vertex `pivot` first (cyclic relabeling).
    Polygon rotated(int pivot) const;
};

// Build a polygon from a counterclockwise-or-clockwise vertex chain.
// Orientation is normalized to counterclockwise and angles are recomputed
// from geometry. Throws std::invalid_argument on: fewer than 3 vertices,
// repeated vertices, self-intersection (message names the edge pair), or a
// collinear vertex (alpha_i = 1).
Polygon make_polygon(std::vector<Complex> vertices);

// As above, but also checks the supplied angle fractions against the
// recomputed ones to 1e-9.
Polygon make_polygon(std::vector<Complex> vertices, const std::vector<double>& alphas);

struct RationalAngles {
    bool all_rational = false;
    std::vector<std::pair<long, long>> fractions; // p/q per vertex (best with q <= max_den)
};

// True iff every alpha_i is within 1e-9 of a rational with denominator
// <= max_denominator; the best approximations are returned either way.
RationalAngles is_rational(const Polygon& p, long max_denominator);

} // namespace optorus
