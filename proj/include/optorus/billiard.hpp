#pragma once

#include <optional>
#include <vector>

#include "optorus/polygon.hpp"

namespace optorus {

enum class TraceStatus {
    Completed, // reached max_bounces
    VertexHit, // ray entered the vertex-exclusion disk; flow undefined there
};

struct Bounce {
    Complex point;   // on a polygon edge
    Complex dir_out; // unit outgoing direction
    int edge;        // edge index hit (edge i runs vertex i -> i+1)
};

struct PolygonalTrajectory {
    Complex start;
    Complex dir0; // unit
    std::vector<Bounce> bounces;
    double total_length = 0.0;
    TraceStatus status = TraceStatus::Completed;
    Complex end_point; // last bounce point, or the vertex-hit location

    // polyline through start and all bounce points
    std::vector<Complex> polyline() const;
};

// Straight-line billiard flow with specular reflection. start must be
// strictly interior, dir nonzero. Stops with VertexHit status if a bounce
// lands within eps_v = 1e-9 * diameter of a vertex. Throws on boundary
// start or a ray sliding along an edge.
PolygonalTrajectory trace_billiard(const Polygon& p, Complex start, Complex dir, int max_bounces);

// Smallest m >= 1 such that bounce points and outgoing directions recur with
// shift m (checked over all available pairs) within tol. nullopt if none.
std::optional<int> detect_period(const PolygonalTrajectory& t, double tol);

// Unfold the trajectory by successive edge reflections: images of the bounce
// points under the accumulated isometries. For a billiard trajectory these
// are collinear with the start.
std::vector<Complex> unfold_bounces(const Polygon& p, const PolygonalTrajectory& t);

} // namespace optorus
