#include "optorus/billiard.hpp"

#include <cmath>
#include <stdexcept>

namespace optorus {

std::vector<Complex> PolygonalTrajectory::polyline() const {
    std::vector<Complex> pts;
    pts.reserve(bounces.size() + 2);
    pts.push_back(start);
    for (const auto& b : bounces) pts.push_back(b.point);
    if (status == TraceStatus::VertexHit && (bounces.empty() || end_point != bounces.back().point))
        pts.push_back(end_point);
    return pts;
}

PolygonalTrajectory trace_billiard(const Polygon& p, Complex start, Complex dir, int max_bounces) {
    if (std::abs(dir) == 0.0) throw std::invalid_argument("zero direction");
    double diam = p.diameter();
    double eps_v = 1e-9 * diam;
    if (!p.contains(start) || p.boundary_distance(start) <= eps_v)
        throw std::invalid_argument("start point must be strictly interior");

    PolygonalTrajectory t;
    t.start = start;
    t.dir0 = normalized(dir);
    t.end_point = start;

    Complex pos = start;
    Complex d = t.dir0;
    int cur_edge = -1;
    int n = p.size();

    for (int b = 0; b < max_bounces; ++b) {
        double best_t = std::numeric_limits<double>::infinity();
        int best_edge = -1;
        for (int i = 0; i < n; ++i) {
            if (i == cur_edge) continue; // a ray can never return to the edge it left
            Complex a = p.vertices[i], v = p.vertices[(i + 1) % n];
            Complex e = v - a;
            if (cross(d, e) == 0.0) {
                // parallel: a ray riding along the edge line is degenerate
                if (std::abs(cross(normalized(e), pos - a)) < eps_v &&
                    point_segment_distance(pos, a, v) < eps_v)
                    throw std::invalid_argument("ray slides along edge " + std::to_string(i));
                continue;
            }
            auto hit = ray_segment_intersection(pos, d, a, v, eps_v);
            if (hit && hit->first < best_t) {
                best_t = hit->first;
                best_edge = i;
            }
        }
        if (best_edge < 0) throw std::runtime_error("billiard ray escaped the polygon (numerical)");

        Complex hit_pt = pos + best_t * d;
        t.total_length += best_t;
        Complex a = p.vertices[best_edge], v = p.vertices[(best_edge + 1) % n];
        if (std::abs(hit_pt - a) < eps_v || std::abs(hit_pt - v) < eps_v) {
            t.status = TraceStatus::VertexHit;
            t.end_point = hit_pt;
            return t;
        }
        Complex tangent = normalized(v - a);
        d = reflect_dir(d, tangent);
        t.bounces.push_back({hit_pt, d, best_edge});
        t.end_point = hit_pt;
        pos = hit_pt;
        cur_edge = best_edge;
    }
    return t;
}

std::optional<int> detect_period(const PolygonalTrajectory& t, double tol) {
    int B = static_cast<int>(t.bounces.size());
    if (B < 2) return std::nullopt;
    for (int m = 1; m < B; ++m) {
        bool ok = true;
        for (int j = 0; j + m < B; ++j) {
            if (std::abs(t.bounces[j + m].point - t.bounces[j].point) > tol ||
                std::abs(t.bounces[j + m].dir_out - t.bounces[j].dir_out) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
    return std::nullopt;
}

std::vector<Complex> unfold_bounces(const Polygon& p, const PolygonalTrajectory& t) {
    std::vector<Complex> out;
    out.reserve(t.bounces.size() + 1);
    out.push_back(t.start);
    Isometry g; // identity
    for (const auto& b : t.bounces) {
        out.push_back(g(b.point));
        Complex a = p.vertices[b.edge];
        Complex v = p.vertices[(b.edge + 1) % p.size()];
        g = g.compose(Isometry::line_reflection(a, normalized(v - a)));
    }
    return out;
}

} // namespace optorus
