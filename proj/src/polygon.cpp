#include "optorus/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optorus {

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
    int d1 = sgn(cross(b - a, c - a));
    int d2 = sgn(cross(b - a, d - a));
    int d3 = sgn(cross(d - c, a - c));
    int d4 = sgn(cross(d - c, b - c));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    // collinear overlap counts as intersection
    auto on_seg = [&](Complex p, Complex q, Complex r) {
        return cross(q - p, r - p) == 0.0 && dot(r - p, r - q) <= 0.0;
    };
    return (d1 == 0 && on_seg(a, b, c)) || (d2 == 0 && on_seg(a, b, d)) ||
           (d3 == 0 && on_seg(c, d, a)) || (d4 == 0 && on_seg(c, d, b));
}

double collinearity_residual(const std::vector<Complex>& pts) {
    if (pts.size() < 3) return 0.0;
    Complex a = pts.front(), b = pts.back();
    double L = std::abs(b - a);
    if (L == 0.0) {
        double m = 0.0;
        for (auto p : pts) m = std::max(m, std::abs(p - a));
        return m;
    }
    Complex t = (b - a) / L;
    double m = 0.0;
    for (auto p : pts) m = std::max(m, std::abs(cross(t, p - a)));
    return m;
}

double Polygon::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            d = std::max(d, std::abs(vertices[i] - vertices[j]));
    return d;
}

double Polygon::signed_area() const {
    double s = 0.0;
    int n = size();
    for (int i = 0; i < n; ++i) s += cross(vertices[i], vertices[(i + 1) % n]);
    return 0.5 * s;
}

bool Polygon::contains(Complex p) const {
    // ray crossing count; boundary points are not interior
    int n = size();
    if (boundary_distance(p) == 0.0) return false;
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        Complex a = vertices[i], b = vertices[(i + 1) % n];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
            double x = a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
            if (p.real() < x) inside = !inside;
        }
    }
    return inside;
}

double Polygon::boundary_distance(Complex p) const {
    double d = std::numeric_limits<double>::infinity();
    int n = size();
    for (int i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(p, vertices[i], vertices[(i + 1) % n]));
    return d;
}

double Polygon::vertex_distance(Complex p) const {
    double d = std::numeric_limits<double>::infinity();
    for (auto v : vertices) d = std::min(d, std::abs(p - v));
    return d;
}

Polygon Polygon::rotated(int pivot) const {
    Polygon q;
    int n = size();
    pivot = mod_index(pivot);
    q.vertices.reserve(n);
    q.alphas.reserve(n);
    for (int i = 0; i < n; ++i) {
        q.vertices.push_back(vertices[(pivot + i) % n]);
        q.alphas.push_back(alphas[(pivot + i) % n]);
    }
    return q;
}

namespace {

std::vector<double> angles_from_geometry(const std::vector<Complex>& v) {
    int n = static_cast<int>(v.size());
    std::vector<double> alphas(n);
    for (int i = 0; i < n; ++i) {
        Complex prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
        Complex din = v[i] - prev, dout = next - v[i];
        // turning angle in (-pi, pi); interior angle = pi - turn for CCW chains
        double turn = std::arg(dout / din);
        alphas[i] = 1.0 - turn / std::numbers::pi;
    }
    return alphas;
}

} // namespace

Polygon make_polygon(std::vector<Complex> vertices) {
    int n = static_cast<int>(vertices.size());
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (vertices[i] == vertices[j])
                throw std::invalid_argument("polygon has repeated vertices " + std::to_string(i) +
                                            " and " + std::to_string(j));

    Polygon p;
    p.vertices = std::move(vertices);
    if (p.signed_area() < 0.0) std::reverse(p.vertices.begin(), p.vertices.end());

    // simplicity: non-adjacent edges must not meet
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            Complex a = p.vertices[i], b = p.vertices[(i + 1) % n];
            Complex c = p.vertices[j], d = p.vertices[(j + 1) % n];
            if (segments_intersect(a, b, c, d))
                throw std::invalid_argument("polygon self-intersects: edge " + std::to_string(i) +
                                            " crosses edge " + std::to_string(j));
        }
    }

    p.alphas = angles_from_geometry(p.vertices);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double a = p.alphas[i];
        if (std::abs(a - 1.0) < 1e-12)
            throw std::invalid_argument("degenerate (collinear) vertex " + std::to_string(i));
        if (a <= 0.0 || a >= 2.0)
            throw std::invalid_argument("interior angle out of range at vertex " + std::to_string(i));
        sum += a;
    }
    if (std::abs(sum - (n - 2)) > 1e-12)
        throw std::invalid_argument("angle fractions do not sum to n-2");
    return p;
}

Polygon make_polygon(std::vector<Complex> vertices, const std::vector<double>& alphas) {
    Polygon p = make_polygon(std::move(vertices));
    if (alphas.size() != p.vertices.size())
        throw std::invalid_argument("alpha list size mismatch");
    for (size_t i = 0; i < alphas.size(); ++i)
        if (std::abs(alphas[i] - p.alphas[i]) > 1e-9)
            throw std::invalid_argument("supplied alpha inconsistent with geometry at vertex " +
                                        std::to_string(i));
    return p;
}

namespace {

// best rational p/q with q <= max_den (continued fractions / Stern-Brocot)
std::pair<long, long> best_rational(double x, long max_den) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) {
            // largest admissible semiconvergent
            long amax = (max_den - q0) / (q1 == 0 ? 1 : q1);
            long p3 = amax * p1 + p0, q3 = amax * q1 + q0;
            if (q3 >= 1 && std::abs(x - double(p3) / double(q3)) < std::abs(x - double(p1) / double(q1)))
                return {p3, q3};
            return {p1, q1};
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return {p1, q1};
}

} // namespace

RationalAngles is_rational(const Polygon& p, long max_denominator) {
    RationalAngles r;
    r.all_rational = true;
    for (double a : p.alphas) {
        auto [num, den] = best_rational(a, max_denominator);
        r.fractions.emplace_back(num, den);
        if (std::abs(a - double(num) / double(den)) > 1e-9) r.all_rational = false;
    }
    return r;
}

} // namespace optorus
