#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace optorus {

using Complex = std::complex<double>;

inline double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline Complex normalized(Complex v) { return v / std::abs(v); }

// Reflect direction d across a line with unit tangent t (specular law).
inline Complex reflect_dir(Complex d, Complex t) {
    Complex n(-t.imag(), t.real());
    return d - 2.0 * dot(d, n) * n;
}

// Distance from point p to segment [a, b].
inline double point_segment_distance(Complex p, Complex a, Complex b) {
    Complex e = b - a;
    double L2 = std::norm(e);
    if (L2 == 0.0) return std::abs(p - a);
    double t = dot(p - a, e) / L2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * e));
}

// Intersection parameter of ray p + t*d (t > t_min) with segment [a, b].
// Returns (t, s) with s in [0,1] the edge parameter, or nothing.
inline std::optional<std::pair<double, double>>
ray_segment_intersection(Complex p, Complex d, Complex a, Complex b, double t_min) {
    Complex e = b - a;
    double denom = cross(d, e);
    if (denom == 0.0) return std::nullopt; // parallel; caller handles collinear overlap
    Complex ap = a - p;
    double t = cross(ap, e) / denom;
    double s = cross(ap, d) / denom;
    if (t <= t_min || s < 0.0 || s > 1.0) return std::nullopt;
    return std::make_pair(t, s);
}

// Proper (interior) intersection test for two open segments.
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);

// Max distance of points from the line through first and last point.
double collinearity_residual(const std::vector<Complex>& pts);

// Orientation-preserving or -reversing affine isometry z -> shift + rot * (z or conj z).
struct Isometry {
    Complex shift{0.0, 0.0};
    Complex rot{1.0, 0.0};
    bool reflecting = false;

    Complex operator()(Complex z) const { return shift + rot * (reflecting ? std::conj(z) : z); }
    Complex apply_dir(Complex v) const { return rot * (reflecting ? std::conj(v) : v); }

    // this ∘ other
    Isometry compose(const Isometry& other) const {
        Isometry r;
        r.reflecting = reflecting != other.reflecting;
        r.rot = reflecting ? rot * std::conj(other.rot) : rot * other.rot;
        r.shift = (*this)(other.shift);
        return r;
    }

    // Reflection across the line through a with direction t (|t| = 1).
    static Isometry line_reflection(Complex a, Complex t) {
        Isometry r;
        r.reflecting = true;
        r.rot = t * t;
        r.shift = a - r.rot * std::conj(a);
        return r;
    }
};

} // namespace optorus
