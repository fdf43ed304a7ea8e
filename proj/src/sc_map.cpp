#include "optorus/sc_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optorus/defaults.hpp"
#include "optorus/quadrature.hpp"

namespace optorus {

namespace {

Complex fix_imag(Complex z) {
    // keep boundary points on the +0.0 side so principal logs take the
    // upper-half-plane branch
    return z.imag() == 0.0 ? Complex(z.real(), 0.0) : z;
}

// prod (z - a_i)^{e_i} with principal logs (holomorphic on the closed upper
// half-plane, continuation of the real product from x > a_n)
struct PrevertexProduct {
    const std::vector<double>& pts;
    const std::vector<double>& expo;

    Complex eval(Complex z) const {
        z = fix_imag(z);
        Complex s(0.0, 0.0);
        for (size_t i = 0; i < pts.size(); ++i) s += expo[i] * std::log(z - pts[i]);
        return std::exp(s);
    }
    Complex eval_skipping(Complex z, int skip) const {
        z = fix_imag(z);
        Complex s(0.0, 0.0);
        for (size_t i = 0; i < pts.size(); ++i)
            if (static_cast<int>(i) != skip) s += expo[i] * std::log(z - pts[i]);
        return std::exp(s);
    }
    double exponent(int i) const { return expo[i]; }
    double nearest(Complex p, int skip) const {
        double d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < pts.size(); ++i)
            if (static_cast<int>(i) != skip) d = std::min(d, std::abs(p - pts[i]));
        return d;
    }
};

// prod (1 - a_i s)^{e_i} in the inverted variable s = 1/eta, used for the
// far field and the tail to eta = infinity. Near s = 0 every factor is close
// to 1, so principal logs are safe.
struct InvertedProduct {
    const std::vector<double>& a;
    const std::vector<double>& expo;

    Complex eval(Complex s) const {
        s = fix_imag(s);
        Complex sum(0.0, 0.0);
        for (size_t i = 0; i < a.size(); ++i) sum += expo[i] * std::log(1.0 - a[i] * s);
        return std::exp(sum);
    }
    double nearest(Complex p, int skip) const {
        double d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < a.size(); ++i) {
            if (static_cast<int>(i) == skip || a[i] == 0.0) continue;
            d = std::min(d, std::abs(p - 1.0 / a[i]));
        }
        return d;
    }
};

// Compound quadrature along [p, q] with an optional endpoint singularity of
// exponent f.exponent(sing) at p. Panels respect the half rule: the nearest
// off-panel singularity is at least as far as the panel is long.
template <class F>
Complex integrate_path(const F& f, Complex p, Complex q, int sing,
                       const std::function<Complex(Complex)>& skip_eval = nullptr,
                       double sing_expo = 0.0) {
    Complex total(0.0, 0.0);
    double L = std::abs(q - p);
    if (L == 0.0) return total;
    Complex u = (q - p) / L;
    double t = 0.0;
    if (sing >= 0) {
        double d = f.nearest(p, sing);
        double len = std::min(L, 0.5 * d);
        total += segment_power_gl(skip_eval, p, p + len * u, sing_expo, 32);
        t = len;
    }
    int guard = 0;
    while (t < L) {
        if (++guard > 8192) throw std::runtime_error("sc quadrature: panel subdivision stalled");
        Complex cur = p + t * u;
        double d = f.nearest(cur, -1);
        double len = std::min(L - t, 0.5 * d);
        if (!(len > 0.0))
            throw std::runtime_error("sc quadrature: path touches a singular point");
        total += segment_gl([&f](Complex z) { return f.eval(z); }, cur, cur + len * u, 32);
        t += len;
    }
    return total;
}

Complex integrate_from_prevertex(const PrevertexProduct& f, int i, Complex q) {
    Complex p(f.pts[i], 0.0);
    return integrate_path(f, p, q, i, [&](Complex z) { return f.eval_skipping(z, i); },
                          f.exponent(i));
}

// unit-multiplier integral over side interval [a_i, a_{i+1}]
Complex side_integral(const PrevertexProduct& f, int i) {
    Complex mid(0.5 * (f.pts[i] + f.pts[i + 1]), 0.0);
    return integrate_from_prevertex(f, i, mid) - integrate_from_prevertex(f, i + 1, mid);
}

// integral of prod (1 - a_i s)^{e_i} ds over s in [0, 1/a_n], singular right
// endpoint; evaluated in the flipped variable sigma = 1/a_n - s.
Complex tail_integral(const std::vector<double>& a, const std::vector<double>& e) {
    int n = static_cast<int>(a.size());
    double p = 1.0 / a[n - 1];
    double an_pow = std::pow(a[n - 1], e[n - 1]);

    struct Flipped {
        const std::vector<double>& a;
        const std::vector<double>& e;
        double p;
        int n;
        Complex eval(Complex sigma) const {
            sigma = fix_imag(sigma);
            Complex sum(0.0, 0.0);
            for (int i = 0; i < n; ++i) sum += e[i] * std::log(1.0 - a[i] * (p - sigma));
            return std::exp(sum);
        }
        double nearest(Complex q, int skip) const {
            double d = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (i == skip || a[i] == 0.0) continue;
                d = std::min(d, std::abs(q - (p - 1.0 / a[i])));
            }
            return d;
        }
    } f{a, e, p, n};

    auto skip_eval = [&](Complex sigma) {
        sigma = fix_imag(sigma);
        Complex sum(0.0, 0.0);
        for (int i = 0; i + 1 < n; ++i) sum += e[i] * std::log(1.0 - a[i] * (p - sigma));
        return std::exp(sum) * an_pow;
    };
    // sigma runs 0 -> p while s runs 1/a_n -> 0; ds = -dsigma cancels the
    // orientation flip, so the sigma-integral equals the s-integral
    return integrate_path(f, Complex(0.0, 0.0), Complex(p, 0.0), n - 1, skip_eval, e[n - 1]);
}

double far_radius(const SCChart& c) {
    return 10.0 * std::max(std::abs(c.prevertices.front()), c.prevertices.back());
}

void finalize_chart(SCChart& c) {
    int n = c.size();
    PrevertexProduct f{c.prevertices, c.exponents};
    std::vector<Complex> V(n, Complex(0.0, 0.0));
    for (int i = 0; i + 1 < n; ++i) V[i + 1] = V[i] + side_integral(f, i);

    Complex i01 = V[1] - V[0];
    c.multiplier = (c.target.vertices[1] - c.target.vertices[0]) / i01;
    c.offset = c.target.vertices[0];
    c.vertex_values.resize(n);
    for (int i = 0; i < n; ++i) c.vertex_values[i] = c.offset + c.multiplier * V[i];
    c.f_infinity = c.offset + c.multiplier * (V[n - 1] + tail_integral(c.prevertices, c.exponents));
    c.diameter = c.target.diameter();
}

double vertex_reproduction_error(const SCChart& c) {
    double m = 0.0;
    for (int i = 0; i < c.size(); ++i)
        m = std::max(m, std::abs(c.vertex_values[i] - c.target.vertices[i]));
    return m;
}

std::vector<double> build_prevertices(double inv_k, const std::vector<double>& gaps) {
    std::vector<double> a = {-inv_k, -1.0, 1.0};
    for (double g : gaps) a.push_back(a.back() + g);
    return a;
}

} // namespace

SCChart solve_parameters(const Polygon& p_in, double k, int pivot, SolveReport* report) {
    EllipticModulus::from_k(k); // validates the range
    Polygon p = p_in.rotated(pivot);
    int n = p.size();

    SCChart c;
    c.target = p;
    c.pivot = p_in.mod_index(pivot);
    c.k = k;
    c.exponents.resize(n);
    for (int i = 0; i < n; ++i) c.exponents[i] = p.alphas[i] - 1.0;

    double inv_k = 1.0 / k;
    int unknowns = n - 3;

    std::vector<double> lengths(n); // side i joins vertex i and i+1
    for (int i = 0; i < n; ++i) lengths[i] = std::abs(p.vertex(i + 1) - p.vertex(i));

    if (unknowns == 0) {
        c.prevertices = build_prevertices(inv_k, {});
        finalize_chart(c);
        if (report) {
            report->residual = 0.0;
            report->vertex_error = vertex_reproduction_error(c);
        }
        double err = vertex_reproduction_error(c);
        if (err > 1e-6 * c.diameter)
            throw std::runtime_error("triangle chart failed vertex reproduction: err = " +
                                     std::to_string(err));
        return c;
    }

    // residual: side-length ratios |I_i|/|I_1| vs polygon ratios, sides 2..n-2
    auto residual = [&](const Eigen::VectorXd& t, Eigen::VectorXd& r) -> bool {
        std::vector<double> gaps(unknowns);
        for (int j = 0; j < unknowns; ++j) {
            if (t[j] > 60.0 || t[j] < -60.0) return false;
            gaps[j] = std::exp(t[j]);
        }
        std::vector<double> a = build_prevertices(inv_k, gaps);
        PrevertexProduct f{a, c.exponents};
        double base = std::abs(side_integral(f, 1));
        if (!(base > 0.0) || !std::isfinite(base)) return false;
        for (int i = 2; i <= n - 2; ++i) {
            double ratio = std::abs(side_integral(f, i)) / base;
            if (!std::isfinite(ratio)) return false;
            r[i - 2] = ratio - lengths[i] / lengths[1];
        }
        return true;
    };

    std::vector<double> spreads = {inv_k + 1.0, 2.0 * inv_k, 1.0 + 0.5 * (inv_k - 1.0),
                                   4.0 * inv_k, 1.5, 16.0};
    Eigen::VectorXd t(unknowns), r(unknowns), r_new(unknowns);
    bool converged = false;
    int restarts = 0, iterations = 0;
    double rnorm = 0.0;

    for (double spread : spreads) {
        for (int j = 0; j < unknowns; ++j) t[j] = std::log((spread - 1.0) / unknowns);
        if (!residual(t, r)) {
            ++restarts;
            continue;
        }
        rnorm = r.lpNorm<Eigen::Infinity>();
        bool failed = false;
        for (int it = 0; it < defaults::sc_solver_max_iter && !failed; ++it) {
            ++iterations;
            if (rnorm < defaults::sc_solver_tol) {
                converged = true;
                break;
            }
            // central-difference Jacobian
            Eigen::MatrixXd J(unknowns, unknowns);
            const double h = 1e-6;
            Eigen::VectorXd tp = t, rp(unknowns), rm(unknowns);
            for (int j = 0; j < unknowns; ++j) {
                tp[j] = t[j] + h;
                bool okp = residual(tp, rp);
                tp[j] = t[j] - h;
                bool okm = residual(tp, rm);
                tp[j] = t[j];
                if (!okp || !okm) {
                    failed = true;
                    break;
                }
                J.col(j) = (rp - rm) / (2.0 * h);
            }
            if (failed) break;
            Eigen::VectorXd step = J.fullPivLu().solve(-r);
            if (!step.allFinite()) {
                failed = true;
                break;
            }
            // backtracking line search on the infinity norm
            double lambda = 1.0;
            bool accepted = false;
            for (int ls = 0; ls < 14; ++ls, lambda *= 0.5) {
                Eigen::VectorXd tn = t + lambda * step;
                if (!residual(tn, r_new)) continue;
                double rn = r_new.lpNorm<Eigen::Infinity>();
                if (rn < rnorm * (1.0 - 0.25 * lambda) || rn < defaults::sc_solver_tol) {
                    t = tn;
                    r = r_new;
                    rnorm = rn;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) failed = true;
        }
        if (converged || rnorm < defaults::sc_solver_tol) {
            converged = true;
            break;
        }
        ++restarts;
    }

    if (!converged) {
        std::ostringstream os;
        os << "sc parameter solve did not converge; residual = [";
        for (int i = 0; i < unknowns; ++i) os << (i ? ", " : "") << r[i];
        os << "]";
        throw std::runtime_error(os.str());
    }

    std::vector<double> gaps(unknowns);
    for (int j = 0; j < unknowns; ++j) gaps[j] = std::exp(t[j]);
    c.prevertices = build_prevertices(inv_k, gaps);

    for (int i = 0; i + 1 < n; ++i)
        if (c.prevertices[i + 1] - c.prevertices[i] < defaults::sc_crowding_gap)
            throw std::runtime_error(
                "prevertex crowding detected (gap < 1e-12); try a different pivot or k");

    finalize_chart(c);
    double err = vertex_reproduction_error(c);
    if (report) {
        report->iterations = iterations;
        report->restarts = restarts;
        report->residual = rnorm;
        report->vertex_error = err;
    }
    if (err > 1e-6 * c.diameter)
        throw std::runtime_error("chart failed vertex reproduction: err = " + std::to_string(err));
    return c;
}

Complex sc_derivative(const SCChart& c, Complex eta) {
    PrevertexProduct f{c.prevertices, c.exponents};
    return c.multiplier * f.eval(eta);
}

Complex eval_halfplane_to_polygon(const SCChart& c, Complex eta) {
    if (eta.imag() < 0.0) throw std::domain_error("eta below the real axis");
    eta = fix_imag(eta);
    int n = c.size();

    for (int i = 0; i < n; ++i)
        if (std::abs(eta - c.prevertices[i]) < 1e-12 * std::max(1.0, std::abs(c.prevertices[i])))
            return c.vertex_values[i];

    if (std::abs(eta) > far_radius(c)) {
        InvertedProduct g{c.prevertices, c.exponents};
        Complex tail = integrate_path(g, Complex(0.0, 0.0), 1.0 / eta, -1);
        return c.f_infinity - c.multiplier * tail;
    }

    int m = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(eta - c.prevertices[i]) < std::abs(eta - c.prevertices[m])) m = i;

    PrevertexProduct f{c.prevertices, c.exponents};
    Complex seg = integrate_from_prevertex(f, m, eta);
    return c.vertex_values[m] + c.multiplier * seg;
}

Complex eval_halfplane_to_polygon(const SCChart& c, Complex eta, int anchor) {
    if (eta.imag() < 0.0) throw std::domain_error("eta below the real axis");
    eta = fix_imag(eta);
    anchor = ((anchor % c.size()) + c.size()) % c.size();
    PrevertexProduct f{c.prevertices, c.exponents};
    Complex seg = integrate_from_prevertex(f, anchor, eta);
    return c.vertex_values[anchor] + c.multiplier * seg;
}

Complex invert_polygon_map(const SCChart& c, Complex z) {
    if (!c.target.contains(z)) throw std::invalid_argument("inversion target not interior");
    if (c.target.vertex_distance(z) < defaults::vertex_exclusion_rel * c.diameter)
        throw std::invalid_argument("inversion refused inside the vertex-exclusion radius");

    const double tol = defaults::inversion_tol_rel * c.diameter;
    const Complex anchors[] = {Complex(0, 1), Complex(0, 2), Complex(0, 0.5), Complex(0.8, 1.2),
                               Complex(-0.8, 1.2), Complex(0, 5)};

    double best_res = std::numeric_limits<double>::infinity();
    for (Complex eta0 : anchors) {
        for (int steps : {24, 96}) {
            Complex za = eval_halfplane_to_polygon(c, eta0);
            // ODE continuation: d eta / dz = 1 / f'(eta) along the chord za -> z
            Complex eta = eta0;
            Complex dz = (z - za) / static_cast<double>(steps);
            bool bad = false;
            for (int s = 0; s < steps && !bad; ++s) {
                auto rhs = [&](Complex e) -> Complex {
                    Complex d = sc_derivative(c, e);
                    if (std::abs(d) < 1e-300) {
                        bad = true;
                        return Complex(0, 0);
                    }
                    return 1.0 / d;
                };
                Complex k1 = rhs(eta);
                Complex k2 = rhs(eta + 0.5 * dz * k1);
                Complex k3 = rhs(eta + 0.5 * dz * k2);
                Complex k4 = rhs(eta + dz * k3);
                eta += dz * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
                if (!(eta.imag() > 0.0) || !std::isfinite(eta.real())) bad = true;
            }
            if (bad) continue;

            // damped Newton polish
            for (int it = 0; it < 60; ++it) {
                Complex res = eval_halfplane_to_polygon(c, eta) - z;
                best_res = std::min(best_res, std::abs(res));
                if (std::abs(res) < tol) return eta;
                Complex step = res / sc_derivative(c, eta);
                Complex next = eta - step;
                int halvings = 0;
                while (next.imag() <= 0.0 && halvings++ < 50) {
                    step *= 0.5;
                    next = eta - step;
                }
                if (halvings >= 50) break;
                eta = next;
            }
        }
    }
    throw std::runtime_error("map inversion failed; best residual = " + std::to_string(best_res));
}

double boundary_preimage(const SCChart& c, int edge, Complex z) {
    int n = c.size();
    edge = ((edge % n) + n) % n;
    Complex A = c.target.vertices[edge], B = c.target.vertices[(edge + 1) % n];
    Complex tdir = normalized(B - A);
    if (std::abs(cross(tdir, z - A)) > 1e-6 * c.diameter)
        throw std::invalid_argument("point is not on the requested edge");
    double target = dot(z - A, tdir);

    auto pos = [&](double eta) { return dot(eval_halfplane_to_polygon(c, Complex(eta, 0.0)) - A, tdir); };

    if (edge < n - 1) {
        double lo = c.prevertices[edge], hi = c.prevertices[edge + 1];
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            double mid = 0.5 * (lo + hi);
            (pos(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // wrap side through eta = infinity, handled in s = 1/eta
    double at_inf = dot(c.f_infinity - A, tdir);
    auto pos_s = [&](double s) {
        return dot(eval_halfplane_to_polygon(c, Complex(1.0 / s, 0.0)) - A, tdir);
    };
    if (target <= at_inf) {
        // between vertex n-1 (s = 1/a_{n-1}) and infinity (s -> 0+); pos decreases in s
        double lo = 1e-14 / std::max(1.0, c.prevertices[n - 1]); // ~infinity
        double hi = 1.0 / c.prevertices[n - 1];
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (pos_s(mid) < target ? hi : lo) = mid;
        }
        return 1.0 / (0.5 * (lo + hi));
    }
    // between infinity (s -> 0-) and vertex 0 (s = 1/a_0 < 0); pos increases away from 0
    double lo = 1.0 / c.prevertices[0]; // negative
    double hi = -1e-14 / std::max(1.0, -c.prevertices[0]);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (pos_s(mid) < target ? hi : lo) = mid;
    }
    return 1.0 / (0.5 * (lo + hi));
}

RectangleChart RectangleChart::from_modulus(const EllipticModulus& m) {
    RectangleChart r{m,
                     {Complex(-m.a, m.b), Complex(-m.a, 0.0), Complex(m.a, 0.0), Complex(m.a, m.b)}};
    return r;
}

Complex ConformalChart::forward(Complex z) const {
    return incomplete_F(invert_polygon_map(sc, z), modulus);
}

Complex ConformalChart::inverse(Complex w) const {
    SnValue s = jacobi_sn(w, modulus);
    if (s.at_pole) return sc.f_infinity;
    return eval_halfplane_to_polygon(sc, s.sn);
}

Complex ConformalChart::dw_dz(Complex z) const {
    Complex eta = invert_polygon_map(sc, z);
    return dF_deta(eta, modulus) / sc_derivative(sc, eta);
}

Complex ConformalChart::dz_dw(Complex w) const {
    SnValue s = jacobi_sn(w, modulus);
    if (s.at_pole) return -sc.multiplier * modulus.k; // limit through the pole
    return sc_derivative(sc, s.sn) * s.cn * s.dn;
}

Complex ConformalChart::forward_boundary(int edge, Complex z) const {
    double eta = boundary_preimage(sc, rotated_edge(edge), z);
    return incomplete_F(Complex(eta, 0.0), modulus);
}

ConformalChart build_chart(const Polygon& p, double k, int pivot) {
    ConformalChart cc;
    cc.original = p;
    cc.modulus = EllipticModulus::from_k(k);
    cc.sc = solve_parameters(p, k, pivot);

    // side-placement rule check for the accessory vertices
    const auto& m = cc.modulus;
    for (int i = 3; i < cc.sc.size(); ++i) {
        double ai = cc.sc.prevertices[i];
        if (std::abs(ai - m.inv_k()) < 1e-6) continue; // vertex image at corner R4
        Complex w = incomplete_F(Complex(ai, 0.0), m);
        bool ok = ai < m.inv_k() ? std::abs(w.real() - m.a) < 1e-9
                                 : std::abs(w.imag() - m.b) < 1e-9;
        if (!ok)
            throw std::runtime_error("side-placement rule violated for vertex " +
                                     std::to_string(i));
    }
    return cc;
}

} // namespace optorus
