#include "optorus/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "optorus/defaults.hpp"
#include "optorus/quadrature.hpp"

namespace optorus {

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

double complete_K(double k) {
    if (k < 0.0 || k >= 1.0) throw std::domain_error("complete_K: need 0 <= k < 1");
    double kp = std::sqrt((1.0 - k) * (1.0 + k));
    return std::numbers::pi / (2.0 * agm(1.0, kp));
}

EllipticModulus EllipticModulus::from_k(double k) {
    if (k < defaults::k_min || k > defaults::k_max)
        throw std::domain_error("modulus k outside admissible range [1e-6, 1-1e-6]");
    EllipticModulus m;
    m.k = k;
    m.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
    m.a = complete_K(k);
    m.b = complete_K(m.k_prime);
    return m;
}

SnCnDnReal jacobi_sncndn_real(double u, double k) {
    // descending Landen / AGM recursion (stops when c_n ~ sqrt(eps), the
    // remaining error is O(c_n^2))
    double emc = (1.0 - k) * (1.0 + k);
    SnCnDnReal r;
    if (emc == 0.0) {
        r.cn = r.dn = 1.0 / std::cosh(u);
        r.sn = std::tanh(u);
        return r;
    }
    if (k == 0.0) {
        r.sn = std::sin(u);
        r.cn = std::cos(u);
        r.dn = 1.0;
        return r;
    }
    constexpr double CA = 1.0e-8;
    double em[16], en[16];
    double a = 1.0, c = 0.0;
    r.dn = 1.0;
    int l = 0;
    for (int i = 0; i < 16; ++i) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= CA * a) break;
        emc *= a;
        a = c;
    }
    double phi = c * u;
    r.sn = std::sin(phi);
    r.cn = std::cos(phi);
    if (r.sn != 0.0) {
        a = r.cn / r.sn;
        c *= a;
        for (int i = l; i >= 0; --i) {
            double b = em[i];
            a *= c;
            c *= r.dn;
            r.dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        r.sn = (r.sn >= 0.0) ? a : -a;
        r.cn = c * r.sn;
    }
    return r;
}

namespace {

// A&S 16.21: sn/cn/dn of u+iv from real functions at moduli k and k'.
SnValue sncndn_addition(double u, double v, const EllipticModulus& m) {
    SnCnDnReal r = jacobi_sncndn_real(u, m.k);
    SnCnDnReal i = jacobi_sncndn_real(v, m.k_prime);
    double k2 = m.k * m.k;
    double den = i.cn * i.cn + k2 * r.sn * r.sn * i.sn * i.sn;
    SnValue out;
    out.sn = Complex(r.sn * i.dn, r.cn * r.dn * i.sn * i.cn) / den;
    out.cn = Complex(r.cn * i.cn, -r.sn * r.dn * i.sn * i.dn) / den;
    out.dn = Complex(r.dn * i.cn * i.dn, -k2 * r.sn * r.cn * i.sn) / den;
    return out;
}

double wrap_to(double x, double period) { return x - period * std::round(x / period); }

} // namespace

SnValue jacobi_sn(Complex w, const EllipticModulus& m) {
    double pu = 4.0 * m.a, pv = 2.0 * m.b;
    double u = wrap_to(w.real(), pu);
    double v = wrap_to(w.imag(), pv);

    // poles sit at i*b and 2a + i*b (mod lattice)
    Complex d1(wrap_to(u, pu), wrap_to(v - m.b, pv));
    Complex d2(wrap_to(u - 2.0 * m.a, pu), wrap_to(v - m.b, pv));
    bool at_second = std::abs(d2) < std::abs(d1);
    Complex delta = at_second ? d2 : d1;
    double dpole = std::abs(delta);

    SnValue out;
    out.near_pole = dpole < defaults::sn_pole_flag_rel * m.b;
    out.at_pole = dpole < 1e-14 * std::max(m.a, m.b);

    if (dpole < 0.4 * std::min(m.a, m.b)) {
        if (out.at_pole) {
            double inf = std::numeric_limits<double>::infinity();
            out.sn = out.cn = out.dn = Complex(inf, inf);
            return out;
        }
        // quarter-period shift: sn(z + i b) = 1/(k sn z), etc.
        SnValue s = sncndn_addition(delta.real(), delta.imag(), m);
        Complex i_unit(0.0, 1.0);
        out.sn = 1.0 / (m.k * s.sn);
        out.cn = -i_unit * s.dn / (m.k * s.sn);
        out.dn = -i_unit * s.cn / s.sn;
        if (at_second) { // extra 2a shift flips sn and cn
            out.sn = -out.sn;
            out.cn = -out.cn;
        }
        return out;
    }

    SnValue s = sncndn_addition(u, v, m);
    out.sn = s.sn;
    out.cn = s.cn;
    out.dn = s.dn;
    return out;
}

namespace {

// F(u; mod) for real u in [0, 1] via the trigonometric substitution, which
// absorbs the (1-t^2)^{-1/2} endpoint singularity exactly.
double F01(double u, double mod) {
    if (u <= 0.0) return 0.0;
    u = std::min(u, 1.0);
    double theta = std::asin(u);
    double m2 = mod * mod;
    return adaptive_gl(
        [m2](double t) {
            double s = std::sin(t);
            return 1.0 / std::sqrt(1.0 - m2 * s * s);
        },
        0.0, theta, 1e-14, 48);
}

// Boundary value F(x + i0^+; k): reduced to F01 in all three ranges.
Complex F_axis(double x, const EllipticModulus& m) {
    double ax = std::abs(x), s = (x >= 0.0) ? 1.0 : -1.0;
    if (ax <= 1.0) return Complex(s * F01(ax, m.k), 0.0);
    if (ax <= m.inv_k()) {
        double arg = std::sqrt((ax - 1.0) * (ax + 1.0)) / (m.k_prime * ax);
        return Complex(s * m.a, F01(arg, m.k_prime));
    }
    return Complex(s * F01(1.0 / (m.k * ax), m.k), m.b);
}

// UHP branch of the integrand of Eq. (8)/(9): principal logs per factor are
// holomorphic in the open upper half-plane and continuous from above.
Complex uhp_integrand(Complex z, double k) {
    Complex one(1.0, 0.0);
    Complex l1 = std::log(one - z * z);
    Complex l2 = std::log(one - (k * k) * z * z);
    return std::exp(-0.5 * (l1 + l2));
}

} // namespace

Complex dF_deta(Complex eta, const EllipticModulus& m) {
    if (eta.imag() < 0.0) throw std::domain_error("dF_deta: eta below the real axis");
    if (eta.imag() == 0.0) eta = Complex(eta.real(), 0.0); // normalize -0.0
    const double bp[4] = {1.0, -1.0, m.inv_k(), -m.inv_k()};
    for (double c : bp)
        if (std::abs(eta - c) < 1e-13) throw std::domain_error("dF_deta: branch point");
    return uhp_integrand(eta, m.k);
}

Complex incomplete_F(Complex eta, const EllipticModulus& m) {
    if (eta.imag() < 0.0) throw std::domain_error("incomplete_F: eta below the real axis");
    double x = eta.real(), y = eta.imag();
    if (y == 0.0) y = 0.0; // fold -0.0

    // branch points map to the exact rectangle corners
    const double bp[4] = {-m.inv_k(), -1.0, 1.0, m.inv_k()};
    const Complex corner[4] = {Complex(-m.a, m.b), Complex(-m.a, 0.0), Complex(m.a, 0.0),
                               Complex(m.a, m.b)};
    for (int i = 0; i < 4; ++i)
        if (std::abs(eta - bp[i]) < 1e-14) return corner[i];

    Complex base = F_axis(x, m);
    if (y == 0.0) return base;

    // vertical leg from x to x+iy; the only near-singularities sit at the
    // start, so panels grow geometrically away from t = 0.
    double d0 = std::numeric_limits<double>::infinity();
    double d_second = std::numeric_limits<double>::infinity();
    for (double c : bp) {
        double d = std::abs(x - c);
        if (d < d0) {
            d_second = d0;
            d0 = d;
        } else {
            d_second = std::min(d_second, d);
        }
    }

    auto f = [&](Complex z) { return uhp_integrand(z, m.k); };
    Complex leg(0.0, 0.0);
    double t = 0.0;

    if (d0 < 1e-13) {
        // leg starts at a branch point: absorb the (z-p)^{-1/2} factor
        double L = std::min(y, 0.5 * d_second);
        Complex p(x, 0.0), q(x, L);
        auto phi = [&](Complex z) { return f(z) * std::sqrt(z - p); };
        leg += segment_power_gl(phi, p, q, -0.5, 32);
        t = L;
    } else {
        double L = std::min(y, d0);
        leg += segment_gl(f, Complex(x, 0.0), Complex(x, L), 32);
        t = L;
    }
    while (t < y) {
        double L = std::min(y - t, t);
        leg += segment_gl(f, Complex(x, t), Complex(x, t + L), 32);
        t += L;
    }
    return base + leg;
}

} // namespace optorus
