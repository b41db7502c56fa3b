#ifndef QCABLE_ASYMPTOTICS_HPP
#define QCABLE_ASYMPTOTICS_HPP

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcable/blocks.hpp"
#include "qcable/cable.hpp"
#include "qcable/invariant.hpp"
#include "qcable/real.hpp"

namespace qcable {

// ---------------------------------------------------------------------------
// Lobachevsky function L(x) = -int_0^x log|2 sin u| du. Odd, pi-periodic.
//
// Primary evaluation resums the sine series (1/2) sum_n sin(2nx)/n^2 in the
// closed zeta form
//   L(x) = Cl2(theta)/2,  theta = 2x,
//   Cl2(theta) = theta - theta log theta
//              + sum_{n>=1} zeta(2n) theta^{2n+1} / (n (2n+1) (2pi)^{2n}),
// after reducing theta into [0, pi]; successive terms shrink by at least
// (theta/2pi)^2 <= 1/4. Truncation: stop once the term drops under
// 2^{-prec-8}; the geometric tail is below the last term.

namespace detail {

// zeta(2n) cache per working precision
inline const Real& zeta_even(unsigned long n, Prec wp) {
    thread_local std::map<Prec, std::vector<Real>> cache;
    auto& v = cache[wp];
    while (v.size() <= n) v.push_back(Real::zeta_ui(2 * v.size(), wp));
    return v[n];
}

inline Real clausen2(const Real& theta, Prec wp, Prec prec) {
    if (theta.is_zero()) return Real(prec);
    Real two_pi = ldexp2(Real::pi(wp), 1);
    Real r = theta / two_pi;
    r *= r;
    Real sum = theta - theta * log(theta);
    Real cur = theta * r;  // theta^{2n+1} / (2pi)^{2n} at n = 1
    const Real cutoff = Real::pow2(-static_cast<long>(prec) - 8, wp);
    for (unsigned long n = 1;; ++n) {
        Real term = zeta_even(n, wp) * cur / static_cast<long>(n * (2 * n + 1));
        sum += term;
        if (abs(term) < cutoff) break;
        cur *= r;
        if (n > 4 * static_cast<unsigned long>(prec)) break;  // cannot happen for theta <= pi
    }
    return Real::at_prec(sum, prec);
}

}  // namespace detail

inline Real lobachevsky(const Real& x, Prec prec) {
    const Prec wp = prec + 32;
    Real pi = Real::pi(wp);
    Real xr = Real::at_prec(x, wp);
    xr -= pi * round(xr / pi);  // now |xr| <= pi/2
    int sign = xr.sign();
    if (sign == 0) return Real(prec);
    Real theta = ldexp2(abs(xr), 1);
    Real v = detail::clausen2(theta, wp, prec);
    v = ldexp2(v, -1);
    return sign < 0 ? -v : v;
}

inline Real lobachevsky(double x, Prec prec) { return lobachevsky(Real(x, prec), prec); }

// ---------------------------------------------------------------------------
// Independent cross-checks for L.

namespace detail {

// Romberg integration of a smooth real integrand on [a,b]
inline Real romberg(const std::function<Real(const Real&)>& g, const Real& a, const Real& b,
                    Prec wp, const Real& tol, int max_level = 20) {
    std::vector<std::vector<Real>> T;
    Real h = b - a;
    Real t0 = ldexp2((g(a) + g(b)) * h, -1);
    T.push_back({t0});
    for (int k = 1; k <= max_level; ++k) {
        // refine the trapezoid with 2^{k-1} new midpoints
        long pts = 1L << (k - 1);
        Real hk = ldexp2(h, -k);
        Real s(wp);
        for (long i = 0; i < pts; ++i) {
            Real u = a + hk * (2 * i + 1);
            s += g(u);
        }
        std::vector<Real> row;
        row.push_back(ldexp2(T.back()[0], -1) + hk * s);
        long p4 = 1;
        for (int i = 1; i <= k; ++i) {
            p4 *= 4;
            Real num = row[i - 1] * p4 - T.back()[i - 1];
            row.push_back(num / (p4 - 1));
        }
        Real err = abs(row.back() - T.back().back());
        bool done = k >= 4 && err < tol;
        T.push_back(std::move(row));
        if (done) break;
    }
    return T.back().back();
}

}  // namespace detail

// Quadrature of the defining integral. The log singularity at 0 is split off
// exactly: L(x) = x - x log(2x) - int_0^x log(sin u / u) du for x in (0, pi/2].
inline Real lobachevsky_integral(const Real& x, Prec prec) {
    const Prec wp = prec + 24;
    Real pi = Real::pi(wp);
    Real xr = Real::at_prec(x, wp);
    // reduction independent of the series path
    Real k = floor(xr / pi + Real(0.5, wp));
    xr -= pi * k;
    int sign = xr.sign();
    if (sign == 0) return Real(prec);
    Real ax = abs(xr);
    auto g = [&](const Real& u) {
        if (u.is_zero()) return Real(wp);
        return log(sin(u) / u);
    };
    Real tol = Real::pow2(-static_cast<long>(prec) - 6, wp);
    Real integral = detail::romberg(g, Real(wp), ax, wp, tol);
    Real v = ax - ax * log(ldexp2(ax, 1)) - integral;
    v = Real::at_prec(v, prec);
    return sign < 0 ? -v : v;
}

// Raw partial sum of the sine series with its 1/(2M) tail bound.
inline std::pair<Real, Real> lobachevsky_fourier_partial(const Real& x, long M, Prec prec) {
    Real sum(prec);
    Real two_x = ldexp2(Real::at_prec(x, prec), 1);
    for (long n = 1; n <= M; ++n) {
        sum += sin(two_x * n) / (n * n);
    }
    return {ldexp2(sum, -1), Real(1L, prec) / (2 * M)};
}

// ---------------------------------------------------------------------------
// Potential f(x,y) = -L(y-x) - L(x+y) on pi >= y >= x >= 0, x+y <= pi.

inline Real f_potential(const Real& x, const Real& y, Prec prec) {
    return -lobachevsky(y - x, prec) - lobachevsky(y + x, prec);
}

struct PotentialMax {
    Real x, y, value;
    Real hessian_scale;  // s in f(h,y*+k) = f* - s (h^2+k^2) + ...
};

// Coarse grid plus parabolic refinement; the maximum sits on the x = 0 edge
// and f is even in x, so the one-dimensional vertex steps stay valid there.
inline PotentialMax find_max_f(Prec prec) {
    const Prec wp = std::max<Prec>(prec, 96);
    Real pi = Real::pi(wp);
    const int G = 60;
    Real best_x(wp), best_y(wp), best_v(-1e9, wp);
    for (int i = 0; i <= G; ++i) {
        for (int j = i; j <= G; ++j) {
            if (i + j > G) continue;
            Real x = pi * i / G, y = pi * j / G;
            Real v = f_potential(x, y, wp);
            if (v > best_v) {
                best_v = v;
                best_x = x;
                best_y = y;
            }
        }
    }
    Real h = pi / G;
    for (int it = 0; it < 40 && !(h < Real::pow2(-static_cast<long>(prec) * 3 / 4, wp));
         ++it) {
        // parabola vertex through (t-h, t, t+h), one coordinate at a time
        auto vertex = [&](auto&& eval, const Real& t) {
            Real fm = eval(t - h), f0 = eval(t), fp = eval(t + h);
            Real den = fm - ldexp2(f0, 1) + fp;
            if (den.sign() >= 0) return t;  // flat or wrong curvature: keep
            Real step = ldexp2(h * (fm - fp) / den, -1);
            return t + step;
        };
        best_x = vertex([&](const Real& t) { return f_potential(t, best_y, wp); }, best_x);
        if (best_x.sign() < 0) best_x = -best_x;  // f even in x
        best_y = vertex([&](const Real& t) { return f_potential(best_x, t, wp); }, best_y);
        h = ldexp2(h, -2);
    }
    PotentialMax out{Real::at_prec(best_x, prec), Real::at_prec(best_y, prec),
                     Real::at_prec(f_potential(best_x, best_y, wp), prec), Real(prec)};
    // central second differences at the stated step 1e-3
    Real hh(1e-3, wp);
    Real f0 = f_potential(best_x, best_y, wp);
    Real sx = -(f_potential(best_x + hh, best_y, wp) + f_potential(best_x - hh, best_y, wp) -
                ldexp2(f0, 1));
    Real sy = -(f_potential(best_x, best_y + hh, wp) + f_potential(best_x, best_y - hh, wp) -
                ldexp2(f0, 1));
    Real scale = ldexp2((sx + sy) / (hh * hh), -2);
    out.hessian_scale = Real::at_prec(scale, prec);
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian constant C = (1/2) int_{R^2} exp(pi i m x^2/4 - pi sqrt3 (x^2+y^2)).
// Separates into two one-dimensional Gaussians; the closed form uses
// principal square roots (both quadratic coefficients have positive real
// part), the quadrature route integrates a truncated domain.

enum class GaussMethod { ClosedForm, Quadrature };

inline Complex gaussian_constant(long m, Prec prec, GaussMethod method = GaussMethod::ClosedForm) {
    const Prec wp = prec + 16;
    Real pi = Real::pi(wp);
    Real s3 = sqrt(Real(3L, wp));
    if (method == GaussMethod::ClosedForm) {
        // C = (1/2) 3^{-1/4} (sqrt3 - i m/4)^{-1/2}
        Complex a(s3, Real(-m, wp) / 4L);
        Complex inv_root = Complex::one(wp) / sqrt(a);
        Real pref = ldexp2(Real(1L, wp) / sqrt(s3), -1);
        Complex c = inv_root * pref;
        return Complex(Real::at_prec(c.re(), prec), Real::at_prec(c.im(), prec));
    }
    // truncated quadrature; exp(-pi sqrt3 R^2) is negligible at R = 6
    Real R(6L, wp);
    Real tol = Real::pow2(-std::min<long>(prec, 120) - 8, wp);
    auto iy = detail::romberg([&](const Real& y) { return exp(-(pi * s3) * y * y); },
                              Real(wp), R, wp, tol);
    iy = ldexp2(iy, 1);  // even integrand
    auto ix_re = detail::romberg(
        [&](const Real& x) {
            Real x2 = x * x;
            return exp(-(pi * s3) * x2) * cos(pi * x2 * m / 4L);
        },
        Real(wp), R, wp, tol);
    auto ix_im = detail::romberg(
        [&](const Real& x) {
            Real x2 = x * x;
            return exp(-(pi * s3) * x2) * sin(pi * x2 * m / 4L);
        },
        Real(wp), R, wp, tol);
    Complex ix(ldexp2(ix_re, 1), ldexp2(ix_im, 1));
    Complex c = ix * iy;
    return Complex(Real::at_prec(ldexp2(c.re(), -1), prec),
                   Real::at_prec(ldexp2(c.im(), -1), prec));
}

// ---------------------------------------------------------------------------
// Parity factor beta + gamma + 2(-1)^{N-1} with
// beta = exp(pi i m(N+2)/4), gamma = exp(pi i m(N-2)/4).
// Exact over Z[omega], omega = exp(pi i/4), omega^4 = -1; zero is decided on
// the integer coordinates, never numerically.

struct ParityFactor {
    std::array<long, 4> coords{};  // coefficients on 1, omega, omega^2, omega^3
    bool is_zero = true;

    Complex value(Prec prec) const {
        Real pi = Real::pi(prec);
        Complex acc = Complex::zero(prec);
        for (int k = 0; k < 4; ++k) {
            if (coords[k] == 0) continue;
            acc += Complex::from_angle(pi * k / 4L) * Real(coords[k], prec);
        }
        return acc;
    }
    Real abs_value(Prec prec) const { return abs(value(prec)); }
};

inline ParityFactor beta_gamma_classify(long m, int N) {
    ParityFactor f;
    auto add_omega_pow = [&f](long a, long c) {
        long r = ((a % 8) + 8) % 8;
        if (r < 4) f.coords[r] += c;
        else f.coords[r - 4] -= c;
    };
    add_omega_pow(m * (static_cast<long>(N) + 2), 1);  // beta = omega^{m(N+2)}
    add_omega_pow(m * (static_cast<long>(N) - 2), 1);  // gamma
    f.coords[0] += (N % 2 == 0) ? -2 : 2;              // 2(-1)^{N-1}
    f.is_zero = f.coords[0] == 0 && f.coords[1] == 0 && f.coords[2] == 0 && f.coords[3] == 0;
    return f;
}

// ---------------------------------------------------------------------------
// Leading-order model of <E^{(m,2)}>_N.

struct AsymptoticPrediction {
    long m = 0;
    int N = 0;
    ParityFactor parity;
    Complex parity_factor;
    Complex C_const;
    Real E_leading;
    long l_star = 0;
    Complex predicted_value;
    double alpha = 0.55;
};

inline AsymptoticPrediction predict_leading(long m, int N, Prec prec, double alpha = 0.55) {
    if (N < 6) throw std::domain_error("predict_leading: needs N >= 6");
    AsymptoticPrediction out;
    out.m = m;
    out.N = N;
    out.alpha = alpha;
    out.parity = beta_gamma_classify(m, N);
    out.parity_factor = out.parity.value(prec);
    out.C_const = gaussian_constant(m, prec);
    out.l_star = (5L * N + 3) / 6;  // round(5N/6)
    RootContext ctx(N, prec);
    out.E_leading = E_eval(ctx, 0, out.l_star);
    // delta^{(3N-2)m} a_N^m = x0^{m(3-2N-N^2)}
    Complex pref = ctx.root_pow(m * (3L - 2L * N - static_cast<long>(N) * N));
    Complex v = pref * out.parity_factor * out.C_const;
    v = v * out.E_leading * Real(N, prec);
    out.predicted_value = Complex(ldexp2(v.re(), -1), ldexp2(v.im(), -1));
    return out;
}

// ---------------------------------------------------------------------------
// Growth-rate extraction against the volume 4 L(pi/6).

struct GrowthRecord {
    int N = 0;
    Real exact_log_abs;
    Real rate;  // 2 pi log|value| / N
    Real predicted_log_abs;
    Real residual;
    bool flagged_zero = false;
    bool has_prediction = false;
};

inline std::vector<GrowthRecord> growth_rate(
    const std::vector<std::pair<int, CableInvariantResult>>& values, long m, Prec prec,
    double alpha = 0.55) {
    std::vector<GrowthRecord> out;
    Real two_pi = ldexp2(Real::pi(prec), 1);
    for (const auto& [N, res] : values) {
        GrowthRecord rec;
        rec.N = N;
        rec.exact_log_abs = Real(prec);
        rec.rate = Real(prec);
        rec.predicted_log_abs = Real(prec);
        rec.residual = Real(prec);
        if (res.declared_zero || abs(res.value).is_zero()) {
            rec.flagged_zero = true;
            out.push_back(std::move(rec));
            continue;
        }
        rec.exact_log_abs = log(abs(res.value));
        rec.rate = two_pi * rec.exact_log_abs / N;
        if (N >= 6) {
            AsymptoticPrediction p = predict_leading(m, N, prec, alpha);
            if (!p.parity.is_zero) {
                rec.predicted_log_abs = log(abs(p.predicted_value));
                rec.residual = rec.exact_log_abs - rec.predicted_log_abs;
                rec.has_prediction = true;
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

inline Real fig8_volume(Prec prec) {
    Real pi = Real::pi(prec + 8);
    return Real::at_prec(lobachevsky(pi / 6L, prec + 8) * 4L, prec);
}

// -sum_{j<=n} log(2 sin(j pi/N)) for n = 0..N-1, one sweep
inline std::vector<Real> s_n_prefix(int N, Prec prec) {
    RootContext ctx(N, prec);
    std::vector<Real> out;
    out.reserve(N);
    Real acc(prec);
    out.push_back(acc);
    for (int j = 1; j <= N - 1; ++j) {
        acc -= log(ldexp2(ctx.sin_table[j], 1));
        out.push_back(acc);
    }
    return out;
}

}  // namespace qcable

#endif
