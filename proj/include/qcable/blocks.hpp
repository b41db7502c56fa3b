#ifndef QCABLE_BLOCKS_HPP
#define QCABLE_BLOCKS_HPP

#include <stdexcept>
#include <vector>

#include "qcable/laurent.hpp"
#include "qcable/real.hpp"

namespace qcable {

// Evaluation environment at the root q^{1/4} = exp(pi i/2N). The working
// variable is x = q^{1/8}, so x0 = exp(pi i/4N), v = q^{1/2} = x0^4 and
// v^N = -1. Immutable after construction and safe to share.
struct RootContext {
    int N;
    Prec prec;       // nominal precision of the context
    Prec work_prec;  // internal precision with guard bits, so that powers of
                     // x0 up to 8N stay within 2^{-prec+4} of their exact values
    int m;  // cable parameter carried along for t-powers and D
    Real pi;
    Complex x0;
    std::vector<Real> sin_table;  // sin(k pi/N), k = 0..N
    std::vector<Real> cos_table;  // cos(k pi/N), k = 0..N

    RootContext(int N_, Prec prec_, int m_ = 0)
        : N(N_),
          prec(prec_),
          work_prec(prec_ + 64),
          m(m_),
          pi(Real::pi(prec_ + 64)),
          x0(prec_ + 64) {
        if (N < 1) throw std::domain_error("RootContext: N must be positive");
        x0 = Complex::from_angle(pi / (4L * N));
        sin_table.reserve(N + 1);
        cos_table.reserve(N + 1);
        for (int k = 0; k <= N; ++k) {
            if (k == 0) {
                sin_table.emplace_back(0L, work_prec);
                cos_table.emplace_back(1L, work_prec);
            } else if (k == N) {
                sin_table.emplace_back(0L, work_prec);
                cos_table.emplace_back(-1L, work_prec);
            } else {
                Real angle = pi * static_cast<long>(k) / static_cast<long>(N);
                Real s(work_prec), c(work_prec);
                mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
                sin_table.push_back(std::move(s));
                cos_table.push_back(std::move(c));
            }
        }
    }

    // sin(j pi/N) for any integer j, sign via reduction mod 2N
    Real sin_at(long j) const {
        long r = j % (2L * N);
        if (r < 0) r += 2L * N;
        return r <= N ? sin_table[r] : -sin_table[r - N];
    }
    Real cos_at(long j) const {
        long r = j % (2L * N);
        if (r < 0) r += 2L * N;
        return r <= N ? cos_table[r] : -cos_table[r - N];
    }

    // {j} = v^j - v^{-j} = 2 i sin(j pi/N)
    Complex brace(long j) const { return Complex(Real(prec), ldexp2(sin_at(j), 1)); }

    // x0^e with the exponent reduced mod 8N
    Complex root_pow(long e) const {
        long r = e % (8L * N);
        if (r < 0) r += 8L * N;
        return Complex::from_angle(pi * r / (4L * N));
    }

    // t_{j,N}^mm = x0^{mm (2N(N-1-j) + (N+j)^2)}
    Complex t_power(long j, long mm) const {
        long base = 2L * N * (N - 1 - j) + (N + j) * (N + j);
        return root_pow(mm * base);
    }

    // a_N^mm = q^{mm (3-4N^2)/8} = x0^{mm (3-4N^2)}
    Complex a_power(long mm) const { return root_pow(mm * (3L - 4L * N * N)); }
};

// ---------------------------------------------------------------------------
// D(j,l) and its decomposition
//
// Direct definition, as one complex number with real arithmetic underneath:
//   D(j,l) = (v^j+v^{-j}) (P_l + 2{j}^2 T_l) + (mj/2) {j} P_l
//          = 2cos(j pi/N) (P_l - 8 sin^2(j pi/N) T_l)  +  i m j sin(j pi/N) P_l
// where P_l = prod_{k<=l} A(j,k) and T_l = sum_{k<=l} prod_{k'!=k} A(j,k')
// are maintained by T <- T*A + P, P <- P*A, which stays exact through the
// zeros of A. The split pieces follow the piecewise closed forms (the D1
// route deliberately goes through the divisions it cancels in range, so the
// two routes share no arithmetic).

class DRowSweep {
public:
    enum class Mode { Production, Full };

    DRowSweep(const RootContext& ctx, int j, long m, Mode mode = Mode::Production)
        : ctx_(ctx),
          j_(j),
          m_(m),
          mode_(mode),
          min_(std::min<long>(j, ctx.N - j)),
          max_(std::max<long>(j, ctx.N - j)),
          sigma_j_(ctx.sin_at(j)),
          two_cj_(ldexp2(ctx.cos_at(j), 1)),
          eight_sj2_(ldexp2(sigma_j_ * sigma_j_, 3)),
          mj_sigma_(sigma_j_ * (m * static_cast<long>(j))),
          P_(1L, ctx.prec),
          T_(ctx.prec),
          d_re_(ctx.prec),
          d_im_(ctx.prec),
          rho_(ctx.prec),
          invsum_(ctx.prec),
          hint_(ctx.prec) {
        if (j < 0 || j >= ctx.N)
            throw std::domain_error("DRowSweep: j must lie in [0, N-1]");
    }

    // advance to the next l (first call lands on l = 0)
    void step() {
        ++l_;
        const long l = l_;
        if (l == 0) {
            if (mode_ == Mode::Full) {
                if (j_ != 0) {
                    rho_ = ldexp2(sigma_j_, 1);
                    quarter_ = 1;
                } else {
                    rho_ = Real(1L, ctx_.prec);  // S'(0,0) skips the index 0
                    quarter_ = 0;
                }
            }
        } else {
            Real A = ldexp2(ctx_.sin_at(j_ - l) * ctx_.sin_at(j_ + l), 2);
            mpfr_neg(A.raw(), A.raw(), MPFR_RNDN);  // A(j,l) = -4 s_{j-l} s_{j+l}
            T_ = T_ * A + P_;
            P_ *= A;
            if (mode_ == Mode::Full) {
                if (l < min_) invsum_ += Real(1L, ctx_.prec) / A;
                for (long idx : {j_ - l, j_ + l}) {
                    if (idx != 0 && idx != ctx_.N) {
                        rho_ *= ldexp2(ctx_.sin_at(idx), 1);
                        quarter_ = (quarter_ + 1) & 3;
                    }
                }
            }
        }
        Real sub = eight_sj2_ * T_;
        d_re_ = two_cj_ * (P_ - sub);
        d_im_ = mj_sigma_ * P_;
        track(P_);
        track(sub);
        track(d_re_);
        track(d_im_);
    }

    long l() const { return l_; }
    // 0: l < min (D1 range), 1: min <= l < max (D2 range), 2: zero
    int region() const { return l_ < min_ ? 0 : (l_ < max_ ? 1 : 2); }
    bool exhausted() const { return l_ >= max_; }

    const Real& d_re() const { return d_re_; }
    const Real& d_im() const { return d_im_; }
    Complex d_direct() const { return Complex(d_re_, d_im_); }
    // B(j,l) = (v^j+v^{-j})(P + 2{j}^2 T); real at the root
    Complex b_part() const { return Complex(d_re_, Real(ctx_.prec)); }
    const Real& mag_hint() const { return hint_; }

    // rem01 closed form for D1, via the division route (Full mode)
    Complex d1_split() const {
        require_full();
        Complex out = Complex::zero(ctx_.prec);
        if (l_ >= min_) return out;
        // prefactor mj/2 + i w, w = 4 s_{2j} invsum - c_j/s_j
        Real w = ldexp2(ctx_.sin_at(2L * j_), 2) * invsum_ - ctx_.cos_at(j_) / sigma_j_;
        // S(j-l,j+l) = i (-1)^l rho
        Real rs = (l_ % 2 == 0) ? rho_ : -rho_;
        out.re() = -(rs * w);
        out.im() = ldexp2(rs * static_cast<long>(m_ * j_), -1);
        return out;
    }

    // rem01 closed form for D2 = +-2 S'(j-l,j+l) (Full mode)
    Complex d2_split() const {
        require_full();
        Complex out = Complex::zero(ctx_.prec);
        if (region() != 1) return out;
        Real v = ldexp2(rho_, 1);
        if (min_ == ctx_.N - j_) v = -v;  // N-j <= l < j carries the minus sign
        switch (quarter_) {
            case 0: out.re() = v; break;
            case 1: out.im() = v; break;
            case 2: out.re() = -v; break;
            default: out.im() = -v; break;
        }
        return out;
    }

private:
    void require_full() const {
        if (mode_ != Mode::Full)
            throw std::logic_error("DRowSweep: split pieces need Mode::Full");
    }
    void track(const Real& x) {
        if (x.abs_greater(hint_)) {
            hint_ = x;
            mpfr_abs(hint_.raw(), hint_.raw(), MPFR_RNDN);
        }
    }

    const RootContext& ctx_;
    int j_;
    long m_;
    Mode mode_;
    long min_, max_;
    Real sigma_j_, two_cj_, eight_sj2_, mj_sigma_;
    Real P_, T_;
    Real d_re_, d_im_;
    Real rho_;
    int quarter_ = 0;
    Real invsum_;
    Real hint_;
    long l_ = -1;
};

// One-shot helpers (tests and diagnostics; the cable kernel drives
// DRowSweep incrementally instead).

struct BlockValue {
    Complex value;
    Real magnitude_hint;
};

enum class DMode { Direct, SplitD1, SplitD2, BPart };

inline BlockValue d_eval(const RootContext& ctx, int j, int l, long m, DMode mode) {
    if (l < 0 || l >= ctx.N) throw std::domain_error("d_eval: l must lie in [0, N-1]");
    DRowSweep sweep(ctx, j, m, DRowSweep::Mode::Full);
    for (int i = 0; i <= l; ++i) sweep.step();
    BlockValue out{Complex::zero(ctx.prec), sweep.mag_hint()};
    switch (mode) {
        case DMode::Direct: out.value = sweep.d_direct(); break;
        case DMode::SplitD1: out.value = sweep.d1_split(); break;
        case DMode::SplitD2: out.value = sweep.d2_split(); break;
        case DMode::BPart: out.value = sweep.b_part(); break;
    }
    return out;
}

// {j} at the root
inline Complex brace_eval(const RootContext& ctx, long j) { return ctx.brace(j); }

// [j] = {j}/{1}; real at the root
inline BlockValue bracket_eval(const RootContext& ctx, long j) {
    Real v = ctx.sin_at(j) / ctx.sin_at(1);
    return {Complex(v, Real(ctx.prec)), abs(v)};
}

inline BlockValue A_eval(const RootContext& ctx, long j, long k) {
    Real v = ldexp2(ctx.sin_at(j - k) * ctx.sin_at(j + k), 2);
    mpfr_neg(v.raw(), v.raw(), MPFR_RNDN);
    return {Complex(v, Real(ctx.prec)), abs(v)};
}

namespace detail {
// prod of {i} over k <= i <= l, optionally skipping i in {0, N}.
// Empty ranges give 1.
inline BlockValue brace_product(const RootContext& ctx, long k, long l, bool skip_0N) {
    Real rho(1L, ctx.prec);
    int quarter = 0;
    Real hint(1L, ctx.prec);
    for (long i = k; i <= l; ++i) {
        if (skip_0N && (i == 0 || i == ctx.N)) continue;
        rho *= ldexp2(ctx.sin_at(i), 1);
        quarter = (quarter + 1) & 3;
        if (rho.abs_greater(hint)) hint = abs(rho);
    }
    Complex v = Complex::zero(ctx.prec);
    switch (quarter) {
        case 0: v.re() = rho; break;
        case 1: v.im() = rho; break;
        case 2: v.re() = -rho; break;
        default: v.im() = -rho; break;
    }
    return {v, hint};
}
}  // namespace detail

// S(k,l) = prod_{k<=i<=l} {i}
inline BlockValue S_eval(const RootContext& ctx, long k, long l) {
    return detail::brace_product(ctx, k, l, false);
}

// S'(k,l) = prod_{k<=i<=l, i not in {0,N}} {i}
inline BlockValue Sprime_eval(const RootContext& ctx, long k, long l) {
    return detail::brace_product(ctx, k, l, true);
}

// primed product over A(j,k), k = 1..l: sum_i prod_{k != i} A(j,k)
inline BlockValue primed_product_A_eval(const RootContext& ctx, long j, long l) {
    Real P(1L, ctx.prec), T(ctx.prec), hint(1L, ctx.prec);
    for (long k = 1; k <= l; ++k) {
        Real A = ldexp2(ctx.sin_at(j - k) * ctx.sin_at(j + k), 2);
        mpfr_neg(A.raw(), A.raw(), MPFR_RNDN);
        T = T * A + P;
        P *= A;
        if (T.abs_greater(hint)) hint = abs(T);
        if (P.abs_greater(hint)) hint = abs(P);
    }
    return {Complex(T, Real(ctx.prec)), hint};
}

// diagnostic dump of the full (j,l) grid of D values
inline std::string d_grid_csv(int N, long m, Prec prec) {
    RootContext ctx(N, prec, static_cast<int>(m));
    std::string out = "N,m,j,l,re,im,magnitude_hint\n";
    for (int j = 0; j <= N - 1; ++j) {
        DRowSweep sweep(ctx, j, m, DRowSweep::Mode::Production);
        for (int l = 0; l <= N - 1; ++l) {
            sweep.step();
            out += std::to_string(N) + "," + std::to_string(m) + "," + std::to_string(j) +
                   "," + std::to_string(l) + "," + sweep.d_re().str(20) + "," +
                   sweep.d_im().str(20) + "," + sweep.mag_hint().str(12) + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// E and F sine products

// E(j,l) = (prod_{r<=l-j} 2 sin(r pi/N)) (prod_{r<=l+j} 2 sin(r pi/N)),
// for 0 <= j <= l <= N-j
inline Real E_eval(const RootContext& ctx, long j, long l) {
    if (!(0 <= j && j <= l && l <= ctx.N - j))
        throw std::domain_error("E_eval: need 0 <= j <= l <= N-j");
    Real v(1L, ctx.prec);
    for (long r = 1; r <= l - j; ++r) v *= ldexp2(ctx.sin_table[r], 1);
    for (long r = 1; r <= l + j; ++r) v *= ldexp2(ctx.sin_at(r), 1);
    return v;
}

// F(j,l) = (prod_{r<=l+j} 2 sin(r pi/N)) / (prod_{r<=j-l-1} 2 sin(r pi/N)),
// for 0 < l < j < N/2
inline Real F_eval(const RootContext& ctx, long j, long l) {
    if (!(0 < l && l < j && 2 * j < ctx.N))
        throw std::domain_error("F_eval: need 0 < l < j < N/2");
    Real num(1L, ctx.prec), den(1L, ctx.prec);
    for (long r = 1; r <= l + j; ++r) num *= ldexp2(ctx.sin_table[r], 1);
    for (long r = 1; r <= j - l - 1; ++r) den *= ldexp2(ctx.sin_table[r], 1);
    return num / den;
}

// ---------------------------------------------------------------------------
// Exact x-variable constructors (q = x^8, v = x^4)

namespace xvar {

inline ZPoly brace(long j) { return ZPoly::diff_pow(4 * j); }

inline ZPoly bracket(long j) {
    ZPoly p;
    if (j == 0) return p;
    const bool neg = j < 0;
    const long n = neg ? -j : j;
    for (long s = 0; s < n; ++s) p.add_term(4 * (n - 1 - 2 * s), mpz_class(neg ? -1 : 1));
    return p;
}

inline ZPoly A(long j, long k) { return brace(j - k) * brace(j + k); }

inline ZPoly S(long k, long l) {
    ZPoly p = ZPoly::constant(mpz_class(1));
    for (long i = k; i <= l; ++i) p *= brace(i);
    return p;
}

inline ZPoly Sprime(long k, long l, long N) {
    ZPoly p = ZPoly::constant(mpz_class(1));
    for (long i = k; i <= l; ++i) {
        if (i == 0 || i == N) continue;
        p *= brace(i);
    }
    return p;
}

inline ZPoly primed_product_A(long j, long l) {
    ZPoly P = ZPoly::constant(mpz_class(1));
    ZPoly T;
    for (long k = 1; k <= l; ++k) {
        ZPoly Ak = A(j, k);
        T = T * Ak + P;
        P *= Ak;
    }
    return T;
}

// t_{j,N}^m factored as i^quarter * x^{x_exp}; quarter = m(N-1-j) mod 4.
// In every parity-correct cable sum the quarter count is even, so the factor
// is just a sign.
struct TPower {
    long quarter;  // in [0, 4)
    long x_exp;
};

inline TPower t_power(long N, long j, long m) {
    long q = (m % 4) * ((N - 1 - j) % 4) % 4;
    if (q < 0) q += 4;
    return {q, m * (N + j) * (N + j)};
}

// LaurentPoly form with the leftover i encoded as x^{2N}. The encoding is
// faithful only under evaluation at x0; do not differentiate through it.
inline ZPoly t_power_poly(long N, long j, long m) {
    TPower t = t_power(N, j, m);
    long sign = (t.quarter == 2 || t.quarter == 3) ? -1 : 1;
    long extra = (t.quarter % 2) ? 2 * N : 0;
    return ZPoly::monomial(mpz_class(sign), t.x_exp + extra);
}

}  // namespace xvar

}  // namespace qcable

#endif
