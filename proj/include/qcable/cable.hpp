#ifndef QCABLE_CABLE_HPP
#define QCABLE_CABLE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcable/blocks.hpp"
#include "qcable/habiro.hpp"
#include "qcable/invariant.hpp"

namespace qcable {

// Four-way classification of the twist parameter; each class carries its
// color set S_m, the set over which the limit statement is asserted:
//   (i)  m odd              -> all N
//   (ii) m = 0 mod 8        -> odd N
//   (iii) m = 2 mod 4       -> N != 2 mod 4
//   (iv) m = 4 mod 8        -> none
enum class ParityClass { Odd, ZeroMod8, TwoMod4, FourMod8 };

inline ParityClass parity_class(long m) {
    long m8 = ((m % 8) + 8) % 8;
    if (m8 % 2 == 1) return ParityClass::Odd;
    if (m8 == 0) return ParityClass::ZeroMod8;
    if (m8 == 2 || m8 == 6) return ParityClass::TwoMod4;
    return ParityClass::FourMod8;
}

inline const char* s_m_description(ParityClass c) {
    switch (c) {
        case ParityClass::Odd: return "all positive integers";
        case ParityClass::ZeroMod8: return "the odd positive integers";
        case ParityClass::TwoMod4: return "positive integers not congruent to 2 mod 4";
        default: return "the empty set";
    }
}

inline bool in_S_m(long m, int N) {
    switch (parity_class(m)) {
        case ParityClass::Odd: return true;
        case ParityClass::ZeroMod8: return N % 2 == 1;
        case ParityClass::TwoMod4: return N % 4 != 2;
        default: return false;
    }
}

inline Prec default_cable_prec(int N) { return std::max<Prec>(192, 6 * static_cast<Prec>(N)); }

// Region-tagged partial sums of the paired root-of-unity sum (t-weighted and
// coefficient-weighted, before the overall a_N^m prefactor). "lo" is j < N/2.
struct Eq03Components {
    Complex d1_lo, d2_lo, d1_hi, d2_hi, half_j0;
    Real max_term;
    explicit Eq03Components(Prec p)
        : d1_lo(p), d2_lo(p), d1_hi(p), d2_hi(p), half_j0(p), max_term(p) {}
};

namespace detail {

// One pass of the paired sum
//   sum_l C(l;q0) [ sum_{j>=1, N-j+1 even} t_j^me D_me(j,l)
//                   + (N odd) (1/2) t_0^me D_me(0,l) ]
// at the given precision. me = m + framing2 absorbs an integer framing into
// the t-powers and D; the caller applies a_N^m x0^{-framing2}.
inline SumDiag eq03_core(const HabiroKnot& K, long m, int N, Prec prec,
                         Eq03Components* comps) {
    const long me = m + K.framing2();
    RootContext ctx(N, prec, static_cast<int>(m));
    const Complex q0 = ctx.root_pow(8);

    const bool ones = K.constant_one_coeffs();
    std::vector<Complex> C;
    if (!ones) {
        C.reserve(N);
        for (int l = 0; l < N; ++l) C.push_back(eval_at(K.coeff(l), q0, prec).value);
    }

    Real max_term(prec);
    Real hint(1L, prec);
    Complex total = Complex::zero(prec);

    auto sweep_row = [&](int j, bool half) {
        DRowSweep sweep(ctx, j, me, DRowSweep::Mode::Production);
        Complex row = Complex::zero(prec);
        Complex row_d1 = Complex::zero(prec), row_d2 = Complex::zero(prec);
        for (int l = 0; l < N; ++l) {
            sweep.step();
            if (sweep.region() == 2) break;
            Complex term = sweep.d_direct();
            if (!ones) term *= C[static_cast<std::size_t>(l)];
            Real t = abs_l1(term);
            if (half) t = ldexp2(t, -1);
            if (t > max_term) max_term = t;
            if (comps) {
                if (sweep.region() == 0) row_d1 += term;
                else row_d2 += term;
            }
            row += term;
        }
        if (sweep.mag_hint() > hint) hint = sweep.mag_hint();
        Complex tj = ctx.t_power(j, me);
        if (half) tj = Complex(ldexp2(tj.re(), -1), ldexp2(tj.im(), -1));
        if (comps) {
            row_d1 *= tj;
            row_d2 *= tj;
            if (half) {
                comps->half_j0 += row_d1 + row_d2;
            } else if (2 * j < N) {
                comps->d1_lo += row_d1;
                comps->d2_lo += row_d2;
            } else {
                comps->d1_hi += row_d1;
                comps->d2_hi += row_d2;
            }
        }
        total += row * tj;
    };

    if (N % 2 == 1) sweep_row(0, true);
    for (int j = 1; j <= N - 1; ++j)
        if (cable_j_included(N, j)) sweep_row(j, false);

    total *= ctx.a_power(m);
    if (K.framing2() != 0) total *= ctx.root_pow(-K.framing2());
    if (comps) comps->max_term = max_term;
    if (max_term > hint) hint = max_term;
    return {total, max_term, hint};
}

}  // namespace detail

// Production path: Kashaev invariant of the (m,2)-cable through the paired
// sum, with adaptive precision and cancellation diagnostics. Integer framing
// is folded into the t-powers; half-integer framing has no pairing identity
// and is rejected here (the oracle routes accept it).
inline CableInvariantResult kashaev_cable_eq03(const HabiroKnot& K, long m, int N,
                                               PrecPolicy policy = {},
                                               Eq03Components* comps = nullptr) {
    if (N < 1) throw std::domain_error("kashaev_cable_eq03: N must be >= 1");
    if (K.half_integer_framing())
        throw std::domain_error("kashaev_cable_eq03: half-integer framing not supported here");
    Prec initial = policy.initial > 0 ? policy.initial : default_cable_prec(N);
    auto compute = [&](Prec p) {
        return detail::eq03_core(K, m, N, p, nullptr);
    };
    CableInvariantResult r = detail::adaptive_eval(compute, initial, policy.cap_multiplier);
    if (comps) {
        *comps = Eq03Components(r.prec_used);
        detail::eq03_core(K, m, N, r.prec_used, comps);
    }
    r.m = static_cast<int>(m);
    r.N = N;
    r.method = "eq03";
    r.in_sm = in_S_m(m, N);
    return r;
}

// ---------------------------------------------------------------------------
// Independent oracles for <K^{(m,2)}>_N = J_{K^{(m,2)}}(N;q)/[N] at the root.

enum class OracleFlavor { LHopitalExact, NumericLimit };

// cache of exact colored Jones polynomials, keyed by color
class JonesExactCache {
public:
    explicit JonesExactCache(HabiroKnot knot) : knot_(std::move(knot)) {}
    const HabiroKnot& knot() const { return knot_; }
    const ZPoly& get(int n) {
        auto it = by_color_.find(n);
        if (it == by_color_.end())
            it = by_color_.emplace(n, habiro_jones_exact(knot_, n)).first;
        return it->second;
    }

private:
    HabiroKnot knot_;
    std::map<int, ZPoly> by_color_;
};

namespace detail {

inline ZPoly cable_jones_exact_eq10_cached(JonesExactCache& cache, long m, int N) {
    ZPoly total;
    for (long j = 1 - N; j <= N - 1; ++j) {
        if (!cable_j_included(N, j)) continue;
        auto t = xvar::t_power(N, j, m);
        long sign = (t.quarter == 2) ? -1 : 1;
        total += cache.get(static_cast<int>(N + j)).shift(t.x_exp).scale(mpz_class(sign));
    }
    return total.shift(m * (3 - 4 * static_cast<long>(N) * N));
}

}  // namespace detail

// L'Hopital on exact polynomials: P(x) = J_{K^{(m,2)}}(N;q) as an x-variable
// polynomial, Q(x) = [N]; both vanish at x0 and Q has a simple zero there,
// so the invariant is P'(x0)/Q'(x0).
inline CableInvariantResult kashaev_cable_lhopital(const HabiroKnot& K, long m, int N,
                                                   Prec prec = 0,
                                                   JonesExactCache* cache = nullptr) {
    if (N < 1) throw std::domain_error("kashaev_cable_lhopital: N must be >= 1");
    std::optional<JonesExactCache> local;
    if (!cache) {
        local.emplace(K);
        cache = &*local;
    }
    ZPoly P = detail::cable_jones_exact_eq10_cached(*cache, m, N);
    ZPoly Q = xvar::bracket(N);
    const long cb = static_cast<long>(P.coeff_bits());
    Prec pe = std::max<Prec>(prec > 0 ? prec : 256, cb + 8L * N + 128);
    RootContext ctx(N, pe);

    if (N == 1) {
        // [1] = 1: no zero to resolve, evaluate the ratio directly
        CableInvariantResult r;
        r.m = static_cast<int>(m);
        r.N = N;
        r.method = "oracle-lhopital";
        EvalResult pv = eval_at(P, ctx.x0, pe);
        r.value = pv.value;
        r.error_bound = pv.error_bound;
        r.max_term = abs(r.value);
        r.cancellation_ratio = Real(1L, pe);
        r.prec_used = pe;
        r.in_sm = in_S_m(m, N);
        return r;
    }

    EvalResult at_root = eval_at(P, ctx.x0, pe);
    if (abs(at_root.value) > ldexp2(at_root.error_bound, 20) + Real::pow2(-pe / 4, pe))
        throw std::runtime_error("lhopital oracle: numerator does not vanish at the root");

    EvalResult dP = eval_at(P.derivative(), ctx.x0, pe);
    EvalResult dQ = eval_at(Q.derivative(), ctx.x0, pe);
    Real qmag = abs(dQ.value);
    if (!(qmag > ldexp2(dQ.error_bound, 8)))
        throw std::runtime_error("lhopital oracle: [N]' vanishes at the root");

    CableInvariantResult r;
    r.m = static_cast<int>(m);
    r.N = N;
    r.method = "oracle-lhopital";
    r.value = dP.value / dQ.value;
    r.error_bound = (dP.error_bound + abs(r.value) * dQ.error_bound) / qmag;
    r.max_term = abs(r.value);
    r.cancellation_ratio = Real(1L, pe);
    r.prec_used = pe;
    r.in_sm = in_S_m(m, N);
    r.declared_zero = !(abs(dP.value) > ldexp2(dP.error_bound, 8));
    return r;
}

// Numeric limit: evaluate J/[N] at q^{1/4} = exp(pi i (1+eps)/2N) for a
// geometric ladder of eps and Richardson-extrapolate to eps -> 0.
inline CableInvariantResult kashaev_cable_numeric_limit(const HabiroKnot& K, long m, int N,
                                                        Prec prec = 0, int levels = 9,
                                                        long eps_exp0 = -20) {
    if (N < 1) throw std::domain_error("kashaev_cable_numeric_limit: N must be >= 1");
    const Prec pe = std::max<Prec>(prec > 0 ? prec : 0, 384);
    const Real pi = Real::pi(pe);

    auto f_at = [&](long eps_exp) {
        Real eps = Real::pow2(eps_exp, pe);
        Real angle = pi * (Real(1L, pe) + eps) / (4L * N);
        Complex x = Complex::from_angle(angle);
        Complex num = cable_jones_eval(K, m, N, x, CableMethod::Mu);
        Complex v = pow_si(x, 4);
        Complex den = (pow_si(v, N) - pow_si(v, -N)) / (v - pow_si(v, -1));
        return num / den;
    };

    std::vector<std::vector<Complex>> T;
    Real err(pe);
    bool have_err = false;
    for (int k = 0; k < levels; ++k) {
        std::vector<Complex> row;
        row.push_back(f_at(eps_exp0 - k));
        for (int i = 1; i <= k; ++i) {
            // step halving: T[k][i] = (2^i T[k][i-1] - T[k-1][i-1]) / (2^i - 1)
            Complex num(ldexp2(row[i - 1].re(), i) - T[k - 1][i - 1].re(),
                        ldexp2(row[i - 1].im(), i) - T[k - 1][i - 1].im());
            row.push_back(num / Real((1L << i) - 1, pe));
        }
        if (k > 0) {
            err = abs(row.back() - T.back().back());
            have_err = true;
        }
        T.push_back(std::move(row));
    }

    CableInvariantResult r;
    r.m = static_cast<int>(m);
    r.N = N;
    r.method = "oracle-numeric-limit";
    r.value = T.back().back();
    r.error_bound = have_err ? err : Real(pe);
    r.max_term = abs(r.value);
    r.cancellation_ratio = Real(1L, pe);
    r.prec_used = pe;
    r.in_sm = in_S_m(m, N);
    return r;
}

inline CableInvariantResult kashaev_cable_oracle(const HabiroKnot& K, long m, int N,
                                                 Prec prec, OracleFlavor flavor,
                                                 JonesExactCache* cache = nullptr) {
    return flavor == OracleFlavor::LHopitalExact
               ? kashaev_cable_lhopital(K, m, N, prec, cache)
               : kashaev_cable_numeric_limit(K, m, N, prec);
}

// ---------------------------------------------------------------------------
// Closed form for even m on its precondition set:
//   <K^{(m,2)}>_N = q^{m/2} (q^{1/2}-q^{-1/2}) (mN/4)
//                   sum_{j=1}^{N/2} J_{K_{m/2}}(2j-1;q)  at the root,
// valid for (m = 0 mod 4, N even) or (m = 2 mod 4, N = 2 mod 4).

inline bool theorem11_applicable(long m, int N) {
    long m4 = ((m % 4) + 4) % 4;
    if (m4 == 0 && N % 2 == 0) return true;
    if (m4 == 2 && N % 4 == 2) return true;
    return false;
}

inline Complex theorem11_closed_form(const HabiroKnot& K, long m, int N, Prec prec) {
    if (!theorem11_applicable(m, N))
        throw std::domain_error(
            "theorem11_closed_form: needs m=0 mod 4 with N even, or m=2 mod 4 with N=2 mod 4");
    RootContext ctx(N, prec);
    HabiroKnot Kp = K.shifted(m);  // framing += m/2
    Complex sum = Complex::zero(prec);
    for (int j = 1; j <= N / 2; ++j) sum += habiro_jones_eval(Kp, 2 * j - 1, ctx.x0);
    Complex pref = ctx.root_pow(4 * m) * ctx.brace(1);
    return pref * sum * Real(m * static_cast<long>(N) / 4, prec);
}

// ---------------------------------------------------------------------------
// Exact L'Hopital for the pairing identity at one (j,l):
//   (t_j^m [N+j] prod_{k<=l} A(N+j,k) + t_{-j}^m [N-j] prod_{k<=l} A(N-j,k)) / [N]
// evaluated at the root; the constant phase i^{m(N-1-j)} is factored out so
// the polynomial stays in Z[x^{+-1}].
inline Complex eq01_pair_lhopital(int N, int j, int l, long m, Prec prec = 0) {
    if (!(1 <= j && j <= N - 1)) throw std::domain_error("eq01_pair_lhopital: need 1 <= j <= N-1");
    ZPoly plus = xvar::bracket(N + j);
    ZPoly minus = xvar::bracket(N - j);
    for (int k = 1; k <= l; ++k) {
        plus *= xvar::A(N + j, k);
        minus *= xvar::A(N - j, k);
    }
    long ep = m * static_cast<long>(N + j) * (N + j);
    long em = m * static_cast<long>(N - j) * (N - j);
    long sign = ((m * j) % 2 != 0) ? -1 : 1;  // i^{2mj}
    ZPoly R = plus.shift(ep) + minus.shift(em).scale(mpz_class(sign));
    ZPoly Q = xvar::bracket(N);

    const long cb = static_cast<long>(R.coeff_bits());
    Prec pe = std::max<Prec>(prec > 0 ? prec : 256, cb + 8L * N + 128);
    RootContext ctx(N, pe);
    EvalResult dR = eval_at(R.derivative(), ctx.x0, pe);
    EvalResult dQ = eval_at(Q.derivative(), ctx.x0, pe);
    Complex val = dR.value / dQ.value;
    long c = (m % 4) * ((N - 1 - j) % 4) % 4;  // leftover i-power
    return val.mul_i_pow(c);
}

}  // namespace qcable

#endif
