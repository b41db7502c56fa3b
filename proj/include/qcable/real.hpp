#ifndef QCABLE_REAL_HPP
#define QCABLE_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace qcable {

using Prec = mpfr_prec_t;

// Arbitrary-precision real backed by MPFR. Every value carries its own
// precision; binary operations round to the larger operand precision
// (MPFR_RNDN), so results are bit-reproducible across runs.
class Real {
public:
    Real() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }
    explicit Real(Prec prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, Prec prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, Prec prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& x, Prec prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Prec prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // exponent e with |x| in [2^{e-1}, 2^e); 0 for zero
    long exp2_of() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    std::string str(int sig_digits = 24) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof buf, "%.*Re", sig_digits, v_);
        return std::string(buf);
    }

    friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    Real& operator*=(long b) { mpfr_mul_si(v_, v_, b, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    bool abs_greater(const Real& o) const { return mpfr_cmpabs(v_, o.v_) > 0; }

    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sin(const Real& a) {
        Real r(a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real cos(const Real& a) {
        Real r(a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real atan2(const Real& y, const Real& x) {
        Real r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow_si(const Real& a, long e) {
        Real r(a.prec());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real floor(const Real& a) {
        Real r(a.prec());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real round(const Real& a) {
        Real r(a.prec());
        mpfr_round(r.v_, a.v_);
        return r;
    }
    // a * 2^k, exact
    friend Real ldexp2(const Real& a, long k) {
        Real r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

    static Real pi(Prec prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // value rounded to a target precision
    static Real at_prec(const Real& x, Prec prec) {
        Real r(prec);
        mpfr_set(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static Real zeta_ui(unsigned long n, Prec prec) {
        Real r(prec);
        mpfr_zeta_ui(r.v_, n, MPFR_RNDN);
        return r;
    }
    // 2^k as a Real
    static Real pow2(long k, Prec prec) {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, k, MPFR_RNDN);
        return r;
    }

private:
    using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(const Real& a, const Real& b, mpfr_bin_fn fn) {
        Real r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

// Complex value as a pair of Reals. MPC is not assumed present; the handful
// of complex operations needed here are composed from real ones.
class Complex {
public:
    Complex() = default;
    explicit Complex(Prec prec) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(long re, Prec prec) : re_(re, prec), im_(prec) {}
    Complex(double re, double im, Prec prec) : re_(re, prec), im_(im, prec) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }
    Prec prec() const { return std::max(re_.prec(), im_.prec()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    static Complex zero(Prec prec) { return Complex(prec); }
    static Complex one(Prec prec) { return Complex(Real(1L, prec), Real(prec)); }
    static Complex i(Prec prec) { return Complex(Real(prec), Real(1L, prec)); }
    // exp(i*theta)
    static Complex from_angle(const Real& theta) {
        Real c(theta.prec()), s(theta.prec());
        mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
        return Complex(std::move(c), std::move(s));
    }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Complex operator*(const Complex& a, const Real& s) {
        return Complex(a.re_ * s, a.im_ * s);
    }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re_ * b.re_ + b.im_ * b.im_;
        return Complex((a.re_ * b.re_ + a.im_ * b.im_) / n,
                       (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    friend Complex operator/(const Complex& a, const Real& s) {
        return Complex(a.re_ / s, a.im_ / s);
    }
    Complex operator-() const { return Complex(-re_, -im_); }
    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    Complex conj() const { return Complex(re_, -im_); }
    // multiply by i^k (k mod 4), exact
    Complex mul_i_pow(long k) const {
        long r = ((k % 4) + 4) % 4;
        switch (r) {
            case 1: return Complex(-im_, re_);
            case 2: return Complex(-re_, -im_);
            case 3: return Complex(im_, -re_);
            default: return *this;
        }
    }

    friend Real abs(const Complex& a) { return hypot(a.re_, a.im_); }
    // |re| + |im|; cheap envelope of |z| within sqrt(2)
    friend Real abs_l1(const Complex& a) { return abs(a.re_) + abs(a.im_); }

    // principal square root
    friend Complex sqrt(const Complex& z) {
        Prec p = z.prec();
        if (z.im_.is_zero()) {
            if (z.re_.sign() >= 0) return Complex(sqrt(z.re_), Real(p));
            return Complex(Real(p), sqrt(-z.re_));
        }
        Real r = abs(z);
        Real u = sqrt((r + z.re_) / 2L);
        Real v = sqrt((r - z.re_) / 2L);
        if (z.im_.sign() < 0) v = -v;
        return Complex(std::move(u), std::move(v));
    }

    friend Complex pow_si(const Complex& z, long e);

    std::string str(int sig_digits = 24) const {
        return "(" + re_.str(sig_digits) + ", " + im_.str(sig_digits) + ")";
    }

private:
    Real re_, im_;
};

inline Complex pow_si(const Complex& z, long e) {
    Prec p = z.prec();
    if (e == 0) return Complex::one(p);
    Complex base = z;
    unsigned long n;
    if (e < 0) {
        base = Complex::one(p) / z;
        n = static_cast<unsigned long>(-(e + 1)) + 1;
    } else {
        n = static_cast<unsigned long>(e);
    }
    Complex acc = Complex::one(p);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace qcable

#endif
