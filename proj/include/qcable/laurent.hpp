#ifndef QCABLE_LAURENT_HPP
#define QCABLE_LAURENT_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "qcable/real.hpp"

namespace qcable {

// Coefficient-ring glue for LaurentPoly. Two rings are supported: exact
// integers (mpz_class) and exact rationals (mpq_class).
template <class Coeff>
struct RingTraits;

template <>
struct RingTraits<mpz_class> {
    static constexpr const char* name = "Z";
    // q = a / b if exact, else false
    static bool divide(const mpz_class& a, const mpz_class& b, mpz_class& q) {
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return true;
    }
    static Real to_real(const mpz_class& a, Prec prec) { return Real(a, prec); }
    static std::string to_string(const mpz_class& a) { return a.get_str(); }
    static mpz_class from_string(const std::string& s) {
        try {
            return mpz_class(s);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("not an integer coefficient: \"" + s + "\"");
        }
    }
};

template <>
struct RingTraits<mpq_class> {
    static constexpr const char* name = "Q";
    static bool divide(const mpq_class& a, const mpq_class& b, mpq_class& q) {
        q = a / b;
        return true;
    }
    static Real to_real(const mpq_class& a, Prec prec) { return Real(a, prec); }
    static std::string to_string(const mpq_class& a) { return a.get_str(); }
    static mpq_class from_string(const std::string& s) {
        try {
            mpq_class v(s);
            v.canonicalize();
            return v;
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("not a rational coefficient: \"" + s + "\"");
        }
    }
};

// Sparse Laurent polynomial in one formal variable with exact coefficients.
// Canonical form: no stored coefficient is zero; the zero polynomial has an
// empty term map. All operations preserve canonical form.
template <class Coeff>
class LaurentPoly {
public:
    using Terms = std::map<long, Coeff>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly constant(Coeff c) { return monomial(std::move(c), 0); }
    static LaurentPoly monomial(Coeff c, long e) {
        LaurentPoly p;
        if (c != 0) p.terms_.emplace(e, std::move(c));
        return p;
    }
    // x^e - x^{-e}; zero when e == 0
    static LaurentPoly diff_pow(long e) {
        LaurentPoly p;
        if (e != 0) {
            p.terms_.emplace(e, Coeff(1));
            p.terms_.emplace(-e, Coeff(-1));
        }
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    long min_exp() const { return terms_.begin()->first; }
    long max_exp() const { return terms_.rbegin()->first; }
    Coeff coeff(long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        // iterate over the smaller factor
        const LaurentPoly& s = a.term_count() <= b.term_count() ? a : b;
        const LaurentPoly& t = a.term_count() <= b.term_count() ? b : a;
        Coeff prod;
        for (const auto& [es, cs] : s.terms_) {
            for (const auto& [et, ct] : t.terms_) {
                prod = cs * ct;
                r.add_term(es + et, prod);
            }
        }
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scale(const Coeff& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    // multiply by x^k
    LaurentPoly shift(long k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
        return r;
    }

    // every exponent e -> e*k; k must be nonzero
    LaurentPoly substitute_power(long k) const {
        if (k == 0) throw std::domain_error("substitute_power: k must be nonzero");
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e * k, c);
        return r;
    }

    // term-wise formal derivative; ring preserved
    LaurentPoly derivative() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            if (e == 0) continue;
            r.terms_.emplace(e - 1, c * e);
        }
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string c = RingTraits<Coeff>::to_string(it->second);
            if (!first) {
                if (c[0] == '-') {
                    s += " - ";
                    c = c.substr(1);
                } else {
                    s += " + ";
                }
            }
            first = false;
            if (it->first == 0) {
                s += c;
            } else {
                if (c != "1") {
                    if (c == "-1") s += "-";
                    else s += c + "*";
                }
                s += var;
                if (it->first != 1) s += "^" + std::to_string(it->first);
            }
        }
        return s;
    }

    void add_term(long e, const Coeff& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // largest coefficient magnitude in bits (0 for the zero polynomial)
    std::size_t coeff_bits() const {
        std::size_t bits = 0;
        for (const auto& [e, c] : terms_) {
            std::size_t b = mpz_sizeinbase(numerator_ref(c), 2);
            if (b > bits) bits = b;
        }
        return bits;
    }

private:
    static const __mpz_struct* numerator_ref(const mpz_class& c) { return c.get_mpz_t(); }
    static const __mpz_struct* numerator_ref(const mpq_class& c) {
        return c.get_num().get_mpz_t();
    }
    Terms terms_;
};

using ZPoly = LaurentPoly<mpz_class>;
using QPoly = LaurentPoly<mpq_class>;

inline QPoly to_rational(const ZPoly& p) {
    QPoly r;
    for (const auto& [e, c] : p.terms()) r.add_term(e, mpq_class(c));
    return r;
}

// ---------------------------------------------------------------------------
// Exact division

template <class Coeff>
struct DivisionResult {
    bool divisible = false;
    LaurentPoly<Coeff> quotient;   // valid when divisible
    LaurentPoly<Coeff> remainder;  // nonzero witness when not divisible
};

// p = d * quotient exactly, or divisible=false with the remainder p - d*q of
// the partial division. Both inputs are shifted to ordinary polynomials
// first; the divisibility verdict is unaffected by the shift.
template <class Coeff>
DivisionResult<Coeff> exact_div(const LaurentPoly<Coeff>& p, const LaurentPoly<Coeff>& d) {
    if (d.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    DivisionResult<Coeff> res;
    if (p.is_zero()) {
        res.divisible = true;
        return res;
    }
    const long pshift = p.min_exp(), dshift = d.min_exp();
    LaurentPoly<Coeff> rem = p.shift(-pshift);
    const LaurentPoly<Coeff> dd = d.shift(-dshift);
    const long de = dd.max_exp();
    const Coeff& dc = dd.terms().rbegin()->second;

    LaurentPoly<Coeff> q;
    bool ok = true;
    while (!rem.is_zero() && rem.max_exp() >= de) {
        Coeff f;
        if (!RingTraits<Coeff>::divide(rem.terms().rbegin()->second, dc, f)) {
            ok = false;
            break;
        }
        const long fe = rem.max_exp() - de;
        q.add_term(fe, f);
        rem -= dd * LaurentPoly<Coeff>::monomial(f, fe);
    }
    if (ok && rem.is_zero()) {
        res.divisible = true;
        res.quotient = q.shift(pshift - dshift);
    } else {
        res.divisible = false;
        res.quotient = LaurentPoly<Coeff>::zero();
        res.remainder = p - d * q.shift(pshift - dshift);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Evaluation at a complex point

struct EvalResult {
    Complex value;
    Real error_bound;  // absolute bound 2^{-prec+guard_bits}
    long guard_bits = 0;
};

// Horner evaluation split over nonnegative and negative exponent parts.
// The error bound counts one half-ulp per arithmetic step against the
// largest intermediate magnitude.
template <class Coeff>
EvalResult eval_at(const LaurentPoly<Coeff>& p, const Complex& z, Prec prec) {
    if (z.is_zero()) throw std::domain_error("eval_at: z must be nonzero");
    EvalResult out;
    out.value = Complex::zero(prec);
    out.error_bound = Real(prec);
    if (p.is_zero()) return out;

    long ops = 0;
    Real max_abs(prec);

    auto horner_part = [&](const Complex& base, auto first, auto last) -> Complex {
        // terms iterated with ascending |exponent|; base^|e| side
        Complex acc = Complex::zero(prec);
        long top_e = 0;
        bool started = false;
        // walk from the largest |exponent| downwards
        for (auto it = last; it != first;) {
            --it;
            const long e = std::labs(it->first);
            const Coeff& c = it->second;
            if (!started) {
                acc = Complex(RingTraits<Coeff>::to_real(c, prec), Real(prec));
                top_e = e;
                started = true;
            } else {
                const long gap = top_e - e;
                acc *= pow_si(base, gap);
                acc += Complex(RingTraits<Coeff>::to_real(c, prec), Real(prec));
                ops += 10;
                for (long g2 = gap; g2 > 1; g2 >>= 1) ops += 8;  // pow_si squarings
                top_e = e;
            }
            Real m = abs_l1(acc);
            if (m > max_abs) max_abs = m;
            ops += 2;
        }
        if (started && top_e > 0) {
            acc *= pow_si(base, top_e);
            ops += 8;
        }
        Real m = abs_l1(acc);
        if (m > max_abs) max_abs = m;
        return acc;
    };

    const auto& t = p.terms();
    auto split = t.lower_bound(0);
    // negative exponents, evaluated in 1/z with |e| ascending order reversed
    if (split != t.begin()) {
        Complex w = Complex::one(prec) / z;
        ops += 8;
        // map order for negatives is most-negative first = largest |e| first;
        // horner_part wants to start at largest |e|, i.e. iterate begin..split reversed
        std::map<long, Coeff> flipped;
        for (auto it = t.begin(); it != split; ++it) flipped.emplace(-it->first, it->second);
        out.value += horner_part(w, flipped.begin(), flipped.end());
    }
    if (split != t.end()) out.value += horner_part(z, split, t.end());
    ops += 2;

    // bound: ops * 2^{1-prec} * max intermediate magnitude
    Real bound = Real(ops + 2, prec) * ldexp2(max_abs + Real(1L, prec), 1 - prec);
    long g = bound.is_zero() ? 0 : bound.exp2_of() + prec;
    if (g < 0) g = 0;
    out.error_bound = bound;
    out.guard_bits = g;
    return out;
}

// ---------------------------------------------------------------------------
// JSON serialization: {"ring":"Z"|"Q","terms":{"<exp>":"<coeff>"}}

template <class Coeff>
nlohmann::json to_json(const LaurentPoly<Coeff>& p) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [e, c] : p.terms())
        terms[std::to_string(e)] = RingTraits<Coeff>::to_string(c);
    return nlohmann::json{{"ring", RingTraits<Coeff>::name}, {"terms", terms}};
}

template <class Coeff>
LaurentPoly<Coeff> poly_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("terms"))
        throw std::runtime_error("polynomial JSON must have \"ring\" and \"terms\"");
    const std::string ring = j.at("ring").get<std::string>();
    if (ring != RingTraits<Coeff>::name)
        throw std::runtime_error("polynomial ring mismatch: file has \"" + ring +
                                 "\", expected \"" + RingTraits<Coeff>::name + "\"");
    LaurentPoly<Coeff> p;
    for (const auto& [key, val] : j.at("terms").items()) {
        std::size_t pos = 0;
        long e = 0;
        try {
            e = std::stol(key, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("bad exponent key: \"" + key + "\"");
        }
        if (pos != key.size()) throw std::runtime_error("bad exponent key: \"" + key + "\"");
        p.add_term(e, RingTraits<Coeff>::from_string(val.template get<std::string>()));
    }
    return p;
}

}  // namespace qcable

#endif
