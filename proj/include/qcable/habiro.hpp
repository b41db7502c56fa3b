#ifndef QCABLE_HABIRO_HPP
#define QCABLE_HABIRO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcable/blocks.hpp"
#include "qcable/invariant.hpp"
#include "qcable/laurent.hpp"

namespace qcable {

// A knot presented by its Habiro expansion data: coefficients C_K(l;q) in
// Z[q^{+-1}] and a framing (integer or half-integer, stored doubled). The
// figure-eight knot has C(l) = 1 for all l; coefficients for other knots are
// data inputs, not derived here.
class HabiroKnot {
public:
    enum class CoeffKind { AllOnes, DeltaAtZero, Explicit };

    static HabiroKnot figure_eight() { return HabiroKnot("fig8", 0, CoeffKind::AllOnes, {}); }
    static HabiroKnot unknot() { return HabiroKnot("unknot", 0, CoeffKind::DeltaAtZero, {}); }
    static HabiroKnot with_coeffs(std::string name, long framing2, std::vector<ZPoly> coeffs) {
        return HabiroKnot(std::move(name), framing2, CoeffKind::Explicit, std::move(coeffs));
    }

    const std::string& name() const { return name_; }
    long framing2() const { return framing2_; }
    bool half_integer_framing() const { return framing2_ % 2 != 0; }
    CoeffKind kind() const { return kind_; }
    bool constant_one_coeffs() const { return kind_ == CoeffKind::AllOnes; }
    std::optional<int> max_l() const {
        if (kind_ != CoeffKind::Explicit) return std::nullopt;
        return static_cast<int>(coeffs_.size()) - 1;
    }

    // C_K(l; q), q-variable
    const ZPoly& coeff(int l) const {
        static const ZPoly kOne = ZPoly::constant(mpz_class(1));
        static const ZPoly kZero;
        if (l < 0) throw std::out_of_range("coefficient index out of range: l < 0");
        switch (kind_) {
            case CoeffKind::AllOnes: return kOne;
            case CoeffKind::DeltaAtZero: return l == 0 ? kOne : kZero;
            default:
                if (static_cast<std::size_t>(l) >= coeffs_.size())
                    throw std::out_of_range("coefficient index out of range: C(" +
                                            std::to_string(l) + ") not provided");
                return coeffs_[static_cast<std::size_t>(l)];
        }
    }

    // same knot with framing increased by p = p2/2
    HabiroKnot shifted(long p2) const {
        HabiroKnot k = *this;
        k.framing2_ += p2;
        return k;
    }

private:
    HabiroKnot(std::string name, long framing2, CoeffKind kind, std::vector<ZPoly> coeffs)
        : name_(std::move(name)), framing2_(framing2), kind_(kind), coeffs_(std::move(coeffs)) {}

    std::string name_;
    long framing2_;
    CoeffKind kind_;
    std::vector<ZPoly> coeffs_;
};

// ---------------------------------------------------------------------------
// Knot file format: {"name": str, "framing": "p" or "p/2",
//                    "coeffs": [poly JSON, ...]} with coeffs[i] = C_K(i;q).

inline long parse_framing2(const std::string& s) {
    auto parse_int = [](const std::string& t) {
        std::size_t pos = 0;
        long v = std::stol(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    };
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return 2 * parse_int(s);
        long num = parse_int(s.substr(0, slash));
        long den = parse_int(s.substr(slash + 1));
        if (den == 1) return 2 * num;
        if (den == 2) return num;
        throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw std::runtime_error("bad framing \"" + s + "\": expected \"p\" or \"p/2\"");
    }
}

inline std::string framing2_string(long f2) {
    if (f2 % 2 == 0) return std::to_string(f2 / 2);
    return std::to_string(f2) + "/2";
}

inline HabiroKnot knot_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("knot file: top level must be an object");
    for (const char* key : {"name", "framing", "coeffs"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("knot file: missing \"") + key + "\"");
    std::string name = j.at("name").get<std::string>();
    long framing2 = parse_framing2(j.at("framing").get<std::string>());
    std::vector<ZPoly> coeffs;
    const auto& arr = j.at("coeffs");
    if (!arr.is_array()) throw std::runtime_error("knot file: \"coeffs\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        try {
            coeffs.push_back(poly_from_json<mpz_class>(arr[i]));
        } catch (const std::exception& e) {
            throw std::runtime_error("knot file: coeffs[" + std::to_string(i) +
                                     "]: " + e.what());
        }
    }
    return HabiroKnot::with_coeffs(std::move(name), framing2, std::move(coeffs));
}

inline nlohmann::json to_json(const HabiroKnot& k) {
    nlohmann::json coeffs = nlohmann::json::array();
    if (auto ml = k.max_l()) {
        for (int l = 0; l <= *ml; ++l) coeffs.push_back(to_json(k.coeff(l)));
    }
    nlohmann::json j{{"name", k.name()},
                     {"framing", framing2_string(k.framing2())},
                     {"coeffs", coeffs}};
    switch (k.kind()) {
        case HabiroKnot::CoeffKind::AllOnes: j["coeffs_rule"] = "all-ones"; break;
        case HabiroKnot::CoeffKind::DeltaAtZero: j["coeffs_rule"] = "delta-at-zero"; break;
        default: break;
    }
    return j;
}

inline HabiroKnot load_knot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knot file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("knot file " + path + ": " + e.what());
    }
    return knot_from_json(j);
}

// built-in names first, then the filesystem
inline HabiroKnot resolve_knot(const std::string& name_or_path) {
    if (name_or_path == "fig8" || name_or_path == "figure-eight")
        return HabiroKnot::figure_eight();
    if (name_or_path == "unknot") return HabiroKnot::unknot();
    return load_knot_file(name_or_path);
}

// ---------------------------------------------------------------------------
// Colored Jones via the Habiro expansion:
//   J_K(n;q) = [n] sum_{l=0}^{n-1} C_K(l;q) prod_{k=1}^{l} A(n,k),
// with the framing factor q^{p(n^2-1)/4} = x^{framing2 (n^2-1)} applied.
// The sum stops at l = n-1: A(n,n) = 0 kills everything beyond.

inline ZPoly habiro_jones_exact(const HabiroKnot& K, int n) {
    if (n < 1) throw std::domain_error("habiro_jones: color must be >= 1");
    ZPoly sum;
    ZPoly prod = ZPoly::constant(mpz_class(1));
    for (int l = 0; l < n; ++l) {
        if (l > 0) prod *= xvar::A(n, l);
        const ZPoly& c = K.coeff(l);
        if (c.is_zero()) continue;
        sum += c.substitute_power(8) * prod;
    }
    return (xvar::bracket(n) * sum).shift(K.framing2() * (static_cast<long>(n) * n - 1));
}

// numeric evaluation at x = q^{1/8} (the caller's branch choice)
inline Complex habiro_jones_eval(const HabiroKnot& K, int n, const Complex& x) {
    if (n < 1) throw std::domain_error("habiro_jones: color must be >= 1");
    const Prec prec = x.prec();
    // v^a and v^{-a} for a = 0..2n, v = x^4
    const Complex v = pow_si(x, 4);
    const Complex vi = Complex::one(prec) / v;
    std::vector<Complex> vp(2 * n + 1, Complex::one(prec));
    std::vector<Complex> vm(2 * n + 1, Complex::one(prec));
    for (int a = 1; a <= 2 * n; ++a) {
        vp[a] = vp[a - 1] * v;
        vm[a] = vm[a - 1] * vi;
    }
    auto brace = [&](int a) { return vp[a] - vm[a]; };

    const Complex q = pow_si(x, 8);
    Complex sum = Complex::zero(prec);
    Complex prod = Complex::one(prec);
    for (int l = 0; l < n; ++l) {
        if (l > 0) prod *= brace(n - l) * brace(n + l);
        const ZPoly& c = K.coeff(l);
        if (c.is_zero()) continue;
        if (K.constant_one_coeffs()) {
            sum += prod;
        } else {
            sum += eval_at(c, q, prec).value * prod;
        }
    }
    Complex bracket_n = brace(n) / brace(1);
    Complex framing = pow_si(x, K.framing2() * (static_cast<long>(n) * n - 1));
    return bracket_n * sum * framing;
}

// ---------------------------------------------------------------------------
// Cabling. Two equivalent routes to J_{K^{(m,2)}}(N;q):
//   mu-form:   sum_{l=1}^{N} mu_l^m J_K(2l-1;q),
//              mu_l = (-1)^{N-l} q^{(1-N^2)/2} q^{l(l-1)/2}
//   eq10-form: a_N^m sum_{j=1-N, N-j+1 even}^{N-1} t_{j,N}^m J_K(N+j;q),
//              a_N = q^{(3-4N^2)/8}

enum class CableMethod { Mu, Eq10 };

// The j-enumeration "N-j+1 even" shared by the eq10 form and the paired
// root-of-unity sum; keeping it in one place keeps the parity identical
// across paths.
inline bool cable_j_included(int N, long j) {
    long r = (N - j) % 2;
    return r == 1 || r == -1;
}

inline ZPoly cable_jones_exact(const HabiroKnot& K, long m, int N, CableMethod method) {
    if (N < 1) throw std::domain_error("cable_jones: N must be >= 1");
    ZPoly total;
    if (method == CableMethod::Mu) {
        for (int l = 1; l <= N; ++l) {
            long e = 4 * m * (1 - static_cast<long>(N) * N) +
                     4 * m * static_cast<long>(l) * (l - 1);
            long sign = (m * (N - l)) % 2 != 0 ? -1 : 1;
            total += habiro_jones_exact(K, 2 * l - 1).shift(e).scale(mpz_class(sign));
        }
    } else {
        for (long j = 1 - N; j <= N - 1; ++j) {
            if (!cable_j_included(N, j)) continue;
            auto t = xvar::t_power(N, j, m);
            // parity makes the i-power even here; it is a bare sign
            long sign = (t.quarter == 2) ? -1 : 1;
            total += habiro_jones_exact(K, static_cast<int>(N + j))
                         .shift(t.x_exp)
                         .scale(mpz_class(sign));
        }
        total = total.shift(m * (3 - 4 * static_cast<long>(N) * N));
    }
    return total;
}

inline Complex cable_jones_eval(const HabiroKnot& K, long m, int N, const Complex& x,
                                CableMethod method) {
    if (N < 1) throw std::domain_error("cable_jones: N must be >= 1");
    const Prec prec = x.prec();
    Complex total = Complex::zero(prec);
    if (method == CableMethod::Mu) {
        for (int l = 1; l <= N; ++l) {
            long e = 4 * m * (1 - static_cast<long>(N) * N) +
                     4 * m * static_cast<long>(l) * (l - 1);
            Complex mu = pow_si(x, e);
            if ((m * (N - l)) % 2 != 0) mu = -mu;
            total += mu * habiro_jones_eval(K, 2 * l - 1, x);
        }
    } else {
        for (long j = 1 - N; j <= N - 1; ++j) {
            if (!cable_j_included(N, j)) continue;
            auto t = xvar::t_power(N, j, m);
            Complex term =
                pow_si(x, t.x_exp) * habiro_jones_eval(K, static_cast<int>(N + j), x);
            total += term.mul_i_pow(t.quarter);
        }
        total *= pow_si(x, m * (3 - 4 * static_cast<long>(N) * N));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Kashaev invariant of the knot itself. The [N] prefactor of the Habiro
// expansion cancels the normalization exactly, so no division happens:
//   <K>_N = sum_l C_K(l;q) prod_{k<=l} A(N,k) at the root.

inline CableInvariantResult kashaev_knot(const HabiroKnot& K, int N, Prec prec) {
    if (N < 1) throw std::domain_error("kashaev_knot: N must be >= 1");
    if (prec < 64) prec = 64;

    auto compute = [&](Prec p) -> detail::SumDiag {
        RootContext ctx(N, p);
        const Complex q0 = ctx.root_pow(8);
        Real prod(1L, p);  // prod_{k<=l} A(N,k) = prod 4 sin^2(k pi/N), real
        Complex sum = Complex::zero(p);
        Real max_term(p);
        Real hint(1L, p);
        for (int l = 0; l < N; ++l) {
            if (l > 0) {
                Real s = ctx.sin_table[l];
                prod *= ldexp2(s * s, 2);
                if (prod > hint) hint = prod;
            }
            const ZPoly& c = K.coeff(l);
            if (c.is_zero()) continue;
            Complex term = K.constant_one_coeffs()
                               ? Complex(prod, Real(p))
                               : eval_at(c, q0, p).value * prod;
            sum += term;
            Real t = abs_l1(term);
            if (t > max_term) max_term = t;
        }
        sum *= ctx.root_pow(K.framing2() * (static_cast<long>(N) * N - 1));
        if (max_term > hint) hint = max_term;
        return {sum, max_term, hint};
    };

    CableInvariantResult r = detail::adaptive_eval(compute, prec, 16);
    r.m = 0;
    r.N = N;
    r.method = "knot-direct";
    return r;
}

}  // namespace qcable

#endif
