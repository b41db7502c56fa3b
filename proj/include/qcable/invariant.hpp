#ifndef QCABLE_INVARIANT_HPP
#define QCABLE_INVARIANT_HPP

#include <string>
#include <utility>

#include <json.hpp>

#include "qcable/real.hpp"

namespace qcable {

// A computed invariant value with cancellation diagnostics. max_term is an
// upper envelope (L1 over components) of the largest summand magnitude;
// cancellation_ratio = |value| / max_term separates exact vanishing from
// numerical noise.
struct CableInvariantResult {
    int m = 0;
    int N = 0;
    std::string method;
    Complex value;
    Real error_bound;
    Real max_term;
    Real cancellation_ratio;
    Prec prec_used = 0;
    bool resolved = true;
    bool declared_zero = false;
    Complex value_alt;  // second candidate, only meaningful when !resolved
    bool in_sm = false;
};

inline nlohmann::json to_json(const CableInvariantResult& r) {
    nlohmann::json j{{"m", r.m},
                     {"N", r.N},
                     {"method", r.method},
                     {"re", r.value.re().str()},
                     {"im", r.value.im().str()},
                     {"error_bound", r.error_bound.str()},
                     {"max_term", r.max_term.str()},
                     {"cancellation_ratio", r.cancellation_ratio.str()},
                     {"prec_used", static_cast<long>(r.prec_used)},
                     {"in_S_m", r.in_sm},
                     {"resolved", r.resolved},
                     {"declared_zero", r.declared_zero}};
    if (!r.resolved) {
        j["re_alt"] = r.value_alt.re().str();
        j["im_alt"] = r.value_alt.im().str();
    }
    return j;
}

// Precision escalation for sums with catastrophic cancellation: compute at
// prec and 2*prec, accept on 48-bit relative agreement or when both runs
// land under the zero threshold |v| <= 2^{-prec/2} max_term; otherwise keep
// doubling up to cap_multiplier * initial and report unresolved with both
// candidates.
struct PrecPolicy {
    Prec initial = 0;  // 0 = per-operation default
    int cap_multiplier = 16;
};

namespace detail {

// One pass of a cancelling sum: the value, the literal largest-summand
// magnitude, and the largest intermediate magnitude seen anywhere. A
// max_term at or below the round-off floor of the intermediates is not
// distinguishable from zero and is reported as zero.
struct SumDiag {
    Complex value;
    Real max_term;
    Real hint;

    void settle(Prec p) {
        if (!(max_term > ldexp2(hint, -static_cast<long>(p / 2))))
            max_term = Real(max_term.prec());
    }
};

template <class F>
CableInvariantResult adaptive_eval(F&& compute, Prec initial, int cap_multiplier) {
    auto zero_threshold = [](const SumDiag& d, Prec p) {
        Real scale = ldexp2(d.hint, -static_cast<long>(p / 4));
        if (d.max_term > scale) scale = d.max_term;
        return ldexp2(scale, -static_cast<long>(p / 2));
    };
    auto is_zero_class = [&](const SumDiag& d, Prec p) {
        return !(abs_l1(d.value) > zero_threshold(d, p));
    };

    CableInvariantResult out;
    Prec p1 = initial;
    SumDiag d1 = compute(p1);
    d1.settle(p1);
    Prec p2 = 2 * p1;
    const Prec cap = initial * std::max(1, cap_multiplier);
    for (;;) {
        SumDiag d2 = compute(p2);
        d2.settle(p2);
        const bool z1 = is_zero_class(d1, p1);
        const bool z2 = is_zero_class(d2, p2);
        if (z1 && z2) {
            out.value = d2.value;
            out.max_term = d2.max_term;
            out.error_bound = zero_threshold(d2, p2);
            out.declared_zero = true;
            out.prec_used = p2;
            break;
        }
        Real diff = abs(d1.value - d2.value);
        Real mag = abs(d2.value);
        if (!z2 && diff <= ldexp2(mag, -48)) {
            out.value = d2.value;
            out.max_term = d2.max_term;
            out.error_bound = diff + ldexp2(d2.hint, -static_cast<long>(p1));
            out.prec_used = p2;
            break;
        }
        if (p2 >= cap) {
            out.value = d2.value;
            out.value_alt = d1.value;
            out.max_term = d2.max_term;
            out.error_bound = diff;
            out.resolved = false;
            out.prec_used = p2;
            break;
        }
        d1 = std::move(d2);
        p1 = p2;
        p2 *= 2;
    }
    out.cancellation_ratio = out.max_term.is_zero()
                                 ? Real(out.value.prec())
                                 : abs(out.value) / out.max_term;
    return out;
}

}  // namespace detail

}  // namespace qcable

#endif
