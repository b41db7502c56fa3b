// Prints a small table of cable growth rates against the expected limit
// 4 L(pi/6) = 2.0298832... for a few twist parameters.

#include <cstdio>

#include "qcable/asymptotics.hpp"
#include "qcable/cable.hpp"

using namespace qcable;

int main() {
    auto fig8 = HabiroKnot::figure_eight();
    const Prec p = 192;
    Real two_pi = ldexp2(Real::pi(p), 1);
    Real vol = fig8_volume(p);
    std::printf("volume / 2pi target: %.10f (rate target %.10f)\n\n",
                (vol / two_pi).to_double(), vol.to_double());
    std::printf("%4s %4s %14s %14s %10s\n", "m", "N", "rate", "predicted", "ratio");
    for (long m : {0L, 1L, 2L}) {
        for (int N : {25, 51, 101, 201}) {
            if (!in_S_m(m, N)) continue;
            auto r = kashaev_cable_eq03(fig8, m, N);
            auto pred = predict_leading(m, N, p);
            Real rate = two_pi * log(abs(r.value)) / N;
            Real ratio = abs(r.value) / abs(pred.predicted_value);
            std::printf("%4ld %4d %14.8f %14.8f %10.6f\n", m, N, rate.to_double(),
                        (two_pi * log(abs(pred.predicted_value)) / N).to_double(),
                        ratio.to_double());
        }
        std::printf("\n");
    }
    return 0;
}
