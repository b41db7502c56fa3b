#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcable/asymptotics.hpp"

using namespace qcable;

TEST_CASE("lobachevsky function", "[asymptotics]") {
    const Prec p = 128;
    Real pi = Real::pi(p);
    SECTION("special values") {
        CHECK(lobachevsky(Real(p), p).is_zero());
        CHECK(abs(lobachevsky(pi / 2L, p)) < Real(1e-30, p));
        Real l6 = lobachevsky(pi / 6L, p);
        CHECK(abs(l6 - Real(0.5074708032048268125, p)) < Real(1e-15, p));
        // the maximum of L sits at pi/6
        CHECK(l6 > lobachevsky(pi / 5L, p));
        CHECK(l6 > lobachevsky(pi / 7L, p));
    }
    SECTION("series vs quadrature on a grid") {
        for (int i = 0; i <= 20; ++i) {
            Real x = pi * i / 20L;
            CHECK(abs(lobachevsky(x, p) - lobachevsky_integral(x, p)) < Real(1e-12, p));
        }
    }
    SECTION("odd and pi-periodic") {
        for (double t : {0.3, 1.1, 2.9, 4.2}) {
            Real x(t, p);
            CHECK(abs(lobachevsky(-x, p) + lobachevsky(x, p)) < Real(1e-12, p));
            CHECK(abs(lobachevsky(x + pi, p) - lobachevsky(x, p)) < Real(1e-12, p));
        }
    }
    SECTION("raw sine-series partial sum stays within its tail bound") {
        Real x = pi / 6L;
        auto [partial, tail] = lobachevsky_fourier_partial(x, 5000, p);
        CHECK(abs(partial - lobachevsky(x, p)) <= tail);
    }
}

TEST_CASE("potential maximum and Taylor coefficient", "[asymptotics]") {
    const Prec p = 128;
    Real pi = Real::pi(p);
    SECTION("f(0, 5pi/6) = 2 L(pi/6) by oddness and periodicity") {
        Real f = f_potential(Real(p), pi * 5L / 6L, p);
        CHECK(abs(f - ldexp2(lobachevsky(pi / 6L, p), 1)) < Real(1e-20, p));
    }
    SECTION("numeric search lands on the stated point") {
        PotentialMax mx = find_max_f(p);
        CHECK(abs(mx.x) < Real(1e-8, p));
        CHECK(abs(mx.y - pi * 5L / 6L) < Real(1e-8, p));
        CHECK(abs(mx.hessian_scale - sqrt(Real(3, p))) < Real(1e-4, p));
    }
}

TEST_CASE("gaussian constant", "[asymptotics]") {
    const Prec p = 128;
    SECTION("C(0) = 1/(2 sqrt 3)") {
        Complex c0 = gaussian_constant(0, p);
        CHECK(abs(c0.re() - Real(1, p) / (sqrt(Real(3, p)) * 2L)) < Real(1e-25, p));
        CHECK(abs(c0.im()) < Real(1e-25, p));
    }
    SECTION("closed form vs quadrature") {
        for (long m : {0L, 1L, 4L}) {
            Complex a = gaussian_constant(m, p, GaussMethod::ClosedForm);
            Complex b = gaussian_constant(m, p, GaussMethod::Quadrature);
            CHECK(abs(a - b) < Real(1e-8, p));
        }
    }
    SECTION("magnitude law |C| = (1/2) 3^{-1/4} (3 + m^2/16)^{-1/4}") {
        for (long m = 0; m <= 16; ++m) {
            Real base = Real(3, p) + Real(m * m, p) / 16L;
            Real want = Real(0.5, p) / (sqrt(sqrt(Real(3, p))) * sqrt(sqrt(base)));
            CHECK(abs(abs(gaussian_constant(m, p)) - want) < Real(1e-20, p));
        }
    }
    SECTION("nonzero and decreasing in |m|") {
        Real prev(1e9, p);
        for (long m = 0; m <= 16; ++m) {
            Real cur = abs(gaussian_constant(m, p));
            CHECK(cur > Real(1e-3, p));
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("parity factor classification", "[asymptotics]") {
    const Prec p = 96;
    SECTION("examples") {
        CHECK(beta_gamma_classify(2, 2).is_zero);
        CHECK(beta_gamma_classify(4, 5).is_zero);
        CHECK(beta_gamma_classify(0, 4).is_zero);
        CHECK_FALSE(beta_gamma_classify(0, 5).is_zero);
        for (int N : {1, 2, 3, 8}) {
            auto f = beta_gamma_classify(3, N);
            CHECK(abs(f.abs_value(p) - Real(2, p)) < Real(1e-20, p));
        }
    }
    SECTION("exhaustive residues match the case table and the dichotomy") {
        for (long m = -16; m <= 16; ++m) {
            for (int N = 1; N <= 16; ++N) {
                auto f = beta_gamma_classify(m, N);
                long m4 = ((m % 4) + 4) % 4, m8 = ((m % 8) + 8) % 8;
                bool expect = (m4 == 0 && N % 2 == 0) || (m4 == 2 && N % 4 == 2) ||
                              (m8 == 4 && N % 2 == 1);
                CHECK(f.is_zero == expect);
                if (!f.is_zero) CHECK(f.abs_value(p) > Real(2.0 - 1e-12, p));
            }
        }
    }
    SECTION("numeric value agrees with direct exponentials") {
        const Prec q = 128;
        Real pi = Real::pi(q);
        for (long m : {-3L, 1L, 2L, 6L}) {
            for (int N : {3, 4, 9}) {
                Complex beta = Complex::from_angle(pi * (m * (N + 2)) / 4L);
                Complex gamma = Complex::from_angle(pi * (m * (N - 2)) / 4L);
                Complex direct = beta + gamma +
                                 Complex(Real(N % 2 ? 2 : -2, q), Real(q));
                CHECK(abs(beta_gamma_classify(m, N).value(q) - direct) < Real(1e-30, q));
            }
        }
    }
}

TEST_CASE("leading-order prediction", "[asymptotics]") {
    const Prec p = 192;
    SECTION("prediction vanishes exactly when the parity factor does") {
        auto z = predict_leading(4, 7, p);
        CHECK(z.parity.is_zero);
        CHECK(abs(z.predicted_value).is_zero());
        auto nz = predict_leading(1, 25, p);
        CHECK_FALSE(nz.parity.is_zero);
        CHECK(abs(nz.predicted_value) > Real(1, p));
    }
    SECTION("needs N >= 6") {
        CHECK_THROWS_AS(predict_leading(0, 5, p), std::domain_error);
    }
    SECTION("l* rounding") {
        CHECK(predict_leading(0, 12, p).l_star == 10);
        CHECK(predict_leading(0, 13, p).l_star == 11);  // round(65/6) = round(10.83)
        CHECK(predict_leading(0, 15, p).l_star == 13);  // round(12.5) rounds up
    }
}

TEST_CASE("growth records and the volume", "[asymptotics]") {
    const Prec p = 128;
    SECTION("figure-eight volume") {
        Real v = fig8_volume(p);
        CHECK(abs(v - Real(2.029883212819, p)) < Real(1e-11, p));
    }
    SECTION("records flag zeros instead of failing") {
        auto fig8 = HabiroKnot::figure_eight();
        auto z = kashaev_cable_eq03(fig8, 0, 8);
        auto nz = kashaev_cable_eq03(fig8, 0, 9);
        auto recs = growth_rate({{8, z}, {9, nz}}, 0, p);
        REQUIRE(recs.size() == 2);
        CHECK(recs[0].flagged_zero);
        CHECK_FALSE(recs[1].flagged_zero);
        CHECK(recs[1].has_prediction);
        CHECK(recs[1].rate.to_double() > 1.0);
        CHECK(std::fabs(recs[1].residual.to_double() -
                        (recs[1].exact_log_abs.to_double() -
                         recs[1].predicted_log_abs.to_double())) < 1e-12);
    }
}

TEST_CASE("s_n approximations", "[asymptotics]") {
    const Prec p = 96;
    // |s_n - (N/pi) L(n pi/N)| = O(log N), checked at a desk-scale sample
    for (int N : {50, 200, 800}) {
        auto s = s_n_prefix(N, p);
        Real pi = Real::pi(p);
        double logN = std::log((double)N);
        for (int n = 1; n <= N - 1; n += 7) {
            Real approx = lobachevsky(pi * n / (long)N, p) * Real(N, p) / pi;
            double dev = std::fabs((s[(std::size_t)n] - approx).to_double());
            CHECK(dev <= 4.0 * logN);
        }
    }
    // log E(0, l*) = (2N/pi) L(pi/6) + O(log N)
    for (int N : {60, 240, 960}) {
        auto s = s_n_prefix(N, p);
        long lstar = (5L * N + 3) / 6;
        Real pi = Real::pi(p);
        double logE = -2.0 * s[(std::size_t)lstar].to_double();
        double target = 2.0 * N / 3.14159265358979 * 0.5074708032048268125;
        CHECK(std::fabs(logE - target) <= 4.0 * std::log((double)N));
    }
}
