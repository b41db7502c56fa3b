#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "qcable/cable.hpp"
#include "qcable/habiro.hpp"

using namespace qcable;

namespace {

// trefoil data as shipped in knots/trefoil.json: C(l) = (-1)^l q^{-l(l+3)/2}
HabiroKnot make_trefoil(int max_l = 40) {
    std::vector<ZPoly> coeffs;
    for (int l = 0; l <= max_l; ++l)
        coeffs.push_back(ZPoly::monomial(mpz_class(l % 2 ? -1 : 1), -l * (l + 3) / 2));
    return HabiroKnot::with_coeffs("trefoil-left", 0, std::move(coeffs));
}

}  // namespace

TEST_CASE("habiro expansion basics", "[jones]") {
    auto fig8 = HabiroKnot::figure_eight();
    SECTION("color 1 gives 1") {
        CHECK(habiro_jones_exact(fig8, 1) == ZPoly::constant(mpz_class(1)));
    }
    SECTION("color 2 matches the known Jones polynomial") {
        // [2](q^2 - q + 1 - q^{-1} + q^{-2}) in the x-convention
        ZPoly expect_q;
        expect_q.add_term(2, mpz_class(1));
        expect_q.add_term(1, mpz_class(-1));
        expect_q.add_term(0, mpz_class(1));
        expect_q.add_term(-1, mpz_class(-1));
        expect_q.add_term(-2, mpz_class(1));
        ZPoly expect = xvar::bracket(2) * expect_q.substitute_power(8);
        CHECK(habiro_jones_exact(fig8, 2) == expect);
        // the same via [2](1 + {1}{3})
        ZPoly alt = xvar::bracket(2) *
                    (ZPoly::constant(mpz_class(1)) + xvar::brace(1) * xvar::brace(3));
        CHECK(habiro_jones_exact(fig8, 2) == alt);
    }
    SECTION("unknot gives [n]") {
        auto u = HabiroKnot::unknot();
        CHECK(habiro_jones_exact(u, 5) == xvar::bracket(5));
        CHECK(habiro_jones_exact(u, 1) == xvar::bracket(1));
    }
    SECTION("color must be positive") {
        CHECK_THROWS_AS(habiro_jones_exact(fig8, 0), std::domain_error);
    }
    SECTION("trefoil Jones polynomial at color 2") {
        // (q^{-1} + q^{-3} - q^{-4}) [2]
        ZPoly vq;
        vq.add_term(-1, mpz_class(1));
        vq.add_term(-3, mpz_class(1));
        vq.add_term(-4, mpz_class(-1));
        CHECK(habiro_jones_exact(make_trefoil(4), 2) ==
              xvar::bracket(2) * vq.substitute_power(8));
    }
}

TEST_CASE("exact and numeric tracks agree", "[jones]") {
    const Prec p = 192;
    auto fig8 = HabiroKnot::figure_eight();
    Complex x = Complex::from_angle(Real(0.21, p));
    for (int n = 1; n <= 12; ++n) {
        auto ev = eval_at(habiro_jones_exact(fig8, n), x, p);
        Complex num = habiro_jones_eval(fig8, n, x);
        Real scale = abs(num) + Real(1, p);
        CHECK(abs(ev.value - num) < scale * Real::pow2(-120, p) + ev.error_bound);
    }
}

TEST_CASE("framing shift", "[jones]") {
    auto fig8 = HabiroKnot::figure_eight();
    SECTION("shift by zero is the identity") {
        CHECK(habiro_jones_exact(fig8.shifted(0), 4) == habiro_jones_exact(fig8, 4));
    }
    SECTION("one unit of framing multiplies by q^{(n^2-1)/4}") {
        // n = 2: q^{3/4} = x^6
        CHECK(habiro_jones_exact(fig8.shifted(2), 2) == habiro_jones_exact(fig8, 2).shift(6));
        // p = 2, n = 3: q^4 = x^32
        CHECK(habiro_jones_exact(fig8.shifted(4), 3) == habiro_jones_exact(fig8, 3).shift(32));
    }
    SECTION("half-integer framing stays exact in x") {
        CHECK(habiro_jones_exact(fig8.shifted(3), 2) == habiro_jones_exact(fig8, 2).shift(9));
    }
}

TEST_CASE("kashaev invariant of the knot", "[jones]") {
    auto fig8 = HabiroKnot::figure_eight();
    const Prec p = 128;
    SECTION("first three values") {
        // direct product-sum values: 1, 1 + 4 sin^2(pi/2), 1 + 3 + 9
        long expect[] = {1, 5, 13};
        for (int N = 1; N <= 3; ++N) {
            auto r = kashaev_knot(fig8, N, p);
            Real want(expect[N - 1], p);
            CHECK(abs(r.value - Complex(want, Real(p))) <= want * Real::pow2(-60, p));
            CHECK(r.resolved);
        }
    }
    SECTION("real and positive") {
        for (int N : {5, 20, 47}) {
            auto r = kashaev_knot(fig8, N, p);
            CHECK(r.value.re().sign() > 0);
            CHECK(abs(r.value.im()) < r.value.re() * Real::pow2(-60, p));
        }
    }
    SECTION("growth rate converges toward the volume") {
        // the rate approaches 4 L(pi/6) from above; the gap shrinks monotonically
        Real two_pi = ldexp2(Real::pi(p), 1);
        Real vol(2.0298832128193072, p);
        Real prev_gap(1e9, p);
        for (int N : {51, 101, 201, 401}) {
            auto r = kashaev_knot(fig8, N, p);
            Real rate = two_pi * log(abs(r.value)) / N;
            Real gap = abs(rate - vol);
            CHECK(gap < prev_gap);
            prev_gap = gap;
            if (N == 201) CHECK(gap < Real(0.25, p));
            if (N == 401) CHECK(gap < Real(0.15, p));
        }
    }
}

TEST_CASE("cabling formulas", "[jones]") {
    auto fig8 = HabiroKnot::figure_eight();
    SECTION("m=0, N=1 cable is the knot at color 1") {
        CHECK(cable_jones_exact(fig8, 0, 1, CableMethod::Mu) == ZPoly::constant(mpz_class(1)));
    }
    SECTION("unknot disconnected cable at N=2 is [1]+[3] = [2]^2") {
        auto u = HabiroKnot::unknot();
        ZPoly c = cable_jones_exact(u, 0, 2, CableMethod::Mu);
        CHECK(c == xvar::bracket(1) + xvar::bracket(3));
        CHECK(c == xvar::bracket(2) * xvar::bracket(2));
    }
    SECTION("mu and eq10 agree exactly") {
        for (int N = 1; N <= 8; ++N)
            for (long m : {0L, 1L, 2L, 3L, -2L})
                CHECK(cable_jones_exact(fig8, m, N, CableMethod::Mu) ==
                      cable_jones_exact(fig8, m, N, CableMethod::Eq10));
    }
    SECTION("mu and eq10 agree numerically at a generic point") {
        const Prec p = 256;
        Complex x = Complex::from_angle(Real(0.3, p) / 8L);
        for (int N : {3, 9, 17})
            for (long m : {0L, 1L, 3L}) {
                Complex a = cable_jones_eval(fig8, m, N, x, CableMethod::Mu);
                Complex b = cable_jones_eval(fig8, m, N, x, CableMethod::Eq10);
                CHECK(abs(a - b) <= (abs(a) + Real(1, p)) * Real::pow2(-60, p));
            }
    }
}

TEST_CASE("knot files", "[jones][io]") {
    SECTION("built-in figure-eight") {
        auto k = resolve_knot("fig8");
        CHECK(k.constant_one_coeffs());
        CHECK(k.framing2() == 0);
        CHECK(k.coeff(250) == ZPoly::constant(mpz_class(1)));
        CHECK_FALSE(k.max_l().has_value());
    }
    SECTION("round trip through a file") {
        auto trefoil = make_trefoil(6);
        std::string path = "test_knot_roundtrip.json";
        {
            std::ofstream out(path);
            out << to_json(trefoil).dump(1) << "\n";
        }
        auto loaded = load_knot_file(path);
        std::remove(path.c_str());
        CHECK(loaded.name() == "trefoil-left");
        CHECK(loaded.framing2() == 0);
        REQUIRE(loaded.max_l() == 6);
        for (int l = 0; l <= 6; ++l) CHECK(loaded.coeff(l) == trefoil.coeff(l));
        CHECK_THROWS_AS(loaded.coeff(7), std::out_of_range);
    }
    SECTION("half-integer framing accepted and flagged") {
        nlohmann::json j{{"name", "k"},
                         {"framing", "3/2"},
                         {"coeffs", nlohmann::json::array({to_json(ZPoly::constant(mpz_class(1)))})}};
        auto k = knot_from_json(j);
        CHECK(k.framing2() == 3);
        CHECK(k.half_integer_framing());
        CHECK(framing2_string(k.framing2()) == "3/2");
    }
    SECTION("whole framings normalize") {
        CHECK(parse_framing2("-2") == -4);
        CHECK(parse_framing2("4/2") == 4);
        CHECK(parse_framing2("6/1") == 12);
        CHECK_THROWS_AS(parse_framing2("1/3"), std::runtime_error);
        CHECK_THROWS_AS(parse_framing2("x"), std::runtime_error);
    }
    SECTION("non-integer coefficients rejected") {
        nlohmann::json bad{{"name", "k"},
                           {"framing", "0"},
                           {"coeffs", nlohmann::json::array(
                                          {nlohmann::json{{"ring", "Q"},
                                                          {"terms", {{"0", "1/2"}}}}})}};
        CHECK_THROWS_WITH(knot_from_json(bad), Catch::Matchers::ContainsSubstring("ring"));
        nlohmann::json bad2{{"name", "k"},
                            {"framing", "0"},
                            {"coeffs", nlohmann::json::array(
                                           {nlohmann::json{{"ring", "Z"},
                                                           {"terms", {{"0", "1/2"}}}}})}};
        CHECK_THROWS_WITH(knot_from_json(bad2), Catch::Matchers::ContainsSubstring("integer"));
    }
    SECTION("parse error carries location info") {
        std::string path = "test_knot_bad.json";
        {
            std::ofstream out(path);
            out << "{ not json";
        }
        CHECK_THROWS_WITH(load_knot_file(path), Catch::Matchers::ContainsSubstring(path));
        std::remove(path.c_str());
    }
}
