#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcable/blocks.hpp"
#include "qcable/laurent.hpp"

using namespace qcable;

namespace {

ZPoly zmono(long c, long e) { return ZPoly::monomial(mpz_class(c), e); }

// random Laurent polynomial with small coefficients and exponents
template <class Coeff>
LaurentPoly<Coeff> random_poly(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> nterms(0, 6), expd(-10, 10), coeffd(-9, 9);
    LaurentPoly<Coeff> p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(expd(rng), Coeff(coeffd(rng)));
    if (nonzero && p.is_zero()) p.add_term(expd(rng), Coeff(1 + (coeffd(rng) & 3)));
    return p;
}

}  // namespace

TEST_CASE("arithmetic basics", "[laurent]") {
    ZPoly a = ZPoly::diff_pow(1);              // x - x^{-1}
    ZPoly b = zmono(1, 1) + zmono(1, -1);      // x + x^{-1}
    CHECK(a * b == ZPoly::diff_pow(2));        // x^2 - x^{-2}

    ZPoly p = zmono(3, 5) + zmono(-2, 0);
    CHECK(p + ZPoly::zero() == p);
    CHECK(p - p == ZPoly::zero());
    CHECK((-p) + p == ZPoly::zero());

    // {1} [2] = {2} in the x-convention
    CHECK(xvar::brace(1) * xvar::bracket(2) == xvar::brace(2));

    // canonical form: cancelled terms disappear
    ZPoly c = zmono(1, 2) + zmono(-1, 2);
    CHECK(c.is_zero());
    CHECK(c.term_count() == 0);
}

TEST_CASE("evaluation at complex points", "[laurent]") {
    const Prec p = 64;
    SECTION("i + 1/i = 0") {
        ZPoly poly = zmono(1, 1) + zmono(1, -1);
        auto r = eval_at(poly, Complex::i(p), p);
        CHECK(abs(r.value) <= r.error_bound);
    }
    SECTION("{N} vanishes at the root") {
        RootContext ctx(4, 128);
        auto r = eval_at(xvar::brace(4), ctx.x0, 128);
        CHECK(abs(r.value) <= r.error_bound);
    }
    SECTION("x^2 at exp(i pi/4) is i") {
        Complex z = Complex::from_angle(Real::pi(p) / 4L);
        auto r = eval_at(zmono(1, 2), z, p);
        CHECK(abs(r.value - Complex::i(p)) < Real::pow2(-50, p));
    }
    SECTION("z = 0 rejected") {
        CHECK_THROWS_AS(eval_at(zmono(1, 2), Complex::zero(p), p), std::domain_error);
    }
}

TEST_CASE("exact division", "[laurent]") {
    SECTION("{2}/{1} = [2]") {
        auto r = exact_div(xvar::brace(2), xvar::brace(1));
        REQUIRE(r.divisible);
        CHECK(r.quotient == xvar::bracket(2));
    }
    SECTION("congruence instance divides") {
        // A(N-j,k) - A(N+j,k) - 2[2j]{N}{N-1} vs {N}^2 at N=3, j=1, k=1 (v-variable)
        const int N = 3, j = 1, k = 1;
        ZPoly lhs = ZPoly::diff_pow(N - j - k) * ZPoly::diff_pow(N - j + k) -
                    ZPoly::diff_pow(N + j - k) * ZPoly::diff_pow(N + j + k);
        ZPoly br2j;
        for (int s = 0; s < 2 * j; ++s) br2j.add_term(2 * j - 1 - 2 * s, mpz_class(1));
        lhs -= (br2j * ZPoly::diff_pow(N) * ZPoly::diff_pow(N - 1)).scale(mpz_class(2));
        ZPoly mod = ZPoly::diff_pow(N) * ZPoly::diff_pow(N);
        auto r = exact_div(lhs, mod);
        REQUIRE(r.divisible);
        CHECK(r.quotient * mod == lhs);
    }
    SECTION("non-divisible reports the remainder") {
        ZPoly num = zmono(1, 1) + zmono(1, 0);  // x + 1
        ZPoly den = zmono(1, 1) + zmono(-1, 0); // x - 1
        auto r = exact_div(num, den);
        REQUIRE_FALSE(r.divisible);
        CHECK_FALSE(r.remainder.is_zero());
    }
    SECTION("zero divisor rejected") {
        CHECK_THROWS_AS(exact_div(zmono(1, 0), ZPoly::zero()), std::domain_error);
    }
}

TEST_CASE("substitute_power and derivative", "[laurent]") {
    CHECK(zmono(1, 2).substitute_power(3) == zmono(1, 6));
    ZPoly d1 = ZPoly::diff_pow(1);
    CHECK(d1.substitute_power(-1) == -d1);
    // q - 1 into the x-convention (q = x^8)
    ZPoly qm1 = zmono(1, 1) + zmono(-1, 0);
    CHECK(qm1.substitute_power(8) == zmono(1, 8) + zmono(-1, 0));
    CHECK_THROWS_AS(zmono(1, 2).substitute_power(0), std::domain_error);

    CHECK(zmono(1, 3).derivative() == zmono(3, 2));
    CHECK(zmono(5, 0).derivative() == ZPoly::zero());
    CHECK(zmono(1, -1).derivative() == zmono(-1, -2));
}

TEST_CASE("ring axioms on random polynomials", "[laurent][property]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        ZPoly a = random_poly<mpz_class>(rng);
        ZPoly b = random_poly<mpz_class>(rng);
        ZPoly c = random_poly<mpz_class>(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("division undoes multiplication", "[laurent][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        ZPoly a = random_poly<mpz_class>(rng, true);
        ZPoly b = random_poly<mpz_class>(rng, true);
        auto r = exact_div(a * b, b);
        REQUIRE(r.divisible);
        CHECK(r.quotient == a);
    }
    for (int trial = 0; trial < 50; ++trial) {
        QPoly a = random_poly<mpq_class>(rng, true);
        QPoly b = random_poly<mpq_class>(rng, true);
        auto r = exact_div(a * b, b);
        REQUIRE(r.divisible);
        CHECK(r.quotient == a);
    }
}

TEST_CASE("evaluation is multiplicative within bounds", "[laurent][property]") {
    std::mt19937_64 rng(2024);
    const Prec p = 128;
    Complex z = Complex::from_angle(Real(0.7, p));
    for (int trial = 0; trial < 60; ++trial) {
        ZPoly a = random_poly<mpz_class>(rng);
        ZPoly b = random_poly<mpz_class>(rng);
        auto ra = eval_at(a, z, p), rb = eval_at(b, z, p), rab = eval_at(a * b, z, p);
        Real lhs = abs(rab.value - ra.value * rb.value);
        Real budget = rab.error_bound + ra.error_bound * (abs(rb.value) + Real(1, p)) +
                      rb.error_bound * (abs(ra.value) + Real(1, p));
        CHECK(lhs <= budget + Real::pow2(-100, p));
    }
}

TEST_CASE("JSON round trip and format", "[laurent][json]") {
    ZPoly zp = zmono(-1, -1) + zmono(12, 3);
    auto j = to_json(zp);
    CHECK(j["ring"] == "Z");
    CHECK(j["terms"]["-1"] == "-1");
    CHECK(j["terms"]["3"] == "12");
    CHECK(poly_from_json<mpz_class>(j) == zp);

    QPoly qp;
    qp.add_term(2, mpq_class(3, 4));
    qp.add_term(0, mpq_class(-5));
    auto jq = to_json(qp);
    CHECK(jq["ring"] == "Q");
    CHECK(jq["terms"]["2"] == "3/4");
    CHECK(poly_from_json<mpq_class>(jq) == qp);

    SECTION("ring mismatch rejected") {
        CHECK_THROWS_AS(poly_from_json<mpz_class>(jq), std::runtime_error);
    }
    SECTION("garbage coefficient rejected") {
        nlohmann::json bad{{"ring", "Z"}, {"terms", {{"0", "two"}}}};
        CHECK_THROWS_AS(poly_from_json<mpz_class>(bad), std::runtime_error);
    }
    SECTION("garbage exponent rejected") {
        nlohmann::json bad{{"ring", "Z"}, {"terms", {{"x", "2"}}}};
        CHECK_THROWS_AS(poly_from_json<mpz_class>(bad), std::runtime_error);
    }
}

TEST_CASE("integer coefficients embed into rationals", "[laurent]") {
    ZPoly zp = zmono(7, -2) + zmono(-3, 1);
    QPoly qp = to_rational(zp);
    CHECK(qp.coeff(-2) == mpq_class(7));
    QPoly scaled = qp.scale(mpq_class(1, 2));
    CHECK(scaled.coeff(-2) == mpq_class(7, 2));
}
