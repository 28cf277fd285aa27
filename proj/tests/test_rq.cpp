#include <catch2/catch_amalgamated.hpp>

#include <nodalcy/rq_ring.hpp>

#include "support/generators.hpp"

using namespace nodalcy;

namespace {

RQClass random_determined_class(testgen::Rng& rng, unsigned n) {
    RQClass out(n);
    std::uniform_int_distribution<int> c(-3, 3);
    for (unsigned k = 0; k < n; ++k) {
        if (k == (n - 1) / 2) continue;
        out += RQClass::eta_power(n, k).scale(Rational(c(rng)));
    }
    out += RQClass::plane_class_a(n).scale(Rational(c(rng)));
    out += RQClass::plane_class_b(n).scale(Rational(c(rng)));
    return out;
}

}  // namespace

TEST_CASE("defining relations of R_Q", "[rq]") {
    for (unsigned n : {5u, 7u, 9u}) {
        unsigned m = (n - 1) / 2;
        auto eta = RQClass::eta_power(n, 1);
        auto A = RQClass::plane_class_a(n);
        auto B = RQClass::plane_class_b(n);

        SECTION("eta^{m-1} * eta = A - B, n=" + std::to_string(n)) {
            auto lhs = RQClass::eta_power(n, m - 1) * eta;
            CHECK(lhs == A - B);
            CHECK(lhs.a_coefficient() == 1);
            CHECK(lhs.b_coefficient() == -1);
        }
        SECTION("(A + B) * eta = 0, n=" + std::to_string(n)) {
            CHECK(((A + B) * eta).is_zero());
        }
        SECTION("A * eta = 1/2 eta^{m+1}, n=" + std::to_string(n)) {
            auto expected = RQClass::eta_power(n, m + 1).scale(Rational(1) / 2);
            CHECK(A * eta == expected);
            CHECK((B * eta) == RQClass::eta_power(n, m + 1).scale(Rational(-1) / 2));
        }
        SECTION("(A - B) * eta = eta^{m+1}, n=" + std::to_string(n)) {
            CHECK((A - B) * eta == RQClass::eta_power(n, m + 1));
        }
        SECTION("(A + B) * eta^k = 0 for all k >= 1, n=" + std::to_string(n)) {
            for (unsigned k = 1; k <= n - 1; ++k) {
                CHECK(((A + B) * RQClass::eta_power(n, k)).is_zero());
            }
        }
        SECTION("A * A is undetermined, n=" + std::to_string(n)) {
            CHECK_FALSE((A * A).determined());
            CHECK_FALSE((A * B).determined());
            CHECK_FALSE(((A + B) * (A + B)).determined());
        }
        SECTION("A^2 - AB is a consequence: (A - B) * A = 1/2 eta^{n-1}") {
            CHECK((A - B) * A == RQClass::eta_power(n, n - 1).scale(Rational(1) / 2));
        }
    }
}

TEST_CASE("eta powers multiply through the middle degree", "[rq][property]") {
    for (unsigned n : {5u, 7u, 9u}) {
        for (unsigned k = 0; k <= n - 1; ++k) {
            for (unsigned l = 0; k + l <= n - 1; ++l) {
                auto prod = RQClass::eta_power(n, k) * RQClass::eta_power(n, l);
                CHECK(prod.determined());
                CHECK(prod == RQClass::eta_power(n, k + l));
            }
        }
        // degree truncation above n-1
        CHECK((RQClass::eta_power(n, n - 1) * RQClass::eta_power(n, 1)).is_zero());
    }
}

TEST_CASE("rq multiplication is commutative and associative where determined", "[rq][property]") {
    testgen::Rng rng(2024);
    for (unsigned n : {5u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_determined_class(rng, n);
            auto b = random_determined_class(rng, n);
            auto c = random_determined_class(rng, n);
            auto ab = a * b;
            auto ba = b * a;
            CHECK(ab == ba);
            auto bc = b * c;
            if (ab.determined() && bc.determined()) {
                auto ab_c = ab * c;
                auto a_bc = a * bc;
                if (ab_c.determined() && a_bc.determined()) CHECK(ab_c == a_bc);
            }
        }
    }
}

TEST_CASE("rq expression parsing and printing", "[rq]") {
    unsigned n = 5;
    CHECK(parse_rq_expression(n, "A - B") == RQClass::eta_power(n, 2));
    CHECK(parse_rq_expression(n, "eta^2") == RQClass::eta_power(n, 2));
    CHECK(parse_rq_expression(n, "1/2 * eta^3 + A") ==
          RQClass::eta_power(n, 3).scale(Rational(1) / 2) + RQClass::plane_class_a(n));
    CHECK(parse_rq_expression(n, "(A + B) * eta").is_zero());
    CHECK(parse_rq_expression(n, "-2*eta") == RQClass::eta_power(n, 1).scale(Rational(-2)));
    CHECK(parse_rq_expression(n, "3").to_string() == "3");
    CHECK(parse_rq_expression(n, "A-B").to_string() == "A - B");
    CHECK(parse_rq_expression(n, "eta*eta").to_string() == "A - B");  // eta^2 = eta^m prints on the A,B basis
    CHECK(RQClass::eta_power(n, 3).scale(Rational(1) / 2).to_string() == "1/2*eta^3");
    CHECK(RQClass(n).to_string() == "0");
    CHECK((parse_rq_expression(n, "A") * parse_rq_expression(n, "A")).to_string() == "undetermined");
    CHECK_THROWS_AS(parse_rq_expression(n, "eta^"), Error);
    CHECK_THROWS_AS(parse_rq_expression(n, "C"), Error);
    CHECK_THROWS_AS(parse_rq_expression(n, "(A"), Error);
}
