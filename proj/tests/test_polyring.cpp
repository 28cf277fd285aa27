#include <catch2/catch_amalgamated.hpp>

#include <nodalcy/multipoly.hpp>

#include "support/generators.hpp"

using namespace nodalcy;

namespace {

MultiPoly fermat_minus_product(unsigned n) {
    // x_0^{n+2} + ... + x_{n+1}^{n+2} - (n+2) x_0 ... x_{n+1}, order n+2
    unsigned k = n + 2;
    MultiPoly f(k, k);
    for (unsigned i = 0; i < k; ++i) {
        Exponents e(k, 0);
        e[i] = k;
        f.add_term(e, Rational(1));
    }
    Exponents all_ones(k, 1);
    f.add_term(all_ones, Rational(-static_cast<int>(k)));
    return f;
}

ProjectivePoint rational_point(unsigned order, const std::vector<int>& coords) {
    std::vector<CyclotomicNumber> v;
    v.reserve(coords.size());
    for (int c : coords) v.emplace_back(order, Rational(c));
    return ProjectivePoint(std::move(v));
}

MultiPoly random_homogeneous(testgen::Rng& rng, unsigned k, unsigned order, unsigned degree, unsigned terms) {
    auto basis = monomial_basis(k, degree);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    MultiPoly f(k, order);
    for (unsigned t = 0; t < terms; ++t) {
        f.add_term(basis[pick(rng)].exponents, testgen::random_cyclotomic(rng, order, 4));
    }
    return f;
}

}  // namespace

TEST_CASE("monomial basis order and sizes", "[polyring]") {
    auto b21 = monomial_basis(2, 1);
    REQUIRE(b21.size() == 2);
    CHECK(b21[0].exponents == Exponents{1, 0});
    CHECK(b21[1].exponents == Exponents{0, 1});

    CHECK(monomial_basis(5, 5).size() == 126);
    CHECK(monomial_basis(7, 14).size() == 38760);

    auto b33 = monomial_basis(3, 3);
    CHECK(b33.size() == 10);
    CHECK(b33.front().exponents == Exponents{3, 0, 0});
    CHECK(b33.back().exponents == Exponents{0, 0, 3});
    // x0-dominant: strictly decreasing lexicographically
    for (std::size_t i = 1; i < b33.size(); ++i) {
        CHECK(std::lexicographical_compare(b33[i].exponents.begin(), b33[i].exponents.end(),
                                           b33[i - 1].exponents.begin(), b33[i - 1].exponents.end()));
    }
    for (const auto& m : b33) CHECK(m.degree() == 3);
}

TEST_CASE("projective point canonicalization", "[polyring]") {
    auto p = rational_point(1, {0, 3, 6});
    CHECK(p.coords()[0].is_zero());
    CHECK(p.coords()[1].is_one());
    CHECK(p.coords()[2] == CyclotomicNumber(1, Rational(2)));
    CHECK(p.last_nonzero_index() == 2);

    // scaling yields the same canonical point
    std::vector<CyclotomicNumber> scaled{CyclotomicNumber::zero(1), CyclotomicNumber(1, Rational(-5)),
                                         CyclotomicNumber(1, Rational(-10))};
    CHECK(ProjectivePoint(scaled) == p);

    std::vector<CyclotomicNumber> zero(3, CyclotomicNumber::zero(1));
    CHECK_THROWS_AS(ProjectivePoint(zero), Error);
}

TEST_CASE("evaluate examples", "[polyring]") {
    SECTION("Fermat quintic minus product at the all-ones point") {
        auto f = fermat_minus_product(3);
        CHECK(f.evaluate(rational_point(5, {1, 1, 1, 1, 1})).is_zero());
    }
    SECTION("x0 at [0:1]") {
        MultiPoly f(2, 1);
        f.add_term({1, 0}, Rational(1));
        CHECK(f.evaluate(rational_point(1, {0, 1})).is_zero());
    }
    SECTION("sum of squares at [1 : zeta_4 : 0]") {
        MultiPoly f(3, 4);
        for (unsigned i = 0; i < 3; ++i) {
            Exponents e(3, 0);
            e[i] = 2;
            f.add_term(e, Rational(1));
        }
        std::vector<CyclotomicNumber> coords{CyclotomicNumber::one(4), CyclotomicNumber::zeta(4),
                                             CyclotomicNumber::zero(4)};
        CHECK(f.evaluate(ProjectivePoint(coords)).is_zero());
    }
    SECTION("arity mismatch") {
        MultiPoly f(2, 1);
        f.add_term({1, 0}, Rational(1));
        CHECK_THROWS_AS(f.evaluate(rational_point(1, {1, 1, 1})), Error);
    }
}

TEST_CASE("partial derivative examples", "[polyring]") {
    SECTION("d(x0^2)/dx0 = 2 x0") {
        MultiPoly f(1, 1);
        f.add_term({2}, Rational(1));
        auto df = f.partial_derivative(0);
        REQUIRE(df.terms().size() == 1);
        CHECK(df.terms().begin()->first == Exponents{1});
        CHECK(df.terms().begin()->second == CyclotomicNumber(1, Rational(2)));
    }
    SECTION("d(x0 x1 x2 x3 x4)/dx2") {
        MultiPoly f(5, 1);
        f.add_term({1, 1, 1, 1, 1}, Rational(1));
        auto df = f.partial_derivative(2);
        REQUIRE(df.terms().size() == 1);
        CHECK(df.terms().begin()->first == Exponents{1, 1, 0, 1, 1});
    }
    SECTION("Schoen n=3 gradient component vanishes at the all-ones node") {
        auto f = fermat_minus_product(3);
        auto df = f.partial_derivative(0);
        CHECK(df.evaluate(rational_point(5, {1, 1, 1, 1, 1})).is_zero());
    }
    SECTION("index out of range") {
        MultiPoly f(2, 1);
        CHECK_THROWS_AS(f.partial_derivative(2), Error);
    }
}

TEST_CASE("hessian examples", "[polyring]") {
    SECTION("sum of squares: 2 * identity") {
        MultiPoly f(4, 1);
        for (unsigned i = 0; i < 4; ++i) {
            Exponents e(4, 0);
            e[i] = 2;
            f.add_term(e, Rational(1));
        }
        auto h = hessian_matrix(f, rational_point(1, {1, 0, 0, 0}), 0);
        REQUIRE(h.size() == 3);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                CHECK(h[a][b] == CyclotomicNumber(1, Rational(a == b ? 2 : 0)));
            }
        }
    }
    SECTION("f = x0 x1 in the chart x2 at [0:0:1]") {
        MultiPoly f(3, 1);
        f.add_term({1, 1, 0}, Rational(1));
        auto h = hessian_matrix(f, rational_point(1, {0, 0, 1}), 2);
        REQUIRE(h.size() == 2);
        CHECK(h[0][0].is_zero());
        CHECK(h[0][1].is_one());
        CHECK(h[1][0].is_one());
        CHECK(h[1][1].is_zero());
    }
    SECTION("f = x0^3 in the chart x1 at [0:1]: degenerate") {
        MultiPoly f(2, 1);
        f.add_term({3, 0}, Rational(1));
        auto h = hessian_matrix(f, rational_point(1, {0, 1}), 1);
        REQUIRE(h.size() == 1);
        CHECK(h[0][0].is_zero());
    }
    SECTION("default chart is the last nonzero coordinate") {
        MultiPoly f(3, 1);
        f.add_term({1, 1, 0}, Rational(1));
        auto h = hessian_matrix(f, rational_point(1, {0, 0, 1}));
        CHECK(h[0][1].is_one());
    }
    SECTION("invalid chart") {
        MultiPoly f(3, 1);
        f.add_term({1, 1, 0}, Rational(1));
        CHECK_THROWS_AS(hessian_matrix(f, rational_point(1, {0, 0, 1}), 0), Error);
    }
}

TEST_CASE("Euler relation for random homogeneous polynomials", "[polyring][property]") {
    testgen::Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        unsigned k = 2 + static_cast<unsigned>(trial % 4);
        unsigned d = 1 + static_cast<unsigned>(trial % 5);
        unsigned order = (trial % 2 == 0) ? 1u : 5u;
        auto f = random_homogeneous(rng, k, order, d, 6);
        MultiPoly lhs(k, order);
        for (unsigned i = 0; i < k; ++i) {
            MultiPoly xi(k, order);
            Exponents e(k, 0);
            e[i] = 1;
            xi.add_term(e, Rational(1));
            lhs += xi * f.partial_derivative(i);
        }
        MultiPoly rhs = f;
        rhs.scale(CyclotomicNumber(order, Rational(d)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluation is multiplicative", "[polyring][property]") {
    testgen::Rng rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned k = 3;
        unsigned order = 5;
        auto f = random_homogeneous(rng, k, order, 2 + (trial % 3), 5);
        auto g = random_homogeneous(rng, k, order, 1 + (trial % 2), 5);
        std::vector<CyclotomicNumber> coords;
        for (unsigned i = 0; i < k; ++i) coords.push_back(testgen::random_cyclotomic(rng, order, 3));
        bool nonzero = false;
        for (auto& c : coords) nonzero = nonzero || !c.is_zero();
        if (!nonzero) coords[0] = CyclotomicNumber::one(order);
        ProjectivePoint p(coords);
        CHECK((f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p));
    }
}

TEST_CASE("hessian is symmetric", "[polyring][property]") {
    testgen::Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_homogeneous(rng, 4, 5, 3, 8);
        std::vector<CyclotomicNumber> coords;
        for (unsigned i = 0; i < 4; ++i) coords.push_back(testgen::random_cyclotomic(rng, 5, 2));
        coords[3] = CyclotomicNumber::one(5);
        ProjectivePoint p(coords);
        auto h = hessian_matrix(f, p);
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = 0; b < h.size(); ++b) CHECK(h[a][b] == h[b][a]);
    }
}
