#include <catch2/catch_amalgamated.hpp>

#include <nodalcy/linalg.hpp>

#include "support/generators.hpp"

using namespace nodalcy;

namespace {

FieldMatrix from_ints(unsigned order, const std::vector<std::vector<int>>& rows) {
    FieldMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), order);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = CyclotomicNumber(order, Rational(rows[r][c]));
    return m;
}

FieldMatrix random_matrix(testgen::Rng& rng, unsigned order, std::size_t rows, std::size_t cols) {
    FieldMatrix m(rows, cols, order);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = testgen::random_cyclotomic(rng, order, 3);
    return m;
}

}  // namespace

TEST_CASE("rank of identity and simple matrices", "[linalg]") {
    FieldMatrix id(5, 5, 1);
    for (std::size_t i = 0; i < 5; ++i) id.at(i, i) = CyclotomicNumber::one(1);
    CHECK(rank_exact(id) == 5);

    CHECK(rank_exact(from_ints(1, {{1, 2}, {2, 4}})) == 1);
    CHECK(rank_exact(from_ints(1, {{1, 2}, {2, 4}, {0, 1}})) == 2);
    CHECK(rank_exact(FieldMatrix(3, 4, 1)) == 0);
}

TEST_CASE("rref basis is canonical", "[linalg]") {
    auto m = from_ints(1, {{2, 4, 6}, {1, 1, 1}});
    auto s = Subspace::row_space(m);
    REQUIRE(s.dim() == 2);
    CHECK(s.pivots() == std::vector<std::size_t>{0, 1});
    // rows: (1, 0, -1), (0, 1, 2)
    CHECK(s.basis()[0][0].is_one());
    CHECK(s.basis()[0][1].is_zero());
    CHECK(s.basis()[0][2] == CyclotomicNumber(1, Rational(-1)));
    CHECK(s.basis()[1][2] == CyclotomicNumber(1, Rational(2)));
}

TEST_CASE("subspace membership and equality", "[linalg]") {
    auto s = Subspace::row_space(from_ints(1, {{1, 1, 0}, {0, 0, 1}}));
    CHECK(s.contains({CyclotomicNumber(1, Rational(2)), CyclotomicNumber(1, Rational(2)),
                      CyclotomicNumber(1, Rational(-7))}));
    CHECK_FALSE(s.contains({CyclotomicNumber(1, Rational(1)), CyclotomicNumber(1, Rational(2)),
                            CyclotomicNumber::zero(1)}));
    auto t = Subspace::row_space(from_ints(1, {{2, 2, 5}, {-1, -1, 1}}));
    CHECK(s == t);
    auto u = Subspace::row_space(from_ints(1, {{1, 0, 0}}));
    CHECK(s != u);
}

TEST_CASE("rank is invariant under row/column permutation and row scaling", "[linalg][property]") {
    testgen::Rng rng(555);
    for (int trial = 0; trial < 12; ++trial) {
        unsigned order = trial % 2 == 0 ? 1u : 5u;
        std::size_t rows = 3 + trial % 3, cols = 4 + trial % 2;
        auto m = random_matrix(rng, order, rows, cols);
        std::size_t base = rank_exact(m);

        std::vector<std::size_t> rperm(rows), cperm(cols);
        std::iota(rperm.begin(), rperm.end(), 0);
        std::iota(cperm.begin(), cperm.end(), 0);
        std::shuffle(rperm.begin(), rperm.end(), rng);
        std::shuffle(cperm.begin(), cperm.end(), rng);

        FieldMatrix permuted(rows, cols, order);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) permuted.at(r, c) = m.at(rperm[r], cperm[c]);
        CHECK(rank_exact(permuted) == base);

        FieldMatrix scaled = m;
        for (std::size_t r = 0; r < rows; ++r) {
            auto factor = testgen::random_nonzero_cyclotomic(rng, order, 3);
            for (std::size_t c = 0; c < cols; ++c) scaled.at(r, c) *= factor;
        }
        CHECK(rank_exact(scaled) == base);
    }
}

TEST_CASE("rref is stable under row permutation", "[linalg][property]") {
    testgen::Rng rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_matrix(rng, 5, 5, 6);
        auto s = Subspace::row_space(m);
        std::vector<std::size_t> perm(m.rows());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        FieldMatrix permuted(m.rows(), m.cols(), 5);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) permuted.at(r, c) = m.at(perm[r], c);
        CHECK(Subspace::row_space(permuted) == s);
    }
}

TEST_CASE("nullspace vectors annihilate the matrix", "[linalg][property]") {
    testgen::Rng rng(888);
    for (int trial = 0; trial < 8; ++trial) {
        auto m = random_matrix(rng, 5, 3, 6);
        auto null = nullspace(m);
        CHECK(null.size() == m.cols() - rank_exact(m));
        for (const auto& v : null) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                auto acc = CyclotomicNumber::zero(5);
                for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r, c) * v[c];
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("modular rank is a lower bound that usually matches", "[linalg][property]") {
    testgen::Rng rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_matrix(rng, 5, 4, 5);
        std::size_t exact = rank_exact(m);
        for (std::uint64_t p : {11ull, 31ull}) {
            // random small entries can have denominators divisible by p only
            // when p <= 6; these primes are safe for the generator above
            std::size_t modular = rank_mod_p(m, p);
            CHECK(modular <= exact);
        }
    }
    // integer-entry matrix: modular rank equals exact rank for good primes
    auto m = from_ints(1, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(rank_exact(m) == 2);
    CHECK(rank_mod_p(m, 101) == 2);
    CHECK(rank_mod_p(m, 11) == 2);
}

TEST_CASE("modular streaming rank stops early", "[linalg]") {
    std::size_t calls = 0;
    auto rank = modular_rank_streaming(100, 3, 11, [&](std::size_t r, std::vector<std::uint64_t>& row) {
        ++calls;
        row[0] = (r + 1) % 11;
        row[1] = (r * r + 3) % 11;
        row[2] = 7;
    });
    CHECK(rank == 3);
    CHECK(calls < 100);
}
