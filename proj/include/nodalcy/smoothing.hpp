#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "errors.hpp"
#include "hypersurface.hpp"
#include "linalg.hpp"
#include "multipoly.hpp"
#include "parallel.hpp"

namespace nodalcy {

// Matrix of the evaluation map H^0(O(d)) -> (+)_i H^0(O_{p_i}) in monomial
// coordinates: rows indexed by the degree-d monomial basis, columns by the
// model's node order.
struct EvalMatrix {
    unsigned degree = 0;
    std::vector<Monomial> monomials;
    FieldMatrix matrix;
};

inline EvalMatrix evaluation_matrix(const NodalHypersurface& model, unsigned degree) {
    if (degree < 1) fail(errc::invalid_argument, "evaluation degree must be positive");
    const unsigned k = model.n() + 2;
    auto monomials = monomial_basis(k, degree);
    FieldMatrix matrix(monomials.size(), model.node_count(), model.field_order());
    parallel_for(model.node_count(), [&](std::size_t c) {
        auto pows = detail::power_table(model.nodes()[c].coords(), degree);
        for (std::size_t r = 0; r < monomials.size(); ++r) {
            CyclotomicNumber value = CyclotomicNumber::one(model.field_order());
            for (unsigned i = 0; i < k; ++i) {
                unsigned e = monomials[r].exponents[i];
                if (e == 0) continue;
                if (pows[i][e].is_zero()) {
                    value = CyclotomicNumber::zero(model.field_order());
                    break;
                }
                value *= pows[i][e];
            }
            matrix.at(r, c) = std::move(value);
        }
    });
    return {degree, std::move(monomials), std::move(matrix)};
}

// I: the local smoothing parameters realized by global degree-(n+2)
// deformations. Multiples of f and automorphism-direction deformations
// evaluate to zero at the nodes, so the plain monomial image already is
// the image of H^0(O_X(X)).
inline Subspace space_I(const NodalHypersurface& model) {
    return Subspace::row_space(evaluation_matrix(model, model.n() + 2).matrix);
}

// K: the relation space among the A_i - B_i classes, realized as the image
// of degree m(n+2) forms at the nodes, m = (n-1)/2.
inline Subspace space_K(const NodalHypersurface& model) {
    if (model.m() == 1) return space_I(model);  // the two degrees coincide
    return Subspace::row_space(evaluation_matrix(model, model.m() * (model.n() + 2)).matrix);
}

// Coordinatewise m-th power in the semisimple algebra (+)_i O_{p_i}.
inline std::vector<CyclotomicNumber> power_map(const std::vector<CyclotomicNumber>& eps, unsigned m) {
    std::vector<CyclotomicNumber> out;
    out.reserve(eps.size());
    for (const auto& e : eps) out.push_back(e.pow(m));
    return out;
}

struct PowerContainmentResult {
    bool contained = true;
    std::size_t vectors_tested = 0;
    std::optional<std::vector<CyclotomicNumber>> witness_source;  // v in I whose power escapes K
    std::optional<std::vector<CyclotomicNumber>> witness_power;
};

// Checks power_map(v, m) in K for every basis vector of I plus seeded
// random field-linear combinations. On a genuine nodal model a failure
// would point at the implementation, so the witness is returned for
// inspection.
inline PowerContainmentResult check_power_containment(const Subspace& I, const Subspace& K, unsigned m,
                                                      std::size_t random_checks = 50, std::uint64_t seed = 0) {
    if (I.ambient_dim() != K.ambient_dim() || I.field_order() != K.field_order())
        fail(errc::dimension_mismatch, "I and K live in different coordinate spaces");
    PowerContainmentResult result;
    auto test = [&](const std::vector<CyclotomicNumber>& v) {
        auto powered = power_map(v, m);
        ++result.vectors_tested;
        if (!K.contains(powered)) {
            result.contained = false;
            result.witness_source = v;
            result.witness_power = std::move(powered);
            return false;
        }
        return true;
    };
    for (const auto& b : I.basis()) {
        if (!test(b)) return result;
    }
    const unsigned order = I.field_order();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> scalar(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<unsigned> zeta_exp(0, order - 1);
    for (std::size_t trial = 0; trial < random_checks; ++trial) {
        std::vector<CyclotomicNumber> v(I.ambient_dim(), CyclotomicNumber::zero(order));
        for (const auto& b : I.basis()) {
            CyclotomicNumber c = CyclotomicNumber::zeta_power(order, zeta_exp(rng));
            c.scale(Rational(sign(rng) ? scalar(rng) : -scalar(rng)));
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (!b[j].is_zero()) {
                    CyclotomicNumber term = b[j];
                    term *= c;
                    v[j] += term;
                }
            }
        }
        if (!test(v)) return result;
    }
    return result;
}

inline PowerContainmentResult check_power_containment(const NodalHypersurface& model, std::size_t random_checks = 50,
                                                      std::uint64_t seed = 0) {
    auto I = space_I(model);
    auto K = space_K(model);
    return check_power_containment(I, K, model.m(), random_checks, seed);
}

struct PowerSpanResult {
    bool budget_exhausted = false;
    bool spans = false;                // meaningful only when !budget_exhausted
    std::size_t span_dim = 0;          // a lower bound when budget_exhausted
    std::size_t products_considered = 0;
    bool products_inside_K = true;
};

// Span of all m-fold coordinatewise products of I-basis vectors (a
// spanning set for the image of S^m I), compared against K. Stops as soon
// as the span reaches dim K; gives a lower bound when the product budget
// runs out first.
inline PowerSpanResult check_power_spans(const Subspace& I, const Subspace& K, unsigned m,
                                         std::size_t product_budget = 1000000) {
    if (I.ambient_dim() != K.ambient_dim() || I.field_order() != K.field_order())
        fail(errc::dimension_mismatch, "I and K live in different coordinate spaces");
    if (m < 1) fail(errc::invalid_argument, "power exponent must be at least 1");
    PowerSpanResult result;
    const std::size_t amb = I.ambient_dim();
    const unsigned order = I.field_order();
    const std::size_t r = I.dim();
    SubspaceBuilder span(amb, order);

    if (r == 0) {
        result.spans = K.dim() == 0;
        return result;
    }

    // multisets i_1 <= ... <= i_m over the basis indices
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        if (result.products_considered >= product_budget) {
            result.budget_exhausted = true;
            result.span_dim = span.dim();
            return result;
        }
        std::vector<CyclotomicNumber> prod(amb, CyclotomicNumber::one(order));
        for (unsigned t = 0; t < m; ++t) {
            const auto& b = I.basis()[idx[t]];
            for (std::size_t j = 0; j < amb; ++j) prod[j] *= b[j];
        }
        ++result.products_considered;
        if (!K.contains(prod)) result.products_inside_K = false;
        span.insert(std::move(prod));
        if (span.dim() == K.dim() && result.products_inside_K) {
            result.spans = true;
            result.span_dim = span.dim();
            return result;
        }
        // advance the multiset odometer
        unsigned t = m;
        while (t-- > 0) {
            if (idx[t] + 1 < r) {
                std::size_t next = idx[t] + 1;
                for (unsigned u = t; u < m; ++u) idx[u] = next;
                break;
            }
            if (t == 0) {
                result.span_dim = span.dim();
                result.spans = (span.dim() == K.dim()) && result.products_inside_K;
                return result;
            }
        }
    }
}

inline PowerSpanResult check_power_spans(const NodalHypersurface& model, std::size_t product_budget = 1000000) {
    auto I = space_I(model);
    auto K = space_K(model);
    return check_power_spans(I, K, model.m(), product_budget);
}

struct SmoothableResult {
    bool smoothable = false;
    std::vector<bool> per_node;  // coordinate i is realizable as nonzero
};

// K contains a vector with every coordinate nonzero iff it avoids each
// coordinate hyperplane, i.e. for every i some basis vector is nonzero at
// i (a subspace over an infinite field is never a finite union of proper
// subspaces).
inline SmoothableResult check_smoothable(const Subspace& K) {
    SmoothableResult result;
    result.per_node.assign(K.ambient_dim(), false);
    for (const auto& row : K.basis()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i].is_zero()) result.per_node[i] = true;
        }
    }
    result.smoothable = true;
    for (bool ok : result.per_node) result.smoothable = result.smoothable && ok;
    return result;
}

inline SmoothableResult check_smoothable(const NodalHypersurface& model) { return check_smoothable(space_K(model)); }

// --- modular lower-bound path ----------------------------------------------

struct ModularRankResult {
    std::uint64_t prime = 0;
    std::uint64_t zeta_image = 0;
    std::size_t rank = 0;  // a lower bound for the exact rank
};

// Rank of the degree-d evaluation matrix over F_p without materializing
// exact entries; rows are streamed monomial-by-monomial.
inline ModularRankResult modular_evaluation_rank(const NodalHypersurface& model, unsigned degree, std::uint64_t p) {
    const unsigned order = model.field_order();
    PrimeFieldElement zeta = find_root_of_unity(p, order);
    const unsigned k = model.n() + 2;
    const std::size_t ncols = model.node_count();

    // per-node coordinate power tables mod p
    std::vector<std::vector<std::uint64_t>> pow_tables(ncols);
    parallel_for(ncols, [&](std::size_t c) {
        const auto& coords = model.nodes()[c].coords();
        auto& table = pow_tables[c];
        table.assign(static_cast<std::size_t>(k) * (degree + 1), 1 % p);
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t base = reduce_mod_p(coords[i], p, zeta).value;
            std::uint64_t acc = 1 % p;
            for (unsigned e = 1; e <= degree; ++e) {
                acc = mulmod(acc, base, p);
                table[i * (degree + 1) + e] = acc;
            }
        }
    });

    auto monomials = monomial_basis(k, degree);
    std::size_t rank = modular_rank_streaming(monomials.size(), ncols, p, [&](std::size_t r, std::vector<std::uint64_t>& row) {
        const auto& exps = monomials[r].exponents;
        for (std::size_t c = 0; c < ncols; ++c) {
            const auto& table = pow_tables[c];
            std::uint64_t v = 1 % p;
            for (unsigned i = 0; i < k; ++i) {
                unsigned e = exps[i];
                if (e != 0) v = mulmod(v, table[i * (degree + 1) + e], p);
            }
            row[c] = v;
        }
    });
    return {p, zeta.value, rank};
}

}  // namespace nodalcy
