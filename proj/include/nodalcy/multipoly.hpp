#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace nodalcy {

using Exponents = std::vector<unsigned>;

struct Monomial {
    Exponents exponents;

    unsigned degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0u); }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exponents == b.exponents; }
};

// All exponent vectors of total degree d in k variables, x0-dominant:
// lexicographically decreasing exponent vectors, so x0^d comes first.
// This order is part of the evaluation-matrix layout contract.
inline std::vector<Monomial> monomial_basis(unsigned num_vars, unsigned degree) {
    if (num_vars < 1) fail(errc::invalid_argument, "monomial_basis requires at least one variable");
    std::vector<Monomial> out;
    Exponents current(num_vars, 0);
    auto recurse = [&](auto&& self, unsigned var, unsigned remaining) -> void {
        if (var + 1 == num_vars) {
            current[var] = remaining;
            out.push_back(Monomial{current});
            return;
        }
        for (unsigned e = remaining + 1; e-- > 0;) {
            current[var] = e;
            self(self, var + 1, remaining - e);
        }
        current[var] = 0;
    };
    recurse(recurse, 0, degree);
    return out;
}

// A point of P^{k-1}; canonical representative scales the first nonzero
// coordinate to 1, giving decidable equality and well-defined evaluation.
class ProjectivePoint {
  public:
    explicit ProjectivePoint(std::vector<CyclotomicNumber> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) fail(errc::invalid_argument, "projective point needs at least one coordinate");
        std::size_t lead = coords_.size();
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (!coords_[i].is_zero()) {
                lead = i;
                break;
            }
        }
        if (lead == coords_.size()) fail(errc::invalid_argument, "projective point cannot be all zero");
        if (!coords_[lead].is_one()) {
            auto inv = coords_[lead].inverse();
            for (auto& c : coords_) c *= inv;
        }
    }

    const std::vector<CyclotomicNumber>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    unsigned field_order() const { return coords_.front().order(); }

    std::size_t last_nonzero_index() const {
        for (std::size_t i = coords_.size(); i-- > 0;) {
            if (!coords_[i].is_zero()) return i;
        }
        return 0;  // unreachable: canonical points are nonzero
    }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) { return !(a == b); }

  private:
    std::vector<CyclotomicNumber> coords_;
};

namespace detail {

// Coordinate powers up to max_exp, shared across many term evaluations.
inline std::vector<std::vector<CyclotomicNumber>> power_table(const std::vector<CyclotomicNumber>& coords,
                                                              unsigned max_exp) {
    std::vector<std::vector<CyclotomicNumber>> pows(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        pows[i].reserve(max_exp + 1);
        pows[i].push_back(CyclotomicNumber::one(coords[i].order()));
        for (unsigned e = 1; e <= max_exp; ++e) pows[i].push_back(pows[i].back() * coords[i]);
    }
    return pows;
}

}  // namespace detail

// Sparse homogeneous multivariate polynomial over Q(zeta_N). Zero
// coefficients are never stored.
class MultiPoly {
  public:
    MultiPoly(unsigned num_vars, unsigned field_order) : num_vars_(num_vars), field_order_(field_order) {
        if (num_vars_ < 1) fail(errc::invalid_argument, "polynomial needs at least one variable");
    }

    unsigned num_vars() const { return num_vars_; }
    unsigned field_order() const { return field_order_; }
    const std::map<Exponents, CyclotomicNumber>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds (summing with any existing term, dropping exact zeros).
    void add_term(const Exponents& exponents, CyclotomicNumber coeff) {
        if (exponents.size() != num_vars_) fail(errc::arity_mismatch, "exponent vector has wrong length");
        if (coeff.order() != field_order_) fail(errc::order_mismatch, "coefficient has wrong cyclotomic order");
        if (coeff.is_zero()) return;
        auto it = terms_.find(exponents);
        if (it == terms_.end()) {
            terms_.emplace(exponents, std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_term(const Exponents& exponents, Rational coeff) {
        add_term(exponents, CyclotomicNumber(field_order_, std::move(coeff)));
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, Monomial{e}.degree());
        return d;
    }

    bool is_homogeneous() const {
        std::optional<unsigned> d;
        for (const auto& [e, c] : terms_) {
            unsigned deg = Monomial{e}.degree();
            if (!d) {
                d = deg;
            } else if (*d != deg) {
                return false;
            }
        }
        return true;
    }

    // Evaluation at an affine coordinate vector.
    CyclotomicNumber evaluate_at(const std::vector<CyclotomicNumber>& coords) const {
        if (coords.size() != num_vars_) fail(errc::arity_mismatch, "coordinate vector has wrong length");
        auto pows = detail::power_table(coords, degree());
        return evaluate_with_powers(pows);
    }

    // Evaluation at the canonical representative of a projective point;
    // well defined because the polynomial is homogeneous.
    CyclotomicNumber evaluate(const ProjectivePoint& p) const {
        if (p.size() != num_vars_) fail(errc::arity_mismatch, "point dimension does not match polynomial arity");
        if (!is_homogeneous()) fail(errc::invalid_argument, "projective evaluation requires a homogeneous polynomial");
        return evaluate_at(p.coords());
    }

    CyclotomicNumber evaluate_with_powers(const std::vector<std::vector<CyclotomicNumber>>& pows) const {
        CyclotomicNumber acc = CyclotomicNumber::zero(field_order_);
        for (const auto& [exps, coeff] : terms_) {
            CyclotomicNumber term = coeff;
            for (std::size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] == 0) continue;
                if (pows[i][exps[i]].is_zero()) {
                    term = CyclotomicNumber::zero(field_order_);
                    break;
                }
                term *= pows[i][exps[i]];
            }
            acc += term;
        }
        return acc;
    }

    MultiPoly partial_derivative(unsigned var) const {
        if (var >= num_vars_) fail(errc::index_out_of_range, "no variable with index " + std::to_string(var));
        MultiPoly out(num_vars_, field_order_);
        for (const auto& [exps, coeff] : terms_) {
            if (exps[var] == 0) continue;
            Exponents e = exps;
            e[var] -= 1;
            CyclotomicNumber c = coeff;
            c.scale(Rational(exps[var]));
            out.add_term(e, std::move(c));
        }
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& scale(const CyclotomicNumber& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly out(a.num_vars_, a.field_order_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.num_vars_);
                for (unsigned i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.field_order_ == b.field_order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  private:
    void check_compatible(const MultiPoly& rhs) const {
        if (num_vars_ != rhs.num_vars_) fail(errc::arity_mismatch, "polynomials have different arities");
        if (field_order_ != rhs.field_order_) fail(errc::order_mismatch, "polynomials live in different fields");
    }

    unsigned num_vars_;
    unsigned field_order_;
    std::map<Exponents, CyclotomicNumber> terms_;
};

// Hessian of the dehomogenization of f in the chart x_chart = 1, evaluated
// at the affine image of p. At a critical point of a homogeneous f the rank
// of this matrix does not depend on the chart choice.
inline std::vector<std::vector<CyclotomicNumber>> hessian_matrix(const MultiPoly& f, const ProjectivePoint& p,
                                                                 unsigned chart) {
    const unsigned k = f.num_vars();
    if (p.size() != k) fail(errc::arity_mismatch, "point dimension does not match polynomial arity");
    if (chart >= k) fail(errc::index_out_of_range, "chart index out of range");
    if (!f.is_homogeneous()) fail(errc::invalid_argument, "hessian_matrix requires a homogeneous polynomial");
    if (p.coords()[chart].is_zero()) fail(errc::chart_not_valid, "point has zero coordinate at chart index");

    // Affine image: scale so the chart coordinate is 1.
    std::vector<CyclotomicNumber> coords = p.coords();
    if (!coords[chart].is_one()) {
        auto inv = coords[chart].inverse();
        for (auto& c : coords) c *= inv;
    }
    auto pows = detail::power_table(coords, f.degree());

    std::vector<unsigned> vars;
    vars.reserve(k - 1);
    for (unsigned i = 0; i < k; ++i)
        if (i != chart) vars.push_back(i);

    std::vector<MultiPoly> firsts;
    firsts.reserve(k - 1);
    for (unsigned v : vars) firsts.push_back(f.partial_derivative(v));

    std::vector<std::vector<CyclotomicNumber>> hess(k - 1,
                                                    std::vector<CyclotomicNumber>(k - 1, CyclotomicNumber::zero(f.field_order())));
    for (std::size_t a = 0; a < vars.size(); ++a) {
        for (std::size_t b = a; b < vars.size(); ++b) {
            auto second = firsts[a].partial_derivative(vars[b]);
            auto value = second.evaluate_with_powers(pows);
            hess[a][b] = value;
            if (a != b) hess[b][a] = std::move(value);
        }
    }
    return hess;
}

// Chart defaults to the last nonzero coordinate, matching the node normal
// form with trailing coordinate 1.
inline std::vector<std::vector<CyclotomicNumber>> hessian_matrix(const MultiPoly& f, const ProjectivePoint& p) {
    return hessian_matrix(f, p, static_cast<unsigned>(p.last_nonzero_index()));
}

}  // namespace nodalcy
