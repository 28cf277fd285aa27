#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "multipoly.hpp"
#include "parallel.hpp"

namespace nodalcy {

namespace detail {

inline unsigned long long ipow(unsigned base, unsigned exp) {
    unsigned long long out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

// Deterministic key for canonical-point dedup.
inline std::string point_key(const ProjectivePoint& p) {
    std::string key;
    for (const auto& coord : p.coords()) {
        for (const auto& c : coord.coeffs()) {
            key += to_fraction_string(c);
            key += ',';
        }
        key += ';';
    }
    return key;
}

}  // namespace detail

struct OdpRecord {
    bool on_hypersurface = false;
    bool critical = false;
    std::size_t hessian_rank = 0;
    bool is_odp = false;
};

// Precomputes first and second partials of f once; per-point checks are
// then cheap enough to run over large node sets.
class OdpVerifier {
  public:
    explicit OdpVerifier(const MultiPoly& f) : f_(&f), k_(f.num_vars()) {
        if (!f.is_homogeneous()) fail(errc::invalid_argument, "ODP verification requires a homogeneous polynomial");
        partials_.reserve(k_);
        for (unsigned i = 0; i < k_; ++i) partials_.push_back(f.partial_derivative(i));
        seconds_.resize(k_);
        for (unsigned i = 0; i < k_; ++i) {
            seconds_[i].reserve(k_ - i);
            for (unsigned j = i; j < k_; ++j) seconds_[i].push_back(partials_[i].partial_derivative(j));
        }
    }

    // Chart defaults to the last nonzero coordinate of the canonical point.
    OdpRecord verify(const ProjectivePoint& p) const {
        return verify(p, static_cast<unsigned>(p.last_nonzero_index()));
    }

    OdpRecord verify(const ProjectivePoint& p, unsigned chart) const {
        if (p.size() != k_) fail(errc::arity_mismatch, "point dimension does not match polynomial arity");
        if (chart >= k_ || p.coords()[chart].is_zero()) fail(errc::chart_not_valid, "invalid chart for this point");
        OdpRecord record;

        auto pows = detail::power_table(p.coords(), f_->degree());
        record.on_hypersurface = f_->evaluate_with_powers(pows).is_zero();
        record.critical = true;
        for (unsigned i = 0; i < k_; ++i) {
            if (!partials_[i].evaluate_with_powers(pows).is_zero()) {
                record.critical = false;
                break;
            }
        }
        if (!record.on_hypersurface || !record.critical) return record;

        // Affine Hessian in the chart, via the scaled representative.
        std::vector<CyclotomicNumber> coords = p.coords();
        if (!coords[chart].is_one()) {
            auto inv = coords[chart].inverse();
            for (auto& c : coords) c *= inv;
        }
        auto chart_pows = detail::power_table(coords, f_->degree());
        SubspaceBuilder rows(k_ - 1, f_->field_order());
        for (unsigned a = 0; a < k_; ++a) {
            if (a == chart) continue;
            std::vector<CyclotomicNumber> row;
            row.reserve(k_ - 1);
            for (unsigned b = 0; b < k_; ++b) {
                if (b == chart) continue;
                unsigned i = std::min(a, b), j = std::max(a, b);
                row.push_back(seconds_[i][j - i].evaluate_with_powers(chart_pows));
            }
            rows.insert(std::move(row));
        }
        record.hessian_rank = rows.dim();
        record.is_odp = record.hessian_rank == k_ - 1;
        return record;
    }

  private:
    const MultiPoly* f_;
    unsigned k_;
    std::vector<MultiPoly> partials_;
    std::vector<std::vector<MultiPoly>> seconds_;
};

inline OdpRecord verify_odp(const MultiPoly& f, const ProjectivePoint& p) { return OdpVerifier(f).verify(p); }

inline OdpRecord verify_odp(const MultiPoly& f, const ProjectivePoint& p, unsigned chart) {
    return OdpVerifier(f).verify(p, chart);
}

// A nodal anticanonical hypersurface X in P^{n+1} with its verified node
// list. Node order is part of the model identity: the deformation spaces
// are coordinate subspaces indexed by it. The constructor verifies every
// listed node; it does not (and cannot, at desk scale) certify that the
// list is complete, which downstream reports flag explicitly.
class NodalHypersurface {
  public:
    static NodalHypersurface build(unsigned n, MultiPoly f, std::vector<ProjectivePoint> nodes) {
        if (n < 3 || n % 2 == 0) fail(errc::invalid_dimension, "dimension must be odd and at least 3");
        const unsigned k = n + 2;
        if (f.num_vars() != k)
            fail(errc::schema_error, "defining polynomial must have n+2 = " + std::to_string(k) + " variables");
        if (f.is_zero() || !f.is_homogeneous() || f.degree() != k)
            fail(errc::degree_mismatch, "defining polynomial must be homogeneous of degree n+2");
        for (const auto& node : nodes) {
            if (node.size() != k) fail(errc::schema_error, "node has wrong coordinate count");
            if (node.field_order() != f.field_order()) fail(errc::order_mismatch, "node field order differs from f");
        }
        if (!nodes.empty()) {
            std::vector<std::string> keys(nodes.size());
            parallel_for(nodes.size(), [&](std::size_t i) { keys[i] = detail::point_key(nodes[i]); });
            std::vector<std::size_t> order(nodes.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
            for (std::size_t i = 1; i < order.size(); ++i) {
                if (keys[order[i - 1]] == keys[order[i]]) {
                    std::size_t a = std::min(order[i - 1], order[i]), b = std::max(order[i - 1], order[i]);
                    fail(errc::duplicate_node, "nodes " + std::to_string(a) + " and " + std::to_string(b) +
                                                   " coincide after canonical scaling");
                }
            }
        }

        OdpVerifier verifier(f);
        std::vector<OdpRecord> records(nodes.size());
        parallel_for(nodes.size(), [&](std::size_t i) { records[i] = verifier.verify(nodes[i]); });
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& r = records[i];
            if (!r.on_hypersurface || !r.critical)
                fail(errc::not_a_node, "point " + std::to_string(i) + " is not a singular point of f");
            if (!r.is_odp)
                fail(errc::not_ordinary, "point " + std::to_string(i) + " has Hessian rank " +
                                             std::to_string(r.hessian_rank) + " < " + std::to_string(n + 1));
        }
        return NodalHypersurface(n, std::move(f), std::move(nodes));
    }

    // Restriction to a subset of the verified nodes (indices strictly
    // increasing); used by the partial/subsample analysis modes.
    NodalHypersurface restrict_to(const std::vector<std::size_t>& indices) const {
        std::vector<ProjectivePoint> subset;
        subset.reserve(indices.size());
        std::size_t prev = 0;
        bool first = true;
        for (std::size_t idx : indices) {
            if (!first && idx <= prev) fail(errc::invalid_argument, "subsample indices must be strictly increasing");
            if (idx >= nodes_.size()) fail(errc::index_out_of_range, "subsample index out of range");
            subset.push_back(nodes_[idx]);
            prev = idx;
            first = false;
        }
        return NodalHypersurface(n_, f_, std::move(subset));
    }

    unsigned n() const { return n_; }
    unsigned m() const { return (n_ - 1) / 2; }
    unsigned field_order() const { return f_.field_order(); }
    const MultiPoly& f() const { return f_; }
    const std::vector<ProjectivePoint>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }

  private:
    NodalHypersurface(unsigned n, MultiPoly f, std::vector<ProjectivePoint> nodes)
        : n_(n), f_(std::move(f)), nodes_(std::move(nodes)) {}

    unsigned n_;
    MultiPoly f_;
    std::vector<ProjectivePoint> nodes_;
};

// x_0^{n+2} + ... + x_{n+1}^{n+2} - (n+2) x_0 ... x_{n+1} over Q(zeta_{n+2}).
inline MultiPoly schoen_polynomial(unsigned n) {
    const unsigned k = n + 2;
    MultiPoly f(k, k);
    for (unsigned i = 0; i < k; ++i) {
        Exponents e(k, 0);
        e[i] = k;
        f.add_term(e, Rational(1));
    }
    f.add_term(Exponents(k, 1), Rational(-static_cast<long long>(k)));
    return f;
}

// The (n+2)^n nodes [zeta^{a_0} : ... : zeta^{a_n} : 1] with sum a_i = 0
// mod n+2, ordered lexicographically by the exponent tuple (a_0, ..., a_n).
inline std::vector<ProjectivePoint> schoen_nodes(unsigned n) {
    const unsigned k = n + 2;
    const unsigned long long count = detail::ipow(k, n);
    // Cache the k powers of zeta once; coordinates reuse them.
    std::vector<CyclotomicNumber> zeta_pows;
    zeta_pows.reserve(k);
    for (unsigned e = 0; e < k; ++e) zeta_pows.push_back(CyclotomicNumber::zeta_power(k, e));

    std::vector<ProjectivePoint> nodes;
    nodes.reserve(count);
    std::vector<unsigned> a(n + 1, 0);  // a_0 .. a_n; a_n is determined by the congruence
    for (unsigned long long t = 0; t < count; ++t) {
        unsigned sum = 0;
        for (unsigned i = 0; i < n; ++i) {
            unsigned digit = static_cast<unsigned>((t / detail::ipow(k, n - 1 - i)) % k);
            a[i] = digit;
            sum = (sum + digit) % k;
        }
        a[n] = (k - sum) % k;
        std::vector<CyclotomicNumber> coords;
        coords.reserve(k);
        for (unsigned i = 0; i <= n; ++i) coords.push_back(zeta_pows[a[i]]);
        coords.push_back(CyclotomicNumber::one(k));
        nodes.emplace_back(std::move(coords));
    }
    return nodes;
}

// The n-dimensional member of the nodal family of degree-(n+2) Fermat-type
// hypersurfaces; smooth away from its (n+2)^n ODPs, every one of which is
// verified exactly at construction.
inline NodalHypersurface schoen_family(unsigned n) {
    if (n < 3 || n % 2 == 0) fail(errc::invalid_dimension, "schoen_family requires odd n >= 3");
    return NodalHypersurface::build(n, schoen_polynomial(n), schoen_nodes(n));
}

}  // namespace nodalcy
