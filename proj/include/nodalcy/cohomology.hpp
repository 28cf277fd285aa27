#pragma once

#include <map>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace nodalcy {

struct CohomologyQuery {
    unsigned n = 1;   // ambient projective dimension
    unsigned p = 0;   // form degree
    unsigned q = 0;   // cohomology degree
    long long m = 0;  // twist
};

// h^q(P^n, Omega^p(m)) by Bott's formula. The only nonzero groups are
// h^p(Omega^p) = 1, h^0(Omega^p(m)) = C(m-1,p) C(m+n-p,m) for p < m, and
// the Serre dual h^n(Omega^p(m)) = h^0(Omega^{n-p}(-m)) for n-p < -m.
inline Integer bott(unsigned n, unsigned p, unsigned q, long long m) {
    if (p > n || q > n) fail(errc::invalid_argument, "bott requires 0 <= p,q <= n");
    if (p == q && m == 0) return Integer(1);
    if (q == 0 && static_cast<long long>(p) < m) return binomial(m - 1, p) * binomial(m + n - p, m);
    if (q == n && static_cast<long long>(n - p) < -m) {
        unsigned pd = n - p;
        long long md = -m;
        return binomial(md - 1, pd) * binomial(md + n - pd, md);
    }
    return Integer(0);
}

inline Integer bott(const CohomologyQuery& query) { return bott(query.n, query.p, query.q, query.m); }

inline Integer euler_characteristic(unsigned n, unsigned p, long long m) {
    Integer chi(0);
    for (unsigned q = 0; q <= n; ++q) {
        Integer h = bott(n, p, q, m);
        if (q % 2 == 0)
            chi += h;
        else
            chi -= h;
    }
    return chi;
}

namespace detail {

// h^0(P^n, Omega^p(m)) alone (no q = p special case).
inline Integer bott_h0(unsigned n, unsigned p, long long m) {
    if (!(static_cast<long long>(p) < m)) return Integer(0);
    return binomial(m - 1, p) * binomial(m + n - p, m);
}

// h^n(P^n, Omega^p(m)): the Serre-dual sections plus the top case
// h^n(Omega^n) = 1.
inline Integer bott_hn(unsigned n, unsigned p, long long m) {
    if (p == n && m == 0) return Integer(1);
    return bott_h0(n, n - p, -m);
}

}  // namespace detail

// h^q of Omega^p_{P^n}(j) restricted to a smooth quadric Q in P^n, as a
// closed form in five twist regimes. Inside each regime the nonzero values
// come from the long exact sequence of
//   0 -> Omega^p(j-2) -> Omega^p(j) -> Omega^p(j)|_Q -> 0,
// using that multiplication by the quadric section is injective on H^0 and
// surjective on H^n.
inline Integer restricted_cohomology(unsigned n, unsigned p, unsigned q, long long j) {
    if (n < 5) fail(errc::unsupported_dimension, "restricted cohomology table assumes n >= 5");
    if (p > n) fail(errc::invalid_argument, "restricted_cohomology requires 0 <= p <= n");
    if (q > n - 1) fail(errc::invalid_argument, "restricted_cohomology requires 0 <= q <= n-1");

    if (j < 0) {
        if (q == n - 1) return detail::bott_hn(n, p, j - 2) - detail::bott_hn(n, p, j);
        return Integer(0);
    }
    if (j == 0) {
        Integer value = (p == q && p <= n - 1) ? Integer(1) : Integer(0);
        if (q == n - 1) value += detail::bott_hn(n, p, -2) - detail::bott_hn(n, p, 0);
        return value;
    }
    if (j == 1) {
        if (q == 0 && p == 0) return Integer(n + 1);
        if (q == n - 1 && p == n) return Integer(n + 1);
        return Integer(0);
    }
    if (j == 2) {
        Integer value(0);
        if (q == 0) value += detail::bott_h0(n, p, 2) - (p == 0 ? Integer(1) : Integer(0));
        if (p == q + 1) value += Integer(1);
        return value;
    }
    // j > 2
    if (q == 0 && j > static_cast<long long>(p)) return detail::bott_h0(n, p, j) - detail::bott_h0(n, p, j - 2);
    return Integer(0);
}

struct CohomologyTable {
    struct Entry {
        bool determined = false;
        Integer value = Integer(0);
    };

    unsigned n = 0;
    unsigned k = 0;  // form degree of Omega_Q^k
    std::string family;
    int j_min = 0, j_max = 0;
    unsigned q_max = 2;
    std::map<std::pair<int, long long>, Entry> entries;  // key (q, j)

    const Entry& at(unsigned q, long long j) const {
        auto it = entries.find({static_cast<int>(q), j});
        if (it == entries.end()) fail(errc::index_out_of_range, "table entry out of range");
        return it->second;
    }
};

namespace detail {

// Twisted forms on Q of top degree k = n-1: Omega_Q^{n-1}(j) = O_Q(j-(n-1))
// via K_Q = O_Q(1-n), so every entry reduces to restricted cohomology of
// the structure sheaf.
inline CohomologyTable::Entry quadric_top_form_entry(unsigned n, unsigned q, long long j) {
    return {true, restricted_cohomology(n, 0, q, j - static_cast<long long>(n) + 1)};
}

// Twisted forms of degree k = n-2: chase the conormal sequence
//   0 -> Omega_Q^{n-2}(t) -> Omega^{n-1}_{P^n}(t+2)|_Q -> Omega_Q^{n-1}(t+2) -> 0
// exactly as in the vanishing proof; valid for t <= n-2, where either both
// central H^0 groups vanish, or (t = n-2) the connecting map is the
// isomorphism induced by the nondegenerate quadratic form.
inline CohomologyTable::Entry quadric_subtop_form_entry(unsigned n, unsigned q, long long t) {
    if (t > static_cast<long long>(n) - 2) return {false, Integer(0)};

    const bool iso_twist = (t == static_cast<long long>(n) - 2);
    Integer h0_restr = restricted_cohomology(n, n - 1, 0, t + 2);
    Integer h0_top = quadric_top_form_entry(n, 0, t + 2).value;  // H^0(Omega_Q^{n-1}(t+2))
    if (iso_twist) {
        // The connecting H^0(restr) -> H^0(O_Q(1)) differentiates the
        // quadratic form down vector fields: an isomorphism of C^{n+1}
        // with its dual.
        if (h0_restr != Integer(n + 1) || h0_top != Integer(n + 1))
            fail(errc::invalid_argument, "conormal chase lost exactness at the isomorphism twist");
    } else if (h0_restr != 0) {
        fail(errc::invalid_argument, "conormal chase lost exactness");
    }

    if (q == 0) {
        // kernel of an injection (trivially when h0_restr = 0)
        return {true, Integer(0)};
    }
    if (q == 1) {
        // cokernel of H^0(restr) -> H^0(Omega_Q^{n-1}(t+2))
        return {true, iso_twist ? Integer(0) : h0_top};
    }
    if (q == 2) {
        // H^1(Omega_Q^{n-1}(t+2)) = 0 and H^2(restr) = 0 squeeze H^2 to zero.
        Integer h1_top = quadric_top_form_entry(n, 1, t + 2).value;
        Integer h2_restr = restricted_cohomology(n, n - 1, 2, t + 2);
        if (h1_top != 0 || h2_restr != 0) fail(errc::invalid_argument, "conormal chase lost exactness");
        return {true, Integer(0)};
    }
    return {false, Integer(0)};
}

}  // namespace detail

// The H^{<=2} table for Omega_Q^k(j), k in {n-1, n-2}, on the exceptional
// quadric of an n-fold ODP blow-up. Entries the vanishing argument does not
// reach are reported as undetermined rather than guessed.
inline CohomologyTable quadric_cohomology_table(unsigned n, unsigned k, long long j_min, long long j_max) {
    if (n < 5 || n % 2 == 0) fail(errc::unsupported_dimension, "quadric tables assume odd n >= 5");
    if (k != n - 1 && k != n - 2) fail(errc::invalid_argument, "quadric tables cover k in {n-1, n-2} only");
    if (j_min > j_max) fail(errc::invalid_argument, "empty twist range");
    CohomologyTable table;
    table.n = n;
    table.k = k;
    table.family = "Omega_Q^" + std::to_string(k) + "(j)";
    table.j_min = static_cast<int>(j_min);
    table.j_max = static_cast<int>(j_max);
    for (unsigned q = 0; q <= 2; ++q) {
        for (long long j = j_min; j <= j_max; ++j) {
            auto entry = (k == n - 1) ? detail::quadric_top_form_entry(n, q, j)
                                      : detail::quadric_subtop_form_entry(n, q, j);
            table.entries[{static_cast<int>(q), j}] = entry;
        }
    }
    return table;
}

}  // namespace nodalcy
