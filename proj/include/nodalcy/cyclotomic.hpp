#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace nodalcy {

inline unsigned euler_totient(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace detail {

// Dense univariate polynomials over Rational, constant term first.
using RationalPoly = std::vector<Rational>;

inline void poly_trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_degree(const RationalPoly& p) { return static_cast<int>(p.size()) - 1; }

// Quotient of an exact division; remainder is returned for callers that
// want to assert exactness or run the Euclidean algorithm.
inline std::pair<RationalPoly, RationalPoly> poly_divmod(RationalPoly num, const RationalPoly& den) {
    poly_trim(num);
    RationalPoly divisor = den;
    poly_trim(divisor);
    if (divisor.empty()) fail(errc::division_by_zero, "polynomial division by zero");
    RationalPoly quot;
    if (num.size() >= divisor.size()) quot.assign(num.size() - divisor.size() + 1, Rational(0));
    const Rational& lead = divisor.back();
    while (num.size() >= divisor.size()) {
        Rational c = num.back() / lead;
        std::size_t shift = num.size() - divisor.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < divisor.size(); ++i) num[shift + i] -= c * divisor[i];
        poly_trim(num);
    }
    return {std::move(quot), std::move(num)};
}

inline RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace detail

// Phi_N as a dense coefficient vector (constant term first, monic, degree
// phi(N)), computed by exact division of x^N - 1 by the product of Phi_d
// over proper divisors d of N.
inline std::vector<Rational> cyclotomic_polynomial(unsigned n) {
    if (n < 1) fail(errc::invalid_argument, "cyclotomic_polynomial requires N >= 1");
    static std::map<unsigned, detail::RationalPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto compute = [](auto&& self, unsigned m) -> const detail::RationalPoly& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        detail::RationalPoly num(m + 1, Rational(0));  // x^m - 1
        num[0] = -1;
        num[m] = 1;
        detail::RationalPoly den{Rational(1)};
        for (unsigned d = 1; d < m; ++d) {
            if (m % d == 0) den = detail::poly_mul(den, self(self, d));
        }
        auto [quot, rem] = detail::poly_divmod(std::move(num), den);
        detail::poly_trim(rem);
        if (!rem.empty()) fail(errc::invalid_argument, "cyclotomic division was not exact");
        return cache.emplace(m, std::move(quot)).first->second;
    };
    return compute(compute, n);
}

namespace detail {

// Per-order reduction data: Phi_N and the canonical forms of
// x^{phi}, ..., x^{2 phi - 2}, enough to reduce any product of two
// canonical representatives.
struct CyclotomicContext {
    unsigned order = 1;
    unsigned phi = 1;
    RationalPoly modulus;
    std::vector<RationalPoly> power_reductions;  // power_reductions[t] = x^{phi+t} mod Phi_N, padded to length phi
};

inline const CyclotomicContext& cyclotomic_context(unsigned order) {
    struct Registry {
        std::mutex mutex;
        std::map<unsigned, std::unique_ptr<CyclotomicContext>> contexts;
    };
    static Registry registry;
    thread_local const CyclotomicContext* last = nullptr;
    if (last != nullptr && last->order == order) return *last;
    std::lock_guard<std::mutex> lock(registry.mutex);
    auto it = registry.contexts.find(order);
    if (it == registry.contexts.end()) {
        auto ctx = std::make_unique<CyclotomicContext>();
        ctx->order = order;
        ctx->modulus = cyclotomic_polynomial(order);
        ctx->phi = static_cast<unsigned>(ctx->modulus.size() - 1);
        unsigned phi = ctx->phi;
        // x^phi = -(Phi_N - x^phi); higher powers by repeated multiplication by x.
        RationalPoly current(phi, Rational(0));
        for (unsigned i = 0; i < phi; ++i) current[i] = -ctx->modulus[i];
        unsigned rows_needed = phi >= 2 ? phi - 1 : 0;  // reduce degrees phi .. 2*phi-2
        ctx->power_reductions.reserve(rows_needed);
        for (unsigned t = 0; t < rows_needed; ++t) {
            ctx->power_reductions.push_back(current);
            Rational overflow = current[phi - 1];
            for (unsigned i = phi; i-- > 1;) current[i] = current[i - 1];
            current[0] = Rational(0);
            if (overflow != 0) {
                for (unsigned i = 0; i < phi; ++i) current[i] -= overflow * ctx->modulus[i];
            }
        }
        it = registry.contexts.emplace(order, std::move(ctx)).first;
    }
    last = it->second.get();
    return *last;
}

// Reduce an arbitrary-degree polynomial to the canonical length-phi form.
inline RationalPoly reduce_mod_cyclotomic(RationalPoly poly, const CyclotomicContext& ctx) {
    auto [quot, rem] = poly_divmod(std::move(poly), ctx.modulus);
    (void)quot;
    rem.resize(ctx.phi, Rational(0));
    return rem;
}

}  // namespace detail

// An element of Q(zeta_N) in the canonical basis {1, zeta, ..., zeta^{phi(N)-1}}.
// Values are immutable in spirit: all operators return fresh values, and the
// mutating helpers exist only for hot inner loops that own their storage.
class CyclotomicNumber {
  public:
    CyclotomicNumber() : order_(1), coeffs_(1, Rational(0)) {}

    explicit CyclotomicNumber(unsigned order)
        : order_(order), coeffs_(detail::cyclotomic_context(order).phi, Rational(0)) {}

    CyclotomicNumber(unsigned order, Rational constant) : CyclotomicNumber(order) {
        coeffs_[0] = std::move(constant);
    }

    // Canonical coefficient vector; must already have length phi(order).
    CyclotomicNumber(unsigned order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != detail::cyclotomic_context(order).phi)
            fail(errc::schema_error, "coefficient vector length must equal phi(order)");
    }

    static CyclotomicNumber zero(unsigned order) { return CyclotomicNumber(order); }
    static CyclotomicNumber one(unsigned order) { return CyclotomicNumber(order, Rational(1)); }

    static CyclotomicNumber from_polynomial(unsigned order, std::vector<Rational> poly) {
        const auto& ctx = detail::cyclotomic_context(order);
        return CyclotomicNumber(order, detail::reduce_mod_cyclotomic(std::move(poly), ctx));
    }

    // zeta_N^k for any integer k (negative exponents allowed).
    static CyclotomicNumber zeta_power(unsigned order, long long k) {
        long long n = static_cast<long long>(order);
        long long e = ((k % n) + n) % n;
        const auto& ctx = detail::cyclotomic_context(order);
        if (static_cast<unsigned>(e) < ctx.phi) {
            CyclotomicNumber out(order);
            out.coeffs_[static_cast<std::size_t>(e)] = 1;
            return out;
        }
        std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
        poly.back() = 1;
        return from_polynomial(order, std::move(poly));
    }

    static CyclotomicNumber zeta(unsigned order) { return zeta_power(order, 1); }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const {
        if (coeffs_[0] != 1) return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    const Rational& rational_value() const {
        if (!is_rational()) fail(errc::invalid_argument, "value is not rational");
        return coeffs_[0];
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& rhs) {
        check_order(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        return *this;
    }

    CyclotomicNumber& operator-=(const CyclotomicNumber& rhs) {
        check_order(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
        return *this;
    }

    CyclotomicNumber& operator*=(const CyclotomicNumber& rhs) {
        check_order(rhs);
        multiply_in_place(rhs);
        return *this;
    }

    CyclotomicNumber& operator/=(const CyclotomicNumber& rhs) { return *this *= rhs.inverse(); }

    CyclotomicNumber& scale(const Rational& c) {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }

    void negate() {
        for (auto& x : coeffs_) x = -x;
    }

    // *this -= c * x, fused to avoid temporaries in elimination loops.
    void submul(const CyclotomicNumber& c, const CyclotomicNumber& x) {
        check_order(c);
        check_order(x);
        if (c.is_zero() || x.is_zero()) return;
        if (c.is_rational()) {
            const Rational& s = c.coeffs_[0];
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (x.coeffs_[i] != 0) coeffs_[i] -= s * x.coeffs_[i];
            }
            return;
        }
        CyclotomicNumber prod = c;
        prod.multiply_in_place(x);
        *this -= prod;
    }

    // Extended Euclid against Phi_N; the gcd is a unit because Phi_N is
    // irreducible over Q.
    CyclotomicNumber inverse() const {
        if (is_zero()) fail(errc::division_by_zero, "inverse of zero cyclotomic number");
        const auto& ctx = detail::cyclotomic_context(order_);
        if (is_rational()) return CyclotomicNumber(order_, Rational(1) / coeffs_[0]);
        detail::RationalPoly r0 = ctx.modulus;
        detail::RationalPoly r1(coeffs_.begin(), coeffs_.end());
        detail::poly_trim(r1);
        detail::RationalPoly s0{}, s1{Rational(1)};  // coefficients of *this in the Bezout identity
        while (!r1.empty() && detail::poly_degree(r1) > 0) {
            auto [q, r2] = detail::poly_divmod(r0, r1);
            detail::RationalPoly qs = detail::poly_mul(q, s1);
            detail::RationalPoly s2 = s0;
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::poly_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty()) fail(errc::division_by_zero, "element shares a factor with the modulus");
        const Rational& unit = r1[0];
        for (auto& c : s1) c /= unit;
        return from_polynomial(order_, std::move(s1));
    }

    CyclotomicNumber pow(unsigned long long e) const {
        CyclotomicNumber base = *this;
        CyclotomicNumber result = one(order_);
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a) {
        a.negate();
        return a;
    }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& v) {
        bool printed = false;
        for (std::size_t i = 0; i < v.coeffs_.size(); ++i) {
            if (v.coeffs_[i] == 0) continue;
            if (printed) os << " + ";
            os << v.coeffs_[i];
            if (i > 0) os << "*z^" << i;
            printed = true;
        }
        if (!printed) os << "0";
        return os;
    }

  private:
    void check_order(const CyclotomicNumber& rhs) const {
        if (order_ != rhs.order_)
            fail(errc::order_mismatch, "cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                                           std::to_string(rhs.order_));
    }

    void multiply_in_place(const CyclotomicNumber& rhs) {
        const auto& ctx = detail::cyclotomic_context(order_);
        const unsigned phi = ctx.phi;
        if (is_rational()) {
            Rational s = coeffs_[0];
            coeffs_ = rhs.coeffs_;
            for (auto& c : coeffs_) c *= s;
            return;
        }
        if (rhs.is_rational()) {
            const Rational& s = rhs.coeffs_[0];
            for (auto& c : coeffs_) c *= s;
            return;
        }
        std::vector<Rational> conv(2 * phi - 1, Rational(0));
        for (unsigned i = 0; i < phi; ++i) {
            if (coeffs_[i] == 0) continue;
            for (unsigned j = 0; j < phi; ++j) {
                if (rhs.coeffs_[j] == 0) continue;
                conv[i + j] += coeffs_[i] * rhs.coeffs_[j];
            }
        }
        for (unsigned i = 0; i < phi; ++i) coeffs_[i] = std::move(conv[i]);
        for (unsigned t = 0; t + phi < 2 * phi - 1; ++t) {
            const Rational& overflow = conv[phi + t];
            if (overflow == 0) continue;
            const auto& row = ctx.power_reductions[t];
            for (unsigned i = 0; i < phi; ++i) {
                if (row[i] != 0) coeffs_[i] += overflow * row[i];
            }
        }
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

}  // namespace nodalcy
