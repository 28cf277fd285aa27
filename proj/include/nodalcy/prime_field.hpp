#pragma once

#include <cstdint>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace nodalcy {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return result;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) fail(errc::division_by_zero, "inverse of zero in prime field");
    return powmod(a % p, p - 2, p);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool has_multiplicative_order(std::uint64_t x, std::uint64_t p, std::uint64_t order) {
    if (x % p == 0) return false;
    if (powmod(x, order, p) != 1) return false;
    for (std::uint64_t q : prime_factors(order)) {
        if (powmod(x, order / q, p) == 1) return false;
    }
    return true;
}

struct PrimeFieldElement {
    std::uint64_t modulus = 2;
    std::uint64_t value = 0;

    PrimeFieldElement() = default;
    PrimeFieldElement(std::uint64_t p, std::uint64_t v) : modulus(p), value(v % p) {}

    friend PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b) {
        a.check(b);
        return {a.modulus, (a.value + b.value) % a.modulus};
    }
    friend PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b) {
        a.check(b);
        return {a.modulus, (a.value + a.modulus - b.value) % a.modulus};
    }
    friend PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b) {
        a.check(b);
        return {a.modulus, mulmod(a.value, b.value, a.modulus)};
    }
    friend PrimeFieldElement operator/(PrimeFieldElement a, PrimeFieldElement b) {
        a.check(b);
        return {a.modulus, mulmod(a.value, invmod(b.value, a.modulus), a.modulus)};
    }
    friend bool operator==(PrimeFieldElement a, PrimeFieldElement b) {
        return a.modulus == b.modulus && a.value == b.value;
    }

  private:
    void check(const PrimeFieldElement& rhs) const {
        if (modulus != rhs.modulus) fail(errc::order_mismatch, "prime field moduli differ");
    }
};

inline std::uint64_t reduce_integer_mod(const Integer& n, std::uint64_t p) {
    Integer r = n % Integer(p);
    if (r < 0) r += Integer(p);
    return r.convert_to<std::uint64_t>();
}

inline std::uint64_t reduce_rational_mod(const Rational& r, std::uint64_t p) {
    std::uint64_t den = reduce_integer_mod(denominator(r), p);
    if (den == 0)
        fail(errc::bad_prime, "denominator " + denominator(r).str() + " not invertible mod " + std::to_string(p));
    std::uint64_t num = reduce_integer_mod(numerator(r), p);
    return mulmod(num, invmod(den, p), p);
}

// Smallest-base deterministic search for an element of order exactly N in F_p.
inline PrimeFieldElement find_root_of_unity(std::uint64_t p, unsigned order) {
    if (!is_prime(p)) fail(errc::bad_prime, std::to_string(p) + " is not prime");
    if ((p - 1) % order != 0)
        fail(errc::bad_prime, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(order));
    if (order == 1) return {p, 1};
    for (std::uint64_t a = 2; a < p; ++a) {
        std::uint64_t z = powmod(a, (p - 1) / order, p);
        if (has_multiplicative_order(z, p, order)) return {p, z};
    }
    fail(errc::bad_root, "no element of order " + std::to_string(order) + " mod " + std::to_string(p));
}

// Evaluates the canonical representative at zeta -> zeta_image; a ring
// homomorphism Q(zeta_N) -> F_p on elements with p-invertible denominators.
inline PrimeFieldElement reduce_mod_p(const CyclotomicNumber& a, std::uint64_t p, PrimeFieldElement zeta_image) {
    if (!is_prime(p)) fail(errc::bad_prime, std::to_string(p) + " is not prime");
    const unsigned order = a.order();
    if ((p - 1) % order != 0)
        fail(errc::bad_prime, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(order));
    if (zeta_image.modulus != p) fail(errc::bad_root, "root of unity lives in a different prime field");
    if (!has_multiplicative_order(zeta_image.value, p, order))
        fail(errc::bad_root, "image of zeta does not have multiplicative order " + std::to_string(order));
    std::uint64_t acc = 0;
    std::uint64_t zk = 1;
    for (const auto& c : a.coeffs()) {
        if (c != 0) acc = (acc + mulmod(reduce_rational_mod(c, p), zk, p)) % p;
        zk = mulmod(zk, zeta_image.value, p);
    }
    return {p, acc};
}

}  // namespace nodalcy
