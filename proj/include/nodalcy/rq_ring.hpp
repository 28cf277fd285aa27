#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace nodalcy {

// Element of R_Q for a quadric of dimension n-1 = 2m, on the canonical
// basis {1, eta, ..., eta^{m-1}, A, B, eta^{m+1}, ..., eta^{n-1}} with the
// relations eta^m = A - B and eta (A + B) = 0.
//
// Internally the middle degree is carried in the (A-B, A+B) coordinates:
// the A-B component is the eta^m coefficient (a genuine power of eta) and
// the A+B component is the one basis direction the relations do not close
// under multiplication. A product is undetermined exactly when it would
// need the value of (A+B)^2, which the two relations above do not fix.
class RQClass {
  public:
    explicit RQClass(unsigned n) : n_(check_dimension(n)), powers_(n, Rational(0)), sum_part_(0) {}

    static RQClass scalar(unsigned n, Rational c) {
        RQClass out(n);
        out.powers_[0] = std::move(c);
        return out;
    }

    // eta^k; zero above the top degree n-1.
    static RQClass eta_power(unsigned n, unsigned k) {
        RQClass out(n);
        if (k < n) out.powers_[k] = 1;
        return out;
    }

    static RQClass plane_class_a(unsigned n) {
        RQClass out(n);
        out.powers_[out.m()] = Rational(1) / 2;
        out.sum_part_ = Rational(1) / 2;
        return out;
    }

    static RQClass plane_class_b(unsigned n) {
        RQClass out(n);
        out.powers_[out.m()] = Rational(-1) / 2;
        out.sum_part_ = Rational(1) / 2;
        return out;
    }

    static RQClass undetermined_class(unsigned n) {
        RQClass out(n);
        out.determined_ = false;
        return out;
    }

    unsigned n() const { return n_; }
    unsigned m() const { return (n_ - 1) / 2; }
    bool determined() const { return determined_; }

    bool is_zero() const {
        if (!determined_) return false;
        if (sum_part_ != 0) return false;
        for (const auto& c : powers_)
            if (c != 0) return false;
        return true;
    }

    // Coefficient of eta^k on the canonical basis (k != m).
    const Rational& eta_coefficient(unsigned k) const {
        require_determined();
        if (k >= n_) fail(errc::index_out_of_range, "degree exceeds n-1");
        if (k == m()) fail(errc::invalid_argument, "degree m is spanned by A and B, not eta^m");
        return powers_[k];
    }

    Rational a_coefficient() const {
        require_determined();
        return powers_[m()] + sum_part_;
    }

    Rational b_coefficient() const {
        require_determined();
        return sum_part_ - powers_[m()];
    }

    RQClass& operator+=(const RQClass& rhs) {
        check_compatible(rhs);
        if (!determined_ || !rhs.determined_) {
            determined_ = false;
            return *this;
        }
        for (unsigned k = 0; k < n_; ++k) powers_[k] += rhs.powers_[k];
        sum_part_ += rhs.sum_part_;
        return *this;
    }

    RQClass& operator-=(const RQClass& rhs) {
        check_compatible(rhs);
        if (!determined_ || !rhs.determined_) {
            determined_ = false;
            return *this;
        }
        for (unsigned k = 0; k < n_; ++k) powers_[k] -= rhs.powers_[k];
        sum_part_ -= rhs.sum_part_;
        return *this;
    }

    RQClass& scale(const Rational& c) {
        if (!determined_) return *this;
        for (auto& x : powers_) x *= c;
        sum_part_ *= c;
        return *this;
    }

    friend RQClass operator+(RQClass a, const RQClass& b) { return a += b; }
    friend RQClass operator-(RQClass a, const RQClass& b) { return a -= b; }

    friend RQClass operator*(const RQClass& lhs, const RQClass& rhs) {
        lhs.check_compatible(rhs);
        unsigned n = lhs.n_;
        if (!lhs.determined_ || !rhs.determined_) return undetermined_class(n);
        // (A+B)^2 is not a consequence of the two defining relations.
        if (lhs.sum_part_ != 0 && rhs.sum_part_ != 0) return undetermined_class(n);
        RQClass out(n);
        for (unsigned i = 0; i < n; ++i) {
            if (lhs.powers_[i] == 0) continue;
            for (unsigned j = 0; j + i < n; ++j) {
                if (rhs.powers_[j] == 0) continue;
                out.powers_[i + j] += lhs.powers_[i] * rhs.powers_[j];
            }
        }
        // eta^k (A+B) = 0 for k >= 1; only the scalar part survives.
        out.sum_part_ = lhs.powers_[0] * rhs.sum_part_ + rhs.powers_[0] * lhs.sum_part_;
        return out;
    }

    friend bool operator==(const RQClass& a, const RQClass& b) {
        if (a.n_ != b.n_) return false;
        if (a.determined_ != b.determined_) return false;
        if (!a.determined_) return true;
        return a.powers_ == b.powers_ && a.sum_part_ == b.sum_part_;
    }
    friend bool operator!=(const RQClass& a, const RQClass& b) { return !(a == b); }

    std::string to_string() const {
        if (!determined_) return "undetermined";
        std::string out;
        auto append = [&out](const Rational& c, const std::string& sym) {
            if (c == 0) return;
            Rational abs = c < 0 ? Rational(-c) : c;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mag = to_plain_string(abs);
            if (sym.empty()) {
                out += mag;
            } else if (mag == "1") {
                out += sym;
            } else {
                out += mag + "*" + sym;
            }
        };
        for (unsigned k = 0; k < n_; ++k) {
            if (k == m()) {
                append(a_coefficient(), "A");
                append(b_coefficient(), "B");
            } else {
                append(powers_[k], k == 0 ? "" : (k == 1 ? "eta" : "eta^" + std::to_string(k)));
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    static unsigned check_dimension(unsigned n) {
        if (n < 3 || n % 2 == 0) fail(errc::invalid_dimension, "R_Q requires odd n >= 3");
        return n;
    }

    static std::string to_plain_string(const Rational& r) {
        if (denominator(r) == 1) return numerator(r).str();
        return numerator(r).str() + "/" + denominator(r).str();
    }

    void check_compatible(const RQClass& rhs) const {
        if (n_ != rhs.n_) fail(errc::dimension_mismatch, "R_Q classes for different n");
    }

    void require_determined() const {
        if (!determined_) fail(errc::invalid_argument, "class is undetermined");
    }

    unsigned n_;
    bool determined_ = true;
    std::vector<Rational> powers_;  // coefficients of eta^0 .. eta^{n-1}; index m is the A-B component
    Rational sum_part_;             // coefficient of A+B
};

inline RQClass rq_multiply(const RQClass& a, const RQClass& b) { return a * b; }

// Parses expressions over the tokens eta^k, eta, A, B, rational scalars,
// with + - * and parentheses, e.g. "1/2*eta^2 - (A + B)".
inline RQClass parse_rq_expression(unsigned n, const std::string& text) {
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;
        unsigned n;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }

        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        [[noreturn]] void bad(const std::string& why) {
            fail(errc::schema_error, "rq expression: " + why + " at position " + std::to_string(pos));
        }

        RQClass parse_expression() {
            skip_ws();
            bool negate = false;
            if (eat('-'))
                negate = true;
            else
                eat('+');
            RQClass acc = parse_term();
            if (negate) acc.scale(Rational(-1));
            for (;;) {
                skip_ws();
                if (eat('+')) {
                    acc += parse_term();
                } else if (eat('-')) {
                    acc -= parse_term();
                } else {
                    return acc;
                }
            }
        }

        RQClass parse_term() {
            RQClass acc = parse_factor();
            for (;;) {
                skip_ws();
                if (eat('*')) {
                    acc = acc * parse_factor();
                } else {
                    return acc;
                }
            }
        }

        RQClass parse_factor() {
            skip_ws();
            if (pos >= s.size()) bad("unexpected end of input");
            if (eat('(')) {
                RQClass inner = parse_expression();
                if (!eat(')')) bad("expected ')'");
                return inner;
            }
            char c = s[pos];
            if (c == 'A') {
                ++pos;
                return RQClass::plane_class_a(n);
            }
            if (c == 'B') {
                ++pos;
                return RQClass::plane_class_b(n);
            }
            if (s.compare(pos, 3, "eta") == 0) {
                pos += 3;
                unsigned k = 1;
                if (eat('^')) {
                    skip_ws();
                    std::size_t start = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (pos == start) bad("expected exponent");
                    k = static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
                }
                return RQClass::eta_power(n, k);
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    std::size_t dstart = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (pos == dstart) bad("expected denominator");
                }
                return RQClass::scalar(n, parse_rational(s.substr(start, pos - start)));
            }
            bad("unexpected character '" + std::string(1, c) + "'");
        }
    };
    Parser parser{text, 0, n};
    RQClass out = parser.parse_expression();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.bad("trailing input");
    return out;
}

}  // namespace nodalcy
