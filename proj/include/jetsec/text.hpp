#pragma once

// Textual form of jet polynomials and Laurent expansions.
//
//   expr   := term (('+' | '-') term)*
//   term   := [coeff '*'] factor ('*' factor)* | coeff
//   factor := 'x' NAT ['^' NAT]
//   coeff  := ['-'] NAT ['/' NAT]
//
// A term may also start with '-' directly before a factor ("-x2"), which is how
// format_poly renders a negative leading coefficient of magnitude 1.

#include "jetsec/laurent.hpp"
#include "jetsec/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jetsec {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    JetPolynomial parse() {
        JetPolynomial out;
        add_term(out, false);
        while (true) {
            skip();
            if (at_end()) {
                return out;
            }
            const char op = peek();
            if (op != '+' && op != '-') {
                fail(std::string("expected '+' or '-', found '") + op + "'");
            }
            advance();
            add_term(out, op == '-');
        }
    }

private:
    void add_term(JetPolynomial& out, bool negate) {
        skip();
        Rational coeff = 1;
        bool sign = false;
        if (peek() == '-') {
            sign = true;
            advance();
            skip();
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff_body();
            skip();
            if (peek() != '*') {
                out.add_term(JetMonomial{}, signed_value(coeff, negate != sign));
                return;
            }
            advance();
            skip();
        } else if (peek() != 'x') {
            fail(at_end() ? "unexpected end of input, expected a term" : std::string("unexpected '") + peek() + "'");
        }
        JetMonomial m = parse_factor();
        while (true) {
            skip();
            if (peek() != '*') {
                break;
            }
            advance();
            skip();
            m = m * parse_factor();
        }
        out.add_term(m, signed_value(coeff, negate != sign));
    }

    static Rational signed_value(const Rational& c, bool neg) { return neg ? Rational(-c) : c; }

    Rational parse_coeff_body() {
        const std::size_t l = line_;
        const std::size_t c = col_;
        Integer num = parse_nat();
        Integer den = 1;
        skip();
        if (peek() == '/') {
            advance();
            skip();
            den = parse_nat();
            if (den == 0) {
                throw ParseError("zero denominator", l, c);
            }
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    JetMonomial parse_factor() {
        if (peek() != 'x') {
            fail(at_end() ? "unexpected end of input, expected 'x'" : std::string("expected 'x', found '") + peek() + "'");
        }
        advance();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("missing variable index after 'x'");
        }
        const Integer order = parse_nat();
        Integer exp = 1;
        skip();
        if (peek() == '^') {
            advance();
            skip();
            exp = parse_nat();
        }
        if (!order.fits_ulong_p() || order > 1000000 || !exp.fits_ulong_p() || exp > 0xffffffffUL) {
            fail("variable index or exponent out of range");
        }
        if (exp == 0) {
            return JetMonomial{};
        }
        return JetMonomial::variable(order.get_ui(), static_cast<JetMonomial::Exponent>(exp.get_ui()));
    }

    Integer parse_nat() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            fail(at_end() ? "unexpected end of input, expected a number" : std::string("expected a number, found '") +
                                                                               peek() + "'");
        }
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return Integer(digits, 10);
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            advance();
        }
    }

    [[nodiscard]] bool at_end() const { return pos_ >= s_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : s_[pos_]; }

    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

inline std::string monomial_body(const JetMonomial& m) {
    std::string out;
    for (std::size_t r = m.order_span(); r-- > 0;) {
        const auto e = m.exponent(r);
        if (e == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += 'x' + std::to_string(r);
        if (e > 1) {
            out += '^' + std::to_string(e);
        }
    }
    return out;
}

// Appends "c*body" with the sign handled by the caller; body may be empty.
inline void append_term(std::string& out, const Rational& c, const std::string& body, bool first) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
        if (neg) {
            out += '-';
        }
    } else {
        out += neg ? " - " : " + ";
    }
    if (body.empty()) {
        out += mag.get_str();
    } else if (mag == 1) {
        out += body;
    } else {
        out += mag.get_str() + '*' + body;
    }
}

}  // namespace detail

inline JetPolynomial parse_poly(std::string_view s) { return detail::PolyParser(s).parse(); }

inline std::string format_monomial(const JetMonomial& m) {
    return m.is_one() ? std::string("1") : detail::monomial_body(m);
}

/// Terms in term order; "0" for the zero polynomial.
inline std::string format_poly(const JetPolynomial& p) {
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        detail::append_term(out, c, detail::monomial_body(m), first);
        first = false;
    }
    return out;
}

/// "c*num/x0^k" per term, x0 powers from the highest down; "0" when empty.
inline std::string format_laurent(const LaurentExpansion& e) {
    if (e.terms().empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    const auto& terms = e.terms();
    // group by x0 power descending, numerators ascending within a power
    std::vector<decltype(terms.begin())> order;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        order.push_back(it);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](auto a, auto b) { return a->first.x0_power > b->first.x0_power; });
    for (auto it : order) {
        const auto& [key, c] = *it;
        std::string body = detail::monomial_body(key.numerator);
        std::string tail;
        if (key.x0_power < 0) {
            tail = "/x0" + (key.x0_power == -1 ? std::string() : '^' + std::to_string(-key.x0_power));
        } else if (key.x0_power > 0) {
            const std::string x0 = "x0" + (key.x0_power == 1 ? std::string() : '^' + std::to_string(key.x0_power));
            body = body.empty() ? x0 : body + '*' + x0;
        }
        if (body.empty() && !tail.empty()) {
            // "c/x0^k" keeps the coefficient even when it is 1
            const bool neg = c < 0;
            if (first) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            out += (neg ? Rational(-c) : c).get_str() + tail;
        } else {
            detail::append_term(out, c, body, first);
            out += tail;
        }
        first = false;
    }
    return out;
}

}  // namespace jetsec
