#pragma once

#include "jetsec/monomial.hpp"
#include "jetsec/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace jetsec {

/// Sparse jet polynomial with exact rational coefficients.
///
/// Canonical form: no zero coefficients are stored, so equality is structural
/// and the zero polynomial is the empty term map. Iteration follows the
/// JetMonomial term order.
class JetPolynomial {
public:
    using TermMap = std::map<JetMonomial, Rational>;

    JetPolynomial() = default;

    explicit JetPolynomial(const Rational& c) {
        if (c != 0) {
            terms_.emplace(JetMonomial{}, c);
        }
    }

    explicit JetPolynomial(JetMonomial m, const Rational& c = 1) {
        if (c != 0) {
            terms_.emplace(std::move(m), c);
        }
    }

    static JetPolynomial variable(JetMonomial::Order r, JetMonomial::Exponent e = 1) {
        return JetPolynomial(JetMonomial::variable(r, e));
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] Rational coefficient(const JetMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c*m in place, dropping the term if it cancels.
    void add_term(const JetMonomial& m, const Rational& c) {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Maximum total degree over the terms. Rejects the zero polynomial.
    [[nodiscard]] std::uint64_t degree() const {
        require_nonzero("degree");
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) {
            d = std::max(d, m.degree());
        }
        return d;
    }

    /// Maximum order of derivatives over the terms. Rejects the zero polynomial.
    [[nodiscard]] std::uint64_t order_of_derivatives() const {
        require_nonzero("order of derivatives");
        std::uint64_t s = 0;
        for (const auto& [m, c] : terms_) {
            s = std::max(s, m.order_of_derivatives());
        }
        return s;
    }

    [[nodiscard]] bool is_homogeneous() const {
        if (terms_.empty()) {
            return true;
        }
        const auto d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_) {
            if (m.degree() != d) {
                return false;
            }
        }
        return true;
    }

    /// Highest exponent of xr over all terms.
    [[nodiscard]] JetMonomial::Exponent degree_in(JetMonomial::Order r) const {
        JetMonomial::Exponent e = 0;
        for (const auto& [m, c] : terms_) {
            e = std::max(e, m.exponent(r));
        }
        return e;
    }

    JetPolynomial& operator+=(const JetPolynomial& o) {
        for (const auto& [m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    JetPolynomial& operator-=(const JetPolynomial& o) {
        for (const auto& [m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    JetPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) {
                c *= s;
            }
        }
        return *this;
    }

    friend JetPolynomial operator+(JetPolynomial a, const JetPolynomial& b) { return a += b; }
    friend JetPolynomial operator-(JetPolynomial a, const JetPolynomial& b) { return a -= b; }
    friend JetPolynomial operator-(JetPolynomial a) { return a *= Rational(-1); }
    friend JetPolynomial operator*(JetPolynomial a, const Rational& s) { return a *= s; }
    friend JetPolynomial operator*(const Rational& s, JetPolynomial a) { return a *= s; }

    friend JetPolynomial operator*(const JetPolynomial& a, const JetPolynomial& b) {
        JetPolynomial out;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const JetPolynomial& a, const JetPolynomial& b) = default;

private:
    void require_nonzero(const char* what) const {
        if (terms_.empty()) {
            throw std::domain_error(std::string(what) + " of the zero polynomial is undefined");
        }
    }

    TermMap terms_;
};

inline JetPolynomial poly_add(const JetPolynomial& a, const JetPolynomial& b) { return a + b; }
inline JetPolynomial poly_mul(const JetPolynomial& a, const JetPolynomial& b) { return a * b; }
inline JetPolynomial poly_scale(const JetPolynomial& a, const Rational& s) { return a * s; }

/// Terms of total degree exactly d.
inline JetPolynomial homogeneous_component(const JetPolynomial& rho, std::uint64_t d) {
    JetPolynomial out;
    for (const auto& [m, c] : rho.terms()) {
        if (m.degree() == d) {
            out.add_term(m, c);
        }
    }
    return out;
}

/// Terms whose order of derivatives is exactly l.
inline JetPolynomial sd_component(const JetPolynomial& rho, std::uint64_t l) {
    JetPolynomial out;
    for (const auto& [m, c] : rho.terms()) {
        if (m.order_of_derivatives() == l) {
            out.add_term(m, c);
        }
    }
    return out;
}

}  // namespace jetsec
