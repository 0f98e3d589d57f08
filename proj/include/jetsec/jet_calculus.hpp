#pragma once

// Substitution of the jets of 1/x into jet polynomials, the resulting
// compatibility relation rho1 ~n rho2 and the total derivative D.

#include "jetsec/faa_di_bruno.hpp"
#include "jetsec/inversion_table.hpp"
#include "jetsec/laurent.hpp"
#include "jetsec/polynomial.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <optional>
#include <variant>
#include <vector>

namespace jetsec {

/// Inversion expansion with a per-instance memo keyed by the x0-free part of
/// each monomial. Not thread-safe; use one instance per task.
class InversionExpander {
public:
    /// Expansion of a monic monomial.
    const LaurentExpansion& expand_monomial(const JetMonomial& m) {
        if (m.exponent(0) == 0) {
            return expand_x0_free(m);
        }
        auto [it, inserted] = shifted_.try_emplace(m);
        if (inserted) {
            it->second = expand_x0_free(m.without_x0()).shifted(-static_cast<long>(m.exponent(0)));
        }
        return it->second;
    }

    LaurentExpansion expand(const JetPolynomial& rho) {
        if (auto fast = expand_packed(rho)) {
            return std::move(*fast);
        }
        LaurentExpansion out;
        for (const auto& [m, c] : rho.terms()) {
            for (const auto& [k, v] : expand_monomial(m).terms()) {
                out.add_term(k, c * v);
            }
        }
        return out;
    }

private:
    struct PackedKeyHash {
        std::size_t operator()(const std::pair<long, detail::PackedMonomial>& k) const noexcept {
            return detail::PackedHash{}(k.second) ^ (static_cast<std::size_t>(k.first) * 0x9e3779b97f4a7c15ULL);
        }
    };

    // Same expansion through the packed table; nullopt if rho does not fit.
    std::optional<LaurentExpansion> expand_packed(const JetPolynomial& rho) {
        std::vector<std::pair<long, detail::PackedMonomial>> parts;
        for (const auto& [m, c] : rho.terms()) {
            auto p = detail::PackedMonomial::from(m.without_x0());
            if (!p || m.order_of_derivatives() > 0xff) {
                return std::nullopt;
            }
            parts.emplace_back(static_cast<long>(m.exponent(0)), *p);
        }
        std::unordered_map<std::pair<long, detail::PackedMonomial>, Rational, PackedKeyHash> acc;
        std::size_t i = 0;
        for (const auto& [m, c] : rho.terms()) {
            const auto& [e0, free] = parts[i++];
            for (const auto& t : table_.expand(free)) {
                const long power = -(e0 + static_cast<long>(free.degree) + static_cast<long>(t.numerator.degree));
                acc[{power, t.numerator}] += c * t.coefficient;
            }
        }
        LaurentExpansion out;
        for (const auto& [k, v] : acc) {
            if (v != 0) {
                out.add_term(LaurentKey{k.second.to_jet(), k.first}, v);
            }
        }
        return out;
    }

    const LaurentExpansion& expand_x0_free(const JetMonomial& m) {
        if (auto it = memo_.find(m); it != memo_.end()) {
            return it->second;
        }
        LaurentExpansion value;
        if (m.is_one()) {
            value = LaurentExpansion::term(JetMonomial{}, 0);
        } else {
            // peel one factor of the highest order
            const auto top = m.order_span() - 1;
            auto exps = m.exponents();
            --exps[top];
            const LaurentExpansion& rest = expand_x0_free(JetMonomial(std::move(exps)));
            value = rest * inverse_derivative_expansion(top);
        }
        return memo_.emplace(m, std::move(value)).first->second;
    }

    std::unordered_map<JetMonomial, LaurentExpansion, JetMonomialHash> memo_;
    std::unordered_map<JetMonomial, LaurentExpansion, JetMonomialHash> shifted_;
    detail::InversionTable table_;
};

/// rho evaluated on the jets of 1/x, expanded exactly; each xr is replaced by
/// inverse_derivative_expansion(r).
inline LaurentExpansion inversion_expansion(const JetPolynomial& rho) {
    InversionExpander expander;
    return expander.expand(rho);
}

/// A pair rho1 ~n rho2: rho2 = x0^n * inversion_expansion(rho1).
struct CompatibilityWitness {
    unsigned long n = 0;
    JetPolynomial rho1;
    JetPolynomial rho2;
};

/// Evidence that rho1 has no partner at level n: the smallest x0 power of the
/// expansion is below -n. The witness is the first term carrying that power.
struct NotAMember {
    long min_x0_power = 0;
    LaurentKey witness;
    Rational witness_coefficient;
};

using PartnerResult = std::variant<CompatibilityWitness, NotAMember>;

inline bool is_member(const PartnerResult& r) { return std::holds_alternative<CompatibilityWitness>(r); }

/// Converts x0^n * e into a polynomial. Requires every power + n >= 0.
inline JetPolynomial shift_to_polynomial(const LaurentExpansion& e, unsigned long n) {
    JetPolynomial out;
    for (const auto& [k, c] : e.terms()) {
        const long p = k.x0_power + static_cast<long>(n);
        if (p < 0) {
            throw std::invalid_argument("shift_to_polynomial: negative x0 power remains");
        }
        out.add_term(k.numerator * JetMonomial::variable(0, static_cast<JetMonomial::Exponent>(p)), c);
    }
    return out;
}

inline PartnerResult partner_from_expansion(const JetPolynomial& rho1, const LaurentExpansion& e, unsigned long n) {
    const long floor = -static_cast<long>(n);
    auto first = e.terms().begin();
    if (first != e.terms().end() && first->first.x0_power < floor) {
        return NotAMember{first->first.x0_power, first->first, first->second};
    }
    return CompatibilityWitness{n, rho1, shift_to_polynomial(e, n)};
}

/// The unique rho2 with rho1 ~n rho2, or NotAMember evidence. Rejects zero.
inline PartnerResult partner(const JetPolynomial& rho1, unsigned long n, InversionExpander& expander) {
    if (rho1.is_zero()) {
        throw std::invalid_argument("partner of the zero polynomial");
    }
    return partner_from_expansion(rho1, expander.expand(rho1), n);
}

inline PartnerResult partner(const JetPolynomial& rho1, unsigned long n) {
    InversionExpander expander;
    return partner(rho1, n, expander);
}

/// Total derivative: xr -> x(r+1), extended by the product rule.
inline JetPolynomial derive(const JetPolynomial& rho) {
    JetPolynomial out;
    for (const auto& [m, c] : rho.terms()) {
        const auto& exps = m.exponents();
        for (std::size_t r = 0; r < exps.size(); ++r) {
            if (exps[r] == 0) {
                continue;
            }
            auto raised = exps;
            raised.resize(std::max(raised.size(), r + 2), 0);
            --raised[r];
            ++raised[r + 1];
            out.add_term(JetMonomial(std::move(raised)), c * exps[r]);
        }
    }
    return out;
}

}  // namespace jetsec
