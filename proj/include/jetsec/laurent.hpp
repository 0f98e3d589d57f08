#pragma once

#include "jetsec/monomial.hpp"
#include "jetsec/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>

namespace jetsec {

/// Term key numerator * x0^x0_power, where the numerator never involves x0 and
/// the power may be negative.
struct LaurentKey {
    JetMonomial numerator;
    long x0_power = 0;

    friend bool operator==(const LaurentKey&, const LaurentKey&) = default;

    /// x0 power ascending, then the numerator term order.
    friend std::strong_ordering operator<=>(const LaurentKey& a, const LaurentKey& b) {
        if (auto c = a.x0_power <=> b.x0_power; c != 0) {
            return c;
        }
        return a.numerator <=> b.numerator;
    }
};

/// Finite sum of rational multiples of LaurentKey terms. Codomain of the
/// inversion expansion.
class LaurentExpansion {
public:
    using TermMap = std::map<LaurentKey, Rational>;

    LaurentExpansion() = default;

    static LaurentExpansion term(JetMonomial numerator, long x0_power, const Rational& c = 1) {
        LaurentExpansion e;
        e.add_term(LaurentKey{std::move(numerator), x0_power}, c);
        return e;
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] Rational coefficient(const LaurentKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const LaurentKey& k, const Rational& c) {
        if (k.numerator.exponent(0) != 0) {
            throw std::invalid_argument("Laurent numerator must not involve x0");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Smallest x0 power present; nullopt for the empty expansion.
    [[nodiscard]] std::optional<long> min_x0_power() const {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.begin()->first.x0_power;
    }

    LaurentExpansion& operator+=(const LaurentExpansion& o) {
        for (const auto& [k, c] : o.terms_) {
            add_term(k, c);
        }
        return *this;
    }

    LaurentExpansion& operator-=(const LaurentExpansion& o) {
        for (const auto& [k, c] : o.terms_) {
            add_term(k, -c);
        }
        return *this;
    }

    LaurentExpansion& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) {
                c *= s;
            }
        }
        return *this;
    }

    /// Multiplies every term by x0^shift.
    [[nodiscard]] LaurentExpansion shifted(long shift) const {
        LaurentExpansion out;
        for (const auto& [k, c] : terms_) {
            out.terms_.emplace_hint(out.terms_.end(), LaurentKey{k.numerator, k.x0_power + shift}, c);
        }
        return out;
    }

    friend LaurentExpansion operator+(LaurentExpansion a, const LaurentExpansion& b) { return a += b; }
    friend LaurentExpansion operator-(LaurentExpansion a, const LaurentExpansion& b) { return a -= b; }
    friend LaurentExpansion operator*(LaurentExpansion a, const Rational& s) { return a *= s; }

    friend LaurentExpansion operator*(const LaurentExpansion& a, const LaurentExpansion& b) {
        LaurentExpansion out;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                LaurentKey k{ka.numerator * kb.numerator, ka.x0_power + kb.x0_power};
                auto [it, inserted] = out.terms_.try_emplace(std::move(k), ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                }
            }
        }
        std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    friend bool operator==(const LaurentExpansion&, const LaurentExpansion&) = default;

private:
    TermMap terms_;
};

}  // namespace jetsec
