#pragma once

// Fast inversion expansion for x0-free monomials in x1..x15.
//
// Setting x0 = 1, substituting the jets of 1/x is a ring endomorphism of
// Q[x1, x2, ...] that preserves the order of derivatives and never lowers the
// degree; the x0 power of each term is recovered from degrees alone. This table
// memoizes that map on monic monomials with fixed-width keys and integer
// coefficients.

#include "jetsec/faa_di_bruno.hpp"
#include "jetsec/monomial.hpp"
#include "jetsec/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace jetsec::detail {

inline constexpr std::size_t kPackedOrders = 16;

struct PackedMonomial {
    std::array<std::uint8_t, kPackedOrders> exps{};
    std::uint16_t degree = 0;
    std::uint16_t sd = 0;

    /// nullopt when m does not fit (order >= 16 or an exponent above 255).
    static std::optional<PackedMonomial> from(const JetMonomial& m) {
        if (m.order_span() > kPackedOrders || m.order_of_derivatives() > 0xffff || m.degree() > 0xffff) {
            return std::nullopt;
        }
        PackedMonomial p;
        for (std::size_t r = 0; r < m.order_span(); ++r) {
            if (m.exponent(r) > 0xff) {
                return std::nullopt;
            }
            p.exps[r] = static_cast<std::uint8_t>(m.exponent(r));
        }
        p.degree = static_cast<std::uint16_t>(m.degree());
        p.sd = static_cast<std::uint16_t>(m.order_of_derivatives());
        return p;
    }

    [[nodiscard]] JetMonomial to_jet() const {
        return JetMonomial(std::vector<JetMonomial::Exponent>(exps.begin(), exps.end()));
    }

    [[nodiscard]] std::size_t top_order() const {
        for (std::size_t r = kPackedOrders; r-- > 0;) {
            if (exps[r] != 0) {
                return r;
            }
        }
        return 0;
    }

    friend bool operator==(const PackedMonomial& a, const PackedMonomial& b) { return a.exps == b.exps; }
};

/// Same order as JetMonomial: degree, order of derivatives, graded reverse lex.
struct PackedLess {
    bool operator()(const PackedMonomial& a, const PackedMonomial& b) const {
        if (a.degree != b.degree) {
            return a.degree < b.degree;
        }
        if (a.sd != b.sd) {
            return a.sd < b.sd;
        }
        for (std::size_t i = kPackedOrders; i-- > 0;) {
            if (a.exps[i] != b.exps[i]) {
                return a.exps[i] > b.exps[i];
            }
        }
        return false;
    }
};

struct PackedHash {
    std::size_t operator()(const PackedMonomial& m) const noexcept {
        std::uint64_t lo;
        std::uint64_t hi;
        std::memcpy(&lo, m.exps.data(), 8);
        std::memcpy(&hi, m.exps.data() + 8, 8);
        std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + (lo << 6) + (lo >> 2));
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
    }
};

inline PackedMonomial packed_product(const PackedMonomial& a, const PackedMonomial& b) {
    PackedMonomial out;
    for (std::size_t i = 0; i < kPackedOrders; ++i) {
        const unsigned s = unsigned(a.exps[i]) + b.exps[i];
        if (s > 0xff) {
            throw std::overflow_error("packed monomial exponent overflow");
        }
        out.exps[i] = static_cast<std::uint8_t>(s);
    }
    out.degree = static_cast<std::uint16_t>(a.degree + b.degree);
    out.sd = static_cast<std::uint16_t>(a.sd + b.sd);
    return out;
}

struct PackedTerm {
    PackedMonomial numerator;
    Integer coefficient;
};

/// Memoized inversion expansion of x0-free monic monomials. Each expansion is
/// sorted by PackedLess, hence by degree ascending. Not thread-safe.
class InversionTable {
public:
    using Expansion = std::vector<PackedTerm>;

    const Expansion& expand(const PackedMonomial& m) {
        if (m.exps[0] != 0) {
            throw std::invalid_argument("InversionTable expects x0-free monomials");
        }
        if (auto it = memo_.find(m); it != memo_.end()) {
            return it->second;
        }
        Expansion value;
        if (m.degree == 0) {
            value.push_back({m, Integer(1)});
        } else {
            const std::size_t top = m.top_order();
            PackedMonomial rest = m;
            --rest.exps[top];
            --rest.degree;
            rest.sd = static_cast<std::uint16_t>(rest.sd - top);
            const Expansion& a = expand(rest);
            const Expansion& b = variable(top);
            std::unordered_map<PackedMonomial, Integer, PackedHash> acc;
            acc.reserve(a.size() * 2);
            for (const auto& ta : a) {
                for (const auto& tb : b) {
                    auto [it, inserted] = acc.try_emplace(packed_product(ta.numerator, tb.numerator));
                    mpz_addmul(it->second.get_mpz_t(), ta.coefficient.get_mpz_t(), tb.coefficient.get_mpz_t());
                }
            }
            value.reserve(acc.size());
            for (auto& [k, c] : acc) {
                if (c != 0) {
                    value.push_back({k, std::move(c)});
                }
            }
            std::sort(value.begin(), value.end(),
                      [](const PackedTerm& x, const PackedTerm& y) { return PackedLess{}(x.numerator, y.numerator); });
        }
        return memo_.emplace(m, std::move(value)).first->second;
    }

    [[nodiscard]] std::size_t memo_size() const { return memo_.size(); }

private:
    const Expansion& variable(std::size_t r) {
        if (auto it = vars_.find(r); it != vars_.end()) {
            return it->second;
        }
        Expansion e;
        for (const auto& [key, c] : inverse_derivative_expansion(r).terms()) {
            auto p = PackedMonomial::from(key.numerator);
            if (!p || c.get_den() != 1) {
                throw std::logic_error("inverse derivative expansion outside the packed range");
            }
            e.push_back({*p, c.get_num()});
        }
        std::sort(e.begin(), e.end(),
                  [](const PackedTerm& x, const PackedTerm& y) { return PackedLess{}(x.numerator, y.numerator); });
        return vars_.emplace(r, std::move(e)).first->second;
    }

    std::unordered_map<PackedMonomial, Expansion, PackedHash> memo_;
    std::unordered_map<std::size_t, Expansion> vars_;
};

}  // namespace jetsec::detail
