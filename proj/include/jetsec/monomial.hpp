#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace jetsec {

/// Monic monomial in the jet variables x0, x1, x2, ... where xr stands for the
/// r-th derivative of the loop at the base point.
///
/// Stored densely by derivative order with trailing zero exponents trimmed, so
/// two equal monomials always have identical storage. Degree and order of
/// derivatives are computed once at construction.
class JetMonomial {
public:
    using Order = std::size_t;
    using Exponent = std::uint32_t;

    JetMonomial() = default;

    explicit JetMonomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {
        while (!exps_.empty() && exps_.back() == 0) {
            exps_.pop_back();
        }
        for (Order r = 0; r < exps_.size(); ++r) {
            degree_ += exps_[r];
            sd_ += static_cast<std::uint64_t>(r) * exps_[r];
        }
    }

    JetMonomial(std::initializer_list<Exponent> exponents)
        : JetMonomial(std::vector<Exponent>(exponents)) {}

    static JetMonomial variable(Order r, Exponent e = 1) {
        std::vector<Exponent> v(r + 1, 0);
        v[r] = e;
        return JetMonomial(std::move(v));
    }

    /// Product x_{r_1} * ... * x_{r_m}.
    static JetMonomial from_orders(std::span<const Order> orders) {
        std::vector<Exponent> v;
        for (Order r : orders) {
            if (r >= v.size()) {
                v.resize(r + 1, 0);
            }
            ++v[r];
        }
        return JetMonomial(std::move(v));
    }

    [[nodiscard]] Exponent exponent(Order r) const { return r < exps_.size() ? exps_[r] : 0; }
    [[nodiscard]] const std::vector<Exponent>& exponents() const { return exps_; }

    /// One past the highest derivative order present (0 for the unit monomial).
    [[nodiscard]] std::size_t order_span() const { return exps_.size(); }

    [[nodiscard]] std::uint64_t degree() const { return degree_; }
    /// Exponent-weighted sum of derivative orders.
    [[nodiscard]] std::uint64_t order_of_derivatives() const { return sd_; }
    [[nodiscard]] bool is_one() const { return exps_.empty(); }

    /// The same monomial with the x0 factor removed.
    [[nodiscard]] JetMonomial without_x0() const {
        if (exps_.empty()) {
            return {};
        }
        auto v = exps_;
        v[0] = 0;
        return JetMonomial(std::move(v));
    }

    /// Derivative orders with multiplicity, ascending.
    [[nodiscard]] std::vector<Order> orders() const {
        std::vector<Order> out;
        out.reserve(degree_);
        for (Order r = 0; r < exps_.size(); ++r) {
            out.insert(out.end(), exps_[r], r);
        }
        return out;
    }

    friend JetMonomial operator*(const JetMonomial& a, const JetMonomial& b) {
        const auto& longer = a.exps_.size() >= b.exps_.size() ? a : b;
        const auto& shorter = a.exps_.size() >= b.exps_.size() ? b : a;
        JetMonomial out;
        out.exps_ = longer.exps_;
        for (std::size_t i = 0; i < shorter.exps_.size(); ++i) {
            out.exps_[i] += shorter.exps_[i];
        }
        out.degree_ = a.degree_ + b.degree_;
        out.sd_ = a.sd_ + b.sd_;
        return out;
    }

    friend bool operator==(const JetMonomial& a, const JetMonomial& b) { return a.exps_ == b.exps_; }

    /// Term order: total degree, then order of derivatives, then graded
    /// reverse-lexicographic on the exponent vector (the monomial with the
    /// larger exponent at the highest differing derivative order comes first).
    friend std::strong_ordering operator<=>(const JetMonomial& a, const JetMonomial& b) {
        if (auto c = a.degree_ <=> b.degree_; c != 0) {
            return c;
        }
        if (auto c = a.sd_ <=> b.sd_; c != 0) {
            return c;
        }
        const std::size_t len = std::max(a.exps_.size(), b.exps_.size());
        for (std::size_t i = len; i-- > 0;) {
            const Exponent ea = a.exponent(i);
            const Exponent eb = b.exponent(i);
            if (ea != eb) {
                return eb <=> ea;
            }
        }
        return std::strong_ordering::equal;
    }

private:
    std::vector<Exponent> exps_;
    std::uint64_t degree_ = 0;
    std::uint64_t sd_ = 0;
};

struct JetMonomialHash {
    std::size_t operator()(const JetMonomial& m) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto e : m.exponents()) {
            h ^= e;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

}  // namespace jetsec
