#pragma once

// Compositions p = (p_1, ..., p_m) with p_1 + 2 p_2 + ... + m p_m = k, the
// multinomial and C(mu, k1, k2) coefficients built from them, permutations of
// the multiset {p_1 * 1, ..., p_m * m} and the partial-sum bijection between
// the permutation sets that hit two neighbouring targets.

#include "jetsec/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetsec {

/// Tuple of nonnegative parts; parts[i] is the multiplicity of the value i+1.
struct Composition {
    std::vector<unsigned> parts;

    Composition() = default;
    explicit Composition(std::vector<unsigned> p) : parts(std::move(p)) {}
    Composition(std::initializer_list<unsigned> p) : parts(p) {}

    [[nodiscard]] std::size_t length() const { return parts.size(); }

    /// Sum of i * p_i.
    [[nodiscard]] unsigned long weighted_sum() const {
        unsigned long k = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            k += (i + 1) * static_cast<unsigned long>(parts[i]);
        }
        return k;
    }

    /// |p| = sum of p_i.
    [[nodiscard]] unsigned long weight() const {
        return std::accumulate(parts.begin(), parts.end(), 0UL);
    }

    /// p_i with 1-based index, zero beyond the stored length.
    [[nodiscard]] unsigned at(std::size_t i) const { return i >= 1 && i <= parts.size() ? parts[i - 1] : 0; }

    /// Index of the last nonzero part (0 for the all-zero tuple).
    [[nodiscard]] std::size_t effective_length() const {
        std::size_t len = parts.size();
        while (len > 0 && parts[len - 1] == 0) {
            --len;
        }
        return len;
    }

    /// Equality up to trailing zero parts.
    [[nodiscard]] bool same_as(const Composition& o) const {
        const std::size_t len = std::max(parts.size(), o.parts.size());
        for (std::size_t i = 1; i <= len; ++i) {
            if (at(i) != o.at(i)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Composition&, const Composition&) = default;
    friend auto operator<=>(const Composition&, const Composition&) = default;
};

inline std::string to_string(const Composition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(p.parts[i]);
    }
    return s + ")";
}

namespace detail {

inline void compositions_rec(std::vector<unsigned>& parts, std::size_t index, unsigned long remaining,
                             const std::function<void(const Composition&)>& visit) {
    // index is 1-based; parts above index are fixed, outer loops vary the last
    // part slowest which yields colexicographic order.
    if (index == 1) {
        parts[0] = static_cast<unsigned>(remaining);
        visit(Composition(parts));
        return;
    }
    for (unsigned long v = 0; v * index <= remaining; ++v) {
        parts[index - 1] = static_cast<unsigned>(v);
        compositions_rec(parts, index - 1, remaining - v * index, visit);
    }
    parts[index - 1] = 0;
}

}  // namespace detail

/// Streams every p of length m with sum i*p_i = k, in colexicographic order
/// (the last part varies slowest, ascending).
inline void for_each_composition(std::size_t m, unsigned long k, const std::function<void(const Composition&)>& visit) {
    if (m == 0) {
        if (k == 0) {
            visit(Composition{});
        }
        return;
    }
    std::vector<unsigned> parts(m, 0);
    detail::compositions_rec(parts, m, k, visit);
}

inline std::vector<Composition> compositions(std::size_t m, unsigned long k) {
    if (m < 1 || k < 1) {
        throw std::invalid_argument("compositions require m >= 1 and k >= 1");
    }
    std::vector<Composition> out;
    for_each_composition(m, k, [&](const Composition& p) { out.push_back(p); });
    return out;
}

/// |p|! / (p_1! ... p_m!).
inline Integer multinomial(const Composition& p) {
    Integer r = factorial(p.weight());
    for (unsigned part : p.parts) {
        r /= factorial(part);
    }
    return r;
}

/// Sum over decompositions mu = p + q with p of weighted sum k1 (length k1)
/// and q of weighted sum k2 (length k2) of multinomial(p) * multinomial(q);
/// zero when no decomposition exists.
///
/// mu may carry any number of trailing parts; a nonzero part beyond k1 simply
/// admits no decomposition. Throws std::invalid_argument unless k1 >= k2 >= 1
/// and the weighted sum of mu is k1 + k2.
inline Integer c_coefficient(const Composition& mu, unsigned long k1, unsigned long k2) {
    if (k2 < 1 || k1 < k2) {
        throw std::invalid_argument("c_coefficient requires k1 >= k2 >= 1");
    }
    if (mu.weighted_sum() != k1 + k2) {
        throw std::invalid_argument("c_coefficient: " + to_string(mu) + " does not have weighted sum " +
                                    std::to_string(k1 + k2));
    }
    if (mu.effective_length() > k1) {
        return 0;
    }
    Integer total = 0;
    for_each_composition(k2, k2, [&](const Composition& q) {
        std::vector<unsigned> p(k1, 0);
        for (std::size_t i = 1; i <= k1; ++i) {
            const unsigned mi = mu.at(i);
            const unsigned qi = q.at(i);
            if (qi > mi) {
                return;
            }
            p[i - 1] = mi - qi;
        }
        total += multinomial(Composition(std::move(p))) * multinomial(q);
    });
    return total;
}

/// Sequence (a_1, ..., a_|r|) of positive integers.
struct MultisetPermutation {
    std::vector<unsigned> entries;

    MultisetPermutation() = default;
    explicit MultisetPermutation(std::vector<unsigned> e) : entries(std::move(e)) {}
    MultisetPermutation(std::initializer_list<unsigned> e) : entries(e) {}

    [[nodiscard]] std::size_t size() const { return entries.size(); }

    friend bool operator==(const MultisetPermutation&, const MultisetPermutation&) = default;
    friend auto operator<=>(const MultisetPermutation&, const MultisetPermutation&) = default;
};

inline std::string to_string(const MultisetPermutation& w) {
    return to_string(Composition(w.entries));
}

/// The multiset {r_1 * 1, ..., r_m * m} as a sorted sequence.
inline std::vector<unsigned> multiset_of(const Composition& r) {
    std::vector<unsigned> out;
    for (std::size_t i = 1; i <= r.parts.size(); ++i) {
        out.insert(out.end(), r.at(i), static_cast<unsigned>(i));
    }
    return out;
}

/// Streams the distinct permutations of M_r in lexicographic order. The visitor
/// receives a view valid only for the duration of the call.
inline void for_each_multiset_permutation(const Composition& r,
                                          const std::function<void(const std::vector<unsigned>&)>& visit) {
    auto seq = multiset_of(r);
    if (seq.empty()) {
        return;
    }
    do {
        visit(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
}

inline std::vector<MultisetPermutation> multiset_permutations(const Composition& r) {
    if (r.weight() < 1) {
        throw std::invalid_argument("multiset_permutations requires |r| >= 1");
    }
    std::vector<MultisetPermutation> out;
    for_each_multiset_permutation(r, [&](const std::vector<unsigned>& s) { out.emplace_back(s); });
    return out;
}

inline std::vector<unsigned long> partial_sums(std::span<const unsigned> entries) {
    std::vector<unsigned long> out;
    out.reserve(entries.size());
    unsigned long s = 0;
    for (unsigned a : entries) {
        s += a;
        out.push_back(s);
    }
    return out;
}

inline std::vector<unsigned long> partial_sums(const MultisetPermutation& w) {
    if (w.entries.empty()) {
        throw std::invalid_argument("partial_sums of an empty permutation");
    }
    return partial_sums(std::span<const unsigned>(w.entries));
}

inline bool partial_sums_contain(std::span<const unsigned> entries, unsigned long target) {
    unsigned long s = 0;
    for (unsigned a : entries) {
        s += a;
        if (s == target) {
            return true;
        }
        if (s > target) {
            return false;
        }
    }
    return false;
}

/// Streams the permutations of M_mu whose partial sums contain target.
inline void for_each_filtered_permutation(const Composition& mu, unsigned long target,
                                          const std::function<void(const std::vector<unsigned>&)>& visit) {
    if (target > mu.weighted_sum()) {
        return;
    }
    for_each_multiset_permutation(mu, [&](const std::vector<unsigned>& s) {
        if (partial_sums_contain(s, target)) {
            visit(s);
        }
    });
}

inline std::vector<MultisetPermutation> filtered_permutation_set(const Composition& mu, unsigned long target) {
    std::vector<MultisetPermutation> out;
    for_each_filtered_permutation(mu, target, [&](const std::vector<unsigned>& s) { out.emplace_back(s); });
    return out;
}

/// Admissible parameters for the bijection: n >= 4, mu of length n-1 and
/// weighted sum 2n-4 with |mu| >= n-1.
inline bool sigma_domain_ok(unsigned long n, const Composition& mu) {
    return n >= 4 && mu.effective_length() <= n - 1 && mu.weighted_sum() == 2 * n - 4 && mu.weight() >= n - 1;
}

/// Maps a permutation of M_mu whose partial sums contain n-1 to one whose
/// partial sums contain n-2.
///
/// The input is split as w = (a_1..a_P | b_1..b_Q) where a_1 + ... + a_P = n-1.
/// If a_1 = 1 the leading 1 moves to position P. Otherwise, with S_i the
/// partial sums of the a-block and T_j those of the b-block, take the smallest
/// S_i such that S_i - 1 = T_j for some j and emit
/// (b_1..b_j, a_{i+1}..a_P, a_1..a_i, b_{j+1}..b_Q).
///
/// Throws std::invalid_argument for parameters outside the domain or when w is
/// not a permutation of M_mu hitting n-1.
inline MultisetPermutation sigma_bijection(const MultisetPermutation& w, unsigned long n, const Composition& mu) {
    if (!sigma_domain_ok(n, mu)) {
        throw std::invalid_argument("sigma_bijection: need n >= 4 and mu in P_{n-1,2n-4} with |mu| >= n-1");
    }
    {
        auto sorted = w.entries;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != multiset_of(mu)) {
            throw std::invalid_argument("sigma_bijection: " + to_string(w) + " is not a permutation of M_mu");
        }
    }
    const auto& e = w.entries;
    const auto sums = partial_sums(std::span<const unsigned>(e));
    auto split_it = std::find(sums.begin(), sums.end(), n - 1);
    if (split_it == sums.end()) {
        throw std::invalid_argument("sigma_bijection: partial sums of " + to_string(w) + " miss n-1");
    }
    const std::size_t p_len = static_cast<std::size_t>(split_it - sums.begin()) + 1;
    std::span<const unsigned> a(e.data(), p_len);
    std::span<const unsigned> b(e.data() + p_len, e.size() - p_len);

    std::vector<unsigned> out;
    out.reserve(e.size());
    if (a[0] == 1) {
        out.insert(out.end(), a.begin() + 1, a.end());
        out.push_back(1);
        out.insert(out.end(), b.begin(), b.end());
    } else {
        const auto sa = partial_sums(a);
        const auto sb = partial_sums(b);
        std::size_t i1 = 0;
        std::size_t i2 = 0;
        bool found = false;
        for (std::size_t i = 0; i < sa.size() && !found; ++i) {
            auto hit = std::find(sb.begin(), sb.end(), sa[i] - 1);
            if (hit != sb.end()) {
                i1 = i + 1;
                i2 = static_cast<std::size_t>(hit - sb.begin()) + 1;
                found = true;
            }
        }
        if (!found) {
            throw std::logic_error("sigma_bijection: no matching partial sums for " + to_string(w));
        }
        out.insert(out.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i2));
        out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i1), a.end());
        out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i1));
        out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(i2), b.end());
    }
    if (!partial_sums_contain(out, n - 2)) {
        throw std::logic_error("sigma_bijection: image of " + to_string(w) + " misses n-2");
    }
    return MultisetPermutation(std::move(out));
}

}  // namespace jetsec
