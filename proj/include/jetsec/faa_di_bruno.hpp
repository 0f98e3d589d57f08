#pragma once

// Faa di Bruno expansion of the derivatives of 1/x and the closed form of the
// product of two such derivatives.

#include "jetsec/combinatorics.hpp"
#include "jetsec/laurent.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace jetsec {

/// Expansion of the k-th derivative of 1/x:
///   sum over p with sum i*p_i = k of c_p * x1^p_1 ... xk^p_k / x0^(|p|+1),
///   c_p = k! (-1)^|p| / ((1!)^p_1 ... (k!)^p_k) * multinomial(p).
/// k = 0 gives 1/x0. Results are memoized process-wide behind a mutex.
inline const LaurentExpansion& inverse_derivative_expansion(unsigned long k) {
    static std::mutex mutex;
    static std::map<unsigned long, LaurentExpansion> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) {
        return it->second;
    }
    LaurentExpansion e;
    if (k == 0) {
        e.add_term(LaurentKey{JetMonomial{}, -1}, 1);
    } else {
        const Integer kf = factorial(k);
        for_each_composition(k, k, [&](const Composition& p) {
            Integer denom = 1;
            std::vector<JetMonomial::Exponent> exps(k + 1, 0);
            for (std::size_t i = 1; i <= k; ++i) {
                exps[i] = p.at(i);
                Integer f = factorial(i);
                for (unsigned j = 0; j < p.at(i); ++j) {
                    denom *= f;
                }
            }
            const long w = static_cast<long>(p.weight());
            Rational c = make_rational(kf * multinomial(p), denom);
            if (w % 2 != 0) {
                c = -c;
            }
            e.add_term(LaurentKey{JetMonomial(std::move(exps)), -(w + 1)}, c);
        });
    }
    return cache.emplace(k, std::move(e)).first->second;
}

/// Closed form of (1/x)^(k1) * (1/x)^(k2) for k1 >= k2 >= 1:
///   sum over mu with sum i*mu_i = k1 + k2 (length k1) of
///   c_mu * x1^mu_1 ... / x0^(|mu|+2),
///   c_mu = k1! k2! (-1)^|mu| / ((1!)^mu_1 ... (k1!)^mu_k1) * C(mu, k1, k2).
inline LaurentExpansion product_expansion(unsigned long k1, unsigned long k2) {
    if (k2 < 1 || k1 < k2) {
        throw std::invalid_argument("product_expansion requires k1 >= k2 >= 1");
    }
    const Integer scale = factorial(k1) * factorial(k2);
    LaurentExpansion e;
    for_each_composition(k1, k1 + k2, [&](const Composition& mu) {
        const Integer cc = c_coefficient(mu, k1, k2);
        if (cc == 0) {
            return;
        }
        Integer denom = 1;
        std::vector<JetMonomial::Exponent> exps(k1 + 1, 0);
        for (std::size_t i = 1; i <= k1; ++i) {
            exps[i] = mu.at(i);
            Integer f = factorial(i);
            for (unsigned j = 0; j < mu.at(i); ++j) {
                denom *= f;
            }
        }
        const long w = static_cast<long>(mu.weight());
        Rational c = make_rational(scale * cc, denom);
        if (w % 2 != 0) {
            c = -c;
        }
        e.add_term(LaurentKey{JetMonomial(std::move(exps)), -(w + 2)}, c);
    });
    return e;
}

}  // namespace jetsec
