#pragma once

// Exact scalars. Every coefficient in the library is a GMP rational kept in
// canonical form (reduced, positive denominator); there is no floating point.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetsec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error when den == 0.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer factorial(unsigned long k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace jetsec
