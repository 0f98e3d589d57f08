#pragma once

// Closed-form generators for P_{n,2} and verifiers for the combinatorial
// identities behind them. Verifiers never stop at the first failure; they
// record every instance so reports can be diffed.

#include "jetsec/combinatorics.hpp"
#include "jetsec/jet_calculus.hpp"
#include "jetsec/solver.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jetsec {

using Params = std::vector<std::pair<std::string, std::string>>;

struct IdentityInstance {
    Params params;
    std::string check;
    std::string left;
    std::string right;
    bool pass = false;
};

struct IdentityReport {
    std::string statement;
    Params grid;
    std::vector<IdentityInstance> instances;
    /// Expected failures (e.g. the |mu| = n-2 counterexamples); not part of pass().
    std::vector<IdentityInstance> witnesses;

    [[nodiscard]] bool pass() const {
        for (const auto& i : instances) {
            if (!i.pass) {
                return false;
            }
        }
        return true;
    }

    void add(Params params, std::string check, const std::string& left, const std::string& right) {
        instances.push_back({std::move(params), std::move(check), left, right, left == right});
    }

    void add(Params params, std::string check, bool ok, std::string left = "true", std::string right = "true") {
        instances.push_back({std::move(params), std::move(check), std::move(left), std::move(right), ok});
    }
};

/// Basis of P_{n,2}: the monomials x(r1) x(r2) with 0 <= r2 <= r1 <= n-2-r2
/// (r2 ascending, then r1), followed by the binomials
/// x(k1) x(k2) - k1/(k2+1) x(k1-1) x(k2+1) with 0 <= n-1-k1 <= k2 <= k1-2
/// (k1 ascending, then k2).
inline std::vector<JetPolynomial> theorem_basis_p2(unsigned long n) {
    if (n < 2) {
        throw std::invalid_argument("theorem_basis_p2 requires n >= 2");
    }
    auto mono = [](unsigned long a, unsigned long b) {
        return JetMonomial::variable(a) * JetMonomial::variable(b);
    };
    std::vector<JetPolynomial> out;
    for (unsigned long r2 = 0; 2 * r2 <= n - 2; ++r2) {
        for (unsigned long r1 = r2; r1 + r2 <= n - 2; ++r1) {
            out.emplace_back(mono(r1, r2));
        }
    }
    for (unsigned long k1 = 2; k1 <= n - 1; ++k1) {
        for (unsigned long k2 = n - 1 - k1; k2 + 2 <= k1; ++k2) {
            JetPolynomial p(mono(k1, k2));
            p.add_term(mono(k1 - 1, k2 + 1), -make_rational(Integer(k1), Integer(k2 + 1)));
            out.push_back(std::move(p));
        }
    }
    return out;
}

/// dim P_{n,2,l}: 1 + floor(l/2) below n-1, 1 + floor((2n-4-l)/2) up to 2n-4, else 0.
inline unsigned long dim_formula_p2(unsigned long n, long l) {
    if (n < 2) {
        throw std::invalid_argument("dim_formula_p2 requires n >= 2");
    }
    const long top = 2 * static_cast<long>(n) - 4;
    if (l < 0 || l > top) {
        return 0;
    }
    if (l <= static_cast<long>(n) - 2) {
        return 1 + static_cast<unsigned long>(l / 2);
    }
    return 1 + static_cast<unsigned long>((top - l) / 2);
}

/// The element of P_{n,2} with largest order of derivatives:
/// x(n-1) x(n-3) - (n-1)/(n-2) x(n-2)^2.
inline JetPolynomial max_tod_element(unsigned long n) {
    if (n < 3) {
        throw std::invalid_argument("max_tod_element requires n >= 3");
    }
    JetPolynomial p(JetMonomial::variable(n - 1) * JetMonomial::variable(n - 3));
    p.add_term(JetMonomial::variable(n - 2, 2), -make_rational(Integer(n - 1), Integer(n - 2)));
    return p;
}

namespace detail {

inline Params mu_params(unsigned long n, const Composition& mu) {
    return {{"n", std::to_string(n)}, {"mu", to_string(mu)}};
}

}  // namespace detail

/// For every mu in P_{n-1,2n-4} with |mu| >= n-1: C(mu,n-1,n-3) = C(mu,n-2,n-2),
/// both sides against the sizes of A (partial sums hit n-1) and A' (hit n-2),
/// and, when with_bijection, that sigma maps A onto A' injectively.
inline IdentityReport verify_prop_cis(unsigned long n, bool with_bijection = true) {
    if (n < 4) {
        throw std::invalid_argument("verify_prop_cis requires n >= 4");
    }
    IdentityReport rep;
    rep.statement = "cis";
    rep.grid = {{"n", std::to_string(n)}};
    for_each_composition(n - 1, 2 * n - 4, [&](const Composition& mu) {
        if (mu.weight() < n - 1) {
            return;
        }
        const Integer left = c_coefficient(mu, n - 1, n - 3);
        const Integer right = c_coefficient(mu, n - 2, n - 2);
        const auto params = detail::mu_params(n, mu);
        rep.add(params, "C(mu,n-1,n-3)=C(mu,n-2,n-2)", left.get_str(), right.get_str());

        std::set<std::vector<unsigned>> image;
        unsigned long size_a = 0;
        bool injective = true;
        bool in_a_prime = true;
        for_each_filtered_permutation(mu, n - 1, [&](const std::vector<unsigned>& w) {
            ++size_a;
            if (!with_bijection) {
                return;
            }
            auto s = sigma_bijection(MultisetPermutation(w), n, mu).entries;
            in_a_prime = in_a_prime && partial_sums_contain(s, n - 2);
            injective = image.insert(std::move(s)).second && injective;
        });
        unsigned long size_a_prime = 0;
        bool onto = true;
        for_each_filtered_permutation(mu, n - 2, [&](const std::vector<unsigned>& w) {
            ++size_a_prime;
            if (with_bijection && !image.count(w)) {
                onto = false;
            }
        });
        rep.add(params, "|A|=C(mu,n-1,n-3)", std::to_string(size_a), left.get_str());
        rep.add(params, "|A'|=C(mu,n-2,n-2)", std::to_string(size_a_prime), right.get_str());
        if (with_bijection) {
            rep.add(params, "sigma bijective A->A'", injective && in_a_prime && onto,
                    std::to_string(image.size()), std::to_string(size_a_prime));
        }
    });
    return rep;
}

/// (a) C(mu,n-1,k2) = C(mu,n-2,k2+1) for mu in P_{n-1,n-1+k2} with |mu| >= n-1;
/// (b) every |mu| = n-2 where the sides differ is recorded as a witness, and
/// the existence of at least one is itself an instance.
inline IdentityReport verify_corollary(unsigned long n, unsigned long k2) {
    if (n < 4 || k2 < 1 || k2 > n - 3) {
        throw std::invalid_argument("verify_corollary requires n >= 4 and 1 <= k2 <= n-3");
    }
    IdentityReport rep;
    rep.statement = "corollary";
    rep.grid = {{"n", std::to_string(n)}, {"k2", std::to_string(k2)}};
    for_each_composition(n - 1, n - 1 + k2, [&](const Composition& mu) {
        Params params = detail::mu_params(n, mu);
        params.emplace_back("k2", std::to_string(k2));
        if (mu.weight() >= n - 1) {
            rep.add(params, "C(mu,n-1,k2)=C(mu,n-2,k2+1)", c_coefficient(mu, n - 1, k2).get_str(),
                    c_coefficient(mu, n - 2, k2 + 1).get_str());
        } else if (mu.weight() == n - 2) {
            const Integer left = c_coefficient(mu, n - 1, k2);
            const Integer right = c_coefficient(mu, n - 2, k2 + 1);
            if (left != right) {
                rep.witnesses.push_back({params, "C(mu,n-1,k2)!=C(mu,n-2,k2+1) at |mu|=n-2", left.get_str(),
                                         right.get_str(), false});
            }
        }
    });
    rep.add({{"n", std::to_string(n)}, {"k2", std::to_string(k2)}}, "failure witness at |mu|=n-2 exists",
            !rep.witnesses.empty(), std::to_string(rep.witnesses.size()), ">=1");
    return rep;
}

/// Checks the closed-form basis of P_{n,2} against the solver:
/// (a) each element has a partner at level n; (b) exact independence;
/// (c) count = binom(n,2) = solver dimension, with equal spans;
/// (d) per-l counts = dim_formula_p2 = solver dimension at l;
/// (e) nothing in P_{n,2} has order of derivatives 2n-3.
inline IdentityReport verify_theorem_p2(unsigned long n) {
    if (n < 2) {
        throw std::invalid_argument("verify_theorem_p2 requires n >= 2");
    }
    IdentityReport rep;
    rep.statement = "theorem-p2";
    rep.grid = {{"n", std::to_string(n)}};
    const Params pn{{"n", std::to_string(n)}};
    const auto basis = theorem_basis_p2(n);
    InversionExpander expander;

    bool all_members = true;
    for (const auto& b : basis) {
        all_members = is_member(partner_from_expansion(b, expander.expand(b), n)) && all_members;
    }
    rep.add(pn, "(a) every element has a partner", all_members);

    const std::size_t r = polynomial_rank(basis);
    rep.add(pn, "(b) rank = count", std::to_string(r), std::to_string(basis.size()));

    const auto solved = solve_subspace(SubspaceQuery{n, 2, {}}, expander);
    const std::string binom = binomial(n, 2).get_str();
    rep.add(pn, "(c) count = binom(n,2)", std::to_string(basis.size()), binom);
    rep.add(pn, "(c) solver dimension = binom(n,2)", std::to_string(solved.dimension), binom);
    auto combined = basis;
    combined.insert(combined.end(), solved.basis.begin(), solved.basis.end());
    rep.add(pn, "(c) rank(theorem + solver) = binom(n,2)", std::to_string(polynomial_rank(combined)), binom);

    std::map<std::uint64_t, unsigned long> per_l;
    for (const auto& b : basis) {
        ++per_l[b.order_of_derivatives()];
    }
    for (unsigned long l = 0; l <= 2 * (n - 1); ++l) {
        Params pl{{"n", std::to_string(n)}, {"l", std::to_string(l)}};
        const auto at_l = solve_subspace(SubspaceQuery{n, 2, l}, expander).dimension;
        const auto formula = dim_formula_p2(n, static_cast<long>(l));
        rep.add(pl, "(d) theorem count at l = formula", std::to_string(per_l[l]), std::to_string(formula));
        rep.add(pl, "(d) solver dimension at l = formula", std::to_string(at_l), std::to_string(formula));
    }

    if (n >= 2) {
        const unsigned long l = 2 * n - 3;
        const auto at_l = solve_subspace(SubspaceQuery{n, 2, l}, expander).dimension;
        bool clean = true;
        for (const auto& b : solved.basis) {
            clean = clean && sd_component(b, l).is_zero();
        }
        rep.add(pn, "(e) dim P_{n,2,2n-3} = 0", std::to_string(at_l), "0");
        rep.add(pn, "(e) no basis term of sd 2n-3", clean);
    }
    return rep;
}

struct ConjectureProbeReport {
    unsigned long n = 0;
    unsigned long d = 0;
    std::size_t solver_dimension = 0;
    Integer binomial_value;
    std::map<unsigned long, std::size_t> grading;  // every l in 0..d(n-1)
    bool symmetry = false;                          // dim(l) = dim(dn-d^2-l)
    bool support = false;                           // dim(l) != 0 iff 0 <= l <= dn-d^2
    std::size_t grading_total = 0;

    [[nodiscard]] bool consistent() const { return grading_total == solver_dimension; }
    [[nodiscard]] bool matches_binomial() const { return Integer(solver_dimension) == binomial_value; }
};

/// Records solver facts for P_{n,d}; asserts nothing.
inline ConjectureProbeReport conjecture_probe(unsigned long n, unsigned long d) {
    SubspaceQuery{n, d, {}}.validate();
    ConjectureProbeReport rep;
    rep.n = n;
    rep.d = d;
    rep.binomial_value = binomial(n, d);
    InversionExpander expander;
    rep.solver_dimension = solve_subspace(SubspaceQuery{n, d, {}}, expander).dimension;
    const unsigned long top = d * (n == 0 ? 0 : n - 1);
    for (unsigned long l = 0; l <= top; ++l) {
        rep.grading[l] = solve_subspace(SubspaceQuery{n, d, l}, expander).dimension;
        rep.grading_total += rep.grading[l];
    }
    const long centre = static_cast<long>(d * n) - static_cast<long>(d * d);
    auto dim_at = [&](long l) -> std::size_t {
        if (l < 0 || l > static_cast<long>(top)) {
            return 0;
        }
        return rep.grading.at(static_cast<unsigned long>(l));
    };
    rep.symmetry = true;
    rep.support = true;
    for (const auto& [l, dim] : rep.grading) {
        const long li = static_cast<long>(l);
        rep.symmetry = rep.symmetry && dim == dim_at(centre - li);
        rep.support = rep.support && ((dim != 0) == (li <= centre));
    }
    return rep;
}

}  // namespace jetsec
