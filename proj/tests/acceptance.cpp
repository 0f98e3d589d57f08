// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli.hpp"
#include "oracles/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace jetsec;

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            first_failure = what;
        }
        ok = ok && cond;
    }
};

JetPolynomial random_member(std::mt19937& rng, const SubspaceReport& rep) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    JetPolynomial p;
    while (p.is_zero()) {
        for (const auto& b : rep.basis) {
            p += b * make_rational(num(rng), den(rng));
        }
    }
    return p;
}

void faa_di_bruno(Check& c) {
    for (unsigned k = 1; k <= 10; ++k) {
        c.require(inverse_derivative_expansion(k) == oracle::derivative_of_inverse(k), "k=" + std::to_string(k));
    }
}

void product(Check& c) {
    for (unsigned k1 = 1; k1 <= 8; ++k1) {
        for (unsigned k2 = 1; k2 <= k1; ++k2) {
            const auto expected = oracle::derivative_of_inverse(k1) * oracle::derivative_of_inverse(k2);
            c.require(product_expansion(k1, k2) == expected,
                      "k1=" + std::to_string(k1) + " k2=" + std::to_string(k2));
            // every C coefficient in range against the pairwise oracle
            for_each_composition(k1, k1 + k2, [&](const Composition& mu) {
                c.require(c_coefficient(mu, k1, k2) == oracle::c_coefficient(mu.parts, k1, k2),
                          "C at mu=" + to_string(mu));
            });
        }
    }
}

void theorem(Check& c) {
    for (unsigned long n = 2; n <= 12; ++n) {
        const auto rep = verify_theorem_p2(n);
        c.require(rep.pass(), "n=" + std::to_string(n));
        c.require(Integer(theorem_basis_p2(n).size()) == binomial(n, 2), "count at n=" + std::to_string(n));
    }
}

void cis(Check& c) {
    for (unsigned long n = 4; n <= 14; ++n) {
        const auto rep = verify_prop_cis(n, n <= 10);
        c.require(rep.pass(), "n=" + std::to_string(n));
        c.require(!rep.instances.empty(), "no instances at n=" + std::to_string(n));
    }
}

void corollary(Check& c) {
    for (unsigned long n = 4; n <= 12; ++n) {
        for (unsigned long k2 = 1; k2 <= n - 3; ++k2) {
            const auto rep = verify_corollary(n, k2);
            const std::string at = "n=" + std::to_string(n) + " k2=" + std::to_string(k2);
            c.require(rep.pass(), at);
            c.require(!rep.witnesses.empty(), "no witness at " + at);
            for (const auto& w : rep.witnesses) {
                c.require(w.left != w.right, "witness does not differ at " + at);
            }
        }
    }
}

void structural(Check& c) {
    std::mt19937 rng(20240601);
    InversionExpander ex;
    std::map<std::pair<unsigned long, unsigned long>, SubspaceReport> solved;
    for (unsigned long n = 0; n <= 10; ++n) {
        for (unsigned long d = 0; d <= n; ++d) {
            solved.emplace(std::make_pair(n, d), solve_subspace({n, d, {}}, ex));
        }
    }
    auto check_pair = [&](const JetPolynomial& rho1, unsigned long n, unsigned long d, const std::string& at) {
        const auto r = partner(rho1, n, ex);
        if (!is_member(r)) {
            c.require(false, "no partner " + at);
            return;
        }
        const auto& rho2 = std::get<CompatibilityWitness>(r).rho2;
        const auto back = partner(rho2, n, ex);
        c.require(is_member(back) && std::get<CompatibilityWitness>(back).rho2 == rho1, "involution " + at);
        c.require(rho2.is_homogeneous() && rho2.degree() == n - d, "pairing " + at);
        c.require(rho2.order_of_derivatives() == rho1.order_of_derivatives(), "sd " + at);
    };
    for (const auto& [nd, rep] : solved) {
        const auto [n, d] = nd;
        const std::string at = "n=" + std::to_string(n) + " d=" + std::to_string(d);
        c.require(rep.dimension == solved.at({n, n - d}).dimension, "duality " + at);
        for (const auto& b : rep.basis) {
            check_pair(b, n, d, at);
        }
    }
    // 500 random members spread over the grid
    std::vector<std::pair<unsigned long, unsigned long>> grid;
    for (const auto& [nd, rep] : solved) {
        if (nd.first >= 1) {
            grid.push_back(nd);
        }
    }
    for (int i = 0; i < 500; ++i) {
        const auto [n, d] = grid[static_cast<std::size_t>(i) % grid.size()];
        const auto rho1 = random_member(rng, solved.at({n, d}));
        const std::string at = "random n=" + std::to_string(n) + " d=" + std::to_string(d);
        check_pair(rho1, n, d, at);
        // sd preservation componentwise
        const auto r = partner(rho1, n, ex);
        if (is_member(r)) {
            const auto& rho2 = std::get<CompatibilityWitness>(r).rho2;
            for (std::uint64_t l = 0; l <= d * n; ++l) {
                const auto part = sd_component(rho1, l);
                if (!part.is_zero()) {
                    const auto pr = partner(part, n, ex);
                    c.require(is_member(pr) && std::get<CompatibilityWitness>(pr).rho2 == sd_component(rho2, l),
                              "sd component " + at);
                }
            }
        }
        // D maps tested members of P_{n,d} into P_{n+1,d}
        if (d <= 2) {
            const auto drho = derive(rho1);
            c.require(drho.is_zero() || is_member(partner(drho, n + 1, ex)), "derive " + at);
        }
    }
    for (unsigned long n = 1; n <= 10; ++n) {
        for (unsigned long d = 0; d <= std::min<unsigned long>(n, 2); ++d) {
            for (const auto& b : solved.at({n, d}).basis) {
                const auto db = derive(b);
                c.require(db.is_zero() || is_member(partner(db, n + 1, ex)),
                          "derive basis n=" + std::to_string(n) + " d=" + std::to_string(d));
            }
        }
    }
}

// Past the candidate budget (d >= n-1 at n >= 11) the full query is refused,
// so the dimension is taken level by level.
std::size_t dimension(unsigned long n, unsigned long d, InversionExpander& ex) {
    try {
        return solve_subspace({n, d, {}}, ex).dimension;
    } catch (const SizeLimitError&) {
        return graded_dimension(n, d, ex);
    }
}

void known_dimensions(Check& c) {
    InversionExpander ex;
    for (unsigned long n = 0; n <= 12; ++n) {
        const std::string at = "n=" + std::to_string(n);
        c.require(dimension(n, 0, ex) == 1, "d=0 " + at);
        c.require(dimension(n, n, ex) == 1, "d=n " + at);
        if (n >= 1) {
            c.require(dimension(n, 1, ex) == n, "d=1 " + at);
            c.require(dimension(n, n - 1, ex) == n, "d=n-1 " + at);
        }
    }
}

void probe(Check& c) {
    for (unsigned long n = 6; n <= 9; ++n) {
        const auto rep = conjecture_probe(n, 3);
        c.require(rep.consistent(), "inconsistent grading at n=" + std::to_string(n));
        c.require(rep.grading.size() == 3 * (n - 1) + 1, "grading incomplete at n=" + std::to_string(n));
        std::printf("  probe n=%lu d=3: dim=%zu binom=%s equal=%s symmetry=%s support=%s\n", n,
                    rep.solver_dimension, rep.binomial_value.get_str().c_str(),
                    rep.matches_binomial() ? "yes" : "no", rep.symmetry ? "yes" : "no", rep.support ? "yes" : "no");
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void cli_contract(Check& c) {
    const std::string dir = JETSEC_GOLDEN_DIR;
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"member", "--poly", "x1^2", "--n", "3"}, "member_x1sq_n3.txt"},
        {{"identity", "--prop", "cis", "--n", "4..10"}, "identity_cis_n4-10.txt"},
        {{"solve", "--n", "4", "--d", "2", "--format", "json"}, "solve_n4_d2.json"},
    };
    for (const auto& [args, file] : cases) {
        std::ostringstream out;
        std::ostringstream err;
        const int status = cli::run(args, out, err);
        const auto expected = slurp(dir + "/" + file);
        c.require(!expected.empty() && status == 0 && out.str() == expected, "golden " + file);
    }
    std::mt19937 rng(77);
    std::uniform_int_distribution<unsigned> order(0, 12);
    std::uniform_int_distribution<unsigned> deg(0, 5);
    std::uniform_int_distribution<unsigned> terms(0, 7);
    std::uniform_int_distribution<long> num(-100000, 100000);
    std::uniform_int_distribution<long> den(1, 97);
    for (int i = 0; i < 1000; ++i) {
        JetPolynomial p;
        const unsigned t = terms(rng);
        for (unsigned j = 0; j < t; ++j) {
            JetMonomial m;
            const unsigned k = deg(rng);
            for (unsigned e = 0; e < k; ++e) {
                m = m * JetMonomial::variable(order(rng));
            }
            p.add_term(m, make_rational(Integer(num(rng)), Integer(den(rng))));
        }
        c.require(parse_poly(format_poly(p)) == p, "round trip " + format_poly(p));
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        double budget_s;
        std::function<void(Check&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, 1, faa_di_bruno},   {2, 5, product},           {3, 60, theorem},
        {4, 120, cis},          {5, 120, corollary},       {6, 60, structural},
        {7, 10, known_dimensions}, {8, 600, probe},        {9, 10, cli_contract},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(secs < cr.budget_s, "over time budget");
        std::printf("criterion %d: %s (%.2f s, budget %.0f s)%s%s\n", cr.id, c.ok ? "PASS" : "FAIL", secs,
                    cr.budget_s, c.ok ? "" : " - ", c.first_failure.c_str());
        std::fflush(stdout);
        failures += c.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
