#pragma once

// Exact computation of P_{n,d} and P_{n,d,l}: a jet polynomial in
// x0..x(n-1) lies in P_n exactly when its inversion expansion has no x0 power
// below -n, so the members among the span of candidate monomials are the
// kernel of the linear map sending a coefficient vector to those forbidden
// expansion coefficients.

#include "jetsec/exact_matrix.hpp"
#include "jetsec/inversion_table.hpp"
#include "jetsec/jet_calculus.hpp"
#include "jetsec/polynomial.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace jetsec {

/// Candidate monomial budget per query.
inline constexpr std::size_t kMaxCandidates = 200000;

class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (n, d) or (n, d, l) with 0 <= d <= n.
struct SubspaceQuery {
    unsigned long n = 0;
    unsigned long d = 0;
    std::optional<unsigned long> l;

    void validate() const {
        if (d > n) {
            throw std::invalid_argument("subspace query requires 0 <= d <= n (got n=" + std::to_string(n) +
                                        ", d=" + std::to_string(d) + ")");
        }
    }
};

struct SubspaceReport {
    SubspaceQuery query;
    std::size_t dimension = 0;
    std::vector<JetPolynomial> basis;
    std::size_t candidate_count = 0;
};

/// Monomials of total degree d in x0..x(n-1), optionally restricted to order of
/// derivatives l, in term order. No constraint on the degree in x(n-1) is
/// imposed here. Throws SizeLimitError beyond kMaxCandidates.
inline std::vector<JetMonomial> candidate_monomials(const SubspaceQuery& q) {
    q.validate();
    std::vector<JetMonomial> out;
    if (q.n == 0) {
        if (q.d == 0 && (!q.l || *q.l == 0)) {
            out.emplace_back();
        }
        return out;
    }
    std::vector<JetMonomial::Exponent> exps(q.n, 0);
    // assign exponents from the highest order down; remaining degree lands on x0
    std::function<void(std::size_t, unsigned long, unsigned long)> rec =
        [&](std::size_t r, unsigned long deg_left, unsigned long sd) {
            if (q.l && sd > *q.l) {
                return;
            }
            if (r == 0) {
                exps[0] = static_cast<JetMonomial::Exponent>(deg_left);
                if (!q.l || sd == *q.l) {
                    if (out.size() >= kMaxCandidates) {
                        throw SizeLimitError("query (n=" + std::to_string(q.n) + ", d=" + std::to_string(q.d) +
                                             ") exceeds " + std::to_string(kMaxCandidates) + " candidate monomials");
                    }
                    out.emplace_back(exps);
                }
                exps[0] = 0;
                return;
            }
            for (unsigned long e = 0; e <= deg_left; ++e) {
                exps[r] = static_cast<JetMonomial::Exponent>(e);
                rec(r - 1, deg_left - e, sd + e * r);
            }
            exps[r] = 0;
        };
    rec(q.n - 1, q.d, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Rows of the membership system together with the Laurent term each row tracks.
struct MembershipSystem {
    ExactMatrix matrix;
    std::vector<LaurentKey> row_keys;
};

/// One row per Laurent term with x0 power below -n occurring in any candidate's
/// inversion expansion; column j holds that term's coefficient in candidate j.
/// Rows are ordered by (x0 power, numerator).
inline MembershipSystem membership_system(const std::vector<JetMonomial>& candidates, unsigned long n,
                                          InversionExpander& expander) {
    const long floor = -static_cast<long>(n);
    std::map<LaurentKey, SparseRow> rows;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        for (const auto& [key, c] : expander.expand_monomial(candidates[j]).terms()) {
            if (key.x0_power >= floor) {
                break;
            }
            rows[key].emplace_back(j, c);
        }
    }
    MembershipSystem sys{ExactMatrix(0, candidates.size()), {}};
    sys.row_keys.reserve(rows.size());
    for (auto& [key, row] : rows) {
        sys.matrix.append_row(std::move(row));
        sys.row_keys.push_back(key);
    }
    return sys;
}

inline ExactMatrix membership_constraints(const std::vector<JetMonomial>& candidates, unsigned long n) {
    InversionExpander expander;
    return membership_system(candidates, n, expander).matrix;
}

/// Kernel of the full membership system by plain elimination, RREF in the
/// candidate order. Reference path; cost grows with every expansion involved.
inline std::vector<DenseVector> generic_kernel(const std::vector<JetMonomial>& candidates, unsigned long n,
                                               InversionExpander& expander) {
    return gaussian_kernel(membership_system(candidates, n, expander).matrix);
}

namespace detail {

// Block of candidates sharing one order of derivatives. Writing a candidate as
// x0^(d-j) * m with m x0-free of degree j, each forbidden Laurent term of its
// expansion is keyed by a numerator N of degree > n - d, and N has the same
// order of derivatives as m. The expansion of m starts with (-1)^j * m itself
// (the |p| = 1 term of every substituted variable) and every other term has
// larger degree. Ordered by degree, the columns of degree j > n - d therefore
// sit on a unit lower triangular square of rows. Those pivots are taken first,
// which leaves one elimination over the low-degree columns per block; blocks
// without low-degree columns have trivial kernel.
inline std::vector<DenseVector> block_kernel(const std::vector<PackedMonomial>& cols, unsigned long n,
                                             unsigned long d, InversionTable& table) {
    const std::size_t c = n - d;
    std::vector<std::size_t> low;
    std::vector<std::size_t> high;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        (cols[i].degree <= c ? low : high).push_back(i);
    }
    if (low.empty()) {
        return {};
    }
    if (high.empty()) {
        std::map<PackedMonomial, SparseRow, PackedLess> rows;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            for (const auto& t : table.expand(cols[i])) {
                if (t.numerator.degree > c) {
                    rows[t.numerator].emplace_back(i, Rational(t.coefficient));
                }
            }
        }
        // lowest degree first: those rows are sparse and raise the rank quickly
        std::vector<SparseRow> ordered;
        ordered.reserve(rows.size());
        for (auto& [key, row] : rows) {
            ordered.push_back(std::move(row));
        }
        return verified_kernel(ordered, cols.size());
    }

    std::unordered_map<PackedMonomial, std::size_t, PackedHash> high_index;
    std::vector<std::size_t> by_degree = high;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a].degree < cols[b].degree; });
    for (std::size_t i : high) {
        high_index.emplace(cols[i], i);
    }

    // For each low column, the unique solution of the triangular rows with that
    // column set to 1 and the other low columns 0, plus its leftover rows.
    std::vector<std::vector<std::pair<std::size_t, Integer>>> solutions;
    std::map<PackedMonomial, SparseRow, PackedLess> leftover;
    for (std::size_t li = 0; li < low.size(); ++li) {
        std::unordered_map<PackedMonomial, Integer, PackedHash> acc;
        for (const auto& t : table.expand(cols[low[li]])) {
            if (t.numerator.degree > c) {
                acc[t.numerator] += t.coefficient;
            }
        }
        std::vector<std::pair<std::size_t, Integer>> sol{{low[li], Integer(1)}};
        for (std::size_t h : by_degree) {
            const PackedMonomial& m = cols[h];
            auto it = acc.find(m);
            if (it == acc.end() || it->second == 0) {
                continue;
            }
            const auto& ex = table.expand(m);
            if (ex.empty() || !(ex.front().numerator == m) ||
                ex.front().coefficient != ((m.degree % 2 == 0) ? 1 : -1) ||
                (ex.size() > 1 && ex[1].numerator.degree <= m.degree)) {
                throw std::logic_error("inversion expansion lacks its unit leading term");
            }
            Integer x = -it->second * ex.front().coefficient;
            for (const auto& t : ex) {
                auto [a, inserted] = acc.try_emplace(t.numerator);
                mpz_addmul(a->second.get_mpz_t(), x.get_mpz_t(), t.coefficient.get_mpz_t());
            }
            sol.emplace_back(h, std::move(x));
        }
        for (const auto& [key, v] : acc) {
            if (v == 0) {
                continue;
            }
            if (key.degree <= d) {
                if (!high_index.count(key)) {
                    throw std::logic_error("triangular row outside the candidate block");
                }
                throw std::logic_error("triangular elimination left a pivot row nonzero");
            }
            leftover[key].emplace_back(li, Rational(v));
        }
        solutions.push_back(std::move(sol));
    }
    std::vector<SparseRow> ordered;
    for (auto& [key, row] : leftover) {
        ordered.push_back(std::move(row));
    }
    std::vector<DenseVector> vectors;
    for (const auto& a : verified_kernel(ordered, low.size())) {
        DenseVector v(cols.size(), Rational(0));
        for (std::size_t li = 0; li < low.size(); ++li) {
            if (a[li] == 0) {
                continue;
            }
            for (const auto& [col, x] : solutions[li]) {
                v[col] += a[li] * Rational(x);
            }
        }
        vectors.push_back(std::move(v));
    }
    return canonical_basis(vectors, cols.size());
}

}  // namespace detail

/// Dimension and canonical basis of P_{n,d} (or P_{n,d,l}). Basis vectors are
/// in reduced row echelon form with respect to the candidate order.
inline SubspaceReport solve_subspace(const SubspaceQuery& q, InversionExpander& expander) {
    q.validate();
    SubspaceReport report{q, 0, {}, 0};
    const auto candidates = candidate_monomials(q);
    report.candidate_count = candidates.size();
    if (candidates.empty()) {
        return report;
    }
    auto emit = [&](std::size_t offset, const std::vector<DenseVector>& kernel) {
        for (const auto& v : kernel) {
            JetPolynomial p;
            for (std::size_t j = 0; j < v.size(); ++j) {
                p.add_term(candidates[offset + j], v[j]);
            }
            report.basis.push_back(std::move(p));
        }
    };
    const bool packable = q.n <= detail::kPackedOrders && q.d * (q.n == 0 ? 0 : q.n - 1) <= 0xff;
    if (!packable) {
        emit(0, generic_kernel(candidates, q.n, expander));
    } else {
        // candidates share degree d, so term order groups them by order of derivatives
        detail::InversionTable table;
        std::size_t start = 0;
        while (start < candidates.size()) {
            std::size_t stop = start;
            std::vector<detail::PackedMonomial> cols;
            while (stop < candidates.size() &&
                   candidates[stop].order_of_derivatives() == candidates[start].order_of_derivatives()) {
                cols.push_back(*detail::PackedMonomial::from(candidates[stop].without_x0()));
                ++stop;
            }
            emit(start, detail::block_kernel(cols, q.n, q.d, table));
            start = stop;
        }
    }
    report.dimension = report.basis.size();
    return report;
}

inline SubspaceReport solve_subspace(const SubspaceQuery& q) {
    InversionExpander expander;
    return solve_subspace(q, expander);
}

/// dim P_{n,d} as the sum of dim P_{n,d,l} over every l. The membership system
/// never couples different orders of derivatives, so the sum is exact; each
/// level is its own query under the candidate budget, which lets this reach
/// (n, d) whose full candidate set is refused.
inline std::size_t graded_dimension(unsigned long n, unsigned long d, InversionExpander& expander) {
    SubspaceQuery{n, d, {}}.validate();
    std::size_t total = 0;
    const unsigned long top = d * (n == 0 ? 0 : n - 1);
    for (unsigned long l = 0; l <= top; ++l) {
        total += solve_subspace(SubspaceQuery{n, d, l}, expander).dimension;
    }
    return total;
}

/// Coefficient vectors of polys over the union of their monomials (term order).
inline std::vector<DenseVector> coefficient_vectors(const std::vector<JetPolynomial>& polys,
                                                    std::vector<JetMonomial>* support = nullptr) {
    std::map<JetMonomial, std::size_t> index;
    for (const auto& p : polys) {
        for (const auto& [m, c] : p.terms()) {
            index.emplace(m, 0);
        }
    }
    std::size_t i = 0;
    for (auto& [m, idx] : index) {
        idx = i++;
    }
    std::vector<DenseVector> out;
    for (const auto& p : polys) {
        DenseVector v(index.size(), Rational(0));
        for (const auto& [m, c] : p.terms()) {
            v[index.at(m)] = c;
        }
        out.push_back(std::move(v));
    }
    if (support) {
        support->clear();
        for (const auto& [m, idx] : index) {
            support->push_back(m);
        }
    }
    return out;
}

/// Exact rank of a family of jet polynomials.
inline std::size_t polynomial_rank(const std::vector<JetPolynomial>& polys) {
    std::vector<JetMonomial> support;
    auto vecs = coefficient_vectors(polys, &support);
    return rank(vecs, support.size());
}

}  // namespace jetsec
