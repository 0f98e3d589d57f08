#pragma once

// Exact rational matrices and fraction-preserving Gaussian elimination.

#include "jetsec/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jetsec {

/// Sparse row: (column, value) pairs, columns strictly increasing, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;
using DenseVector = std::vector<Rational>;

/// rows x cols matrix of rationals. Storage is row-sparse; missing entries are 0.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    explicit ExactMatrix(const std::vector<DenseVector>& dense) {
        cols_ = dense.empty() ? 0 : dense.front().size();
        for (const auto& r : dense) {
            if (r.size() != cols_) {
                throw std::invalid_argument("ExactMatrix: ragged rows");
            }
            SparseRow s;
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (r[c] != 0) {
                    s.emplace_back(c, r[c]);
                }
            }
            rows_.push_back(std::move(s));
        }
    }

    [[nodiscard]] std::size_t rows() const { return rows_.size(); }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const SparseRow& row(std::size_t r) const { return rows_.at(r); }

    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const {
        check(r, c);
        for (const auto& [col, v] : rows_[r]) {
            if (col == c) {
                return v;
            }
        }
        return 0;
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        check(r, c);
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (v == 0) {
                row.erase(it);
            } else {
                it->second = v;
            }
        } else if (v != 0) {
            row.emplace(it, c, v);
        }
    }

    /// Appends a row given as sparse entries; columns must be sorted and < cols.
    void append_row(SparseRow r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].first >= cols_ || (i > 0 && r[i].first <= r[i - 1].first) || r[i].second == 0) {
                throw std::invalid_argument("ExactMatrix::append_row: malformed sparse row");
            }
        }
        rows_.push_back(std::move(r));
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_.size() || c >= cols_) {
            throw std::out_of_range("ExactMatrix index out of range");
        }
    }

    std::size_t cols_ = 0;
    std::vector<SparseRow> rows_;
};

/// Incremental row echelon form over a fixed number of columns.
///
/// Rows are fed one at a time; each is reduced against the stored pivots and
/// kept if it raises the rank. The pivot of a stored row is its first nonzero
/// column, normalized to 1. reduced() returns the reduced row echelon form,
/// which is unique for the row space and therefore independent of row order.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t cols) : cols_(cols) {}

    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
    [[nodiscard]] bool full() const { return pivots_.size() == cols_; }

    /// Returns true when the row was independent of the rows seen so far.
    bool add_row(const SparseRow& row) {
        if (scratch_.size() != cols_) {
            scratch_.assign(cols_, Rational(0));
        }
        std::size_t lo = cols_;
        for (const auto& [c, v] : row) {
            if (c >= cols_) {
                throw std::out_of_range("RowEchelon: column out of range");
            }
            if (v != 0) {
                scratch_[c] += v;
                lo = std::min(lo, c);
            }
        }
        std::size_t lead = cols_;
        Rational factor;
        for (std::size_t c = lo; c < cols_; ++c) {
            if (scratch_[c] == 0) {
                continue;
            }
            auto piv = pivots_.find(c);
            if (piv == pivots_.end()) {
                if (lead == cols_) {
                    lead = c;
                }
                continue;
            }
            if (lead != cols_) {
                continue;
            }
            factor = scratch_[c];
            for (const auto& [pc, pv] : piv->second) {
                scratch_[pc] -= factor * pv;
            }
        }
        if (lead == cols_) {
            for (std::size_t c = lo; c < cols_; ++c) {
                scratch_[c] = 0;
            }
            return false;
        }
        // entries after the lead are left unreduced against later pivots
        const Rational inv = 1 / scratch_[lead];
        SparseRow stored;
        for (std::size_t c = lead; c < cols_; ++c) {
            if (scratch_[c] != 0) {
                stored.emplace_back(c, scratch_[c] * inv);
                scratch_[c] = 0;
            }
        }
        for (std::size_t c = lo; c < lead; ++c) {
            scratch_[c] = 0;
        }
        pivots_.emplace(lead, std::move(stored));
        return true;
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    [[nodiscard]] std::vector<SparseRow> reduced() const {
        std::map<std::size_t, SparseRow> done;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            std::map<std::size_t, Rational> work(it->second.begin(), it->second.end());
            for (auto w = std::next(work.begin()); w != work.end();) {
                auto piv = done.find(w->first);
                if (piv == done.end()) {
                    ++w;
                    continue;
                }
                const Rational factor = w->second;
                const std::size_t col = w->first;
                for (const auto& [c, v] : piv->second) {
                    auto [e, inserted] = work.try_emplace(c);
                    e->second -= factor * v;
                    if (e->second == 0) {
                        work.erase(e);
                    }
                }
                w = work.upper_bound(col);
            }
            done.emplace(it->first, SparseRow(work.begin(), work.end()));
        }
        std::vector<SparseRow> out;
        out.reserve(done.size());
        for (auto& [c, r] : done) {
            out.push_back(std::move(r));
        }
        return out;
    }

    [[nodiscard]] std::vector<std::size_t> pivot_columns() const {
        std::vector<std::size_t> out;
        for (const auto& [c, r] : pivots_) {
            out.push_back(c);
        }
        return out;
    }

    /// Null space basis of the stored rows: one vector per free column f, with
    /// entry 1 at f, 0 at the other free columns, ascending in f.
    [[nodiscard]] std::vector<DenseVector> kernel() const {
        const auto rref = reduced();
        std::vector<bool> is_pivot(cols_, false);
        for (const auto& r : rref) {
            is_pivot[r.front().first] = true;
        }
        std::vector<DenseVector> out;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) {
                continue;
            }
            DenseVector v(cols_, Rational(0));
            v[f] = 1;
            for (const auto& r : rref) {
                for (const auto& [c, val] : r) {
                    if (c == f) {
                        v[r.front().first] = -val;
                        break;
                    }
                    if (c > f) {
                        break;
                    }
                }
            }
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    std::size_t cols_;
    std::map<std::size_t, SparseRow> pivots_;
    DenseVector scratch_;
};

inline SparseRow to_sparse(const DenseVector& v) {
    SparseRow s;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] != 0) {
            s.emplace_back(c, v[c]);
        }
    }
    return s;
}

inline DenseVector to_dense(const SparseRow& r, std::size_t cols) {
    DenseVector v(cols, Rational(0));
    for (const auto& [c, x] : r) {
        v.at(c) = x;
    }
    return v;
}

inline std::size_t rank(const ExactMatrix& m) {
    RowEchelon e(m.cols());
    for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) {
        e.add_row(m.row(r));
    }
    return e.rank();
}

inline std::size_t rank(const std::vector<DenseVector>& vectors, std::size_t cols) {
    RowEchelon e(cols);
    for (const auto& v : vectors) {
        e.add_row(to_sparse(v));
    }
    return e.rank();
}

/// Spanning vectors brought to reduced row echelon form: each has leading
/// coefficient 1 and is zero in the leading columns of the others.
inline std::vector<DenseVector> canonical_basis(const std::vector<DenseVector>& vectors, std::size_t cols) {
    RowEchelon e(cols);
    for (const auto& v : vectors) {
        e.add_row(to_sparse(v));
    }
    std::vector<DenseVector> out;
    for (const auto& r : e.reduced()) {
        out.push_back(to_dense(r, cols));
    }
    return out;
}

/// Null space of the given rows, RREF. Rows are fed in order until the rank
/// stops growing for a while; the tentative kernel is then checked against
/// every row with integer arithmetic and any row it violates is fed in. The
/// result is exact: it stops only once the kernel annihilates all rows.
inline std::vector<DenseVector> verified_kernel(const std::vector<SparseRow>& rows, std::size_t cols) {
    RowEchelon e(cols);
    const std::size_t patience = 16 + cols / 2;
    std::vector<bool> used(rows.size(), false);
    std::size_t idle = 0;
    for (std::size_t r = 0; r < rows.size() && !e.full() && idle < patience; ++r) {
        used[r] = true;
        idle = e.add_row(rows[r]) ? 0 : idle + 1;
    }
    while (true) {
        const auto kernel = e.kernel();
        if (kernel.empty()) {
            return {};
        }
        std::vector<std::vector<Integer>> scaled;
        for (const auto& v : kernel) {
            Integer l = 1;
            for (const auto& x : v) {
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
            }
            std::vector<Integer> w(cols);
            for (std::size_t c = 0; c < cols; ++c) {
                w[c] = v[c].get_num() * (l / v[c].get_den());
            }
            scaled.push_back(std::move(w));
        }
        bool grew = false;
        Integer acc;
        Integer den;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) {
                continue;
            }
            den = 1;
            for (const auto& [c, x] : rows[r]) {
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
            }
            for (const auto& w : scaled) {
                acc = 0;
                for (const auto& [c, x] : rows[r]) {
                    if (den == 1) {
                        mpz_addmul(acc.get_mpz_t(), x.get_num_mpz_t(), w[c].get_mpz_t());
                    } else {
                        acc += x.get_num() * (den / x.get_den()) * w[c];
                    }
                }
                if (acc != 0) {
                    used[r] = true;
                    grew = e.add_row(rows[r]) || grew;
                    break;
                }
            }
        }
        if (!grew) {
            return canonical_basis(kernel, cols);
        }
    }
}

/// Exact null space basis of m, normalized to reduced row echelon form.
inline std::vector<DenseVector> gaussian_kernel(const ExactMatrix& m) {
    RowEchelon e(m.cols());
    for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) {
        e.add_row(m.row(r));
    }
    return canonical_basis(e.kernel(), m.cols());
}

}  // namespace jetsec
