#ifndef WGAB_QMATRIX_HPP
#define WGAB_QMATRIX_HPP

// Dense exact linear algebra over Rational: rref, rank, nullspace, solve.
// Row reduction is streamed so very tall constraint systems (many more rows
// than columns) cost O(rows * rank * cols) worst case. The reduced echelon
// form is unique, hence every derived basis is deterministic.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace wgab {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    std::vector<Rational> row(std::size_t r) const {
        return std::vector<Rational>(e_.begin() + static_cast<long>(r * cols_),
                                     e_.begin() + static_cast<long>((r + 1) * cols_));
    }
    std::vector<Rational> col(std::size_t c) const {
        std::vector<Rational> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
        return out;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        QMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
        std::vector<Rational> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
        return out;
    }

    bool is_zero() const {
        for (auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

// Streaming Gaussian eliminator. Feed rows in any order; the finalized
// reduced echelon rows are the (unique) RREF of the row space.
class RowReducer {
public:
    explicit RowReducer(std::size_t cols) : cols_(cols) {}

    // Reduces the row against current pivots; installs it as a new pivot row
    // if independent. Returns true when the row added rank.
    bool push_row(std::vector<Rational> row) {
        if (row.size() != cols_) throw std::invalid_argument("row reducer: width mismatch");
        std::size_t c = 0;
        while (c < cols_) {
            if (row[c].is_zero()) {
                ++c;
                continue;
            }
            auto it = pivots_.find(c);
            if (it == pivots_.end()) break;
            const std::vector<Rational>& p = it->second;
            Rational f = row[c];  // pivot rows are normalized to leading 1
            row[c] = Rational(0);
            for (std::size_t j = c + 1; j < cols_; ++j)
                if (!p[j].is_zero()) row[j] -= f * p[j];
            ++c;
        }
        if (c == cols_) return false;
        Rational lead = row[c];
        row[c] = Rational(1);
        for (std::size_t j = c + 1; j < cols_; ++j)
            if (!row[j].is_zero()) row[j] /= lead;
        pivots_.emplace(c, std::move(row));
        return true;
    }

    std::size_t rank() const { return pivots_.size(); }

    // Back-substitute so each pivot column is zero in every other row.
    // Rows come out sorted by pivot column.
    std::pair<std::vector<std::size_t>, std::vector<std::vector<Rational>>> finalize() {
        std::vector<std::size_t> cols;
        cols.reserve(pivots_.size());
        for (auto& [c, row] : pivots_) cols.push_back(c);
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const std::size_t pc = it->first;
            const std::vector<Rational>& prow = it->second;
            for (auto& [qc, qrow] : pivots_) {
                if (qc >= pc) break;
                if (qrow[pc].is_zero()) continue;
                Rational f = qrow[pc];
                qrow[pc] = Rational(0);
                for (std::size_t j = pc + 1; j < cols_; ++j)
                    if (!prow[j].is_zero()) qrow[j] -= f * prow[j];
            }
        }
        std::vector<std::vector<Rational>> rows;
        rows.reserve(pivots_.size());
        for (auto& [c, row] : pivots_) rows.push_back(std::move(row));
        pivots_.clear();
        return {std::move(cols), std::move(rows)};
    }

private:
    std::size_t cols_;
    std::map<std::size_t, std::vector<Rational>> pivots_;
};

struct RrefResult {
    QMatrix reduced;                  // same shape as input, zero rows at the bottom
    std::vector<std::size_t> pivots;  // pivot column per leading row
    std::size_t rank = 0;
};

inline RrefResult rref(const QMatrix& a) {
    RowReducer red(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) red.push_row(a.row(r));
    auto [pcols, prows] = red.finalize();
    RrefResult out;
    out.reduced = QMatrix(a.rows(), a.cols());
    for (std::size_t r = 0; r < prows.size(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.reduced.at(r, c) = prows[r][c];
    out.pivots = std::move(pcols);
    out.rank = out.pivots.size();
    return out;
}

inline std::size_t rank(const QMatrix& a) {
    RowReducer red(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) red.push_row(a.row(r));
    return red.rank();
}

// Basis of {v : Av = 0}; one vector per free column, taken in ascending
// column order, with a 1 in the free coordinate.
inline std::vector<std::vector<Rational>> nullspace_of_reduced(
    const std::vector<std::size_t>& pivot_cols,
    const std::vector<std::vector<Rational>>& pivot_rows, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols);
        v[f] = Rational(1);
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            v[pivot_cols[r]] = -pivot_rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
    RowReducer red(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) red.push_row(a.row(r));
    auto [pcols, prows] = red.finalize();
    return nullspace_of_reduced(pcols, prows, a.cols());
}

// One exact solution of Ax = b if the system is consistent.
inline std::optional<std::vector<Rational>> solve_linear(const QMatrix& a,
                                                         const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.cols();
    RowReducer red(n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::vector<Rational> row = a.row(r);
        row.push_back(b[r]);
        red.push_row(std::move(row));
    }
    auto [pcols, prows] = red.finalize();
    for (auto c : pcols)
        if (c == n) return std::nullopt;  // pivot in the augmented column
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < pcols.size(); ++r) x[pcols[r]] = prows[r][n];
    // exactness guard
    auto ax = a.apply(x);
    for (std::size_t r = 0; r < ax.size(); ++r)
        if (ax[r] != b[r]) throw std::logic_error("solve: residual nonzero");
    return x;
}

}  // namespace wgab

#endif
