#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "quatlat/fq.hpp"

namespace quatlat {

// Dense matrix over a small finite field.  Rows are the primary unit: a
// matrix doubles as a list of vectors spanning a subspace.
class FqMat {
public:
    FqMat() = default;
    FqMat(const Fq& f, int rows, int cols)
        : f_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static FqMat identity(const Fq& f, int n) {
        FqMat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }
    static FqMat from_rows(const Fq& f, const std::vector<std::vector<Fq::elem>>& rows) {
        FqMat m(f, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows_; ++i)
            for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        return m;
    }

    const Fq& field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Fq::elem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Fq::elem at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<Fq::elem> row(int i) const {
        return std::vector<Fq::elem>(a_.begin() + static_cast<size_t>(i) * cols_,
                                     a_.begin() + static_cast<size_t>(i + 1) * cols_);
    }
    void append_row(const std::vector<Fq::elem>& r) {
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    FqMat mul(const FqMat& o) const {
        FqMat r(f_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                Fq::elem aik = at(i, k);
                if (!aik) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = f_.add(r.at(i, j), f_.mul(aik, o.at(k, j)));
            }
        return r;
    }

    std::vector<Fq::elem> apply(const std::vector<Fq::elem>& v) const {
        // matrix * column vector
        std::vector<Fq::elem> r(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            Fq::elem s = 0;
            for (int j = 0; j < cols_; ++j) s = f_.add(s, f_.mul(at(i, j), v[j]));
            r[i] = s;
        }
        return r;
    }

    // In-place reduced row echelon form; returns the rank.  Zero rows are
    // dropped, so the result is the canonical generator matrix of the row
    // space.
    int rref() {
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int piv = -1;
            for (int i = rank; i < rows_; ++i)
                if (at(i, col)) { piv = i; break; }
            if (piv < 0) continue;
            swap_rows(piv, rank);
            Fq::elem d = f_.inv(at(rank, col));
            for (int j = 0; j < cols_; ++j) at(rank, j) = f_.mul(at(rank, j), d);
            for (int i = 0; i < rows_; ++i) {
                if (i == rank || !at(i, col)) continue;
                Fq::elem c = at(i, col);
                for (int j = 0; j < cols_; ++j)
                    at(i, j) = f_.sub(at(i, j), f_.mul(c, at(rank, j)));
            }
            ++rank;
        }
        a_.resize(static_cast<size_t>(rank) * cols_);
        rows_ = rank;
        return rank;
    }

    int rank() const {
        FqMat c = *this;
        return c.rref();
    }

    // Basis of the right kernel {v : A v = 0}, one vector per row.
    FqMat kernel() const {
        FqMat r = *this;
        r.rref();
        std::vector<int> pivot_col(r.rows_);
        std::vector<bool> is_pivot(cols_, false);
        for (int i = 0; i < r.rows_; ++i) {
            int j = 0;
            while (r.at(i, j) == 0) ++j;
            pivot_col[i] = j;
            is_pivot[j] = true;
        }
        FqMat k(f_, 0, cols_);
        for (int j = 0; j < cols_; ++j) {
            if (is_pivot[j]) continue;
            std::vector<Fq::elem> v(cols_, 0);
            v[j] = f_.one();
            for (int i = 0; i < r.rows_; ++i) v[pivot_col[i]] = f_.neg(r.at(i, j));
            k.append_row(v);
        }
        return k;
    }

    bool operator==(const FqMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator<(const FqMat& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        return a_ < o.a_;
    }

    const std::vector<Fq::elem>& data() const { return a_; }

private:
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    Fq f_;
    int rows_ = 0, cols_ = 0;
    std::vector<Fq::elem> a_;
};

// Row space membership: is v in the span of the rows of the RREF matrix m?
inline bool in_row_space(const FqMat& m, std::vector<Fq::elem> v) {
    const Fq& f = m.field();
    for (int i = 0; i < m.rows(); ++i) {
        int j = 0;
        while (j < m.cols() && m.at(i, j) == 0) ++j;
        if (j < m.cols() && v[j]) {
            Fq::elem c = v[j];
            for (int k = 0; k < m.cols(); ++k) v[k] = f.sub(v[k], f.mul(c, m.at(i, k)));
        }
    }
    return std::all_of(v.begin(), v.end(), [](Fq::elem x) { return x == 0; });
}

inline bool subspace_contains(const FqMat& big_rref, const FqMat& small) {
    for (int i = 0; i < small.rows(); ++i)
        if (!in_row_space(big_rref, small.row(i))) return false;
    return true;
}

} // namespace quatlat
