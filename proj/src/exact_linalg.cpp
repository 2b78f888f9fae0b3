#include "quatlat/exact_linalg.hpp"

#include <algorithm>

#include "quatlat/errors.hpp"

namespace quatlat {

Int det_int(IntMat a) {
    // Bareiss fraction-free elimination
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) { std::swap(a[piv], a[col]); sign = -sign; }
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c)
                a[r][c] = (a[col][col] * a[r][c] - a[r][col] * a[col][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[col][col];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Rat det_rat(RatMat a) {
    const int n = static_cast<int>(a.size());
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        Rat d = a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / d;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

IntVec smith_normal_form(IntMat a) {
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    IntVec divisors;
    int top = 0;
    while (top < m && top < n) {
        // locate a nonzero entry of minimal absolute value in the block
        int bi = -1, bj = -1;
        Int best = 0;
        for (int i = top; i < m; ++i)
            for (int j = top; j < n; ++j)
                if (a[i][j] != 0 && (bi < 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    bi = i; bj = j;
                }
        if (bi < 0) break;
        std::swap(a[top], a[bi]);
        for (int i = top; i < m; ++i) std::swap(a[i][top], a[i][bj]);

        bool clean = true;
        for (int i = top + 1; i < m; ++i) {
            Int q = a[i][top] / a[top][top];
            if (q != 0)
                for (int j = top; j < n; ++j) a[i][j] -= q * a[top][j];
            if (a[i][top] != 0) clean = false;
        }
        for (int j = top + 1; j < n; ++j) {
            Int q = a[top][j] / a[top][top];
            if (q != 0)
                for (int i = top; i < m; ++i) a[i][j] -= q * a[i][top];
            if (a[top][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller pivot appeared, redo this block
        // divisibility fixup: pivot must divide every remaining entry
        bool fixed = false;
        for (int i = top + 1; i < m && !fixed; ++i)
            for (int j = top + 1; j < n && !fixed; ++j)
                if (a[i][j] % a[top][top] != 0) {
                    for (int c = top; c < n; ++c) a[top][c] += a[i][c];
                    fixed = true;
                }
        if (fixed) continue;
        divisors.push_back(abs(a[top][top]));
        ++top;
    }
    divisors.resize(std::min(m, n), 0);
    return divisors;
}

IntMat hnf_rows(IntMat a) {
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        // gcd-reduce column below `row` by row operations
        while (true) {
            int piv = -1;
            Int best = 0;
            for (int i = row; i < m; ++i)
                if (a[i][col] != 0 && (piv < 0 || abs(a[i][col]) < best)) {
                    best = abs(a[i][col]);
                    piv = i;
                }
            if (piv < 0) break;
            std::swap(a[row], a[piv]);
            bool done = true;
            for (int i = row + 1; i < m; ++i) {
                if (a[i][col] == 0) continue;
                Int q = a[i][col] / a[row][col];
                for (int j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (row < m && a[row][col] != 0) {
            if (a[row][col] < 0)
                for (int j = 0; j < n; ++j) a[row][j] = -a[row][j];
            // reduce entries above the pivot into [0, pivot)
            for (int i = 0; i < row; ++i) {
                Int q = a[i][col] / a[row][col];
                if (a[i][col] - q * a[row][col] < 0) q -= 1;
                if (q != 0)
                    for (int j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
            }
            ++row;
        }
    }
    a.resize(row);
    return a;
}

RatMat to_rat(const IntMat& a) {
    RatMat r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i].assign(a[i].begin(), a[i].end());
    return r;
}

RatMat rat_inverse(RatMat a) {
    const int n = static_cast<int>(a.size());
    RatMat inv(n, RatVec(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw StructuralError("rat_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RatVec solve_left(const RatMat& basis, const RatVec& v) {
    RatMat inv = rat_inverse(basis);
    const int n = static_cast<int>(basis.size());
    RatVec c(n, 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c[j] += v[k] * inv[k][j];
    return c;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b[0].size());
    const int inner = static_cast<int>(b.size());
    RatMat r(m, RatVec(n, 0));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

bool solve_mod_pk(const IntMat& a, const IntVec& b, int64_t p, int k, IntVec& solution) {
    // U a V = D with D the Smith form; track U, V through the reduction.
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    IntMat d = a;
    IntMat u(m, IntVec(m, 0)), v(n, IntVec(n, 0));
    for (int i = 0; i < m; ++i) u[i][i] = 1;
    for (int i = 0; i < n; ++i) v[i][i] = 1;

    auto row_op = [&](int dst, int src, const Int& q) {
        for (int j = 0; j < n; ++j) d[dst][j] -= q * d[src][j];
        for (int j = 0; j < m; ++j) u[dst][j] -= q * u[src][j];
    };
    auto col_op = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < m; ++i) d[i][dst] -= q * d[i][src];
        for (int i = 0; i < n; ++i) v[i][dst] -= q * v[i][src];
    };

    int top = 0;
    while (top < m && top < n) {
        int bi = -1, bj = -1;
        Int best = 0;
        for (int i = top; i < m; ++i)
            for (int j = top; j < n; ++j)
                if (d[i][j] != 0 && (bi < 0 || abs(d[i][j]) < best)) {
                    best = abs(d[i][j]);
                    bi = i; bj = j;
                }
        if (bi < 0) break;
        std::swap(d[top], d[bi]);
        std::swap(u[top], u[bi]);
        for (int i = 0; i < m; ++i) std::swap(d[i][top], d[i][bj]);
        for (int i = 0; i < n; ++i) std::swap(v[i][top], v[i][bj]);

        bool clean = true;
        for (int i = top + 1; i < m; ++i) {
            Int q = d[i][top] / d[top][top];
            if (q != 0) row_op(i, top, q);
            if (d[i][top] != 0) clean = false;
        }
        for (int j = top + 1; j < n; ++j) {
            Int q = d[top][j] / d[top][top];
            if (q != 0) col_op(j, top, q);
            if (d[top][j] != 0) clean = false;
        }
        if (clean) ++top;
    }

    // solve D y = U b mod p^k, then x = V y
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    IntVec ub(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ub[i] += u[i][j] * b[j];
    IntVec y(n, 0);
    for (int i = 0; i < m; ++i) {
        Int rhs = ub[i] % pk;
        if (rhs < 0) rhs += pk;
        if (i >= top) {
            if (rhs != 0) return false;  // zero row of D, inconsistent system
            continue;
        }
        // d_i y_i = rhs mod p^k: strip the p-part of d_i, invert the unit part
        Int g = 1, dd = d[i][i];
        while (dd % p == 0) { dd /= p; g *= p; }
        if (g >= pk) {
            if (rhs != 0) return false;  // d_i vanishes mod p^k
            continue;
        }
        if (rhs % g != 0) return false;
        Int mod2 = pk / g;
        Int r2 = (rhs / g) % mod2;
        Int a0 = dd % mod2, b0 = mod2, x0 = 1, x1 = 0;
        if (a0 < 0) a0 += mod2;
        while (b0 != 0) {
            Int q = a0 / b0;
            a0 -= q * b0; std::swap(a0, b0);
            x0 -= q * x1; std::swap(x0, x1);
        }
        Int x = x0 % mod2;
        if (x < 0) x += mod2;
        y[i] = (r2 * x) % mod2;
    }
    solution.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        Int s = 0;
        for (int j = 0; j < n; ++j) s += v[i][j] * y[j];
        s %= pk;
        if (s < 0) s += pk;
        solution[i] = s;
    }
    return true;
}

} // namespace quatlat
