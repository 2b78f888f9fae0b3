#include "quatlat/radical.hpp"

#include <algorithm>

#include "quatlat/errors.hpp"

namespace quatlat {

std::vector<Fq::elem> charpoly(const FqMat& m) {
    const Fq& f = m.field();
    int n = m.rows();
    FqMat h = m;
    // similarity reduction to upper Hessenberg form
    for (int col = 0; col < n - 2; ++col) {
        int piv = -1;
        for (int r = col + 1; r < n; ++r)
            if (h.at(r, col)) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != col + 1) {
            for (int c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(col + 1, c));
            for (int r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, col + 1));
        }
        Fq::elem d = f.inv(h.at(col + 1, col));
        for (int r = col + 2; r < n; ++r) {
            Fq::elem factor = f.mul(h.at(r, col), d);
            if (!factor) continue;
            for (int c = 0; c < n; ++c)
                h.at(r, c) = f.sub(h.at(r, c), f.mul(factor, h.at(col + 1, c)));
            for (int rr = 0; rr < n; ++rr)
                h.at(rr, col + 1) = f.add(h.at(rr, col + 1), f.mul(factor, h.at(rr, r)));
        }
    }
    // p_m(lambda) = (lambda - h_mm) p_{m-1} - sum_i h_im (prod subdiag) p_{i-1}
    std::vector<std::vector<Fq::elem>> p(n + 1);
    p[0] = {f.one()};
    for (int mdeg = 1; mdeg <= n; ++mdeg) {
        std::vector<Fq::elem> cur(mdeg + 1, 0);
        for (size_t t = 0; t < p[mdeg - 1].size(); ++t) {
            cur[t + 1] = f.add(cur[t + 1], p[mdeg - 1][t]);                       // lambda * p_{m-1}
            cur[t] = f.sub(cur[t], f.mul(h.at(mdeg - 1, mdeg - 1), p[mdeg - 1][t]));
        }
        Fq::elem subprod = f.one();
        for (int i = mdeg - 1; i >= 1; --i) {
            subprod = f.mul(subprod, h.at(i, i - 1));
            if (!subprod) break;
            Fq::elem coeff = f.mul(h.at(i - 1, mdeg - 1), subprod);
            if (!coeff) continue;
            for (size_t t = 0; t < p[i - 1].size(); ++t)
                cur[t] = f.sub(cur[t], f.mul(coeff, p[i - 1][t]));
        }
        p[mdeg] = std::move(cur);
    }
    // reorder: result[j] = coefficient of lambda^{n-j}
    std::vector<Fq::elem> out(n + 1, 0);
    for (int j = 0; j <= n; ++j) out[j] = p[n][n - j];
    return out;
}

ScalarRestriction restrict_scalars(const FqAlgebra& a) {
    const Fq& f = a.ring();
    if (f.degree() == 1)
        throw UsageError("restrict_scalars: algebra already over a prime field");
    Fq fp = Fq::prime_field(f.p());
    int n = a.dim(), d = 2, p = f.p();
    int nn = n * d;
    // F_p-basis (b_t e_i), index i*d + t, with b_0 = 1, b_1 the second basis
    // vector of F_q in its chosen presentation.
    std::vector<Fq::elem> fq_basis = {f.from_coords(1, 0), f.from_coords(0, 1)};
    std::vector<Fq::elem> sc(static_cast<size_t>(nn) * nn * nn, 0);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < d; ++s)
            for (int j = 0; j < n; ++j)
                for (int t = 0; t < d; ++t) {
                    Fq::elem coef = f.mul(fq_basis[s], fq_basis[t]);
                    for (int l = 0; l < n; ++l) {
                        Fq::elem c = a.sc(i, j, l);
                        if (!c) continue;
                        auto co = f.coords(f.mul(coef, c));
                        for (int u = 0; u < d; ++u) {
                            if (!co[u]) continue;
                            size_t idx = (static_cast<size_t>(i * d + s) * nn + (j * d + t)) * nn + (l * d + u);
                            sc[idx] = fp.add(sc[idx], static_cast<Fq::elem>(co[u]));
                        }
                    }
                }
    std::vector<Fq::elem> unit(nn, 0);
    for (int i = 0; i < n; ++i) {
        auto co = f.coords(a.unit()[i]);
        unit[i * d + 0] = static_cast<Fq::elem>(co[0]);
        unit[i * d + 1] = static_cast<Fq::elem>(co[1]);
    }
    FqAlgebra restricted(fp, nn, std::move(sc), std::move(unit), a.name() + "|F" + std::to_string(p));
    Fq fq_copy = a.ring();
    auto down = [n, d, fq_copy](const std::vector<Fq::elem>& v) {
        std::vector<Fq::elem> r(n * d, 0);
        for (int i = 0; i < n; ++i) {
            auto co = fq_copy.coords(v[i]);
            r[i * d] = static_cast<Fq::elem>(co[0]);
            r[i * d + 1] = static_cast<Fq::elem>(co[1]);
        }
        return r;
    };
    auto up = [n, d, fq_copy](const std::vector<Fq::elem>& v) {
        std::vector<Fq::elem> r(n, 0);
        for (int i = 0; i < n; ++i) r[i] = fq_copy.from_coords(v[i * d], v[i * d + 1]);
        return r;
    };
    return {std::move(restricted), down, up};
}

namespace {

// radical of a prime-field algebra by the coefficient chain
FqMat radical_prime_field(const FqAlgebra& a) {
    const Fq& f = a.ring();
    int n = a.dim(), p = f.p();
    FqMat cur = FqMat::identity(f, n);
    int64_t pk = 1;
    int level = 0;
    while (pk <= n && cur.rows() > 0) {
        int jidx = level == 0 ? 1 : static_cast<int>(pk);
        // rows: one condition per basis vector y of cur; columns: basis x of cur
        FqMat cond(f, cur.rows(), cur.rows());
        for (int yi = 0; yi < cur.rows(); ++yi) {
            auto y = cur.row(yi);
            for (int xi = 0; xi < cur.rows(); ++xi) {
                auto prod = a.mul(cur.row(xi), y);
                auto rows = a.left_mult_rows(prod);
                FqMat lm(f, n, n);
                for (int jj = 0; jj < n; ++jj)
                    for (int ii = 0; ii < n; ++ii) lm.at(ii, jj) = rows[jj][ii];
                cond.at(yi, xi) = charpoly(lm)[jidx];
            }
        }
        FqMat ker = cond.kernel();
        FqMat next(f, 0, n);
        for (int r = 0; r < ker.rows(); ++r) {
            std::vector<Fq::elem> v(n, 0);
            for (int t = 0; t < cur.rows(); ++t) {
                Fq::elem c = ker.at(r, t);
                if (!c) continue;
                for (int i = 0; i < n; ++i)
                    v[i] = f.add(v[i], f.mul(c, cur.at(t, i)));
            }
            next.append_row(v);
        }
        next.rref();
        cur = next;
        pk = level == 0 ? p : pk * p;
        ++level;
    }
    return cur;
}

bool subspace_nilpotent(const FqAlgebra& a, const FqMat& s) {
    // powers of the subspace must reach zero within dim steps
    FqMat power = s;
    for (int step = 0; step < a.dim() + 1; ++step) {
        if (power.rows() == 0) return true;
        FqMat next(a.ring(), 0, a.dim());
        for (int i = 0; i < power.rows(); ++i)
            for (int j = 0; j < s.rows(); ++j)
                next.append_row(a.mul(power.row(i), s.row(j)));
        next.rref();
        power = next;
    }
    return power.rows() == 0;
}

bool is_two_sided_ideal(const FqAlgebra& a, const FqMat& s) {
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            if (!in_row_space(s, a.mul(s.row(i), a.basis_vec(j)))) return false;
            if (!in_row_space(s, a.mul(a.basis_vec(j), s.row(i)))) return false;
        }
    return true;
}

// odometer over all coordinate vectors
template <class Fn>
void for_each_vector(int q, int dim, Fn&& fn) {
    std::vector<Fq::elem> v(dim, 0);
    while (true) {
        fn(v);
        int i = 0;
        while (i < dim && v[i] == q - 1) v[i++] = 0;
        if (i == dim) break;
        ++v[i];
    }
}

} // namespace

FqMat jacobson_radical(const FqAlgebra& a) {
    const Fq& f = a.ring();
    FqMat j(f, 0, a.dim());
    if (f.degree() == 1) {
        j = radical_prime_field(a);
    } else {
        ScalarRestriction res = restrict_scalars(a);
        FqMat jp = radical_prime_field(res.algebra);
        // regroup the F_p-basis as F_q-vectors; the radical is F_q-stable
        FqMat lifted(f, 0, a.dim());
        for (int r = 0; r < jp.rows(); ++r) lifted.append_row(res.up(jp.row(r)));
        lifted.rref();
        if (2 * lifted.rows() != jp.rows())
            throw InternalError(a.name() + ": radical is not F_q-stable");
        j = lifted;
    }
    if (!is_two_sided_ideal(a, j) || !subspace_nilpotent(a, j))
        throw InternalError(a.name() + ": radical chain returned a non-nilpotent or non-ideal subspace");
    return j;
}

FqMat jacobson_radical_reference(const FqAlgebra& a, uint64_t budget) {
    const Fq& f = a.ring();
    int n = a.dim();
    uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        size *= f.q();
        if (size > budget)
            throw ResourceError(a.name() + ": reference radical needs enumeration of " +
                                std::to_string(size) + " elements, budget " + std::to_string(budget));
    }
    std::vector<std::vector<Fq::elem>> all;
    for_each_vector(f.q(), n, [&](const std::vector<Fq::elem>& v) { all.push_back(v); });
    auto nilpotent = [&](std::vector<Fq::elem> y) {
        for (int step = 0; step < n + 1; ++step) {
            if (a.is_zero(y)) return true;
            y = a.mul(y, y);
        }
        // y^(2^(n+1)) != 0 implies not nilpotent for nilpotency degree <= dim
        return a.is_zero(y);
    };
    FqMat j(f, 0, n);
    for (const auto& x : all) {
        bool in = true;
        for (const auto& y : all)
            if (!nilpotent(a.mul(y, x))) { in = false; break; }
        if (in) j.append_row(x);
    }
    j.rref();
    return j;
}

QuotientData quotient_algebra(const FqAlgebra& a, const FqMat& ideal, const std::string& name) {
    const Fq& f = a.ring();
    int n = a.dim();
    std::vector<int> pivots;
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < ideal.rows(); ++i) {
        int jcol = 0;
        while (ideal.at(i, jcol) == 0) ++jcol;
        pivots.push_back(jcol);
        is_pivot[jcol] = true;
    }
    std::vector<int> rep_cols;  // complement coordinates
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) rep_cols.push_back(c);
    int m = static_cast<int>(rep_cols.size());

    FqMat ideal_copy = ideal;
    Fq f2 = f;
    auto project = [f2, ideal_copy, rep_cols, n](const std::vector<Fq::elem>& v0) {
        std::vector<Fq::elem> v = v0;
        // reduce modulo the ideal rows, then read complement coordinates
        for (int i = 0; i < ideal_copy.rows(); ++i) {
            int jcol = 0;
            while (ideal_copy.at(i, jcol) == 0) ++jcol;
            Fq::elem c = v[jcol];
            if (!c) continue;
            for (int k2 = 0; k2 < n; ++k2) v[k2] = f2.sub(v[k2], f2.mul(c, ideal_copy.at(i, k2)));
        }
        std::vector<Fq::elem> r(rep_cols.size());
        for (size_t t = 0; t < rep_cols.size(); ++t) r[t] = v[rep_cols[t]];
        return r;
    };
    auto lift = [rep_cols, n](const std::vector<Fq::elem>& q) {
        std::vector<Fq::elem> v(n, 0);
        for (size_t t = 0; t < rep_cols.size(); ++t) v[rep_cols[t]] = q[t];
        return v;
    };

    std::vector<Fq::elem> sc(static_cast<size_t>(m) * m * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto prod = project(a.mul(a.basis_vec(rep_cols[i]), a.basis_vec(rep_cols[j])));
            for (int l = 0; l < m; ++l) sc[(static_cast<size_t>(i) * m + j) * m + l] = prod[l];
        }
    std::vector<Fq::elem> unit = project(a.unit());
    FqAlgebra q(f, m, std::move(sc), std::move(unit), name);
    return {std::move(q), project, lift};
}

const char* to_string(SemisimpleType t) {
    switch (t) {
        case SemisimpleType::SplitPair: return "split-pair";
        case SemisimpleType::Field: return "field";
        case SemisimpleType::QuadraticField: return "quadratic-field";
        case SemisimpleType::FullMatrix: return "full-matrix";
    }
    return "?";
}

std::vector<std::vector<Fq::elem>> idempotents(const FqAlgebra& a, uint64_t budget) {
    const Fq& f = a.ring();
    uint64_t size = 1;
    for (int i = 0; i < a.dim(); ++i) {
        size *= f.q();
        if (size > budget)
            throw ResourceError(a.name() + ": idempotent enumeration needs " + std::to_string(size) +
                                " elements, budget " + std::to_string(budget));
    }
    std::vector<std::vector<Fq::elem>> out;
    for_each_vector(f.q(), a.dim(), [&](const std::vector<Fq::elem>& v) {
        if (a.mul(v, v) == v) out.push_back(v);
    });
    return out;
}

SemisimpleType semisimple_type(const FqAlgebra& a, int fr) {
    const Fq& f = a.ring();
    FqMat j = jacobson_radical(a);
    const FqAlgebra* s = &a;
    QuotientData qd{field_as_algebra(f, "tmp"), nullptr, nullptr};
    if (j.rows() > 0) {
        qd = quotient_algebra(a, j, a.name() + "/J");
        s = &qd.algebra;
    }
    int dim_fp = s->dim() * f.degree();
    bool comm = true;
    for (int i = 0; i < s->dim() && comm; ++i)
        for (int k = 0; k < s->dim() && comm; ++k)
            comm = s->commutes(s->basis_vec(i), s->basis_vec(k));
    size_t nidem = idempotents(*s).size();

    if (comm && dim_fp == fr && nidem == 2) return SemisimpleType::Field;
    if (comm && dim_fp == 2 * fr && nidem == 2) return SemisimpleType::QuadraticField;
    if (comm && dim_fp == 2 * fr && nidem == 4) return SemisimpleType::SplitPair;
    if (!comm && dim_fp == 4 * fr) return SemisimpleType::FullMatrix;
    throw StructuralError(a.name() + ": semisimple quotient is not of quaternion-order shape (dim " +
                          std::to_string(dim_fp) + " over F_p, residue degree " + std::to_string(fr) +
                          ", " + std::to_string(nidem) + " idempotents)");
}

} // namespace quatlat
