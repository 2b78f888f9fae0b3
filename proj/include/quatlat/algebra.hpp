#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatlat/errors.hpp"
#include "quatlat/fq.hpp"
#include "quatlat/fq_linalg.hpp"
#include "quatlat/zpk.hpp"

namespace quatlat {

// Finite associative algebra given by structure constants over a scalar ring
// (F_q or Z/p^k):  e_i e_j = sum_l c[i][j][l] e_l.
//
// Construction validates associativity on all basis triples and that the
// designated unit acts as a two-sided identity.
template <class Ring>
class StructureAlgebra {
public:
    using elem = typename Ring::elem;
    using vec = std::vector<elem>;

    StructureAlgebra(Ring ring, int dim, std::vector<elem> constants, vec unit,
                     std::string name, bool validate = true)
        : ring_(std::move(ring)), dim_(dim), c_(std::move(constants)),
          unit_(std::move(unit)), name_(std::move(name)) {
        if (static_cast<size_t>(dim_) * dim_ * dim_ != c_.size())
            throw StructuralError(name_ + ": structure constant count mismatch");
        if (static_cast<int>(unit_.size()) != dim_)
            throw StructuralError(name_ + ": unit coordinate length mismatch");
        if (validate) {
            check_associativity();
            check_unit();
        }
    }

    const Ring& ring() const { return ring_; }
    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const vec& unit() const { return unit_; }
    elem sc(int i, int j, int l) const {
        return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + l];
    }

    vec zero_vec() const { return vec(dim_, ring_.zero()); }
    vec basis_vec(int i) const {
        vec v = zero_vec();
        v[i] = ring_.one();
        return v;
    }

    vec add(const vec& a, const vec& b) const {
        vec r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = ring_.add(a[i], b[i]);
        return r;
    }
    vec sub(const vec& a, const vec& b) const {
        vec r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = ring_.sub(a[i], b[i]);
        return r;
    }
    vec scale(elem s, const vec& a) const {
        vec r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = ring_.mul(s, a[i]);
        return r;
    }
    vec mul(const vec& a, const vec& b) const {
        vec r = zero_vec();
        for (int i = 0; i < dim_; ++i) {
            if (a[i] == ring_.zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                if (b[j] == ring_.zero()) continue;
                elem s = ring_.mul(a[i], b[j]);
                for (int l = 0; l < dim_; ++l) {
                    elem cc = sc(i, j, l);
                    if (cc != ring_.zero()) r[l] = ring_.add(r[l], ring_.mul(s, cc));
                }
            }
        }
        return r;
    }

    bool is_zero(const vec& a) const {
        for (auto x : a)
            if (x != ring_.zero()) return false;
        return true;
    }

    vec pow(vec a, uint64_t e) const {
        vec r = unit_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // rows = images of the basis under left multiplication by x, i.e.
    // row j holds x * e_j, so (L_x)^T applied to coordinates.
    std::vector<vec> left_mult_rows(const vec& x) const {
        std::vector<vec> rows(dim_);
        for (int j = 0; j < dim_; ++j) rows[j] = mul(x, basis_vec(j));
        return rows;
    }
    std::vector<vec> right_mult_rows(const vec& x) const {
        std::vector<vec> rows(dim_);
        for (int j = 0; j < dim_; ++j) rows[j] = mul(basis_vec(j), x);
        return rows;
    }

    // Two-sided invertibility: both multiplication maps bijective.
    std::optional<vec> try_inverse(const vec& x) const;

    bool commutes(const vec& a, const vec& b) const {
        return mul(a, b) == mul(b, a);
    }

private:
    void check_associativity() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                vec ij = mul(basis_vec(i), basis_vec(j));
                for (int l = 0; l < dim_; ++l) {
                    vec lhs = mul(ij, basis_vec(l));
                    vec rhs = mul(basis_vec(i), mul(basis_vec(j), basis_vec(l)));
                    if (lhs != rhs)
                        throw StructuralError(name_ + ": structure constants not associative at (" +
                                              std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(l) + ")");
                }
            }
    }
    void check_unit() const {
        for (int i = 0; i < dim_; ++i) {
            vec e = basis_vec(i);
            if (mul(unit_, e) != e || mul(e, unit_) != e)
                throw StructuralError(name_ + ": unit is not a two-sided identity");
        }
    }

    Ring ring_;
    int dim_;
    std::vector<elem> c_;
    vec unit_;
    std::string name_;
};

using FqAlgebra = StructureAlgebra<Fq>;
using ZpkAlgebra = StructureAlgebra<Zpk>;

// An element tied to its owning algebra; mixing algebras is a usage error.
template <class Ring>
struct AlgElem {
    const StructureAlgebra<Ring>* algebra;
    typename StructureAlgebra<Ring>::vec coords;

    AlgElem operator*(const AlgElem& o) const {
        if (algebra != o.algebra)
            throw UsageError("AlgElem: operands belong to different algebras");
        return {algebra, algebra->mul(coords, o.coords)};
    }
    AlgElem operator+(const AlgElem& o) const {
        if (algebra != o.algebra)
            throw UsageError("AlgElem: operands belong to different algebras");
        return {algebra, algebra->add(coords, o.coords)};
    }
    bool operator==(const AlgElem& o) const {
        return algebra == o.algebra && coords == o.coords;
    }
};

// ---- generic builders ----

// Mat_2 over the scalar ring, basis (E11, E12, E21, E22).
template <class Ring>
StructureAlgebra<Ring> mat2_algebra(Ring ring, const std::string& name) {
    using elem = typename Ring::elem;
    int dim = 4;
    std::vector<elem> c(dim * dim * dim, ring.zero());
    auto set = [&](int i, int j, int l) { c[(i * 4 + j) * 4 + l] = ring.one(); };
    // E_{ab} E_{cd} = delta_{bc} E_{ad}, index = 2a+b for a,b in {0,1}
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cidx = 0; cidx < 2; ++cidx)
                for (int dd = 0; dd < 2; ++dd)
                    if (b == cidx) set(2 * a + b, 2 * cidx + dd, 2 * a + dd);
    std::vector<elem> unit(dim, ring.zero());
    unit[0] = ring.one();
    unit[3] = ring.one();
    return StructureAlgebra<Ring>(std::move(ring), dim, std::move(c), std::move(unit), name);
}

// F[x]/(x^2) over the given field.
inline FqAlgebra dual_numbers(const Fq& f, const std::string& name) {
    std::vector<Fq::elem> c(8, 0);
    auto set = [&](int i, int j, int l) { c[(i * 2 + j) * 2 + l] = f.one(); };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    // x*x = 0
    return FqAlgebra(f, 2, std::move(c), {f.one(), 0}, name);
}

// The field itself as a 1-dimensional algebra.
inline FqAlgebra field_as_algebra(const Fq& f, const std::string& name) {
    return FqAlgebra(f, 1, {f.one()}, {f.one()}, name);
}

template <class Ring>
std::optional<typename StructureAlgebra<Ring>::vec>
StructureAlgebra<Ring>::try_inverse(const vec& x) const {
    // solve x*y = 1 by elimination with unit pivots, then verify y*x = 1
    int n = dim_;
    // columns of L_x: L_x e_j = x e_j
    std::vector<vec> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = mul(x, basis_vec(j));
    // build augmented system sum_j y_j (x e_j) = 1
    std::vector<std::vector<elem>> m(n, std::vector<elem>(n + 1, ring_.zero()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = cols[j][i];
        m[i][n] = unit_[i];
    }
    std::vector<int> pivot_of_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (ring_.is_unit(m[i][col])) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        elem d = ring_.inv(m[row][col]);
        for (int j = 0; j <= n; ++j) m[row][j] = ring_.mul(m[row][j], d);
        for (int i = 0; i < n; ++i) {
            if (i == row || m[i][col] == ring_.zero()) continue;
            elem f = m[i][col];
            for (int j = 0; j <= n; ++j)
                m[i][j] = ring_.sub(m[i][j], ring_.mul(f, m[row][j]));
        }
        pivot_of_col[col] = row;
        ++row;
    }
    if (row < n) return std::nullopt;
    vec y(n, ring_.zero());
    for (int col = 0; col < n; ++col) y[col] = m[pivot_of_col[col]][n];
    if (mul(x, y) != unit_ || mul(y, x) != unit_) return std::nullopt;
    return y;
}

} // namespace quatlat
