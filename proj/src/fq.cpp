#include "quatlat/fq.hpp"

#include <algorithm>

namespace quatlat {

namespace {

int mod(int a, int p) {
    int r = a % p;
    return r < 0 ? r + p : r;
}

// 2x2 inverse mod p; the basis must be invertible.
std::array<std::array<int, 2>, 2> invert2(const std::array<std::array<int, 2>, 2>& m, int p) {
    int det = mod(m[0][0] * m[1][1] - m[0][1] * m[1][0], p);
    if (det == 0) throw StructuralError("Fq: basis is singular");
    int dinv = 0;
    for (int x = 1; x < p; ++x)
        if (mod(det * x, p) == 1) { dinv = x; break; }
    return {{{mod(m[1][1] * dinv, p), mod(-m[0][1] * dinv, p)},
             {mod(-m[1][0] * dinv, p), mod(m[0][0] * dinv, p)}}};
}

} // namespace

Fq Fq::prime_field(int p) {
    Fq f;
    f.p_ = p;
    f.d_ = 1;
    f.q_ = p;
    f.desc_ = "F" + std::to_string(p);
    f.build_tables({{{1, 0}, {0, 1}}});
    return f;
}

Fq Fq::quadratic(int p, int c0, int c1) {
    return quadratic_with_basis(p, c0, c1, {{{1, 0}, {0, 1}}});
}

Fq Fq::quadratic_with_basis(int p, int c0, int c1,
                            std::array<std::array<int, 2>, 2> basis) {
    // irreducibility: x^2 + c1 x + c0 has no root mod p
    for (int x = 0; x < p; ++x)
        if (mod(x * x + c1 * x + c0, p) == 0)
            throw StructuralError("Fq: x^2+" + std::to_string(c1) + "x+" +
                                  std::to_string(c0) + " is reducible mod " + std::to_string(p));
    Fq f;
    f.p_ = p;
    f.d_ = 2;
    f.q_ = p * p;
    f.c0_ = mod(c0, p);
    f.c1_ = mod(c1, p);
    f.desc_ = "F" + std::to_string(f.q_) + "=F" + std::to_string(p) + "[x]/(x^2+" +
              std::to_string(f.c1_) + "x+" + std::to_string(f.c0_) + ")";
    if (basis != std::array<std::array<int, 2>, 2>{{{1, 0}, {0, 1}}})
        f.desc_ += " basis{(" + std::to_string(basis[0][0]) + "," + std::to_string(basis[0][1]) +
                   "),(" + std::to_string(basis[1][0]) + "," + std::to_string(basis[1][1]) + ")}";
    f.build_tables(basis);
    return f;
}

Fq Fq::standard(int p, int d) {
    if (p != 2 && p != 3 && p != 5)
        throw UsageError("Fq: unsupported characteristic " + std::to_string(p));
    if (d == 1) return prime_field(p);
    if (d != 2) throw UsageError("Fq: only degrees 1 and 2 are supported");
    switch (p) {
        case 2: return quadratic(2, 1, 1);   // x^2+x+1
        case 3: return quadratic(3, 1, 0);   // x^2+1
        default: return quadratic(5, 2, 0);  // x^2+2
    }
}

Fq Fq::alternative_quadratic(int p) {
    switch (p) {
        case 2:
            // x^2+x+1 is the only irreducible quadratic over F_2; present the
            // field in the normal basis (x, x^2) = (x, x+1) instead.
            return quadratic_with_basis(2, 1, 1, {{{0, 1}, {1, 1}}});
        case 3: return quadratic(3, 2, 1);   // x^2+x+2
        case 5: return quadratic(5, 1, 1);   // x^2+x+1
        default: throw UsageError("Fq: unsupported characteristic " + std::to_string(p));
    }
}

void Fq::build_tables(const std::array<std::array<int, 2>, 2>& basis) {
    basis_ = basis;
    basis_inv_ = d_ == 2 ? invert2(basis, p_) : std::array<std::array<int, 2>, 2>{{{1, 0}, {0, 1}}};

    Tables tb;
    auto& add_ = tb.add;
    auto& mul_ = tb.mul;
    auto& neg_ = tb.neg;
    auto& inv_ = tb.inv;
    auto& frob_ = tb.frob;
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    frob_.assign(q_, 0);

    // indices carry coordinates in the chosen basis; arithmetic runs in the
    // polynomial basis
    auto to_poly = [&](elem e) -> std::array<int, 2> {
        int a0 = e % p_, a1 = e / p_;
        return {mod(a0 * basis_[0][0] + a1 * basis_[1][0], p_),
                mod(a0 * basis_[0][1] + a1 * basis_[1][1], p_)};
    };
    auto from_poly = [&](std::array<int, 2> c) -> elem {
        int a0 = mod(c[0] * basis_inv_[0][0] + c[1] * basis_inv_[1][0], p_);
        int a1 = mod(c[0] * basis_inv_[0][1] + c[1] * basis_inv_[1][1], p_);
        return static_cast<elem>(a0 + a1 * p_);
    };

    for (elem a = 0; a < q_; ++a) {
        auto pa = to_poly(a);
        neg_[a] = from_poly({mod(-pa[0], p_), mod(-pa[1], p_)});
        for (elem b = 0; b < q_; ++b) {
            auto pb = to_poly(b);
            add_[a * q_ + b] = from_poly({mod(pa[0] + pb[0], p_), mod(pa[1] + pb[1], p_)});
            // (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0
            int t0 = pa[0] * pb[0], t1 = pa[0] * pb[1] + pa[1] * pb[0], t2 = pa[1] * pb[1];
            mul_[a * q_ + b] = from_poly({mod(t0 - c0_ * t2, p_), mod(t1 - c1_ * t2, p_)});
        }
    }
    one_ = from_poly({1, 0});
    for (elem a = 0; a < q_; ++a) {
        elem fr = a;
        for (int i = 1; i < p_; ++i) fr = mul_[fr * q_ + a];
        frob_[a] = fr;  // a^p
        if (a != 0) {
            for (elem b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == one_) { inv_[a] = b; break; }
        }
    }
    t_ = std::make_shared<const Tables>(std::move(tb));
}

Fq::elem Fq::scalar(int c) const {
    c = mod(c, p_);
    elem r = 0;
    for (int i = 0; i < c; ++i) r = add(r, one_);
    return r;
}

Fq::elem Fq::from_coords(int a0, int a1) const {
    return static_cast<elem>(mod(a0, p_) + mod(a1, p_) * (d_ == 2 ? p_ : 0));
}

std::array<int, 2> Fq::coords(elem a) const {
    return {a % p_, a / p_};
}

std::vector<Fq::elem> Fq::all_elements() const {
    std::vector<elem> v(q_);
    for (int i = 0; i < q_; ++i) v[i] = static_cast<elem>(i);
    return v;
}

std::vector<Fq::elem> Fq::units() const {
    std::vector<elem> v;
    for (int i = 1; i < q_; ++i) v.push_back(static_cast<elem>(i));
    return v;
}

} // namespace quatlat
