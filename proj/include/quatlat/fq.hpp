#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "quatlat/errors.hpp"

namespace quatlat {

// F_p or F_{p^2} for p in {2,3,5}, with all arithmetic tabulated.
//
// Extension fields are F_p[x]/(x^2 + c1 x + c0) for a fixed irreducible
// polynomial per characteristic (x^2+x+1 for p=2, x^2+1 for p=3, x^2+2 for
// p=5 unless overridden).  Elements are indices a0 + a1*p with (a0, a1) the
// coordinates in a chosen F_p-basis; the basis defaults to the polynomial
// basis (1, x) but any basis of the quadratic extension is accepted, so the
// same field admits several concrete presentations.
// Tables are shared immutably between copies, so Fq itself is a small value
// type safe to store inside matrices and module actions.
class Fq {
public:
    using elem = uint16_t;

    Fq() = default;  // empty field, only valid as a placeholder

    static Fq prime_field(int p);
    // Quadratic extension with given irreducible x^2 + c1 x + c0.
    static Fq quadratic(int p, int c0, int c1);
    // Same field, coordinates w.r.t. basis (b0, b1) given in polynomial
    // coordinates; used to exercise presentation independence.
    static Fq quadratic_with_basis(int p, int c0, int c1,
                                   std::array<std::array<int, 2>, 2> basis);

    // Default presentations used throughout the library.
    static Fq standard(int p, int d);
    // A second presentation differing from standard(p,2) in its coordinate
    // tables: a different irreducible polynomial for p in {3,5}; for p=2 the
    // normal basis (x, x^2) of the unique quadratic extension.
    static Fq alternative_quadratic(int p);

    int p() const { return p_; }
    int degree() const { return d_; }
    int q() const { return q_; }
    const std::string& description() const { return desc_; }

    elem zero() const { return 0; }
    elem one() const { return one_; }
    elem add(elem a, elem b) const { return t_->add[a * q_ + b]; }
    elem sub(elem a, elem b) const { return t_->add[a * q_ + t_->neg[b]]; }
    elem neg(elem a) const { return t_->neg[a]; }
    elem mul(elem a, elem b) const { return t_->mul[a * q_ + b]; }
    bool is_unit(elem a) const { return a != 0; }
    elem inv(elem a) const {
        if (a == 0) throw StructuralError("Fq: inverse of zero");
        return t_->inv[a];
    }
    // Frobenius x -> x^p, the nontrivial automorphism when d = 2.
    elem frob(elem a) const { return t_->frob[a]; }

    elem scalar(int c) const;                    // image of c in the prime field
    elem from_coords(int a0, int a1) const;      // coords in the chosen basis
    std::array<int, 2> coords(elem a) const;

    std::vector<elem> all_elements() const;
    std::vector<elem> units() const;

    bool operator==(const Fq& o) const { return p_ == o.p_ && desc_ == o.desc_; }

private:
    struct Tables {
        std::vector<elem> add, mul, neg, inv, frob;
    };
    void build_tables(const std::array<std::array<int, 2>, 2>& basis);

    int p_ = 0, d_ = 0, q_ = 0;
    int c0_ = 0, c1_ = 0;
    elem one_ = 1;
    std::string desc_;
    std::shared_ptr<const Tables> t_;
    // basis <-> polynomial coordinate transforms (entries mod p)
    std::array<std::array<int, 2>, 2> basis_{{{1, 0}, {0, 1}}};
    std::array<std::array<int, 2>, 2> basis_inv_{{{1, 0}, {0, 1}}};
};

} // namespace quatlat
