#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "quatlat/algebra.hpp"
#include "quatlat/exact_linalg.hpp"
#include "quatlat/numeric.hpp"

namespace quatlat {

// Rational quaternion algebra (a,b / Q): i^2 = a, j^2 = b, ij = -ji.
struct QuaternionAlgebraQ {
    Rat a, b;
    bool definite() const { return a < 0 && b < 0; }
};

// Element in coordinates w.r.t. the standard basis 1, i, j, ij.
struct QuatElement {
    std::array<Rat, 4> c{};
};

QuatElement q_add(const QuatElement& x, const QuatElement& y);
QuatElement q_sub(const QuatElement& x, const QuatElement& y);
QuatElement q_scale(const Rat& s, const QuatElement& x);
QuatElement q_mul(const QuaternionAlgebraQ& d, const QuatElement& x, const QuatElement& y);
QuatElement q_conj(const QuatElement& x);
Rat reduced_trace(const QuatElement& x);
Rat reduced_norm(const QuaternionAlgebraQ& d, const QuatElement& x);

// Places are encoded as 0 for the real place and p for a finite prime.
constexpr int64_t kInfinitePlace = 0;

// +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.  The odd
// finite places use the Legendre-symbol case analysis; v = 2 runs a bounded
// solubility search mod 2^6 with the Hensel lifting criterion.
int hilbert_symbol(const Rat& a, const Rat& b, int64_t v);

// Search-based evaluation at odd p (mod p^3), used to cross-check the
// formula path at small primes.
int hilbert_symbol_search_odd(const Rat& a, const Rat& b, int64_t p);

// All places where (a,b) ramifies; always of even cardinality.
std::set<int64_t> ramified_places(const Rat& a, const Rat& b);

// A full-rank Z-order in a quaternion algebra.  Rows of `basis` are the
// basis elements in 1,i,j,ij coordinates.  Construction verifies that the
// lattice contains 1 and is closed under multiplication, and caches the
// integral multiplication table.
class ZOrder {
public:
    ZOrder(QuaternionAlgebraQ d, RatMat basis, std::string name);

    const QuaternionAlgebraQ& algebra() const { return d_; }
    const RatMat& basis() const { return basis_; }
    const std::string& name() const { return name_; }
    QuatElement basis_element(int i) const;

    // coordinates of x w.r.t. the order basis (exact; integral iff x in O)
    RatVec coordinates(const QuatElement& x) const;
    bool contains(const QuatElement& x) const;

    // integral structure constants: b_i b_j = sum_l gamma[i][j][l] b_l
    const std::vector<Int>& gamma() const { return gamma_; }
    Int gamma_at(int i, int j, int l) const { return gamma_[(i * 4 + j) * 4 + l]; }

    // Gram matrix of the norm form in the order basis (definite case: PD).
    RatMat norm_gram() const;

    // O/p^k O as a structure-constant algebra over Z/p^k.
    ZpkAlgebra reduction(int p, int k) const;

    Int reduced_discriminant() const;

private:
    QuaternionAlgebraQ d_;
    RatMat basis_;
    std::string name_;
    std::vector<Int> gamma_;
};

// The fixed maximal orders in D_{p,infty} for p in {2,3,5}; validated at
// construction (reduced discriminant (p), ramified places {p, infty}).
ZOrder maximal_order(int p);

// Z-span of the 2x2 matrix units inside the split algebra (1,1); has
// reduced discriminant (1).
ZOrder split_matrix_pattern_order();

// Norm-one group of a definite order by box enumeration on the Gram
// lattice; throws UsageError for indefinite algebras.
std::vector<QuatElement> unit_group(const ZOrder& o);

} // namespace quatlat
