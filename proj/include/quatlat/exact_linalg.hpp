#pragma once

#include <vector>

#include "quatlat/numeric.hpp"

namespace quatlat {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Int det_int(IntMat a);
Rat det_rat(RatMat a);

// Elementary divisors d1 | d2 | ... (non-negative, zeros trailing) of an
// arbitrary integer matrix.
IntVec smith_normal_form(IntMat a);

// Row-style Hermite normal form of the lattice spanned by the rows; returns
// the canonical basis (rank rows, pivots positive, entries above pivots
// reduced).
IntMat hnf_rows(IntMat a);

RatMat rat_inverse(RatMat a);                       // throws StructuralError if singular
RatVec solve_left(const RatMat& basis, const RatVec& v);   // c with c * basis = v
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat to_rat(const IntMat& a);

// Solve A x = b over Z/p^k (A integral, b integral), via the Smith normal
// form of A.  Returns false when no solution exists at this precision.
bool solve_mod_pk(const IntMat& a, const IntVec& b, int64_t p, int k, IntVec& solution);

} // namespace quatlat
