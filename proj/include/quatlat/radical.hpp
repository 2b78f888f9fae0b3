#pragma once

#include <functional>
#include <vector>

#include "quatlat/algebra.hpp"
#include "quatlat/fq_linalg.hpp"

namespace quatlat {

// Coefficients of det(lambda*I - M), index j = coefficient of lambda^(n-j)
// (so [0] = 1, [1] = -trace).  Hessenberg reduction over the field.
std::vector<Fq::elem> charpoly(const FqMat& m);

// Restriction of scalars of an F_{p^2}-algebra to F_p.  to_sub/from_sub
// translate coordinate vectors (from_sub expects a vector in the image).
struct ScalarRestriction {
    FqAlgebra algebra;
    std::function<std::vector<Fq::elem>(const std::vector<Fq::elem>&)> down;  // F_q coords -> F_p coords
    std::function<std::vector<Fq::elem>(const std::vector<Fq::elem>&)> up;    // F_p coords -> F_q coords
};
ScalarRestriction restrict_scalars(const FqAlgebra& a);

// Jacobson radical as a canonical (RREF) basis of a subspace of A.
// Uses the characteristic-polynomial coefficient chain over the prime field;
// the result is verified to be a nilpotent two-sided ideal.
FqMat jacobson_radical(const FqAlgebra& a);

// Reference implementation by exhaustive search, for cross-checking on
// small algebras: J = {x : ax is nilpotent for every a}.
FqMat jacobson_radical_reference(const FqAlgebra& a, uint64_t budget = 1 << 20);

// Quotient algebra A/I by a two-sided ideal given as an RREF basis, with the
// projection and a lift of quotient coordinates.
struct QuotientData {
    FqAlgebra algebra;
    std::function<std::vector<Fq::elem>(const std::vector<Fq::elem>&)> project;
    std::function<std::vector<Fq::elem>(const std::vector<Fq::elem>&)> lift;
};
QuotientData quotient_algebra(const FqAlgebra& a, const FqMat& ideal_rref, const std::string& name);

enum class SemisimpleType {
    SplitPair,       // k x k
    Field,           // k
    QuadraticField,  // k' (the quadratic extension of k)
    FullMatrix,      // Mat_2(k)
};
const char* to_string(SemisimpleType t);

// Identify A/J(A) among the four quaternion-order shapes relative to the
// residue field k = F_{p^fr}.  Throws StructuralError for anything else.
SemisimpleType semisimple_type(const FqAlgebra& a, int fr);

std::vector<std::vector<Fq::elem>> idempotents(const FqAlgebra& a, uint64_t budget = 1 << 20);

} // namespace quatlat
