#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quatlat/numeric.hpp"

namespace quatlat {

// Z[T]-polynomials are coefficient vectors, index = degree, always monic
// here.
using ZPoly = std::vector<Int>;

// P(T) = prod of cyclotomic polynomials for one n or a pair (n1, n2).
struct CyclotomicSpec {
    std::vector<int> ns;   // one or two entries, increasing
    ZPoly poly;            // monic, degree = sum phi(n_i)
    int degree = 0;
};

// Congruence presentation of the pair order A_(n1,n2) inside its maximal
// order, with the verified index [O_K : A].
struct PairOrderPresentation {
    std::pair<int, int> pair;
    Int index;                       // = [O_K : A], matches the fixed table
    std::string congruence;          // e.g. "a = b (mod 2 Z[zeta3])"
    std::vector<int> components;     // the two n_i, maximal order = A_{n1} x A_{n2}
};

enum class SplittingTag { Ramified, Inert, Split, MixedDegree };
const char* to_string(SplittingTag t);

struct LocalBehavior {
    int n = 0;
    int p = 0;
    SplittingTag tag{};
    int residue_degree = 0;      // f, common to all primes above p
    int ramification_index = 0;  // e
    int num_primes = 0;          // e * f * num = phi(n)
};

int euler_phi(int n);

// n-th cyclotomic polynomial for n <= 12.
CyclotomicSpec cyclotomic_polynomial(int n);

// P_{(n1,n2)} = Phi_{n1} Phi_{n2}.
CyclotomicSpec cyclotomic_pair(int n1, int n2);

// The six supported pair orders; the index is recomputed from the embedding
// A -> O_K by an elementary-divisor computation and checked against the
// table value.
PairOrderPresentation pair_order(int n1, int n2);

// Factorization type of p in Q(zeta_n), from Phi_n mod p.
LocalBehavior local_splitting(int n, int p);

// S(nbar, p): primes where the quaternionic order A_nbar tensor O is
// non-maximal.  Pass n2 = 0 for the isotypic case.
std::set<int> nonmaximal_primes(int n1, int n2, int p);

} // namespace quatlat
