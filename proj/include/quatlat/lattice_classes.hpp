#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatlat/local_order.hpp"
#include "quatlat/submodules.hpp"

namespace quatlat {

enum class LatticeKind { Column, ChainOrder, Explicit };

struct LatticeClassLabel {
    LatticeKind kind{};
    std::vector<int> data;   // column: exponent tuple; chain order: {i}; explicit: {F_p-dimension}
    std::string name;        // canonical
    int prime = 0;

    bool operator==(const LatticeClassLabel& o) const {
        return kind == o.kind && data == o.data && name == o.name && prime == o.prime;
    }
};

struct LocalClassList {
    std::string case_id;
    std::vector<LatticeClassLabel> classes;  // duplicate-free, canonical order
    size_t count() const { return classes.size(); }
};

// Lattices over the Eichler order of level pi^e in the split algebra:
// non-decreasing exponent tuples 0 <= e_1 <= ... <= e_u <= e.
LocalClassList eichler_lattice_classes(int level, int multiplicity, int ell);

struct BassModuleShape {
    bool split = true;  // split: W = Mat_{2,u}; division: W = B^r
    int count = 1;      // u or r
};

// Lattice classes over a Bass order with e(O) in {-1, 0}, read off the
// overorder chain: numerical solutions of s + 2 sum t_i = u (split, e=-1),
// r + s + 2 sum t_i = u (split, e=0), sum t_i = r (division).
LocalClassList bass_lattice_classes(const OverorderChain& chain, BassModuleShape shape, int ell);

// One class per overorder of a commutative local Bass order.
LocalClassList commutative_lattice_classes(const LocalOrderModel& order, int ell);

// ---- quotient census machinery ----

struct CensusResult {
    std::string case_id;
    std::vector<int> block_orbit_counts;  // one entry per Delta block
    int total = 0;
    std::vector<LatticeClassLabel> classes;
    std::vector<int> member_counts;       // submodules surviving the generation filter, per block
};

// The generic Nakayama census: classes of bottom-lattices L with top*L = Delta,
// computed as orbits of bottom-submodules of Delta/m*Delta under the unit
// action of End_top(Delta).  Delta ranges over the column modules cut out by
// the idempotents of top/m (or the regular module when columns do not split).
//
// bottom_in_top: integral basis of the bottom order in top coordinates.
// modulus: central element m of top with m*top inside bottom (verified).
CensusResult top_quotient_census(const LocalOrderModel& bottom, const LocalOrderModel& top,
                                 const RatMat& bottom_in_top, const IntVec& modulus,
                                 const std::string& case_id, bool split_into_columns);

// Product of two local order models (block-diagonal constants).
LocalOrderModel product_order_model(const LocalOrderModel& a, const LocalOrderModel& b, int k);

// ---- the four non-isotypic census cases ----

// ((3,6), 2): the trivial-extension census over F_4; per-Delta orbit counts
// in the canonical block order (dagger x dagger, ddagger x ddagger, mixed,
// mixed).  The field argument selects the F_4 presentation.
CensusResult census_3_6_at_2(const Fq& f4);

// ((2,2p), p): Delta_bar = Obar_p x F_{p^2}; returns {graph, ambient}.
CensusResult census_2_2p(int p, const Fq& fp2);

// ((1,2), 2): census over O_2 x O_2 mod 2.
CensusResult census_1_2();

// dispatch over the supported cases {(1,2),(3,6),(2,4),(2,6)}
CensusResult quotient_orbit_classification(std::pair<int, int> nbar, int p);

// the two column modules of the trivial extension are non-isomorphic:
// count equivariant bijections among all linear maps (expected zero)
int equivariant_isomorphisms_between_columns(const Fq& f4);

// endomorphism order descriptors, consumed by the class-number module
enum class EndoKind {
    MaximalProduct,       // O x A_{n_2}: h = product of class numbers
    CongruenceModP,       // R = {x = y mod P}: h by double coset count
    SelfSubdirect,        // the (1,2) order itself: h = 1 by unit surjectivity
    MiddleSubdirect,      // R_2 of the (1,2) chain: h = 1 by monotonicity + double coset
    CommutativeOverorder, // A_nbar or O_K: h = 1 fixtures
    CyclotomicMaximal,    // A_n, n in {3,4,5,8,12}: h = 1 fixture
    LocalBassSelf,        // A_{n,p} itself: det of local units equals A^x
};
struct EndoDescriptor {
    EndoKind kind{};
    std::string name;
};

EndoDescriptor endomorphism_order(const LatticeClassLabel& label, std::pair<int, int> nbar, int p);

// stabilizer check for the (2,2p) graph class: the endomorphisms of Gamma
// inside Obar_p x F_p form the congruence-mod-P pattern
bool gamma_endomorphisms_are_congruence(int p);

// det(units of the local order) fills the units of the center, verified
// on the finite quotient; this is what forces h = 1 for the n in {3,4} genera
bool local_unit_determinants_surject(const LocalOrderModel& o);

} // namespace quatlat
