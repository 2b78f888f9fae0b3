#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatlat/algebra.hpp"
#include "quatlat/exact_linalg.hpp"
#include "quatlat/numeric.hpp"
#include "quatlat/radical.hpp"

namespace quatlat {

// A_{n,p}: the p-adic completion of a cyclotomic order, carried with exact
// integral structure constants and a designated uniformizer.
struct LocalCommutativeOrder {
    int p = 0;
    int f = 0;               // Z_p-rank
    std::vector<Int> sc;     // f^3
    IntVec unit;
    IntVec uniformizer;      // coordinates in this basis
    int e_F = 0, f_r = 0;    // e_F * f_r = f
    std::string name;

    IntVec mul(const IntVec& a, const IntVec& b) const;
    FqAlgebra fp_view() const;
};

// Completion of Z[zeta_n] at p for the (n, p) pairs this census needs.
LocalCommutativeOrder cyclotomic_local_order(int n, int p);

// Z_p itself.
LocalCommutativeOrder zp_order(int p);

// Center data of a local order whose ambient algebra has a field center.
struct CenterDesc {
    int f = 0;
    std::vector<IntVec> basis;   // f vectors in model coordinates, basis[0] = 1
    std::vector<Int> sc;         // f^3 constants in this center basis
    IntVec uniformizer;          // length f, coordinates in the center basis
    int e_F = 0, f_r = 0;
    std::string field_name;
};

// A Z_p-order presented by exact integral structure constants, analysed
// through its finite quotients O/p^k O (default precision k).  The exact
// constants keep overorder constructions lossless; every reported invariant
// is computed from a finite-precision view.
class LocalOrderModel {
public:
    LocalOrderModel(int p, int k, int dim, std::vector<Int> sc, IntVec unit,
                    std::string provenance);

    int p() const { return p_; }
    int precision() const { return k_; }
    int dim() const { return dim_; }
    const std::string& provenance() const { return prov_; }
    const std::vector<Int>& constants() const { return sc_; }
    const IntVec& unit() const { return unit_; }

    std::optional<CenterDesc> center;   // present for quaternion-over-field models
    std::vector<IntVec> of_basis;       // 4 vectors when center is present

    // coordinates of this order's basis inside a reference ambient lattice
    // (e.g. the product of maximal orders it was cut from), for exact
    // lattice comparisons along chains
    std::optional<RatMat> ambient_frame;
    std::string ambient_name;

    IntVec mul_int(const IntVec& a, const IntVec& b) const;
    RatVec mul_rat(const RatVec& a, const RatVec& b) const;

    ZpkAlgebra zpk_view(int k) const;
    ZpkAlgebra zpk_view() const { return zpk_view(k_); }
    FqAlgebra fp_view() const;

    LocalOrderModel with_precision(int k) const;

private:
    int p_, k_, dim_;
    std::vector<Int> sc_;
    IntVec unit_;
    std::string prov_;
};

// O_p = Z_{p^2} + Z_{p^2} eta, eta^2 = p, x eta = eta conj(x): the maximal
// order of the division quaternion algebra over Q_p.
LocalOrderModel local_maximal_order(int p, int k);

// A_{n,p} tensor O_p with the diagonal center A_{n,p}.
LocalOrderModel tensor_local_order(const LocalCommutativeOrder& a, int k);
LocalOrderModel tensor_local_order(int n, int p, int k);

// The 2x2 pattern order [A A; pi^level A A] over A, with its column data.
LocalOrderModel pattern_eichler_order(const LocalCommutativeOrder& a, int level, int k);

// Mat_2(Z/p^k) as a local-order model (Eichler invariant 2).
LocalOrderModel mat2_local_order(int p, int k);

// Congruence orders of the non-isotypic cases:
//   {(x,y) in O_2 x O_2 : x = y mod 2 O_2}
LocalOrderModel congruence_order_1_2(int k);
//   {(x,y) in E x E : x = y mod 2 E},  E = Z_4 tensor O_2
LocalOrderModel congruence_order_3_6(int k);
//   {(x,y) in O_p x A_{2p,p}O_p : x = y mod p_frak}, p in {2,3}
LocalOrderModel congruence_order_2_2p(int p, int k);

// Commutative congruence orders (no quaternion structure):
LocalOrderModel commutative_pair_order_1_2(int k);   // {(a,b) in Z_2^2 : a = b mod 2}
LocalOrderModel commutative_pair_order_3_6(int k);   // {(a,b) in Z_4^2 : a = b mod 2}

// Eichler invariant from the semisimple type of the mod-p reduction.
int eichler_invariant(const LocalOrderModel& o);

// n(O): valuation of the reduced discriminant over the center.  Throws
// PrecisionError when the valuation is not visible at the working precision.
int discriminant_exponent(const LocalOrderModel& o);

struct ChainLink {
    LocalOrderModel order;
    RatMat basis_in_base;        // rows: basis in the base order's coordinates
    std::optional<int> disc_exponent;
    std::optional<int> eichler;
    bool minimal_overorder_unique = true;
};

struct OverorderChain {
    std::vector<ChainLink> links;  // links[0] = the input order
    std::string bass_justification;
    size_t length() const { return links.size(); }
    const ChainLink& top() const { return links.back(); }
};

// The chain O = M^0 c M^1 c ... up to the hereditary closure, each link a
// minimal overorder found by sub-bimodule search in (1/p)O / O.
OverorderChain overorder_chain(const LocalOrderModel& o);

// All overorders of O (O itself included), for orders with finitely many;
// enumerated by repeated minimal-extension search across the whole poset.
std::vector<LocalOrderModel> all_overorders(const LocalOrderModel& o, int max_orders = 64);

} // namespace quatlat
