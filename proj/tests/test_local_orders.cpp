#include "doctest.h"

#include "quatlat/finite_models.hpp"
#include "quatlat/local_order.hpp"
#include "quatlat/units_finite.hpp"

using namespace quatlat;

TEST_CASE("local maximal order relations") {
    for (int p : {2, 3, 5}) {
        LocalOrderModel o = local_maximal_order(p, 3);
        IntVec one{1, 0, 0, 0}, w{0, 1, 0, 0}, h{0, 0, 1, 0}, wh{0, 0, 0, 1};
        CHECK(o.mul_int(h, h) == IntVec{p, 0, 0, 0});  // eta^2 = p
        CHECK(o.mul_int(w, h) == wh);
        // x eta = eta conj(x) on the basis: w h = h conj(w)
        // conj(w) = -c1 - w
        int c0 = p == 2 ? 1 : (p == 3 ? 1 : 2), c1 = p == 2 ? 1 : 0;
        IntVec conj_w{-c1, -1, 0, 0};
        CHECK(o.mul_int(w, h) == o.mul_int(h, conj_w));
        (void)c0;
        (void)one;
    }
}

TEST_CASE("local maximal order reduction: radical and Eichler invariant") {
    for (int p : {2, 3, 5}) {
        LocalOrderModel o = local_maximal_order(p, 4);
        FqAlgebra obar = o.fp_view();
        FqMat j = jacobson_radical(obar);
        CHECK(j.rows() == 2);  // F_{p^2} eta_bar, of F_p-dimension 2
        CHECK(in_row_space(j, obar.basis_vec(2)));
        CHECK(in_row_space(j, obar.basis_vec(3)));
        CHECK(semisimple_type(obar, 1) == SemisimpleType::QuadraticField);
        CHECK(eichler_invariant(o) == -1);
        CHECK(discriminant_exponent(o) == 1);
    }
}

TEST_CASE("tensor order invariants across the isotypic cases") {
    // ramified quadratic center: e = -1, n = 2
    for (auto [n, p] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}}) {
        LocalOrderModel a = tensor_local_order(n, p, 4);
        CHECK(a.dim() == 8);
        CHECK(eichler_invariant(a) == -1);
        CHECK(discriminant_exponent(a) == 2);
    }
    // unramified quadratic center (inert): Eichler pattern of level 1
    for (auto [n, p] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}}) {
        LocalOrderModel a = tensor_local_order(n, p, 4);
        CHECK(eichler_invariant(a) == 1);
        CHECK(discriminant_exponent(a) == 1);
    }
    // degree-4 center with residue degree 2: e = 1, n = 2
    for (int p : {2, 3}) {
        LocalOrderModel a = tensor_local_order(12, p, 4);
        CHECK(a.dim() == 16);
        CHECK(eichler_invariant(a) == 1);
        CHECK(discriminant_exponent(a) == 2);
    }
    CHECK(eichler_invariant(mat2_local_order(3, 4)) == 2);
    CHECK(discriminant_exponent(mat2_local_order(3, 4)) == 0);
}

TEST_CASE("tensor order matches the Eichler pattern model on invariants") {
    LocalCommutativeOrder a32 = cyclotomic_local_order(3, 2);
    LocalOrderModel tensor = tensor_local_order(a32, 4);
    LocalOrderModel pattern = pattern_eichler_order(a32, 1, 4);
    CHECK(eichler_invariant(tensor) == eichler_invariant(pattern));
    CHECK(discriminant_exponent(tensor) == discriminant_exponent(pattern));
    FqAlgebra tbar = tensor.fp_view(), pbar = pattern.fp_view();
    CHECK(jacobson_radical(tbar).rows() == jacobson_radical(pbar).rows());
    CHECK(unit_group_of_finite_algebra(tbar).size() == unit_group_of_finite_algebra(pbar).size());
}

TEST_CASE("discriminant exponent of A_5,5 needs higher precision") {
    LocalCommutativeOrder a55 = cyclotomic_local_order(5, 5);
    CHECK(a55.e_F == 4);
    LocalOrderModel t4 = tensor_local_order(a55, 4);
    CHECK_THROWS_AS(discriminant_exponent(t4), PrecisionError);
    LocalOrderModel t6 = tensor_local_order(a55, 6);
    CHECK(discriminant_exponent(t6) == 4);
    CHECK(eichler_invariant(t6) == -1);
    LocalCommutativeOrder a82 = cyclotomic_local_order(8, 2);
    LocalOrderModel t8 = tensor_local_order(a82, 6);
    CHECK(discriminant_exponent(t8) == 4);
    CHECK(eichler_invariant(t8) == -1);
}

TEST_CASE("precision guard and stability under k -> k+1") {
    LocalOrderModel a33k3 = tensor_local_order(3, 3, 3);
    CHECK_THROWS_AS(discriminant_exponent(a33k3), PrecisionError);
    for (int k : {4, 5}) {
        LocalOrderModel a = tensor_local_order(3, 3, k);
        CHECK(discriminant_exponent(a) == 2);
        CHECK(eichler_invariant(a) == -1);
    }
    for (int k : {4, 5}) {
        LocalOrderModel a = tensor_local_order(12, 2, k);
        CHECK(discriminant_exponent(a) == 2);
        CHECK(eichler_invariant(a) == 1);
    }
}

TEST_CASE("overorder chain of A_3,3: one link up to Mat2") {
    LocalOrderModel a = tensor_local_order(3, 3, 4);
    OverorderChain ch = overorder_chain(a);
    REQUIRE(ch.length() == 2);
    CHECK(ch.links[0].disc_exponent == 2);
    CHECK(ch.links[0].eichler == -1);
    CHECK(ch.links[1].disc_exponent == 0);
    CHECK(ch.links[1].eichler == 2);  // hereditary closure is the full matrix ring
    CHECK(ch.links[0].minimal_overorder_unique);
}

TEST_CASE("overorder chain of A_4,2") {
    LocalOrderModel a = tensor_local_order(4, 2, 4);
    OverorderChain ch = overorder_chain(a);
    REQUIRE(ch.length() == 2);
    CHECK(ch.links[1].eichler == 2);
    CHECK(ch.links[1].disc_exponent == 0);
}

TEST_CASE("overorder chain of A_5,5: two links, drops of 2") {
    LocalCommutativeOrder a55 = cyclotomic_local_order(5, 5);
    LocalOrderModel a = tensor_local_order(a55, 6);
    OverorderChain ch = overorder_chain(a);
    REQUIRE(ch.length() == 3);
    CHECK(ch.links[0].disc_exponent == 4);
    CHECK(ch.links[1].disc_exponent == 2);
    CHECK(ch.links[1].eichler == -1);  // invariant constant until the hereditary closure
    CHECK(ch.links[2].disc_exponent == 0);
    CHECK(ch.links[2].eichler == 2);
}

TEST_CASE("overorder chain of the Eichler order A_12,2: level drops by one") {
    LocalOrderModel a = tensor_local_order(12, 2, 4);
    OverorderChain ch = overorder_chain(a);
    REQUIRE(ch.length() == 2);
    CHECK(ch.links[0].disc_exponent == 2);
    CHECK(ch.links[1].disc_exponent == 1);  // hereditary, still Eichler
    CHECK(ch.links[1].eichler == 1);
    CHECK_FALSE(ch.links[1].minimal_overorder_unique);  // two adjacent Eichler overorders
}

TEST_CASE("maximal orders have chains of length one") {
    OverorderChain ch = overorder_chain(local_maximal_order(3, 4));
    CHECK(ch.length() == 1);
    OverorderChain ch2 = overorder_chain(mat2_local_order(2, 4));
    CHECK(ch2.length() == 1);
}

TEST_CASE("the (1,2) congruence order has exactly the three known overorders") {
    LocalOrderModel a = congruence_order_1_2(4);
    CHECK(a.dim() == 8);
    // completely primary: A/J = F_4 (quadratic over F_2)
    FqAlgebra abar = a.fp_view();
    FqMat j = jacobson_radical(abar);
    CHECK(abar.dim() - j.rows() == 2);
    auto orders = all_overorders(a);
    CHECK(orders.size() == 3);

    OverorderChain ch = overorder_chain(a);
    REQUIRE(ch.length() == 3);
    // indices 4 and 4: determinant of the basis matrices
    Rat d1 = det_rat(ch.links[1].basis_in_base);
    Rat d2 = det_rat(ch.links[2].basis_in_base);
    CHECK(d1 == Rat(1, 4));
    CHECK(d2 == Rat(1, 16));
    // middle link R_2 is completely primary with the same residue field
    FqAlgebra rbar = ch.links[1].order.fp_view();
    FqMat jr = jacobson_radical(rbar);
    CHECK(rbar.dim() - jr.rows() == 2);
    // top link: O_2 x O_2, i.e. the standard lattice in the ambient frame
    REQUIRE(ch.links[2].order.ambient_frame.has_value());
    RatMat frame = *ch.links[2].order.ambient_frame;
    Int denom = 1;
    for (const auto& row : frame)
        for (const auto& x : row) denom = boost::multiprecision::lcm(denom, rat_den(x));
    CHECK(denom == 1);  // integral coordinates
    IntMat m;
    for (const auto& row : frame) {
        IntVec r;
        for (const auto& x : row) r.push_back(rat_num(x));
        m.push_back(r);
    }
    IntMat h = hnf_rows(m);
    for (int i = 0; i < 8; ++i)
        for (int jj = 0; jj < 8; ++jj) CHECK(h[i][jj] == (i == jj ? 1 : 0));
    // semisimple quotient of the top is the split pair F_4 x F_4
    CHECK(semisimple_type(ch.links[2].order.fp_view(), 2) == SemisimpleType::SplitPair);
}

TEST_CASE("commutative congruence orders: overorder counts") {
    auto o12 = commutative_pair_order_1_2(4);
    CHECK(all_overorders(o12).size() == 2);
    auto o36 = commutative_pair_order_3_6(4);
    CHECK(all_overorders(o36).size() == 2);
}

TEST_CASE("the (2,2p) congruence orders are completely primary with F_p^2 quotient") {
    for (int p : {2, 3}) {
        LocalOrderModel a = congruence_order_2_2p(p, 4);
        CHECK(a.dim() == 12);
        FqAlgebra abar = a.fp_view();
        FqMat j = jacobson_radical(abar);
        CHECK(abar.dim() - j.rows() == 2);  // A/J = F_{p^2}
        CHECK_THROWS_AS(eichler_invariant(a), StructuralError);  // not a quaternion order over a field
    }
}

TEST_CASE("the (3,6) congruence order at 2") {
    LocalOrderModel a = congruence_order_3_6(4);
    CHECK(a.dim() == 16);
    FqAlgebra abar = a.fp_view();
    FqMat j = jacobson_radical(abar);
    // A / 2B = Ebar has radical of F_2-dimension 4, and 2B/2A adds 8
    CHECK(j.rows() == 12);
    CHECK(abar.dim() - j.rows() == 4);  // quotient F_4 x F_4
}
