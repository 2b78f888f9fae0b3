#include "doctest.h"

#include <algorithm>

#include "quatlat/lattice_classes.hpp"
#include "quatlat/radical.hpp"

using namespace quatlat;

namespace {

// modulus element pi^c of the top order, in top coordinates
IntVec uniformizer_power(const LocalOrderModel& top, int c) {
    const CenterDesc& cd = *top.center;
    IntVec pi(top.dim(), 0);
    for (int i = 0; i < cd.f; ++i)
        if (cd.uniformizer[i] != 0)
            for (int t = 0; t < top.dim(); ++t) pi[t] += cd.uniformizer[i] * cd.basis[i][t];
    IntVec r = top.unit();
    for (int i = 0; i < c; ++i) r = top.mul_int(r, pi);
    return r;
}

RatMat bottom_in_top_frame(const OverorderChain& ch) {
    return rat_inverse(ch.top().basis_in_base);
}

} // namespace

TEST_CASE("eichler lattice class lists") {
    auto l21 = eichler_lattice_classes(2, 1, 2);
    CHECK(l21.count() == 3);
    CHECK(l21.classes[0].name == "column(0)");
    CHECK(l21.classes[2].name == "column(2)");
    CHECK(eichler_lattice_classes(1, 1, 2).count() == 2);
    CHECK(eichler_lattice_classes(0, 3, 5).count() == 1);
    // count = C(u+e, u) spot checks
    CHECK(eichler_lattice_classes(3, 2, 3).count() == 10);
    CHECK(eichler_lattice_classes(2, 2, 3).count() == 6);
}

TEST_CASE("bass lattice class lists from chains") {
    LocalOrderModel a33 = tensor_local_order(3, 3, 4);
    OverorderChain ch = overorder_chain(a33);
    auto cl = bass_lattice_classes(ch, {true, 2}, 3);
    CHECK(cl.count() == 2);  // s=2,t=0 (the Mat2 column pair) and s=0,t0=1 (the order itself)

    LocalCommutativeOrder a55 = cyclotomic_local_order(5, 5);
    OverorderChain ch5 = overorder_chain(tensor_local_order(a55, 6));
    CHECK(bass_lattice_classes(ch5, {true, 1}, 5).count() == 1);

    OverorderChain chm = overorder_chain(local_maximal_order(3, 4));
    CHECK(bass_lattice_classes(chm, {false, 1}, 3).count() == 1);

    OverorderChain ch12 = overorder_chain(tensor_local_order(12, 2, 4));
    CHECK_THROWS_AS(bass_lattice_classes(ch12, {true, 1}, 2), UsageError);
}

TEST_CASE("commutative lattice classes") {
    CHECK(commutative_lattice_classes(commutative_pair_order_3_6(4), 2).count() == 2);
    CHECK(commutative_lattice_classes(commutative_pair_order_1_2(4), 2).count() == 2);
}

TEST_CASE("(3,6) at 2: per-Delta orbit counts 3+3+1+1 = 8") {
    CensusResult r = census_3_6_at_2(Fq::standard(2, 2));
    CHECK(r.total == 8);
    CHECK(r.block_orbit_counts == std::vector<int>{3, 3, 1, 1});
    CHECK(r.member_counts == std::vector<int>{7, 7, 1, 1});
    // representative names include the three shapes
    int graphs = 0, congruences = 0, ambients = 0;
    for (const auto& c : r.classes) {
        if (c.name.find("graph") != std::string::npos) ++graphs;
        if (c.name.find("index-1 congruence") != std::string::npos) ++congruences;
        if (c.name.find("ambient") != std::string::npos) ++ambients;
    }
    CHECK(graphs == 2);
    CHECK(congruences == 2);
    CHECK(ambients == 4);
}

TEST_CASE("(3,6) census is independent of the F_4 presentation") {
    CensusResult a = census_3_6_at_2(Fq::standard(2, 2));
    CensusResult b = census_3_6_at_2(Fq::alternative_quadratic(2));
    CHECK(a.block_orbit_counts == b.block_orbit_counts);
    CHECK(a.total == b.total);
    CHECK(a.member_counts == b.member_counts);
}

TEST_CASE("the two trivial-extension columns are non-isomorphic") {
    CHECK(equivariant_isomorphisms_between_columns(Fq::standard(2, 2)) == 0);
}

TEST_CASE("(2,2p) census: two classes, graph and ambient") {
    for (int p : {2, 3}) {
        CensusResult r = census_2_2p(p, Fq::standard(p, 2));
        CHECK(r.total == 2);
        CHECK(r.member_counts == std::vector<int>{p * p});  // (p^2-1 graphs) + ambient
        bool has_gamma = false, has_delta = false;
        for (const auto& c : r.classes) {
            if (c.name.find("Gamma") != std::string::npos) has_gamma = true;
            if (c.name.find("Delta") != std::string::npos) has_delta = true;
        }
        CHECK(has_gamma);
        CHECK(has_delta);
    }
    // presentation independence
    CensusResult a = census_2_2p(3, Fq::standard(3, 2));
    CensusResult b = census_2_2p(3, Fq::alternative_quadratic(3));
    CHECK(a.total == b.total);
    CHECK(a.member_counts == b.member_counts);
    CensusResult c2 = census_2_2p(2, Fq::alternative_quadratic(2));
    CHECK(c2.total == 2);
}

TEST_CASE("(1,2) census: three classes matching the overorders") {
    CensusResult r = census_1_2();
    CHECK(r.total == 3);
    std::vector<int> dims;
    for (const auto& c : r.classes) dims.push_back(c.data[0]);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{4, 6, 8});
}

TEST_CASE("census agrees with the Bass classification: isotypic n=3,4") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}}) {
        LocalOrderModel a = tensor_local_order(n, p, 4);
        OverorderChain ch = overorder_chain(a);
        size_t predicted = bass_lattice_classes(ch, {true, 2}, p).count();
        const LocalOrderModel& top = ch.top().order;
        CensusResult census = top_quotient_census(
            a, top, bottom_in_top_frame(ch), uniformizer_power(top, 1),
            "oracle n=" + std::to_string(n) + " p=" + std::to_string(p), false);
        CHECK(census.total == static_cast<int>(predicted));
        CHECK(census.total == 2);
    }
}

TEST_CASE("census agrees with the Bass classification: isotypic n=5,8") {
    struct Case { int n, p; };
    for (auto [n, p] : std::vector<Case>{{5, 5}, {8, 2}}) {
        LocalCommutativeOrder a0 = cyclotomic_local_order(n, p);
        LocalOrderModel a = tensor_local_order(a0, 6);
        OverorderChain ch = overorder_chain(a);
        size_t predicted = bass_lattice_classes(ch, {true, 1}, p).count();
        const LocalOrderModel& top = ch.top().order;
        CensusResult census = top_quotient_census(
            a, top, bottom_in_top_frame(ch), uniformizer_power(top, 2),
            "oracle n=" + std::to_string(n) + " p=" + std::to_string(p), true);
        CHECK(census.block_orbit_counts.size() == 1);  // Mat2-type top: one column class
        CHECK(census.total == static_cast<int>(predicted));
        CHECK(census.total == 1);
    }
}

TEST_CASE("census agrees with the Eichler classification: n=12 and the inert factor") {
    // level-2 Eichler order: top of the chain is the level-1 hereditary order
    for (int p : {2, 3}) {
        LocalOrderModel a = tensor_local_order(12, p, 4);
        OverorderChain ch = overorder_chain(a);
        const LocalOrderModel& top = ch.top().order;
        CensusResult census = top_quotient_census(a, top, bottom_in_top_frame(ch),
                                                  uniformizer_power(top, 1),
                                                  "oracle n=12 p=" + std::to_string(p), true);
        CHECK(census.block_orbit_counts.size() == 2);  // two non-isomorphic columns
        CHECK(census.total == 3);
        CHECK(eichler_lattice_classes(2, 1, p).count() == 3);
    }
    // the level-1 order itself (the inert factor of (3,4)): top = bottom
    for (auto [n, p] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}}) {
        LocalOrderModel a = tensor_local_order(n, p, 4);
        RatMat id(a.dim(), RatVec(a.dim(), 0));
        for (int i = 0; i < a.dim(); ++i) id[i][i] = 1;
        CensusResult census = top_quotient_census(a, a, id, uniformizer_power(a, 1),
                                                  "oracle inert n=" + std::to_string(n), true);
        CHECK(census.total == 2);
        CHECK(eichler_lattice_classes(1, 1, p).count() == 2);
    }
}

TEST_CASE("census of the division maximal order: a single class") {
    LocalOrderModel o = local_maximal_order(3, 4);
    RatMat id(4, RatVec(4, 0));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    CensusResult census = top_quotient_census(o, o, id, uniformizer_power(o, 1),
                                              "oracle max division", false);
    CHECK(census.total == 1);
}

TEST_CASE("tensor-route (3,6) census: columns from E x E reproduce 3+3+1+1") {
    // build W = (E x E)/2, extract the two column classes per factor from
    // idempotents, censor the diagonal action on the four pair modules
    int k = 4;
    LocalOrderModel e = tensor_local_order(3, 2, k);
    LocalOrderModel top = product_order_model(e, e, k);
    LocalOrderModel bottom = congruence_order_3_6(k);
    CensusResult direct = census_3_6_at_2(Fq::standard(2, 2));

    // the pair census via the generic driver is not applicable (each Delta
    // mixes one column from each factor), so assemble the blocks here
    const RatMat& frame = *bottom.ambient_frame;

    // W and the images
    Fq f2 = Fq::prime_field(2);
    FqAlgebra w = top.fp_view();  // modulus 2 = p: W = top/2top
    std::vector<std::vector<Fq::elem>> bottom_imgs;
    for (const auto& row : frame) {
        std::vector<Fq::elem> v(top.dim());
        for (int t = 0; t < top.dim(); ++t) {
            Int q = rat_num(row[t]) % 2;
            if (q < 0) q += 2;
            v[t] = static_cast<Fq::elem>(q);
        }
        bottom_imgs.push_back(v);
    }
    // primitive idempotents per factor: compute in each factor's W and embed
    FqAlgebra we = e.fp_view();
    FqMat j = jacobson_radical(we);
    QuotientData qd = quotient_algebra(we, j, "Ebar/J");
    std::vector<std::vector<Fq::elem>> prims;
    for (const auto& idem : idempotents(qd.algebra)) {
        if (qd.algebra.is_zero(idem) || idem == qd.algebra.unit()) continue;
        prims.push_back(idem);
    }
    REQUIRE(prims.size() == 2);  // F_4 x F_4 has exactly two nontrivial idempotents
    // lift in Ebar by the semigroup power
    auto lift_idem = [&](const std::vector<Fq::elem>& ebar) {
        auto x = qd.lift(ebar);
        // powers of x stabilize to an idempotent
        auto cur = x;
        for (int t = 0; t < 64; ++t) {
            if (we.mul(cur, cur) == cur) return cur;
            cur = we.mul(cur, cur);
        }
        throw InternalError("no idempotent power");
    };
    std::vector<std::vector<Fq::elem>> es = {lift_idem(prims[0]), lift_idem(prims[1])};

    // columns of Ebar: basis of Ebar * e
    auto column_of = [&](const std::vector<Fq::elem>& idem) {
        FqMat rows(f2, 0, we.dim());
        for (int i = 0; i < we.dim(); ++i) rows.append_row(we.mul(we.basis_vec(i), idem));
        rows.rref();
        return rows;
    };
    std::vector<FqMat> cols = {column_of(es[0]), column_of(es[1])};
    CHECK(cols[0].rows() == 4);  // F_2-dimension of a column
    CHECK(cols[1].rows() == 4);

    std::vector<int> counts;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            // Delta = col_s (x) col_t inside W = Ebar x Ebar; diagonal action
            int dim = cols[s].rows() + cols[t].rows();
            ModuleAction act{f2, dim, {}};
            ModuleAction fact{f2, dim, {}};
            for (int g = 0; g < we.dim(); ++g) {
                // left mult by basis g on each column, in column coordinates
                auto mk = [&](const FqMat& col) {
                    FqMat m(f2, col.rows(), col.rows());
                    for (int jj = 0; jj < col.rows(); ++jj) {
                        auto img = we.mul(we.basis_vec(g), col.row(jj));
                        // coordinates in the rref basis
                        std::vector<Fq::elem> v = img;
                        std::vector<Fq::elem> cc(col.rows(), 0);
                        for (int i = 0; i < col.rows(); ++i) {
                            int jcol = 0;
                            while (jcol < col.cols() && col.at(i, jcol) == 0) ++jcol;
                            cc[i] = v[jcol];
                            if (v[jcol]) {
                                Fq::elem sc2 = v[jcol];
                                for (int tt = 0; tt < col.cols(); ++tt)
                                    v[tt] = f2.sub(v[tt], f2.mul(sc2, col.at(i, tt)));
                            }
                        }
                        for (int i = 0; i < col.rows(); ++i) m.at(i, jj) = cc[i];
                    }
                    return m;
                };
                FqMat m1 = mk(cols[s]), m2 = mk(cols[t]);
                FqMat zero1(f2, cols[s].rows(), cols[s].rows());
                FqMat zero2(f2, cols[t].rows(), cols[t].rows());
                // diagonal action of Ebar
                FqMat diag(f2, dim, dim);
                for (int i = 0; i < m1.rows(); ++i)
                    for (int jj = 0; jj < m1.cols(); ++jj) diag.at(i, jj) = m1.at(i, jj);
                for (int i = 0; i < m2.rows(); ++i)
                    for (int jj = 0; jj < m2.cols(); ++jj)
                        diag.at(m1.rows() + i, m1.cols() + jj) = m2.at(i, jj);
                act.gens.push_back(diag);
                // factor-wise action for the generation filter
                FqMat left(f2, dim, dim), right(f2, dim, dim);
                for (int i = 0; i < m1.rows(); ++i)
                    for (int jj = 0; jj < m1.cols(); ++jj) left.at(i, jj) = m1.at(i, jj);
                for (int i = 0; i < m2.rows(); ++i)
                    for (int jj = 0; jj < m2.cols(); ++jj)
                        right.at(m1.rows() + i, m1.cols() + jj) = m2.at(i, jj);
                fact.gens.push_back(left);
                fact.gens.push_back(right);
            }
            auto subs = enumerate_submodules(act);
            std::vector<FqMat> generating;
            for (const auto& ss : subs) {
                std::vector<std::vector<Fq::elem>> seeds;
                for (int i = 0; i < ss.rows(); ++i) seeds.push_back(ss.row(i));
                if (submodule_closure(fact, seeds).rows() == dim) generating.push_back(ss);
            }
            // scalars: center of Ebar acting per factor (units only)
            // the center of the trivial extension is F_4
            std::vector<FqMat> group;
            // center basis: solve for elements commuting with all gens
            // use 1 and the lift of a central unit: scalars act as w-mult;
            // the center of Ebar is spanned by 1 and zeta (the F_4 scalar)
            // find it by brute force over Ebar (256 elements)
            std::vector<std::vector<Fq::elem>> center;
            std::vector<Fq::elem> cand(we.dim(), 0);
            while (true) {
                bool central = true;
                for (int i = 0; i < we.dim() && central; ++i)
                    central = we.commutes(cand, we.basis_vec(i));
                if (central && we.try_inverse(cand)) center.push_back(cand);
                int i = 0;
                while (i < we.dim() && cand[i] == 1) cand[i++] = 0;
                if (i == we.dim()) break;
                ++cand[i];
            }
            CHECK(center.size() == 3);  // F_4^x
            for (const auto& u1 : center)
                for (const auto& u2 : center) {
                    auto mk_mult = [&](const FqMat& col, const std::vector<Fq::elem>& u) {
                        FqMat m(f2, col.rows(), col.rows());
                        for (int jj = 0; jj < col.rows(); ++jj) {
                            auto img = we.mul(u, col.row(jj));
                            std::vector<Fq::elem> v = img;
                            std::vector<Fq::elem> cc(col.rows(), 0);
                            for (int i = 0; i < col.rows(); ++i) {
                                int jcol = 0;
                                while (jcol < col.cols() && col.at(i, jcol) == 0) ++jcol;
                                cc[i] = v[jcol];
                                if (v[jcol]) {
                                    Fq::elem sc2 = v[jcol];
                                    for (int tt = 0; tt < col.cols(); ++tt)
                                        v[tt] = f2.sub(v[tt], f2.mul(sc2, col.at(i, tt)));
                                }
                            }
                            for (int i = 0; i < col.rows(); ++i) m.at(i, jj) = cc[i];
                        }
                        return m;
                    };
                    FqMat m1 = mk_mult(cols[s], u1), m2 = mk_mult(cols[t], u2);
                    FqMat g(f2, dim, dim);
                    for (int i = 0; i < m1.rows(); ++i)
                        for (int jj = 0; jj < m1.cols(); ++jj) g.at(i, jj) = m1.at(i, jj);
                    for (int i = 0; i < m2.rows(); ++i)
                        for (int jj = 0; jj < m2.cols(); ++jj)
                            g.at(m1.rows() + i, m1.cols() + jj) = m2.at(i, jj);
                    group.push_back(g);
                }
            auto orb = orbit_classes(generating, group, act);
            counts.push_back(static_cast<int>(orb.orbits.size()));
        }
    std::sort(counts.begin(), counts.end(), std::greater<int>());
    std::vector<int> expect = direct.block_orbit_counts;
    std::sort(expect.begin(), expect.end(), std::greater<int>());
    CHECK(counts == expect);
    CHECK(counts == std::vector<int>{3, 3, 1, 1});
}

TEST_CASE("endomorphism descriptors") {
    CensusResult r = census_2_2p(3, Fq::standard(3, 2));
    bool saw_product = false, saw_congruence = false;
    for (const auto& c : r.classes) {
        auto d = endomorphism_order(c, {2, 6}, 3);
        if (d.kind == EndoKind::MaximalProduct) saw_product = true;
        if (d.kind == EndoKind::CongruenceModP) saw_congruence = true;
    }
    CHECK(saw_product);
    CHECK(saw_congruence);
    CHECK(gamma_endomorphisms_are_congruence(2));
    CHECK(gamma_endomorphisms_are_congruence(3));
}

TEST_CASE("determinants of local units fill the center units (n = 3, 4)") {
    CHECK(local_unit_determinants_surject(tensor_local_order(4, 2, 4)));
    CHECK(local_unit_determinants_surject(tensor_local_order(3, 3, 4)));
}
