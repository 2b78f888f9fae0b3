#include "quatlat/lattice_classes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "quatlat/errors.hpp"
#include "quatlat/finite_models.hpp"
#include "quatlat/units_finite.hpp"

namespace quatlat {

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

LocalClassList eichler_lattice_classes(int level, int multiplicity, int ell) {
    if (level < 0 || multiplicity < 1)
        throw UsageError("eichler_lattice_classes: need level >= 0 and multiplicity >= 1");
    LocalClassList out;
    out.case_id = "Eichler level " + std::to_string(level) + ", u = " + std::to_string(multiplicity);
    // non-decreasing tuples 0 <= e_1 <= ... <= e_u <= level
    std::vector<int> tuple(multiplicity, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == multiplicity) {
            LatticeClassLabel l;
            l.kind = LatticeKind::Column;
            l.data = tuple;
            l.name = "column(" + join_ints(tuple) + ")";
            l.prime = ell;
            out.classes.push_back(l);
            return;
        }
        for (int e = lo; e <= level; ++e) {
            tuple[pos] = e;
            rec(pos + 1, e);
        }
    };
    rec(0, 0);
    // count = C(u + level, u)
    uint64_t expect = 1;
    for (int i = 1; i <= multiplicity; ++i)
        expect = expect * (level + i) / i;
    if (out.classes.size() != expect)
        throw InternalError("eichler_lattice_classes: count mismatch");
    return out;
}

LocalClassList bass_lattice_classes(const OverorderChain& chain, BassModuleShape shape, int ell) {
    const ChainLink& bottom = chain.links.front();
    if (!bottom.eichler || (*bottom.eichler != -1 && *bottom.eichler != 0))
        throw UsageError("bass_lattice_classes: Eichler invariant must be -1 or 0 (use the Eichler "
                         "classification otherwise)");
    int e = *bottom.eichler;
    int m = static_cast<int>(chain.length()) - 1;
    LocalClassList out;
    out.case_id = std::string("Bass e=") + std::to_string(e) + ", m=" + std::to_string(m) +
                  (shape.split ? ", split u=" : ", division r=") + std::to_string(shape.count);
    if (!shape.split) {
        // direct sums of chain orders M^i, multiplicities t_i with sum = r
        std::vector<int> t(m + 1, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == m) {
                t[m] = left;
                LatticeClassLabel l;
                l.kind = LatticeKind::ChainOrder;
                l.data = t;
                l.name = "sum M^i x (" + join_ints(t) + ")";
                l.prime = ell;
                out.classes.push_back(l);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                t[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, shape.count);
        return out;
    }
    // split: columns + chain orders M^0..M^{m-1}; each M^i eats 2 column slots
    int u = shape.count;
    std::vector<int> t(std::max(m, 0), 0);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == m) {
            int rest = u - used;  // distributed among the column types
            if (rest < 0) return;
            if (e == -1) {
                // s = rest copies of the full column
                LatticeClassLabel l;
                l.kind = LatticeKind::Explicit;
                l.data = t;
                l.data.push_back(rest);
                std::string tn = m > 0 ? "t=(" + join_ints(t) + "), " : "";
                l.name = tn + "s=" + std::to_string(rest);
                l.prime = ell;
                out.classes.push_back(l);
            } else {
                for (int r = 0; r <= rest; ++r) {
                    LatticeClassLabel l;
                    l.kind = LatticeKind::Explicit;
                    l.data = t;
                    l.data.push_back(r);
                    l.data.push_back(rest - r);
                    std::string tn = m > 0 ? "t=(" + join_ints(t) + "), " : "";
                    l.name = tn + "r=" + std::to_string(r) + ", s=" + std::to_string(rest - r);
                    l.prime = ell;
                    out.classes.push_back(l);
                }
            }
            return;
        }
        for (int v = 0; 2 * v <= u - used; ++v) {
            t[pos] = v;
            rec(pos + 1, used + 2 * v);
        }
    };
    rec(0, 0);
    return out;
}

LocalClassList commutative_lattice_classes(const LocalOrderModel& order, int ell) {
    auto overorders = all_overorders(order);
    LocalClassList out;
    out.case_id = order.provenance() + " lattice classes";
    for (size_t i = 0; i < overorders.size(); ++i) {
        LatticeClassLabel l;
        l.kind = LatticeKind::ChainOrder;
        l.data = {static_cast<int>(i)};
        l.name = i == 0 ? "the order itself"
                        : (i + 1 == overorders.size() && overorders.size() > 1 ? "maximal overorder"
                                                                               : "overorder " + std::to_string(i));
        l.prime = ell;
        out.classes.push_back(l);
    }
    return out;
}

LocalOrderModel product_order_model(const LocalOrderModel& a, const LocalOrderModel& b, int k) {
    int da = a.dim(), db = b.dim(), n = da + db;
    std::vector<Int> sc(static_cast<size_t>(n) * n * n, 0);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int l = 0; l < da; ++l)
                sc[(static_cast<size_t>(i) * n + j) * n + l] =
                    a.constants()[(static_cast<size_t>(i) * da + j) * da + l];
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int l = 0; l < db; ++l)
                sc[(static_cast<size_t>(da + i) * n + (da + j)) * n + (da + l)] =
                    b.constants()[(static_cast<size_t>(i) * db + j) * db + l];
    IntVec unit(n, 0);
    for (int i = 0; i < da; ++i) unit[i] = a.unit()[i];
    for (int i = 0; i < db; ++i) unit[da + i] = b.unit()[i];
    return LocalOrderModel(a.p(), k, n, std::move(sc), std::move(unit),
                           a.provenance() + " x " + b.provenance());
}

// ---------- the generic census over a top order ----------

namespace {

// W = top / (m * top) as an F_p-algebra with projection and lift
struct TopQuotient {
    FqAlgebra algebra;
    std::function<std::vector<Fq::elem>(const IntVec&)> project;   // top coords -> W coords
    int dim;
};

TopQuotient build_top_quotient(const LocalOrderModel& top, const IntVec& modulus) {
    int p = top.p(), d = top.dim();
    Fq fp = Fq::prime_field(p);
    // verify the modulus is central
    for (int j = 0; j < d; ++j) {
        IntVec e(d, 0);
        e[j] = 1;
        if (top.mul_int(modulus, e) != top.mul_int(e, modulus))
            throw StructuralError(top.provenance() + ": census modulus is not central");
    }
    // rows of m * e_j, the sublattice m*top
    IntMat mrows(d, IntVec(d));
    for (int j = 0; j < d; ++j) {
        IntVec e(d, 0);
        e[j] = 1;
        mrows[j] = top.mul_int(modulus, e);
    }
    // p * top must lie inside m * top so the quotient is an F_p-space
    RatMat mrat = to_rat(mrows);
    for (int j = 0; j < d; ++j) {
        RatVec pe(d, 0);
        pe[j] = p;
        for (const Rat& c : solve_left(mrat, pe))
            if (!is_integer(c))
                throw StructuralError(top.provenance() + ": p*top not inside m*top, not an F_p quotient");
    }
    FqMat u(fp, 0, d);
    for (int j = 0; j < d; ++j) {
        std::vector<Fq::elem> row(d);
        for (int t = 0; t < d; ++t) {
            Int v = mrows[j][t] % p;
            if (v < 0) v += p;
            row[t] = static_cast<Fq::elem>(v);
        }
        u.append_row(row);
    }
    u.rref();
    std::vector<int> pivots;
    std::vector<bool> is_pivot(d, false);
    for (int i = 0; i < u.rows(); ++i) {
        int j = 0;
        while (u.at(i, j) == 0) ++j;
        pivots.push_back(j);
        is_pivot[j] = true;
    }
    std::vector<int> rep_cols;
    for (int c = 0; c < d; ++c)
        if (!is_pivot[c]) rep_cols.push_back(c);
    int dim_w = static_cast<int>(rep_cols.size());

    FqMat u_copy = u;
    Fq fp_copy = fp;
    auto project = [u_copy, rep_cols, d, fp_copy, p](const IntVec& x) {
        std::vector<Fq::elem> v(d);
        for (int t = 0; t < d; ++t) {
            Int q = x[t] % p;
            if (q < 0) q += p;
            v[t] = static_cast<Fq::elem>(q);
        }
        for (int i = 0; i < u_copy.rows(); ++i) {
            int j = 0;
            while (u_copy.at(i, j) == 0) ++j;
            Fq::elem c = v[j];
            if (!c) continue;
            for (int t = 0; t < d; ++t) v[t] = fp_copy.sub(v[t], fp_copy.mul(c, u_copy.at(i, t)));
        }
        std::vector<Fq::elem> r(rep_cols.size());
        for (size_t t = 0; t < rep_cols.size(); ++t) r[t] = v[rep_cols[t]];
        return r;
    };

    // algebra structure on the complement coordinates
    std::vector<Fq::elem> sc(static_cast<size_t>(dim_w) * dim_w * dim_w, 0);
    for (int i = 0; i < dim_w; ++i)
        for (int j = 0; j < dim_w; ++j) {
            IntVec a(d, 0), b(d, 0);
            a[rep_cols[i]] = 1;
            b[rep_cols[j]] = 1;
            auto prod = project(top.mul_int(a, b));
            for (int l = 0; l < dim_w; ++l)
                sc[(static_cast<size_t>(i) * dim_w + j) * dim_w + l] = prod[l];
        }
    auto unit = project(top.unit());
    FqAlgebra w(fp, dim_w, std::move(sc), std::move(unit), top.provenance() + "/m");
    return {std::move(w), project, dim_w};
}

// smallest idempotent power of x in a finite ring (the unique idempotent of
// the cyclic multiplicative semigroup generated by x)
std::vector<Fq::elem> semigroup_idempotent(const FqAlgebra& w, const std::vector<Fq::elem>& x) {
    std::map<std::vector<Fq::elem>, int> seen;
    std::vector<Fq::elem> cur = x;
    int step = 1;
    while (!seen.count(cur)) {
        seen[cur] = step;
        cur = w.mul(cur, x);
        ++step;
    }
    int tail = seen[cur], cycle = step - tail;
    int target = ((tail + cycle - 1) / cycle) * cycle;  // multiple of cycle, >= tail
    std::vector<Fq::elem> e = x;
    for (int i = 1; i < target; ++i) e = w.mul(e, x);
    if (w.mul(e, e) != e) throw InternalError("semigroup_idempotent: power is not idempotent");
    return e;
}

// subspace machinery: rows span, restriction of an ambient endomorphism
FqMat row_span(const Fq& f, const std::vector<std::vector<Fq::elem>>& rows, int dim) {
    FqMat m(f, 0, dim);
    for (const auto& r : rows) m.append_row(r);
    m.rref();
    return m;
}

std::vector<Fq::elem> coords_in_rref(const FqMat& basis, std::vector<Fq::elem> v) {
    const Fq& f = basis.field();
    std::vector<Fq::elem> c(basis.rows(), 0);
    for (int i = 0; i < basis.rows(); ++i) {
        int j = 0;
        while (j < basis.cols() && basis.at(i, j) == 0) ++j;
        c[i] = v[j];
        if (v[j]) {
            Fq::elem s = v[j];
            for (int t = 0; t < basis.cols(); ++t) v[t] = f.sub(v[t], f.mul(s, basis.at(i, t)));
        }
    }
    for (auto x : v)
        if (x) throw InternalError("coords_in_rref: vector not in subspace");
    return c;
}

// the configuration for one Delta block
struct DeltaBlock {
    FqMat basis;                       // rows: W-coordinates of a basis of Delta
    std::vector<FqMat> bottom_gens;    // restricted action of the bottom order
    std::vector<FqMat> top_gens;       // restricted action of the top order
    std::vector<FqMat> equivalence;    // restricted unit action (right mults)
    std::string name;
};

FqMat restrict_endo(const FqMat& delta, const std::function<std::vector<Fq::elem>(const std::vector<Fq::elem>&)>& endo) {
    const Fq& f = delta.field();
    FqMat m(f, delta.rows(), delta.rows());
    for (int j = 0; j < delta.rows(); ++j) {
        auto img = endo(delta.row(j));
        auto c = coords_in_rref(delta, img);
        for (int i = 0; i < delta.rows(); ++i) m.at(i, j) = c[i];
    }
    return m;
}

struct BlockCensusResult {
    int orbit_count = 0;
    std::vector<int> member_dims;
    std::vector<FqMat> reps;
    int member_count = 0;
};

BlockCensusResult census_block(const DeltaBlock& blk) {
    const Fq& f = blk.basis.field();
    int dim = blk.basis.rows();
    ModuleAction bottom_action{f, dim, blk.bottom_gens};
    ModuleAction top_action{f, dim, blk.top_gens};
    auto generating = enumerate_submodules(bottom_action, top_action);
    auto orb = orbit_classes(generating, blk.equivalence, bottom_action);
    BlockCensusResult r;
    r.orbit_count = static_cast<int>(orb.orbits.size());
    r.member_count = static_cast<int>(generating.size());
    for (const auto& rep : orb.representatives) {
        r.member_dims.push_back(rep.rows());
        r.reps.push_back(rep);
    }
    return r;
}

} // namespace

CensusResult top_quotient_census(const LocalOrderModel& bottom, const LocalOrderModel& top,
                                 const RatMat& bottom_in_top, const IntVec& modulus,
                                 const std::string& case_id, bool split_into_columns) {
    int p = top.p(), d = top.dim();
    if (static_cast<int>(bottom_in_top.size()) != bottom.dim())
        throw StructuralError(case_id + ": bottom frame does not match the bottom order");
    // modulus * top must be inside bottom
    for (int j = 0; j < d; ++j) {
        IntVec e(d, 0);
        e[j] = 1;
        IntVec me = top.mul_int(modulus, e);
        RatVec mer(me.begin(), me.end());
        for (const Rat& c : solve_left(bottom_in_top, mer))
            if (!is_integer(c))
                throw StructuralError(case_id + ": modulus * top is not inside the bottom order");
    }
    TopQuotient tq = build_top_quotient(top, modulus);
    const FqAlgebra& w = tq.algebra;
    const Fq& fp = w.ring();

    // images of the bottom basis in W
    std::vector<std::vector<Fq::elem>> bottom_imgs;
    for (const auto& row : bottom_in_top) {
        IntVec iv(d);
        for (int t = 0; t < d; ++t) {
            if (!is_integer(row[t]))
                throw StructuralError(case_id + ": bottom basis is not integral in top coordinates");
            iv[t] = rat_num(row[t]);
        }
        bottom_imgs.push_back(tq.project(iv));
    }

    auto left_mult = [&w](const std::vector<Fq::elem>& x) {
        return [x, &w](const std::vector<Fq::elem>& v) { return w.mul(x, v); };
    };

    std::vector<DeltaBlock> blocks;
    if (!split_into_columns) {
        DeltaBlock blk;
        blk.basis = FqMat::identity(fp, w.dim());
        for (const auto& b : bottom_imgs) blk.bottom_gens.push_back(restrict_endo(blk.basis, left_mult(b)));
        for (int i = 0; i < w.dim(); ++i)
            blk.top_gens.push_back(restrict_endo(blk.basis, left_mult(w.basis_vec(i))));
        for (const auto& u : unit_group_of_finite_algebra(w)) {
            auto rm = [u, &w](const std::vector<Fq::elem>& v) { return w.mul(v, u); };
            blk.equivalence.push_back(restrict_endo(blk.basis, rm));
        }
        blk.name = "regular";
        blocks.push_back(std::move(blk));
    } else {
        // primitive idempotents grouped by their class in W/J(W)
        FqMat j = jacobson_radical(w);
        QuotientData qd = quotient_algebra(w, j, w.name() + "/J");
        // first the primitive idempotents of the semisimple quotient
        std::vector<std::vector<Fq::elem>> simple_idems;
        {
            auto idems = idempotents(qd.algebra);
            // primitive: no nontrivial idempotent below (e' with e'e = ee' = e' != 0, e)
            for (const auto& e : idems) {
                if (qd.algebra.is_zero(e)) continue;
                bool primitive = true;
                for (const auto& e2 : idems) {
                    if (qd.algebra.is_zero(e2) || e2 == e) continue;
                    if (qd.algebra.mul(e, e2) == e2 && qd.algebra.mul(e2, e) == e2) {
                        primitive = false;
                        break;
                    }
                }
                if (primitive) simple_idems.push_back(e);
            }
        }
        // group by conjugacy: in our (commutative or Mat_2) quotients, two
        // primitive idempotents are conjugate iff the modules S e have equal
        // dimension and e' is reachable; for commutative S distinct
        // idempotents are non-conjugate, for Mat_2-type all are conjugate.
        bool commutative = true;
        for (int i = 0; i < qd.algebra.dim() && commutative; ++i)
            for (int l = 0; l < qd.algebra.dim() && commutative; ++l)
                commutative = qd.algebra.commutes(qd.algebra.basis_vec(i), qd.algebra.basis_vec(l));
        std::vector<std::vector<Fq::elem>> class_reps;
        if (commutative) {
            class_reps = simple_idems;
        } else {
            std::sort(simple_idems.begin(), simple_idems.end());
            class_reps = {simple_idems.front()};
        }
        std::sort(class_reps.begin(), class_reps.end());

        for (const auto& ebar : class_reps) {
            // lift to an idempotent of W via the semigroup power trick
            auto e = semigroup_idempotent(w, qd.lift(ebar));
            if (qd.project(e) != ebar)
                throw InternalError(case_id + ": idempotent lift changed the residue class");
            // Delta = W e
            std::vector<std::vector<Fq::elem>> rows;
            for (int i = 0; i < w.dim(); ++i) rows.push_back(w.mul(w.basis_vec(i), e));
            DeltaBlock blk;
            blk.basis = row_span(fp, rows, w.dim());
            for (const auto& b : bottom_imgs)
                blk.bottom_gens.push_back(restrict_endo(blk.basis, left_mult(b)));
            for (int i = 0; i < w.dim(); ++i)
                blk.top_gens.push_back(restrict_endo(blk.basis, left_mult(w.basis_vec(i))));
            // units of eWe acting on the right
            std::vector<std::vector<Fq::elem>> ewe_rows;
            for (int i = 0; i < w.dim(); ++i) ewe_rows.push_back(w.mul(e, w.mul(w.basis_vec(i), e)));
            FqMat ewe = row_span(fp, ewe_rows, w.dim());
            std::vector<Fq::elem> coeffs(ewe.rows(), 0);
            while (true) {
                int i = 0;
                while (i < ewe.rows() && coeffs[i] == fp.q() - 1) coeffs[i++] = 0;
                if (i == ewe.rows()) break;
                ++coeffs[i];
                std::vector<Fq::elem> u(w.dim(), 0);
                for (int t = 0; t < ewe.rows(); ++t) {
                    if (!coeffs[t]) continue;
                    for (int cc = 0; cc < w.dim(); ++cc)
                        u[cc] = fp.add(u[cc], fp.mul(coeffs[t], ewe.at(t, cc)));
                }
                // u invertible in eWe: u * v = v * u = e for some v; test via
                // the semigroup power being e
                auto pe = semigroup_idempotent(w, u);
                if (pe != e) continue;
                auto rm = [u, &w](const std::vector<Fq::elem>& v) { return w.mul(v, u); };
                blk.equivalence.push_back(restrict_endo(blk.basis, rm));
            }
            blk.name = "column";
            blocks.push_back(std::move(blk));
        }
    }

    CensusResult res;
    res.case_id = case_id;
    for (const auto& blk : blocks) {
        auto br = census_block(blk);
        res.block_orbit_counts.push_back(br.orbit_count);
        res.member_counts.push_back(br.member_count);
        res.total += br.orbit_count;
        for (size_t i = 0; i < br.reps.size(); ++i) {
            LatticeClassLabel l;
            l.kind = LatticeKind::Explicit;
            l.data = {br.member_dims[i]};
            l.name = blk.name + " class, F_p-dim " + std::to_string(br.member_dims[i]);
            l.prime = p;
            res.classes.push_back(l);
        }
    }
    return res;
}

// ---------- the explicit census cases ----------

namespace {

// column modules of the trivial extension, as 2x2 matrix actions over F_4
std::vector<FqMat> column_gens(const Fq& f4, bool dagger) {
    auto mat = [&](std::array<std::array<int, 2>, 2> rows) {
        FqMat g(f4, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.at(i, j) = rows[i][j] ? f4.one() : 0;
        return g;
    };
    if (dagger)
        return {mat({{{1, 0}, {0, 0}}}), mat({{{0, 0}, {0, 0}}}), mat({{{0, 0}, {1, 0}}}),
                mat({{{0, 0}, {0, 1}}})};
    return {mat({{{1, 0}, {0, 0}}}), mat({{{0, 1}, {0, 0}}}), mat({{{0, 0}, {0, 0}}}),
            mat({{{0, 0}, {0, 1}}})};
}

FqMat block_diag(const Fq& f, const FqMat& a, const FqMat& b) {
    FqMat m(f, a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

bool projections_surjective(const FqMat& sub, int split, int dim) {
    const Fq& f = sub.field();
    FqMat p1(f, 0, split), p2(f, 0, dim - split);
    for (int i = 0; i < sub.rows(); ++i) {
        auto r = sub.row(i);
        p1.append_row(std::vector<Fq::elem>(r.begin(), r.begin() + split));
        p2.append_row(std::vector<Fq::elem>(r.begin() + split, r.end()));
    }
    return p1.rref() == split && p2.rref() == dim - split;
}

} // namespace

CensusResult census_3_6_at_2(const Fq& f4) {
    CensusResult res;
    res.case_id = "(3,6) at p=2";
    struct Block {
        bool first_dagger, second_dagger;
        const char* name;
    };
    std::vector<Block> blocks = {{true, true, "dagger x dagger"},
                                 {false, false, "ddagger x ddagger"},
                                 {true, false, "dagger x ddagger"},
                                 {false, true, "ddagger x dagger"}};
    for (const auto& b : blocks) {
        auto g1 = column_gens(f4, b.first_dagger);
        auto g2 = column_gens(f4, b.second_dagger);
        ModuleAction diag{f4, 4, {}};
        for (int i = 0; i < 4; ++i) diag.gens.push_back(block_diag(f4, g1[i], g2[i]));
        // generation: both projections surjective, cross-checked against the
        // span under the factor-wise action
        ModuleAction big{f4, 4, {}};
        FqMat zero2(f4, 2, 2);
        for (int i = 0; i < 4; ++i) {
            big.gens.push_back(block_diag(f4, g1[i], zero2));
            big.gens.push_back(block_diag(f4, zero2, g2[i]));
        }
        auto subs = enumerate_submodules(diag);
        std::vector<FqMat> generating;
        for (const auto& s : subs) {
            bool surj = projections_surjective(s, 2, 4);
            std::vector<std::vector<Fq::elem>> seeds;
            for (int i = 0; i < s.rows(); ++i) seeds.push_back(s.row(i));
            bool spans = submodule_closure(big, seeds).rows() == 4;
            if (surj != spans)
                throw InternalError("(3,6) census: projection criterion disagrees with the span");
            if (surj) generating.push_back(s);
        }
        // equivalence: F_4^x x F_4^x scalar pairs
        std::vector<FqMat> group;
        for (Fq::elem u1 : f4.units())
            for (Fq::elem u2 : f4.units()) {
                FqMat g(f4, 4, 4);
                g.at(0, 0) = u1;
                g.at(1, 1) = u1;
                g.at(2, 2) = u2;
                g.at(3, 3) = u2;
                group.push_back(g);
            }
        auto orb = orbit_classes(generating, group, diag);
        res.block_orbit_counts.push_back(static_cast<int>(orb.orbits.size()));
        res.member_counts.push_back(static_cast<int>(generating.size()));
        res.total += static_cast<int>(orb.orbits.size());
        for (const auto& rep : orb.representatives) {
            LatticeClassLabel l;
            l.kind = LatticeKind::Explicit;
            l.data = {rep.rows()};
            l.prime = 2;
            switch (rep.rows()) {
                case 2: l.name = std::string(b.name) + ": graph"; break;
                case 3: l.name = std::string(b.name) + ": index-1 congruence"; break;
                default: l.name = std::string(b.name) + ": ambient"; break;
            }
            res.classes.push_back(l);
        }
        // dimension floor: every retained submodule has F_4-dimension >= 2
        for (const auto& s : generating)
            if (s.rows() < 2) throw InternalError("(3,6) census: dimension floor violated");
    }
    return res;
}

int equivariant_isomorphisms_between_columns(const Fq& f4) {
    auto g1 = column_gens(f4, true), g2 = column_gens(f4, false);
    int count = 0;
    // all F_4-linear maps phi: column_dagger -> column_ddagger
    for (Fq::elem a : f4.all_elements())
        for (Fq::elem b : f4.all_elements())
            for (Fq::elem c : f4.all_elements())
                for (Fq::elem d : f4.all_elements()) {
                    if (f4.sub(f4.mul(a, d), f4.mul(b, c)) == 0) continue;  // not invertible
                    FqMat phi(f4, 2, 2);
                    phi.at(0, 0) = a;
                    phi.at(0, 1) = b;
                    phi.at(1, 0) = c;
                    phi.at(1, 1) = d;
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i)
                        ok = phi.mul(g1[i]) == g2[i].mul(phi);
                    if (ok) ++count;
                }
    return count;
}

namespace {

// minimal polynomial data of the presentation's second basis vector:
// theta^2 = -c0 - c1*theta with c0, c1 in F_p (solved against (1, theta))
struct QuadPresentation {
    int c0, c1;
    Fq::elem theta;
};

QuadPresentation quad_presentation(const Fq& fp2) {
    int p = fp2.p();
    Fq::elem theta = fp2.from_coords(0, 1);
    bool in_prime = false;
    for (int c = 0; c < p; ++c)
        if (theta == fp2.scalar(c)) in_prime = true;
    if (in_prime)
        throw StructuralError("quad_presentation: second basis vector lies in the prime field");
    Fq::elem th2 = fp2.mul(theta, theta);
    // th2 = alpha + beta * theta over F_p
    for (int alpha = 0; alpha < p; ++alpha)
        for (int beta = 0; beta < p; ++beta)
            if (fp2.add(fp2.scalar(alpha), fp2.mul(fp2.scalar(beta), theta)) == th2)
                return {(p - alpha) % p, (p - beta) % p, theta};
    throw InternalError("quad_presentation: no relation found");
}

} // namespace

CensusResult census_2_2p(int p, const Fq& fp2) {
    if (p != 2 && p != 3) throw UsageError("census_2_2p: p must be 2 or 3");
    Fq fp = Fq::prime_field(p);
    if (fp2.p() != p || fp2.degree() != 2)
        throw UsageError("census_2_2p: field must be F_{p^2}");
    // Delta_bar = Obar (dim 4) + F_{p^2} (dim 2) over F_p; Obar is rebuilt
    // from the presentation's quadratic relation so both factors share it
    int dim = 6;
    QuadPresentation qp = quad_presentation(fp2);
    int c0 = qp.c0, c1 = qp.c1;
    FqAlgebra obar = residue_quaternion_algebra(fp, c0, c1, "Obar_" + std::to_string(p));

    ModuleAction act{fp, dim, {}};
    std::vector<FqMat> obar_left;
    for (int i = 0; i < 4; ++i) {
        auto rows = obar.left_mult_rows(obar.basis_vec(i));
        FqMat l4(fp, 4, 4);
        for (int jj = 0; jj < 4; ++jj)
            for (int ii = 0; ii < 4; ++ii) l4.at(ii, jj) = rows[jj][ii];
        obar_left.push_back(l4);
    }
    // image of the basis in F_{p^2} = Obar/J: 1 -> 1, w -> theta, h, wh -> 0
    std::vector<Fq::elem> residue_img = {fp2.one(), qp.theta, 0, 0};
    auto fq2_mult_matrix = [&](Fq::elem x) {
        FqMat m(fp, 2, 2);
        for (int j = 0; j < 2; ++j) {
            auto prod = fp2.mul(x, fp2.from_coords(j == 0, j == 1));
            auto cc = fp2.coords(prod);
            m.at(0, j) = static_cast<Fq::elem>(cc[0]);
            m.at(1, j) = static_cast<Fq::elem>(cc[1]);
        }
        return m;
    };
    for (int i = 0; i < 4; ++i)
        act.gens.push_back(block_diag(fp, obar_left[i], fq2_mult_matrix(residue_img[i])));

    // generation filter: both projections surjective = span under the
    // factor-wise action of Cbar = Obar x Obar
    ModuleAction big{fp, dim, {}};
    FqMat zero4(fp, 4, 4), zero2(fp, 2, 2);
    for (int i = 0; i < 4; ++i) {
        big.gens.push_back(block_diag(fp, obar_left[i], zero2));
        big.gens.push_back(block_diag(fp, zero4, fq2_mult_matrix(residue_img[i])));
    }
    auto subs = enumerate_submodules(act);
    std::vector<FqMat> generating;
    for (const auto& s : subs) {
        bool surj = projections_surjective(s, 4, 6);
        std::vector<std::vector<Fq::elem>> seeds;
        for (int i = 0; i < s.rows(); ++i) seeds.push_back(s.row(i));
        bool spans = submodule_closure(big, seeds).rows() == 6;
        if (surj != spans)
            throw InternalError("(2,2p) census: projection criterion disagrees with the span");
        if (surj) generating.push_back(s);
    }
    // equivalence: right multiplication by Obar units on the first factor,
    // F_p^x scalars on the second
    std::vector<FqMat> group;
    auto obar_units = unit_group_of_finite_algebra(obar);
    for (const auto& u : obar_units) {
        auto rows = obar.right_mult_rows(u);
        FqMat r4(fp, 4, 4);
        for (int jj = 0; jj < 4; ++jj)
            for (int ii = 0; ii < 4; ++ii) r4.at(ii, jj) = rows[jj][ii];
        for (int t = 1; t < p; ++t) {
            FqMat s2(fp, 2, 2);
            s2.at(0, 0) = fp.scalar(t);
            s2.at(1, 1) = fp.scalar(t);
            group.push_back(block_diag(fp, r4, s2));
        }
    }
    ModuleAction ambient{fp, dim, {}};
    auto orb = orbit_classes(generating, group, ambient);
    CensusResult res;
    res.case_id = "(2," + std::to_string(2 * p) + ") at p=" + std::to_string(p);
    res.block_orbit_counts.push_back(static_cast<int>(orb.orbits.size()));
    res.member_counts.push_back(static_cast<int>(generating.size()));
    res.total = static_cast<int>(orb.orbits.size());
    for (const auto& rep : orb.representatives) {
        LatticeClassLabel l;
        l.kind = LatticeKind::Explicit;
        l.data = {rep.rows()};
        l.prime = p;
        l.name = rep.rows() == 6 ? "ambient (Delta)" : "graph a = c (Gamma)";
        res.classes.push_back(l);
        // dimension floor over F_{p^2}
        if (rep.rows() % 2 != 0 && rep.rows() != 6)
            throw InternalError("(2,2p) census: representative is not an F_{p^2}-subspace");
    }
    for (const auto& s : generating)
        if (s.rows() < 4) throw InternalError("(2,2p) census: dimension floor violated");
    return res;
}

CensusResult census_1_2() {
    int k = 4;
    LocalOrderModel bottom = congruence_order_1_2(k);
    LocalOrderModel o2 = local_maximal_order(2, k);
    LocalOrderModel top = product_order_model(o2, o2, k);
    RatMat frame = *bottom.ambient_frame;
    IntVec two(top.dim(), 0);
    for (int i = 0; i < top.dim(); ++i) two[i] = 2 * top.unit()[i];
    CensusResult res = top_quotient_census(bottom, top, frame, two, "(1,2) at p=2", false);
    // name the three classes by the overorder they lift to
    for (auto& cl : res.classes) {
        if (cl.data[0] == 4) cl.name = "the congruence order itself";
        else if (cl.data[0] == 6) cl.name = "middle overorder R";
        else if (cl.data[0] == 8) cl.name = "maximal O x O";
    }
    return res;
}

CensusResult quotient_orbit_classification(std::pair<int, int> nbar, int p) {
    if (nbar == std::make_pair(1, 2) && p == 2) return census_1_2();
    if (nbar == std::make_pair(3, 6) && p == 2) return census_3_6_at_2(Fq::standard(2, 2));
    if (nbar == std::make_pair(2, 4) && p == 2) return census_2_2p(2, Fq::standard(2, 2));
    if (nbar == std::make_pair(2, 6) && p == 3) return census_2_2p(3, Fq::standard(3, 2));
    throw UsageError("quotient_orbit_classification: unsupported case (" + std::to_string(nbar.first) +
                     "," + std::to_string(nbar.second) + ") at p=" + std::to_string(p));
}

EndoDescriptor endomorphism_order(const LatticeClassLabel& label, std::pair<int, int> nbar, int p) {
    if (nbar == std::make_pair(2, 4) || nbar == std::make_pair(2, 6)) {
        if (label.data[0] == 6) return {EndoKind::MaximalProduct, "O x A_" + std::to_string(nbar.second)};
        return {EndoKind::CongruenceModP, "R = {(x,y): x = y mod P}"};
    }
    if (nbar == std::make_pair(1, 2)) {
        if (label.data[0] == 4) return {EndoKind::SelfSubdirect, "A_(1,2) x O"};
        if (label.data[0] == 6) return {EndoKind::MiddleSubdirect, "R = {(x,y): x = y mod P}"};
        return {EndoKind::MaximalProduct, "O x O"};
    }
    if (nbar == std::make_pair(3, 6))
        return {EndoKind::CommutativeOverorder, label.data[0] <= 2 ? "A_(3,6)" : "O_K"};
    if (nbar.second == 0) {
        // isotypic: n in {3,4} have the det argument, {5,8,12} the cyclotomic
        // maximal order
        if (nbar.first == 3 || nbar.first == 4)
            return {EndoKind::LocalBassSelf, "A_" + std::to_string(nbar.first) + " (det argument)"};
        return {EndoKind::CyclotomicMaximal, "A_" + std::to_string(nbar.first)};
    }
    (void)p;
    throw UsageError("endomorphism_order: unsupported case");
}

bool gamma_endomorphisms_are_congruence(int p) {
    Fq fp = Fq::prime_field(p);
    Fq fp2 = Fq::standard(p, 2);
    QuadPresentation qp = quad_presentation(fp2);
    FqAlgebra obar = residue_quaternion_algebra(fp, qp.c0, qp.c1, "Obar");
    // Gamma_bar = {(a + b eta, a)} in Obar x F_{p^2} coordinates
    FqMat gamma(fp, 0, 6);
    gamma.append_row({fp.one(), 0, 0, 0, fp.one(), 0});
    gamma.append_row({0, fp.one(), 0, 0, 0, fp.one()});
    gamma.append_row({0, 0, fp.one(), 0, 0, 0});
    gamma.append_row({0, 0, 0, fp.one(), 0, 0});
    gamma.rref();
    // right action by (x, t): the stabilizer of Gamma must be exactly the
    // congruence pattern x = a + b eta with a in F_p equal to t
    std::vector<Fq::elem> x(4, 0);
    while (true) {
        auto rows = obar.right_mult_rows(x);
        FqMat r4(fp, 4, 4);
        for (int jj = 0; jj < 4; ++jj)
            for (int ii = 0; ii < 4; ++ii) r4.at(ii, jj) = rows[jj][ii];
        for (int t = 0; t < p; ++t) {
            FqMat s2(fp, 2, 2);
            s2.at(0, 0) = fp.scalar(t);
            s2.at(1, 1) = fp.scalar(t);
            FqMat act = block_diag(fp, r4, s2);
            bool stab = true;
            for (int i = 0; i < gamma.rows() && stab; ++i)
                stab = in_row_space(gamma, act.apply(gamma.row(i)));
            // x = x0 + x1 w + (eta part); congruent iff the F_{p^2}-part of x
            // lies in F_p and equals t
            bool congruent = (x[1] == 0) && (x[0] == fp.scalar(t));
            if (stab != congruent) return false;
        }
        int i = 0;
        while (i < 4 && x[i] == fp.q() - 1) x[i++] = 0;
        if (i == 4) break;
        ++x[i];
    }
    return true;
}

namespace {

// solve w * U = b over the ring, U invertible mod p (rows of U = basis)
std::vector<Zpk::elem> solve_left_ring(const Zpk& ring, const std::vector<std::vector<Zpk::elem>>& u,
                                       const std::vector<Zpk::elem>& b) {
    int n = static_cast<int>(u.size());
    std::vector<std::vector<Zpk::elem>> m(n, std::vector<Zpk::elem>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = u[j][i];
        m[i][n] = b[i];
    }
    std::vector<int> pivot_row(n, -1);
    int row = 0;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (ring.is_unit(m[r][col])) { piv = r; break; }
        if (piv < 0) throw StructuralError("solve_left_ring: matrix not invertible mod p");
        std::swap(m[piv], m[row]);
        Zpk::elem d = ring.inv(m[row][col]);
        for (int j = 0; j <= n; ++j) m[row][j] = ring.mul(m[row][j], d);
        for (int r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Zpk::elem f = m[r][col];
            for (int j = 0; j <= n; ++j) m[r][j] = ring.sub(m[r][j], ring.mul(f, m[row][j]));
        }
        pivot_row[col] = row;
        ++row;
    }
    std::vector<Zpk::elem> xx(n);
    for (int col = 0; col < n; ++col) xx[col] = m[pivot_row[col]][n];
    return xx;
}

} // namespace

bool local_unit_determinants_surject(const LocalOrderModel& o) {
    if (!o.center) throw UsageError("local_unit_determinants_surject: needs a field center");
    const CenterDesc& c = *o.center;
    int p = o.p();
    int kchk = p == 2 ? 2 : 1;
    Zpk ring(p, kchk);
    Zpk wide(p, kchk + 1);
    ZpkAlgebra a = o.zpk_view(kchk);
    int dim = o.dim();

    uint64_t total = 1;
    for (int i = 0; i < dim; ++i) {
        total *= static_cast<uint64_t>(ring.modulus());
        if (total > (uint64_t(1) << 22))
            throw ResourceError(o.provenance() + ": det image check too large");
    }

    // O_F-coefficient matrix at the wide precision
    std::vector<std::vector<Zpk::elem>> u;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < c.f; ++i) {
            IntVec prod = o.mul_int(c.basis[i], o.of_basis[j]);
            std::vector<Zpk::elem> row(dim);
            for (int t = 0; t < dim; ++t) row[t] = wide.reduce(prod[t]);
            u.push_back(row);
        }
    auto trd = [&](const IntVec& xv) {
        IntVec tr(c.f, 0);
        for (int j = 0; j < 4; ++j) {
            IntVec prod = o.mul_int(xv, o.of_basis[j]);
            std::vector<Zpk::elem> b(dim);
            for (int t = 0; t < dim; ++t) b[t] = wide.reduce(prod[t]);
            auto w = solve_left_ring(wide, u, b);
            for (int i = 0; i < c.f; ++i)
                tr[i] = wide.add(static_cast<int64_t>(tr[i]),
                                 w[static_cast<size_t>(j) * c.f + i]);
        }
        IntVec half(c.f);
        if (p == 2) {
            for (int i = 0; i < c.f; ++i) {
                if (tr[i] % 2 != 0) throw InternalError("det check: odd trace");
                half[i] = ring.reduce(tr[i] / 2);
            }
        } else {
            Zpk::elem inv2 = ring.inv(2 % ring.modulus());
            for (int i = 0; i < c.f; ++i) half[i] = ring.mul(static_cast<int64_t>(tr[i]), inv2);
        }
        return half;
    };

    auto cmul = [&](const IntVec& xv, const IntVec& yv) {
        IntVec r(c.f, 0);
        for (int i = 0; i < c.f; ++i) {
            if (xv[i] == 0) continue;
            for (int j = 0; j < c.f; ++j) {
                if (yv[j] == 0) continue;
                int64_t s = ring.mul(static_cast<int64_t>(xv[i]), static_cast<int64_t>(yv[j]));
                for (int l = 0; l < c.f; ++l) {
                    const Int& cc = c.sc[(static_cast<size_t>(i) * c.f + j) * c.f + l];
                    if (cc != 0) r[l] = ring.add(static_cast<int64_t>(r[l]), ring.mul(s, ring.reduce(cc)));
                }
            }
        }
        return r;
    };

    // center-coordinate extraction for central elements: solve over the ring
    std::vector<std::vector<Zpk::elem>> cbasis(c.f, std::vector<Zpk::elem>(dim));
    for (int i = 0; i < c.f; ++i)
        for (int t = 0; t < dim; ++t) cbasis[i][t] = ring.reduce(c.basis[i][t]);
    auto center_coords = [&](const IntVec& v) {
        std::vector<std::vector<Zpk::elem>> m(dim, std::vector<Zpk::elem>(c.f + 1));
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < c.f; ++j) m[i][j] = cbasis[j][i];
            m[i][c.f] = ring.reduce(v[i]);
        }
        int row = 0;
        std::vector<int> pivcol(c.f, -1);
        for (int col = 0; col < c.f && row < dim; ++col) {
            int piv = -1;
            for (int r = row; r < dim; ++r)
                if (ring.is_unit(m[r][col])) { piv = r; break; }
            if (piv < 0) throw InternalError("det check: center basis degenerate");
            std::swap(m[piv], m[row]);
            Zpk::elem d = ring.inv(m[row][col]);
            for (int jj = 0; jj <= c.f; ++jj) m[row][jj] = ring.mul(m[row][jj], d);
            for (int r = 0; r < dim; ++r) {
                if (r == row || m[r][col] == 0) continue;
                Zpk::elem f = m[r][col];
                for (int jj = 0; jj <= c.f; ++jj) m[r][jj] = ring.sub(m[r][jj], ring.mul(f, m[row][jj]));
            }
            pivcol[col] = row;
            ++row;
        }
        IntVec z(c.f, 0);
        for (int col = 0; col < c.f; ++col) z[col] = m[pivcol[col]][c.f];
        return z;
    };

    std::set<IntVec> images;
    std::vector<Zpk::elem> x(dim, 0);
    while (true) {
        if (a.try_inverse(x)) {
            IntVec xi(x.begin(), x.end());
            IntVec t_of_x = trd(xi);
            IntVec conj(dim, 0);
            for (int i = 0; i < c.f; ++i)
                if (t_of_x[i] != 0)
                    for (int t = 0; t < dim; ++t) conj[t] += t_of_x[i] * c.basis[i][t];
            for (int t = 0; t < dim; ++t) conj[t] -= xi[t];
            IntVec nx = o.mul_int(xi, conj);
            images.insert(center_coords(nx));
        }
        int i = 0;
        while (i < dim && x[i] == ring.modulus() - 1) x[i++] = 0;
        if (i == dim) break;
        ++x[i];
    }

    std::set<IntVec> center_units;
    std::vector<Zpk::elem> zv(c.f, 0);
    IntVec one(c.f, 0);
    one[0] = 1;
    while (true) {
        IntVec z(zv.begin(), zv.end());
        std::vector<Zpk::elem> y(c.f, 0);
        bool unit = false;
        while (true) {
            IntVec yv(y.begin(), y.end());
            if (cmul(z, yv) == one) { unit = true; break; }
            int i = 0;
            while (i < c.f && y[i] == ring.modulus() - 1) y[i++] = 0;
            if (i == c.f) break;
            ++y[i];
        }
        if (unit) center_units.insert(z);
        int i = 0;
        while (i < c.f && zv[i] == ring.modulus() - 1) zv[i++] = 0;
        if (i == c.f) break;
        ++zv[i];
    }
    return images == center_units;
}

} // namespace quatlat
