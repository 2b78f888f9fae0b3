#include "quatlat/class_numbers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quatlat/errors.hpp"
#include "quatlat/radical.hpp"
#include "quatlat/units_finite.hpp"

namespace quatlat {

Rat h_maximal_quaternion_exact(int64_t p) {
    if (!is_prime_i64(p)) throw UsageError("h_maximal_quaternion: p must be prime");
    Rat h = Rat(p - 1, 12);
    h += Rat(1, 3) * (1 - kronecker(-3, p));
    h += Rat(1, 4) * (1 - kronecker(-4, p));
    return h;
}

Int h_maximal_quaternion(int64_t p) {
    Rat h = h_maximal_quaternion_exact(p);
    if (!is_integer(h))
        throw InternalError("h_maximal_quaternion: non-integral value " + rat_num(h).str() + "/" +
                            rat_den(h).str() + " at p = " + std::to_string(p));
    return rat_num(h);
}

namespace {

// O/pO as an F_p-algebra in the order basis
FqAlgebra order_mod_p(const ZOrder& o, int p) {
    Fq fp = Fq::prime_field(p);
    std::vector<Fq::elem> sc(64);
    for (int t = 0; t < 64; ++t) {
        Int v = o.gamma()[t] % p;
        if (v < 0) v += p;
        sc[t] = static_cast<Fq::elem>(v);
    }
    RatVec one = o.coordinates({{1, 0, 0, 0}});
    std::vector<Fq::elem> unit(4);
    for (int i = 0; i < 4; ++i) {
        Int v = rat_num(one[i]) % p;
        if (v < 0) v += p;
        unit[i] = static_cast<Fq::elem>(v);
    }
    return FqAlgebra(fp, 4, std::move(sc), std::move(unit),
                     o.name() + " mod " + std::to_string(p));
}

std::vector<Fq::elem> reduce_unit(const ZOrder& o, const QuatElement& u, int p) {
    RatVec c = o.coordinates(u);
    std::vector<Fq::elem> v(4);
    for (int i = 0; i < 4; ++i) {
        if (!is_integer(c[i])) throw InternalError("reduce_unit: unit not in the order");
        Int q = rat_num(c[i]) % p;
        if (q < 0) q += p;
        v[i] = static_cast<Fq::elem>(q);
    }
    return v;
}

} // namespace

UnitImageReport unit_image_in_order_units(int p) {
    ZOrder o = maximal_order(p);
    auto units = unit_group(o);
    FqAlgebra red = order_mod_p(o, p);
    auto target_units = unit_group_of_finite_algebra(red);

    std::set<std::vector<Fq::elem>> image;
    size_t kernel = 0;
    bool pm1_only = true;
    for (const auto& u : units) {
        auto v = reduce_unit(o, u, p);
        image.insert(v);
        if (v == red.unit()) {
            ++kernel;
            bool is_pm1 = (u.c == std::array<Rat, 4>{1, 0, 0, 0}) ||
                          (u.c == std::array<Rat, 4>{-1, 0, 0, 0});
            if (!is_pm1) pm1_only = false;
        }
    }
    UnitImageReport r;
    r.p = p;
    r.target = "(O/" + std::to_string(p) + "O)^x";
    r.unit_order = units.size();
    r.target_order = target_units.size();
    r.image_order = image.size();
    r.kernel_order = kernel;
    r.kernel_is_pm1 = pm1_only && (kernel <= 2);
    r.surjective = image.size() == target_units.size();
    r.index = target_units.size() / image.size();
    return r;
}

UnitImageReport unit_image_in_residue_units(int p) {
    ZOrder o = maximal_order(p);
    auto units = unit_group(o);
    FqAlgebra red = order_mod_p(o, p);
    FqMat j = jacobson_radical(red);
    QuotientData qd = quotient_algebra(red, j, red.name() + "/J");
    const FqAlgebra& s = qd.algebra;  // = F_{p^2}
    if (s.dim() * red.ring().p() == 0 || s.dim() != 2)
        throw InternalError("unit_image_in_residue_units: residue algebra is not F_{p^2}");

    std::set<std::vector<Fq::elem>> image;
    size_t kernel = 0;
    for (const auto& u : units) {
        auto v = qd.project(reduce_unit(o, u, p));
        image.insert(v);
        if (v == s.unit()) ++kernel;
    }
    UnitImageReport r;
    r.p = p;
    r.target = "F_" + std::to_string(p * p) + "^x";
    r.unit_order = units.size();
    r.target_order = static_cast<size_t>(p) * p - 1;
    r.image_order = image.size();
    r.kernel_order = kernel;
    r.surjective = image.size() == r.target_order;
    r.index = r.target_order / image.size();
    return r;
}

Int h_congruence_order(int p) {
    // |O^x \ F_{p^2}^x| for the commutative target = the index of the image
    UnitImageReport r = unit_image_in_residue_units(p);
    return Int(r.index);
}

namespace {

// double cosets H1 \ G / H2 for subgroups of the unit group of
// (O/2O) x (O/2O), all given as coordinate-vector sets
Int double_coset_count(const FqAlgebra& g_alg, const std::vector<std::vector<Fq::elem>>& g_elems,
                       const std::set<std::vector<Fq::elem>>& h1,
                       const std::set<std::vector<Fq::elem>>& h2) {
    std::map<std::vector<Fq::elem>, int> index_of;
    for (size_t i = 0; i < g_elems.size(); ++i) index_of[g_elems[i]] = static_cast<int>(i);
    std::vector<int> coset(g_elems.size(), -1);
    int count = 0;
    for (size_t i = 0; i < g_elems.size(); ++i) {
        if (coset[i] >= 0) continue;
        ++count;
        std::vector<int> stack{static_cast<int>(i)};
        coset[i] = count;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (const auto& a : h1)
                for (const auto& b : h2) {
                    auto img = g_alg.mul(a, g_alg.mul(g_elems[cur], b));
                    int idx = index_of.at(img);
                    if (coset[idx] < 0) {
                        coset[idx] = count;
                        stack.push_back(idx);
                    }
                }
        }
    }
    return count;
}

// the product algebra (O/2O) x (O/2O) over F_2
FqAlgebra double_order_mod_2(const ZOrder& o) {
    FqAlgebra red = order_mod_p(o, 2);
    const Fq& f = red.ring();
    int n = 8;
    std::vector<Fq::elem> sc(static_cast<size_t>(n) * n * n, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l) {
                Fq::elem c = red.sc(i, j, l);
                if (!c) continue;
                sc[(static_cast<size_t>(i) * n + j) * n + l] = c;
                sc[(static_cast<size_t>(4 + i) * n + (4 + j)) * n + (4 + l)] = c;
            }
    std::vector<Fq::elem> unit(n, 0);
    for (int i = 0; i < 4; ++i) {
        unit[i] = red.unit()[i];
        unit[4 + i] = red.unit()[i];
    }
    return FqAlgebra(f, n, std::move(sc), std::move(unit), "(O/2O) x (O/2O)");
}

} // namespace

Int h_subdirect_1_2() {
    ZOrder o = maximal_order(2);
    auto units = unit_group(o);
    FqAlgebra g_alg = double_order_mod_2(o);
    auto g_elems = unit_group_of_finite_algebra(g_alg);
    // H1 = image of O^x x O^x; H2 = diagonal image of the congruence units
    std::set<std::vector<Fq::elem>> h1, h2;
    std::vector<std::vector<Fq::elem>> reduced;
    for (const auto& u : units) reduced.push_back(reduce_unit(o, u, 2));
    for (const auto& a : reduced)
        for (const auto& b : reduced) {
            std::vector<Fq::elem> v(8);
            for (int i = 0; i < 4; ++i) {
                v[i] = a[i];
                v[4 + i] = b[i];
            }
            h1.insert(v);
        }
    for (const auto& ge : g_elems) {
        bool diag = true;
        for (int i = 0; i < 4 && diag; ++i) diag = ge[i] == ge[4 + i];
        if (diag) h2.insert(ge);
    }
    return double_coset_count(g_alg, g_elems, h1, h2);
}

Int h_middle_1_2() {
    ZOrder o = maximal_order(2);
    auto units = unit_group(o);
    FqAlgebra red = order_mod_p(o, 2);
    FqMat j = jacobson_radical(red);
    QuotientData qd = quotient_algebra(red, j, "(O/2O)/J");
    FqAlgebra g_alg = double_order_mod_2(o);
    auto g_elems = unit_group_of_finite_algebra(g_alg);
    std::set<std::vector<Fq::elem>> h1, h2;
    std::vector<std::vector<Fq::elem>> reduced;
    for (const auto& u : units) reduced.push_back(reduce_unit(o, u, 2));
    for (const auto& a : reduced)
        for (const auto& b : reduced) {
            std::vector<Fq::elem> v(8);
            for (int i = 0; i < 4; ++i) {
                v[i] = a[i];
                v[4 + i] = b[i];
            }
            h1.insert(v);
        }
    for (const auto& ge : g_elems) {
        std::vector<Fq::elem> x(ge.begin(), ge.begin() + 4), y(ge.begin() + 4, ge.end());
        if (qd.project(x) == qd.project(y)) h2.insert(ge);
    }
    return double_coset_count(g_alg, g_elems, h1, h2);
}

bool serre_kernel_check(int p) {
    ZOrder o = maximal_order(p);
    auto units = unit_group(o);
    for (const auto& u : units) {
        // u = 1 mod pO?
        QuatElement diff = q_sub(u, {{1, 0, 0, 0}});
        bool congruent = true;
        for (const Rat& c : o.coordinates(diff)) {
            Rat scaled = c / p;
            if (!is_integer(scaled)) {
                congruent = false;
                break;
            }
        }
        if (congruent) {
            bool pm1 = u.c == std::array<Rat, 4>{1, 0, 0, 0} || u.c == std::array<Rat, 4>{-1, 0, 0, 0};
            if (!pm1) return false;
        }
    }
    return true;
}

GenusRecord class_number_of_genus(const EndoDescriptor& endo, int p, int n2,
                                  const std::string& case_id) {
    GenusRecord g;
    g.case_id = case_id;
    g.endo = endo;
    switch (endo.kind) {
        case EndoKind::MaximalProduct: {
            Int ho = h_maximal_quaternion(p);
            if (n2 <= 2) {
                // O x O
                g.h = ho * ho;
                g.justification = "h(O)h(O) = " + ho.str() + "*" + ho.str() +
                                  " by the class number formula";
            } else {
                // O x A_{n_2} with n_2 in {3,4,6}
                g.h = ho;
                g.justification = "h(O) = " + ho.str() + " by the class number formula; h(A_" +
                                  std::to_string(n2) + ") = 1 (fixture)";
            }
            break;
        }
        case EndoKind::CongruenceModP:
            g.h = h_congruence_order(p);
            g.justification = "double coset count |O^x \\ F_{p^2}^x| = " + g.h.str();
            break;
        case EndoKind::SelfSubdirect:
            g.h = h_subdirect_1_2();
            g.justification = "double cosets of the unit images in ((O/2O)^x)^2 = " + g.h.str();
            break;
        case EndoKind::MiddleSubdirect: {
            g.h = h_middle_1_2();
            Int upper = h_subdirect_1_2();
            if (g.h > upper)
                throw InternalError("class_number_of_genus: monotonicity h(A) >= h(R) violated");
            g.justification = "double cosets = " + g.h.str() + " (and h(A) = " + upper.str() +
                              " >= h(R))";
            break;
        }
        case EndoKind::CommutativeOverorder:
            g.h = 1;
            g.justification = "fixture: h(A_(3,6)) = h(O_K) = 1";
            break;
        case EndoKind::CyclotomicMaximal:
            g.h = 1;
            g.justification = "fixture: the cyclotomic fields Q(zeta_n), n in {5,8,12}, have class number 1";
            break;
        case EndoKind::LocalBassSelf:
            g.h = 1;
            g.justification = "det(local units) = center units (verified) and h(A_n) = 1";
            break;
    }
    if (g.h < 1) throw InternalError("class_number_of_genus: h < 1");
    return g;
}

} // namespace quatlat
