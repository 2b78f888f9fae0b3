#include "quatlat/counting.hpp"

#include <algorithm>
#include <map>

#include "quatlat/cyclotomic.hpp"
#include "quatlat/errors.hpp"
#include "quatlat/lattice_classes.hpp"

namespace quatlat {

namespace {

std::string nbar_str(const std::vector<int>& nbar) {
    if (nbar.size() == 1) return std::to_string(nbar[0]);
    return "(" + std::to_string(nbar[0]) + "," + std::to_string(nbar[1]) + ")";
}

// retry with increasing precision on PrecisionError
template <class Fn>
auto with_precision_retry(int k, Fn&& fn) {
    for (int kk = k;; kk += 2) {
        try {
            return fn(kk);
        } catch (const PrecisionError&) {
            if (kk >= k + 6) throw;
        }
    }
}

} // namespace

std::vector<int> canonical_case(std::vector<int> nbar) {
    std::sort(nbar.begin(), nbar.end());
    static const std::map<std::vector<int>, std::vector<int>> sym = {
        {{6}, {3}},      {{10}, {5}},    {{1, 3}, {2, 6}},
        {{1, 4}, {2, 4}}, {{1, 6}, {2, 3}}, {{4, 6}, {3, 4}},
    };
    auto it = sym.find(nbar);
    return it == sym.end() ? nbar : it->second;
}

bool in_computed_scope(const std::vector<int>& nbar, int p) {
    static const std::vector<std::pair<std::vector<int>, int>> scope = {
        {{3}, 3},    {{4}, 2},    {{5}, 5},    {{8}, 2},    {{12}, 2},   {{12}, 3},
        {{1, 2}, 2}, {{2, 3}, 3}, {{2, 4}, 2}, {{2, 6}, 3}, {{3, 4}, 2}, {{3, 4}, 3},
        {{3, 6}, 2}, {{3, 6}, 3},
    };
    for (const auto& [c, cp] : scope)
        if (c == nbar && cp == p) return true;
    return false;
}

FixtureEntry fixture_value(const std::vector<int>& nbar, int p) {
    // the full published table, rows p = 2, 3, 5; columns in census order
    static const std::vector<std::vector<int>> columns = {
        {3}, {4}, {5}, {8}, {12}, {1, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 4}, {3, 6}};
    static const std::map<int, std::vector<int>> rows = {
        {2, {3, 2, 2, 1, 3, 3, 2, 2, 4, 2, 8}},
        {3, {2, 3, 2, 4, 3, 3, 1, 4, 3, 2, 2}},
        {5, {3, 1, 1, 4, 4, 4, 2, 0, 6, 0, 8}},
    };
    auto it = rows.find(p);
    if (it == rows.end()) throw UsageError("fixture_value: p must be 2, 3 or 5");
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == nbar)
            return {Int(it->second[i]), "fixture:concluding-table"};
    throw UsageError("fixture_value: no table entry for o(" + nbar_str(nbar) + ")");
}

CountResult o_isotypic(int n, int p, int precision) {
    if (n != 3 && n != 4 && n != 5 && n != 8 && n != 12)
        throw UsageError("o_isotypic: n must be in {3,4,5,8,12}");
    if (!in_computed_scope({n}, p))
        throw UsageError("o_isotypic: (" + std::to_string(n) + ", p=" + std::to_string(p) +
                         ") is not in the computed scope");
    CountResult res;
    res.case_id = "o(" + std::to_string(n) + ") at p=" + std::to_string(p);
    res.nbar = {n};
    res.p = p;
    auto s = nonmaximal_primes(n, 0, p);
    res.trace.push_back({"S = {" + std::to_string(*s.begin()) + "}", "nonmaximal_primes"});

    if (n == 3 || n == 4) {
        auto chain = with_precision_retry(precision, [&](int k) {
            return overorder_chain(tensor_local_order(n, p, k));
        });
        int e = *chain.links[0].eichler;
        int nexp = *chain.links[0].disc_exponent;
        if (e != -1 || nexp != 2)
            throw InternalError(res.case_id + ": unexpected invariants e=" + std::to_string(e) +
                                ", n=" + std::to_string(nexp));
        res.trace.push_back({"e(A) = -1, n(A) = 2, chain length " + std::to_string(chain.length()),
                             "eichler_invariant/discriminant_exponent/overorder_chain"});
        auto classes = bass_lattice_classes(chain, {true, 2}, p);
        res.trace.push_back({"local classes: " + std::to_string(classes.count()),
                             "bass_lattice_classes (split, u=2)"});
        bool det_ok = local_unit_determinants_surject(tensor_local_order(n, p, precision));
        if (!det_ok) throw InternalError(res.case_id + ": det image check failed");
        res.trace.push_back({"det(local units) = center units", "local_unit_determinants_surject"});
        for (const auto& cl : classes.classes) {
            auto endo = endomorphism_order(cl, {n, 0}, p);
            res.genera.push_back(class_number_of_genus(endo, p, 0, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
    } else if (n == 5 || n == 8) {
        auto chain = with_precision_retry(std::max(precision, 6), [&](int k) {
            return overorder_chain(tensor_local_order(n, p, k));
        });
        int e = *chain.links[0].eichler;
        int nexp = *chain.links[0].disc_exponent;
        if (e != -1 || nexp != 4)
            throw InternalError(res.case_id + ": unexpected invariants");
        res.trace.push_back({"e(A) = -1, n(A) = 4, chain length " + std::to_string(chain.length()),
                             "overorder_chain"});
        auto classes = bass_lattice_classes(chain, {true, 1}, p);
        res.trace.push_back({"local classes: " + std::to_string(classes.count()),
                             "bass_lattice_classes (split, u=1)"});
        for (const auto& cl : classes.classes) {
            auto endo = endomorphism_order(cl, {n, 0}, p);
            res.genera.push_back(class_number_of_genus(endo, p, 0, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
    } else {  // n = 12
        auto a = with_precision_retry(precision, [&](int k) {
            auto m = tensor_local_order(12, p, k);
            (void)discriminant_exponent(m);
            return m;
        });
        int e = eichler_invariant(a);
        int nexp = discriminant_exponent(a);
        if (e != 1 || nexp != 2)
            throw InternalError(res.case_id + ": expected a level-2 Eichler order");
        res.trace.push_back({"e(A) = 1, level pi^2 Eichler", "eichler_invariant/discriminant_exponent"});
        auto classes = eichler_lattice_classes(2, 1, p);
        res.trace.push_back({"local classes: the three columns", "eichler_lattice_classes"});
        for (const auto& cl : classes.classes) {
            auto endo = endomorphism_order(cl, {12, 0}, p);
            res.genera.push_back(class_number_of_genus(endo, p, 0, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
    }
    Int o = 0;
    for (const auto& g : res.genera) o += g.h;
    res.o_value = o;
    return res;
}

namespace {

// classes of the factor A_{n_i, p} tensor O_p in its simple module:
// 1 when p is ramified in Q(zeta_{n_i}), 2 when p is inert (level-1 Eichler)
int pair_factor_classes(int n, int p, int precision, CountResult& res) {
    auto lb = local_splitting(n, p);
    if (lb.tag == SplittingTag::Ramified) {
        auto chain = with_precision_retry(precision, [&](int k) {
            return overorder_chain(tensor_local_order(n, p, k));
        });
        auto cls = bass_lattice_classes(chain, {true, 1}, p);
        res.trace.push_back({"factor n=" + std::to_string(n) + ": ramified, " +
                                 std::to_string(cls.count()) + " class",
                             "bass_lattice_classes (u=1)"});
        return static_cast<int>(cls.count());
    }
    if (lb.tag == SplittingTag::Inert) {
        auto a = with_precision_retry(precision, [&](int k) {
            auto m = tensor_local_order(n, p, k);
            (void)discriminant_exponent(m);
            return m;
        });
        if (eichler_invariant(a) != 1 || discriminant_exponent(a) != 1)
            throw InternalError("pair_factor_classes: inert factor is not level-1 Eichler");
        auto cls = eichler_lattice_classes(1, 1, p);
        res.trace.push_back({"factor n=" + std::to_string(n) + ": inert, " +
                                 std::to_string(cls.count()) + " classes",
                             "eichler_lattice_classes (level 1, u=1)"});
        return static_cast<int>(cls.count());
    }
    throw UsageError("pair_factor_classes: unsupported splitting");
}

} // namespace

CountResult o_pair(int n1, int n2, int p, int precision) {
    if (!in_computed_scope({n1, n2}, p))
        throw UsageError("o_pair: ((" + std::to_string(n1) + "," + std::to_string(n2) +
                         "), p=" + std::to_string(p) + ") is not in the computed scope");
    CountResult res;
    res.case_id = "o(" + std::to_string(n1) + "," + std::to_string(n2) + ") at p=" + std::to_string(p);
    res.nbar = {n1, n2};
    res.p = p;
    auto s = nonmaximal_primes(n1, n2, p);
    {
        std::string ss = "S = {";
        for (auto it = s.begin(); it != s.end(); ++it)
            ss += (it == s.begin() ? "" : ",") + std::to_string(*it);
        res.trace.push_back({ss + "}", "nonmaximal_primes"});
    }

    auto pair = std::make_pair(n1, n2);
    if (pair == std::make_pair(2, 3) || pair == std::make_pair(3, 4)) {
        // product cases: A_nbar = A_{n1} x A_{n2}
        int total = 1;
        std::vector<std::pair<int, int>> factor_counts;
        for (int n : {n1, n2}) {
            if (n <= 2) {
                // the D-factor: single genus, h(O) classes
                Int ho = h_maximal_quaternion(p);
                res.trace.push_back({"factor n=" + std::to_string(n) + ": h(O) = " + ho.str(),
                                     "h_maximal_quaternion"});
                factor_counts.push_back({n, static_cast<int>(ho)});
                total *= static_cast<int>(ho);
            } else {
                int c = pair_factor_classes(n, p, precision, res);
                factor_counts.push_back({n, c});
                total *= c;
            }
        }
        // every genus has h = 1: h(A_{n_i}) = 1 for the quadratic factors
        for (int g = 0; g < total; ++g) {
            LatticeClassLabel l;
            l.kind = LatticeKind::Explicit;
            l.data = {g};
            l.name = "product class " + std::to_string(g + 1);
            l.prime = p;
            GenusRecord gr;
            gr.case_id = res.case_id;
            gr.labels = {l};
            gr.endo = {EndoKind::MaximalProduct, "A_" + std::to_string(n1) + " x A_" + std::to_string(n2)};
            gr.h = 1;
            gr.justification = "h(A_" + std::to_string(n1) + ") = h(A_" + std::to_string(n2) +
                               ") = 1 (fixtures); h(O) folded into the class count";
            res.genera.push_back(gr);
        }
        res.o_value = total;
        return res;
    }

    if (pair == std::make_pair(1, 2)) {
        CensusResult census = census_1_2();
        res.block_counts = census.block_orbit_counts;
        res.trace.push_back({"census classes: " + std::to_string(census.total),
                             "quotient_orbit_classification"});
        // cross-check: the overorders are exactly A, R, O x O
        auto orders = all_overorders(congruence_order_1_2(precision));
        if (orders.size() != 3)
            throw InternalError("o(1,2): overorder count != 3");
        res.trace.push_back({"overorders: A, R, O x O", "all_overorders"});
        for (const auto& cl : census.classes) {
            auto endo = endomorphism_order(cl, {1, 2}, p);
            res.genera.push_back(class_number_of_genus(endo, p, 2, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
        Int o = 0;
        for (const auto& g : res.genera) o += g.h;
        res.o_value = o;
        return res;
    }

    if (pair == std::make_pair(3, 6)) {
        if (p == 2) {
            CensusResult census = census_3_6_at_2(Fq::standard(2, 2));
            res.block_counts = census.block_orbit_counts;
            res.trace.push_back({"per-Delta orbit counts 3+3+1+1", "quotient_orbit_classification"});
            for (const auto& cl : census.classes) {
                auto endo = endomorphism_order(cl, {3, 6}, p);
                res.genera.push_back(class_number_of_genus(endo, p, 6, res.case_id + " / " + cl.name));
                res.genera.back().labels = {cl};
            }
            Int o = 0;
            for (const auto& g : res.genera) o += g.h;
            res.o_value = o;
            return res;
        }
        // p = 3: |L_2| from the commutative order, |L_3| from the ramified factors
        auto comm = commutative_lattice_classes(commutative_pair_order_3_6(precision), 2);
        res.trace.push_back({"|L_2| = " + std::to_string(comm.count()),
                             "commutative_lattice_classes"});
        int l3 = 1;
        for (int n : {3, 6}) {
            auto chain = with_precision_retry(precision, [&](int k) {
                return overorder_chain(tensor_local_order(n, p, k));
            });
            l3 *= static_cast<int>(bass_lattice_classes(chain, {true, 1}, p).count());
        }
        res.trace.push_back({"|L_3| = " + std::to_string(l3), "bass_lattice_classes (both factors)"});
        for (const auto& cl : comm.classes) {
            auto endo = endomorphism_order({LatticeKind::Explicit, {cl.data[0] == 0 ? 2 : 3}, cl.name, 2},
                                           {3, 6}, p);
            res.genera.push_back(class_number_of_genus(endo, p, 6, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
        res.o_value = Int(comm.count()) * l3;
        // consistency: all h = 1, so o = product of the local class counts
        Int sum = 0;
        for (const auto& g : res.genera) sum += g.h * l3;
        if (sum != res.o_value) throw InternalError("o(3,6) at 3: genus sum mismatch");
        return res;
    }

    if (pair == std::make_pair(2, 4) || pair == std::make_pair(2, 6)) {
        CensusResult census = census_2_2p(p, Fq::standard(p, 2));
        res.block_counts = census.block_orbit_counts;
        res.trace.push_back({"census classes: Gamma and Delta", "quotient_orbit_classification"});
        if (!gamma_endomorphisms_are_congruence(p))
            throw InternalError(res.case_id + ": Gamma stabilizer is not the congruence order");
        res.trace.push_back({"End(Gamma) = {(x,y): x = y mod P}", "gamma_endomorphisms_are_congruence"});
        for (const auto& cl : census.classes) {
            auto endo = endomorphism_order(cl, pair, p);
            res.genera.push_back(class_number_of_genus(endo, p, n2, res.case_id + " / " + cl.name));
            res.genera.back().labels = {cl};
        }
        Int o = 0;
        for (const auto& g : res.genera) o += g.h;
        res.o_value = o;
        return res;
    }
    throw UsageError("o_pair: unsupported pair");
}

CaseValue case_value(const std::vector<int>& nbar, int p, int precision) {
    std::vector<int> canon = canonical_case(nbar);
    CaseValue cv;
    cv.nbar = canon;
    if (in_computed_scope(canon, p)) {
        CountResult r = canon.size() == 1 ? o_isotypic(canon[0], p, precision)
                                          : o_pair(canon[0], canon[1], p, precision);
        cv.value = r.o_value;
        cv.provenance = "computed";
        cv.details.push_back(std::move(r));
    } else {
        FixtureEntry f = fixture_value(canon, p);
        cv.value = f.value;
        cv.provenance = f.provenance;
    }
    return cv;
}

const std::vector<CensusColumn>& census_columns() {
    static const std::vector<CensusColumn> cols = {
        {{3}, 2},    {{4}, 1},    {{5}, 2},    {{8}, 1},    {{12}, 1},   {{1, 2}, 1},
        {{2, 3}, 2}, {{2, 4}, 2}, {{2, 6}, 2}, {{3, 4}, 2}, {{3, 6}, 1},
    };
    return cols;
}

TotalsRow ssp2_total(int p, int precision) {
    if (p != 2 && p != 3 && p != 5) throw UsageError("ssp2_total: p must be 2, 3 or 5");
    TotalsRow row;
    row.p = p;
    row.total = 2;  // o(1) + o(2) = 1 + 1
    for (const auto& col : census_columns()) {
        CaseValue cv = case_value(col.nbar, p, precision);
        row.total += Int(col.coefficient) * cv.value;
        row.columns.push_back(std::move(cv));
    }
    return row;
}

} // namespace quatlat
