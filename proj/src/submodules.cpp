#include "quatlat/submodules.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace quatlat {

FqMat submodule_closure(const ModuleAction& m, const std::vector<std::vector<Fq::elem>>& seeds) {
    FqMat basis(m.field, 0, m.dim);
    for (const auto& s : seeds) basis.append_row(s);
    basis.rref();
    while (true) {
        FqMat next = basis;
        for (const auto& g : m.gens)
            for (int i = 0; i < basis.rows(); ++i)
                next.append_row(g.apply(basis.row(i)));
        next.rref();
        if (next.rows() == basis.rows()) return next;
        basis = next;
    }
}

namespace {

template <class Fn>
void for_each_nonzero_vector(const Fq& f, int dim, Fn&& fn) {
    std::vector<Fq::elem> v(dim, 0);
    while (true) {
        int i = 0;
        while (i < dim && v[i] == f.q() - 1) v[i++] = 0;
        if (i == dim) break;
        ++v[i];
        fn(v);
    }
}

} // namespace

std::vector<FqMat> enumerate_submodules(const ModuleAction& m) {
    std::set<FqMat> seen;
    FqMat zero(m.field, 0, m.dim);
    seen.insert(zero);
    std::queue<FqMat> work;
    work.push(zero);
    while (!work.empty()) {
        FqMat cur = work.front();
        work.pop();
        for_each_nonzero_vector(m.field, m.dim, [&](const std::vector<Fq::elem>& v) {
            if (in_row_space(cur, v)) return;
            std::vector<std::vector<Fq::elem>> seeds;
            for (int i = 0; i < cur.rows(); ++i) seeds.push_back(cur.row(i));
            seeds.push_back(v);
            FqMat ext = submodule_closure(m, seeds);
            if (seen.insert(ext).second) work.push(ext);
        });
    }
    return std::vector<FqMat>(seen.begin(), seen.end());
}

std::vector<FqMat> enumerate_submodules(const ModuleAction& m, const ModuleAction& ambient) {
    std::vector<FqMat> out;
    for (const auto& s : enumerate_submodules(m)) {
        std::vector<std::vector<Fq::elem>> seeds;
        for (int i = 0; i < s.rows(); ++i) seeds.push_back(s.row(i));
        if (submodule_closure(ambient, seeds).rows() == m.dim) out.push_back(s);
    }
    return out;
}

std::vector<FqMat> enumerate_submodules_reference(const ModuleAction& m, int max_take, uint64_t budget) {
    std::vector<std::vector<Fq::elem>> nonzero;
    for_each_nonzero_vector(m.field, m.dim, [&](const std::vector<Fq::elem>& v) { nonzero.push_back(v); });
    size_t n = nonzero.size();
    uint64_t count = 0;
    std::set<FqMat> out;
    out.insert(FqMat(m.field, 0, m.dim));
    // all subsets of size <= max_take
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (++count > budget)
            throw ResourceError("submodule reference sweep exceeded budget");
        if (!pick.empty()) {
            FqMat span(m.field, 0, m.dim);
            for (size_t t : pick) span.append_row(nonzero[t]);
            span.rref();
            if (m.stable(span)) out.insert(span);
        }
        if (pick.size() == static_cast<size_t>(max_take)) return;
        for (size_t t = start; t < n; ++t) {
            pick.push_back(t);
            rec(t + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return std::vector<FqMat>(out.begin(), out.end());
}

OrbitResult orbit_classes(const std::vector<FqMat>& submodules, const std::vector<FqMat>& group,
                          const ModuleAction& ambient) {
    std::map<FqMat, int> index_of;
    for (size_t i = 0; i < submodules.size(); ++i)
        index_of.emplace(submodules[i], static_cast<int>(i));

    auto act = [&](const FqMat& g, const FqMat& s) {
        FqMat img(ambient.field, 0, ambient.dim);
        for (int i = 0; i < s.rows(); ++i) img.append_row(g.apply(s.row(i)));
        img.rref();
        return img;
    };

    std::vector<int> orbit_id(submodules.size(), -1);
    OrbitResult res;
    for (size_t i = 0; i < submodules.size(); ++i) {
        if (orbit_id[i] >= 0) continue;
        int id = static_cast<int>(res.orbits.size());
        std::vector<int> members;
        std::queue<int> work;
        orbit_id[i] = id;
        work.push(static_cast<int>(i));
        FqMat least = submodules[i];
        while (!work.empty()) {
            int cur = work.front();
            work.pop();
            members.push_back(cur);
            if (submodules[cur] < least) least = submodules[cur];
            for (const auto& g : group) {
                FqMat img = act(g, submodules[cur]);
                auto it = index_of.find(img);
                if (it == index_of.end())
                    throw StructuralError("orbit_classes: group element maps a member outside the set");
                if (orbit_id[it->second] < 0) {
                    orbit_id[it->second] = id;
                    work.push(it->second);
                }
            }
        }
        std::sort(members.begin(), members.end());
        res.orbits.push_back(std::move(members));
        res.representatives.push_back(std::move(least));
    }
    // partition sanity
    size_t covered = 0;
    for (const auto& o : res.orbits) covered += o.size();
    if (covered != submodules.size())
        throw InternalError("orbit_classes: orbits do not partition the input");
    return res;
}

} // namespace quatlat
