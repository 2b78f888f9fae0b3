#pragma once

#include <cstdint>
#include <vector>

#include "quatlat/algebra.hpp"
#include "quatlat/errors.hpp"

namespace quatlat {

// Exhaustive unit group of a finite algebra (two-sided invertible elements).
// The enumeration budget guards against accidentally huge element counts.
template <class Ring>
std::vector<typename StructureAlgebra<Ring>::vec>
unit_group_of_finite_algebra(const StructureAlgebra<Ring>& a, uint64_t budget = uint64_t(1) << 24) {
    uint64_t ring_size = 0;
    if constexpr (std::is_same_v<Ring, Fq>)
        ring_size = a.ring().q();
    else
        ring_size = static_cast<uint64_t>(a.ring().modulus());
    uint64_t total = 1;
    for (int i = 0; i < a.dim(); ++i) {
        if (total > budget / ring_size + 1) total = budget + 1;
        else total *= ring_size;
        if (total > budget)
            throw ResourceError(a.name() + ": unit enumeration needs a budget of at least " +
                                std::to_string(total) + " elements (configured " +
                                std::to_string(budget) + ")");
    }
    using vec = typename StructureAlgebra<Ring>::vec;
    std::vector<vec> units;
    vec v(a.dim(), a.ring().zero());
    auto enumerate_values = [&]() {
        std::vector<typename Ring::elem> vals;
        if constexpr (std::is_same_v<Ring, Fq>) {
            for (auto e : a.ring().all_elements()) vals.push_back(e);
        } else {
            for (int64_t x = 0; x < a.ring().modulus(); ++x) vals.push_back(x);
        }
        return vals;
    };
    auto vals = enumerate_values();
    std::vector<size_t> idx(a.dim(), 0);
    while (true) {
        for (int i = 0; i < a.dim(); ++i) v[i] = vals[idx[i]];
        if (a.try_inverse(v)) units.push_back(v);
        int i = 0;
        while (i < a.dim() && idx[i] + 1 == vals.size()) idx[i++] = 0;
        if (i == a.dim()) break;
        ++idx[i];
    }
    return units;
}

// Closure check used by tests and by callers that need group structure.
template <class Ring>
bool units_closed_under_product_and_inverse(const StructureAlgebra<Ring>& a,
                                            const std::vector<typename StructureAlgebra<Ring>::vec>& units) {
    auto contains = [&](const typename StructureAlgebra<Ring>::vec& x) {
        for (const auto& u : units)
            if (u == x) return true;
        return false;
    };
    for (const auto& x : units) {
        auto inv = a.try_inverse(x);
        if (!inv || !contains(*inv)) return false;
        for (const auto& y : units)
            if (!contains(a.mul(x, y))) return false;
    }
    return true;
}

} // namespace quatlat
