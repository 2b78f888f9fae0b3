#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quatlat/errors.hpp"
#include "quatlat/fq_linalg.hpp"

namespace quatlat {

// A finite module presented by action matrices over F_q: the submodule
// machinery only sees matrices, so algebra elements, bimodule actions and
// semilinear scalars all funnel through the same interface.
struct ModuleAction {
    Fq field;
    int dim = 0;
    std::vector<FqMat> gens;  // each dim x dim, acting on column vectors

    bool stable(const FqMat& sub_rref) const {
        for (const auto& g : gens)
            for (int i = 0; i < sub_rref.rows(); ++i)
                if (!in_row_space(sub_rref, g.apply(sub_rref.row(i)))) return false;
        return true;
    }
};

// Span-closure of seed vectors under the action: the smallest submodule
// containing them, as an RREF basis.
FqMat submodule_closure(const ModuleAction& m, const std::vector<std::vector<Fq::elem>>& seeds);

// All submodules (including 0 and the whole module), canonically ordered by
// (dimension, RREF entries).  BFS over single-vector extensions.
std::vector<FqMat> enumerate_submodules(const ModuleAction& m);

// Submodules that generate the whole module under a larger action (the
// optional generation constraint): the span closure under `ambient` of the
// submodule must be everything.
std::vector<FqMat> enumerate_submodules(const ModuleAction& m, const ModuleAction& ambient);

// Reference sweep for small modules: spans of all <= max_take subsets of the
// nonzero vectors, filtered for stability.  Independent of the BFS path.
std::vector<FqMat> enumerate_submodules_reference(const ModuleAction& m, int max_take,
                                                  uint64_t budget = uint64_t(1) << 26);

struct OrbitResult {
    std::vector<FqMat> representatives;      // lexicographically least member per orbit
    std::vector<std::vector<int>> orbits;    // indices into the input list
};

// Orbits of the given submodules under a finite group of invertible matrices
// (closure of the generators is taken).  An element mapping a member outside
// the input set is a structural error.
OrbitResult orbit_classes(const std::vector<FqMat>& submodules, const std::vector<FqMat>& group,
                          const ModuleAction& ambient);

} // namespace quatlat
