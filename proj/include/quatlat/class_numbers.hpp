#pragma once

#include <string>
#include <vector>

#include "quatlat/lattice_classes.hpp"
#include "quatlat/numeric.hpp"
#include "quatlat/quaternion.hpp"

namespace quatlat {

// One genus of global lattices: the local class labels, the endomorphism
// order, and its class number with the justification that produced it.
struct GenusRecord {
    std::string case_id;
    std::vector<LatticeClassLabel> labels;
    EndoDescriptor endo;
    Int h = 1;
    std::string justification;  // "formula(eq-class-number)", "double-coset", "fixture:...", ...
};

// Class number of the maximal order in the definite quaternion algebra
// ramified at {p, infinity}:
//   h = (p-1)/12 + (1/3)(1 - (-3|p)) + (1/4)(1 - (-4|p)),
// Kronecker symbols at p = 2.  The exact rational must collapse to an
// integer.
Rat h_maximal_quaternion_exact(int64_t p);
Int h_maximal_quaternion(int64_t p);

struct UnitImageReport {
    int p = 0;
    std::string target;
    size_t unit_order = 0;     // |O^x|
    size_t target_order = 0;
    size_t image_order = 0;
    size_t kernel_order = 0;
    bool kernel_is_pm1 = false;
    bool surjective = false;
    size_t index = 0;          // [target : image]
};

// image of the global unit group O^x in (O/pO)^x
UnitImageReport unit_image_in_order_units(int p);
// image of the global unit group in (O_p / P)^x = F_{p^2}^x
UnitImageReport unit_image_in_residue_units(int p);

// h(R) for the congruence order R = {(x,y): x = y mod P} of the (2,2p)
// case: |O^x \ F_{p^2}^x|.
Int h_congruence_order(int p);

// the (1,2) double cosets inside (O/2O)^x x (O/2O)^x
Int h_subdirect_1_2();   // H2 = diagonal units (the congruence order A)
Int h_middle_1_2();      // H2 = {(x,y): x = y in F_4} (the middle overorder R)

// Every finite-order unit congruent to 1 mod pO is +-1 (checked over the
// full enumerated unit list; the kernel is exactly {+-1} at p = 2).
bool serre_kernel_check(int p);

// Dispatch on the endomorphism descriptor.  n2 is the second component for
// product descriptors (0 when irrelevant).
GenusRecord class_number_of_genus(const EndoDescriptor& endo, int p, int n2,
                                  const std::string& case_id);

} // namespace quatlat
