#include "doctest.h"

#include "quatlat/class_numbers.hpp"

using namespace quatlat;

TEST_CASE("class number formula: exact rational values") {
    CHECK(h_maximal_quaternion(2) == 1);
    CHECK(h_maximal_quaternion(3) == 1);
    CHECK(h_maximal_quaternion(5) == 1);
    CHECK(h_maximal_quaternion(7) == 1);
    CHECK(h_maximal_quaternion(11) == 2);
    CHECK(h_maximal_quaternion(13) == 1);
    CHECK(h_maximal_quaternion(17) == 2);
    CHECK(h_maximal_quaternion(19) == 2);
    CHECK(h_maximal_quaternion(23) == 3);
}

TEST_CASE("formula degeneracy: integral and positive for all p <= 50") {
    for (int64_t p = 2; p <= 50; ++p) {
        if (!is_prime_i64(p)) continue;
        Int h = h_maximal_quaternion(p);
        CHECK(h >= 1);
    }
}

TEST_CASE("unit image mod 2: surjective with kernel {+-1}") {
    UnitImageReport r = unit_image_in_order_units(2);
    CHECK(r.unit_order == 24);
    CHECK(r.target_order == 12);
    CHECK(r.surjective);
    CHECK(r.kernel_order == 2);
    CHECK(r.kernel_is_pm1);
    CHECK(r.index == 1);
}

TEST_CASE("unit images in the residue field units") {
    UnitImageReport r2 = unit_image_in_residue_units(2);
    CHECK(r2.target_order == 3);
    CHECK(r2.surjective);
    CHECK(r2.index == 1);

    UnitImageReport r3 = unit_image_in_residue_units(3);
    CHECK(r3.unit_order == 12);
    CHECK(r3.target_order == 8);
    CHECK(r3.image_order == 4);  // {+-1, +-i}
    CHECK(r3.index == 2);
}

TEST_CASE("congruence order class numbers") {
    CHECK(h_congruence_order(2) == 1);
    CHECK(h_congruence_order(3) == 2);
}

TEST_CASE("(1,2) double cosets") {
    CHECK(h_subdirect_1_2() == 1);
    CHECK(h_middle_1_2() == 1);
}

TEST_CASE("Serre kernel property") {
    CHECK(serre_kernel_check(2));
    CHECK(serre_kernel_check(3));
    CHECK(serre_kernel_check(5));
}

TEST_CASE("genus dispatch") {
    auto g1 = class_number_of_genus({EndoKind::MaximalProduct, "O x A_6"}, 3, 6, "(2,6) Delta");
    CHECK(g1.h == 1);
    auto g2 = class_number_of_genus({EndoKind::CongruenceModP, "R"}, 3, 6, "(2,6) Gamma");
    CHECK(g2.h == 2);
    auto g3 = class_number_of_genus({EndoKind::CongruenceModP, "R"}, 2, 4, "(2,4) Gamma");
    CHECK(g3.h == 1);
    auto g4 = class_number_of_genus({EndoKind::SelfSubdirect, "A"}, 2, 0, "(1,2)");
    CHECK(g4.h == 1);
    auto g5 = class_number_of_genus({EndoKind::CyclotomicMaximal, "A_5"}, 5, 0, "(5)");
    CHECK(g5.h == 1);
}
