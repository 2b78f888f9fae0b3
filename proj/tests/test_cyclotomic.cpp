#include "doctest.h"

#include "quatlat/cyclotomic.hpp"
#include "quatlat/errors.hpp"

using namespace quatlat;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1).poly == ZPoly{-1, 1});
    CHECK(cyclotomic_polynomial(6).poly == ZPoly{1, -1, 1});
    CHECK(cyclotomic_polynomial(12).poly == ZPoly{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(5).degree == 4);
    CHECK_THROWS_AS(cyclotomic_polynomial(13), UsageError);
    CHECK_THROWS_AS(cyclotomic_polynomial(0), UsageError);
}

TEST_CASE("product of cyclotomic polynomials over divisors is T^n - 1") {
    for (int n = 1; n <= 12; ++n) {
        ZPoly prod{1};
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            ZPoly f = cyclotomic_polynomial(d).poly;
            ZPoly r(prod.size() + f.size() - 1, 0);
            for (size_t i = 0; i < prod.size(); ++i)
                for (size_t j = 0; j < f.size(); ++j) r[i + j] += prod[i] * f[j];
            prod = r;
        }
        ZPoly expect(n + 1, 0);
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod == expect);
    }
}

TEST_CASE("pair orders: indices and presentations") {
    auto p12 = pair_order(1, 2);
    CHECK(p12.index == 2);
    CHECK(p12.congruence == "a = b (mod 2)");
    CHECK(pair_order(3, 6).index == 4);
    CHECK(pair_order(2, 6).index == 3);
    CHECK(pair_order(2, 4).index == 2);
    CHECK(pair_order(2, 3).index == 1);
    CHECK(pair_order(3, 4).index == 1);
    CHECK_THROWS_AS(pair_order(5, 8), UsageError);
}

TEST_CASE("local splitting behavior") {
    auto r33 = local_splitting(3, 3);
    CHECK(r33.tag == SplittingTag::Ramified);
    CHECK(r33.ramification_index == 2);
    CHECK(r33.num_primes == 1);

    auto r32 = local_splitting(3, 2);
    CHECK(r32.tag == SplittingTag::Inert);
    CHECK(r32.residue_degree == 2);

    auto r122 = local_splitting(12, 2);
    CHECK(r122.ramification_index == 2);
    CHECK(r122.residue_degree == 2);
    CHECK(r122.num_primes == 1);

    auto r123 = local_splitting(12, 3);
    CHECK(r123.ramification_index == 2);
    CHECK(r123.residue_degree == 2);
    CHECK(r123.num_primes == 1);

    // unramified iff Phi_n mod p is squarefree
    for (int n = 1; n <= 12; ++n)
        for (int p : {2, 3, 5}) {
            auto lb = local_splitting(n, p);
            CHECK(lb.ramification_index * lb.residue_degree * lb.num_primes == euler_phi(n));
            // p ramifies in Q(zeta_n) iff p | m, where m = n/2 when n = 2 mod 4
            int m = (n % 4 == 2) ? n / 2 : n;
            bool ramified = m > 1 && m % p == 0;
            CHECK((lb.tag == SplittingTag::Ramified) == ramified);
        }
}

TEST_CASE("nonmaximal prime sets") {
    CHECK(nonmaximal_primes(3, 6, 3) == std::set<int>{2, 3});
    CHECK(nonmaximal_primes(5, 0, 5) == std::set<int>{5});
    CHECK(nonmaximal_primes(3, 6, 2) == std::set<int>{2});
    CHECK(nonmaximal_primes(1, 2, 2) == std::set<int>{2});
    CHECK(nonmaximal_primes(2, 6, 3) == std::set<int>{3});
    CHECK(nonmaximal_primes(2, 3, 3) == std::set<int>{3});
}
