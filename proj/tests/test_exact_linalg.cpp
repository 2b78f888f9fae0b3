#include "doctest.h"

#include "quatlat/exact_linalg.hpp"
#include "quatlat/radical.hpp"

using namespace quatlat;

namespace {

uint32_t seed = 424242;
int rnd(int lo, int hi) {
    seed = seed * 1664525u + 1013904223u;
    return lo + static_cast<int>(seed % static_cast<uint32_t>(hi - lo + 1));
}

IntMat random_mat(int n, int m, int bound) {
    IntMat a(n, IntVec(m));
    for (auto& row : a)
        for (auto& x : row) x = rnd(-bound, bound);
    return a;
}

// brute-force determinant by cofactor expansion
Int det_ref(const IntMat& a) {
    int n = static_cast<int>(a.size());
    if (n == 1) return a[0][0];
    Int d = 0;
    for (int j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        IntMat minor;
        for (int i = 1; i < n; ++i) {
            IntVec row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(row);
        }
        Int term = a[0][j] * det_ref(minor);
        d += (j % 2 ? -term : term);
    }
    return d;
}

} // namespace

TEST_CASE("Bareiss determinant vs cofactor expansion") {
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + rnd(0, 4);
        IntMat a = random_mat(n, n, 6);
        CHECK(det_int(a) == det_ref(a));
    }
}

TEST_CASE("Smith form: divisibility chain and determinant product") {
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rnd(0, 3);
        IntMat a = random_mat(n, n, 5);
        IntVec d = smith_normal_form(a);
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i + 1] == 0) continue;
            CHECK(d[i] != 0);
            CHECK(d[i + 1] % d[i] == 0);
        }
        Int prod = 1;
        bool singular = false;
        for (const Int& x : d) {
            if (x == 0) singular = true;
            prod *= x;
        }
        Int det = det_int(a);
        if (singular) CHECK(det == 0);
        else CHECK(prod == abs(det));
    }
}

TEST_CASE("HNF preserves the row lattice") {
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + rnd(0, 2);
        IntMat a = random_mat(n + 1, n, 4);  // overdetermined generators
        IntMat h = hnf_rows(a);
        // every original row solves over Z in terms of h, and vice versa
        if (h.empty()) continue;
        RatMat hr = to_rat(h);
        if (static_cast<int>(h.size()) == n) {
            for (const auto& row : a) {
                RatVec v(row.begin(), row.end());
                for (const Rat& c : solve_left(hr, v)) CHECK(is_integer(c));
            }
        }
        // pivots positive, entries above reduced
        for (size_t i = 0; i < h.size(); ++i) {
            int jcol = 0;
            while (jcol < n && h[i][jcol] == 0) ++jcol;
            REQUIRE(jcol < n);
            CHECK(h[i][jcol] > 0);
            for (size_t r = 0; r < i; ++r) {
                CHECK(h[r][jcol] >= 0);
                CHECK(h[r][jcol] < h[i][jcol]);
            }
        }
    }
}

TEST_CASE("solve_mod_pk solves or correctly reports no solution") {
    for (int64_t p : {2, 3, 5}) {
        for (int trial = 0; trial < 40; ++trial) {
            int n = 2 + rnd(0, 2), k = 2 + rnd(0, 2);
            IntMat a = random_mat(n, n, 4);
            IntVec b(n);
            for (auto& x : b) x = rnd(-6, 6);
            IntVec x;
            Int pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            if (solve_mod_pk(a, b, p, k, x)) {
                for (int i = 0; i < n; ++i) {
                    Int s = 0;
                    for (int j = 0; j < n; ++j) s += a[i][j] * x[j];
                    Int diff = (s - b[i]) % pk;
                    CHECK(diff == 0);
                }
            } else {
                // brute force over a tiny box confirms insolubility
                if (n == 2 && pk <= 9) {
                    bool found = false;
                    for (Int x0 = 0; x0 < pk && !found; ++x0)
                        for (Int x1 = 0; x1 < pk && !found; ++x1) {
                            Int r0 = (a[0][0] * x0 + a[0][1] * x1 - b[0]) % pk;
                            Int r1 = (a[1][0] * x0 + a[1][1] * x1 - b[1]) % pk;
                            if (r0 % pk == 0 && r1 % pk == 0) found = true;
                        }
                    CHECK(!found);
                }
            }
        }
    }
}

TEST_CASE("characteristic polynomial vs symbolic determinant") {
    // det(lambda I - M) computed by cofactor expansion over F_q[lambda]
    for (int p : {2, 3, 5}) {
        Fq f = Fq::prime_field(p);
        for (int trial = 0; trial < 25; ++trial) {
            int n = 1 + rnd(0, 3);
            FqMat m(f, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<Fq::elem>(rnd(0, p - 1));
            auto cp = charpoly(m);

            // polynomials over F_q as coefficient vectors, low degree first
            using Poly = std::vector<Fq::elem>;
            auto pmul = [&](const Poly& a, const Poly& b) {
                Poly r(a.size() + b.size() - 1, 0);
                for (size_t i = 0; i < a.size(); ++i)
                    for (size_t j = 0; j < b.size(); ++j)
                        r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
                return r;
            };
            auto padd = [&](Poly a, const Poly& b) {
                if (a.size() < b.size()) a.resize(b.size(), 0);
                for (size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
                return a;
            };
            auto pneg = [&](Poly a) {
                for (auto& c : a) c = f.neg(c);
                return a;
            };
            std::function<Poly(const std::vector<std::vector<Poly>>&)> pdet =
                [&](const std::vector<std::vector<Poly>>& mat) -> Poly {
                size_t nn = mat.size();
                if (nn == 1) return mat[0][0];
                Poly d{0};
                for (size_t j = 0; j < nn; ++j) {
                    std::vector<std::vector<Poly>> minor;
                    for (size_t i = 1; i < nn; ++i) {
                        std::vector<Poly> row;
                        for (size_t c = 0; c < nn; ++c)
                            if (c != j) row.push_back(mat[i][c]);
                        minor.push_back(row);
                    }
                    Poly term = pmul(mat[0][j], pdet(minor));
                    d = padd(d, j % 2 ? pneg(term) : term);
                }
                return d;
            };
            std::vector<std::vector<Poly>> lam_minus_m(n, std::vector<Poly>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Poly e = {f.neg(m.at(i, j))};
                    if (i == j) e.push_back(f.one());
                    else e.push_back(0);
                    lam_minus_m[i][j] = e;
                }
            Poly ref = pdet(lam_minus_m);
            ref.resize(n + 1, 0);
            // cp[j] = coefficient of lambda^{n-j}
            for (int j = 0; j <= n; ++j) CHECK(cp[j] == ref[n - j]);
        }
    }
}
