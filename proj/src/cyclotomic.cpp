#include "quatlat/cyclotomic.hpp"

#include <algorithm>
#include <map>

#include "quatlat/errors.hpp"
#include "quatlat/exact_linalg.hpp"

namespace quatlat {

namespace {

ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division by a monic divisor
ZPoly poly_divexact(ZPoly num, const ZPoly& den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    ZPoly q(dn - dd + 1, 0);
    for (int i = dn - dd; i >= 0; --i) {
        Int c = num[i + dd];
        q[i] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw InternalError("poly_divexact: division not exact");
    return q;
}

ZPoly poly_mod(const ZPoly& a, const ZPoly& m) {
    ZPoly r = a;
    int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
        Int c = r[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) r[i - dm + j] -= c * m[j];
    }
    r.resize(dm);
    return r;
}

} // namespace

int euler_phi(int n) {
    int r = n;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        r -= r / d;
        while (n % d == 0) n /= d;
    }
    if (n > 1) r -= r / n;
    return r;
}

CyclotomicSpec cyclotomic_polynomial(int n) {
    if (n < 1 || n > 12)
        throw UsageError("cyclotomic_polynomial: n must be between 1 and 12, got " + std::to_string(n));
    // Phi_n = (T^n - 1) / prod_{d | n, d < n} Phi_d
    ZPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = poly_divexact(num, cyclotomic_polynomial(d).poly);
    CyclotomicSpec s;
    s.ns = {n};
    s.poly = num;
    s.degree = static_cast<int>(num.size()) - 1;
    if (s.degree != euler_phi(n)) throw InternalError("cyclotomic degree mismatch");
    return s;
}

CyclotomicSpec cyclotomic_pair(int n1, int n2) {
    auto a = cyclotomic_polynomial(n1), b = cyclotomic_polynomial(n2);
    CyclotomicSpec s;
    s.ns = {n1, n2};
    s.poly = poly_mul(a.poly, b.poly);
    s.degree = a.degree + b.degree;
    return s;
}

PairOrderPresentation pair_order(int n1, int n2) {
    static const std::map<std::pair<int, int>, std::pair<int, std::string>> table = {
        {{1, 2}, {2, "a = b (mod 2)"}},
        {{2, 3}, {1, "A_2 x A_3 (product)"}},
        {{2, 4}, {2, "a = b (mod (1-zeta4))"}},
        {{2, 6}, {3, "a = b (mod (1-zeta3))"}},
        {{3, 4}, {1, "A_3 x A_4 (product)"}},
        {{3, 6}, {4, "a = b (mod 2 Z[zeta3])"}},
    };
    auto it = table.find({n1, n2});
    if (it == table.end())
        throw UsageError("pair_order: unsupported pair (" + std::to_string(n1) + "," + std::to_string(n2) + ")");

    // index of Z[T]/(Phi_{n1} Phi_{n2}) inside Z[T]/Phi_{n1} x Z[T]/Phi_{n2}:
    // rows = images of T^i, elementary divisors of the embedding matrix
    auto f1 = cyclotomic_polynomial(n1).poly;
    auto f2 = cyclotomic_polynomial(n2).poly;
    int d1 = static_cast<int>(f1.size()) - 1, d2 = static_cast<int>(f2.size()) - 1;
    int deg = d1 + d2;
    IntMat emb(deg, IntVec(deg, 0));
    ZPoly t{0, 1};
    ZPoly cur{1};
    for (int i = 0; i < deg; ++i) {
        ZPoly r1 = poly_mod(cur, f1), r2 = poly_mod(cur, f2);
        for (int j = 0; j < d1; ++j) emb[i][j] = r1[j];
        for (int j = 0; j < d2; ++j) emb[i][d1 + j] = r2[j];
        cur = poly_mul(cur, t);
    }
    IntVec divisors = smith_normal_form(emb);
    Int index = 1;
    for (const Int& d : divisors) {
        if (d == 0) throw InternalError("pair_order: embedding not full rank");
        index *= d;
    }
    if (index != it->second.first)
        throw InternalError("pair_order: computed index " + index.str() + " does not match the table for (" +
                            std::to_string(n1) + "," + std::to_string(n2) + ")");
    PairOrderPresentation pres;
    pres.pair = {n1, n2};
    pres.index = index;
    pres.congruence = it->second.second;
    pres.components = {n1, n2};
    return pres;
}

const char* to_string(SplittingTag t) {
    switch (t) {
        case SplittingTag::Ramified: return "ramified";
        case SplittingTag::Inert: return "inert";
        case SplittingTag::Split: return "split";
        case SplittingTag::MixedDegree: return "mixed-degree";
    }
    return "?";
}

namespace {

// factor a monic polynomial of degree <= 4 over F_p by trial division with
// monic polynomials of degree 1 and 2; whatever remains is irreducible
using FpPoly = std::vector<int>;

FpPoly fp_mod(FpPoly a, const FpPoly& m, int p) {
    int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j)
            a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p * p) % p;
    }
    a.resize(std::max(dm, 1));
    return a;
}

bool fp_is_zero(const FpPoly& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

FpPoly fp_divexact(FpPoly a, const FpPoly& m, int p) {
    int dm = static_cast<int>(m.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    FpPoly q(da - dm + 1, 0);
    for (int i = da - dm; i >= 0; --i) {
        int c = a[i + dm] % p;
        q[i] = c;
        for (int j = 0; j <= dm; ++j)
            a[i + j] = ((a[i + j] - c * m[j]) % p + p * p) % p;
    }
    return q;
}

} // namespace

LocalBehavior local_splitting(int n, int p) {
    auto spec = cyclotomic_polynomial(n);
    FpPoly f(spec.poly.size());
    for (size_t i = 0; i < spec.poly.size(); ++i)
        f[i] = static_cast<int>(((spec.poly[i] % p) + p) % p);

    std::map<FpPoly, int> factors;  // irreducible factor -> multiplicity
    // extract monic factors of degree 1 then 2
    for (int deg = 1; deg <= 2; ++deg) {
        bool progress = true;
        while (progress && static_cast<int>(f.size()) - 1 > 0) {
            progress = false;
            std::vector<int> cand(deg + 1, 0);
            cand[deg] = 1;
            // iterate all monic candidates of this degree
            std::vector<int> low(deg, 0);
            while (true) {
                for (int i = 0; i < deg; ++i) cand[i] = low[i];
                bool irred = true;
                if (deg == 2) {
                    for (int x = 0; x < p && irred; ++x)
                        if ((x * x + cand[1] * x + cand[0]) % p == 0) irred = false;
                }
                if (irred && static_cast<int>(f.size()) - 1 >= deg && fp_is_zero(fp_mod(f, cand, p))) {
                    f = fp_divexact(f, cand, p);
                    factors[cand]++;
                    progress = true;
                    break;
                }
                int i = 0;
                while (i < deg && low[i] == p - 1) low[i++] = 0;
                if (i == deg) break;
                ++low[i];
            }
        }
    }
    if (static_cast<int>(f.size()) - 1 > 0) factors[f]++;  // degree 3 or 4 leftover is irreducible

    LocalBehavior lb;
    lb.n = n;
    lb.p = p;
    lb.num_primes = static_cast<int>(factors.size());
    int e = -1, fd = -1;
    bool same_e = true, same_f = true;
    for (const auto& [g, mult] : factors) {
        int gd = static_cast<int>(g.size()) - 1;
        if (fd < 0) fd = gd;
        else if (fd != gd) same_f = false;
        if (e < 0) e = mult;
        else if (e != mult) same_e = false;
    }
    lb.residue_degree = fd;
    lb.ramification_index = e;
    if (!same_e || !same_f) {
        lb.tag = SplittingTag::MixedDegree;
        return lb;
    }
    if (e * fd * lb.num_primes != euler_phi(n))
        throw InternalError("local_splitting: e*f*g mismatch for n=" + std::to_string(n) +
                            ", p=" + std::to_string(p));
    if (e > 1) lb.tag = SplittingTag::Ramified;
    else if (fd == 1) lb.tag = SplittingTag::Split;
    else if (lb.num_primes == 1) lb.tag = SplittingTag::Inert;
    else lb.tag = SplittingTag::MixedDegree;  // several unramified primes of degree > 1
    return lb;
}

std::set<int> nonmaximal_primes(int n1, int n2, int p) {
    std::set<int> s{p};
    if (n2 != 0) {
        Int idx = pair_order(n1, n2).index;
        for (int ell : {2, 3, 5, 7, 11, 13})
            if (idx % ell == 0) s.insert(ell);
    }
    return s;
}

} // namespace quatlat
