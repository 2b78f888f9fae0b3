#include "quatlat/quaternion.hpp"

#include <algorithm>

#include "quatlat/errors.hpp"

namespace quatlat {

QuatElement q_add(const QuatElement& x, const QuatElement& y) {
    QuatElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
}

QuatElement q_sub(const QuatElement& x, const QuatElement& y) {
    QuatElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] - y.c[i];
    return r;
}

QuatElement q_scale(const Rat& s, const QuatElement& x) {
    QuatElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * x.c[i];
    return r;
}

QuatElement q_mul(const QuaternionAlgebraQ& d, const QuatElement& x, const QuatElement& y) {
    const Rat &a = d.a, &b = d.b;
    const auto &u = x.c, &v = y.c;
    QuatElement r;
    r.c[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
    r.c[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
    r.c[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
    r.c[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
    return r;
}

QuatElement q_conj(const QuatElement& x) {
    return {{x.c[0], -x.c[1], -x.c[2], -x.c[3]}};
}

Rat reduced_trace(const QuatElement& x) { return 2 * x.c[0]; }

Rat reduced_norm(const QuaternionAlgebraQ& d, const QuatElement& x) {
    const auto& u = x.c;
    return u[0] * u[0] - d.a * u[1] * u[1] - d.b * u[2] * u[2] + d.a * d.b * u[3] * u[3];
}

namespace {

// (v_p mod 2, unit part) of a rational at p
std::pair<int, Int> p_part(const Rat& x, int64_t p) {
    Int num = rat_num(x), den = rat_den(x);
    int64_t v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    // unit = num/den mod p-power; represent as num * den^{-1} later
    return {static_cast<int>(((v % 2) + 2) % 2), num * den};  // num*den = unit * square
}

int64_t v2_cap(int64_t x, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % 2 == 0 && v < cap) { x /= 2; ++v; }
    return v;
}

int hilbert2_search(int64_t a, int64_t b) {
    // z^2 = a x^2 + b y^2 mod 2^6, primitive triple, with a Hensel margin:
    // some derivative 2ax, 2by, 2z of valuation t <= 2 (then 6 >= 2t+1).
    const int64_t m = 64;
    for (int64_t x = 0; x < m; ++x)
        for (int64_t y = 0; y < m; ++y)
            for (int64_t z = 0; z < m; ++z) {
                if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
                int64_t f = ((a * x * x + b * y * y - z * z) % m + m) % m;
                if (f != 0) continue;
                int64_t t = std::min({v2_cap(((2 * a * x) % m + m) % m, 6),
                                      v2_cap(((2 * b * y) % m + m) % m, 6),
                                      v2_cap(((2 * z) % m + m) % m, 6)});
                if (t <= 2) return 1;
            }
    return -1;
}

} // namespace

int hilbert_symbol(const Rat& a, const Rat& b, int64_t v) {
    if (a == 0 || b == 0) throw UsageError("hilbert_symbol: arguments must be nonzero");
    if (v == kInfinitePlace) return (a < 0 && b < 0) ? -1 : 1;
    if (v == 2) {
        auto [al, ua] = p_part(a, 2);
        auto [be, ub] = p_part(b, 2);
        // square-class representative: 2^alpha * (unit mod 8)
        auto rep = [](int alpha, const Int& u) {
            Int m = u % 8;
            if (m < 0) m += 8;
            return (alpha ? 2 : 1) * static_cast<int64_t>(m);
        };
        return hilbert2_search(rep(al, ua), rep(be, ub));
    }
    if (!is_prime_i64(v)) throw UsageError("hilbert_symbol: place must be prime or infinity");
    // odd p: (a,b)_p = (-1)^{alpha beta eps(p)} (u|p)^beta (v|p)^alpha
    auto [al, ua] = p_part(a, v);
    auto [be, ub] = p_part(b, v);
    int eps = static_cast<int>(((v - 1) / 2) % 2);
    int sign = (al * be * eps) % 2 ? -1 : 1;
    if (be) sign *= legendre(ua, v);
    if (al) sign *= legendre(ub, v);
    return sign;
}

int hilbert_symbol_search_odd(const Rat& a, const Rat& b, int64_t p) {
    auto [al, ua] = p_part(a, p);
    auto [be, ub] = p_part(b, p);
    Int uam = ua % p, ubm = ub % p;
    if (uam < 0) uam += p;
    if (ubm < 0) ubm += p;
    // non-residue representative for the unit part
    auto rep = [&](int alpha, Int u) -> int64_t {
        int64_t nr = 0;
        for (int64_t c = 1; c < p; ++c)
            if (legendre(c, p) == -1) { nr = c; break; }
        int64_t val = legendre(u, p) == 1 ? 1 : nr;
        return alpha ? static_cast<int64_t>(p) * val : val;
    };
    int64_t aa = rep(al, uam), bb = rep(be, ubm);
    const int64_t m = p * p * p;
    for (int64_t x = 0; x < m; ++x)
        for (int64_t y = 0; y < m; ++y)
            for (int64_t z = 0; z < m; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (((aa * x * x + bb * y * y - z * z) % m + m) % m != 0) continue;
                auto vcap = [&](int64_t w) {
                    if (w % m == 0) return 3;
                    int t = 0;
                    int64_t ww = ((w % m) + m) % m;
                    while (ww % p == 0) { ww /= p; ++t; }
                    return t;
                };
                int t = std::min({vcap(2 * aa * x), vcap(2 * bb * y), vcap(2 * z)});
                if (t <= 1) return 1;
            }
    return -1;
}

std::set<int64_t> ramified_places(const Rat& a, const Rat& b) {
    std::set<int64_t> cand{kInfinitePlace, 2};
    auto add_primes = [&cand](Int n) {
        n = abs(n);
        for (int64_t d = 2; d * d <= n; ++d)
            while (n % d == 0) {
                cand.insert(d);
                n /= d;
            }
        if (n > 1) cand.insert(static_cast<int64_t>(n));
    };
    add_primes(rat_num(a));
    add_primes(rat_den(a));
    add_primes(rat_num(b));
    add_primes(rat_den(b));
    std::set<int64_t> ram;
    for (int64_t v : cand)
        if (hilbert_symbol(a, b, v) == -1) ram.insert(v);
    if (ram.size() % 2 != 0)
        throw InternalError("ramified_places: odd number of ramified places");
    return ram;
}

ZOrder::ZOrder(QuaternionAlgebraQ d, RatMat basis, std::string name)
    : d_(d), basis_(std::move(basis)), name_(std::move(name)) {
    if (basis_.size() != 4 || basis_[0].size() != 4)
        throw UsageError(name_ + ": order basis must be 4x4");
    RatVec one_coords = solve_left(basis_, {1, 0, 0, 0});
    for (const Rat& c : one_coords)
        if (!is_integer(c)) throw StructuralError(name_ + ": order does not contain 1");
    if (d_.definite()) {
        // the norm Gram must be positive definite: leading principal minors
        RatMat g = norm_gram();
        for (int k = 1; k <= 4; ++k) {
            RatMat lead(k, RatVec(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) lead[i][j] = g[i][j];
            if (det_rat(lead) <= 0)
                throw StructuralError(name_ + ": norm form is not positive definite");
        }
    }
    gamma_.assign(64, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            QuatElement prod = q_mul(d_, basis_element(i), basis_element(j));
            RatVec coords = coordinates(prod);
            for (int l = 0; l < 4; ++l) {
                if (!is_integer(coords[l]))
                    throw StructuralError(name_ + ": basis not closed under multiplication");
                gamma_[(i * 4 + j) * 4 + l] = rat_num(coords[l]);
            }
        }
}

QuatElement ZOrder::basis_element(int i) const {
    return {{basis_[i][0], basis_[i][1], basis_[i][2], basis_[i][3]}};
}

RatVec ZOrder::coordinates(const QuatElement& x) const {
    return solve_left(basis_, {x.c[0], x.c[1], x.c[2], x.c[3]});
}

bool ZOrder::contains(const QuatElement& x) const {
    for (const Rat& c : coordinates(x))
        if (!is_integer(c)) return false;
    return true;
}

RatMat ZOrder::norm_gram() const {
    RatMat g(4, RatVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g[i][j] = reduced_trace(q_mul(d_, basis_element(i), q_conj(basis_element(j)))) / 2;
    return g;
}

ZpkAlgebra ZOrder::reduction(int p, int k) const {
    Zpk ring(p, k);
    std::vector<Zpk::elem> sc(64);
    for (int t = 0; t < 64; ++t) sc[t] = ring.reduce(gamma_[t]);
    RatVec one_coords = coordinates({{1, 0, 0, 0}});
    std::vector<Zpk::elem> unit(4);
    for (int i = 0; i < 4; ++i) unit[i] = ring.reduce(rat_num(one_coords[i]));
    return ZpkAlgebra(ring, 4, std::move(sc), std::move(unit),
                      name_ + "/" + std::to_string(p) + "^" + std::to_string(k));
}

Int ZOrder::reduced_discriminant() const {
    RatMat tr(4, RatVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            tr[i][j] = reduced_trace(q_mul(d_, basis_element(i), basis_element(j)));
    Rat det = det_rat(tr);
    if (!is_integer(det))
        throw InternalError(name_ + ": trace pairing determinant not integral");
    return isqrt_exact(abs(rat_num(det)));
}

ZOrder maximal_order(int p) {
    QuaternionAlgebraQ d;
    RatMat basis;
    switch (p) {
        case 2:
            d = {-1, -1};
            basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                     {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)}};
            break;
        case 3:
            // the presentation 1, i, (1+j)/2, (i+ij)/2 in (-1,-3)
            d = {-1, -3};
            basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {Rat(1, 2), 0, Rat(1, 2), 0},
                     {0, Rat(1, 2), 0, Rat(1, 2)}};
            break;
        case 5:
            // 1, i, (1+i+j)/2, (2+i+ij)/4 in (-2,-5)
            d = {-2, -5};
            basis = {{1, 0, 0, 0}, {0, 1, 0, 0},
                     {Rat(1, 2), Rat(1, 2), Rat(1, 2), 0},
                     {Rat(1, 2), Rat(1, 4), 0, Rat(1, 4)}};
            break;
        default:
            throw UsageError("maximal_order: p must be 2, 3 or 5");
    }
    ZOrder o(d, basis, "O_max(p=" + std::to_string(p) + ")");
    if (o.reduced_discriminant() != p)
        throw InternalError(o.name() + ": fixture has wrong reduced discriminant");
    std::set<int64_t> expect{kInfinitePlace, p};
    if (ramified_places(d.a, d.b) != expect)
        throw InternalError(o.name() + ": fixture algebra has wrong ramification");
    return o;
}

ZOrder split_matrix_pattern_order() {
    // in (1,1): e11 = (1+i)/2, e22 = (1-i)/2, e12 = (j+ij)/2, e21 = (j-ij)/2
    QuaternionAlgebraQ d{1, 1};
    RatMat basis = {{Rat(1, 2), Rat(1, 2), 0, 0},
                    {0, 0, Rat(1, 2), Rat(1, 2)},
                    {0, 0, Rat(1, 2), Rat(-1, 2)},
                    {Rat(1, 2), Rat(-1, 2), 0, 0}};
    return ZOrder(d, basis, "Mat2-pattern");
}

std::vector<QuatElement> unit_group(const ZOrder& o) {
    if (!o.algebra().definite())
        throw UsageError(o.name() + ": unit group is infinite for an indefinite algebra");
    RatMat q = o.norm_gram();
    RatMat qinv = rat_inverse(q);
    // c_i^2 <= (Q^{-1})_{ii} for any c with c^T Q c = 1
    std::array<int64_t, 4> bound{};
    for (int i = 0; i < 4; ++i) {
        Int num = rat_num(qinv[i][i]), den = rat_den(qinv[i][i]);
        Int quot = num / den;
        Int b = boost::multiprecision::sqrt(quot) + 1;
        bound[i] = static_cast<int64_t>(b);
    }
    std::vector<QuatElement> units;
    std::array<int64_t, 4> c{};
    for (c[0] = -bound[0]; c[0] <= bound[0]; ++c[0])
        for (c[1] = -bound[1]; c[1] <= bound[1]; ++c[1])
            for (c[2] = -bound[2]; c[2] <= bound[2]; ++c[2])
                for (c[3] = -bound[3]; c[3] <= bound[3]; ++c[3]) {
                    QuatElement x{};
                    for (int t = 0; t < 4; ++t)
                        x = q_add(x, q_scale(Rat(c[t]), o.basis_element(t)));
                    if (reduced_norm(o.algebra(), x) == 1) units.push_back(x);
                }
    return units;
}

} // namespace quatlat
