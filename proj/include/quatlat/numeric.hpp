#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "quatlat/errors.hpp"

namespace quatlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int isqrt_exact(const Int& n) {
    if (n < 0) throw InternalError("isqrt_exact: negative input");
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) throw InternalError("isqrt_exact: " + n.str() + " is not a perfect square");
    return r;
}

inline int64_t pow_i64(int64_t base, int exp) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int64_t vp(Int n, int64_t p) {
    if (n == 0) throw InternalError("vp of zero");
    int64_t v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Legendre symbol (a|p) for odd prime p.
inline int legendre(Int a, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    Int r = 1, base = a, e = (p - 1) / 2, mod = p;
    while (e > 0) {
        if (e % 2 == 1) r = r * base % mod;
        base = base * base % mod;
        e /= 2;
    }
    return r == 1 ? 1 : (r == mod - 1 ? -1 : throw InternalError("legendre: p not prime?"));
}

// Kronecker symbol (a|n) for n = 2 extends the Legendre symbol:
// 0 if a even, +1 if a = +-1 mod 8, -1 if a = +-3 mod 8.
inline int kronecker2(const Int& a) {
    if (a % 2 == 0) return 0;
    Int m = a % 8;
    if (m < 0) m += 8;
    return (m == 1 || m == 7) ? 1 : -1;
}

inline int kronecker(const Int& a, int64_t p) {
    return p == 2 ? kronecker2(a) : legendre(a, p);
}

} // namespace quatlat
