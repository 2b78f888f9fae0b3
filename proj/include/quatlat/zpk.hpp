#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quatlat/errors.hpp"
#include "quatlat/numeric.hpp"

namespace quatlat {

// The finite quotient ring Z/p^k, the scalar ring of every local-order
// model.  Values are canonical representatives in [0, p^k).
class Zpk {
public:
    using elem = int64_t;

    Zpk(int p, int k) : p_(p), k_(k), m_(pow_i64(p, k)) {
        if (k < 1) throw UsageError("Zpk: precision must be >= 1");
    }

    int p() const { return p_; }
    int k() const { return k_; }
    elem modulus() const { return m_; }

    elem reduce(Int x) const {
        Int r = x % m_;
        if (r < 0) r += m_;
        return static_cast<elem>(r);
    }
    elem reduce_i64(int64_t x) const {
        int64_t r = x % m_;
        return r < 0 ? r + m_ : r;
    }

    elem zero() const { return 0; }
    elem one() const { return 1 % m_; }
    elem add(elem a, elem b) const { return (a + b) % m_; }
    elem sub(elem a, elem b) const { return (a - b % m_ + m_) % m_; }
    elem neg(elem a) const { return (m_ - a) % m_; }
    elem mul(elem a, elem b) const {
        return static_cast<elem>((static_cast<__int128>(a) * b) % m_);
    }
    bool is_unit(elem a) const { return a % p_ != 0; }
    elem inv(elem a) const {
        if (!is_unit(a)) throw StructuralError("Zpk: inverse of non-unit");
        // Hensel-lift the inverse mod p
        elem x = 0;
        for (elem c = 1; c < p_; ++c)
            if (c * (a % p_) % p_ == 1) { x = c; break; }
        for (int prec = 1; prec < k_; prec *= 2)
            x = mul(x, sub(2 % m_, mul(a, x)));
        return x;
    }
    // p-adic valuation in [0, k]; v(0) = k by convention (indistinguishable
    // from anything >= k at this precision).
    int val(elem a) const {
        if (a == 0) return k_;
        int v = 0;
        while (a % p_ == 0) { a /= p_; ++v; }
        return v;
    }

    std::string str() const { return "Z/" + std::to_string(p_) + "^" + std::to_string(k_); }

private:
    int p_, k_;
    elem m_;
};

// A scalar of Z/p^k carried with its ring, for contexts that pass values
// across precisions.
struct QuotientRingScalar {
    int p;
    int k;
    Zpk::elem value;
};

} // namespace quatlat
