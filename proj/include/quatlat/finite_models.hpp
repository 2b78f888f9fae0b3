#pragma once

#include "quatlat/algebra.hpp"

namespace quatlat {

// The trivial extension <R, Q> of R = F_q x F_q by its twisted bimodule Q,
// presented on the basis (E_a, E_b, E_c, E_d) = (diag_1, upper, lower,
// diag_2) with product
//   <a b; c d> <a' b'; c' d'> = <aa', ab'+bd'; ca'+dc', dd'>.
// This is the reduction mod p of the inert-prime Eichler pattern.
inline FqAlgebra trivial_extension(const Fq& f, const std::string& name) {
    const int n = 4;
    std::vector<Fq::elem> sc(n * n * n, 0);
    auto set = [&](int i, int j, int l) { sc[(i * n + j) * n + l] = f.one(); };
    // (a,b,c,d) indices 0..3; nonzero basis products
    set(0, 0, 0);  // E_a E_a = E_a
    set(0, 1, 1);  // E_a E_b = E_b
    set(1, 3, 1);  // E_b E_d = E_b
    set(2, 0, 2);  // E_c E_a = E_c
    set(3, 2, 2);  // E_d E_c = E_c
    set(3, 3, 3);  // E_d E_d = E_d
    std::vector<Fq::elem> unit(n, 0);
    unit[0] = f.one();
    unit[3] = f.one();
    return FqAlgebra(f, n, std::move(sc), std::move(unit), name);
}

// Obar_p = F_{p^2} + F_{p^2} eta_bar as a 4-dimensional algebra over F_p,
// basis (1, w, h, wh) with w a root of x^2 + c1 x + c0, h^2 = 0 (= p mod p)
// and h w = conj(w) h.
inline FqAlgebra residue_quaternion_algebra(const Fq& fp, int c0, int c1, const std::string& name) {
    const int n = 4, p = fp.p();
    auto red = [&](int v) { return fp.scalar(v); };
    std::vector<Fq::elem> sc(n * n * n, 0);
    auto setv = [&](int i, int j, std::array<int, 4> v) {
        for (int l = 0; l < 4; ++l) sc[(i * n + j) * n + l] = red(v[l]);
    };
    (void)p;
    setv(0, 0, {1, 0, 0, 0});
    setv(0, 1, {0, 1, 0, 0});
    setv(0, 2, {0, 0, 1, 0});
    setv(0, 3, {0, 0, 0, 1});
    setv(1, 0, {0, 1, 0, 0});
    setv(2, 0, {0, 0, 1, 0});
    setv(3, 0, {0, 0, 0, 1});
    setv(1, 1, {-c0, -c1, 0, 0});   // w^2
    setv(1, 2, {0, 0, 0, 1});       // w h = wh
    setv(1, 3, {0, 0, -c0, -c1});   // w wh = w^2 h
    setv(2, 1, {0, 0, -c1, -1});    // h w = (-c1 - w) h
    setv(2, 2, {0, 0, 0, 0});       // h^2 = p = 0
    setv(2, 3, {0, 0, 0, 0});       // h wh = conj(w) h^2
    setv(3, 1, {0, 0, c0, 0});      // wh w = N(w) h
    setv(3, 2, {0, 0, 0, 0});       // wh h = w h^2
    setv(3, 3, {0, 0, 0, 0});       // wh wh = N(w) h^2
    std::vector<Fq::elem> unit = {fp.one(), 0, 0, 0};
    return FqAlgebra(fp, n, std::move(sc), std::move(unit), name);
}

} // namespace quatlat
