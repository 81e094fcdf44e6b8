#!/usr/bin/env python3
"""Independent derivations for the values frozen into the C++ test suites.

Nothing here shares code with the library: closed forms are summed directly
with Python integers, lattice censuses come from a plain set-based BFS, and
roots use numpy/mpmath. Run it to reprint every frozen constant.
"""
from fractions import Fraction
from itertools import combinations, product
from math import comb, cos, pi, sin, sqrt, tan

import mpmath
import numpy as np


def h_A(n):
    return [comb(n, k) ** 2 for k in range(n + 1)]


def h_C(n):
    return [comb(2 * n, 2 * k) for k in range(n + 1)]


def h_B(n):
    c = [comb(2 * n + 1, 2 * k) for k in range(n + 1)]
    for k in range(n):
        c[k + 1] -= 2 * n * comb(n - 1, k)
    return c


def h_D(n):
    c = [comb(2 * n, 2 * k) for k in range(n + 1)]
    for k in range(n - 1):
        c[k + 1] -= 2 * n * comb(n - 2, k)
    return c


def series(h, d, K):
    return [sum(h[j] * comb(d - 1 + k - j, d - 1) for j in range(min(k, len(h) - 1) + 1))
            for k in range(K + 1)]


def bfs_census(gens, K):
    gens = [tuple(g) for g in gens]
    zero = tuple(0 for _ in gens[0])
    seen = {zero}
    frontier = [zero]
    counts = [1]
    for _ in range(K):
        nxt = set()
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if w not in seen:
                    nxt.add(w)
        seen |= nxt
        frontier = list(nxt)
        counts.append(len(nxt))
    return counts


def unit(m, i, s=1):
    v = [0] * m
    v[i] = s
    return v


def gens_A(n):
    out = []
    for i, j in combinations(range(n + 1), 2):
        v = [0] * (n + 1)
        v[i], v[j] = 1, -1
        out += [v, [-x for x in v]]
    return out


def pm_pairs(n):
    out = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            out.append(v)
    return out


def gens_B(n):
    return pm_pairs(n) + [unit(n, i, s) for i in range(n) for s in (1, -1)]


def gens_C(n):
    return pm_pairs(n) + [unit(n, i, s) for i in range(n) for s in (2, -2)]


def gens_D(n):
    return pm_pairs(n)


def gens_G2():
    out = []
    for i, j in combinations(range(3), 2):
        v = [0, 0, 0]
        v[i], v[j] = 1, -1
        out += [v, [-x for x in v]]
    for i in range(3):
        v = [-1, -1, -1]
        v[i] = 2
        out += [v, [-x for x in v]]
    return out


def gens_F4():
    out = [[2 * x for x in v] for v in pm_pairs(4)]
    out += [unit(4, i, s) for i in range(4) for s in (2, -2)]
    out += [list(s) for s in product((1, -1), repeat=4)]
    return out


def recover(S, d):
    return [sum((-1) ** i * comb(d, i) * S[j - i] for i in range(0, min(j, d) + 1)) for j in range(d + 1)]


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** c * m[0][c] * det([row[:c] + row[c + 1:] for row in m[1:]]) for c in range(len(m)))


def main():
    print("h_A(2)", h_A(2), "h_B(3)", h_B(3), "h_C(2)", h_C(2), "h_D(4)", h_D(4))
    print("h_B(16)", h_B(16))
    print("series(1+x,1,4)", series([1, 1], 1, 4))
    print("series(1+4x+x^2,2,3)", series([1, 4, 1], 2, 3))
    print("series(1,3,2)", series([1], 3, 2))
    print("series(h_B2,2,4)", series(h_B(2), 2, 4))
    print("series(h_D3,3,6)", series(h_D(3), 3, 6))

    # eval-at-1 closed sums checked against direct coefficient sums
    for n in range(1, 201):
        assert sum(h_A(n)) == comb(2 * n, n)
        assert sum(h_C(n)) == 2 ** (2 * n - 1)
        assert sum(h_B(n)) == 4 ** n - n * 2 ** n
        if n >= 2:
            assert sum(h_D(n)) * 4 == 2 ** (2 * n + 1) - 2 * n * 2 ** n
    print("eval-at-1 sums: confirmed for n <= 200")
    print("h_D(2)(1)", sum(h_D(2)), "h_B(5)(1)", sum(h_B(5)), "h_A(7)(1)", sum(h_A(7)))

    # b'_k relation
    def dfact(m):
        r = 1
        while m > 1:
            r *= m
            m -= 2
        return r
    for n in range(1, 201):
        bp = [Fraction(dfact(2 * n + 1), dfact(2 * k - 1) * dfact(2 * n - 2 * k + 1)) - 2 * k for k in range(n + 1)]
        assert [comb(n, k) * bp[k] for k in range(n + 1)] == h_B(n)
    print("b' n=3", [str(Fraction(dfact(7), dfact(2 * k - 1) * dfact(7 - 2 * k)) - 2 * k) for k in range(4)])

    # censuses by independent BFS
    for name, g, K in [("A1", gens_A(1), 6), ("A2", gens_A(2), 6), ("A3", gens_A(3), 6),
                       ("B1", gens_B(1), 6), ("B2", gens_B(2), 6), ("B3", gens_B(3), 6),
                       ("C1", gens_C(1), 6), ("C2", gens_C(2), 6), ("C3", gens_C(3), 6),
                       ("D2", gens_D(2), 6), ("D3", gens_D(3), 6), ("G2", gens_G2(), 4), ("F4", gens_F4(), 6)]:
        S = bfs_census(g, K)
        d = {"G2": 2, "F4": 4}.get(name, int(name[1]))
        print(name, "census", S, "recovered", recover(S, d))
    for n in range(1, 4):
        assert bfs_census(gens_A(n), 6) == series(h_A(n), n, 6)
        assert bfs_census(gens_B(n), 6) == series(h_B(n), n, 6)
        assert bfs_census(gens_C(n), 6) == series(h_C(n), n, 6)
        if n >= 2:
            assert bfs_census(gens_D(n), 6) == series(h_D(n), n, 6)
    print("closed forms match BFS for A/B/C/D n <= 3, K = 6")

    # exceptional recovered polynomials: roots
    for name, g, K, d in [("G2", gens_G2(), 4, 2), ("F4", gens_F4(), 6, 4)]:
        h = recover(bfs_census(g, K), d)
        print(name, "roots", np.roots(h[::-1]))

    # D3 roots and a 6-decimal value of -4 + sqrt(15)
    print("D3 roots", np.roots(h_D(3)[::-1]), "-4+sqrt15", mpmath.mpf(-4) + mpmath.sqrt(15))
    print("phi for D3 roots", [2 * mpmath.atan(mpmath.sqrt(-r)) for r in (-4 + mpmath.sqrt(15), -1, -4 - mpmath.sqrt(15))])

    # B16 real root count (14 real of 16)
    r = mpmath.polyroots(h_B(16)[::-1], maxsteps=400, extraprec=400)
    print("B16 real roots", sum(1 for z in r if abs(mpmath.im(z)) < mpmath.mpf(10) ** -30))

    # envelope: sup over c in [0,1] of (n/2)(1-c)c^{(n-2)/2} equals (m/(m+1))^m, m = (n-2)/2
    for n in (3, 4, 10, 20, 31, 32, 40):
        m = (n - 2) / 2
        grid = max(abs(n / 2 * sin(phi) ** 2 * cos(phi) ** (n - 2))
                   for phi in (pi * (i + 0.5) / 10000 for i in range(10000)))
        print("envelope sup n=%d closed=%.6f grid=%.6f" % (n, (m / (m + 1)) ** m, grid))

    # minimum interlacing margin (-1)^j g_n(j pi / n)
    for n in range(3, 8):
        print("margin n=%d" % n, min((-1) ** j * (cos(j * pi) + n / 2 * sin(j * pi / n) ** 2 * cos(j * pi / n) ** (n - 2))
                                     for j in range(n + 1)))

    # PF witness for [1,1,1]
    print("det[[1,1,0],[1,1,1],[0,1,1]]", det([[1, 1, 0], [1, 1, 1], [0, 1, 1]]))
    # product A2*C2
    a, c = h_A(2), h_C(2)
    print("A2*C2", [sum(a[i] * c[k - i] for i in range(3) if 0 <= k - i < 3) for k in range(5)])


if __name__ == "__main__":
    main()
