"""Pure-Python reference implementation of the hot kernels.

Semantics must match quadtwist._speedups exactly; the compiled module is
preferred at import time (see quadtwist.kernel) and the benchmark script
compares the two.

scan_row processes one row s of the (r, s) grid: for every r coprime to s it
computes F(r, s) (degree-6 homogenization of the curve polynomial), strips all
sieve primes (every prime <= the twist bound must be in the table), and keeps
the pair only if the rough cofactor is a perfect square -- otherwise the
squarefree part necessarily exceeds the twist bound. Sieve primes are located
by the roots of f mod p, never by trial division of every value.
"""

from __future__ import annotations

import math


def scan_row(coeffs6, s, hmax, dmax, primes, root_offsets, roots_flat):
    """One grid row. Returns (hits, zeros):

    hits: list of (r, d, c) with F(r, s) = d * c^2, d squarefree, 0 < |d| <= dmax
    zeros: list of r with F(r, s) = 0 (rational root of f at x = r/s)
    """
    c6 = coeffs6[6]
    n_r = 2 * hmax + 1
    val = [0] * n_r
    dac = [1] * n_r
    cac = [1] * n_r
    dead = bytearray(n_r)

    row_coeffs = [coeffs6[i] * s ** (6 - i) for i in range(7)]
    for idx in range(n_r):
        r = idx - hmax
        if math.gcd(r, s) != 1:
            dead[idx] = 1
            continue
        acc = 0
        for i in range(6, -1, -1):
            acc = acc * r + row_coeffs[i]
        val[idx] = acc

    for pi in range(len(primes)):
        p = int(primes[pi])
        if s % p == 0:
            if c6 % p != 0:
                continue
            idxs = range(n_r)
        else:
            lo, hi = root_offsets[pi], root_offsets[pi + 1]
            starts = [((int(roots_flat[j]) * s + hmax) % p) for j in range(lo, hi)]
            idxs = (i for st in starts for i in range(st, n_r, p))
        for idx in idxs:
            if dead[idx]:
                continue
            v = val[idx]
            if v == 0:
                continue
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            if e == 0:
                continue
            val[idx] = v
            if e & 1:
                dac[idx] *= p
                if dac[idx] > dmax:
                    dead[idx] = 1
                    continue
            cac[idx] *= p ** (e >> 1)

    hits = []
    zeros = []
    for idx in range(n_r):
        if dead[idx]:
            continue
        r = idx - hmax
        v = val[idx]
        if v == 0:
            zeros.append(r)
            continue
        sign = 1
        if v < 0:
            sign = -1
            v = -v
        if v != 1:
            t = math.isqrt(v)
            if t * t != v:
                continue  # squarefree part has a prime factor > dmax
            cac[idx] *= t
        hits.append((r, sign * dac[idx], cac[idx]))
    return hits, zeros


def kronecker_row(a, out):
    """Fill out[n] = kronecker(a, n) for n = 0..len(out)-1."""
    out[0] = 1 if a in (1, -1) else 0
    for n in range(1, len(out)):
        out[n] = _kronecker(a, n)


def _kronecker(a, n):
    # n > 0 here
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t and a % 2 == 0:
        return 0
    res = 1
    if t % 2 and a % 8 in (3, 5):
        res = -res
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0
