# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of quadtwist._purekernel (see its docstring for semantics).

Values of F(r, s) fit comfortably in signed 128-bit integers for the grid
sizes this project uses (|F| <= sum|f_i| * H^6 ~ 2^71 at H = 2000), so the
row scan runs entirely in machine arithmetic.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128_t"

import math


cdef extern from "math.h":
    long double sqrtl(long double)


cdef inline long long _gcd_ll(long long a, long long b) noexcept:
    cdef long long t
    if a < 0:
        a = -a
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i128 _isqrt128(i128 m) noexcept:
    cdef i128 t = <i128>sqrtl(<long double>m)
    while t * t > m:
        t -= 1
    while (t + 1) * (t + 1) <= m:
        t += 1
    return t


def scan_row(coeffs6, long long s, long long hmax, long long dmax,
             primes, root_offsets, roots_flat):
    """Match _purekernel.scan_row; primes/root_offsets/roots_flat are int lists
    or anything indexable with ints."""
    cdef long long c6 = coeffs6[6]
    cdef Py_ssize_t n_r = 2 * hmax + 1
    cdef Py_ssize_t idx, j
    cdef long long r, p, x0, st, e, lo, hi
    cdef i128 v, t
    cdef i128 *val = <i128 *> malloc(n_r * sizeof(i128))
    cdef long long *dac = <long long *> malloc(n_r * sizeof(long long))
    cdef long long *cac = <long long *> malloc(n_r * sizeof(long long))
    cdef unsigned char *dead = <unsigned char *> malloc(n_r)
    cdef i128 row_coeffs[7]
    cdef i128 spow
    cdef int i
    if val == NULL or dac == NULL or cac == NULL or dead == NULL:
        raise MemoryError

    try:
        for i in range(7):
            spow = 1
            for j in range(6 - i):
                spow *= s
            row_coeffs[i] = (<i128> (<long long> coeffs6[i])) * spow

        for idx in range(n_r):
            r = idx - hmax
            dac[idx] = 1
            cac[idx] = 1
            if _gcd_ll(r, s) != 1:
                dead[idx] = 1
                val[idx] = 0
                continue
            dead[idx] = 0
            v = 0
            for i in range(6, -1, -1):
                v = v * r + row_coeffs[i]
            val[idx] = v

        n_primes = len(primes)
        for pi in range(n_primes):
            p = primes[pi]
            if s % p == 0:
                if c6 % p != 0:
                    continue
                for idx in range(n_r):
                    _strip(val, dac, cac, dead, idx, p, dmax)
            else:
                lo = root_offsets[pi]
                hi = root_offsets[pi + 1]
                for j in range(lo, hi):
                    x0 = roots_flat[j]
                    st = (x0 * s + hmax) % p
                    for idx in range(st, n_r, p):
                        _strip(val, dac, cac, dead, idx, p, dmax)

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
                t = _isqrt128(v)
                if t * t != v:
                    continue
                cac[idx] = <long long> (cac[idx] * t)
            hits.append((r, sign * dac[idx], cac[idx]))
        return hits, zeros
    finally:
        free(val)
        free(dac)
        free(cac)
        free(dead)


cdef inline void _strip(i128 *val, long long *dac, long long *cac,
                        unsigned char *dead, Py_ssize_t idx, long long p,
                        long long dmax) noexcept:
    cdef i128 v
    cdef long long e
    if dead[idx]:
        return
    v = val[idx]
    if v == 0:
        return
    e = 0
    while v % p == 0:
        v //= p
        e += 1
    if e == 0:
        return
    val[idx] = v
    if e & 1:
        dac[idx] *= p
        if dac[idx] > dmax:
            dead[idx] = 1
            return
    while e >= 2:
        cac[idx] *= p
        e -= 2


def kronecker_row(long long a, signed char[::1] out):
    """Fill out[n] = kronecker(a, n)."""
    cdef Py_ssize_t nmax = out.shape[0]
    cdef Py_ssize_t n
    cdef long long aa, nn, t, res, tmp
    out[0] = 1 if (a == 1 or a == -1) else 0
    for n in range(1, nmax):
        nn = n
        t = 0
        while nn % 2 == 0:
            nn //= 2
            t += 1
        if t and a % 2 == 0:
            out[n] = 0
            continue
        res = 1
        if t & 1:
            tmp = a % 8
            if tmp < 0:
                tmp += 8
            if tmp == 3 or tmp == 5:
                res = -res
        aa = a % nn
        if aa < 0:
            aa += nn
        while aa:
            while aa % 2 == 0:
                aa //= 2
                if nn % 8 == 3 or nn % 8 == 5:
                    res = -res
            tmp = aa
            aa = nn
            nn = tmp
            if aa % 4 == 3 and nn % 4 == 3:
                res = -res
            aa %= nn
        out[n] = res if nn == 1 else 0
