"""Exact integer arithmetic: primes, factoring, squarefree parts, Kronecker symbols.

All values are plain Python ints (arbitrary precision). Factoring follows a fixed
strategy so that twist bucketing can never silently mis-bucket: trial division by
primes below 10^5, then Brent-cycle Pollard rho, with a deterministic Miller-Rabin
primality test (valid far beyond the ~10^22 values produced by the scanners).
Values that resist the rho iteration budget raise UnfactoredError instead of
returning a guess.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Iterator

TRIAL_BOUND = 100_000
RHO_BUDGET = 2_000_000

# deterministic Miller-Rabin base set, valid for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


class UnfactoredError(ArithmeticError):
    """Raised when the factoring budget is exhausted; carries the rough cofactor."""

    def __init__(self, n: int, cofactor: int):
        super().__init__(f"could not factor {n}: unfactored cofactor {cofactor}")
        self.n = n
        self.cofactor = cofactor


@lru_cache(maxsize=None)
def primes_below(bound: int) -> tuple[int, ...]:
    """All primes < bound, by sieve of Eratosthenes."""
    if bound <= 2:
        return ()
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return tuple(i for i in range(bound) if sieve[i])


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24, strong-probable-prime beyond."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, budget: int, rng: random.Random) -> int | None:
    """Brent-cycle Pollard rho; returns a nontrivial factor or None on budget end."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
                spent += min(m, r - k + m)
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
        if 1 < g < n:
            return g
    return None


def factorize(n: int, rho_budget: int = RHO_BUDGET) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; raises UnfactoredError."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    orig = n
    out: dict[int, int] = {}
    for p in primes_below(TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        g = _pollard_brent(m, rho_budget, rng)
        if g is None:
            raise UnfactoredError(orig, m)
        stack.extend([g, m // g])
    return out


def squarefree_part(n: int) -> tuple[int, int]:
    """Split n = d*c^2 with d squarefree and sign(d) = sign(n). Returns (d, c)."""
    if n == 0:
        raise ValueError("squarefree_part(0) undefined")
    sign = 1 if n > 0 else -1
    d, c = 1, 1
    for p, e in factorize(n).items():
        c *= p ** (e // 2)
        if e % 2:
            d *= p
    return sign * d, c


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    d, c = squarefree_part(n)
    return c == 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), full generality (n may be 0, negative, or even)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    # n > 0: strip factors of 2
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
    # Jacobi symbol on odd n
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


def squarefree_sieve(bound: int) -> Iterator[int]:
    """Squarefree d with 0 < |d| < bound and d != 1, ascending by |d|.

    Ties (same |d|) emit the positive value first.
    """
    if bound < 2:
        raise ValueError("bound must be >= 2")
    flags = bytearray([1]) * bound
    for p in primes_below(math.isqrt(bound - 1) + 1):
        for m in range(p * p, bound, p * p):
            flags[m] = 0
    for m in range(1, bound):
        if flags[m]:
            if m != 1:
                yield m
            yield -m


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for squarefree d: d if d=1 mod 4, else 4d."""
    if d == 1 or not is_squarefree(d):
        raise ValueError(f"need squarefree d != 1, got {d}")
    return d if d % 4 == 1 else 4 * d


def rational_reconstruct(u: int, m: int) -> tuple[int, int] | None:
    """Find n/q = u (mod m), |n|, q <= sqrt(m/2), gcd(q, m)=1; None if impossible."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if abs(s1) > bound or math.gcd(s1, m) != 1:
        return None
    n, q = (r1, s1) if s1 > 0 else (-r1, -s1)
    if q == 0:
        return None
    return n, q
