"""Coefficient fields: the rationals and F_p / F_{p^2}.

Elements are plain hashable Python objects (Fraction for QQ, int for F_p,
(a0, a1) tuples for F_{p^2} meaning a0 + a1*w with w^2 = u), manipulated through
the field object. F_{p^2} is built as F_p[w]/(w^2 - u) for the least quadratic
nonresidue u mod p, fixed per p so reductions are reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .arith import is_probable_prime


class QQ:
    """Field interface over Fraction elements."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of_int(n):
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def sqrt(a):
        """Exact rational square root, or None."""
        if a < 0:
            return None
        pn, qn = a.numerator, a.denominator
        rp, rq = math.isqrt(pn), math.isqrt(qn)
        if rp * rp == pn and rq * rq == qn:
            return Fraction(rp, rq)
        return None

    @staticmethod
    def is_square(a):
        return QQ.sqrt(a) is not None

    def __repr__(self):
        return "QQ"


QQ = QQ()  # singleton


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise ValueError(f"no nonresidue mod {p}")


class GF:
    """F_p (k=1, elements int) or F_{p^2} (k=2, elements (a0, a1))."""

    def __init__(self, p: int, k: int = 1):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 not supported")
        if k not in (1, 2):
            raise ValueError("only k = 1 or 2")
        self.p = p
        self.k = k
        self.q = p ** k
        self.char = p
        self.u = least_nonresidue(p) if k == 2 else None
        if k == 1:
            self.zero, self.one = 0, 1
        else:
            self.zero, self.one = (0, 0), (1, 0)

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p},2)"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("GF", self.p, self.k))

    def of_int(self, n: int):
        return n % self.p if self.k == 1 else (n % self.p, 0)

    def embed_base(self, a: int):
        """Lift an F_p element into this field."""
        return a if self.k == 1 else (a, 0)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return (-a[0] % self.p, -a[1] % self.p)

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        p = self.p
        return ((a[0] * b[0] + self.u * a[1] * b[1]) % p,
                (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        # (a0 + a1 w)^-1 = (a0 - a1 w) / (a0^2 - u a1^2)
        p = self.p
        nrm = (a[0] * a[0] - self.u * a[1] * a[1]) % p
        ninv = pow(nrm, -1, p)
        return (a[0] * ninv % p, -a[1] * ninv % p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, b = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def frobenius(self, a):
        """x -> x^p; identity on F_p, conjugation on F_{p^2}."""
        if self.k == 1:
            return a
        return (a[0], -a[1] % self.p)

    def norm(self, a):
        """Norm to F_p (k=2) or identity (k=1)."""
        if self.k == 1:
            return a
        return (a[0] * a[0] - self.u * a[1] * a[1]) % self.p

    def trace(self, a):
        if self.k == 1:
            return a
        return 2 * a[0] % self.p

    def is_square(self, a) -> bool:
        """True for 0 and quadratic residues."""
        if self.is_zero(a):
            return True
        return self.pow(a, (self.q - 1) // 2) == self.one

    def chi(self, a) -> int:
        """Quadratic character: 0 on zero, +-1 otherwise."""
        if self.is_zero(a):
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == self.one else -1

    def sqrt(self, a):
        """Deterministic Tonelli-Shanks square root, canonical choice, or None."""
        if self.is_zero(a):
            return self.zero
        if self.chi(a) != 1:
            return None
        q = self.q
        m = q - 1
        e = (m & -m).bit_length() - 1
        m >>= e
        # find a nonresidue deterministically
        z = None
        for cand in self._element_stream():
            if not self.is_zero(cand) and self.chi(cand) == -1:
                z = cand
                break
        c = self.pow(z, m)
        t = self.pow(a, m)
        r = self.pow(a, (m + 1) // 2)
        while t != self.one:
            # order of t is 2^i
            i, tt = 0, t
            while tt != self.one:
                tt = self.mul(tt, tt)
                i += 1
            b = c
            for _ in range(e - i - 1):
                b = self.mul(b, b)
            r = self.mul(r, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            e = i
        return self._canonical(r)

    def _canonical(self, r):
        """Pick the canonical one of +-r (smaller tuple/int representation)."""
        nr = self.neg(r)
        return r if self._key(r) <= self._key(nr) else nr

    def _key(self, a):
        return a if self.k == 1 else (a[1], a[0])

    def _element_stream(self):
        if self.k == 1:
            return iter(range(self.p))
        return ((a, b) for b in range(self.p) for a in range(self.p))

    def elements(self):
        """Iterator over all field elements (small fields only)."""
        return self._element_stream()

    def random(self, rng):
        if self.k == 1:
            return rng.randrange(self.p)
        return (rng.randrange(self.p), rng.randrange(self.p))

    def as_root_of(self, quad_coeffs):
        """A root in F_{p^2} of the monic quadratic x^2 + c1 x + c0 over F_p."""
        assert self.k == 2
        c0, c1 = quad_coeffs[0] % self.p, quad_coeffs[1] % self.p
        disc = (c1 * c1 - 4 * c0) % self.p
        s = self.sqrt(self.embed_base(disc))
        if s is None:
            raise ValueError("no root: discriminant is a nonsquare in F_{p^2}?")
        half = self.embed_base(pow(2, -1, self.p))
        return self.mul(self.add(self.embed_base(-c1 % self.p), s), half)
