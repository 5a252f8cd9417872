"""Dense univariate polynomials over QQ or GF(p^k), plus integer-poly helpers.

Polynomials are immutable: (field, coeffs) with coeffs ascending and the leading
coefficient nonzero (the zero polynomial has empty coeffs, degree -1). Finite
field factorization is distinct-degree + Cantor-Zassenhaus equal-degree
splitting, enough for the degree <= 6 inputs this project meets.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .fields import GF, QQ


class Poly:
    __slots__ = ("F", "c")

    def __init__(self, field, coeffs):
        self.F = field
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def from_ints(cls, field, int_coeffs):
        return cls(field, [field.of_int(n) for n in int_coeffs])

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.F == other.F and self.c == other.c

    def __hash__(self):
        return hash((self.F, self.c))

    def __repr__(self):
        return f"Poly({self.c})"

    def __add__(self, other):
        F = self.F
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F.add(out[i], v)
        return Poly(F, out)

    def __neg__(self):
        F = self.F
        return Poly(F, [F.neg(v) for v in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.F
        if not self.c or not other.c:
            return Poly.zero(F)
        out = [F.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.c):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, k):
        F = self.F
        return Poly(F, [F.mul(k, v) for v in self.c])

    def monic(self):
        if self.is_zero():
            return self
        F = self.F
        inv = F.inv(self.lc())
        return Poly(F, [F.mul(inv, v) for v in self.c])

    def divmod(self, other):
        F = self.F
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return Poly.zero(F), self
        quo = [F.zero] * (dq + 1)
        inv = F.inv(other.lc())
        for i in range(dq, -1, -1):
            t = F.mul(rem[i + other.deg], inv)
            if not F.is_zero(t):
                quo[i] = t
                for j, b in enumerate(other.c):
                    rem[i + j] = F.sub(rem[i + j], F.mul(t, b))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def eval(self, x):
        F = self.F
        acc = F.zero
        for v in reversed(self.c):
            acc = F.add(F.mul(acc, x), v)
        return acc

    def derivative(self):
        F = self.F
        return Poly(F, [F.mul(F.of_int(i), v) for i, v in enumerate(self.c)][1:])

    def shift(self, a):
        """Compose with x -> x + a (Taylor recentering)."""
        F = self.F
        out = Poly.zero(F)
        xa = Poly(F, [a, F.one])
        for v in reversed(self.c):
            out = out * xa + Poly(F, [v])
        return out

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        r = Poly.one(self.F)
        b = self % mod
        while e:
            if e & 1:
                r = (r * b) % mod
            b = (b * b) % mod
            e >>= 1
        return r


def gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with g = s*a + t*b, g monic (or zero)."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc())
    return r0.monic(), s0.scale(inv), t0.scale(inv)


def resultant(a: Poly, b: Poly):
    """Resultant via the Euclidean remainder sequence (exact over QQ or GF)."""
    F = a.F
    if a.is_zero() or b.is_zero():
        return F.zero
    res = F.one
    while True:
        if b.deg == 0:
            return F.mul(res, _field_pow(F, b.lc(), a.deg))
        r = a % b
        if r.is_zero():
            return F.zero
        # res(a, b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * res(b, r)
        sign = F.one if (a.deg * b.deg) % 2 == 0 else F.neg(F.one)
        res = F.mul(res, F.mul(sign, _field_pow(F, b.lc(), a.deg - r.deg)))
        a, b = b, r


def _field_pow(F, a, e: int):
    r = F.one
    for _ in range(e):
        r = F.mul(r, a)
    return r


def interpolate(field, points) -> Poly:
    """Lagrange interpolation through [(x_i, y_i)] with distinct x_i."""
    out = Poly.zero(field)
    for i, (xi, yi) in enumerate(points):
        num = Poly(field, [yi])
        den = field.one
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * Poly(field, [field.neg(xj), field.one])
            den = field.mul(den, field.sub(xi, xj))
        out = out + num.scale(field.inv(den))
    return out


# ---------------------------------------------------------------------------
# factorization over GF(p^k)

def distinct_degree_factor(f: Poly) -> list[tuple[Poly, int]]:
    """[(product of irreducible factors of degree d, d)] for squarefree monic f."""
    F = f.F
    q = F.q
    out = []
    x = Poly.x(F)
    h = x
    v = f.monic()
    d = 0
    while v.deg > 2 * (d + 1) - 1 and v.deg > 0:
        d += 1
        h = h.pow_mod(q, v)
        g = gcd(h - x, v)
        if g.deg > 0:
            out.append((g, d))
            v = v.exact_div(g)
            h = h % v
    if v.deg > 0:
        out.append((v, v.deg))
    return out


def equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: split monic squarefree f into its degree-d factors."""
    F = f.F
    if f.deg == d:
        return [f]
    q = F.q
    while True:
        a = Poly(F, [F.random(rng) for _ in range(f.deg)])
        if a.deg < 1:
            continue
        g = gcd(a, f)
        if 0 < g.deg < f.deg:
            break
        b = a.pow_mod((q ** d - 1) // 2, f) - Poly.one(F)
        g = gcd(b, f)
        if 0 < g.deg < f.deg:
            break
    return equal_degree_split(g, d, rng) + equal_degree_split(f.exact_div(g), d, rng)


def factor_mod(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Full factorization over GF(p^k): [(monic irreducible, multiplicity)].

    Exponents are recovered by exact division against the factored radical,
    which sidesteps the char-p bookkeeping of squarefree decomposition (inputs
    here have degree <= 6, so the extra divisions are free).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(hash((seed, f.F.q, f.c)))
    out = []
    rest = f.monic()
    for h, d in distinct_degree_factor(_radical(f)):
        for piece in equal_degree_split(h, d, rng):
            e = 0
            while True:
                q, r = rest.divmod(piece)
                if not r.is_zero():
                    break
                rest = q
                e += 1
            out.append((piece, e))
    assert rest.deg == 0
    out.sort(key=lambda t: (t[0].deg, [_elt_key(f.F, v) for v in t[0].c]))
    return out


def _elt_key(F, v):
    return v if getattr(F, "k", 1) == 1 else tuple(v)


def _pth_root(f: Poly) -> Poly:
    """p-th root of f when f' = 0, i.e. f = g(x^p) with g coeffs c^(q/p)."""
    F = f.F
    p = F.char
    return Poly(F, [F.pow(f.c[i], F.q // p) for i in range(0, len(f.c), p)])


def _radical(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f."""
    rad = Poly.one(f.F)
    g = f.monic()
    while g.deg > 0:
        der = g.derivative()
        if der.is_zero():
            g = _pth_root(g)
            continue
        d = gcd(g, der)
        s = g.exact_div(d)
        overlap = gcd(s, rad)
        rad = rad * (s.exact_div(overlap) if overlap.deg > 0 else s)
        g = d
    return rad


def roots_mod(f: Poly) -> list:
    """All roots of f in its (finite) coefficient field, each once."""
    F = f.F
    if f.is_zero():
        raise ValueError("zero polynomial")
    x = Poly.x(F)
    xq = x.pow_mod(F.q, f)
    g = gcd(xq - x, f)
    roots = []
    for piece, _ in factor_mod(g) if g.deg > 0 else []:
        if piece.deg == 1:
            roots.append(F.neg(piece.c[0]))
    # dedupe (repeated factors collapse in factor_mod output but be safe)
    seen = []
    for r in roots:
        if r not in seen:
            seen.append(r)
    return seen


# ---------------------------------------------------------------------------
# integer-coefficient helpers (curve models live as int tuples, ascending)

def int_eval(coeffs, x: int) -> int:
    acc = 0
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


def int_eval_frac(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


def int_derivative(coeffs):
    return tuple(i * v for i, v in enumerate(coeffs))[1:]


def homogeneous_eval(coeffs, r: int, s: int, total_deg: int = 6) -> int:
    """F(r, s) for F(x, z) = z^total_deg * f(x/z), f given by ascending coeffs."""
    acc = 0
    n = len(coeffs) - 1
    for i in range(n, -1, -1):
        acc = acc * r + coeffs[i] * s ** (total_deg - i)
    # note: loop above multiplies by r each step, so coefficient i picks r^i
    return acc


def int_discriminant(coeffs) -> int:
    """disc(f) for integer f: (-1)^(n(n-1)/2) Res(f, f') / lc."""
    f = Poly.from_ints(QQ, coeffs)
    if f.deg < 1:
        raise ValueError("degree must be >= 1")
    res = resultant(f, f.derivative())
    n = f.deg
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = sign * res / Fraction(coeffs[-1])
    assert d.denominator == 1
    return int(d)
