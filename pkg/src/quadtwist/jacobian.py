"""Genus-2 Jacobian arithmetic in Mumford representation, over finite fields and Q.

A point of Pic^0 is stored canonically as (A, B, n): A monic of degree <= 2,
deg B < deg A, B^2 = h (mod A) for the working sextic/quintic h, plus an
integer n balancing the divisor at infinity. Three infinity regimes:

  odd    deg h = 5: one place at infinity; classes [D - deg(D) * inf];
         n is always 0.
  inert  deg h = 6, lc(h) a nonsquare: one place of degree 2 at infinity
         (D_inf); only even-degree affine parts occur, classes
         [D - (deg D / 2) * D_inf]; n is always 0.
  split  deg h = 6, lc(h) a square: two places inf+, inf-; classes
         [D + n*inf+ + (2 - deg A - n)*inf- - (inf+ + inf-)] with
         0 <= n <= 2 - deg A. Reduction steps are directed toward +-V,
         where V is the polynomial square root of h truncated at degree 3
         (deg(h - V^2) <= 2), and the counter is updated by the exact order
         of vanishing of y - B at each infinite place, computed through
         ord(y - B) + ord(y + B) = ord(h - B^2).

Composition is Cantor's algorithm in all regimes. The split-case normal form
is validated in the tests against exhaustive class enumeration and against
zeta-function orders.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize
from .curve import TwistedCurve, zeta_data
from .fields import GF, QQ
from .poly import Poly, factor_mod, gcd, interpolate, resultant, xgcd


class GroupSamplingError(RuntimeError):
    """Random sampling failed to generate the group (choose another prime)."""


class Jacobian:
    """Pic^0 of y^2 = h(x) over a finite field, h squarefree of degree 5 or 6."""

    def __init__(self, field, h: Poly):
        if h.F != field:
            raise ValueError("polynomial field mismatch")
        if h.deg not in (5, 6):
            raise ValueError("degree must be 5 or 6")
        if gcd(h, h.derivative()).deg != 0:
            raise ValueError("h has repeated roots (bad reduction)")
        self.F = field
        self.h = h
        if h.deg == 5:
            self.mode = "odd"
        else:
            s = field.sqrt(h.lc())
            if s is None:
                self.mode = "inert"
            else:
                self.mode = "split"
                self.V = self._series_sqrt(s)
                self.R = h - self.V * self.V
                assert self.R.deg <= 2 and not self.R.is_zero()
                self.rho = self.R.deg

    @classmethod
    def of_twist(cls, tw: TwistedCurve, p: int, k: int = 1) -> "Jacobian":
        F = GF(p, k)
        return cls(F, tw.poly_over(F))

    def _series_sqrt(self, s) -> Poly:
        """V = s*x^3 + v2*x^2 + v1*x + v0 with deg(h - V^2) <= 2."""
        F = self.F
        c = self.h.c
        inv2s = F.inv(F.add(s, s))
        v2 = F.mul(c[5], inv2s)
        v1 = F.mul(F.sub(c[4], F.mul(v2, v2)), inv2s)
        v0 = F.mul(F.sub(c[3], F.add(F.mul(v2, v1), F.mul(v2, v1))), inv2s)
        return Poly(F, [v0, v1, v2, s])

    # -- canonical elements -------------------------------------------------

    def zero(self):
        n = 1 if self.mode == "split" else 0
        return ((self.F.one,), (), n)

    def is_zero(self, e) -> bool:
        return e == self.zero()

    def _pack(self, A: Poly, B: Poly, n: int):
        return (A.c, B.c, n)

    def _unpack(self, e):
        return Poly(self.F, e[0]), Poly(self.F, e[1]), e[2]

    def validate(self, e) -> bool:
        A, B, n = self._unpack(e)
        if A.is_zero() or not A.c[-1] == self.F.one:
            return False
        if B.deg >= max(A.deg, 1) and not B.is_zero():
            return False
        if not ((B * B - self.h) % A).is_zero():
            return False
        if self.mode == "split":
            return 0 <= n <= 2 - A.deg
        if self.mode == "inert" and A.deg % 2:
            return False
        return n == 0

    def neg(self, e):
        A, B, n = self._unpack(e)
        nb = (-B) % A if A.deg > 0 else B
        if self.mode == "split":
            return self._pack(A, nb, 2 - A.deg - n)
        return self._pack(A, nb, 0)

    def add(self, e1, e2):
        A1, B1, n1 = self._unpack(e1)
        A2, B2, n2 = self._unpack(e2)
        A3, B3, dd = self._compose(A1, B1, A2, B2)
        if self.mode == "split":
            a = n1 + n2 + dd - 1
            return self._normalize(A3, B3, a)
        return self._normalize(A3, B3, 0)

    def sub(self, e1, e2):
        return self.add(e1, self.neg(e2))

    def mul(self, e, k: int):
        if k < 0:
            return self.mul(self.neg(e), -k)
        acc = self.zero()
        base = e
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def from_point(self, x0, y0):
        """Class [P - inf+] (split) or [P - inf] (odd); P = (x0, y0) affine."""
        if self.mode == "inert":
            raise ValueError("single points are not classes on an inert model")
        F = self.F
        assert F.mul(y0, y0) == self.h.eval(x0)
        A = Poly(F, [F.neg(x0), F.one])
        B = Poly(F, [y0])
        return self._normalize(A, B, 0)

    def class_minus_infplus(self, pairs):
        """[sum D_i - (sum deg D_i) * inf+] for semi-reduced pairs (split only)."""
        assert self.mode == "split"
        rec = (Poly.one(self.F), Poly.zero(self.F), 1)
        for A, B in pairs:
            rec = self._rec_add(rec, (A, B, 1 - A.deg))
        return self._normalize(*rec)

    def xi(self):
        """[inf+ - inf-] (split mode only)."""
        assert self.mode == "split"
        return ((self.F.one,), (), 2)

    def class_from_pairs(self, pos, neg):
        """[sum pos - sum neg], balanced at infinity, for semi-reduced pairs.

        If the degrees differ, the difference is balanced against the place(s)
        at infinity: deg*inf (odd), (deg/2)*D_inf (inert, degree must be even),
        deg*inf+ (split). With equal degrees the class is the plain difference
        in all modes.
        """
        dp = sum(a.deg for a, _ in pos)
        dn = sum(a.deg for a, _ in neg)
        if self.mode == "split":
            rec = (Poly.one(self.F), Poly.zero(self.F), 1)  # identity record
            for A, B in pos:
                rec = self._rec_add(rec, (A, B, 1 - A.deg))
            for A, B in neg:
                nb = (-B) % A if A.deg > 0 else B
                # -[D - degD*inf+] = [iota(D) + degD*inf+ - degD*(inf+ + inf-)]
                #                  = record (A, -B, a = 1 - degA ... via involution)
                rec = self._rec_add(rec, (A, nb, 1))
            return self._normalize(*rec)
        # odd / inert: plain Cantor on the affine parts
        if self.mode == "inert" and (dp - dn) % 2:
            raise ValueError("odd-degree class on an inert model")
        A, B = Poly.one(self.F), Poly.zero(self.F)
        for Ai, Bi in pos:
            A, B, _ = self._compose(A, B, Ai, Bi)
        for Ai, Bi in neg:
            nb = (-Bi) % Ai if Ai.deg > 0 else Bi
            A, B, _ = self._compose(A, B, Ai, nb)
        return self._normalize(A, B, 0)

    # -- Cantor composition --------------------------------------------------

    def _compose(self, A1, B1, A2, B2):
        """Semi-reduced composition; returns (A3, B3, deg of the dropped gcd)."""
        F = self.F
        d1, e1, e2 = xgcd(A1, A2)
        d, c1, c2 = xgcd(d1, B1 + B2)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        A3 = (A1 * A2).exact_div(d * d)
        num = s1 * A1 * B2 + s2 * A2 * B1 + s3 * (B1 * B2 + self.h)
        B3 = (num.exact_div(d)) % A3
        return A3.monic(), B3, d.deg

    # -- reduction / normal form ---------------------------------------------

    def _reduce_step_plain(self, A, B):
        Phi = self.h - B * B
        A2 = Phi.exact_div(A).monic()
        B2 = (-B) % A2 if A2.deg > 0 else Poly.zero(self.F)
        return A2, B2

    def _reduce_step_split(self, A, B, a, toward: Poly):
        """One V-directed step; exact counter update via orders at infinity."""
        W = (toward - B) % A
        Bh = toward - W
        Phi = self.h - Bh * Bh
        assert not Phi.is_zero()
        A2 = Phi.exact_div(A).monic()
        B2 = (-Bh) % A2 if A2.deg > 0 else Poly.zero(self.F)
        phi = Phi.deg
        # ord(y - Bh) at each infinite place via ord(y-Bh) + ord(y+Bh) = -phi,
        # with ord(y+Bh) read from the decomposition (y -+ V) + (V +- ... Bh)
        G = self.V + Bh
        ord_plus_yplus = (3 - self.rho) if G.is_zero() else -G.deg
        Gm = Bh - self.V
        ord_minus_yplus = (3 - self.rho) if Gm.is_zero() else -Gm.deg
        u_plus = -phi - ord_plus_yplus
        u_minus = -phi - ord_minus_yplus
        assert A.deg + A2.deg == phi
        assert u_plus + u_minus == -phi
        a2 = a - u_plus - A2.deg
        return A2, B2, a2

    def _normalize(self, A, B, a):
        if self.mode != "split":
            while A.deg > 2:
                A, B = self._reduce_step_plain(A, B)
            if self.mode == "inert":
                assert A.deg % 2 == 0
            return self._pack(A, B, 0)
        V = self.V
        while A.deg > 2:
            A, B, a = self._reduce_step_split(A, B, a, V)
        while a < 0:
            A, B, a = self._reduce_step_split(A, B, a, -V)
        while a > 2 - A.deg:
            A, B, a = self._reduce_step_split(A, B, a, V)
        return self._pack(A, B, a)

    def _rec_add(self, rec1, rec2):
        """Add two split-mode records without normalizing."""
        A1, B1, a1 = rec1
        A2, B2, a2 = rec2
        A3, B3, dd = self._compose(A1, B1, A2, B2)
        return A3, B3, a1 + a2 + dd - 1

    # -- sampling and enumeration ---------------------------------------------

    def random_point(self, rng: random.Random):
        F = self.F
        while True:
            x = F.random(rng)
            y = F.sqrt(self.h.eval(x))
            if y is not None:
                if rng.getrandbits(1):
                    y = F.neg(y)
                return x, y

    def random_element(self, rng: random.Random):
        F = self.F
        if self.mode in ("odd", "split"):
            x1, y1 = self.random_point(rng)
            x2, y2 = self.random_point(rng)
            e = self.add(self.from_point(x1, y1), self.from_point(x2, y2))
            if self.mode == "split" and rng.getrandbits(1):
                e = self.add(e, self.xi())
            return e
        # inert: [P1 + P2 - D_inf], occasionally an irreducible-quadratic class
        if self.F.k == 1 and rng.getrandbits(1):
            e = self._random_irreducible_class(rng)
            if e is not None:
                return e
        x1, y1 = self.random_point(rng)
        x2, y2 = self.random_point(rng)
        if x1 == x2 and y1 != y2:
            x2, y2 = x1, y1  # avoid P + iota(P) (a trivial fiber)
        A1 = Poly(self.F, [self.F.neg(x1), self.F.one])
        A2 = Poly(self.F, [self.F.neg(x2), self.F.one])
        return self.class_from_pairs([(A1, Poly(self.F, [y1])),
                                      (A2, Poly(self.F, [y2]))], [])

    def _random_irreducible_class(self, rng):
        """[Q - D_inf] for a random irreducible quadratic Mumford pair (k=1 only)."""
        F = self.F
        p = F.p
        F2 = GF(p, 2)
        for _ in range(40):
            c1, c0 = F.random(rng), F.random(rng)
            disc = (c1 * c1 - 4 * c0) % p
            if pow(disc, (p - 1) // 2, p) != p - 1:
                continue  # reducible
            theta = F2.as_root_of((c0, c1))
            hval = F2.zero
            for coef in reversed(self.h.c):
                hval = F2.add(F2.mul(hval, theta), F2.embed_base(coef))
            s = F2.sqrt(hval)
            if s is None:
                continue
            # express s = b1*theta + b0 in the basis (1, theta)
            t0, t1 = theta
            s0, s1 = s
            if t1 == 0:
                continue
            b1 = s1 * pow(t1, -1, p) % p
            b0 = (s0 - b1 * t0) % p
            A = Poly(F, [c0, c1, 1])
            B = Poly(F, [b0, b1])
            assert ((B * B - self.h) % A).is_zero()
            return self.class_from_pairs([(A, B)], [])
        return None

    def enumerate_elements(self):
        """All canonical elements (tiny fields only); validates the normal form."""
        F = self.F
        out = set()
        if self.mode == "split":
            for n in (0, 1, 2):
                out.add(((F.one,), (), n))
        else:
            out.add(self.zero())
        # degree-1 pairs (odd/split only)
        if self.mode != "inert":
            for x in F.elements():
                hx = self.h.eval(x)
                for y in F.elements():
                    if F.mul(y, y) == hx:
                        if self.mode == "split":
                            for n in (0, 1):
                                out.add(((F.neg(x), F.one), (y,) if not F.is_zero(y) else (y,), n))
                        else:
                            out.add(((F.neg(x), F.one), (y,), 0))
        # degree-2 pairs
        for c0 in F.elements():
            for c1 in F.elements():
                A = Poly(F, [c0, c1, F.one])
                for b0 in F.elements():
                    for b1 in F.elements():
                        B = Poly(F, [b0, b1])
                        if ((B * B - self.h) % A).is_zero():
                            out.add((A.c, B.c, 0))
        # clean the (y,) packing of zero y
        cleaned = set()
        for A, B, n in out:
            Bp = Poly(F, B)
            cleaned.add((A, Bp.c, n))
        return cleaned

    def order_of(self, e, bound: int) -> int:
        """Order of e, given a multiple `bound` of it (e.g. |J|)."""
        n = bound
        for ell, k in factorize(bound).items():
            for _ in range(k):
                if self.is_zero(self.mul(e, n // ell)):
                    n //= ell
                else:
                    break
        return n


# ---------------------------------------------------------------------------
# abelian group structure

@dataclass(frozen=True)
class SylowData:
    ell: int
    exponents: tuple[int, ...]          # descending
    gens: tuple                          # generating elements of the Sylow
    relations: tuple[tuple[int, ...], ...]
    table: dict                          # element -> exponent vector


@dataclass(frozen=True)
class AbelianGroupStructure:
    order: int
    invariant_factors: tuple[int, ...]  # ascending divisibility n1 | n2 | ...
    sylows: tuple[SylowData, ...]

    def exponents_at(self, ell: int) -> tuple[int, ...]:
        for s in self.sylows:
            if s.ell == ell:
                return s.exponents
        return ()


def sylow_structure(J: Jacobian, order: int, ell: int, rng: random.Random,
                    max_tries: int = 400) -> SylowData:
    e = 0
    n = order
    while n % ell == 0:
        n //= ell
        e += 1
    cof = order // ell ** e
    table = {J.zero(): ()}
    gens: list = []
    rels: list[tuple[int, ...]] = []
    size = 1
    tries = 0
    while size < ell ** e:
        tries += 1
        if tries > max_tries:
            raise GroupSamplingError(
                f"could not generate the {ell}-Sylow subgroup "
                f"(got {size} of {ell ** e})")
        R = J.mul(J.random_element(rng), cof)
        if R in table:
            continue
        chain = [R]
        while chain[-1] not in table:
            chain.append(J.mul(chain[-1], ell))
            assert len(chain) <= e + 1
        j = len(chain) - 1
        v = table[chain[-1]]
        k = len(gens)
        gens.append(R)
        rels = [r + (0,) for r in rels]
        rels.append(tuple(-x for x in v) + (0,) * (k - len(v)) + (ell ** j,))
        new_table = {elt: vec + (0,) for elt, vec in table.items()}
        acc = R
        for t in range(1, ell ** j):
            for elt, vec in table.items():
                new_table[J.add(elt, acc)] = vec + (t,)
            acc = J.add(acc, R)
        table = new_table
        size *= ell ** j
    exps = _snf_prime_power_exponents(rels, ell, e)
    return SylowData(ell=ell, exponents=tuple(exps), gens=tuple(gens),
                     relations=tuple(rels), table=table)


def _snf_prime_power_exponents(rels, ell: int, e: int) -> list[int]:
    """Exponents (descending) of Z^k / <rels>, a group of order ell^e."""
    if not rels:
        assert e == 0
        return []
    m = [list(r) for r in rels]
    diag = _smith_diagonal(m)
    exps = []
    for d in diag:
        d = abs(d)
        v = 0
        while d % ell == 0:
            d //= ell
            v += 1
        if v:
            exps.append(v)
    assert sum(exps) == e, (exps, e)
    return sorted(exps, reverse=True)


def _smith_diagonal(m: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of a small integer matrix."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    r = c = 0
    while r < rows and c < cols:
        # find a pivot with minimal nonzero absolute value
        piv = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[c], row[j] = row[j], row[c]
        again = False
        for i in range(r + 1, rows):
            q = m[i][c] // m[r][c]
            if q:
                for j in range(c, cols):
                    m[i][j] -= q * m[r][j]
            if m[i][c]:
                again = True
        for j in range(c + 1, cols):
            q = m[r][j] // m[r][c]
            if q:
                for i in range(r, rows):
                    m[i][j] -= q * m[i][c]
            if m[r][j]:
                again = True
        if again:
            continue
        out.append(abs(m[r][c]))
        r += 1
        c += 1
    # SNF divisibility chain is not enforced; only the multiset of prime
    # valuations is consumed, which elementary reduction already fixes.
    return out


def group_structure(J: Jacobian, order: int, rng: random.Random | None = None,
                    ells=None) -> AbelianGroupStructure:
    """Structure of J as a product of Sylow subgroups (optionally only some ells)."""
    rng = rng or random.Random(20240601)
    fac = factorize(order)
    targets = sorted(fac) if ells is None else sorted(set(ells) & set(fac))
    sylows = []
    for ell in targets:
        sylows.append(sylow_structure(J, order, ell, rng))
    invariants = invariant_factors_from_types({s.ell: s.exponents for s in sylows})
    return AbelianGroupStructure(order=order, invariant_factors=invariants,
                                 sylows=tuple(sylows))


def invariant_factors_from_types(types: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    """Combine per-prime exponent vectors (descending) into invariant factors
    n1 | n2 | ... (ascending)."""
    width = max((len(v) for v in types.values()), default=0)
    out = []
    for slot in range(width):
        n = 1
        for ell, exps in types.items():
            if slot < len(exps):
                n *= ell ** exps[slot]
        out.append(n)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# global (rational) divisors and their reductions

@dataclass(frozen=True)
class GlobalDivisor:
    """Effective Mumford pair over Q on y^2 = d*f(x): B^2 = d*f (mod A)."""

    curve: TwistedCurve
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        A = Poly(QQ, self.a)
        B = Poly(QQ, self.b)
        h = Poly.from_ints(QQ, self.curve.poly_int())
        if A.is_zero() or A.lc() != 1:
            raise ValueError("A must be monic")
        if not ((B * B - h) % A).is_zero():
            raise ValueError("B^2 != d*f (mod A)")

    @property
    def degree(self) -> int:
        return len(self.a) - 1

    def denominators(self) -> list[int]:
        return [c.denominator for c in self.a + self.b]

    def reduce_mod(self, p: int) -> tuple[Poly, Poly]:
        """Coefficientwise reduction to a semi-reduced pair over F_p."""
        if not self.curve.is_good_prime(p):
            raise ValueError(f"bad reduction at {p}")
        bad = [q for q in self.denominators() if q % p == 0]
        if bad:
            raise ValueError(f"prime {p} divides a denominator ({bad[0]})")
        F = GF(p)
        A = Poly(F, [frac_mod(c, p) for c in self.a])
        B = Poly(F, [frac_mod(c, p) for c in self.b])
        return A, B


def frac_mod(c: Fraction, p: int) -> int:
    return c.numerator * pow(c.denominator, -1, p) % p


def reduce_global(D: GlobalDivisor, p: int):
    """Reduced class of [D - (deg D) * (infinity correction)] in J(F_p)...

    Returns the raw semi-reduced pair; class construction belongs to the
    caller because a degree-3 pair is only half of a degree-0 class.
    """
    return D.reduce_mod(p)


def class_difference_mod_p(J: Jacobian, pos: list[GlobalDivisor],
                           neg: list[GlobalDivisor], p: int):
    """[sum pos - sum neg] reduced in J(F_p)."""
    return J.class_from_pairs([d.reduce_mod(p) for d in pos],
                              [d.reduce_mod(p) for d in neg])


# ---------------------------------------------------------------------------
# rational square roots modulo a cubic; degree-3 divisor search

def _rational_sqrt(x: Fraction):
    return QQ.sqrt(x)


def _rational_roots_monic(A: Poly) -> list[Fraction]:
    """Rational roots of a monic A in Q[x] (so roots have bounded denominator)."""
    # clear denominators: roots r/s with s | lcm-denoms and r | scaled constant
    import math as _m
    den = 1
    for c in A.c:
        den = den * c.denominator // _m.gcd(den, c.denominator)
    coeffs = [int(c * den) for c in A.c]
    if coeffs[0] == 0:
        roots = [Fraction(0)]
        rest = Poly(QQ, A.c[1:])
        return roots + [r for r in _rational_roots_monic(rest.monic())]
    c0 = abs(coeffs[0])
    lc = abs(coeffs[-1])
    cands = set()
    for rnum in _divisors(c0):
        for rden in _divisors(lc):
            for sgn in (1, -1):
                cands.add(Fraction(sgn * rnum, rden))
    return [r for r in cands if A.eval(r) == 0]


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p ** i for d in out for i in range(e + 1)]
    return sorted(out)


def _series_sqrt_at(h: Poly, c: Fraction, order: int) -> list[Fraction] | None:
    """Taylor coefficients y0..y_{order-1} of a branch of sqrt(h) at x = c."""
    sh = h.shift(c)  # h(x + c)
    y0 = _rational_sqrt(sh.c[0])
    if y0 is None or y0 == 0:
        return None
    ys = [y0]
    for k in range(1, order):
        # coefficient k of (sum ys_i t^i)^2 must equal sh.c[k]
        acc = Fraction(0)
        for i in range(1, k):
            acc += ys[i] * ys[k - i]
        hk = sh.c[k] if k <= sh.deg else Fraction(0)
        ys.append((hk - acc) / (2 * y0))
    return ys


def _sqrt_mod_quadratic(r: Poly, A: Poly) -> Poly | None:
    """Square root of r modulo an irreducible monic quadratic A over Q."""
    beta, gamma = A.c[1], A.c[0]
    r = r % A
    r1 = r.c[1] if r.deg >= 1 else Fraction(0)
    r0 = r.c[0] if r.deg >= 0 else Fraction(0)
    if r1 == 0:
        s = _rational_sqrt(r0)
        if s is not None:
            return Poly(QQ, [s])
        denom = beta * beta / 4 - gamma
        if denom != 0:
            t = r0 / denom
            b1 = _rational_sqrt(t)
            if b1 is not None:
                return Poly(QQ, [beta * b1 / 2, b1])
        return None
    # b1 != 0: (beta^2-4*gamma) t^2 + (2*beta*r1 - 4*r0) t + r1^2 = 0, t = b1^2
    aa = beta * beta - 4 * gamma
    bb = 2 * beta * r1 - 4 * r0
    cc = r1 * r1
    disc = bb * bb - 4 * aa * cc
    sd = _rational_sqrt(disc)
    if sd is None:
        return None
    for t in ((-bb + sd) / (2 * aa), (-bb - sd) / (2 * aa)) if aa != 0 else \
            ((-cc / bb,) if bb != 0 else ()):
        if t <= 0:
            continue
        b1 = _rational_sqrt(t)
        if b1 is None:
            continue
        b0 = (r1 + beta * b1 * b1) / (2 * b1)
        B = Poly(QQ, [b0, b1])
        if ((B * B - r) % A).is_zero():
            return B
    return None


def _poly_crt(parts: list[tuple[Poly, Poly]]) -> Poly:
    """CRT over Q[x]: value B mod each (modulus, remainder) pair."""
    M = Poly.one(QQ)
    B = Poly.zero(QQ)
    for mod, rem in parts:
        g, s, t = xgcd(M, mod)
        assert g.deg == 0 and not g.is_zero()
        # new B = B + M * s * (rem - B)  (mod M*mod)
        B = (B + M * s * (rem - B)) % (M * mod)
        M = M * mod
    return B


def _sqrt_mod_irreducible_cubic(r: Poly, A: Poly, max_prec_bits: int = 4096) -> Poly | None:
    """Hensel lifting + rational reconstruction in the cubic field Q[x]/(A).

    Works at a prime p where A stays irreducible, so the residue field is
    F_{p^3} and the square root there has only a global sign ambiguity; a
    nonsquare verdict at such an (unramified, odd) prime certifies that r is
    not a square in the field.
    """
    from .arith import is_probable_prime
    import math as _m
    if any(c.denominator != 1 for c in A.c):
        return None  # search path always supplies integral monic cubics
    Ai = [int(c) for c in A.c]
    den = 1
    for c in r.c:
        den = den * c.denominator // _m.gcd(den, c.denominator)
    nrm = resultant(A, r)
    if nrm == 0 or _rational_sqrt(nrm) is None:
        return None
    p = 101
    tried = 0
    s = None
    while s is None:
        p += 2
        if not is_probable_prime(p) or den % p == 0:
            continue
        Fp = GF(p)
        Ap = Poly.from_ints(Fp, Ai)
        facs = factor_mod(Ap)
        if len(facs) != 1 or facs[0][1] != 1:
            tried += 1
            if tried > 60:
                return None
            continue
        rp = Poly(Fp, [frac_mod(c, p) for c in r.c]) % Ap
        if rp.is_zero():
            tried += 1
            continue
        s = _ts_residue(rp, Ap, p ** 3)
        if s is None:
            return None  # nonsquare in an unramified completion
    B = [int(c) for c in (list(s.c) + [0, 0, 0])[:3]]
    m = 1
    while p ** m < 2 ** max_prec_bits:
        m *= 2
        B = _newton_sqrt_step(B, r, Ai, p, m)
        cand = _try_reconstruct(B, Ai, r, p ** m)
        if cand is not None:
            return cand
    return None


def _newton_sqrt_step(B, r: Poly, Ai, p: int, m: int):
    """One chained Newton step to sqrt accuracy p^m (B given to accuracy >= p^(m/2))."""
    M = p ** m
    Bm = [c % M for c in B]
    inv = _poly_inv_mod(Bm, Ai, p, m)
    rm = [frac_mod_power(c, p, m) for c in r.c]
    prod = _polymulmod(inv, rm, Ai, M)
    summ = [(a + b) % M for a, b in _zippad(Bm, prod)]
    inv2 = pow(2, -1, M)
    return [c * inv2 % M for c in summ]


def frac_mod_power(c: Fraction, p: int, m: int) -> int:
    M = p ** m
    return c.numerator * pow(c.denominator, -1, M) % M


def _zippad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


def _polymulmod(a, b, Ai, M):
    """(a*b) mod (A, M) for integer coefficient lists, A monic integral."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % M
    deg_a = len(Ai) - 1
    for i in range(len(out) - 1, deg_a - 1, -1):
        c = out[i]
        if c == 0:
            continue
        out[i] = 0
        for j in range(deg_a):
            out[i - deg_a + j] = (out[i - deg_a + j] - c * Ai[j]) % M
    return [c % M for c in out[:deg_a]]


def _poly_inv_mod(B, Ai, p: int, m: int):
    """Inverse of B modulo (A, p^m) by Newton from the inverse mod p."""
    Fp = GF(p)
    Ap = Poly.from_ints(Fp, Ai)
    Bp = Poly.from_ints(Fp, B)
    g, s, t = xgcd(Bp % Ap, Ap)
    if g.deg != 0 or g.is_zero():
        raise ZeroDivisionError("B not invertible mod (A, p)")
    inv = [int(c) * pow(int(g.c[0]), -1, p) % p for c in s.c]
    k = 1
    while k < m:
        k = min(2 * k, m)
        M = p ** k
        BB = [c % M for c in B]
        prod = _polymulmod(inv, BB, Ai, M)
        two_minus = [(-c) % M for c in prod]
        two_minus[0] = (two_minus[0] + 2) % M
        inv = _polymulmod(inv, two_minus, Ai, M)
    return inv


def _try_reconstruct(B, Ai, r: Poly, M: int) -> Poly | None:
    from .arith import rational_reconstruct
    coeffs = []
    for c in B:
        rec = rational_reconstruct(c % M, M)
        if rec is None:
            return None
        coeffs.append(Fraction(rec[0], rec[1]))
    cand = Poly(QQ, coeffs)
    A = Poly.from_ints(QQ, Ai)
    if ((cand * cand - r) % A).is_zero():
        return cand
    return None


def _ts_residue(rp: Poly, Ap: Poly, q: int) -> Poly | None:
    F = Ap.F
    one = Poly.one(F)

    def powm(z, e):
        return z.pow_mod(e, Ap)

    if powm(rp, (q - 1) // 2) != one:
        return None
    m = q - 1
    e = (m & -m).bit_length() - 1
    m >>= e
    rng = random.Random(hash((q, rp.c)))
    while True:
        z = Poly(F, [F.random(rng) for _ in range(Ap.deg)])
        if z.is_zero():
            continue
        if powm(z, (q - 1) // 2) != one:
            break
    c = powm(z, m)
    t = powm(rp, m)
    rroot = powm(rp, (m + 1) // 2)
    while t != one:
        i, tt = 0, t
        while tt != one:
            tt = (tt * tt) % Ap
            i += 1
        b = c
        for _ in range(e - i - 1):
            b = (b * b) % Ap
        rroot = (rroot * b) % Ap
        c = (b * b) % Ap
        t = (t * c) % Ap
        e = i
    return rroot


def sqrt_mod_cubic(r: Poly, A: Poly) -> Poly | None:
    """B with B^2 = r (mod A) over Q, for monic cubic A; None if no such B."""
    assert A.deg == 3 and A.lc() == 1
    roots = _rational_roots_monic(A)
    if not roots:
        return _sqrt_mod_irreducible_cubic(r, A)
    # split off rational linear factors
    parts: list[tuple[Poly, Poly]] = []
    rest = A
    handled: list[Fraction] = []
    for c in sorted(set(roots)):
        mult = 0
        while rest.eval(c) == 0:
            rest = rest.exact_div(Poly(QQ, [-c, Fraction(1)]))
            mult += 1
        lin = Poly(QQ, [-c, Fraction(1)])
        modulus = Poly.one(QQ)
        for _ in range(mult):
            modulus = modulus * lin
        ys = _series_sqrt_at(_as_qq(r), c, mult)
        if ys is None:
            # maybe r(c) = 0: then B must vanish at c too; only consistent if
            # multiplicity 1 and we take B = 0 there
            if mult == 1 and r.eval(c) == 0:
                parts.append((lin, Poly.zero(QQ)))
                handled.append(c)
                continue
            return None
        # B = sum ys_i (x - c)^i  (mod (x-c)^mult)
        B = Poly.zero(QQ)
        base = Poly.one(QQ)
        for i in range(mult):
            B = B + base.scale(ys[i])
            base = base * lin
        parts.append((modulus, B))
        handled.append(c)
    if rest.deg == 2:
        B2 = _sqrt_mod_quadratic(r % rest, rest)
        if B2 is None:
            return None
        parts.append((rest, B2))
    elif rest.deg == 1:
        c = -rest.c[0]
        s = _rational_sqrt(r.eval(c))
        if s is None:
            return None
        parts.append((rest, Poly(QQ, [s])))
    B = _poly_crt(parts)
    if ((B * B - r) % A).is_zero():
        return B
    return None


def _as_qq(r: Poly) -> Poly:
    return r


def find_degree3_divisor(tw: TwistedCurve, height_bound: int,
                         progress=None) -> GlobalDivisor | None:
    """Bounded search for an effective degree-3 rational Mumford pair.

    Enumerates monic integral cubics A by max coefficient height; the fast
    norm pretest kills nearly all candidates before the field square root.
    """
    h = Poly.from_ints(QQ, tw.poly_int())
    for height in range(0, height_bound + 1):
        for a2 in range(-height, height + 1):
            for a1 in range(-height, height + 1):
                for a0 in range(-height, height + 1):
                    if max(abs(a2), abs(a1), abs(a0)) != height:
                        continue  # only new candidates at this height
                    A = Poly.from_ints(QQ, [a0, a1, a2, 1])
                    r = h % A
                    B = sqrt_mod_cubic(r, A)
                    if B is not None:
                        return GlobalDivisor(curve=tw, a=A.c, b=(B % A).c)
    return None


def divisors_from_curve_intersections(tw: TwistedCurve, coeff_range,
                                      degrees=(2, 3), limit: int = 200,
                                      denominators=(1,)) -> list[GlobalDivisor]:
    """Mumford pairs from intersections with rational curves y = q(x).

    div(y - q) is supported on the roots of q^2 - h; any rational factor A of
    that polynomial (with the right degree) gives the pair (A, q mod A), since
    (q mod A)^2 = h (mod A) automatically. Factors are located numerically from
    the complex roots and then verified by exact division, so nothing
    unverified is ever returned.
    """
    import itertools
    import numpy as np
    h = Poly.from_ints(QQ, tw.poly_int())
    out: list[GlobalDivisor] = []
    seen: set = set()
    for den in denominators:
        for c0 in coeff_range:
            for c1 in coeff_range:
                for c2 in coeff_range:
                    q = Poly(QQ, [Fraction(c0, den), Fraction(c1, den),
                                  Fraction(c2, den)])
                    s = q * q - h
                    if s.deg < 3:
                        continue
                    for A in _rational_factors(s, degrees):
                        key = A.c
                        if key in seen:
                            continue
                        seen.add(key)
                        B = q % A
                        if ((B * B - h) % A).is_zero():
                            out.append(GlobalDivisor(curve=tw, a=A.c, b=B.c))
                            if len(out) >= limit:
                                return out
    return out


def _rational_factors(s: Poly, degrees) -> list[Poly]:
    """Monic rational factors of s with degree in `degrees` (numeric root
    clustering + exact verification)."""
    import itertools
    import numpy as np
    den = 1
    for c in s.c:
        den = den * c.denominator // math_gcd(den, c.denominator)
    ints = [int(c * den) for c in s.c]
    roots = np.roots(list(reversed(ints)))
    out = []
    n = len(roots)
    for size in degrees:
        for idx in itertools.combinations(range(n), size):
            sub = [roots[i] for i in idx]
            if abs(sum(z.imag for z in sub)) > 1e-6:
                continue
            coeffs = np.poly(sub)  # leading first
            if max(abs(c.imag) for c in coeffs) > 1e-6:
                continue
            cand = []
            ok = True
            for c in reversed(coeffs):
                fr = Fraction(float(c.real)).limit_denominator(10 ** 6)
                if abs(fr - c.real) > 1e-6 * max(1.0, abs(c.real)):
                    ok = False
                    break
                cand.append(fr)
            if not ok:
                continue
            A = Poly(QQ, cand)
            if A.deg != size or A.lc() != 1:
                continue
            if (s % A).is_zero():
                out.append(A)
    return out


def math_gcd(a: int, b: int) -> int:
    import math
    return math.gcd(a, b)


def triple_point_divisor(tw: TwistedCurve, x0: Fraction) -> GlobalDivisor:
    """The divisor 3P for an affine rational point P = (x0, y0), y0 != 0."""
    h = Poly.from_ints(QQ, tw.poly_int())
    ys = _series_sqrt_at(h, Fraction(x0), 3)
    if ys is None:
        raise ValueError("no rational point with nonzero y at this x")
    lin = Poly(QQ, [-Fraction(x0), Fraction(1)])
    A = lin * lin * lin
    B = Poly(QQ, [ys[0]]) + lin.scale(ys[1]) + (lin * lin).scale(ys[2])
    return GlobalDivisor(curve=tw, a=A.c, b=(B % A).c)


def brute_force_jacobian_order(tw: TwistedCurve, p: int) -> int:
    """Exhaustive reduced-pair count for a degree-5 model over a tiny F_p."""
    if tw.base.deg != 5:
        raise ValueError("odd-degree models only")
    J = Jacobian.of_twist(tw, p)
    return len(J.enumerate_elements())
