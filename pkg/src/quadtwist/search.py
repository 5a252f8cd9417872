"""Rational point search on all twists at once.

For x = r/s in lowest terms, (x, y) lies on y^2 = d*f(x) for exactly one
squarefree d: the squarefree part of F(r, s) = s^6 f(r/s). Scanning the
coprime (r, s) grid once therefore finds every rational point of naive height
<= H on every twist, at the cost of one smooth-part extraction per pair
instead of one search per twist.

The kernel removes every prime <= max(d_bound, ...) from F(r, s); if the
remaining rough cofactor is not a perfect square the squarefree part exceeds
d_bound and the pair is discarded, so no large-number factoring ever happens
in the scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import kernel
from .arith import primes_below, squarefree_part
from .curve import CurveModel, TwistedCurve, twist
from .fields import GF, QQ
from .poly import Poly, int_eval_frac, roots_mod


@dataclass(frozen=True)
class RationalPoint:
    x_num: int
    x_den: int          # > 0, gcd(x_num, x_den) = 1
    y: Fraction
    d: int

    @property
    def x(self) -> Fraction:
        return Fraction(self.x_num, self.x_den)

    @property
    def height(self) -> int:
        return max(abs(self.x_num), self.x_den)


@dataclass
class SearchReport:
    curve: str
    height: int
    d_bound: int
    points: dict[int, list[RationalPoint]] = field(default_factory=dict)
    weierstrass_x: list[Fraction] = field(default_factory=list)
    unfactored: list[tuple[int, int]] = field(default_factory=list)

    def twists_with_points(self) -> list[int]:
        return sorted(self.points)

    def noncuspidal_twists(self, curve: CurveModel) -> list[int]:
        out = []
        for d, pts in sorted(self.points.items()):
            if any(classify_point(curve, p) == "noncuspidal_quadratic" for p in pts):
                out.append(d)
        return out


@lru_cache(maxsize=None)
def _root_table(f: tuple[int, ...], bound: int):
    """(primes, offsets, roots) arrays for the sieve: roots of f mod each p < bound."""
    primes = list(primes_below(bound))
    offsets = [0]
    roots: list[int] = []
    for p in primes:
        if p == 2:
            rs = [x for x in range(2) if sum(c * x ** i for i, c in enumerate(f)) % 2 == 0]
        else:
            rs = sorted(roots_mod(Poly.from_ints(GF(p), f)))
        roots.extend(int(r) for r in rs)
        offsets.append(len(roots))
    return primes, offsets, roots


def scan_twists(curve: CurveModel, height: int, d_bound: int,
                progress=None) -> SearchReport:
    """Every rational point of x-height <= height on every twist with |d| < d_bound.

    Points with y = 0 are reported curve-wide (they lie on every twist), and
    d = 1 is excluded (the base curve is not a twist).
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    coeffs6 = tuple(curve.f) + (0,) * (7 - len(curve.f))
    table_bound = max(d_bound + 1, 1000)
    primes, offsets, roots = _root_table(tuple(curve.f), table_bound)
    report = SearchReport(curve=curve.label, height=height, d_bound=d_bound)
    seen_weier: set[Fraction] = set()
    for s in range(1, height + 1):
        hits, zeros = kernel.scan_row(coeffs6, s, height, d_bound,
                                      primes, offsets, roots)
        for r in zeros:
            x = Fraction(r, s)
            if x not in seen_weier:
                seen_weier.add(x)
                report.weierstrass_x.append(x)
        for r, d, c in hits:
            if abs(d) >= d_bound or d == 1:
                continue
            # F(r, s) = d c^2  =>  y = |d| c / s^3 satisfies y^2 = d f(r/s)
            y = Fraction(abs(d) * c, s ** 3)
            pt = RationalPoint(x_num=r, x_den=s, y=y, d=d)
            report.points.setdefault(d, []).append(pt)
        if progress and s % 200 == 0:
            progress(s)
    for d in report.points:
        report.points[d].sort(key=lambda p: (p.height, p.x_num))
    report.weierstrass_x.sort()
    return report


def verify_point(curve: CurveModel, d: int, x: Fraction) -> RationalPoint | None:
    """Exact check that d*f(x) is a rational square; returns the point if so."""
    tw = twist(curve, d)
    val = Fraction(d) * int_eval_frac(curve.f, Fraction(x))
    y = QQ.sqrt(val)
    if y is None:
        return None
    xf = Fraction(x)
    return RationalPoint(x_num=xf.numerator, x_den=xf.denominator, y=y, d=d)


def classify_point(curve: CurveModel, pt: RationalPoint) -> str:
    """noncuspidal_quadratic | cusp | weierstrass.

    Cusp detection uses the curve's cusp x-polynomial where one is defined
    (X1(16): the point (0,0) on every twist is a cusp even though y = 0).
    """
    if curve.cusp_x_poly is not None:
        if int_eval_frac(curve.cusp_x_poly, pt.x) == 0:
            return "cusp"
    if pt.y == 0:
        return "weierstrass"
    return "noncuspidal_quadratic"


def scan_naive(curve: CurveModel, height: int, d_bound: int) -> dict[int, list[Fraction]]:
    """Oracle: per-twist double loop; maps d -> x list (y != 0 points only)."""
    from math import gcd
    from .arith import squarefree_sieve
    out: dict[int, list[Fraction]] = {}
    for d in squarefree_sieve(d_bound):
        for s in range(1, height + 1):
            for r in range(-height, height + 1):
                if gcd(r, s) != 1:
                    continue
                val = Fraction(d) * int_eval_frac(curve.f, Fraction(r, s))
                if val == 0:
                    continue
                if QQ.sqrt(val) is not None:
                    out.setdefault(d, []).append(Fraction(r, s))
    return out
