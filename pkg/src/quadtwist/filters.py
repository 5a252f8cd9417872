"""Cheap necessary conditions for a twist to carry a rational point.

congruence_filter: the sign/congruence conditions on d for 13- and 18-torsion.
is_els: everywhere local solubility of y^2 = d*f(x) (R by Sturm sign analysis,
Q_p by a recursive branch-and-prune solver over the two affine charts).
quadratic_torsion_bound: the meet over primes of the group structures of
J(F_{p^2}), an upper bound for J(K)_tors over every quadratic field K.
positive_rank_required: a qualifying point forces positive Mordell-Weil rank
of the twisted Jacobian (so ingested rank-0 verdicts exclude the twist).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, primes_below
from .curve import CurveModel, TwistedCurve, zeta_data
from .fields import QQ
from .jacobian import Jacobian, invariant_factors_from_types, sylow_structure
from .poly import Poly, gcd as poly_gcd


@dataclass(frozen=True)
class FilterVerdict:
    name: str
    verdict: str                 # pass | fail | inapplicable
    witness: str | None = None

    def __post_init__(self):
        if self.verdict == "fail" and not self.witness:
            raise ValueError("fail verdicts must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def congruence_filter(n_level: int, d: int) -> FilterVerdict:
    """Necessary congruences on d for X_1^d(N)(Q) to be nonempty (N = 13, 18)."""
    name = f"congruence_{n_level}"
    if n_level == 13:
        if d <= 0:
            return FilterVerdict(name, "fail", "d < 0")
        if d % 8 != 1:
            return FilterVerdict(name, "fail", f"d = {d % 8} mod 8, need 1")
        return FilterVerdict(name, "pass")
    if n_level == 18:
        if d <= 0:
            return FilterVerdict(name, "fail", "d < 0")
        if d % 24 not in (1, 9):
            return FilterVerdict(name, "fail", f"d = {d % 24} mod 24, need 1 or 9")
        return FilterVerdict(name, "pass")
    return FilterVerdict(name, "inapplicable")


def positive_rank_required(n_level: int, d: int) -> FilterVerdict:
    """Whether a qualifying point on the twist forces rank(J^d(Q)) > 0."""
    name = f"positive_rank_required_{n_level}"
    if n_level in (13, 18):
        if d == -3:
            return FilterVerdict(name, "inapplicable", "excluded d = -3")
        return FilterVerdict(name, "pass")
    if n_level == 16:
        if d in (-1, 2):
            return FilterVerdict(name, "inapplicable", f"excluded d = {d}")
        return FilterVerdict(name, "pass")
    return FilterVerdict(name, "inapplicable")


# ---------------------------------------------------------------------------
# real place

def sturm_real_root_count(coeffs) -> int:
    """Number of distinct real roots via a Sturm chain (exact rational arith)."""
    f = Poly.from_ints(QQ, coeffs)
    if f.deg < 1:
        return 0
    chain = [f, f.derivative()]
    while chain[-1].deg > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            # not squarefree: divide out and recurse on the radical
            rad = f.exact_div(poly_gcd(f, f.derivative()))
            return sturm_real_root_count([c for c in rad.c])
        chain.append(-rem)

    def signs_at_infinity(sign: int):
        vals = []
        for g in chain:
            if g.is_zero():
                continue
            s = 1 if g.lc() > 0 else -1
            if sign < 0 and g.deg % 2:
                s = -s
            vals.append(s)
        return vals

    def variations(vals):
        v = 0
        for a, b in zip(vals, vals[1:]):
            if a * b < 0:
                v += 1
        return v

    return variations(signs_at_infinity(-1)) - variations(signs_at_infinity(1))


def real_points_exist(tw: TwistedCurve) -> bool:
    """C(R) != 0 for y^2 = d*f(x)."""
    if tw.base.deg % 2 == 1:
        return True  # odd degree: d*f takes both signs
    if tw.d > 0:
        return True  # lc(d*f) > 0 so d*f -> +inf
    # d < 0, even degree, monic-positive f: need f <= 0 somewhere
    return sturm_real_root_count(tw.base.f) > 0


# ---------------------------------------------------------------------------
# p-adic places

def _val(n: int, p: int) -> int:
    if n == 0:
        return 10 ** 9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _zp_branch_soluble(coeffs, p: int, x0: int, k: int, vmax: int) -> bool:
    """Does y^2 = g(x) have a Z_p point with x = x0 (mod p^k)?"""
    from .poly import int_eval, int_derivative
    g = int_eval(coeffs, x0)
    if g == 0:
        return True  # exact rational root: (x0, 0)
    v = _val(g, p)
    gp = int_eval(int_derivative(coeffs), x0)
    w = _val(gp, p) if gp else 10 ** 9
    if v > 2 * w:
        return True  # Hensel: a root of g (hence a y = 0 point) lies in this branch
    need = 1 if p != 2 else 3
    if v < k:
        # valuation is constant on the branch; unit part known mod p^(k-v)
        if v % 2:
            return False
        unit = g // p ** v
        if p != 2:
            return pow(unit, (p - 1) // 2, p) == 1
        if k - v >= 3:
            return unit % 8 == 1
        # not enough 2-adic precision: split further
    if k > vmax + 3:
        # deep branch with no decision: only possible near a root, handled above
        return False
    return any(_zp_branch_soluble(coeffs, p, x0 + c * p ** k, k + 1, vmax)
               for c in range(p))


def qp_points_exist(tw: TwistedCurve, p: int) -> bool:
    """C(Q_p) != 0, decided on the two charts y^2 = h(x) and y'^2 = rev(h)(z)."""
    h = tw.poly_int()
    hh = list(h) + [0] * (7 - len(h))
    rev = tuple(hh[6 - i] for i in range(7))  # z^6 h(1/z)
    disc_mult = 4 * tw.d * tw.base.disc
    vmax = _val(disc_mult, p)
    for c in range(p):
        if _zp_branch_soluble(h, p, c, 1, vmax):
            return True
    return _zp_branch_soluble(rev, p, 0, 1, vmax)


def is_els(tw: TwistedCurve) -> FilterVerdict:
    """Everywhere locally soluble: R, all bad p, and small good p (Weil covers the rest)."""
    name = "els"
    if not real_points_exist(tw):
        return FilterVerdict(name, "fail", "no real points")
    bad = sorted(set(factorize(2 * tw.d * tw.base.disc)))
    for p in bad:
        if not qp_points_exist(tw, p):
            return FilterVerdict(name, "fail", f"no Q_{p} points")
    for p in (3, 5, 7, 11, 13):
        if p in bad:
            continue
        from .curve import count_points
        if count_points(tw, p, 1) == 0:
            return FilterVerdict(name, "fail", f"no F_{p} points")
    # good p >= 17: |C(F_p)| >= p + 1 - 4 sqrt(p) > 0, and smooth points lift
    return FilterVerdict(name, "pass")


def qp_points_exist_bruteforce(tw: TwistedCurve, p: int) -> bool:
    """Oracle: exhaustive smooth-solution search mod p^m with Hensel margin."""
    h = tw.poly_int()
    hh = list(h) + [0] * (7 - len(h))
    rev = tuple(hh[6 - i] for i in range(7))
    vmax = _val(4 * tw.d * tw.base.disc, p)
    m = 2 * vmax + (3 if p == 2 else 2)
    mod = p ** m
    from .poly import int_eval
    for coeffs, xs in ((h, range(mod)), (rev, range(0, mod, p))):
        for x in xs:
            g = int_eval(coeffs, x) % mod
            if g == 0:
                # refine: an exact-looking root; trust the recursive solver here
                if _zp_branch_soluble(coeffs, p, x % p, 1, vmax):
                    return True
                continue
            for y in range(mod):
                if (y * y - g) % mod:
                    continue
                vy = _val(y, p) if y else m
                if 2 * vy + (3 if p == 2 else 1) <= m:
                    return True
    return False


# ---------------------------------------------------------------------------
# torsion bounds over quadratic fields

def quadratic_torsion_bound(curve: CurveModel, primes, k: int = 2,
                            rng: random.Random | None = None) -> tuple[int, ...]:
    """Invariant factors bounding J(K)_tors for every quadratic field K.

    For each good odd prime, J(K)_tors injects into J(F_{p^2}); the bound is
    the per-prime componentwise minimum (the meet) of the l-Sylow exponent
    vectors, assembled back into invariant factors.
    """
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one prime")
    rng = rng or random.Random(1729)
    tw = curve.twist(1)
    orders = {}
    for p in primes:
        if not tw.is_good_prime(p):
            raise ValueError(f"{p} is a bad prime for {curve.label}")
        orders[p] = zeta_data(tw, p).jacobian_order_k(k)
    g = 0
    for n in orders.values():
        g = math.gcd(g, n)
    types: dict[int, tuple[int, ...]] = {}
    for ell in sorted(factorize(g)):
        best: tuple[int, ...] | None = None
        for p in primes:
            J = Jacobian.of_twist(tw, p, k)
            sy = sylow_structure(J, orders[p], ell, rng)
            exps = sy.exponents
            if best is None:
                best = exps
            else:
                width = min(len(best), len(exps))
                best = tuple(min(a, b) for a, b in
                             zip(sorted(best, reverse=True)[:width],
                                 sorted(exps, reverse=True)[:width]))
            best = tuple(e for e in best if e > 0)
            if not best:
                break
        if best:
            types[ell] = best
    return invariant_factors_from_types(types)


def subgroup_meet(type_a: dict[int, tuple[int, ...]],
                  type_b: dict[int, tuple[int, ...]]) -> dict[int, tuple[int, ...]]:
    """Meet of two abelian group types: componentwise min per prime."""
    out: dict[int, tuple[int, ...]] = {}
    for ell in set(type_a) & set(type_b):
        a = sorted(type_a[ell], reverse=True)
        b = sorted(type_b[ell], reverse=True)
        m = tuple(x for x in (min(u, v) for u, v in zip(a, b)) if x > 0)
        if m:
            out[ell] = m
    return out
