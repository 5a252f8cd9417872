"""Mordell-Weil sieve: certify that a twisted genus-2 curve has no rational point.

Sieve data: a degree-3 rational divisor D3 embedding the curve in its Jacobian
(P -> [3P - D3]), candidate generators of J(Q) (classes [D2 - Dinf] from
quadratic points), a modulus N', and a prime set S. For each p in S the curve
points X(F_p) map to J(F_p)/N'J(F_p); the global group maps there through the
generators. If no class of the (finite) global quotient reduces into the local
point image at every p simultaneously, X(Q) must be empty -- conditionally on
the supplied generators generating J(Q) up to index prime to N', which is not
proved here (saturation_claimed False keeps certificates explicitly
conditional).

Labels in J(F_p)/N'J(F_p) only involve the Sylow subgroups at primes dividing
N', which keeps the group-structure work small even when |J(F_p)| is large.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .arith import factorize
from .curve import TwistedCurve, zeta_data
from .fields import GF
from .jacobian import (GlobalDivisor, Jacobian, SylowData, sylow_structure)
from .poly import Poly


@dataclass(frozen=True)
class SieveInput:
    tw: TwistedCurve
    base_divisor: GlobalDivisor
    generators: tuple[GlobalDivisor, ...]   # each g_i = [D_i - (deg/2) D_inf]
    nprime: int
    primes: tuple[int, ...]
    saturation_claimed: bool = False

    def __post_init__(self):
        if self.base_divisor.degree != 3:
            raise ValueError("base divisor must have degree 3")
        if self.nprime < 2:
            raise ValueError("N' must be >= 2")
        for g in self.generators:
            if g.degree % 2:
                raise ValueError("generator divisors must have even degree")


@dataclass
class LocalData:
    p: int
    order: int
    image: set            # labels of [3P - D3] for P in X(F_p)
    gen_labels: list      # label vectors of the reduced generators
    quotient_size: int


@dataclass
class SieveCertificate:
    curve: str
    d: int
    nprime: int
    primes: tuple[int, ...]
    conditional: bool
    empty: bool
    survivors: list
    local_data: dict[int, dict]


class _QuotientLabeller:
    """Canonical labels of J(F_p)/N'J(F_p) via the Sylow subgroups at ell | N'."""

    def __init__(self, J: Jacobian, order: int, nprime: int, rng: random.Random):
        self.J = J
        self.parts: list[tuple[int, int, SylowData, list[tuple[int, ...]]]] = []
        for ell, v in sorted(factorize(nprime).items()):
            e = 0
            n = order
            while n % ell == 0:
                n //= ell
                e += 1
            if e == 0:
                continue
            sy = sylow_structure(J, order, ell, rng)
            k = len(sy.gens)
            lat = [list(r) for r in sy.relations]
            ellv = ell ** v
            for i in range(k):
                row = [0] * k
                row[i] = ellv
                lat.append(row)
            hnf = _hnf(lat)
            self.parts.append((ell, v, sy, hnf))
        self.cof = {ell: order // ell ** _vl(order, ell) for ell, _, _, _ in self.parts}

    def quotient_size(self) -> int:
        n = 1
        for ell, v, sy, hnf in self.parts:
            n *= _lattice_index(hnf, len(sy.gens))
        return n

    def label(self, elt) -> tuple:
        out = []
        for ell, v, sy, hnf in self.parts:
            x = self.J.mul(elt, self.cof[ell])
            vec = sy.table.get(x)
            if vec is None:
                raise ArithmeticError("element outside the sampled Sylow subgroup")
            out.append(_hnf_reduce(vec, hnf))
        return tuple(out)

    def label_add(self, a: tuple, b: tuple) -> tuple:
        out = []
        for (ell, v, sy, hnf), xa, xb in zip(self.parts, a, b):
            out.append(_hnf_reduce([u + w for u, w in zip(xa, xb)], hnf))
        return tuple(out)

    def label_scale(self, a: tuple, k: int) -> tuple:
        out = []
        for (ell, v, sy, hnf), xa in zip(self.parts, a):
            out.append(_hnf_reduce([u * k for u in xa], hnf))
        return tuple(out)

    def zero_label(self) -> tuple:
        return tuple(_hnf_reduce([0] * len(sy.gens), hnf)
                     for _, _, sy, hnf in self.parts)


def _vl(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form (upper triangular, positive pivots) of the lattice."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    out = []
    col = 0
    while col < ncols and m:
        # find row with nonzero entry in col, minimal |value|
        cand = [r for r in m if r[col] != 0]
        if not cand:
            col += 1
            continue
        while True:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            done = True
            for r in cand[1:]:
                q = r[col] // piv[col]
                if q:
                    for j in range(ncols):
                        r[j] -= q * piv[j]
                if r[col] != 0:
                    done = False
            cand = [piv] + [r for r in cand[1:] if r[col] != 0]
            if done or len(cand) == 1:
                break
        if piv[col] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        out.append(piv)
        m = [r for r in m if r is not piv and any(r)]
        for r in m:
            q = r[col] // piv[col]
            if q:
                for j in range(ncols):
                    r[j] -= q * piv[j]
        col += 1
    # reduce above-pivot entries for canonical form
    for i in range(len(out) - 1, -1, -1):
        pc = next(j for j in range(ncols) if out[i][j] != 0)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                for j in range(ncols):
                    out[k][j] -= q * out[i][j]
    return out


def _hnf_reduce(vec, hnf) -> tuple[int, ...]:
    v = list(vec)
    n = len(v)
    for row in hnf:
        pc = next(j for j in range(len(row)) if row[j] != 0)
        q = v[pc] // row[pc]
        if q:
            for j in range(len(row)):
                v[j] -= q * row[j]
    return tuple(v)


def _lattice_index(hnf, n: int) -> int:
    """[Z^n : lattice] (finite iff the HNF has n pivots)."""
    piv = {}
    for row in hnf:
        pc = next(j for j in range(len(row)) if row[j] != 0)
        piv[pc] = abs(row[pc])
    if len(piv) < n:
        return 0
    out = 1
    for v in piv.values():
        out *= v
    return out


def _curve_points(J: Jacobian, tw: TwistedCurve, p: int):
    """All points of X(F_p) as Jacobian-ready data (affine + rational infinities)."""
    F = J.F
    h = J.h
    pts = []
    for x in F.elements():
        hx = h.eval(x)
        if F.is_zero(hx):
            pts.append(("affine", x, F.zero))
        elif F.is_square(hx):
            y = F.sqrt(hx)
            pts.append(("affine", x, y))
            pts.append(("affine", x, F.neg(y)))
    n_inf = 0
    if J.mode == "split":
        n_inf = 2
    return pts, n_inf


def local_curve_image(tw: TwistedCurve, p: int, base_divisor: GlobalDivisor,
                      nprime: int, rng: random.Random | None = None,
                      labeller: "_QuotientLabeller | None" = None):
    """Labels of {[3P - D3] mod N' : P in X(F_p)} plus the labeller used."""
    rng = rng or random.Random(hash(("local", tw.d, p, nprime)))
    J = Jacobian.of_twist(tw, p)
    order = zeta_data(tw, p).jacobian_order_k(1)
    lab = labeller or _QuotientLabeller(J, order, nprime, rng)
    A3, B3 = base_divisor.reduce_mod(p)
    pairs_d3 = [(A3, B3)]
    image = set()
    if J.mode == "split":
        base_shift = J.neg(J.class_minus_infplus(pairs_d3))      # [3 inf+ - D3]
        lab_shift = lab.label(base_shift)
        lab_xi = lab.label(J.xi())
        pts, n_inf = _curve_points(J, tw, p)
        for kind, x, y in pts:
            e = J.from_point(x, y)                                # [P - inf+]
            cls = lab.label(J.mul(e, 3))
            image.add(lab.label_add(cls, lab_shift))
        # the two points at infinity: [3 inf+ - D3], [3 inf- - D3]
        image.add(lab_shift)
        image.add(lab.label_add(lab_shift, lab.label_scale(lab_xi, -3)))
    else:
        pts, _ = _curve_points(J, tw, p)
        for kind, x, y in pts:
            A1 = Poly(J.F, [J.F.neg(x), J.F.one])
            B1 = Poly(J.F, [y])
            cls = J.class_from_pairs([(A1, B1)] * 3, pairs_d3)
            image.add(lab.label(cls))
    return image, lab, J, order


def reduce_generator(J: Jacobian, lab: _QuotientLabeller, g: GlobalDivisor, p: int):
    """Label of the reduction of [D - (deg D / 2) * D_inf]."""
    A, B = g.reduce_mod(p)
    half = g.degree // 2
    if J.mode == "split":
        # [D - half*(inf+ + inf-)] = [D - deg*inf+] + half*[inf+ - inf-]
        cls = J.class_minus_infplus([(A, B)])
        cls = J.add(cls, J.mul(J.xi(), half))
        return lab.label(cls)
    cls = J.class_from_pairs([(A, B)], [])
    return lab.label(cls)


def run_sieve(inp: SieveInput, quotient_budget: int = 2_000_000,
              rng: random.Random | None = None) -> SieveCertificate:
    """Intersect the global quotient image with the local point images."""
    rng = rng or random.Random(hash(("sieve", inp.tw.d, inp.nprime)))
    k = len(inp.generators)
    total = inp.nprime ** k
    if total > quotient_budget:
        raise ResourceWarning(
            f"quotient enumeration of size {total} exceeds the budget; "
            "reduce N' or the generator count")
    survivors = None
    local_record: dict[int, dict] = {}
    for p in sorted(inp.primes):
        image, lab, J, order = local_curve_image(
            inp.tw, p, inp.base_divisor, inp.nprime, rng)
        gen_labels = [reduce_generator(J, lab, g, p) for g in inp.generators]
        local_record[p] = {
            "order": order,
            "image": sorted(image),
            "generators": gen_labels,
            "quotient_size": lab.quotient_size(),
        }
        new_surv = []
        candidates = survivors if survivors is not None else _all_exponents(
            inp.nprime, k)
        for e in candidates:
            label = lab.zero_label()
            for ei, gl in zip(e, gen_labels):
                if ei:
                    label = lab.label_add(label, lab.label_scale(gl, ei))
            if label in image:
                new_surv.append(e)
        survivors = new_surv
        if not survivors:
            break
    empty = not survivors
    return SieveCertificate(curve=inp.tw.base.label, d=inp.tw.d,
                            nprime=inp.nprime, primes=tuple(sorted(inp.primes)),
                            conditional=not inp.saturation_claimed,
                            empty=empty, survivors=survivors or [],
                            local_data=local_record)


def _all_exponents(nprime: int, k: int):
    out = [()]
    for _ in range(k):
        out = [e + (i,) for e in out for i in range(nprime)]
    return out


def suggest_nprime(level: int, tw: TwistedCurve, primes) -> int:
    """Heuristic N': the torsion prime of the level (19 or 21) times small
    common factors of the local Jacobian orders."""
    if not primes:
        raise ValueError("prime set must be nonempty")
    seed = {13: 19, 18: 21}.get(level, 2)
    g = 0
    for p in primes:
        g = math.gcd(g, zeta_data(tw, p).jacobian_order_k(1))
    n = seed
    for q in (2, 3, 5):
        if g % q == 0 and n * q <= 60:
            n *= q
    return n


def select_primes(tw: TwistedCurve, nprime: int, count: int = 25,
                  p_max: int = 500) -> list[int]:
    """Good odd primes with the most N'-correlated Jacobian orders, greedily."""
    from .arith import primes_below
    scored = []
    for p in primes_below(p_max):
        if p == 2 or not tw.is_good_prime(p):
            continue
        n = zeta_data(tw, p).jacobian_order_k(1)
        g = math.gcd(n, nprime ** 3)
        if g > 1:
            scored.append((g, -p))
    scored.sort(reverse=True)
    return sorted(-s[1] for s in scored[:count])


# ---------------------------------------------------------------------------
# generator discovery from quadratic points

def find_quadratic_point_divisors(tw: TwistedCurve, u_bound: int,
                                  v_bound: int | None = None,
                                  limit: int = 40) -> list[GlobalDivisor]:
    """Degree-2 effective divisors (A, B) = (x^2+ux+v, b1 x + b0) over Q,
    i.e. conjugate pairs of quadratic points with irrational x."""
    from .fields import QQ
    from .jacobian import _sqrt_mod_quadratic
    from fractions import Fraction
    v_bound = v_bound if v_bound is not None else u_bound
    h = Poly.from_ints(QQ, tw.poly_int())
    out = []
    for u in range(-u_bound, u_bound + 1):
        for v in range(-v_bound, v_bound + 1):
            A = Poly(QQ, [Fraction(v), Fraction(u), Fraction(1)])
            disc = u * u - 4 * v
            s = math.isqrt(abs(disc))
            if disc >= 0 and s * s == disc:
                continue  # reducible: rational x (a fiber or a rational point)
            B = _sqrt_mod_quadratic(h % A, A)
            if B is None:
                continue
            out.append(GlobalDivisor(curve=tw, a=A.c, b=(B % A).c))
            if len(out) >= limit:
                return out
    return out


def prune_generators(tw: TwistedCurve, divisors: list[GlobalDivisor],
                     aux_primes, box: int = 6,
                     max_keep: int = 3) -> list[GlobalDivisor]:
    """Drop divisors whose class is a small combination of the kept ones,
    as detected by reductions modulo the auxiliary primes."""
    rng = random.Random(4242)
    reducers = []
    for p in aux_primes:
        J = Jacobian.of_twist(tw, p)
        order = zeta_data(tw, p).jacobian_order_k(1)
        reducers.append((p, J, order))

    def profile(g: GlobalDivisor):
        out = []
        for p, J, order in reducers:
            A, B = g.reduce_mod(p)
            if J.mode == "split":
                cls = J.add(J.class_minus_infplus([(A, B)]),
                            J.mul(J.xi(), g.degree // 2))
            else:
                cls = J.class_from_pairs([(A, B)], [])
            out.append((J, cls))
        return out

    kept: list[GlobalDivisor] = []
    kept_profiles = []
    for g in divisors:
        prof = profile(g)
        if all(J.is_zero(c) for J, c in prof):
            continue  # locally trivial everywhere sampled: useless as a generator
        redundant = False
        if kept:
            for combo in _small_combos(len(kept), box):
                ok = True
                for idx, (J, c) in enumerate(prof):
                    acc = J.zero()
                    for ci, (Jk, ck) in zip(combo, (kp[idx] for kp in kept_profiles)):
                        if ci:
                            acc = J.add(acc, J.mul(ck, ci))
                    if acc != c:
                        ok = False
                        break
                if ok:
                    redundant = True
                    break
        if not redundant:
            kept.append(g)
            kept_profiles.append(prof)
            if len(kept) >= max_keep:
                break
    return kept


def _small_combos(k: int, box: int):
    out = [()]
    for _ in range(k):
        out = [e + (i,) for e in out for i in range(-box, box + 1)]
    return [e for e in out]
