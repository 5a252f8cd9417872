"""The growth constant kappa'_f for twists of a hyperelliptic curve.

kappa'_f = (V'_f / A_f(Q)) * prod_p E_p, where V'_f is the area of
{(x,y): |F(x,y)| <= 1} for the degree-6 homogenization F of f, A_f(Q) counts
the rational linear symmetries of F modulo squares (|Aut_Q(C)|/2), and

    E_p = 1 + (1 - p^(-2/3)) * sum_{k>=1} omega'(p^(2k)) / p^(10k/3),
    omega'(p^k) = p^(k-1) (p-1) omega(p^k),
    omega(r) = #{t mod r : r | f(t)}.

For p not dividing disc(f), omega(p^k) = omega(p) (simple roots lift) and the
series collapses to 1 + omega(p)(p-1)(p^(2/3)-1)/(p^3 - p^(5/3)).

V'_f is computed from the exact polar reduction: by degree-6 homogeneity the
region's area is (1/2) Int_0^{2pi} |F(cos t, sin t)|^(-1/3) dt. Zeros of F on
the circle (simple, because f is squarefree) make the integrand blow up like
|t - t0|^(-1/3); substituting t = t0 +- u^3 renders each piece analytic, and
adaptive Gauss-Legendre refinement supplies the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factorize, primes_below
from .curve import CurveModel
from .poly import int_derivative, int_eval


# ---------------------------------------------------------------------------
# residue counts omega

def omega(f: tuple[int, ...], r: int) -> int:
    """#{t mod r : r | f(t)}; direct count for r <= 10^4, else lifted prime powers."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return 1
    if r <= 10_000:
        if r > 64:  # vectorized Horner, exact in int64 for r <= 10^4
            t = np.arange(r, dtype=np.int64)
            acc = np.zeros(r, dtype=np.int64)
            for c in reversed(f):
                acc = (acc * t + c) % r
            return int(np.count_nonzero(acc == 0))
        return sum(1 for t in range(r) if int_eval(f, t) % r == 0)
    out = 1
    for p, k in factorize(r).items():
        out *= omega_prime_power(f, p, k)
    return out


def omega_prime(f: tuple[int, ...], p: int) -> int:
    """omega(p) for prime p: deg gcd(x^p - x, f) over F_p (distinct-root count)."""
    from .fields import GF
    from .poly import Poly, gcd as pgcd
    Fp = GF(p)
    fp = Poly.from_ints(Fp, f)
    if fp.deg < 1:
        return 0 if fp.is_zero() else 0
    x = Poly.x(Fp)
    xp = x.pow_mod(p, fp)
    return pgcd(xp - x, fp).deg


def omega_prime_power(f: tuple[int, ...], p: int, k: int) -> int:
    """omega(p^k) by recursive root lifting (exact for any p, k)."""
    fp = int_derivative(f)

    def count(x0: int, j: int) -> int:
        # residues t mod p^k with t = x0 (mod p^j), p^k | f(t); p^j | f(x0) holds
        if j == k:
            return 1
        if int_eval(fp, x0) % p != 0:
            return 1  # simple root mod p^j: unique Hensel continuation
        total = 0
        for c in range(p):
            x1 = x0 + c * p ** j
            if int_eval(f, x1) % p ** (j + 1) == 0:
                total += count(x1, j + 1)
        return total

    return sum(count(t, 1) for t in range(p) if int_eval(f, t) % p == 0)


def euler_term(f: tuple[int, ...], disc: int, p: int, depth: int = 8) -> float:
    """The p-th factor of the Euler product (closed form at good p)."""
    if disc % p != 0:
        w = omega_prime(f, p) if p > 2000 else omega(f, p)
        if w == 0:
            return 1.0
        return 1.0 + w * (p - 1) * (p ** (2 / 3) - 1) / (p ** 3 - p ** (5 / 3))
    return euler_term_series(f, p, depth)


def euler_term_series(f: tuple[int, ...], p: int, depth: int) -> float:
    """Direct series evaluation (works at any p; used for bad p and as oracle)."""
    s = 0.0
    for k in range(1, depth + 1):
        w = omega_prime_power(f, p, 2 * k)
        if w == 0:
            continue
        omega_prime = p ** (2 * k - 1) * (p - 1) * w
        s += omega_prime / p ** (10 * k / 3)
    return 1.0 + (1.0 - p ** (-2 / 3)) * s


# ---------------------------------------------------------------------------
# the area V'_f

def _homog_coeffs(f: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(f) + (0,) * (7 - len(f))


def _f_on_circle(F: tuple[int, ...], theta: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    acc = np.zeros_like(theta)
    for i in range(6, -1, -1):
        acc = acc * c + F[i] * s ** (6 - i)
    return acc


def _circle_zeros(f: tuple[int, ...]) -> list[float]:
    """Angles in [0, pi) where F(cos t, sin t) = 0: from real roots of f,
    plus t = 0 when deg f < 6 (the z | F factor)."""
    roots = []
    deg = len(f) - 1
    if deg < 6:
        roots.append(0.0)
    real = np.roots(list(reversed(f)))
    for z in real:
        if abs(z.imag) < 1e-9:
            r = _polish_real_root(f, float(z.real))
            roots.append(math.pi / 2 - math.atan(r))
    roots = sorted(set(t % math.pi for t in roots))
    return roots


def _polish_real_root(f: tuple[int, ...], x: float) -> float:
    fp = int_derivative(f)
    for _ in range(60):
        v = int_eval_f(f, x)
        dv = int_eval_f(fp, x)
        if dv == 0:
            break
        step = v / dv
        x -= step
        if abs(step) < 1e-16 * max(1.0, abs(x)):
            break
    return x


def int_eval_f(coeffs, x: float) -> float:
    acc = 0.0
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


_GL_NODES = np.polynomial.legendre.leggauss(24)


def _gl_integrate(fun, a: float, b: float) -> float:
    x, w = _GL_NODES
    mid, half = (a + b) / 2, (b - a) / 2
    return half * float(np.dot(w, fun(mid + half * x)))


def _adaptive(fun, a: float, b: float, tol: float, depth: int = 0) -> tuple[float, float]:
    whole = _gl_integrate(fun, a, b)
    mid = (a + b) / 2
    left = _gl_integrate(fun, a, mid)
    right = _gl_integrate(fun, mid, b)
    delta = abs(left + right - whole)
    if delta < tol or depth >= 24:
        return left + right, delta
    lv, le = _adaptive(fun, a, mid, tol / 2, depth + 1)
    rv, re = _adaptive(fun, mid, b, tol / 2, depth + 1)
    return lv + rv, le + re


def vf_area(f: tuple[int, ...], tol: float = 1e-9) -> tuple[float, float]:
    """(V'_f, error estimate): area of {|F(x,y)| <= 1}."""
    # F(-v) = F(v), so the circle integrand has period pi and
    # (1/2) Int_0^{2pi} = Int_0^pi.
    F = _homog_coeffs(f)
    zeros = _circle_zeros(f)
    span = math.pi
    if not zeros:
        fun = lambda t: np.abs(_f_on_circle(F, t)) ** (-1.0 / 3.0)
        return _adaptive(fun, 0.0, span, tol)

    # split [t0, t0 + pi] at the zeros; handle each endpoint by t = z +- u^3
    pts = sorted(zeros)
    segments = []
    for i, z in enumerate(pts):
        znext = pts[(i + 1) % len(pts)]
        if i + 1 == len(pts):
            znext += span
        segments.append((z, znext))
    total, err_total = 0.0, 0.0
    min_gap = min(b - a for a, b in segments)
    for a, b in segments:
        mid = (a + b) / 2

        def left_piece(u, a=a):
            t = a + u ** 3
            return 3 * u ** 2 * np.abs(_f_on_circle(F, t)) ** (-1.0 / 3.0)

        def right_piece(u, b=b):
            t = b - u ** 3
            return 3 * u ** 2 * np.abs(_f_on_circle(F, t)) ** (-1.0 / 3.0)

        v1, e1 = _adaptive(left_piece, 0.0, (mid - a) ** (1 / 3), tol / (4 * len(segments)))
        v2, e2 = _adaptive(right_piece, 0.0, (b - mid) ** (1 / 3), tol / (4 * len(segments)))
        total += v1 + v2
        err_total += e1 + e2
    return total, err_total


def vf_area_grid_oracle(f: tuple[int, ...], box: float = 3.0, n: int = 2400) -> float:
    """Independent 2D estimate by grid counting (bounded regions only)."""
    F = _homog_coeffs(f)
    xs = np.linspace(-box, box, n)
    ys = np.linspace(-box, box, n)
    X, Y = np.meshgrid(xs, ys)
    acc = np.zeros_like(X)
    for i in range(6, -1, -1):
        acc = acc * X + F[i] * Y ** (6 - i)
    cell = (2 * box / (n - 1)) ** 2
    return float(np.count_nonzero(np.abs(acc) <= 1.0)) * cell


# ---------------------------------------------------------------------------
# assembling kappa and the growth comparison

@dataclass(frozen=True)
class GranvilleConstant:
    curve: str
    vf: float
    vf_error: float
    a_f: int
    euler_product: float
    prime_cutoff: int
    depth: int
    tail_estimate: float
    kappa: float


def kappa(curve: CurveModel, a_f: int, prime_cutoff: int = 100_000,
          depth: int = 8, tol: float = 1e-9) -> GranvilleConstant:
    vf, vf_err = vf_area(curve.f, tol)
    disc = curve.disc
    prod = 1.0
    omega_recent: list[int] = []
    primes = primes_below(prime_cutoff)
    for p in primes:
        prod *= euler_term(curve.f, disc, p, depth)
        if p > prime_cutoff // 2 and disc % p != 0:
            omega_recent.append(omega_prime(curve.f, p))
    # tail of log(product): ~ sum_{p>P} omega(p) p^(-4/3), with omega averaged
    # over the last observed stretch (integral estimate 3 P^(-1/3) / ln P)
    P = prime_cutoff
    omega_bar = (sum(omega_recent) / len(omega_recent)) if omega_recent else 1.0
    tail = 3.0 * max(omega_bar, 0.5) * P ** (-1 / 3) / math.log(P)
    return GranvilleConstant(curve=curve.label, vf=vf, vf_error=vf_err, a_f=a_f,
                             euler_product=prod, prime_cutoff=prime_cutoff,
                             depth=depth, tail_estimate=tail,
                             kappa=vf / a_f * prod)


@dataclass(frozen=True)
class GrowthSeries:
    curve: str
    members: tuple[int, ...]
    grid: tuple[int, ...]
    counts: tuple[int, ...]
    ratios: tuple[float, ...]

    def rows(self, kappa_value: float):
        for b, c, r in zip(self.grid, self.counts, self.ratios):
            yield b, c, r, kappa_value * b ** (1 / 3)


def growth_series(curve_label: str, members, b_max: int,
                  n_grid: int = 200) -> GrowthSeries:
    """|T_B| sampled on a B grid, with the ratio |T_B|/B^(1/3)."""
    ms = sorted(set(members), key=abs)
    if any(abs(d) >= b_max for d in ms):
        raise ValueError("member beyond b_max")
    grid = sorted(set(int(round(b)) for b in np.linspace(1, b_max, n_grid)))
    sizes = np.array([abs(d) for d in ms])
    counts = [int(np.count_nonzero(sizes < b)) for b in grid]
    ratios = [c / b ** (1 / 3) if b > 0 else 0.0 for c, b in zip(counts, grid)]
    return GrowthSeries(curve=curve_label, members=tuple(ms), grid=tuple(grid),
                        counts=tuple(counts), ratios=tuple(ratios))


# ---------------------------------------------------------------------------
# advisory automorphism search

def automorphism_count_lower_bound(f: tuple[int, ...], height: int = 10) -> int:
    """Count PGL2(Q) transformations with F o M = (square) * F, |entries| <= height.

    Advisory: a lower bound for A_f(Q) (the searcher cannot prove completeness).
    """
    from fractions import Fraction
    F = _homog_coeffs(f)

    def apply(M, i):
        # coefficient vector of F(a x + b z, c x + d z)
        a, b, c, d = M
        # expand via polynomial arithmetic in (x, z)
        out = [Fraction(0)] * 7
        for k in range(7):
            if F[k] == 0:
                continue
            # (a x + b z)^k (c x + d z)^(6-k)
            poly1 = _binom_pow(a, b, k)
            poly2 = _binom_pow(c, d, 6 - k)
            conv = [Fraction(0)] * 7
            for i1, v1 in enumerate(poly1):
                for i2, v2 in enumerate(poly2):
                    conv[i1 + i2] += v1 * v2
            for j in range(7):
                out[j] += F[k] * conv[j]
        return out

    def _binom_pow(a, b, k):
        # (a x + b z)^k as x-coefficients ascending
        out = [Fraction(0)] * (k + 1)
        for i in range(k + 1):
            out[i] = Fraction(math.comb(k, i) * a ** i * b ** (k - i))
        return out

    found = set()
    for a in range(-height, height + 1):
        for b in range(-height, height + 1):
            for c in range(-height, height + 1):
                for d in range(-height, height + 1):
                    if a * d - b * c == 0:
                        continue
                    img = apply((a, b, c, d), None)
                    ratio = None
                    ok = True
                    for u, v in zip(img, F):
                        if (v == 0) != (u == 0):
                            ok = False
                            break
                        if v != 0:
                            rr = Fraction(u) / v
                            if ratio is None:
                                ratio = rr
                            elif rr != ratio:
                                ok = False
                                break
                    if not ok or ratio is None or ratio <= 0:
                        continue
                    num = ratio.numerator * ratio.denominator
                    s = math.isqrt(num)
                    if s * s != num:
                        continue
                    # projective normalization of M
                    g = math.gcd(math.gcd(abs(a), abs(b)), math.gcd(abs(c), abs(d)))
                    key = tuple(x // g for x in (a, b, c, d))
                    if key[0] < 0 or (key[0] == 0 and key[1] < 0):
                        key = tuple(-x for x in key)
                    found.add(key)
    return len(found)
