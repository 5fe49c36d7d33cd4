"""Exact halfspace clipping, cumulative volumes and section functions.

The volume of a simplex on one side of a hyperplane is evaluated with the
classical frustum recursion (Varsi 1973): given the affine values at the
vertices, the cut fraction is an O(p*q) rational recurrence that is exact and
untroubled by ties.  Cumulative volumes along a direction sum that fraction
over the cached triangulation, so no geometric clipping happens on hot paths;
``clip_simplex`` provides the independent, geometry-level route and the two
are compared exactly in the tests.

Section values f(t) are normalized so that integrating f over the raw
projection values t = x . theta recovers vol(K); with that convention the
slice measure is rational even for non-unit rational normals (the Euclidean
(n-1)-volume differs by the factor |theta|, which is irrational in general
and only used for display).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInput, RefNotInterior
from .geometry import (
    Location,
    Polytope,
    Simplex,
    Vec,
    as_fraction,
    as_point,
    det,
    dot,
    fraction_to_decimal,
    _triangulate,
    vsub,
)


@dataclass(frozen=True)
class Halfspace:
    """The set {x : normal·x <= offset}; the normal need not be unit."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ValueError("halfspace normal must be nonzero")

    @staticmethod
    def make(normal, offset) -> "Halfspace":
        return Halfspace(as_point(normal), as_fraction(offset))

    def value(self, x) -> Fraction:
        return dot(self.normal, x) - self.offset


# ---------------------------------------------------------------------------
# frustum fraction of a simplex


def simplex_cut_fraction(values) -> Fraction:
    """Fraction of a simplex lying in {l <= 0} given vertex values l(v_i).

    Frustum recursion over the positive values a_i and the magnitudes b_j of
    the negative values:

        V[0][j] = 1,   V[i][0] = 0,
        V[i][j] = (b_j V[i-1][j] + a_i V[i][j-1]) / (a_i + b_j)

    and the answer is V[p][q].  Exact in rational arithmetic; vertex values
    equal to zero contribute nothing and are dropped.
    """
    pos = [v for v in values if v > 0]
    neg = [-v for v in values if v < 0]
    if not pos:
        return Fraction(1)
    if not neg:
        return Fraction(0)
    row = [Fraction(1)] * (len(neg) + 1)
    for a in pos:
        row[0] = Fraction(0)
        for j, b in enumerate(neg, start=1):
            row[j] = (b * row[j] + a * row[j - 1]) / (a + b)
    return row[-1]


def _cut_fraction_float(values) -> float:
    pos = [v for v in values if v > 0.0]
    neg = [-v for v in values if v < 0.0]
    if not pos:
        return 1.0
    if not neg:
        return 0.0
    row = [1.0] * (len(neg) + 1)
    for a in pos:
        row[0] = 0.0
        for j, b in enumerate(neg, start=1):
            row[j] = (b * row[j] + a * row[j - 1]) / (a + b)
    return row[-1]


# ---------------------------------------------------------------------------
# geometric clipping (independent of the recursion above)


def clip_simplex(simplex: Simplex, half: Halfspace) -> list[Simplex]:
    """Triangulation of simplex ∩ halfspace; empty iff the piece has zero n-volume."""
    vals = [half.value(v) for v in simplex.vertices]
    if all(v <= 0 for v in vals):
        return [simplex]
    if all(v >= 0 for v in vals):
        return []
    pts: list[Vec] = [v for v, val in zip(simplex.vertices, vals) if val <= 0]
    for (i, vi), (j, vj) in itertools.combinations(enumerate(vals), 2):
        if (vi < 0 < vj) or (vj < 0 < vi):
            p, q = simplex.vertices[i], simplex.vertices[j]
            lam = vi / (vi - vj)  # lies strictly in (0, 1)
            pts.append(tuple(a + lam * (b - a) for a, b in zip(p, q)))
    n = simplex.dim
    tri = _triangulate(pts, n)
    return [Simplex(tuple(pts[k] for k in ids)) for ids in tri]


# ---------------------------------------------------------------------------
# cumulative volume along a direction


class CumulativeEvaluator:
    """Repeated exact evaluations of t -> vol(K ∩ {x·theta <= t}).

    Precomputes per-simplex vertex projections once; each evaluation is the
    frustum recursion per simplex.  ``value_float`` runs the same recurrence
    in floating point for search/bisection warm starts.
    """

    def __init__(self, poly: Polytope, theta):
        self.poly = poly
        self.theta = as_point(theta)
        if all(c == 0 for c in self.theta):
            raise ValueError("direction must be nonzero")
        self.total = poly.volume
        self._cells = [
            (s.volume(), [dot(self.theta, v) for v in s.vertices])
            for s in poly.triangulation
        ]
        self._fcells = [
            (float(vol), [float(p) for p in projs]) for vol, projs in self._cells
        ]
        projs = [dot(self.theta, v) for v in poly.vertices]
        self.lo = min(projs)
        self.hi = max(projs)

    def value(self, t) -> Fraction:
        t = as_fraction(t)
        if t <= self.lo:
            return Fraction(0)
        if t >= self.hi:
            return self.total
        acc = Fraction(0)
        for vol, projs in self._cells:
            vals = [p - t for p in projs]
            # the cut fraction is invariant under positive scaling of the
            # values; integer inputs keep the recursion's denominators small
            mult = math.lcm(*(v.denominator for v in vals))
            acc += vol * simplex_cut_fraction([int(v * mult) for v in vals])
        return acc

    def value_float(self, t: float) -> float:
        acc = 0.0
        for vol, projs in self._fcells:
            acc += vol * _cut_fraction_float([p - t for p in projs])
        return acc


def cumulative_volume(poly: Polytope, theta, t) -> Fraction:
    """Exact vol(K ∩ {x·theta <= t}); monotone nondecreasing in t."""
    return CumulativeEvaluator(poly, theta).value(t)


def support_interval(poly: Polytope, theta, ref) -> tuple[Fraction, Fraction]:
    """Distances (a, b) from an interior reference point to the support ends.

    The section function along theta, centered at ref, is supported on
    [-a, b]; both are positive for interior ref.
    """
    refp = as_point(ref)
    if poly.contains(refp) is not Location.INTERIOR:
        raise RefNotInterior("reference point must be strictly inside the body")
    th = as_point(theta)
    projs = [dot(th, v) for v in poly.vertices]
    s0 = dot(th, refp)
    return s0 - min(projs), max(projs) - s0


# ---------------------------------------------------------------------------
# section values


def section_value(poly: Polytope, theta, t) -> Fraction:
    """Slice measure f(t) of K at the hyperplane {x·theta = t}.

    Normalized so that the integral of f over raw projection values equals
    vol(K).  Computed from edge-hyperplane crossings hulled in a coordinate
    chart that drops the largest normal component; returns 0 outside the
    support and the closed-slice value at its endpoints.
    """
    th = as_point(theta)
    if all(c == 0 for c in th):
        raise ValueError("direction must be nonzero")
    t = as_fraction(t)
    n = poly.dim
    projs = [dot(th, v) for v in poly.vertices]
    if t < min(projs) or t > max(projs):
        return Fraction(0)
    if n == 1:
        return Fraction(1)
    pts: list[Vec] = [v for v, p in zip(poly.vertices, projs) if p == t]
    for i, j in poly.edges:
        pi, pj = projs[i], projs[j]
        if (pi < t < pj) or (pj < t < pi):
            lam = (t - pi) / (pj - pi)
            u, w = poly.vertices[i], poly.vertices[j]
            pts.append(tuple(a + lam * (b - a) for a, b in zip(u, w)))
    if len(pts) < n:
        return Fraction(0)
    k = max(range(n), key=lambda idx: (abs(th[idx]), -idx))
    chart = [tuple(p[j] for j in range(n) if j != k) for p in pts]
    try:
        tri = _triangulate(chart, n - 1)
    except DegenerateInput:
        return Fraction(0)
    fact = math.factorial(n - 1)
    vol = Fraction(0)
    for ids in tri:
        base = chart[ids[0]]
        rows = [vsub(chart[i], base) for i in ids[1:]]
        vol += abs(det(rows)) / fact
    return vol / abs(th[k])


# ---------------------------------------------------------------------------
# exact piecewise polynomials of the section function


def _newton_interp(xs: list[Fraction], ys: list[Fraction]) -> list[Fraction]:
    """Exact interpolating polynomial coefficients (low to high degree)."""
    k = len(xs)
    coef = list(ys)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form
    poly = [Fraction(0)] * k
    poly[0] = coef[-1]
    deg = 0
    for i in range(k - 2, -1, -1):
        # poly <- poly*(x - xs[i]) + coef[i]
        for d in range(deg, -1, -1):
            poly[d + 1] += poly[d]
            poly[d] = -xs[i] * poly[d]
        deg += 1
        poly[0] += coef[i]
    return poly


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derive(coeffs):
    return [c * k for k, c in enumerate(coeffs)][1:] or [Fraction(0)]


def _poly_antiderive(coeffs):
    return [Fraction(0)] + [c / (k + 1) for k, c in enumerate(coeffs)]


class SectionPolynomials:
    """Exact polynomial pieces of cum(t) and f(t) along a direction.

    Between consecutive distinct vertex projections the cumulative volume is a
    single polynomial of degree <= n; each piece is recovered by exact
    interpolation at n+1 interior rational nodes.
    """

    def __init__(self, poly: Polytope, theta):
        self.ev = CumulativeEvaluator(poly, theta)
        n = poly.dim
        breaks = sorted({dot(self.ev.theta, v) for v in poly.vertices})
        self.breakpoints: list[Fraction] = breaks
        self.cum_pieces: list[list[Fraction]] = []
        self.f_pieces: list[list[Fraction]] = []
        for lo, hi in zip(breaks, breaks[1:]):
            step = (hi - lo) / (n + 2)
            xs = [lo + (j + 1) * step for j in range(n + 1)]
            ys = [self.ev.value(x) for x in xs]
            cum = _newton_interp(xs, ys)
            self.cum_pieces.append(cum)
            self.f_pieces.append(_poly_derive(cum))

    def _piece_index(self, t: Fraction) -> int | None:
        b = self.breakpoints
        if t < b[0] or t > b[-1]:
            return None
        for i in range(len(b) - 1):
            if t <= b[i + 1]:
                return i
        return len(b) - 2

    def f_value(self, t) -> Fraction:
        """Section value as the exact derivative of the cumulative volume."""
        t = as_fraction(t)
        i = self._piece_index(t)
        if i is None:
            return Fraction(0)
        return _poly_eval(self.f_pieces[i], t)

    def mass(self) -> Fraction:
        """Integral of f over the support; equals vol(K) exactly."""
        acc = Fraction(0)
        for (lo, hi), f in zip(zip(self.breakpoints, self.breakpoints[1:]), self.f_pieces):
            anti = _poly_antiderive(f)
            acc += _poly_eval(anti, hi) - _poly_eval(anti, lo)
        return acc

    def moment(self, about) -> Fraction:
        """Exact first moment of f about a projection value s0."""
        s0 = as_fraction(about)
        acc = Fraction(0)
        for (lo, hi), f in zip(zip(self.breakpoints, self.breakpoints[1:]), self.f_pieces):
            tf = [Fraction(0)] + list(f)  # t*f(t)
            shifted = [a - s0 * b for a, b in zip(tf, list(f) + [Fraction(0)])]
            anti = _poly_antiderive(shifted)
            acc += _poly_eval(anti, hi) - _poly_eval(anti, lo)
        return acc


def section_moment(poly: Polytope, theta, ref=None) -> Fraction:
    """Exact moment of the section function about the reference projection.

    Zero (as a rational identity) when ref is the centroid.
    """
    refp = as_point(ref) if ref is not None else poly.centroid
    sp = SectionPolynomials(poly, theta)
    return sp.moment(dot(sp.ev.theta, refp))


# ---------------------------------------------------------------------------
# sampled profiles


@dataclass(frozen=True)
class SectionProfile:
    """Exact samples of the section function on a uniform grid around ref."""

    direction: Vec
    ref: Vec
    a: Fraction
    b: Fraction
    samples: tuple[tuple[Fraction, Fraction], ...]  # (t relative to ref, f)
    dim: int

    def h_exponent(self) -> int:
        return max(self.dim - 1, 1)

    def h_values(self) -> list[tuple[float, float]]:
        k = self.h_exponent()
        return [(float(t), float(f) ** (1.0 / k)) for t, f in self.samples]

    def midpoint_concavity_ok(self, tol: float = 1e-12) -> bool:
        """Chord condition for h = f^(1/(n-1)) over all interior grid triples.

        For planar bodies h equals f, so the check is an exact rational
        comparison; in higher dimension the root is taken in floating point
        against the tolerance.
        """
        if self.dim == 2:
            for (t1, h1), (t2, h2), (t3, h3) in itertools.combinations(self.samples, 3):
                if (h2 - h1) * (t3 - t1) < (h3 - h1) * (t2 - t1):
                    return False
            return True
        hv = self.h_values()
        for (t1, h1), (t2, h2), (t3, h3) in itertools.combinations(hv, 3):
            lam = (t2 - t1) / (t3 - t1)
            if h2 < h1 + lam * (h3 - h1) - tol:
                return False
        return True

    def trapezoid_mass(self) -> float:
        ts = [float(t) for t, _ in self.samples]
        fs = [float(f) for _, f in self.samples]
        return sum((fs[i] + fs[i + 1]) * (ts[i + 1] - ts[i]) / 2.0
                   for i in range(len(ts) - 1))

    def to_csv(self, digits: int = 12) -> str:
        k = self.h_exponent()
        lines = ["t,f,h"]
        for t, f in self.samples:
            h = float(f) ** (1.0 / k)
            lines.append(f"{fraction_to_decimal(t, digits)},"
                         f"{fraction_to_decimal(f, digits)},{h:.{digits}f}")
        return "\n".join(lines) + "\n"


def profile(poly: Polytope, theta, grid_size: int, ref=None) -> SectionProfile:
    """Sample the section function on a uniform rational grid over its support."""
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    refp = as_point(ref) if ref is not None else poly.centroid
    th = as_point(theta)
    a, b = support_interval(poly, th, refp)
    s0 = dot(th, refp)
    step = (a + b) / (grid_size - 1)
    samples = []
    for i in range(grid_size):
        t_rel = -a + i * step
        samples.append((t_rel, section_value(poly, th, s0 + t_rel)))
    return SectionProfile(direction=th, ref=refp, a=a, b=b,
                          samples=tuple(samples), dim=poly.dim)
