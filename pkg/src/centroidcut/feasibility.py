"""Exact linear feasibility via Fourier-Motzkin elimination.

Works over rationals with integer-normalized inequalities, syntactic
deduplication / dominance filtering, and the classical ancestor-counting rule
(an inequality derived after k eliminations is redundant when it combines
more than k+1 of the original rows).  Intended for desk-scale systems
(dozens of halfspaces in dimension <= 6).
"""
from __future__ import annotations

import math
from fractions import Fraction

from .geometry import as_fraction


def _normalize(coeffs, rhs):
    """Scale an inequality to primitive integers (direction preserved)."""
    fr = [as_fraction(c) for c in coeffs] + [as_fraction(rhs)]
    mult = math.lcm(*(f.denominator for f in fr))
    ints = [int(f * mult) for f in fr]
    g = math.gcd(*(abs(v) for v in ints))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


class _Row:
    __slots__ = ("coeffs", "rhs", "ancestors")

    def __init__(self, coeffs, rhs, ancestors):
        self.coeffs = coeffs
        self.rhs = rhs
        self.ancestors = ancestors


def _dedupe(rows: list[_Row]) -> list[_Row] | None:
    """Drop repeated / dominated rows; None signals an infeasible constant row."""
    best: dict[tuple, _Row] = {}
    for row in rows:
        if all(c == 0 for c in row.coeffs):
            if row.rhs < 0:
                return None
            continue
        key = row.coeffs
        cur = best.get(key)
        if cur is None or row.rhs < cur.rhs or (
                row.rhs == cur.rhs and len(row.ancestors) < len(cur.ancestors)):
            best[key] = row
    return list(best.values())


def feasible_point(inequalities, n: int) -> tuple[Fraction, ...] | None:
    """Exact witness for {x : coeffs_i . x <= rhs_i}, or None when empty.

    `inequalities` is an iterable of (coefficient sequence, rhs).
    """
    rows = []
    for idx, (coeffs, rhs) in enumerate(inequalities):
        c, r = _normalize(coeffs, rhs)
        if len(c) != n:
            raise ValueError("inequality arity does not match dimension")
        rows.append(_Row(c, r, frozenset([idx])))
    rows = _dedupe(rows)
    if rows is None:
        return None

    stages: list[tuple[int, list[_Row]]] = []
    remaining = list(range(n))
    for step in range(1, n + 1):
        # eliminate the variable generating the fewest pairings
        def cost(j):
            p = sum(1 for r in rows if r.coeffs[j] > 0)
            q = sum(1 for r in rows if r.coeffs[j] < 0)
            return p * q - (p + q)

        var = min(remaining, key=cost)
        remaining.remove(var)
        stages.append((var, rows))

        pos = [r for r in rows if r.coeffs[var] > 0]
        neg = [r for r in rows if r.coeffs[var] < 0]
        zero = [r for r in rows if r.coeffs[var] == 0]
        derived = list(zero)
        for p in pos:
            for q in neg:
                anc = p.ancestors | q.ancestors
                if len(anc) > step + 1:
                    continue
                a, b = p.coeffs[var], -q.coeffs[var]
                coeffs = tuple(b * pc + a * qc for pc, qc in zip(p.coeffs, q.coeffs))
                rhs = b * p.rhs + a * q.rhs
                c2, r2 = _normalize(coeffs, rhs)
                derived.append(_Row(c2, r2, anc))
        rows = _dedupe(derived)
        if rows is None:
            return None

    # back-substitution, most recently eliminated variable first
    point: dict[int, Fraction] = {}
    for var, stage_rows in reversed(stages):
        lo, hi = None, None
        for r in stage_rows:
            cv = r.coeffs[var]
            if cv == 0:
                continue
            rest = r.rhs - sum(c * point[j] for j, c in enumerate(r.coeffs)
                               if j != var and c != 0)
            bound = Fraction(rest, cv)
            if cv > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None:
            if lo > hi:
                return None  # should not happen for a feasible system
            point[var] = (lo + hi) / 2
        elif lo is not None:
            point[var] = lo + 1
        elif hi is not None:
            point[var] = hi - 1
        else:
            point[var] = Fraction(0)
    return tuple(point[j] for j in range(n))
