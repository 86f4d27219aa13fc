"""Multidegrees, graded windows, Hilbert functions and monomial enumeration.

Degrees are tuples of ints in Z^m.  A finite family of variable degrees must
generate a pointed cone so that every graded piece is finite dimensional;
pointedness is certified by an exact strictly-positive functional found with
Fourier-Motzkin elimination over Fractions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Degree = tuple


def add_deg(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def sub_deg(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def neg_deg(a: Degree) -> Degree:
    return tuple(-x for x in a)


def scale_deg(k: int, a: Degree) -> Degree:
    return tuple(k * x for x in a)


def dot(w, a) -> Fraction:
    return sum((wi * ai for wi, ai in zip(w, a)), Fraction(0))


def _normalize_constraint(coeffs, const):
    from math import gcd
    nums = [c.numerator for c in coeffs] + [const.numerator]
    dens = [c.denominator for c in coeffs] + [const.denominator]
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs] + [int(const * lcm)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


def linear_feasibility(constraints, nvars: int):
    """Exact Fourier-Motzkin feasibility for `coeffs . x >= const` systems.

    Returns a rational solution tuple, or None when infeasible.  Equalities
    are encoded by the caller as two opposite inequalities.  Desk scale.
    """
    constraints = [(tuple(Fraction(c) for c in coeffs), Fraction(const))
                   for coeffs, const in constraints]
    stages = []
    for var in range(nvars):
        seen = set()
        dedup = []
        for coeffs, const in constraints:
            key = _normalize_constraint(coeffs, const)
            if key not in seen:
                seen.add(key)
                dedup.append((coeffs, const))
        constraints = dedup
        stages.append(constraints)
        pos = [(c, k) for c, k in constraints if c[var] > 0]
        neg = [(c, k) for c, k in constraints if c[var] < 0]
        zer = [(c, k) for c, k in constraints if c[var] == 0]
        new = list(zer)
        for cp, kp in pos:
            for cn, kn in neg:
                s = cp[var]
                t = -cn[var]
                coeffs = tuple(t * cp[j] + s * cn[j] for j in range(nvars))
                new.append((coeffs, t * kp + s * kn))
        constraints = new
        if len(constraints) > 20000:
            raise RuntimeError("Fourier-Motzkin blow-up; input too large")
    for coeffs, const in constraints:
        if const > 0:
            return None
    x = [Fraction(0)] * nvars
    for var in reversed(range(nvars)):
        lower = []
        upper = []
        for coeffs, const in stages[var]:
            rest = const - sum(coeffs[j] * x[j] for j in range(var + 1, nvars))
            c = coeffs[var]
            if c > 0:
                lower.append(rest / c)
            elif c < 0:
                upper.append(rest / c)
        if lower and upper:
            x[var] = (max(lower) + min(upper)) / 2
        elif lower:
            x[var] = max(lower)
        elif upper:
            x[var] = min(upper)
        else:
            x[var] = Fraction(0)
    return tuple(x)


def find_positive_functional(vectors, m: int):
    """A rational w with w . v >= 1 for every v, or None if none exists.

    Existence is equivalent to the vectors generating a pointed cone with
    none of them zero.
    """
    vectors = [tuple(v) for v in vectors]
    if any(all(x == 0 for x in v) for v in vectors):
        return None
    if not vectors:
        return tuple([Fraction(0)] * m)
    return linear_feasibility([(v, 1) for v in vectors], m)


def monomials_of_degree(var_degrees, target: Degree, functional):
    """All exponent tuples e with sum e_i * deg_i == target, sorted.

    `functional` must be strictly positive on every variable degree; it
    bounds the search.  Returns a sorted list of exponent tuples.
    """
    n = len(var_degrees)
    weights = [dot(functional, d) for d in var_degrees]
    out = []
    expo = [0] * n

    def rec(i, remaining, wrem):
        if wrem < 0:
            return
        if i == n:
            if all(x == 0 for x in remaining):
                out.append(tuple(expo))
            return
        cap = int(wrem / weights[i])
        d = var_degrees[i]
        for e in range(cap + 1):
            expo[i] = e
            rec(i + 1, tuple(r - e * dv for r, dv in zip(remaining, d)),
                wrem - e * weights[i])
        expo[i] = 0

    rec(0, tuple(target), dot(functional, target))
    out.sort()
    return out


def box_window(m: int, lo: int, hi: int):
    """All degrees in the box [lo, hi]^m, sorted."""
    return [tuple(a) for a in itertools.product(range(lo, hi + 1), repeat=m)]


def nonneg_box(n: int, hi: int):
    return box_window(n, 0, hi)


def total_degree_window(n: int, bound: int):
    """All a in N^n with |a| <= bound, sorted."""
    out = []

    def rec(i, prefix, left):
        if i == n - 1:
            for e in range(left + 1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(left + 1):
            rec(i + 1, prefix + [e], left - e)

    if n == 0:
        return [()]
    rec(0, [], bound)
    out.sort()
    return out


def line_window(bound: int):
    """Total-degree window for a standard N-grading: (0,), ..., (bound,)."""
    return [(d,) for d in range(bound + 1)]


class HilbertFunction:
    """A finitely supported map from a finite degree window to dimensions."""

    def __init__(self, grading_rank: int, window, values=None):
        self.grading_rank = grading_rank
        self.window = tuple(sorted(window))
        self.values = {}
        if values:
            for a, d in values.items():
                if d < 0:
                    raise ValueError("negative dimension")
                if d:
                    self.values[tuple(a)] = d

    def __getitem__(self, a):
        return self.values.get(tuple(a), 0)

    def set(self, a, d):
        if d < 0:
            raise ValueError("negative dimension")
        a = tuple(a)
        if d:
            self.values[a] = d
        else:
            self.values.pop(a, None)

    def support(self):
        return sorted(self.values)

    def total(self):
        return sum(self.values.values())

    def __eq__(self, other):
        if not isinstance(other, HilbertFunction):
            return NotImplemented
        return (self.grading_rank == other.grading_rank
                and self.window == other.window
                and self.values == other.values)

    def __repr__(self):
        return f"HilbertFunction({self.values})"

    def table_rows(self):
        """Deterministic (degree, dim) rows over the window, support only."""
        return [(a, self.values[a]) for a in sorted(self.values)]
