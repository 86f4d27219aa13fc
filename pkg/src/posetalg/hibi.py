"""Generalized Hibi rings on locally distributive lattices.

Each stalk is the interval algebra below an element, presented by the
classical straightening relations; restrictions kill the variables leaving
the interval.  The straightening-law structure of the ring of global
sections is verified degreewise by linear algebra, with multichain counting
as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import exactlin, simplicial
from .gradings import HilbertFunction, line_window
from .polynomials import Polynomial
from .posets import Poset, PosetError
from .sheaves import (CheckReport, PresentedAlgebra, PresentedStalk,
                      VariableSystem, ambient_ideal_rows, order_complex,
                      quotient_hilbert)


class NotLocallyDistributive(PosetError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"interval [{witness[0]}, {witness[1]}] is not a "
                         f"distributive lattice")


def _require_locally_distributive(poset: Poset):
    ok, witness = poset.is_locally_distributive()
    if not ok:
        raise NotLocallyDistributive(witness if witness else ("?", "?"))


def _interval_relations(poset: Poset, names, field):
    """Straightening relations x*y - meet*join for the incomparable pairs
    of a distributive lattice given by its sorted element list."""
    sub = poset.induced(names)
    rels = []
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if sub.leq(x, y) or sub.leq(y, x):
                continue
            meet, mubs = sub.meet_and_mubs(x, y)
            if meet is None or len(mubs) != 1:
                raise PosetError(f"interval is not a lattice at ({x}, {y})")
            join = mubs[0]
            e_xy = tuple(
                (1 if v in (x, y) else 0) + (1 if v in (x, y) and x == y else 0)
                for v in names)
            rel = Polynomial.monomial(names, _pair_exponent(names, x, y),
                                      field.one)
            rel = rel.sub(Polynomial.monomial(
                names, _pair_exponent(names, meet, join), field.one), field)
            rels.append(rel)
    return rels


def _pair_exponent(names, x, y):
    e = [0] * len(names)
    e[names.index(x)] += 1
    e[names.index(y)] += 1
    return tuple(e)


def hibi_algebra(poset: Poset, field=exactlin.QQ) -> PresentedAlgebra:
    """The system of interval algebras with straightening-relation stalks.

    The stalk at z lives on the interval [bottom, z]; restrictions send
    variables outside the smaller interval to zero.
    """
    _require_locally_distributive(poset)
    pool = {x: (1,) for x in poset.labels}
    var_sets = {}
    stalks = {}
    for z in poset.labels:
        names = tuple(sorted(poset.down_set(z).members, key=str))
        var_sets[z] = frozenset(names)
        degrees = tuple((1,) for _ in names)
        rels = _interval_relations(poset, names, field)
        stalks[z] = PresentedStalk(names, degrees, rels, 1)
    return PresentedAlgebra(poset, VariableSystem(pool, var_sets), stalks, field)


@dataclass
class StraighteningRelation:
    pair: tuple
    meet: object          # None when there are no upper bounds
    upper_bounds: tuple   # minimal upper bounds, possibly empty
    polynomial: Polynomial


def straightening_presentation(poset: Poset, field=exactlin.QQ):
    """One generator x*y - meet * (sum of minimal upper bounds) per
    incomparable pair, in the polynomial ring on all poset elements."""
    _require_locally_distributive(poset)
    names = poset.labels
    gens = []
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if poset.leq(x, y) or poset.leq(y, x):
                continue
            meet, mubs = poset.meet_and_mubs(x, y)
            rel = Polynomial.monomial(names, _pair_exponent(names, x, y),
                                      field.one)
            if mubs:
                if meet is None:
                    raise PosetError(f"no meet for ({x}, {y}) despite upper "
                                     f"bounds")
                for z in mubs:
                    rel = rel.sub(Polynomial.monomial(
                        names, _pair_exponent(names, meet, z), field.one),
                        field)
            gens.append(StraighteningRelation((x, y), meet if mubs else None,
                                              tuple(mubs), rel))
    return gens


def presented_hilbert(poset: Poset, bound: int, field=exactlin.QQ):
    """Hilbert function of the polynomial ring on P modulo the
    straightening generators, for total degrees up to the bound."""
    gens = [g.polynomial for g in straightening_presentation(poset, field)]
    names = poset.labels
    degrees = tuple((1,) for _ in names)
    return quotient_hilbert(names, degrees, gens, line_window(bound), field)


def standard_monomials(poset: Poset, d: int):
    """Exponent vectors over the poset elements with chain support and
    total degree d, sorted."""
    names = poset.labels
    pos = {x: i for i, x in enumerate(names)}
    out = []
    for chain in poset.chains():
        k = len(chain)
        if k == 0:
            if d == 0:
                out.append(tuple([0] * len(names)))
            continue
        if k > d:
            continue
        for comp in _compositions(d, k):
            e = [0] * len(names)
            for x, c in zip(chain, comp):
                e[pos[x]] = c
            out.append(tuple(e))
    return sorted(set(out))


def _compositions(d, k):
    """Compositions of d into k positive parts."""
    if k == 0:
        if d == 0:
            yield ()
        return
    if k == 1:
        yield (d,)
        return
    for first in range(1, d - k + 2):
        for rest in _compositions(d - first, k - 1):
            yield (first,) + rest


def multichain_count(poset: Poset, d: int) -> int:
    """Number of degree-d monomials with chain support."""
    if d == 0:
        return 1
    total = 0
    for chain in poset.chains():
        k = len(chain)
        if 1 <= k <= d:
            total += comb(d - 1, k - 1)
    return total


def asl_check(algebra: PresentedAlgebra, bound: int) -> CheckReport:
    """Verify the straightening-law structure of the ring of global
    sections degreewise up to the total-degree bound.

    Checks, in order: the restriction maps agree with the variable
    projections followed by the stalk quotients (the commuting squares);
    the standard monomials map to a basis of each graded piece of the
    limit; and products of incomparable pairs straighten with the required
    support shape.
    """
    report = CheckReport(True, "straightening law on the limit")
    poset = algebra.poset
    F = algebra.field
    window = line_window(bound)
    # commuting squares over covers
    for (x, y) in poset.cover_pairs():
        images = algebra.cover_maps[(x, y)]
        fx = algebra.variable_system.sets[x]
        for v in algebra.stalks[y].variables:
            img = images[v]
            if v in fx:
                expected = Polynomial.variable(algebra.stalks[x].variables, v, F)
            else:
                expected = Polynomial.zero(algebra.stalks[x].variables)
            if img.terms != expected.terms:
                report.fail(f"square at cover {x!r} < {y!r} fails on "
                            f"variable {v!r}")
                return report
    report.add("restriction squares commute with the projections")
    gv = algebra.variable_system.global_vars
    pos = {v: i for i, v in enumerate(gv)}
    images_by_degree = {}
    for a in window:
        d = a[0]
        monos = standard_monomials(poset, d)
        piece = algebra.limit_piece(a)
        vectors = []
        for e in monos:
            e_global = [0] * len(gv)
            for x, k in zip(poset.labels, e):
                if k:
                    e_global[pos[x]] = k
            vectors.append(algebra.global_block_vector(tuple(e_global), a))
        if len(monos) != piece.dim:
            report.fail(f"degree {d}: {len(monos)} standard monomials but "
                        f"limit dimension {piece.dim}")
            return report
        got = exactlin.rank([list(v) for v in vectors], F) if vectors else 0
        if got != len(monos):
            report.fail(f"degree {d}: standard monomial images are dependent")
            return report
        images_by_degree[d] = (monos, vectors)
    report.add("standard monomials form bases of the limit pieces")
    # straightening shape for incomparable products
    if bound >= 2:
        monos2, vectors2 = images_by_degree[2]
        for i, x in enumerate(poset.labels):
            for y in poset.labels[i + 1:]:
                if poset.leq(x, y) or poset.leq(y, x):
                    continue
                e_global = [0] * len(gv)
                e_global[pos[x]] += 1
                e_global[pos[y]] += 1
                target = algebra.global_block_vector(tuple(e_global), (2,))
                coords = exactlin.solve_coordinates(
                    [list(v) for v in vectors2], list(target), F)
                if coords is None:
                    report.fail(f"product {x}*{y} does not straighten")
                    return report
                for c, m in zip(coords, monos2):
                    if F.is_zero(c):
                        continue
                    supp = [poset.labels[j] for j, k in enumerate(m) if k]
                    top = max(supp, key=lambda s: (poset.element_rank(s), s))
                    if not (poset.lt(x, top) and poset.lt(y, top)):
                        report.fail(
                            f"straightening of {x}*{y} uses monomial with "
                            f"top element {top!r} not above both")
                        return report
    report.add("straightened products have the required support shape")
    return report


def cm_report(poset: Poset, field=exactlin.QQ) -> CheckReport:
    """Evaluate the order-complex Cohen-Macaulay hypothesis and report the
    implied conclusion for the generalized Hibi ring (no independent ring
    verification)."""
    _require_locally_distributive(poset)
    report = CheckReport(True, "Cohen-Macaulay criterion")
    cx = order_complex(poset)
    cm = simplicial.is_cm_reisner(cx, field)
    if cm:
        report.add("order complex is Cohen-Macaulay over the field")
        report.add("conclusion: the generalized Hibi ring is Cohen-Macaulay")
    else:
        report.add("order complex is not Cohen-Macaulay over the field")
        report.add("no conclusion asserted")
    report.hypothesis_holds = cm
    return report
