"""Monomial ideals: irreducible decomposition, the poset of component sums,
the attached system of quotient algebras, and its local cohomology.

Exponent vectors are int tuples; the unit ideal is represented by the all
zero generator.  Infinite pure-power exponents use float('inf') as sentinel:
min() and comparisons against ints behave correctly, and no arithmetic other
than min/compare is ever performed on them.
"""

from __future__ import annotations

import itertools
from math import inf

from . import exactlin, simplicial
from .gradings import HilbertFunction


class MonomialIdeal:
    """A monomial ideal recorded by its minimal generators."""

    def __init__(self, n: int, generators):
        gens = {tuple(g) for g in generators}
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} has length != {n}")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
        self.n = n
        self.generators = tuple(sorted(_minimalize(gens)))

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in g) for g in self.generators)

    def contains(self, e) -> bool:
        """Membership of the monomial with exponent vector e."""
        e = tuple(e)
        if len(e) != self.n:
            raise ValueError("ambient mismatch")
        return any(all(ge <= ee for ge, ee in zip(g, e)) for g in self.generators)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        if self.is_zero() or other.is_zero():
            return MonomialIdeal(self.n, [])
        gens = [tuple(max(a, b) for a, b in zip(g, h))
                for g in self.generators for h in other.generators]
        return MonomialIdeal(self.n, gens)

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        return MonomialIdeal(self.n, self.generators + other.generators)

    def __eq__(self, other):
        if isinstance(other, MonomialIdeal):
            return self.n == other.n and self.generators == other.generators
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, gens={list(self.generators)})"


def _minimalize(gens):
    out = []
    for g in gens:
        if any(h != g and all(he <= ge for he, ge in zip(h, g)) for h in gens):
            continue
        out.append(g)
    return out


def ideal_membership(ideal: MonomialIdeal, e) -> bool:
    return ideal.contains(e)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return a.intersect(b)


def irreducible_decomposition(ideal: MonomialIdeal):
    """The irredundant irreducible decomposition, as sorted exponent vectors.

    Components are pure-power ideals: b encodes (x_j^{b_j} : b_j > 0).
    Recursive generator splitting, then minimalization and irredundancy.
    """
    if ideal.is_zero():
        raise ValueError("the zero ideal has no irreducible decomposition")
    if ideal.is_unit():
        raise ValueError("the unit ideal has no irreducible decomposition")
    n = ideal.n
    components = set()
    stack = [ideal.generators]
    seen = set()
    while stack:
        gens = tuple(sorted(_minimalize(set(stack.pop()))))
        if gens in seen:
            continue
        seen.add(gens)
        split = None
        for g in gens:
            support = [j for j, e in enumerate(g) if e > 0]
            if len(support) >= 2:
                split = (g, support[0])
                break
        if split is None:
            b = [0] * n
            for g in gens:
                j = next(i for i, e in enumerate(g) if e > 0)
                b[j] = g[j] if b[j] == 0 else min(b[j], g[j])
            components.add(tuple(b))
            continue
        g, j = split
        rest = [h for h in gens if h != g]
        pure = tuple(g[j] if i == j else 0 for i in range(n))
        other = tuple(0 if i == j else g[i] for i in range(n))
        stack.append(rest + [pure])
        stack.append(rest + [other])
    # irredundancy: drop any component containing the intersection of the rest
    comps = sorted(components)
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(comps):
            rest = comps[:i] + comps[i + 1:]
            if not rest:
                continue
            acc = component_ideal(n, rest[0])
            for c in rest[1:]:
                acc = acc.intersect(component_ideal(n, c))
            target = component_ideal(n, b)
            if all(target.contains(g) for g in acc.generators):
                comps = rest
                changed = True
                break
    return sorted(comps)


def component_ideal(n, b) -> MonomialIdeal:
    """The pure-power ideal (x_j^{b_j} : b_j > 0)."""
    gens = []
    for j, e in enumerate(b):
        if e > 0:
            g = [0] * n
            g[j] = e
            gens.append(tuple(g))
    return MonomialIdeal(n, gens)


def component_sum_exponents(components, index_set):
    """Pure-power exponents c of the sum of the chosen components.

    c_j = min over chosen components of their positive j-exponents, or
    inf when no chosen component touches variable j.
    """
    index_set = sorted(set(index_set))
    if not index_set:
        raise ValueError("empty index set")
    n = len(components[0])
    c = []
    for j in range(n):
        vals = [components[i][j] for i in index_set if components[i][j] > 0]
        c.append(min(vals) if vals else inf)
    return tuple(c)


def index_closure(components, index_set):
    """The largest index set whose component sum equals that of index_set."""
    c = component_sum_exponents(components, index_set)
    closure = []
    for i in range(len(components)):
        b = components[i]
        if all(c[j] <= b[j] for j in range(len(b)) if b[j] > 0):
            closure.append(i)
    # sanity: the closure generates the same sum
    if component_sum_exponents(components, closure) != c:
        raise RuntimeError("closure does not preserve the component sum")
    return tuple(closure)


def _index_label(index_set):
    return ",".join(str(i + 1) for i in sorted(index_set))


class DecompositionPoset:
    """The poset of closed index subsets of an irredundant irreducible
    decomposition, ordered by reverse inclusion, with per-element stalk
    exponents.  Maximal elements are the singletons."""

    def __init__(self, ideal: MonomialIdeal):
        from . import posets

        self.ideal = ideal
        self.components = tuple(irreducible_decomposition(ideal))
        t = len(self.components)
        if t > 16:
            raise ValueError(f"too many components ({t}) for subset enumeration")
        closed = {}
        for r in range(1, t + 1):
            for sub in itertools.combinations(range(t), r):
                cl = index_closure(self.components, sub)
                closed[cl] = component_sum_exponents(self.components, cl)
        self.index_sets = {_index_label(cl): cl for cl in closed}
        self.exponents = {_index_label(cl): c for cl, c in closed.items()}
        labels = sorted(self.index_sets)
        covers = []
        for a in labels:
            for b in labels:
                sa, sb = set(self.index_sets[a]), set(self.index_sets[b])
                # order is reverse inclusion: a < b iff sa strictly contains sb
                if sb < sa and not any(
                        sb < set(self.index_sets[c]) < sa for c in labels):
                    covers.append((a, b))
        self.poset = posets.Poset(labels, covers)
        for lab in self.poset.maximal_elements():
            if len(self.index_sets[lab]) != 1:
                raise RuntimeError("maximal element is not a singleton")

    def stalk_dimension(self, label) -> int:
        return sum(1 for c in self.exponents[label] if c == inf)

    def stalk_piece_dim(self, label, a) -> int:
        """dim of the degree-a piece of the stalk quotient: 0 or 1."""
        c = self.exponents[label]
        return 1 if all(x >= 0 and x < cj for x, cj in zip(a, c)) else 0

    def algebra(self, field=exactlin.QQ):
        """The presented system of quotient algebras on this poset."""
        from . import sheaves

        n = self.ideal.n
        pool = {f"x{j + 1}": tuple(1 if i == j else 0 for i in range(n))
                for j in range(n)}
        var_sets = {}
        relations = {}
        for label, c in self.exponents.items():
            names = [f"x{j + 1}" for j in range(n) if c[j] == inf or c[j] >= 2]
            var_sets[label] = frozenset(names)
            rels = []
            for j in range(n):
                if c[j] != inf and c[j] >= 2:
                    rels.append((f"x{j + 1}", int(c[j])))
            relations[label] = rels
        alg = sheaves.presented_algebra_from_pure_powers(
            self.poset, pool, var_sets, relations, field)
        for label, c in self.exponents.items():
            stalk = alg.stalks[label]
            stalk.krull_dim = sum(1 for x in c if x == inf)
            stalk.top_cohomology_indicator = _pure_power_indicator(c)
        return alg


def limit_hilbert(dp: DecompositionPoset, box, field=exactlin.QQ) -> HilbertFunction:
    """Degreewise dimensions of the ring of compatible stalk families,
    computed as the kernel of the cover-difference map."""
    algebra = dp.algebra(field)
    return algebra.limit_hilbert(box)


def _pure_power_indicator(c):
    def indicator(a):
        for j, cj in enumerate(c):
            if cj == inf:
                if a[j] > -1:
                    return 0
            else:
                if not (0 <= a[j] <= cj - 1):
                    return 0
        return 1

    return indicator


def pure_power_local_cohomology(c, box) -> HilbertFunction:
    """Hilbert function of the top local cohomology of the pure-power
    quotient with exponents c, on the given signed box.

    With A = {j : c_j finite} the only nonvanishing module sits in
    cohomological degree n - |A| and is one dimensional exactly at degrees
    with 0 <= a_j <= c_j - 1 on A and a_j <= -1 off A.
    """
    n = len(c)
    values = {}
    for a in box:
        if len(a) != n:
            raise ValueError("degree length mismatch")
        ok = True
        for j in range(n):
            if c[j] == inf:
                if a[j] > -1:
                    ok = False
                    break
            else:
                if not (0 <= a[j] <= c[j] - 1):
                    ok = False
                    break
        if ok:
            values[tuple(a)] = 1
    return HilbertFunction(n, box, values)


class HypothesisError(ValueError):
    """A structural hypothesis needed by a decomposition formula fails."""


def dimension_drop_check(dp: DecompositionPoset):
    """Check that strict containment of closed index sets forces a strict
    drop of stalk dimension.  Returns (ok, witness, note)."""
    labels = sorted(dp.index_sets)
    any_pair = False
    for a in labels:
        for b in labels:
            sa, sb = set(dp.index_sets[a]), set(dp.index_sets[b])
            if sb < sa:
                any_pair = True
                if dp.stalk_dimension(a) >= dp.stalk_dimension(b):
                    return False, (b, a), None
    note = None
    if any_pair:
        note = ("containment read on index sets (reverse of the poset order); "
                "the literal poset-order reading differs on this input")
    return True, None, note


def decomposition_local_cohomology(ideal: MonomialIdeal, field, box):
    """Local cohomology Hilbert functions of the ambient quotient by the
    ideal, assembled from the decomposition poset.

    Returns (per-index dict of HilbertFunction, depth, dim, note).  Raises
    HypothesisError when the dimension-drop hypothesis fails.
    """
    dp = DecompositionPoset(ideal)
    ok, witness, note = dimension_drop_check(dp)
    if not ok:
        small, large = witness
        raise HypothesisError(
            f"stalk dimension does not drop from {small!r} to {large!r}")
    n = ideal.n
    tables = {}
    for label in dp.poset.labels:
        interval = dp.poset.strict_up_interval(label)
        cx = order_complex(interval)
        tables[label] = simplicial.reduced_cohomology(cx, field)
    stalk_hf = {label: pure_power_local_cohomology(dp.exponents[label], box)
                for label in dp.poset.labels}
    out = {}
    for label in dp.poset.labels:
        d = dp.stalk_dimension(label)
        table = tables[label]
        for j, hdim in table.dims.items():
            i = j + d + 1
            hf = stalk_hf[label]
            for a, v in hf.values.items():
                out.setdefault(i, {})[a] = out.get(i, {}).get(a, 0) + hdim * v
    result = {i: HilbertFunction(n, box, vals) for i, vals in sorted(out.items())}
    nonzero = [i for i, hf in result.items() if hf.values]
    depth = min(nonzero) if nonzero else None
    dim = max(nonzero) if nonzero else None
    return result, depth, dim, note


def order_complex(poset) -> simplicial.SimplicialComplex:
    """The complex of chains of a poset; empty complex for the empty poset."""
    chains = poset.chains()
    if chains == [()]:
        return simplicial.SimplicialComplex.empty()
    return simplicial.SimplicialComplex([frozenset(c) for c in chains])


def squarefree_complex(ideal: MonomialIdeal) -> simplicial.SimplicialComplex:
    """The complex whose minimal non-faces generate the (squarefree) ideal.

    Vertices are 'x1'..'xn'; faces are the supports not containing any
    generator support.
    """
    if any(e > 1 for g in ideal.generators for e in g):
        raise ValueError("not a squarefree ideal")
    n = ideal.n
    names = [f"x{j + 1}" for j in range(n)]
    gen_supports = [frozenset(j for j, e in enumerate(g) if e) for g in ideal.generators]
    faces = []
    for r in range(n + 1):
        for sub in itertools.combinations(range(n), r):
            s = frozenset(sub)
            if not any(gs <= s for gs in gen_supports):
                faces.append(frozenset(names[j] for j in s))
    if not faces:
        return simplicial.SimplicialComplex.void()
    return simplicial.SimplicialComplex(faces)


def flasque_check(ideal: MonomialIdeal, box, field=exactlin.QQ,
                  opens_policy="all", seed=0, cap=4096):
    """Surjectivity of all stepwise open-set restrictions for the
    decomposition algebra, on the box."""
    dp = DecompositionPoset(ideal)
    algebra = dp.algebra(field)
    return algebra.is_flasque(box, opens_policy=opens_policy, seed=seed, cap=cap)


def parse_mono(text: str) -> MonomialIdeal:
    """Parse the `.mono` text format."""
    n = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            try:
                n = int(line[len("vars:"):].strip())
            except ValueError:
                raise ValueError(f"line {lineno}: bad vars count")
        elif line.startswith("gen:"):
            if n is None:
                raise ValueError(f"line {lineno}: gen before vars")
            parts = line[len("gen:"):].split()
            if len(parts) != n:
                raise ValueError(f"line {lineno}: expected {n} exponents")
            try:
                gens.append(tuple(int(p) for p in parts))
            except ValueError:
                raise ValueError(f"line {lineno}: bad exponent")
        else:
            raise ValueError(f"line {lineno}: unrecognized directive")
    if n is None:
        raise ValueError("missing vars: line")
    return MonomialIdeal(n, gens)


def format_mono(ideal: MonomialIdeal) -> str:
    lines = [f"vars: {ideal.n}"]
    for g in ideal.generators:
        lines.append("gen: " + " ".join(str(e) for e in g))
    return "\n".join(lines) + "\n"
