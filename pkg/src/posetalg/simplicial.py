"""Simplicial complexes, reduced cohomology over a field, Stanley-Reisner
ideals, and the Hochster/Reisner machinery used as an independent oracle.

The void complex (no faces at all) is distinguished from the empty complex
{emptyset}; only the latter has nonzero reduced cohomology in degree -1.
"""

from __future__ import annotations

import itertools

from . import exactlin


class SimplicialComplex:
    """Faces are all subsets of the stored facets.  Facets are inclusion
    maximal; an empty facet list means the void complex."""

    def __init__(self, facets, vertices=None):
        facets = [frozenset(f) for f in facets]
        maximal = []
        for f in facets:
            if not any(f < g for g in facets):
                if f not in maximal:
                    maximal.append(f)
        self.facets = tuple(sorted(maximal, key=lambda f: (len(f), sorted(map(str, f)))))
        vs = set()
        for f in self.facets:
            vs |= f
        if vertices is not None:
            if not vs <= set(vertices):
                raise ValueError("facet uses a vertex outside the vertex set")
            vs = set(vertices)
        self.vertices = tuple(sorted(vs, key=str))

    @classmethod
    def void(cls):
        return cls([])

    @classmethod
    def empty(cls):
        return cls([frozenset()])

    @classmethod
    def simplex(cls, vertices):
        return cls([frozenset(vertices)])

    def is_void(self) -> bool:
        return not self.facets

    def faces(self):
        out = set()
        for f in self.facets:
            members = sorted(f, key=str)
            for k in range(len(members) + 1):
                for c in itertools.combinations(members, k):
                    out.add(frozenset(c))
        return out

    def has_face(self, f) -> bool:
        f = frozenset(f)
        return any(f <= g for g in self.facets)

    def dim(self) -> int:
        """Dimension; -1 for the empty complex, None for the void complex."""
        if self.is_void():
            return None
        return max(len(f) for f in self.facets) - 1

    def k_faces(self, k):
        """Sorted list of k-dimensional faces as sorted vertex tuples."""
        faces = {f for f in self.faces() if len(f) == k + 1}
        return sorted(tuple(sorted(f, key=str)) for f in faces)

    def link(self, face):
        face = frozenset(face)
        if not self.has_face(face):
            return SimplicialComplex.void()
        facets = [f - face for f in self.facets if face <= f]
        return SimplicialComplex(facets)

    def relabel(self, mapping):
        return SimplicialComplex([{mapping[v] for v in f} for f in self.facets])

    def euler_characteristic_reduced(self) -> int:
        """Alternating face count including the empty face (0 when void)."""
        if self.is_void():
            return 0
        return sum((-1) ** (len(f) - 1) for f in self.faces())

    def __eq__(self, other):
        if isinstance(other, SimplicialComplex):
            return set(self.facets) == set(other.facets)
        return NotImplemented

    def __repr__(self):
        if self.is_void():
            return "SimplicialComplex(void)"
        return f"SimplicialComplex({[sorted(f, key=str) for f in self.facets]})"


class CohomologyTable:
    """Dimensions of reduced cohomology, indexed from -1 upward."""

    def __init__(self, field, dims):
        self.field = field
        self.dims = {i: d for i, d in dims.items() if d}

    def __getitem__(self, i):
        return self.dims.get(i, 0)

    def top_index(self):
        return max(self.dims, default=None)

    def min_index(self):
        return min(self.dims, default=None)

    def is_zero(self):
        return not self.dims

    def alternating_sum(self):
        return sum((-1) ** i * d for i, d in self.dims.items())

    def __eq__(self, other):
        if isinstance(other, CohomologyTable):
            return self.dims == other.dims
        return NotImplemented

    def __repr__(self):
        return f"CohomologyTable({dict(sorted(self.dims.items()))})"


def _coboundary_matrix(cx: SimplicialComplex, k, field):
    """Matrix of the cochain differential C^k -> C^{k+1}.

    Rows are indexed by (k+1)-faces, columns by k-faces, lexicographic on
    sorted vertex tuples, standard alternating sign rule.
    """
    lower = cx.k_faces(k)
    upper = cx.k_faces(k + 1)
    col = {f: j for j, f in enumerate(lower)}
    rows = []
    for up in upper:
        row = [field.zero] * len(lower)
        for j, v in enumerate(up):
            sub = up[:j] + up[j + 1:]
            row[col[sub]] = field.of((-1) ** j)
        rows.append(row)
    return rows, len(lower), len(upper)


def reduced_cohomology(cx: SimplicialComplex, field) -> CohomologyTable:
    """Reduced simplicial cohomology of the augmented cochain complex."""
    if cx.is_void():
        return CohomologyTable(field, {})
    d = cx.dim()
    dims_c = {-1: 1}
    ranks = {}
    for k in range(-1, d + 1):
        if k == -1:
            # augmentation C^{-1} -> C^0 sends 1 to the sum of vertex duals
            n0 = len(cx.k_faces(0))
            rows = [[field.one] for _ in range(n0)]
            ranks[-1] = exactlin.rank(rows, field) if n0 else 0
            dims_c[0] = n0
        else:
            rows, nlow, nup = _coboundary_matrix(cx, k, field)
            ranks[k] = exactlin.rank(rows, field) if rows else 0
            dims_c[k + 1] = nup
    out = {}
    for i in range(-1, d + 1):
        out[i] = dims_c.get(i, 0) - ranks.get(i, 0) - ranks.get(i - 1, 0)
    return CohomologyTable(field, out)


def sr_ideal(cx: SimplicialComplex, ambient):
    """Minimal non-faces of cx within the ambient vertex list, as a
    squarefree monomial ideal (exponent vectors over `ambient`)."""
    from .monomials import MonomialIdeal

    ambient = list(ambient)
    if not set(cx.vertices) <= set(ambient):
        raise ValueError("complex has vertices outside the ambient set")
    n = len(ambient)
    pos = {v: i for i, v in enumerate(ambient)}
    gens = []
    if cx.is_void():
        return MonomialIdeal(n, [tuple([0] * n)])
    for k in range(1, n + 1):
        for sub in itertools.combinations(ambient, k):
            fs = frozenset(sub)
            if cx.has_face(fs):
                continue
            if all(cx.has_face(fs - {v}) for v in fs):
                e = [0] * n
                for v in fs:
                    e[pos[v]] = 1
                gens.append(tuple(e))
    return MonomialIdeal(n, gens)


def is_cm_reisner(cx: SimplicialComplex, field) -> bool:
    """Reisner's criterion: every link has reduced cohomology concentrated
    in its top dimension."""
    if cx.is_void():
        raise ValueError("the void complex has no Stanley-Reisner ring")
    for face in sorted(cx.faces(), key=lambda f: (len(f), sorted(map(str, f)))):
        lk = cx.link(face)
        table = reduced_cohomology(lk, field)
        top = lk.dim()
        for i, dval in table.dims.items():
            if i != top and dval:
                return False
    return True


def hochster_local_cohomology(cx: SimplicialComplex, field, box, ambient=None):
    """Multigraded Hilbert functions of the local cohomology of the
    Stanley-Reisner ring, one HilbertFunction per cohomological index.

    dim H^i at degree a is the reduced cohomology of the link of supp(a)
    in index i - |supp(a)| - 1, for a with nonpositive coordinates whose
    support is a face; zero elsewhere.
    """
    from .gradings import HilbertFunction

    ambient = list(ambient) if ambient is not None else list(cx.vertices)
    n = len(ambient)
    tables = {}
    for face in cx.faces():
        tables[face] = reduced_cohomology(cx.link(face), field)
    out = {}
    for a in box:
        if len(a) != n:
            raise ValueError("degree length does not match ambient")
        if any(x > 0 for x in a):
            continue
        supp = frozenset(ambient[j] for j, x in enumerate(a) if x < 0)
        table = tables.get(supp)
        if table is None:
            continue
        for i, dval in table.dims.items():
            idx = i + len(supp) + 1
            out.setdefault(idx, {})[tuple(a)] = dval
    top = cx.dim() if not cx.is_void() else -1
    result = {}
    for i in range(0, top + 2):
        result[i] = HilbertFunction(n, box, out.get(i, {}))
    for i in out:
        if i not in result:
            result[i] = HilbertFunction(n, box, out[i])
    return result


def sr_depth_dim(cx: SimplicialComplex, field):
    """(depth, Krull dim) of the Stanley-Reisner ring, window free.

    Scans all links: H^i_m is nonzero iff some face F has reduced link
    cohomology in index i - |F| - 1.
    """
    if cx.is_void():
        raise ValueError("the void complex has no Stanley-Reisner ring")
    indices = set()
    for face in cx.faces():
        table = reduced_cohomology(cx.link(face), field)
        for i, dval in table.dims.items():
            if dval:
                indices.add(i + len(face) + 1)
    if not indices:
        raise RuntimeError("no nonvanishing local cohomology found")
    return min(indices), max(indices)
