"""Rational pointed fans, face posets, and toric face ring systems.

All cone geometry is exact: membership and face detection go through
rational linear algebra and Fourier-Motzkin feasibility, never floats.
Automatic face enumeration supports ambient dimension up to 3.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from . import exactlin
from .gradings import (box_window, find_positive_functional, linear_feasibility,
                       monomials_of_degree)
from .posets import Poset
from .sheaves import (CheckReport, MonoidStalk, PresentedAlgebra,
                      VariableSystem, rank_selection_check, skeleton_depth_scan)


class ConeError(ValueError):
    pass


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


class RationalCone:
    """A pointed rational cone given by integer generators."""

    def __init__(self, ambient: int, generators):
        self.ambient = ambient
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != ambient:
                raise ConeError(f"generator {g} has wrong length")
            if any(g):
                gens.append(g)
        self.generators = tuple(sorted(set(gens)))
        if self.generators and find_positive_functional(
                self.generators, ambient) is None:
            raise ConeError(f"cone with generators {self.generators} is not "
                            f"pointed")
        self._span = None
        self._facets = None

    def dim(self) -> int:
        if not self.generators:
            return 0
        return exactlin.rank([[Fraction(x) for x in g]
                              for g in self.generators], exactlin.QQ)

    def span_rows(self):
        """A reduced basis of the linear span."""
        if self._span is None:
            rows = [[Fraction(x) for x in g] for g in self.generators]
            red, _ = exactlin.rref(rows, exactlin.QQ)
            self._span = red
        return self._span

    def in_span(self, point) -> bool:
        v = [Fraction(x) for x in point]
        if not self.generators:
            return all(x == 0 for x in v)
        return exactlin.in_span(self.span_rows(), v, exactlin.QQ)

    def facet_normals(self):
        """Primitive supporting normals of the facets, within the span."""
        if self._facets is not None:
            return self._facets
        d = self.dim()
        normals = set()
        if d == 0:
            self._facets = ()
            return self._facets
        for sub in itertools.combinations(self.generators, d - 1):
            # solve w . g = 0 for g in sub, w in span(C), w not 0
            rows = [[Fraction(x) for x in g] for g in sub]
            span = self.span_rows()
            # w = c . span ; conditions: (span . g) c = 0 per g in sub
            mat = []
            for g in rows:
                mat.append([sum(span[i][j] * g[j] for j in range(self.ambient))
                            for i in range(len(span))])
            kern = exactlin.kernel_basis(mat, len(span), exactlin.QQ)
            if len(kern) != 1:
                continue
            c = kern[0]
            w = [sum(c[i] * span[i][j] for i in range(len(span)))
                 for j in range(self.ambient)]
            sides = [sum(wj * gj for wj, gj in zip(w, g))
                     for g in self.generators]
            if all(s >= 0 for s in sides) and any(s > 0 for s in sides):
                normals.add(_primitive(_fraction_to_int_vector(w)))
            elif all(s <= 0 for s in sides) and any(s < 0 for s in sides):
                normals.add(_primitive(_fraction_to_int_vector([-x for x in w])))
        self._facets = tuple(sorted(normals))
        return self._facets

    def contains(self, point) -> bool:
        if not self.in_span(point):
            return False
        return all(sum(w[j] * point[j] for j in range(self.ambient)) >= 0
                   for w in self.facet_normals())

    def contains_relint(self, point) -> bool:
        """Relative interior membership."""
        if not self.in_span(point):
            return False
        if self.dim() == 0:
            return all(x == 0 for x in point)
        return all(sum(w[j] * point[j] for j in range(self.ambient)) > 0
                   for w in self.facet_normals())

    def face_cut(self, normal):
        """The face cut out by a supporting normal."""
        gens = [g for g in self.generators
                if sum(n * x for n, x in zip(normal, g)) == 0]
        return RationalCone(self.ambient, gens)

    def faces(self):
        """All faces, the cone itself and the zero cone included."""
        out = {self.key(): self}
        stack = [self]
        while stack:
            c = stack.pop()
            for w in c.facet_normals():
                f = c.face_cut(w)
                if f.key() not in out:
                    out[f.key()] = f
                    stack.append(f)
        zero = RationalCone(self.ambient, [])
        out.setdefault(zero.key(), zero)
        return [out[k] for k in sorted(out)]

    def key(self):
        return tuple(sorted(_primitive(g) for g in self.generators))

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(g) for g in other.generators) \
            if other.generators else True

    def __eq__(self, other):
        if isinstance(other, RationalCone):
            return (self.ambient == other.ambient
                    and self.contains_cone(other) and other.contains_cone(self))
        return NotImplemented

    def __repr__(self):
        return f"RationalCone({self.ambient}, {list(self.generators)})"


def _fraction_to_int_vector(v):
    dens = [Fraction(x).denominator for x in v]
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    return tuple(int(Fraction(x) * lcm) for x in v)


class Fan:
    """A finite collection of pointed cones closed under faces with
    pairwise intersections being common faces."""

    def __init__(self, ambient: int, cones):
        self.ambient = ambient
        self.cones = dict(cones)
        for name, c in self.cones.items():
            if c.ambient != ambient:
                raise ConeError(f"cone {name!r} has wrong ambient dimension")

    def validate(self) -> CheckReport:
        report = CheckReport(True, "fan axioms")
        names = sorted(self.cones)
        # closure under faces
        for name in names:
            for f in self.cones[name].faces():
                if not any(self.cones[o] == f for o in names):
                    report.fail(f"face {list(f.generators)} of cone {name!r} "
                                f"is missing from the fan")
                    return report
        report.add("closed under faces")
        # pairwise intersections are common faces
        for a, b in itertools.combinations(names, 2):
            ca, cb = self.cones[a], self.cones[b]
            if not self._intersection_is_common_face(ca, cb):
                report.fail(f"cones {a!r} and {b!r} do not intersect in a "
                            f"common face")
                return report
        report.add("pairwise intersections are common faces")
        return report

    def _intersection_is_common_face(self, ca, cb):
        faces_a = ca.faces()
        faces_b = cb.faces()
        common = [f for f in faces_a if any(f == g for g in faces_b)]
        maximal = []
        for f in common:
            if not any(g != f and g.contains_cone(f) for g in common):
                maximal.append(f)
        if len(maximal) != 1:
            return False
        fstar = maximal[0]
        if fstar == ca:
            return cb.contains_cone(ca)
        if fstar == cb:
            return ca.contains_cone(cb)
        # a supporting normal of ca cutting exactly fstar; the intersection
        # is contained in fstar iff no intersection point lies strictly on
        # the positive side
        for w in self._supporting_normals(ca):
            cut = ca.face_cut(w)
            if cut.contains_cone(fstar) and fstar.contains_cone(cut):
                return not self._intersection_meets_halfspace(ca, cb, w)
        return False

    def _supporting_normals(self, cone):
        """Supporting normals of `cone`, one per face (all depths).

        A facet normal of a face is promoted to a supporting normal of the
        whole cone by adding a large multiple of the parent's normal.
        """
        out = []
        stack = [(cone, None)]
        seen = set()
        while stack:
            c, parent_normal = stack.pop()
            for w in c.facet_normals():
                if parent_normal is None:
                    combo = tuple(w)
                else:
                    lam = 1 + max((-sum(wj * gj for wj, gj in zip(w, g))
                                   for g in cone.generators), default=0)
                    combo = tuple(lam * p + x for p, x in zip(parent_normal, w))
                f = c.face_cut(w)
                if f.key() in seen:
                    continue
                seen.add(f.key())
                out.append(combo)
                stack.append((f, combo))
        return out

    def _intersection_meets_halfspace(self, ca, cb, w):
        """Is there a point of ca cap cb with w . p >= 1?"""
        constraints = [(tuple(w), 1)]
        for cone in (ca, cb):
            for n in cone.facet_normals():
                constraints.append((tuple(n), 0))
            span = cone.span_rows()
            # p must lie in the span: kernel normals of the span vanish on p
            ortho = exactlin.kernel_basis(
                [list(r) for r in span], self.ambient, exactlin.QQ) \
                if span else [tuple(1 if i == j else 0 for j in range(self.ambient))
                              for i in range(self.ambient)]
            for n in ortho:
                constraints.append((tuple(n), 0))
                constraints.append((tuple(-x for x in n), 0))
        return linear_feasibility(constraints, self.ambient) is not None

    def face_poset(self) -> Poset:
        names = sorted(self.cones)
        covers = []
        for a in names:
            for b in names:
                ca, cb = self.cones[a], self.cones[b]
                if a != b and cb.contains_cone(ca) and not ca.contains_cone(cb):
                    if ca.dim() + 1 == cb.dim():
                        covers.append((a, b))
        return Poset(names, covers)

    def __repr__(self):
        return f"Fan({self.ambient}, {sorted(self.cones)})"


def cone_faces(cone: RationalCone):
    return cone.faces()


def hilbert_basis(cone: RationalCone, verify_window: int = 4):
    """Minimal generating set of the lattice points of the cone.

    Bounded box enumeration with a minimality sieve, then an N-combination
    verification over a window.  Supports dim <= 2 exactly and simplicial
    3-dimensional cones at desk scale.
    """
    if not cone.generators:
        return []
    m = cone.ambient
    prim = [_primitive(g) for g in cone.generators]
    bound = [sum(abs(g[j]) for g in prim) for j in range(m)]
    candidates = []
    for p in itertools.product(*[range(-b, b + 1) for b in bound]):
        if any(p) and cone.contains(p):
            candidates.append(p)
    candidates = sorted(set(candidates))
    basis = []
    for p in candidates:
        decomposable = False
        for q in candidates:
            if q == p:
                continue
            r = tuple(a - b for a, b in zip(p, q))
            if any(r) and cone.contains(r):
                decomposable = True
                break
        if not decomposable:
            basis.append(p)
    # exact minimality: drop anything the others already generate
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(basis):
            rest = basis[:i] + basis[i + 1:]
            if not rest:
                continue
            w = find_positive_functional(rest, m)
            if w is not None and monomials_of_degree(rest, b, w):
                basis = rest
                changed = True
                break
    basis = sorted(set(basis))
    # verification: every window lattice point of the cone is an
    # N-combination of the basis
    w = find_positive_functional(basis, m)
    if w is None:
        raise ConeError("basis candidates do not span a pointed cone")
    for p in box_window(m, -verify_window, verify_window):
        if not cone.contains(p) or not any(p):
            continue
        if not monomials_of_degree(basis, p, w):
            raise ConeError(f"lattice point {p} is not generated; enlarge "
                            f"the enumeration box")
    return basis


def variable_name(point) -> str:
    return "z" + "_".join(str(x).replace("-", "m") for x in point)


def toric_algebra(fan: Fan, field=exactlin.QQ, monoid_generators=None,
                  check_window: int = 3):
    """The system of monoid-algebra stalks on the face poset, presented on
    Hilbert-basis variables, with face-projection restrictions.

    `monoid_generators` optionally overrides the generator choice per cone
    name (non-normal monoids allowed; their stalks then carry no local
    cohomology data).  Returns the presented algebra.
    """
    report = fan.validate()
    if not report.ok:
        raise ConeError("; ".join(report.lines))
    poset = fan.face_poset()
    monoids = {}
    normal = {}
    for name in sorted(fan.cones):
        if monoid_generators and name in monoid_generators:
            gens = [tuple(g) for g in monoid_generators[name]]
            cone = fan.cones[name]
            for g in gens:
                if not cone.contains(g):
                    raise ConeError(f"monoid generator {g} of {name!r} is "
                                    f"outside its cone")
            span_dim = exactlin.rank([[Fraction(x) for x in g] for g in gens],
                                     exactlin.QQ) if gens else 0
            if span_dim != cone.dim():
                raise ConeError(f"monoid generators of {name!r} do not span "
                                f"the cone")
            monoids[name] = sorted(set(gens))
            normal[name] = False
        else:
            monoids[name] = hilbert_basis(fan.cones[name])
            normal[name] = True
    # monoid compatibility on a window: M_{C'} = M_C cap C' for faces
    def in_monoid(name, p):
        if not any(p):
            return True
        gens = monoids[name]
        if not gens:
            return False
        w = find_positive_functional(gens, fan.ambient)
        return bool(monomials_of_degree(gens, p, w))

    for a in sorted(fan.cones):
        for b in sorted(fan.cones):
            ca, cb = fan.cones[a], fan.cones[b]
            if a == b or not cb.contains_cone(ca):
                continue
            for p in box_window(fan.ambient, -check_window, check_window):
                small = in_monoid(a, p)
                big_and_face = ca.contains(p) and in_monoid(b, p)
                if small != big_and_face:
                    raise ConeError(
                        f"monoid condition fails for face {a!r} of {b!r} at "
                        f"lattice point {p}")
    pool = {}
    var_sets = {}
    for name, gens in monoids.items():
        names = []
        for g in gens:
            vname = variable_name(g)
            if vname in pool and pool[vname] != tuple(g):
                raise ConeError(f"variable name collision at {vname}")
            pool[vname] = tuple(g)
            names.append(vname)
        var_sets[name] = frozenset(names)
    stalks = {}
    for name, gens in monoids.items():
        names = tuple(sorted(var_sets[name]))
        degrees = tuple(pool[v] for v in names)
        stalk = MonoidStalk(names, degrees, fan.ambient)
        if normal[name]:
            cone = fan.cones[name]
            stalk.krull_dim = cone.dim()
            stalk.top_cohomology_indicator = _neg_relint_indicator(cone)
        stalks[name] = stalk
    return PresentedAlgebra(poset, VariableSystem(pool, var_sets), stalks, field)


def _neg_relint_indicator(cone: RationalCone):
    def indicator(a):
        return 1 if cone.contains_relint([-x for x in a]) else 0

    return indicator


def skeleton_depth(fan: Fan, field=exactlin.QQ, window_radius: int = 4):
    """Depth of the toric face ring by the skeleton scan; returns
    (depth from the cohomology decomposition, max CM skeleton, report)."""
    algebra = toric_algebra(fan, field)
    window = box_window(fan.ambient, -window_radius, window_radius)
    return skeleton_depth_scan(algebra, window, field=field)


def toric_rank_selection(fan: Fan, X, field=exactlin.QQ, window_radius: int = 4):
    """Rank-selection comparison for the toric face ring over a hereditary
    subset of the face poset."""
    algebra = toric_algebra(fan, field)
    window = box_window(fan.ambient, -window_radius, window_radius)
    return rank_selection_check(algebra, X, field, window)


def parse_fan(text: str) -> Fan:
    """Parse the `.fan` text format."""
    ambient = None
    cones = {}
    monoids = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ambient:"):
            try:
                ambient = int(line[len("ambient:"):].strip())
            except ValueError:
                raise ValueError(f"line {lineno}: bad ambient dimension")
        elif line.startswith("cone ") or line.startswith("monoid "):
            kind, rest = line.split(" ", 1)
            if ":" not in rest:
                raise ValueError(f"line {lineno}: missing ':'")
            name, body = rest.split(":", 1)
            name = name.strip()
            gens = []
            body = body.strip()
            if body:
                for part in body.split(";"):
                    part = part.strip().strip("()")
                    if not part:
                        continue
                    try:
                        gens.append(tuple(int(x) for x in part.split()))
                    except ValueError:
                        raise ValueError(f"line {lineno}: bad generator")
            if ambient is None:
                raise ValueError(f"line {lineno}: cone before ambient")
            if kind == "cone":
                cones[name] = RationalCone(ambient, gens)
            else:
                monoids[name] = gens
        else:
            raise ValueError(f"line {lineno}: unrecognized directive")
    if ambient is None:
        raise ValueError("missing ambient: line")
    fan = Fan(ambient, cones)
    fan.monoid_overrides = monoids or None
    return fan
