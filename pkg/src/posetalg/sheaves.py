"""Systems of multigraded algebras on a finite poset and their degreewise
machinery: limits over open sets, flasqueness, sections, presentations,
initial degenerations, the local-cohomology decomposition, and the
rank-selection suite.

Everything is degreewise: ideals, kernels and initial spans only ever exist
as finite-dimensional graded pieces over a user-chosen window of degrees.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from . import exactlin, simplicial
from .gradings import (HilbertFunction, add_deg, find_positive_functional,
                       monomials_of_degree, sub_deg)
from .polynomials import Polynomial


class SheafError(ValueError):
    pass


@dataclass
class CheckReport:
    ok: bool
    title: str
    lines: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    def add(self, line):
        self.lines.append(line)

    def fail(self, line):
        self.ok = False
        self.lines.append(line)

    def render(self):
        status = "pass" if self.ok else "FAIL"
        out = [f"[{status}] {self.title}"]
        out.extend("  " + l for l in self.lines)
        return "\n".join(out)


# ---------------------------------------------------------------------------
# stalks


class Stalk:
    """A graded algebra presented on named variables with nonzero degrees
    generating a pointed cone.  Subclasses supply the degreewise relation
    spans."""

    def __init__(self, variables, degrees, grading_rank):
        self.variables = tuple(variables)
        self.degrees = tuple(tuple(d) for d in degrees)
        self.grading_rank = grading_rank
        if len(self.variables) != len(self.degrees):
            raise SheafError("each variable needs a degree")
        for v, d in zip(self.variables, self.degrees):
            if len(d) != grading_rank:
                raise SheafError(f"degree of {v!r} has wrong rank")
            if all(x == 0 for x in d):
                raise SheafError(f"variable {v!r} has degree zero")
        self._functional = None
        self._monomials = {}
        self._pieces = {}
        # optional local-cohomology data set by builders
        self.krull_dim = None
        self.top_cohomology_indicator = None

    def functional(self):
        if self._functional is None:
            w = find_positive_functional(self.degrees, self.grading_rank)
            if w is None:
                raise SheafError(
                    f"variable degrees {self.degrees} do not span a pointed cone")
            self._functional = w
        return self._functional

    def monomials(self, a):
        a = tuple(a)
        if a not in self._monomials:
            self._monomials[a] = monomials_of_degree(self.degrees, a,
                                                     self.functional())
        return self._monomials[a]

    def degree_of(self, name):
        return self.degrees[self.variables.index(name)]

    def relation_rows(self, a, monomials, field):
        raise NotImplementedError

    def piece(self, a, field):
        key = (tuple(a), field)
        if key not in self._pieces:
            self._pieces[key] = StalkPiece(self, tuple(a), field)
        return self._pieces[key]


class StalkPiece:
    """One graded piece of a stalk: ambient monomials, the relation span in
    reduced form, and the induced monomial basis of the quotient."""

    def __init__(self, stalk, a, field):
        self.stalk = stalk
        self.degree = a
        self.field = field
        self.monomials = stalk.monomials(a)
        self.position = {m: i for i, m in enumerate(self.monomials)}
        rows = stalk.relation_rows(a, self.monomials, field)
        self.red, self.pivots = exactlin.rref(rows, field) if rows else ([], [])
        pivot_set = set(self.pivots)
        self.basis = [m for i, m in enumerate(self.monomials) if i not in pivot_set]
        self.basis_positions = [i for i in range(len(self.monomials))
                                if i not in pivot_set]
        self.dim = len(self.basis)

    def nf(self, vector):
        """Reduce a coefficient vector over the ambient monomials to
        coordinates over the quotient basis."""
        F = self.field
        v = list(vector)
        for r, pc in enumerate(self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                row = self.red[r]
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v[i] for i in self.basis_positions)

    def poly_vector(self, poly):
        F = self.field
        v = [F.zero] * len(self.monomials)
        for e, c in poly.terms.items():
            pos = self.position.get(e)
            if pos is None:
                raise SheafError(
                    f"monomial {e} is not of degree {self.degree} in this stalk")
            v[pos] = F.add(v[pos], c)
        return v

    def nf_poly(self, poly):
        return self.nf(self.poly_vector(poly))


class PresentedStalk(Stalk):
    """Quotient of the polynomial ring on the variables by homogeneous
    relation generators."""

    def __init__(self, variables, degrees, relations, grading_rank):
        super().__init__(variables, degrees, grading_rank)
        self.relations = []
        for r in relations:
            if tuple(r.variables) != self.variables:
                r = r.rename_context(self.variables, exactlin.QQ)
            if r.is_zero():
                continue
            deg = r.homogeneous_degree(self.degrees)
            self.relations.append((r, deg))

    def relation_rows(self, a, monomials, field):
        rows = []
        for r, deg in self.relations:
            shift_target = sub_deg(a, deg)
            for u in self.monomials_for_shift(shift_target):
                shifted = r.shift(u, field)
                row = [field.zero] * len(monomials)
                pos = {m: i for i, m in enumerate(monomials)}
                ok = True
                for e, c in shifted.terms.items():
                    if e not in pos:
                        ok = False
                        break
                    row[pos[e]] = field.add(row[pos[e]], c)
                if ok and any(not field.is_zero(x) for x in row):
                    rows.append(row)
        return rows

    def monomials_for_shift(self, target):
        from .gradings import dot
        if dot(self.functional(), target) < 0:
            return []
        return self.monomials(target)


class MonoidStalk(Stalk):
    """Monoid algebra stalk: all monomials of one degree are identified, so
    the degreewise relation span is the sum-zero hyperplane."""

    def relation_rows(self, a, monomials, field):
        if len(monomials) <= 1:
            return []
        rows = []
        first = monomials[0]
        pos = {m: i for i, m in enumerate(monomials)}
        for m in monomials[1:]:
            row = [field.zero] * len(monomials)
            row[pos[first]] = field.one
            row[pos[m]] = field.neg(field.one)
            rows.append(row)
        return rows


class InitialStalk(Stalk):
    """Degreewise initial degeneration of a base stalk: the relation span in
    each degree is the span of the leading monomials of the base span under
    a weight order with lex tiebreak."""

    def __init__(self, base, weights):
        super().__init__(base.variables, base.degrees, base.grading_rank)
        self.base = base
        self.weights = dict(weights)
        for v in base.variables:
            if v not in self.weights:
                raise SheafError(f"no weight for variable {v!r}")

    def relation_rows(self, a, monomials, field):
        base_rows = self.base.relation_rows(a, monomials, field)
        leading = leading_monomial_positions(base_rows, monomials,
                                             self.variables, self.weights, field)
        rows = []
        for pos in leading:
            row = [field.zero] * len(monomials)
            row[pos] = field.one
            rows.append(row)
        return rows


def monomial_weight(e, variables, weights):
    return sum(weights[variables[i]] * k for i, k in enumerate(e) if k)


def leading_monomial_positions(rows, monomials, variables, weights, field):
    """Positions of the leading monomials of the row span, under descending
    weight with descending lex tiebreak."""
    if not rows:
        return []
    order = sorted(range(len(monomials)),
                   key=lambda i: (-monomial_weight(monomials[i], variables, weights),
                                  tuple(-x for x in monomials[i])))
    permuted = [[row[j] for j in order] for row in rows]
    _, pivots = exactlin.rref(permuted, field)
    return sorted(order[p] for p in pivots)


# ---------------------------------------------------------------------------
# the algebra system


class PosetAlgebra:
    """Per-element stalks plus restriction maps along covers.

    `cover_maps[(x, y)]` sends each variable of the stalk at y to a
    homogeneous polynomial over the stalk at x (x covered by y: maps go
    downward).  Restrictions along longer relations are composites; path
    independence is a validation item, not a construction invariant.
    """

    def __init__(self, poset, stalks, cover_maps, field, grading_rank):
        self.poset = poset
        self.stalks = dict(stalks)
        self.field = field
        self.grading_rank = grading_rank
        for x in poset.labels:
            if x not in self.stalks:
                raise SheafError(f"no stalk for element {x!r}")
            if self.stalks[x].grading_rank != grading_rank:
                raise SheafError(f"stalk at {x!r} has wrong grading rank")
        self.cover_maps = {}
        for (x, y) in poset.cover_pairs():
            if (x, y) not in cover_maps:
                raise SheafError(f"no restriction map for cover {x!r} < {y!r}")
            self.cover_maps[(x, y)] = dict(cover_maps[(x, y)])
        self._cover_matrices = {}
        self._limit_pieces = {}

    # -- degreewise pieces and matrices -------------------------------------
    def stalk_piece(self, x, a) -> StalkPiece:
        return self.stalks[x].piece(tuple(a), self.field)

    def cover_matrix(self, x, y, a):
        """Matrix of the restriction from the stalk at y to the stalk at x
        along the cover (x, y), in the quotient monomial bases."""
        key = (x, y, tuple(a))
        if key not in self._cover_matrices:
            src = self.stalk_piece(y, a)
            dst = self.stalk_piece(x, a)
            images = self.cover_maps[(x, y)]
            stalk_x = self.stalks[x]
            cols = []
            for b in src.basis:
                mono = Polynomial.monomial(self.stalks[y].variables, b,
                                           self.field.one)
                img = mono.substitute(images, stalk_x.variables, self.field)
                cols.append(dst.nf_poly(img))
            rows = [[cols[j][i] for j in range(len(cols))]
                    for i in range(dst.dim)]
            self._cover_matrices[key] = rows
        return self._cover_matrices[key]

    def cover_paths(self, x, y, cap=2000):
        """All ascending cover paths from x to y, as label tuples."""
        paths = []
        up = {}
        for (a, b) in self.poset.cover_pairs():
            up.setdefault(a, []).append(b)

        def rec(cur, path):
            if len(paths) > cap:
                raise SheafError("too many cover paths")
            if cur == y:
                paths.append(tuple(path))
                return
            for nxt in sorted(up.get(cur, [])):
                if self.poset.leq(nxt, y):
                    path.append(nxt)
                    rec(nxt, path)
                    path.pop()

        rec(x, [x])
        return paths

    def restriction_matrix(self, x, y, a):
        """Matrix of the composite restriction for any x <= y (first cover
        path; path independence is checked by validate)."""
        if x == y:
            return exactlin.identity_rows(self.stalk_piece(x, a).dim, self.field)
        paths = self.cover_paths(x, y)
        if not paths:
            raise SheafError(f"{x!r} is not below {y!r}")
        return self._path_matrix(paths[0], a)

    def _path_matrix(self, path, a):
        # composite along x = p0 < p1 < ... < pk = y is M(p0,p1) @ ... @ M(pk-1,pk)
        mat = None
        for i in range(len(path) - 1, 0, -1):
            step = self.cover_matrix(path[i - 1], path[i], a)
            mat = step if mat is None else exactlin.mat_mul(step, mat, self.field)
        if mat is None:
            mat = exactlin.identity_rows(self.stalk_piece(path[0], a).dim, self.field)
        return mat

    # -- limits --------------------------------------------------------------
    def _check_open(self, members):
        from .posets import OpenSet
        OpenSet(self.poset, members)

    def limit_piece(self, a, members=None):
        if members is None:
            members = self.poset.labels
        members = tuple(sorted(set(members), key=str))
        self._check_open(members)
        key = (members, tuple(a))
        if key in self._limit_pieces:
            return self._limit_pieces[key]
        pieces = {x: self.stalk_piece(x, a) for x in members}
        offsets = {}
        pos = 0
        for x in members:
            offsets[x] = (pos, pieces[x].dim)
            pos += pieces[x].dim
        total = pos
        memberset = set(members)
        rows = []
        for (x, y) in self.poset.cover_pairs():
            if x not in memberset or y not in memberset:
                continue
            dx = pieces[x].dim
            dy = pieces[y].dim
            if dx == 0:
                continue
            mat = self.cover_matrix(x, y, a)
            ox, _ = offsets[x]
            oy, _ = offsets[y]
            for i in range(dx):
                row = [self.field.zero] * total
                for j in range(dy):
                    row[oy + j] = mat[i][j]
                row[ox + i] = self.field.sub(row[ox + i], self.field.one)
                rows.append(row)
        basis = exactlin.kernel_basis(rows, total, self.field) if total else []
        piece = LimitPiece(tuple(members), offsets, total, basis)
        self._limit_pieces[key] = piece
        return piece

    def limit_hilbert(self, window, members=None) -> HilbertFunction:
        hf = HilbertFunction(self.grading_rank, window)
        for a in window:
            hf.set(a, self.limit_piece(a, members).dim)
        return hf

    def restriction_to_open(self, piece, submembers):
        """Project limit basis vectors onto the blocks of an open subset."""
        submembers = tuple(sorted(set(submembers), key=str))
        projected = []
        for v in piece.basis:
            out = []
            for x in submembers:
                o, d = piece.offsets[x]
                out.extend(v[o:o + d])
            projected.append(tuple(out))
        return projected

    # -- flasqueness ----------------------------------------------------------
    def is_flasque(self, window, opens_policy="all", seed=0, cap=4096,
                   sample_size=40):
        """Stepwise surjectivity of open-set restrictions on the window.

        Checks every pair (U, U minus a maximal element); stepwise removal
        generates all open inclusions, so this decides flasqueness.
        """
        report = CheckReport(True, "flasqueness (stepwise open restrictions)")
        if opens_policy == "all":
            opens = [u for u in self.poset.order_ideals(cap=cap) if u]
        elif opens_policy == "sampled":
            rng = random.Random(seed)
            opens_set = {tuple(self.poset.labels)}
            universe = list(self.poset.labels)
            for _ in range(sample_size):
                pick = [x for x in universe if rng.random() < 0.5]
                down = set()
                for x in pick:
                    down |= set(self.poset.down_set(x).members)
                if down:
                    opens_set.add(tuple(sorted(down, key=str)))
            opens = sorted(opens_set)
        else:
            raise SheafError(f"unknown opens policy {opens_policy!r}")
        checked = 0
        witness = None
        for u in opens:
            sub = self.poset.induced(u)
            for x in sub.maximal_elements():
                v = tuple(sorted(set(u) - {x}, key=str))
                for a in window:
                    up = self.limit_piece(a, u)
                    vp = self.limit_piece(a, v) if v else None
                    target_dim = vp.dim if vp else 0
                    if target_dim == 0:
                        checked += 1
                        continue
                    projected = self.restriction_to_open(up, v)
                    got = exactlin.rank(projected, self.field) if projected else 0
                    checked += 1
                    if got < target_dim:
                        witness = (u, x, tuple(a))
                        report.fail(
                            f"restriction from {{{', '.join(u)}}} dropping {x!r} "
                            f"is not surjective at degree {tuple(a)}")
                        return FlasqueResult(False, witness, checked, report)
        report.add(f"checked {checked} (open set, degree) restriction steps")
        return FlasqueResult(True, None, checked, report)

    # -- validation -------------------------------------------------------------
    def validate(self, window) -> CheckReport:
        """Homogeneity, pointedness, and degreewise path independence."""
        report = CheckReport(True, "algebra validation")
        for x in self.poset.labels:
            stalk = self.stalks[x]
            try:
                stalk.functional()
            except SheafError as e:
                report.fail(f"stalk {x!r}: {e}")
        for (x, y), images in self.cover_maps.items():
            sy = self.stalks[y]
            sx = self.stalks[x]
            for v in sy.variables:
                if v not in images:
                    report.fail(f"cover {x!r} < {y!r}: variable {v!r} has no image")
                    continue
                img = images[v]
                if img.is_zero():
                    continue
                try:
                    d = img.homogeneous_degree(sx.degrees)
                except ValueError as e:
                    report.fail(f"cover {x!r} < {y!r}: image of {v!r}: {e}")
                    continue
                if d != sy.degree_of(v):
                    report.fail(
                        f"cover {x!r} < {y!r}: image of {v!r} has degree {d}, "
                        f"expected {sy.degree_of(v)}")
        if not report.ok:
            return report
        for x in self.poset.labels:
            for y in self.poset.labels:
                if not self.poset.lt(x, y):
                    continue
                paths = self.cover_paths(x, y)
                if len(paths) < 2:
                    continue
                for a in window:
                    mats = [self._path_matrix(p, a) for p in paths]
                    for m in mats[1:]:
                        if m != mats[0]:
                            report.fail(
                                f"restrictions {x!r} <= {y!r} disagree at degree "
                                f"{tuple(a)} between cover paths")
                            break
                    if not report.ok:
                        break
                if not report.ok:
                    break
            if not report.ok:
                break
        if report.ok:
            report.add("homogeneity, pointedness and path independence hold "
                       "on the window")
        return report


@dataclass
class LimitPiece:
    elements: tuple
    offsets: dict
    total: int
    basis: list

    @property
    def dim(self):
        return len(self.basis)


@dataclass
class FlasqueResult:
    ok: bool
    witness: object
    checked: int
    report: CheckReport

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# presented algebras: a global variable pool, per-element subsets, and
# projection restriction maps


class VariableSystem:
    """A pool of globally named variables with degrees, plus one subset per
    poset element, subject to the intersection condition
    F_x cap F_y = union of F_z over z below both x and y."""

    def __init__(self, pool, sets):
        self.pool = {name: tuple(d) for name, d in pool.items()}
        self.sets = {x: frozenset(s) for x, s in sets.items()}
        for x, s in self.sets.items():
            unknown = s - set(self.pool)
            if unknown:
                raise SheafError(
                    f"element {x!r} uses unknown variables {sorted(unknown)}")
        self.global_vars = tuple(sorted(self.pool))
        self.global_degrees = tuple(self.pool[v] for v in self.global_vars)

    def check(self, poset) -> CheckReport:
        report = CheckReport(True, "variable system intersection condition")
        for x in poset.labels:
            for y in poset.labels:
                lower = set()
                for z in poset.labels:
                    if poset.leq(z, x) and poset.leq(z, y):
                        lower |= self.sets[z]
                if self.sets[x] & self.sets[y] != lower:
                    report.fail(
                        f"F_{x} cap F_{y} differs from the union over common "
                        f"lower bounds")
                    return report
        report.add("intersection condition holds for all pairs")
        return report

    def support_complex(self) -> simplicial.SimplicialComplex:
        """Faces are the variable subsets contained in some F_x."""
        facets = [s for s in self.sets.values()]
        if not facets:
            return simplicial.SimplicialComplex.void()
        return simplicial.SimplicialComplex(
            [frozenset(s) for s in facets] + [frozenset()],
            vertices=self.global_vars)


class PresentedAlgebra(PosetAlgebra):
    """A poset algebra whose stalk variables come from a global pool and
    whose restriction maps are the variable projections.  This is the shape
    that admits canonical sections and a presentation ideal."""

    def __init__(self, poset, variable_system, stalks, field):
        self.variable_system = variable_system
        ranks = {s.grading_rank for s in stalks.values()}
        if len(ranks) != 1:
            raise SheafError("stalks disagree on grading rank")
        rank = ranks.pop()
        cover_maps = {}
        for (x, y) in poset.cover_pairs():
            fy = variable_system.sets[y]
            fx = variable_system.sets[x]
            stalk_x = stalks[x]
            images = {}
            for v in stalks[y].variables:
                if v in fx:
                    images[v] = Polynomial.variable(stalk_x.variables, v, field)
                else:
                    images[v] = Polynomial.zero(stalk_x.variables)
            cover_maps[(x, y)] = images
        super().__init__(poset, stalks, cover_maps, field, rank)
        for x in poset.labels:
            if frozenset(self.stalks[x].variables) != variable_system.sets[x]:
                raise SheafError(f"stalk at {x!r} does not match its variable set")
        self._global_functional = None
        self._global_monomials = {}
        self._global_kernel = {}

    # -- the global polynomial ring ------------------------------------------
    def global_functional(self):
        if self._global_functional is None:
            w = find_positive_functional(self.variable_system.global_degrees,
                                         self.grading_rank)
            if w is None:
                raise SheafError(
                    "global variable degrees do not span a pointed cone; "
                    "presentation machinery needs finite global pieces")
            self._global_functional = w
        return self._global_functional

    def global_monomials(self, a):
        a = tuple(a)
        if a not in self._global_monomials:
            self._global_monomials[a] = monomials_of_degree(
                self.variable_system.global_degrees, a, self.global_functional())
        return self._global_monomials[a]

    def project_monomial(self, exponents, x):
        """Image of a global monomial in the stalk basis at x, as quotient
        coordinates at its degree; None if a variable dies."""
        gv = self.variable_system.global_vars
        fx = self.variable_system.sets[x]
        stalk = self.stalks[x]
        e_local = [0] * len(stalk.variables)
        pos = {v: i for i, v in enumerate(stalk.variables)}
        for i, k in enumerate(exponents):
            if not k:
                continue
            v = gv[i]
            if v not in fx:
                return None
            e_local[pos[v]] = k
        return tuple(e_local)

    def global_block_vector(self, exponents, a):
        """The tuple of stalk images of a global monomial, as one block
        vector over the full poset at degree a."""
        piece = self.limit_piece(a)
        out = []
        for x in piece.elements:
            sp = self.stalk_piece(x, a)
            local = self.project_monomial(exponents, x)
            if local is None:
                out.extend([self.field.zero] * sp.dim)
            else:
                v = [self.field.zero] * len(sp.monomials)
                v[sp.position[local]] = self.field.one
                out.extend(sp.nf(v))
        return tuple(out)

    def global_kernel_rows(self, a):
        """Basis of the degree-a piece of the kernel of the map from the
        global polynomial ring onto the limit (vectors over global
        monomials)."""
        a = tuple(a)
        if a not in self._global_kernel:
            monos = self.global_monomials(a)
            rows = [self.global_block_vector(e, a) for e in monos]
            # kernel of the transpose action: combinations of monomials
            mat = [[rows[j][i] for j in range(len(monos))]
                   for i in range(len(rows[0]))] if monos and rows and rows[0] else []
            if monos and not mat:
                # block space is zero-dimensional: everything is in the kernel
                self._global_kernel[a] = exactlin.identity_rows(len(monos),
                                                                self.field)
            else:
                self._global_kernel[a] = [list(v) for v in
                                          exactlin.kernel_basis(mat, len(monos),
                                                                self.field)]
        return self._global_kernel[a]

    # -- canonical sections -----------------------------------------------------
    def canonical_section_vectors(self, x, a):
        """Images of the stalk quotient basis at x under the canonical
        section, as block vectors over the full poset."""
        sp = self.stalk_piece(x, a)
        gv = self.variable_system.global_vars
        pos = {v: i for i, v in enumerate(gv)}
        out = []
        for b in sp.basis:
            e_global = [0] * len(gv)
            for i, k in enumerate(b):
                if k:
                    e_global[pos[self.stalks[x].variables[i]]] = k
            out.append(self.global_block_vector(tuple(e_global), a))
        return out

    def initial_algebra(self, weights) -> "PresentedAlgebra":
        """The degreewise initial degeneration with the given weight map on
        the global pool."""
        for v in self.variable_system.global_vars:
            if v not in weights:
                raise SheafError(f"no weight for variable {v!r}")
        stalks = {}
        for x, stalk in self.stalks.items():
            w = {v: weights[v] for v in stalk.variables}
            stalks[x] = InitialStalk(stalk, w)
        return PresentedAlgebra(self.poset, self.variable_system, stalks,
                                self.field)


def presented_algebra_from_pure_powers(poset, pool, var_sets, relations, field):
    """Presented algebra whose stalks are quotients by pure variable powers.

    `relations[x]` is a list of (variable name, power) pairs.
    """
    system = VariableSystem(pool, var_sets)
    stalks = {}
    rank = len(next(iter(pool.values()))) if pool else 0
    for x in poset.labels:
        names = tuple(sorted(var_sets[x]))
        degrees = tuple(pool[v] for v in names)
        rels = []
        for (v, k) in relations.get(x, []):
            e = tuple(k if names[i] == v else 0 for i in range(len(names)))
            rels.append(Polynomial.monomial(names, e, field.one))
        stalks[x] = PresentedStalk(names, degrees, rels, rank)
    return PresentedAlgebra(poset, system, stalks, field)


class Sections:
    """Degreewise linear splittings of the projections from the limit.

    `provider(x, a)` returns one block vector per quotient basis element of
    the stalk piece at x."""

    def __init__(self, algebra, provider, name="sections"):
        self.algebra = algebra
        self.provider = provider
        self.name = name

    @classmethod
    def canonical(cls, algebra: PresentedAlgebra):
        return cls(algebra, algebra.canonical_section_vectors,
                   name="canonical sections")

    def vectors(self, x, a):
        return self.provider(x, a)


def section_check(algebra, sections, window) -> CheckReport:
    """Verify that the sections land in the limit and split the stalk
    projections on every window degree."""
    report = CheckReport(True, f"section check ({sections.name})")
    F = algebra.field
    for a in window:
        piece = algebra.limit_piece(a)
        for x in algebra.poset.labels:
            sp = algebra.stalk_piece(x, a)
            if sp.dim == 0:
                continue
            vecs = sections.vectors(x, a)
            if len(vecs) != sp.dim:
                report.fail(f"sections at {x!r}, degree {tuple(a)}: wrong count")
                return report
            o, d = piece.offsets[x]
            for i, v in enumerate(vecs):
                if piece.basis and not exactlin.in_span(piece.basis, v, F):
                    report.fail(
                        f"section image at {x!r}, degree {tuple(a)} is not a "
                        f"compatible family")
                    return report
                if not piece.basis and any(not F.is_zero(e) for e in v):
                    report.fail(
                        f"section image at {x!r}, degree {tuple(a)} is not a "
                        f"compatible family")
                    return report
                block = list(v[o:o + d])
                expected = [F.one if j == i else F.zero for j in range(d)]
                if block != expected:
                    report.fail(
                        f"projection then section is not the identity at {x!r}, "
                        f"degree {tuple(a)}")
                    return report
    report.add("all sections are compatible and split the projections")
    return report


def ambient_ideal_rows(variables, degrees, generators, a, field):
    """Degree-a piece of the ideal generated by homogeneous polynomials in
    a free polynomial ring: (rows over the degree-a monomials, monomials)."""
    m = len(a)
    w = find_positive_functional(degrees, m)
    if w is None:
        raise SheafError("variable degrees do not span a pointed cone")
    monos = monomials_of_degree(degrees, tuple(a), w)
    index = {u: i for i, u in enumerate(monos)}
    rows = []
    for g in generators:
        if g.is_zero():
            continue
        dg = g.homogeneous_degree(degrees)
        for u in monomials_of_degree(degrees, sub_deg(tuple(a), dg), w):
            shifted = g.shift(u, field)
            row = [field.zero] * len(monos)
            for e, c in shifted.terms.items():
                row[index[e]] = field.add(row[index[e]], c)
            if any(not field.is_zero(x) for x in row):
                rows.append(row)
    return rows, monos


def quotient_hilbert(variables, degrees, generators, window, field):
    """Hilbert function of the quotient of a free polynomial ring by the
    ideal generated by homogeneous polynomials."""
    hf = HilbertFunction(len(window[0]), window)
    for a in window:
        rows, monos = ambient_ideal_rows(variables, degrees, generators, a, field)
        r = exactlin.rank(rows, field) if rows else 0
        hf.set(a, len(monos) - r)
    return hf


def ambient_system_algebra(algebra: PresentedAlgebra) -> PresentedAlgebra:
    """The polynomial-stalk system with the same variable subsets."""
    stalks = {}
    for x in algebra.poset.labels:
        s = algebra.stalks[x]
        stalks[x] = PresentedStalk(s.variables, s.degrees, [], s.grading_rank)
    return PresentedAlgebra(algebra.poset, algebra.variable_system, stalks,
                            algebra.field)


def _lift_stalk_vector(algebra, x, vec, stalk_monomials, global_index):
    """Re-express a vector over stalk monomials as a vector over the global
    monomials of the same degree."""
    F = algebra.field
    gv = algebra.variable_system.global_vars
    pos = {v: i for i, v in enumerate(gv)}
    out = [F.zero] * len(global_index)
    names = algebra.stalks[x].variables
    for i, c in enumerate(vec):
        if F.is_zero(c):
            continue
        e_global = [0] * len(gv)
        for k, exp in enumerate(stalk_monomials[i]):
            if exp:
                e_global[pos[names[k]]] = exp
        out[global_index[tuple(e_global)]] = F.add(
            out[global_index[tuple(e_global)]], c)
    return tuple(out)


def _divisor_monomials(monomials):
    out = set()
    for m in monomials:
        ranges = [range(e + 1) for e in m]
        for u in itertools.product(*ranges):
            out.add(u)
    return sorted(out)


def ideal_piece_rows(algebra: PresentedAlgebra, a):
    """Degree-a piece of the presentation ideal: shifted stalk kernels plus
    the monomials with non-face support, as rows over global monomials."""
    F = algebra.field
    gv = algebra.variable_system.global_vars
    gd = algebra.variable_system.global_degrees
    monos = algebra.global_monomials(a)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    # Stanley-Reisner part of the support complex
    sets = algebra.variable_system.sets.values()
    for m in monos:
        supp = frozenset(gv[i] for i, e in enumerate(m) if e)
        if not any(supp <= s for s in sets):
            row = [F.zero] * len(monos)
            row[index[m]] = F.one
            rows.append(row)
    # shifted stalk kernel pieces
    pos = {v: i for i, v in enumerate(gv)}
    divisors = _divisor_monomials(monos)
    for x in sorted(algebra.poset.labels):
        stalk = algebra.stalks[x]
        for u in divisors:
            b = sub_deg(a, tuple(sum(k * d[i] for k, d in zip(u, gd))
                                 for i in range(algebra.grading_rank)))
            sp = algebra.stalk_piece(x, b)
            if not sp.red:
                continue
            for kvec in sp.red:
                e_rows = [F.zero] * len(monos)
                ok = True
                for i, c in enumerate(kvec):
                    if F.is_zero(c):
                        continue
                    e_global = list(u)
                    for k, exp in enumerate(sp.monomials[i]):
                        if exp:
                            e_global[pos[stalk.variables[k]]] += exp
                    key = tuple(e_global)
                    if key not in index:
                        ok = False
                        break
                    e_rows[index[key]] = F.add(e_rows[index[key]], c)
                if ok and any(not F.is_zero(c) for c in e_rows):
                    rows.append(e_rows)
    return rows, monos


def presentation_check(algebra: PresentedAlgebra, window,
                       sections: Sections | None = None) -> CheckReport:
    """Verify the presentation of a sectioned system on the window:
    the variable-system intersection condition, section compatibility of
    the quotient maps, and the degreewise identity between the presentation
    ideal and the kernel of the map onto the limit."""
    report = CheckReport(True, "presentation of the sectioned system")
    sys_report = algebra.variable_system.check(algebra.poset)
    if not sys_report.ok:
        report.fail("variable system: " + "; ".join(sys_report.lines))
        return report
    report.add("variable-system intersection condition holds")
    if sections is None:
        sections = Sections.canonical(algebra)
    F = algebra.field
    # section compatibility: quotient map then section agrees with the
    # canonical ambient section followed by the quotient maps
    for a in window:
        for x in sorted(algebra.poset.labels):
            stalk = algebra.stalks[x]
            sp = algebra.stalk_piece(x, a)
            sec_vecs = sections.vectors(x, a) if sp.dim else []
            gv = algebra.variable_system.global_vars
            pos = {v: i for i, v in enumerate(gv)}
            for m in stalk.monomials(a):
                e_global = [0] * len(gv)
                for k, exp in enumerate(m):
                    if exp:
                        e_global[pos[stalk.variables[k]]] = exp
                lhs = algebra.global_block_vector(tuple(e_global), a)
                coords = sp.nf(sp.poly_vector(
                    Polynomial.monomial(stalk.variables, m, F.one)))
                rhs = [F.zero] * len(lhs)
                for c, vec in zip(coords, sec_vecs):
                    if not F.is_zero(c):
                        rhs = [F.add(r, F.mul(c, v)) for r, v in zip(rhs, vec)]
                if list(lhs) != list(rhs):
                    report.fail(
                        f"section compatibility fails at {x!r}, degree "
                        f"{tuple(a)}, monomial {m}")
                    return report
    report.add("section compatibility holds on the window")
    # degreewise: presentation ideal piece == kernel of the limit map
    for a in window:
        gen_rows, monos = ideal_piece_rows(algebra, a)
        ker_rows = algebra.global_kernel_rows(a)
        lim_dim = algebra.limit_piece(a).dim
        n_mono = len(monos)
        gen_rank = exactlin.rank(gen_rows, F) if gen_rows else 0
        ker_rank = exactlin.rank(ker_rows, F) if ker_rows else 0
        contained = all(exactlin.in_span(ker_rows, g, F) for g in gen_rows) \
            if gen_rows else True
        if not contained:
            report.fail(f"degree {tuple(a)}: a presentation generator does "
                        f"not vanish on the limit")
            return report
        if n_mono - gen_rank != lim_dim or gen_rank != ker_rank:
            report.fail(
                f"degree {tuple(a)}: presented quotient dimension "
                f"{n_mono - gen_rank} != limit dimension {lim_dim}")
            return report
    report.add("presented quotient matches the limit degreewise")
    return report


def _kernel_of_columns(rows, field):
    """Kernel of the map sending coefficient vectors c to sum c_i rows_i."""
    if not rows:
        return []
    width = len(rows[0])
    if width == 0:
        return [tuple(v) for v in exactlin.identity_rows(len(rows), field)]
    mat = [[rows[j][i] for j in range(len(rows))] for i in range(width)]
    return exactlin.kernel_basis(mat, len(rows), field)


def _intersect_spans(spans, dim, field):
    """Intersection of spanned subspaces of k^dim, as a spanning row list."""
    current = exactlin.identity_rows(dim, field)
    for span in spans:
        span = [list(v) for v in span]
        if not current:
            return []
        # coefficients (u, v) with u . current - v . span = 0
        rows = [list(current[i]) for i in range(len(current))] + \
               [[field.neg(e) for e in span[i]] for i in range(len(span))]
        combos = _kernel_of_columns(rows, field)
        new = []
        for combo in combos:
            vec = [field.zero] * dim
            for c, base in zip(combo[:len(current)], current):
                if not field.is_zero(c):
                    vec = [field.add(x, field.mul(c, b))
                           for x, b in zip(vec, base)]
            if any(not field.is_zero(x) for x in vec):
                new.append(vec)
        red, _ = exactlin.rref(new, field) if new else ([], [])
        current = red
    return current


def presentation_kernel_check(algebra: PresentedAlgebra, window) -> CheckReport:
    """The four degreewise kernel identities of a presented sectioned
    system, verified as subspace equalities."""
    report = CheckReport(True, "presentation kernel identities")
    F = algebra.field
    ambient = ambient_system_algebra(algebra)
    for a in window:
        lim_t = algebra.limit_piece(a)
        lim_pi = ambient.limit_piece(a)
        # (i) the joint kernel of the stalk projections on the limit is zero
        if lim_t.basis:
            per_element = []
            for x in lim_t.elements:
                o, d = lim_t.offsets[x]
                block_rows = [v[o:o + d] for v in lim_t.basis]
                per_element.append(_kernel_of_columns(block_rows, F))
            joint = _intersect_spans(per_element, lim_t.dim, F)
            if joint:
                report.fail(f"degree {tuple(a)}: nonzero joint kernel of the "
                            f"stalk projections on the limit")
                return report
        # matrix of the componentwise quotient map on the ambient limit
        quotient_rows = []
        for v in lim_pi.basis:
            out = []
            for x in lim_t.elements:
                o, d = lim_pi.offsets[x]
                sp_t = algebra.stalk_piece(x, a)
                sp_pi = ambient.stalk_piece(x, a)
                block = list(v[o:o + d])
                amb = [F.zero] * len(sp_pi.monomials)
                for i, pos_idx in enumerate(sp_pi.basis_positions):
                    amb[pos_idx] = block[i]
                out.extend(sp_t.nf(amb))
            quotient_rows.append(tuple(out))
        # (ii) kernel of the quotient map equals the intersection of the
        # componentwise kernels
        if quotient_rows:
            full_kernel = _kernel_of_columns(quotient_rows, F)
            per_element = []
            for x in lim_t.elements:
                o, d = lim_t.offsets[x]
                block_rows = [v[o:o + d] for v in quotient_rows]
                per_element.append(_kernel_of_columns(block_rows, F))
            inter = _intersect_spans(per_element, len(quotient_rows), F)
            if not _same_span(full_kernel, inter, len(quotient_rows), F):
                report.fail(f"degree {tuple(a)}: kernel of the limit quotient "
                            f"map differs from the joint component kernel")
                return report
        # (iii)/(iv) per element
        monos = algebra.global_monomials(a)
        index = {m: i for i, m in enumerate(monos)}
        gv = algebra.variable_system.global_vars
        for x in sorted(algebra.poset.labels):
            stalk = algebra.stalks[x]
            fx = algebra.variable_system.sets[x]
            sp = algebra.stalk_piece(x, a)
            # kernel of the composite onto the stalk quotient
            comp_rows = []
            for m in monos:
                local = algebra.project_monomial(m, x)
                if local is None:
                    comp_rows.append(tuple([F.zero] * sp.dim))
                else:
                    v = [F.zero] * len(sp.monomials)
                    v[sp.position[local]] = F.one
                    comp_rows.append(tuple(sp.nf(v)))
            mat = [[comp_rows[j][i] for j in range(len(monos))]
                   for i in range(sp.dim)]
            ker_comp = exactlin.kernel_basis(mat, len(monos), F) if sp.dim \
                else exactlin.identity_rows(len(monos), F)
            # lifted stalk kernel + monomials leaving F_x
            lifted = [_lift_stalk_vector(algebra, x, kv, sp.monomials, index)
                      for kv in sp.red]
            outside = []
            for m in monos:
                supp = {gv[i] for i, e in enumerate(m) if e}
                if not supp <= fx:
                    row = [F.zero] * len(monos)
                    row[index[m]] = F.one
                    outside.append(tuple(row))
            rhs = lifted + outside
            if not _same_span(ker_comp, rhs, len(monos), F):
                report.fail(f"degree {tuple(a)}, element {x!r}: composite "
                            f"kernel differs from lifted relations plus "
                            f"outside variables")
                return report
            # (iv): restrict the composite kernel to monomials inside F_x
            inside_positions = [index[m] for m in monos
                                if {gv[i] for i, e in enumerate(m) if e} <= fx]
            sub_mat = [[mat[i][j] for j in inside_positions]
                       for i in range(len(mat))]
            ker_inside = exactlin.kernel_basis(sub_mat, len(inside_positions), F) \
                if sp.dim else exactlin.identity_rows(len(inside_positions), F)
            lifted_inside = []
            for kv in sp.red:
                full = _lift_stalk_vector(algebra, x, kv, sp.monomials, index)
                lifted_inside.append(tuple(full[p] for p in inside_positions))
            ker_inside_l = [tuple(v) for v in ker_inside]
            if not _same_span(ker_inside_l, lifted_inside,
                              len(inside_positions), F):
                report.fail(f"degree {tuple(a)}, element {x!r}: restricted "
                            f"kernel differs from the lifted stalk kernel")
                return report
    report.add("kernel identities hold degreewise on the window")
    return report


def _same_span(a_rows, b_rows, ncols, field):
    a_rows = [list(v) for v in a_rows]
    b_rows = [list(v) for v in b_rows]
    if not a_rows and not b_rows:
        return True
    if not a_rows:
        return exactlin.rank(b_rows, field) == 0
    if not b_rows:
        return exactlin.rank(a_rows, field) == 0
    return exactlin.coincide_as_subspaces(a_rows, b_rows, field)


def initial_degeneration(algebra: PresentedAlgebra, weights, window):
    """Build the degreewise initial degeneration and verify that the global
    initial kernel presents the limit of the degenerated system.

    Returns (degenerated algebra, report)."""
    report = CheckReport(True, "initial degeneration")
    in_alg = algebra.initial_algebra(weights)
    F = algebra.field
    gv = algebra.variable_system.global_vars
    for a in window:
        monos = algebra.global_monomials(a)
        ker = algebra.global_kernel_rows(a)
        lead = leading_monomial_positions(ker, monos, gv, weights, F)
        lhs = len(monos) - len(lead)
        rhs = in_alg.limit_piece(a).dim
        if lhs != rhs:
            report.fail(f"degree {tuple(a)}: initial quotient dimension {lhs} "
                        f"!= degenerated limit dimension {rhs}")
            return in_alg, report
    report.add("global initial kernel presents the degenerated limit on the "
               "window")
    return in_alg, report


# ---------------------------------------------------------------------------
# the local-cohomology decomposition and rank selection


@dataclass
class LocalCohomologyResult:
    hfs: dict
    indices: frozenset
    depth: object
    dim: object
    report: CheckReport

    def windowed_indices(self):
        return sorted(i for i, hf in self.hfs.items() if hf.values)

    def is_cm(self):
        return len(self.indices) == 1


def poset_local_cohomology(algebra, window, members=None, field=None,
                           stalk_top=None) -> LocalCohomologyResult:
    """Assemble the local cohomology of the limit from interval cohomology
    tensored with stalk top local cohomology.

    Requires a locally graded (sub)poset and, per element, the stalk Krull
    dimension equal to the rank plus an indicator for the top local
    cohomology.  `stalk_top[x] = (dim, indicator)` overrides stalk data.
    """
    field = field or algebra.field
    report = CheckReport(True, "local cohomology decomposition")
    members = tuple(sorted(members, key=str)) if members is not None \
        else algebra.poset.labels
    sub = algebra.poset.induced(members)
    if not sub.is_locally_graded():
        raise SheafError("poset is not locally graded")
    report.add("checked: poset locally graded")
    _, ranks, _ = sub.rank_info()
    providers = {}
    for x in members:
        if stalk_top and x in stalk_top:
            d, indicator = stalk_top[x]
        else:
            stalk = algebra.stalks[x]
            d = stalk.krull_dim
            indicator = stalk.top_cohomology_indicator
            if d is None or indicator is None:
                derived = derive_pure_power_data(stalk, algebra.grading_rank)
                if derived is None:
                    raise SheafError(
                        f"missing stalk local-cohomology data for {x!r}")
                d, indicator = derived
        if d != ranks[x]:
            raise SheafError(
                f"stalk at {x!r} has dimension {d}, rank is {ranks[x]}")
        providers[x] = indicator
    report.add("checked: stalk dimensions equal ranks")
    report.add("assumed: stalks Cohen-Macaulay; system flasque on the window")
    tables = {}
    for x in members:
        up = sub.strict_up_interval(x)
        tables[x] = simplicial.reduced_cohomology(order_complex(up), field)
    indices = set()
    acc = {}
    for x in members:
        r = ranks[x]
        for j, hdim in tables[x].dims.items():
            i = j + r + 1
            indices.add(i)
            for a in window:
                v = providers[x](a)
                if v:
                    acc.setdefault(i, {})[tuple(a)] = \
                        acc.get(i, {}).get(tuple(a), 0) + hdim * v
    hfs = {i: HilbertFunction(algebra.grading_rank, window, acc.get(i, {}))
           for i in sorted(indices)}
    depth = min(indices) if indices else None
    dim = max(indices) if indices else None
    return LocalCohomologyResult(hfs, frozenset(indices), depth, dim, report)


def order_complex(poset) -> simplicial.SimplicialComplex:
    """The complex of chains; the empty complex for the empty poset."""
    chains = poset.chains()
    if chains == [()]:
        return simplicial.SimplicialComplex.empty()
    return simplicial.SimplicialComplex([frozenset(c) for c in chains])


def derive_pure_power_data(stalk, grading_rank):
    """Top local cohomology of a quotient by pure variable powers whose
    variables carry distinct standard-basis degrees; None when the stalk
    does not have that shape."""
    coords = {}
    for v, d in zip(stalk.variables, stalk.degrees):
        ones = [j for j, c in enumerate(d) if c == 1]
        if len(ones) != 1 or sum(abs(c) for c in d) != 1:
            return None
        j = ones[0]
        if j in coords.values():
            return None
        coords[v] = j
    powers = {}
    for r, _ in getattr(stalk, "relations", []):
        if len(r.terms) != 1:
            return None
        (e, _c), = r.terms.items()
        supp = [i for i, k in enumerate(e) if k]
        if len(supp) != 1:
            return None
        powers[stalk.variables[supp[0]]] = e[supp[0]]
    # c_j: 1 off the variable set, the relation power on nilpotents,
    # infinity on free variables
    c = []
    inv = {j: v for v, j in coords.items()}
    for j in range(grading_rank):
        if j not in inv:
            c.append(1)
        elif inv[j] in powers:
            c.append(powers[inv[j]])
        else:
            c.append(None)  # infinite
    dim = sum(1 for x in c if x is None)

    def indicator(a):
        for j, cj in enumerate(c):
            if cj is None:
                if a[j] > -1:
                    return 0
            else:
                if not (0 <= a[j] <= cj - 1):
                    return 0
        return 1

    return dim, indicator


def excellent_subset_additivity(algebra, X, window) -> CheckReport:
    """Degreewise dimension additivity of the restriction sequence attached
    to an excellent subset: dim lim_P = sum of kernel dims + dim over P_X."""
    report = CheckReport(True, "excellent-subset additivity")
    poset = algebra.poset
    if not poset.is_excellent(X):
        raise SheafError(f"{sorted(X)} is not an excellent subset")
    report.add("checked: subset is excellent")
    px = poset.remove_up_sets(X).sorted_members()
    F = algebra.field
    for a in window:
        full = algebra.limit_piece(a)
        total = full.dim
        kernel_sum = 0
        for x in sorted(X, key=str):
            keep = poset.remove_up_sets([x]).sorted_members()
            projected = algebra.restriction_to_open(full, keep)
            img = exactlin.rank(projected, F) if projected else 0
            kernel_sum += full.dim - img
        sub_dim = algebra.limit_piece(a, px).dim if px else 0
        if total != kernel_sum + sub_dim:
            report.fail(f"degree {tuple(a)}: {total} != {kernel_sum} + {sub_dim}")
            return report
    report.add("dimension additivity holds degreewise on the window")
    return report


def hereditary_check(poset, X, field) -> CheckReport:
    """Excellence, the rank conditions on stars, and the interval-cohomology
    vanishing conditions inside stars and their rank-selected parts."""
    report = CheckReport(True, "hereditary subset conditions")
    X = sorted(set(X), key=str)
    if not poset.is_excellent(X):
        report.fail("subset is not excellent")
        return report
    report.add("excellent: yes")
    r = poset.rank()
    px_members = poset.remove_up_sets(X).members
    for x in X:
        star = poset.star(x)
        star_poset = star.poset()
        if star_poset.rank() != r:
            report.fail(f"rank(star({x})) = {star_poset.rank()} != rank(P) = {r}")
        meet_members = star.members & px_members
        meet_poset = poset.induced(meet_members)
        if meet_poset.rank() != r - 1:
            report.fail(f"rank(star({x}) cap P_X) = {meet_poset.rank()} "
                        f"!= rank(P) - 1 = {r - 1}")
        for sub_poset, tag in ((star_poset, f"star({x})"),
                               (meet_poset, f"star({x}) cap P_X")):
            for y in sub_poset.labels:
                up = sub_poset.strict_up_interval(y)
                table = simplicial.reduced_cohomology(order_complex(up), field)
                expected = up.rank()
                for i, dval in table.dims.items():
                    if dval and i != expected:
                        report.fail(
                            f"interval above {y!r} in {tag} has cohomology in "
                            f"index {i} != rank {expected}")
    if report.ok:
        report.add("rank and interval-vanishing conditions hold")
    return report


def rank_selection_check(algebra, X, field, window, stalk_top=None,
                         require_hereditary=True) -> CheckReport:
    """Dimension-level consequences of rank selection: equality away from
    the top two cohomological indices, surjectivity at the top, injectivity
    one below."""
    report = CheckReport(True, "rank selection")
    poset = algebra.poset
    hered = hereditary_check(poset, X, field)
    for line in hered.lines:
        report.add("hereditary: " + line)
    if not hered.ok:
        if require_hereditary:
            report.fail("hereditary conditions fail")
            return report
        report.add("warning: hereditary conditions fail; comparing anyway")
    full = poset_local_cohomology(algebra, window, field=field,
                                  stalk_top=stalk_top)
    px = poset.remove_up_sets(X).sorted_members()
    part = poset_local_cohomology(algebra, window, members=px, field=field,
                                  stalk_top=stalk_top)
    r = poset.rank()
    for i in sorted(full.indices | part.indices):
        hf_full = full.hfs.get(i)
        hf_part = part.hfs.get(i)
        for a in window:
            vf = hf_full[a] if hf_full else 0
            vp = hf_part[a] if hf_part else 0
            if i == r:
                if vf < vp:
                    report.fail(f"index {i}, degree {tuple(a)}: surjectivity "
                                f"violated ({vf} < {vp})")
                    return report
            elif i == r - 1:
                if vf > vp:
                    report.fail(f"index {i}, degree {tuple(a)}: injectivity "
                                f"violated ({vf} > {vp})")
                    return report
            else:
                if vf != vp:
                    report.fail(f"index {i}, degree {tuple(a)}: equality "
                                f"violated ({vf} != {vp})")
                    return report
    report.add(f"dimension relations hold at rank {r} on the window")
    return report


def iterated_rank_selection_check(algebra, subset_sequence, field, window,
                                  stalk_top=None) -> CheckReport:
    """Check an iterated hereditary witness sequence and the induced
    cohomology agreement below rank(P) - count."""
    report = CheckReport(True, "iterated rank selection")
    poset = algebra.poset
    current = poset
    current_members = set(poset.labels)
    n = len(subset_sequence)
    for step, X in enumerate(reversed(subset_sequence), start=1):
        hered = hereditary_check(current, X, field)
        if not hered.ok:
            report.fail(f"step {step}: " + "; ".join(hered.lines))
            return report
        current_members = set(current.remove_up_sets(X).members)
        current = current.induced(current_members)
    report.add(f"checked: all {n} steps excellent and hereditary")
    full = poset_local_cohomology(algebra, window, field=field,
                                  stalk_top=stalk_top)
    part = poset_local_cohomology(algebra, window,
                                  members=sorted(current_members, key=str),
                                  field=field, stalk_top=stalk_top)
    bound = poset.rank() - 1 - n
    for i in sorted(full.indices | part.indices):
        if i > bound:
            continue
        hf_full = full.hfs.get(i)
        hf_part = part.hfs.get(i)
        for a in window:
            vf = hf_full[a] if hf_full else 0
            vp = hf_part[a] if hf_part else 0
            if vf != vp:
                report.fail(f"index {i} <= {bound}, degree {tuple(a)}: "
                            f"{vf} != {vp}")
                return report
    report.add(f"cohomology agrees up to index {bound}")
    return report


def skeleton_depth_scan(algebra, window, field=None, stalk_top=None):
    """Both sides of the skeleton description of depth: the minimum
    nonvanishing cohomological index of the full limit, and the largest i
    with a Cohen-Macaulay limit over the i-th skeleton.

    Returns (depth from the decomposition, max CM skeleton index, report).
    """
    field = field or algebra.field
    report = CheckReport(True, "skeleton depth")
    poset = algebra.poset
    full = poset_local_cohomology(algebra, window, field=field,
                                  stalk_top=stalk_top)
    depth = full.depth
    max_cm = None
    for i in range(poset.rank() + 1):
        members = poset.skeleton(i).sorted_members()
        res = poset_local_cohomology(algebra, window, members=members,
                                     field=field, stalk_top=stalk_top)
        sub_rank = poset.induced(members).rank()
        if res.indices == frozenset({sub_rank}):
            max_cm = i
    report.add(f"depth from the decomposition: {depth}")
    report.add(f"largest skeleton with Cohen-Macaulay limit: {max_cm}")
    if depth != max_cm:
        report.fail("the two computations disagree")
    return depth, max_cm, report


def stanley_reisner_algebra(cx: simplicial.SimplicialComplex, field):
    """The system of face-indexed polynomial stalks on the face poset of a
    complex, with projection restrictions; its limit is the face ring."""
    from . import posets

    if cx.is_void():
        raise SheafError("the void complex has no face ring system")
    vertices = list(cx.vertices)
    n = len(vertices)
    vpos = {v: j for j, v in enumerate(vertices)}
    faces = sorted(cx.faces(), key=lambda f: (len(f), sorted(map(str, f))))
    labels = {f: "<" + " ".join(sorted(f, key=str)) + ">" for f in faces}
    covers = []
    for f in faces:
        for g in faces:
            if f < g and len(g) == len(f) + 1:
                covers.append((labels[f], labels[g]))
    poset = posets.Poset([labels[f] for f in faces], covers)
    pool = {v: tuple(1 if j == vpos[v] else 0 for j in range(n))
            for v in vertices}
    var_sets = {labels[f]: frozenset(f) for f in faces}
    stalks = {}
    for f in faces:
        names = tuple(sorted(f, key=str))
        degrees = tuple(pool[v] for v in names)
        stalk = PresentedStalk(names, degrees, [], n)
        stalk.krull_dim = len(f)
        stalk.top_cohomology_indicator = _orthant_indicator(
            [vpos[v] for v in f], n)
        stalks[labels[f]] = stalk
    return PresentedAlgebra(poset, VariableSystem(pool, var_sets), stalks, field)


def _orthant_indicator(face_coords, n):
    coords = set(face_coords)

    def indicator(a):
        for j in range(n):
            if j in coords:
                if a[j] > -1:
                    return 0
            else:
                if a[j] != 0:
                    return 0
        return 1

    return indicator
