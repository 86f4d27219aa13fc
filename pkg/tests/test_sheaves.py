import random

import pytest

from posetalg import exactlin
from posetalg.exactlin import QQ, PrimeField
from posetalg.gradings import box_window, line_window, nonneg_box, total_degree_window
from posetalg.monomials import (DecompositionPoset, MonomialIdeal,
                                decomposition_local_cohomology)
from posetalg.polynomials import Polynomial, parse_polynomial
from posetalg.posets import Poset
from posetalg.sheaves import (InitialStalk, MonoidStalk, PosetAlgebra,
                              PresentedAlgebra, PresentedStalk, Sections,
                              SheafError, VariableSystem,
                              excellent_subset_additivity, hereditary_check,
                              initial_degeneration,
                              iterated_rank_selection_check, order_complex,
                              poset_local_cohomology, presentation_check,
                              presentation_kernel_check, rank_selection_check,
                              section_check, skeleton_depth_scan,
                              stanley_reisner_algebra)
from posetalg.simplicial import SimplicialComplex, hochster_local_cohomology


def triangle_boundary():
    return SimplicialComplex([{"1", "2"}, {"2", "3"}, {"1", "3"}])


def two_triangles():
    return SimplicialComplex([{"1", "2", "3"}, {"2", "3", "4"}])


# -- stalk pieces -------------------------------------------------------------

def test_truncated_polynomial_stalk_piece():
    stalk = PresentedStalk(("u",), ((1,),),
                           [parse_polynomial("u^2", ("u",), QQ)], 1)
    assert stalk.piece((2,), QQ).dim == 0
    assert stalk.piece((1,), QQ).dim == 1
    assert stalk.piece((0,), QQ).dim == 1


def test_relation_with_foreign_variable_rejected():
    with pytest.raises(KeyError):
        PresentedStalk(("u", "v"), ((1,), (1,)),
                       [parse_polynomial("u*v - w^2", ("u", "v", "w"), QQ)], 1)


def test_zero_degree_variable_rejected():
    with pytest.raises(SheafError):
        PresentedStalk(("u",), ((0,),), [], 1)


def test_unpointed_stalk_rejected():
    stalk = PresentedStalk(("u", "v"), ((1,), (-1,)), [], 1)
    with pytest.raises(SheafError):
        stalk.functional()


# -- validation ---------------------------------------------------------------

def test_validate_stanley_reisner():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    assert T.validate(total_degree_window(3, 3)).ok


def test_validate_reports_path_dependence():
    poset = Poset(["0", "a", "b", "1"],
                  [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    stalks = {x: PresentedStalk(("u",), ((1,),), [], 1) for x in poset.labels}
    u = lambda x: Polynomial.variable(("u",), "u", QQ)
    maps = {("0", "a"): {"u": u("0")},
            ("0", "b"): {"u": u("0").scale(QQ.of(2), QQ)},
            ("a", "1"): {"u": u("a")},
            ("b", "1"): {"u": u("b")}}
    T = PosetAlgebra(poset, stalks, maps, QQ, 1)
    report = T.validate(line_window(2))
    assert not report.ok
    assert any("disagree" in line for line in report.lines)


def test_validate_decomposition_algebra_random():
    rng = random.Random(13)
    for _ in range(5):
        gens = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(3)]
        gens = [g for g in gens if any(g)]
        if not gens or all(e == 0 for g in gens for e in g):
            continue
        I = MonomialIdeal(3, gens)
        if I.is_unit():
            continue
        T = DecompositionPoset(I).algebra(QQ)
        assert T.validate(nonneg_box(3, 2)).ok


# -- limits -------------------------------------------------------------------

def test_limit_of_one_point_poset_is_the_stalk():
    poset = Poset(["x"], [])
    stalk = PresentedStalk(("u",), ((1,),),
                           [parse_polynomial("u^3", ("u",), QQ)], 1)
    T = PosetAlgebra(poset, {"x": stalk}, {}, QQ, 1)
    for d in range(5):
        assert T.limit_piece((d,)).dim == stalk.piece((d,), QQ).dim


def test_limit_over_covers_equals_limit_over_all_pairs():
    T = stanley_reisner_algebra(two_triangles(), QQ)
    poset = T.poset
    for a in total_degree_window(4, 2):
        piece = T.limit_piece(a)
        # oracle: kernel of the difference map over every comparable pair
        pieces = {x: T.stalk_piece(x, a) for x in poset.labels}
        offsets = {}
        pos = 0
        for x in poset.labels:
            offsets[x] = pos
            pos += pieces[x].dim
        rows = []
        for x in poset.labels:
            for y in poset.labels:
                if not poset.lt(x, y) or pieces[x].dim == 0:
                    continue
                mat = T.restriction_matrix(x, y, a)
                for i in range(pieces[x].dim):
                    row = [QQ.zero] * pos
                    for j in range(pieces[y].dim):
                        row[offsets[y] + j] = mat[i][j]
                    row[offsets[x] + i] -= QQ.one
                    rows.append(row)
        oracle = exactlin.kernel_basis(rows, pos, QQ) if pos else []
        assert len(oracle) == piece.dim
        if piece.dim:
            assert exactlin.coincide_as_subspaces(
                [list(v) for v in oracle], [list(v) for v in piece.basis], QQ)


def test_limit_requires_open_set():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    top = T.poset.maximal_elements()[0]
    with pytest.raises(Exception):
        T.limit_piece((1, 0, 0), (top,))


def test_restriction_functoriality():
    T = stanley_reisner_algebra(two_triangles(), QQ)
    poset = T.poset
    u = poset.labels
    v = poset.skeleton(1).sorted_members()
    w = poset.skeleton(0).sorted_members()
    for a in total_degree_window(4, 2):
        full = T.limit_piece(a)
        direct = T.restriction_to_open(full, w)
        via = []
        mid_piece = T.limit_piece(a, v)
        for vec in T.restriction_to_open(full, v):
            block = {x: vec[mid_piece.offsets[x][0]:
                            mid_piece.offsets[x][0] + mid_piece.offsets[x][1]]
                     for x in v}
            via.append(tuple(sum((list(block[x]) for x in w), [])))
        assert [tuple(d) for d in direct] == via


# -- flasqueness --------------------------------------------------------------

def test_flasque_antichain_product():
    poset = Poset(["x", "y"], [])
    stalks = {"x": PresentedStalk(("u",), ((1,),),
                                  [parse_polynomial("u^2", ("u",), QQ)], 1),
              "y": PresentedStalk(("u",), ((1,),), [], 1)}
    T = PosetAlgebra(poset, stalks, {}, QQ, 1)
    assert T.is_flasque(line_window(3)).ok


def test_non_flasque_chain_with_witness():
    poset = Poset(["x", "y"], [("x", "y")])
    stalks = {"x": PresentedStalk(("u",), ((1,),), [], 1),
              "y": PresentedStalk((), (), [], 1)}
    T = PosetAlgebra(poset, stalks, {("x", "y"): {}}, QQ, 1)
    result = T.is_flasque(line_window(2))
    assert not result.ok
    u, x, a = result.witness
    assert x == "y" and a == (1,)


def test_flasque_sampled_policy_deterministic():
    T = DecompositionPoset(MonomialIdeal(2, [(1, 1)])).algebra(QQ)
    r1 = T.is_flasque(nonneg_box(2, 2), opens_policy="sampled", seed=7)
    r2 = T.is_flasque(nonneg_box(2, 2), opens_policy="sampled", seed=7)
    assert r1.ok and r2.ok and r1.checked == r2.checked


# -- variable systems and presentations ---------------------------------------

def test_variable_system_intersection_condition_failure():
    poset = Poset(["x", "y"], [])
    system = VariableSystem({"1": (1, 0, 0), "2": (0, 1, 0), "3": (0, 0, 1)},
                            {"x": {"1", "2"}, "y": {"2", "3"}})
    assert not system.check(poset).ok


def test_support_complex_of_stanley_reisner_system():
    cx = triangle_boundary()
    T = stanley_reisner_algebra(cx, QQ)
    assert T.variable_system.support_complex() == cx


def test_presentation_stanley_reisner_is_nonfaces_only():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    window = total_degree_window(3, 3)
    assert presentation_check(T, window).ok
    for x in T.poset.labels:
        assert not T.stalks[x].relations


def test_presentation_of_decomposition_algebra():
    T = DecompositionPoset(MonomialIdeal(2, [(1, 1)])).algebra(QQ)
    assert presentation_check(T, nonneg_box(2, 4)).ok


def test_presentation_detects_section_incompatibility():
    # (x^5, x^2 y): two finite pure powers of the same variable differ
    T = DecompositionPoset(MonomialIdeal(2, [(5, 0), (2, 1)])).algebra(QQ)
    report = presentation_check(T, nonneg_box(2, 5))
    assert not report.ok
    assert any("section compatibility" in line for line in report.lines)


def test_section_check_canonical_and_corrupted():
    T = DecompositionPoset(MonomialIdeal(2, [(1, 1)])).algebra(QQ)
    window = nonneg_box(2, 3)
    canonical = Sections.canonical(T)
    assert section_check(T, canonical, window).ok

    def corrupted(x, a):
        vecs = [list(v) for v in T.canonical_section_vectors(x, a)]
        if x == "1" and a == (1, 0) and vecs:
            vecs[0] = [QQ.zero for _ in vecs[0]]
        return [tuple(v) for v in vecs]

    bad = Sections(T, corrupted, name="corrupted")
    assert not section_check(T, bad, window).ok


def test_presentation_kernel_identities():
    for T in (DecompositionPoset(MonomialIdeal(2, [(1, 1)])).algebra(QQ),
              stanley_reisner_algebra(triangle_boundary(), QQ)):
        window = (nonneg_box(2, 3) if T.grading_rank == 2
                  else total_degree_window(3, 2))
        assert presentation_kernel_check(T, window).ok


# -- initial degenerations ------------------------------------------------------

def test_zero_weights_reproduce_original():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    window = total_degree_window(3, 3)
    weights = {v: 0 for v in T.variable_system.global_vars}
    in_alg, report = initial_degeneration(T, weights, window)
    assert report.ok
    assert in_alg.limit_hilbert(window) == T.limit_hilbert(window)


def test_monomial_kernels_degenerate_to_themselves():
    T = DecompositionPoset(MonomialIdeal(2, [(2, 1), (1, 2)])).algebra(QQ)
    window = nonneg_box(2, 4)
    weights = {v: i + 1 for i, v in enumerate(T.variable_system.global_vars)}
    in_alg, report = initial_degeneration(T, weights, window)
    assert report.ok
    assert in_alg.limit_hilbert(window) == T.limit_hilbert(window)


def test_initial_stalk_leading_span():
    base = PresentedStalk(("u", "v"), ((1,), (1,)),
                          [parse_polynomial("u*v - v^2", ("u", "v"), QQ)], 1)
    ini = InitialStalk(base, {"u": 1, "v": 0})
    piece = ini.piece((2,), QQ)
    # leading monomial of u*v - v^2 under these weights is u*v
    assert (1, 1) not in piece.basis
    assert (0, 2) in piece.basis


# -- local cohomology decomposition ---------------------------------------------

def test_one_point_formula_matches_stalk():
    I = MonomialIdeal(2, [(2, 0), (0, 1)])
    dp = DecompositionPoset(I)
    T = dp.algebra(QQ)
    box = box_window(2, -2, 2)
    res = poset_local_cohomology(T, box)
    assert sorted(res.indices) == [0]
    from posetalg.monomials import pure_power_local_cohomology
    label = dp.poset.labels[0]
    assert res.hfs[0] == pure_power_local_cohomology(dp.exponents[label], box)


def test_formula_reproduces_decomposition_local_cohomology():
    I = MonomialIdeal(2, [(1, 1)])
    T = DecompositionPoset(I).algebra(QQ)
    box = box_window(2, -3, 3)
    res = poset_local_cohomology(T, box)
    hfs, depth, dim, _ = decomposition_local_cohomology(I, QQ, box)
    assert res.depth == depth and res.dim == dim
    for i in set(res.hfs) | set(hfs):
        for a in box:
            va = res.hfs[i][a] if i in res.hfs else 0
            vb = hfs[i][a] if i in hfs else 0
            assert va == vb


def test_formula_matches_hochster_for_random_complexes():
    rng = random.Random(3)
    for _ in range(5):
        verts = ["1", "2", "3", "4"]
        facets = []
        for _ in range(rng.randrange(1, 4)):
            size = rng.randrange(1, 4)
            facets.append(frozenset(rng.sample(verts, size)))
        cx = SimplicialComplex(facets)
        T = stanley_reisner_algebra(cx, QQ)
        n = len(cx.vertices)
        box = box_window(n, -2, 0)
        res = poset_local_cohomology(T, box)
        hoch = hochster_local_cohomology(cx, QQ, box)
        for i in set(res.hfs) | set(hoch):
            for a in box:
                va = res.hfs[i][a] if i in res.hfs else 0
                vb = hoch[i][a] if i in hoch else 0
                assert va == vb, (cx, i, a)


def test_alternating_sum_is_field_independent():
    cx = two_triangles()
    box = box_window(4, -2, 0)
    sums = {}
    for field in (QQ, PrimeField(2), PrimeField(3)):
        T = stanley_reisner_algebra(cx, field)
        res = poset_local_cohomology(T, box, field=field)
        sums[field.characteristic] = {
            a: sum((-1) ** i * res.hfs[i][a] for i in res.hfs) for a in box}
    assert sums[0] == sums[2] == sums[3]


def test_missing_stalk_data_raises():
    poset = Poset(["x"], [])
    stalk = MonoidStalk(("u",), ((1,),), 1)
    T = PosetAlgebra(poset, {"x": stalk}, {}, QQ, 1)
    with pytest.raises(SheafError):
        poset_local_cohomology(T, line_window(2))


# -- rank selection ---------------------------------------------------------------

def test_additivity_single_maximal_element():
    T = stanley_reisner_algebra(two_triangles(), QQ)
    top = "<2 3 4>"
    assert excellent_subset_additivity(T, [top], total_degree_window(4, 3)).ok


def test_additivity_rejects_non_excellent():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    with pytest.raises(SheafError):
        excellent_subset_additivity(T, ["<1>", "<2>"],
                                    total_degree_window(3, 2))


def test_hereditary_edge_of_triangle_boundary():
    T = stanley_reisner_algebra(triangle_boundary(), QQ)
    report = hereditary_check(T.poset, ["<1 2>"], QQ)
    assert report.ok
    box = box_window(3, -2, 1)
    assert rank_selection_check(T, ["<1 2>"], QQ, box).ok


def test_skeleton_subsets_are_hereditary():
    T = stanley_reisner_algebra(two_triangles(), QQ)
    poset = T.poset
    r = poset.rank()
    _, ranks, _ = poset.rank_info()
    X = [x for x in poset.labels if ranks[x] == r]
    report = hereditary_check(poset, X, QQ)
    assert report.ok
    box = box_window(4, -1, 1)
    assert rank_selection_check(T, X, QQ, box).ok


def test_non_hereditary_witnessed():
    # the star of an isolated vertex misses the top rank entirely
    cx = SimplicialComplex([{"1", "2"}, {"3"}])
    T = stanley_reisner_algebra(cx, QQ)
    report = hereditary_check(T.poset, ["<3>"], QQ)
    assert not report.ok
    assert any("rank" in line for line in report.lines)


def test_iterated_rank_selection_by_skeleta():
    T = stanley_reisner_algebra(two_triangles(), QQ)
    poset = T.poset
    _, ranks, _ = poset.rank_info()
    # one step: remove the top-rank faces
    X1 = [x for x in poset.labels if ranks[x] == poset.rank()]
    box = box_window(4, -1, 1)
    assert iterated_rank_selection_check(T, [X1], QQ, box).ok


def test_skeleton_depth_scan_disconnected_complex():
    cx = SimplicialComplex([{"1", "2"}, {"3"}])
    T = stanley_reisner_algebra(cx, QQ)
    box = box_window(3, -2, 1)
    depth, max_cm, report = skeleton_depth_scan(T, box)
    from posetalg.simplicial import sr_depth_dim
    assert depth == sr_depth_dim(cx, QQ)[0] == 1
    assert max_cm == 1
    assert report.ok
