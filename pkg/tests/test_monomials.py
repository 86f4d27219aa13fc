import itertools
import random
from math import inf

import pytest

from posetalg.exactlin import QQ, PrimeField
from posetalg.gradings import box_window, nonneg_box
from posetalg.monomials import (DecompositionPoset, HypothesisError,
                                MonomialIdeal, component_ideal,
                                component_sum_exponents,
                                decomposition_local_cohomology,
                                dimension_drop_check, flasque_check,
                                format_mono, index_closure,
                                irreducible_decomposition, limit_hilbert,
                                parse_mono, pure_power_local_cohomology,
                                squarefree_complex)
from posetalg.simplicial import hochster_local_cohomology


def intersect_all(n, components):
    acc = component_ideal(n, components[0])
    for b in components[1:]:
        acc = acc.intersect(component_ideal(n, b))
    return acc


def all_monomials(n, bound):
    return [e for e in itertools.product(range(bound + 1), repeat=n)
            if sum(e) <= bound]


def test_membership_and_intersection_basics():
    I = MonomialIdeal(2, [(1, 1)])
    assert I.contains((2, 1))
    assert not I.contains((3, 0))
    x = MonomialIdeal(2, [(1, 0)])
    y = MonomialIdeal(2, [(0, 1)])
    assert x.intersect(y) == I
    with pytest.raises(ValueError):
        x.intersect(MonomialIdeal(3, [(1, 0, 0)]))


def test_intersection_membership_exhaustive_random():
    rng = random.Random(17)
    for _ in range(10):
        gens_i = [tuple(rng.randrange(4) for _ in range(3)) for _ in range(3)]
        gens_j = [tuple(rng.randrange(4) for _ in range(3)) for _ in range(3)]
        gens_i = [g for g in gens_i if any(g)] or [(1, 1, 1)]
        gens_j = [g for g in gens_j if any(g)] or [(2, 0, 1)]
        I, J = MonomialIdeal(3, gens_i), MonomialIdeal(3, gens_j)
        K = I.intersect(J)
        for e in all_monomials(3, 6):
            assert K.contains(e) == (I.contains(e) and J.contains(e))


def test_decompose_xy():
    comps = irreducible_decomposition(MonomialIdeal(2, [(1, 1)]))
    assert comps == [(0, 1), (1, 0)]


def test_decompose_square_degree_two():
    comps = irreducible_decomposition(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)]))
    # (x^2, xy, y^2) = (x^2, y) cap (x, y^2)
    assert comps == [(1, 2), (2, 1)]
    # oracle: brute-force membership agreement up to degree 4
    I = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])
    J = intersect_all(2, comps)
    for e in all_monomials(2, 4):
        assert I.contains(e) == J.contains(e)


def test_decompose_principal_pure_power():
    comps = irreducible_decomposition(MonomialIdeal(3, [(4, 0, 0)]))
    assert comps == [(4, 0, 0)]


def test_decompose_rejects_trivial_ideals():
    with pytest.raises(ValueError):
        irreducible_decomposition(MonomialIdeal(2, []))
    with pytest.raises(ValueError):
        irreducible_decomposition(MonomialIdeal(2, [(0, 0)]))


def test_decomposition_random_soundness():
    rng = random.Random(29)
    for _ in range(25):
        n = rng.randrange(2, 4)
        gens = [tuple(rng.randrange(4) for _ in range(n)) for _ in range(4)]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        I = MonomialIdeal(n, gens)
        comps = irreducible_decomposition(I)
        J = intersect_all(n, comps)
        for e in all_monomials(n, 7):
            assert I.contains(e) == J.contains(e)
        # irredundancy: dropping any component changes the ideal
        if len(comps) > 1:
            for i in range(len(comps)):
                rest = comps[:i] + comps[i + 1:]
                K = intersect_all(n, rest)
                assert any(I.contains(e) != K.contains(e)
                           for e in all_monomials(n, 8))


def test_component_sum_and_closure():
    comps = irreducible_decomposition(MonomialIdeal(2, [(1, 1)]))
    assert component_sum_exponents(comps, [0, 1]) == (1, 1)
    assert index_closure(comps, [0]) == (0,)
    # singleton: c equals the component with inf off the support
    assert component_sum_exponents(comps, [0]) == (inf, 1)
    with pytest.raises(ValueError):
        component_sum_exponents(comps, [])


def test_decomposition_poset_xy():
    dp = DecompositionPoset(MonomialIdeal(2, [(1, 1)]))
    assert dp.poset.labels == ("1", "1,2", "2")
    assert set(dp.poset.maximal_elements()) == {"1", "2"}
    assert dp.poset.cover_pairs() == [("1,2", "1"), ("1,2", "2")]
    assert dp.exponents["1,2"] == (1, 1)
    assert dp.stalk_dimension("1,2") == 0


def test_decomposition_poset_irreducible_is_one_point():
    dp = DecompositionPoset(MonomialIdeal(2, [(3, 0), (0, 2)]))
    assert len(dp.poset) == 1


def test_decomposition_poset_three_primes():
    # (x,y) cap (y,z) cap (x,z): every pair of components sums to (x,y,z)
    I = MonomialIdeal(3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    dp = DecompositionPoset(I)
    assert len(dp.poset) == 4
    bottoms = dp.poset.minimal_elements()
    assert bottoms == ["1,2,3"]
    assert dp.exponents["1,2,3"] == (1, 1, 1)
    for c in ("1", "2", "3"):
        assert dp.stalk_dimension(c) == 1


def test_limit_matches_membership():
    rng = random.Random(31)
    for _ in range(6):
        gens = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(3)]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        I = MonomialIdeal(3, gens)
        if I.is_unit():
            continue
        dp = DecompositionPoset(I)
        box = nonneg_box(3, 3)
        hf = limit_hilbert(dp, box)
        for a in box:
            assert hf[a] == (0 if I.contains(a) else 1)


def test_pure_power_local_cohomology_by_hand():
    # stalk K[y]: top cohomology on the ray a_1 = 0, a_2 <= -1
    box = box_window(2, -3, 2)
    hf = pure_power_local_cohomology((1, inf), box)
    assert set(hf.support()) == {(0, k) for k in range(-3, 0)}
    # artinian stalk K: one class at the origin
    hf = pure_power_local_cohomology((1, 1), box)
    assert hf.support() == [(0, 0)]
    # K[x]/(x^2) tensor K[y]: two rows of classes
    hf = pure_power_local_cohomology((2, inf), box)
    assert set(hf.support()) == {(e, k) for e in (0, 1) for k in range(-3, 0)}


def test_worked_instance_xy():
    I = MonomialIdeal(2, [(1, 1)])
    box = box_window(2, -3, 3)
    hfs, depth, dim, note = decomposition_local_cohomology(I, QQ, box)
    assert depth == 1 and dim == 1
    assert list(hfs) == [1]
    h1 = hfs[1]
    assert h1[(0, 0)] == 1
    assert h1[(0, -1)] == 1
    assert h1[(1, -1)] == 0


def test_hypothesis_violation():
    # (x^2, xy) = (x) cap (x^2, y): two comparable components of equal stalk dim
    I = MonomialIdeal(2, [(2, 0), (1, 1)])
    dp = DecompositionPoset(I)
    ok, witness, note = dimension_drop_check(dp)
    assert not ok
    with pytest.raises(HypothesisError):
        decomposition_local_cohomology(I, QQ, box_window(2, -2, 2))


def _random_squarefree(rng, n):
    gens = set()
    for _ in range(rng.randrange(1, 4)):
        g = tuple(rng.randrange(2) for _ in range(n))
        if any(g):
            gens.add(g)
    return MonomialIdeal(n, gens) if gens else None


def test_squarefree_cross_check_with_hochster():
    rng = random.Random(41)
    done = 0
    while done < 8:
        I = _random_squarefree(rng, 4)
        if I is None or I.is_unit():
            continue
        done += 1
        box = box_window(4, -2, 0)
        cx = squarefree_complex(I)
        ambient = [f"x{j + 1}" for j in range(4)]
        for field in (QQ, PrimeField(2)):
            hfs, depth, dim, _ = decomposition_local_cohomology(I, field, box)
            hoch = hochster_local_cohomology(cx, field, box, ambient=ambient)
            for i in set(hfs) | set(hoch):
                for a in box:
                    va = hfs[i][a] if i in hfs else 0
                    vb = hoch[i][a] if i in hoch else 0
                    assert va == vb, (I, field, i, a)


def test_alternating_sum_invariant_under_variable_permutation():
    I = MonomialIdeal(3, [(1, 1, 0), (0, 1, 1)])
    box = box_window(3, -2, 2)
    hfs, _, _, _ = decomposition_local_cohomology(I, QQ, box)
    perm = (2, 0, 1)
    J = MonomialIdeal(3, [tuple(g[perm[j]] for j in range(3))
                          for g in I.generators])
    hfs2, _, _, _ = decomposition_local_cohomology(J, QQ, box)
    for a in box:
        b = tuple(a[perm[j]] for j in range(3))
        s1 = sum((-1) ** i * hfs[i][a] for i in hfs)
        s2 = sum((-1) ** i * hfs2[i][b] for i in hfs2)
        assert s1 == s2


def test_stalk_pieces_are_at_most_one_dimensional():
    dp = DecompositionPoset(MonomialIdeal(2, [(2, 1), (1, 2)]))
    for label in dp.poset.labels:
        for a in nonneg_box(2, 3):
            assert dp.stalk_piece_dim(label, a) in (0, 1)


def test_flasque_check_runs():
    result = flasque_check(MonomialIdeal(2, [(1, 1)]), nonneg_box(2, 3))
    assert result.ok


def test_mono_roundtrip():
    I = MonomialIdeal(3, [(1, 0, 2), (0, 2, 0)])
    assert parse_mono(format_mono(I)) == I
    with pytest.raises(ValueError):
        parse_mono("gen: 1 1\n")
    with pytest.raises(ValueError):
        parse_mono("vars: 2\ngen: 1\n")
