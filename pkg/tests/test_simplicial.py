import random

from posetalg.exactlin import QQ, PrimeField
from posetalg.gradings import box_window
from posetalg.simplicial import (SimplicialComplex, hochster_local_cohomology,
                                 is_cm_reisner, reduced_cohomology, sr_depth_dim,
                                 sr_ideal)

GF2 = PrimeField(2)
GF3 = PrimeField(3)

# six-vertex triangulation of the real projective plane
RP2 = SimplicialComplex([
    {"0", "1", "4"}, {"0", "1", "5"}, {"0", "2", "3"}, {"0", "2", "4"},
    {"0", "3", "5"}, {"1", "2", "3"}, {"1", "2", "5"}, {"1", "3", "4"},
    {"2", "4", "5"}, {"3", "4", "5"}])


def test_triangle_boundary_cohomology():
    cx = SimplicialComplex([{"1", "2"}, {"2", "3"}, {"1", "3"}])
    table = reduced_cohomology(cx, QQ)
    assert table[0] == 0
    assert table[1] == 1


def test_two_points_cohomology():
    table = reduced_cohomology(SimplicialComplex([{"a"}, {"b"}]), QQ)
    assert table[0] == 1
    assert table[-1] == 0


def test_empty_and_void_complexes():
    empty = SimplicialComplex.empty()
    assert reduced_cohomology(empty, QQ)[-1] == 1
    void = SimplicialComplex.void()
    assert reduced_cohomology(void, QQ).is_zero()
    assert empty != void


def test_cone_is_acyclic():
    cone = SimplicialComplex([{"apex", "1", "2"}, {"apex", "2", "3"}])
    assert reduced_cohomology(cone, QQ).is_zero()


def test_sr_ideal_examples():
    from posetalg.monomials import MonomialIdeal

    two_points = SimplicialComplex([{"1"}, {"2"}])
    assert sr_ideal(two_points, ["1", "2"]) == MonomialIdeal(2, [(1, 1)])
    simplex = SimplicialComplex.simplex(["1", "2", "3"])
    assert sr_ideal(simplex, ["1", "2", "3"]).is_zero()
    triangle = SimplicialComplex([{"1", "2"}, {"2", "3"}, {"1", "3"}])
    assert sr_ideal(triangle, ["1", "2", "3"]) == MonomialIdeal(3, [(1, 1, 1)])


def test_hochster_two_points():
    cx = SimplicialComplex([{"1"}, {"2"}])
    box = box_window(2, -3, 0)
    tables = hochster_local_cohomology(cx, QQ, box)
    h1 = tables[1]
    assert h1[(0, 0)] == 1
    for k in range(1, 4):
        assert h1[(-k, 0)] == 1
        assert h1[(0, -k)] == 1
    assert h1[(-1, -1)] == 0
    assert not tables[0].values
    assert sr_depth_dim(cx, QQ) == (1, 1)


def test_hochster_full_simplex_two_vertices():
    cx = SimplicialComplex.simplex(["1", "2"])
    box = box_window(2, -2, 0)
    tables = hochster_local_cohomology(cx, QQ, box)
    nonzero = [i for i, hf in tables.items() if hf.values]
    assert nonzero == [2]
    assert sr_depth_dim(cx, QQ) == (2, 2)


def test_rp2_depth_depends_on_field():
    assert sr_depth_dim(RP2, QQ) == (3, 3)
    assert sr_depth_dim(RP2, GF3) == (3, 3)
    assert sr_depth_dim(RP2, GF2) == (2, 3)


def test_rp2_reisner():
    assert is_cm_reisner(RP2, QQ)
    assert is_cm_reisner(RP2, GF3)
    assert not is_cm_reisner(RP2, GF2)


def test_reisner_examples():
    assert is_cm_reisner(SimplicialComplex.simplex(["1", "2", "3"]), QQ)
    two_edges = SimplicialComplex([{"1", "2"}, {"3", "4"}])
    assert not is_cm_reisner(two_edges, QQ)


def _random_complex(rng, nverts):
    verts = [str(i) for i in range(1, nverts + 1)]
    facets = []
    for _ in range(rng.randrange(1, 5)):
        size = rng.randrange(1, nverts + 1)
        facets.append(frozenset(rng.sample(verts, size)))
    return SimplicialComplex(facets)


def test_euler_characteristic_matches_cohomology():
    rng = random.Random(23)
    for _ in range(12):
        cx = _random_complex(rng, 5)
        for field in (QQ, GF2):
            table = reduced_cohomology(cx, field)
            assert cx.euler_characteristic_reduced() == table.alternating_sum()


def test_cohomology_invariant_under_relabeling():
    rng = random.Random(5)
    for _ in range(8):
        cx = _random_complex(rng, 5)
        mapping = {v: f"w{v}" for v in cx.vertices}
        assert reduced_cohomology(cx, QQ) == reduced_cohomology(
            cx.relabel(mapping), QQ)


def test_link():
    assert RP2.link({"0"}).dim() == 1
    assert RP2.link({"0", "1", "4"}).facets == (frozenset(),)
    assert RP2.link({"0", "1", "2"}).is_void()
