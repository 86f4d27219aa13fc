from math import comb

import pytest

from posetalg.exactlin import QQ
from posetalg.gradings import line_window
from posetalg.hibi import (NotLocallyDistributive, asl_check, cm_report,
                           hibi_algebra, multichain_count, presented_hilbert,
                           standard_monomials, straightening_presentation)
from posetalg.posets import Poset


def diamond():
    return Poset(["0", "a", "b", "1"],
                 [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def stanley_s5():
    return Poset(["0", "v1", "v2", "e1", "e2"],
                 [("0", "v1"), ("0", "v2"), ("v1", "e1"), ("v2", "e1"),
                  ("v1", "e2"), ("v2", "e2")])


def test_chain_has_polynomial_stalks():
    chain = Poset(["x", "y", "z"], [("x", "y"), ("y", "z")])
    T = hibi_algebra(chain, QQ)
    for x in chain.labels:
        assert not T.stalks[x].relations
    # every monomial is standard: HF is binomial C(d+2, d)
    hf = T.limit_hilbert(line_window(5))
    for d in range(6):
        assert hf[(d,)] == comb(d + 2, d)


def test_diamond_single_stalk_relation():
    T = hibi_algebra(diamond(), QQ)
    assert len(T.stalks["1"].relations) == 1
    rel, deg = T.stalks["1"].relations[0]
    assert deg == (2,)
    # a*b - 0*1 on the interval variables
    names = T.stalks["1"].variables
    terms = {tuple(names[i] for i, e in enumerate(k) if e): v
             for k, v in rel.terms.items()}
    assert set(terms) == {("a", "b"), ("0", "1")}
    for x in ("0", "a", "b"):
        assert not T.stalks[x].relations


def test_s5_stalk_relations():
    T = hibi_algebra(stanley_s5(), QQ)
    for e in ("e1", "e2"):
        assert len(T.stalks[e].relations) == 1
    assert not T.stalks["v1"].relations


def test_rejects_non_locally_distributive():
    m3 = Poset(["0", "x", "y", "z", "1"],
               [("0", "x"), ("0", "y"), ("0", "z"),
                ("x", "1"), ("y", "1"), ("z", "1")])
    with pytest.raises(NotLocallyDistributive) as info:
        hibi_algebra(m3, QQ)
    assert info.value.witness == ("0", "1")


def test_diamond_stalk_piece_dimension():
    T = hibi_algebra(diamond(), QQ)
    # ten degree-2 monomials in four variables minus one relation
    assert T.stalk_piece("1", (2,)).dim == 9


def test_diamond_hilbert_function_is_squares():
    T = hibi_algebra(diamond(), QQ)
    hf = T.limit_hilbert(line_window(6))
    assert [hf[(d,)] for d in range(7)] == [(d + 1) ** 2 for d in range(7)]
    phf = presented_hilbert(diamond(), 6)
    assert [phf[(d,)] for d in range(7)] == [(d + 1) ** 2 for d in range(7)]


def test_multichain_counts():
    p = diamond()
    assert multichain_count(p, 2) == 9
    chain = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    for d in range(6):
        assert multichain_count(chain, d) == comb(d + 2, d)
    assert multichain_count(stanley_s5(), 1) == 5
    # oracle: count by direct enumeration
    for d in range(5):
        assert multichain_count(p, d) == len(standard_monomials(p, d))


def test_s5_hilbert_function_matches_multichain_count():
    T = hibi_algebra(stanley_s5(), QQ)
    hf = T.limit_hilbert(line_window(5))
    phf = presented_hilbert(stanley_s5(), 5)
    for d in range(6):
        expected = multichain_count(stanley_s5(), d)
        assert hf[(d,)] == expected
        assert phf[(d,)] == expected


def test_asl_check_diamond_and_s5_and_chain():
    assert asl_check(hibi_algebra(diamond(), QQ), 5).ok
    assert asl_check(hibi_algebra(stanley_s5(), QQ), 4).ok
    chain = Poset(["x", "y"], [("x", "y")])
    assert asl_check(hibi_algebra(chain, QQ), 4).ok


def test_asl_check_detects_broken_square():
    T = hibi_algebra(diamond(), QQ)
    from posetalg.polynomials import Polynomial
    # corrupt one restriction: send a variable to twice itself
    images = T.cover_maps[("a", "1")]
    images["a"] = images["a"].scale(QQ.of(2), QQ)
    report = asl_check(T, 3)
    assert not report.ok
    assert any("square" in line for line in report.lines)


def test_straightening_presentation_shapes():
    gens = straightening_presentation(diamond())
    assert len(gens) == 1
    g = gens[0]
    assert g.pair == ("a", "b")
    assert g.meet == "0" and g.upper_bounds == ("1",)
    s5 = straightening_presentation(stanley_s5())
    by_pair = {g.pair: g for g in s5}
    # no upper bounds: the straightening is the bare product
    assert by_pair[("e1", "e2")].upper_bounds == ()
    assert len(by_pair[("e1", "e2")].polynomial.terms) == 1
    assert by_pair[("v1", "v2")].upper_bounds == ("e1", "e2")


def test_straightening_rhs_has_chain_support():
    for p in (diamond(), stanley_s5()):
        for g in straightening_presentation(p):
            x, y = g.pair
            for e in g.polynomial.terms:
                supp = [p.labels[i] for i, k in enumerate(e) if k]
                if set(supp) == {x, y}:
                    continue  # the product term itself
                sub = p.induced(supp)
                assert len(sub.maximal_chains()) == 1  # totally ordered


def test_classical_relation_for_distributive_lattice():
    # in a lattice the sum has exactly one term: x*y - meet*join
    gens = straightening_presentation(diamond())
    g = gens[0]
    assert len(g.polynomial.terms) == 2


def test_antichain_with_bottom_gives_monomial_relation():
    p = Poset(["0", "x", "y"], [("0", "x"), ("0", "y")])
    gens = straightening_presentation(p)
    assert len(gens) == 1
    assert len(gens[0].polynomial.terms) == 1  # x*y, empty sum
    hf = presented_hilbert(p, 4)
    T = hibi_algebra(p, QQ)
    lim = T.limit_hilbert(line_window(4))
    for d in range(5):
        assert hf[(d,)] == lim[(d,)] == multichain_count(p, d)


def test_cm_report():
    assert cm_report(diamond(), QQ).hypothesis_holds
    assert cm_report(stanley_s5(), QQ).hypothesis_holds
    # two chains hanging from the bottom: the proper part is disconnected
    p = Poset(["0", "a", "x", "b", "y"],
              [("0", "a"), ("a", "x"), ("0", "b"), ("b", "y")])
    assert not cm_report(p, QQ).hypothesis_holds
