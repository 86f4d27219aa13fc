import pytest

from posetalg.exactlin import QQ
from posetalg.polynomials import (Polynomial, PolynomialParseError,
                                  parse_polynomial)

VARS = ("u", "v", "w")


def test_parse_and_format_roundtrip():
    p = parse_polynomial("u^2*v - 3*w + 2", VARS, QQ)
    assert p.terms == {(2, 1, 0): 1, (0, 0, 1): -3, (0, 0, 0): 2}
    q = parse_polynomial(p.format(), VARS, QQ)
    assert q.terms == p.terms


def test_parse_leading_minus_and_coefficient_products():
    p = parse_polynomial("-u + 2*3*v", VARS, QQ)
    assert p.terms == {(1, 0, 0): -1, (0, 1, 0): 6}


def test_parse_zero():
    assert parse_polynomial("0", VARS, QQ).is_zero()
    assert parse_polynomial("u - u", VARS, QQ).is_zero()


def test_parse_errors():
    with pytest.raises(PolynomialParseError):
        parse_polynomial("u + q", VARS, QQ)
    with pytest.raises(PolynomialParseError):
        parse_polynomial("u^v", VARS, QQ)
    with pytest.raises(PolynomialParseError):
        parse_polynomial("u $ v", VARS, QQ)


def test_mul_and_substitute():
    u = Polynomial.variable(VARS, "u", QQ)
    v = Polynomial.variable(VARS, "v", QQ)
    p = u.mul(v, QQ)
    assert p.terms == {(1, 1, 0): 1}
    target = ("a", "b")
    images = {"u": parse_polynomial("a + b", target, QQ),
              "v": parse_polynomial("a - b", target, QQ),
              "w": Polynomial.zero(target)}
    q = p.substitute(images, target, QQ)
    assert q.terms == {(2, 0): 1, (0, 2): -1}


def test_homogeneous_degree():
    degs = ((1, 0), (0, 1), (1, 1))
    p = parse_polynomial("u*v - w", VARS, QQ)
    assert p.homogeneous_degree(degs) == (1, 1)
    bad = parse_polynomial("u - w", VARS, QQ)
    with pytest.raises(ValueError):
        bad.homogeneous_degree(degs)


def test_rename_context():
    p = parse_polynomial("u*w", VARS, QQ)
    q = p.rename_context(("t", "u", "w"), QQ)
    assert q.terms == {(0, 1, 1): 1}
    with pytest.raises(KeyError):
        p.rename_context(("u",), QQ)
