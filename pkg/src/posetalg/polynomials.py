"""Sparse polynomials over a fixed ordered variable tuple.

A polynomial is a dict {exponent tuple: coefficient} together with the
variable context it lives in.  Coefficients are field elements; every
operation takes the field explicitly.  The ASCII grammar used by the file
formats is `coef*var^e*var2^e2 + ...` with integer coefficients.
"""

from __future__ import annotations

import re

from .gradings import add_deg, scale_deg


class Polynomial:
    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = dict(terms or {})

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def variable(cls, variables, name, field):
        i = variables.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {e: field.one})

    @classmethod
    def constant(cls, variables, c, field):
        if field.is_zero(c):
            return cls(variables)
        return cls(variables, {tuple([0] * len(variables)): c})

    @classmethod
    def monomial(cls, variables, exponents, coeff):
        return cls(variables, {tuple(exponents): coeff})

    def is_zero(self):
        return not self.terms

    def copy(self):
        return Polynomial(self.variables, dict(self.terms))

    def add(self, other, field):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = field.add(out.get(e, field.zero), c)
            if field.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.variables, out)

    def sub(self, other, field):
        return self.add(other.scale(field.neg(field.one), field), field)

    def scale(self, c, field):
        if field.is_zero(c):
            return Polynomial.zero(self.variables)
        return Polynomial(self.variables,
                          {e: field.mul(c, v) for e, v in self.terms.items()})

    def mul(self, other, field):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_deg(e1, e2)
                s = field.add(out.get(e, field.zero), field.mul(c1, c2))
                if field.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.variables, out)

    def shift(self, exponents, field):
        """Multiply by the monomial with the given exponent tuple."""
        return Polynomial(self.variables,
                          {add_deg(e, tuple(exponents)): c
                           for e, c in self.terms.items()})

    def degree_of_term(self, e, var_degrees):
        d = None
        for i, k in enumerate(e):
            if k:
                contrib = scale_deg(k, var_degrees[i])
                d = contrib if d is None else add_deg(d, contrib)
        if d is None:
            return tuple([0] * len(var_degrees[0])) if var_degrees else ()
        return d

    def homogeneous_degree(self, var_degrees):
        """The common degree of all terms, or raise if inhomogeneous/zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        degs = {self.degree_of_term(e, var_degrees) for e in self.terms}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous polynomial: degrees {sorted(degs)}")
        return degs.pop()

    def substitute(self, images, target_variables, field):
        """Apply a ring map given by per-variable image polynomials."""
        result = Polynomial.zero(target_variables)
        one = Polynomial.constant(target_variables, field.one, field)
        for e, c in self.terms.items():
            term = Polynomial.constant(target_variables, c, field)
            for i, k in enumerate(e):
                if not k:
                    continue
                img = images.get(self.variables[i])
                if img is None:
                    raise KeyError(f"no image for variable {self.variables[i]}")
                p = one
                for _ in range(k):
                    p = p.mul(img, field)
                term = term.mul(p, field)
            result = result.add(term, field)
        return result

    def rename_context(self, new_variables, field):
        """Re-express over a superset variable tuple (by name)."""
        pos = {v: i for i, v in enumerate(new_variables)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_variables)
            for i, k in enumerate(e):
                if k:
                    v = self.variables[i]
                    if v not in pos:
                        raise KeyError(f"variable {v} missing from new context")
                    ne[pos[v]] = k
            key = tuple(ne)
            s = field.add(out.get(key, field.zero), c)
            if field.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return Polynomial(tuple(new_variables), out)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = str(c)
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors and cs == "-1":
                body = "-" + "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            parts.append(body)
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self):
        return f"Poly({self.format()})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|(\+)|(-))")


class PolynomialParseError(ValueError):
    pass


def parse_polynomial(text, variables, field):
    """Parse the ASCII grammar: sum of terms, `*` products, `^` powers."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolynomialParseError(f"bad character at: {text[pos:]!r}")
            break
        pos = m.end()
        tokens.append(m)
    idx = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    result = Polynomial.zero(variables)
    sign = 1
    coeff = None
    expo = None

    def flush():
        nonlocal result, sign, coeff, expo
        if coeff is None and expo is None:
            return
        c = field.of(sign * (1 if coeff is None else coeff))
        e = tuple(expo) if expo is not None else tuple([0] * n)
        result = result.add(Polynomial.monomial(variables, e, c), field)
        sign, coeff, expo = 1, None, None

    i = 0
    expecting_factor = True
    while i < len(tokens):
        m = tokens[i]
        if m.group(5):  # +
            flush()
            expecting_factor = True
        elif m.group(6):  # -
            if expecting_factor and (coeff is not None or expo is not None):
                raise PolynomialParseError("unexpected '-'")
            if coeff is None and expo is None:
                sign = -sign
            else:
                flush()
                sign = -1
            expecting_factor = True
        elif m.group(4):  # *
            expecting_factor = True
        elif m.group(1):  # integer
            v = int(m.group(1))
            coeff = v if coeff is None else coeff * v
            expecting_factor = False
        elif m.group(2):  # variable
            name = m.group(2)
            if name not in idx:
                raise PolynomialParseError(f"unknown variable {name!r}")
            k = 1
            if i + 1 < len(tokens) and tokens[i + 1].group(3):
                if i + 2 >= len(tokens) or not tokens[i + 2].group(1):
                    raise PolynomialParseError("'^' must be followed by an integer")
                k = int(tokens[i + 2].group(1))
                i += 2
            if expo is None:
                expo = [0] * n
            expo[idx[name]] += k
            expecting_factor = False
        i += 1
    flush()
    return result
