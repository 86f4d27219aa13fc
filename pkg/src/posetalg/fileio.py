"""Text formats: `.poset`, `.scx`, `.kp`, and CSV tables for Hilbert
functions.  `.mono` lives in `monomials`, `.fan` in `toric`.

All formats are line based; `#` starts a comment.  Parse errors carry line
numbers.
"""

from __future__ import annotations

import csv
import io
import re

from .gradings import HilbertFunction
from .polynomials import PolynomialParseError, parse_polynomial
from .posets import Poset
from .sheaves import PosetAlgebra, PresentedAlgebra, PresentedStalk, \
    SheafError, VariableSystem
from .simplicial import SimplicialComplex


class ParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_poset(text: str) -> Poset:
    elements = None
    covers = []
    for lineno, line in _content_lines(text):
        if line.startswith("elements:"):
            elements = line[len("elements:"):].split()
        elif line.startswith("cover:"):
            body = line[len("cover:"):]
            parts = [p.strip() for p in body.split("<")]
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ParseError(lineno, "expected `cover: a < b`")
            covers.append((parts[0], parts[1]))
        else:
            raise ParseError(lineno, f"unrecognized directive: {line!r}")
    if elements is None:
        raise ParseError(0, "missing elements: line")
    try:
        return Poset(elements, covers)
    except ValueError as e:
        raise ParseError(0, str(e))


def format_poset(poset: Poset) -> str:
    lines = ["elements: " + " ".join(poset.labels)]
    for a, b in poset.cover_pairs():
        lines.append(f"cover: {a} < {b}")
    return "\n".join(lines) + "\n"


def parse_scx(text: str) -> SimplicialComplex:
    """One facet per line, vertices space separated; `.` is the empty
    facet; a file with no facet lines is the void complex."""
    facets = []
    for lineno, line in _content_lines(text):
        if line == ".":
            facets.append(frozenset())
        else:
            facets.append(frozenset(line.split()))
    return SimplicialComplex(facets)


def format_scx(cx: SimplicialComplex) -> str:
    lines = []
    for f in cx.facets:
        lines.append(" ".join(sorted(f, key=str)) if f else ".")
    return "\n".join(lines) + ("\n" if lines else "")


_VARDEG = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*):deg\(([-0-9,\s]*)\)$")


def parse_kp(text: str, field):
    """Parse the `.kp` format into a PosetAlgebra.

    Poset block as in `.poset`, then stalk lines
    `stalk x: vars u:deg(1,0) v:deg(0,1); rels u^2, u*v - 2*v^2`
    and restriction lines `restrict x < y: u -> u, v -> 0`.
    """
    elements = None
    covers = []
    stalk_specs = {}
    restrict_specs = {}
    grading_rank = None
    for lineno, line in _content_lines(text):
        if line.startswith("elements:"):
            elements = line[len("elements:"):].split()
        elif line.startswith("cover:"):
            parts = [p.strip() for p in line[len("cover:"):].split("<")]
            if len(parts) != 2:
                raise ParseError(lineno, "expected `cover: a < b`")
            covers.append((parts[0], parts[1]))
        elif line.startswith("stalk "):
            body = line[len("stalk "):]
            if ":" not in body:
                raise ParseError(lineno, "missing ':' in stalk line")
            name, spec = body.split(":", 1)
            name = name.strip()
            sections = [s.strip() for s in spec.split(";")]
            var_names = []
            var_degrees = []
            rel_texts = []
            for sec in sections:
                if sec.startswith("vars"):
                    for tok in sec[len("vars"):].split():
                        m = _VARDEG.match(tok)
                        if not m:
                            raise ParseError(lineno,
                                             f"bad variable token {tok!r}")
                        var_names.append(m.group(1))
                        degs = m.group(2).replace(",", " ").split()
                        try:
                            var_degrees.append(tuple(int(x) for x in degs))
                        except ValueError:
                            raise ParseError(lineno, f"bad degree in {tok!r}")
                elif sec.startswith("rels"):
                    body_r = sec[len("rels"):].strip()
                    if body_r:
                        rel_texts.extend(p.strip() for p in body_r.split(","))
                elif sec:
                    raise ParseError(lineno, f"bad stalk section {sec!r}")
            ranks = {len(d) for d in var_degrees}
            if len(ranks) > 1:
                raise ParseError(lineno, "variable degrees of mixed rank")
            if ranks:
                r = ranks.pop()
                if grading_rank is None:
                    grading_rank = r
                elif grading_rank != r:
                    raise ParseError(lineno, "grading rank differs between stalks")
            stalk_specs[name] = (lineno, tuple(var_names), tuple(var_degrees),
                                 rel_texts)
        elif line.startswith("restrict "):
            body = line[len("restrict "):]
            if ":" not in body:
                raise ParseError(lineno, "missing ':' in restrict line")
            head, maps = body.split(":", 1)
            parts = [p.strip() for p in head.split("<")]
            if len(parts) != 2:
                raise ParseError(lineno, "expected `restrict x < y: ...`")
            x, y = parts
            images = {}
            for item in maps.split(","):
                item = item.strip()
                if not item:
                    continue
                if "->" not in item:
                    raise ParseError(lineno, f"bad image {item!r}")
                v, expr = (s.strip() for s in item.split("->", 1))
                images[v] = expr
            restrict_specs[(x, y)] = (lineno, images)
        else:
            raise ParseError(lineno, f"unrecognized directive: {line!r}")
    if elements is None:
        raise ParseError(0, "missing elements: line")
    if grading_rank is None:
        grading_rank = 1
    try:
        poset = Poset(elements, covers)
    except ValueError as e:
        raise ParseError(0, str(e))
    stalks = {}
    for x in poset.labels:
        if x not in stalk_specs:
            raise ParseError(0, f"no stalk for element {x!r}")
        lineno, names, degrees, rel_texts = stalk_specs[x]
        rels = []
        for t in rel_texts:
            try:
                rels.append(parse_polynomial(t, names, field))
            except PolynomialParseError as e:
                raise ParseError(lineno, str(e))
        try:
            stalks[x] = PresentedStalk(names, degrees, rels, grading_rank)
        except (SheafError, ValueError) as e:
            raise ParseError(lineno, str(e))
    cover_maps = {}
    for (x, y) in poset.cover_pairs():
        if (x, y) not in restrict_specs:
            raise ParseError(0, f"no restrict line for cover {x} < {y}")
        lineno, images = restrict_specs[(x, y)]
        polys = {}
        for v in stalks[y].variables:
            expr = images.get(v)
            if expr is None:
                raise ParseError(lineno, f"no image for variable {v!r}")
            try:
                polys[v] = parse_polynomial(expr, stalks[x].variables, field)
            except PolynomialParseError as e:
                raise ParseError(lineno, str(e))
        cover_maps[(x, y)] = polys
    try:
        return PosetAlgebra(poset, stalks, cover_maps, field, grading_rank)
    except SheafError as e:
        raise ParseError(0, str(e))


def as_presented(algebra: PosetAlgebra) -> PresentedAlgebra:
    """Reinterpret a generic algebra whose restrictions are variable
    projections as a presented algebra."""
    if isinstance(algebra, PresentedAlgebra):
        return algebra
    pool = {}
    for x in algebra.poset.labels:
        stalk = algebra.stalks[x]
        for v, d in zip(stalk.variables, stalk.degrees):
            if v in pool and pool[v] != d:
                raise SheafError(
                    f"variable {v!r} has conflicting degrees across stalks")
            pool[v] = d
    for (x, y), images in algebra.cover_maps.items():
        fx = set(algebra.stalks[x].variables)
        for v, img in images.items():
            if img.is_zero():
                if v in fx:
                    raise SheafError(
                        f"cover {x} < {y}: shared variable {v!r} maps to zero")
                continue
            expected = {tuple(1 if algebra.stalks[x].variables[i] == v else 0
                              for i in range(len(algebra.stalks[x].variables))):
                        algebra.field.one}
            if v not in fx or img.terms != expected:
                raise SheafError(
                    f"cover {x} < {y}: image of {v!r} is not a projection")
    var_sets = {x: frozenset(algebra.stalks[x].variables)
                for x in algebra.poset.labels}
    system = VariableSystem(pool, var_sets)
    return PresentedAlgebra(algebra.poset, system, algebra.stalks,
                            algebra.field)


def format_kp(algebra: PosetAlgebra) -> str:
    lines = [format_poset(algebra.poset).rstrip()]
    for x in algebra.poset.labels:
        stalk = algebra.stalks[x]
        toks = []
        for v, d in zip(stalk.variables, stalk.degrees):
            toks.append(f"{v}:deg({','.join(str(c) for c in d)})")
        line = f"stalk {x}: vars " + " ".join(toks)
        rels = getattr(stalk, "relations", [])
        if rels:
            line += "; rels " + ", ".join(r.format() for r, _ in rels)
        lines.append(line)
    for (x, y) in algebra.poset.cover_pairs():
        images = algebra.cover_maps[(x, y)]
        body = ", ".join(f"{v} -> {images[v].format()}"
                         for v in algebra.stalks[y].variables)
        lines.append(f"restrict {x} < {y}: {body}")
    return "\n".join(lines) + "\n"


def hilbert_csv(tables) -> str:
    """CSV for {index: HilbertFunction} or a single HilbertFunction.

    Columns: i, degree (space separated ints), dim.  Deterministic order.
    """
    if isinstance(tables, HilbertFunction):
        tables = {None: tables}
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["i", "degree", "dim"])
    for i in sorted(tables, key=lambda k: (k is None, k)):
        hf = tables[i]
        for a, d in hf.table_rows():
            writer.writerow(["" if i is None else i,
                             " ".join(str(x) for x in a), d])
    return out.getvalue()


def parse_hilbert_csv(text: str):
    """Inverse of hilbert_csv; returns {index or None: {degree: dim}}."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["i", "degree", "dim"]:
        raise ValueError("bad header")
    out = {}
    for row in rows[1:]:
        if not row:
            continue
        i = None if row[0] == "" else int(row[0])
        a = tuple(int(x) for x in row[1].split())
        out.setdefault(i, {})[a] = int(row[2])
    return out
