"""Exact scalars (rationals and prime fields) and dense linear algebra.

All ranks, kernels and subspace comparisons in the package go through this
module.  Rationals are arbitrary precision (`fractions.Fraction`); prime
fields are plain machine ints reduced mod p.  Matrices are dense lists of
rows; everything here is pure and safe for concurrent use.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    """The field of rational numbers."""

    characteristic = 0

    def of(self, n):
        return Fraction(n)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) for a prime p < 2**31, elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"not a supported prime: {p}")
        self.p = p
        self.characteristic = p

    def of(self, n):
        return int(n) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def field_from_spec(kind: str, characteristic: int = 0):
    """Build a field from the (kind, characteristic) description."""
    if kind == "rationals":
        if characteristic != 0:
            raise ValueError("rationals have characteristic 0")
        return QQ
    if kind == "prime field":
        return PrimeField(characteristic)
    raise ValueError(f"unknown field kind: {kind}")


class Matrix:
    """Dense matrix with entries in a fixed field."""

    def __init__(self, rows: int, cols: int, entries, field):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry count does not match rows x cols")
        self.rows = rows
        self.cols = cols
        self.entries = [[field.of(e) if isinstance(e, int) else e for e in row]
                        for row in entries]
        self.field = field

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, [[field.one if i == j else field.zero for j in range(n)]
                          for i in range(n)], field)

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.field)

    def mul_vector(self, v):
        F = self.field
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.entries:
            s = F.zero
            for a, b in zip(row, v):
                s = F.add(s, F.mul(a, b))
            out.append(s)
        return out

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def rref(rows, field):
    """Reduced row echelon form.  Returns (new rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not field.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, e) for e in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[0])


def kernel_from_rref(red, pivots, ncols, field):
    """Kernel basis of the row space map, one vector per free column."""
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(tuple(v))
    return basis


def rank_and_kernel(m: Matrix):
    """Rank and a kernel basis for the column action of m.

    Guarantees rank + len(kernel) == cols, each basis vector maps to zero,
    and the basis vectors are linearly independent.
    """
    red, pivots = rref(m.entries, m.field)
    return len(pivots), kernel_from_rref(red, pivots, m.cols, m.field)


def kernel_basis(rows, ncols, field):
    red, pivots = rref(rows, field)
    return kernel_from_rref(red, pivots, ncols, field)


def in_span(vectors, v, field) -> bool:
    if not vectors:
        return all(field.is_zero(e) for e in v)
    base = rank(vectors, field)
    return rank(list(vectors) + [list(v)], field) == base


def coincide_as_subspaces(a, b, field) -> bool:
    """True iff span(a) == span(b); tuples must have a common length."""
    lengths = {len(v) for v in a} | {len(v) for v in b}
    if len(lengths) > 1:
        raise ValueError("mismatched tuple lengths")
    ra = rank(list(a), field)
    rb = rank(list(b), field)
    if ra != rb:
        return False
    return rank(list(a) + list(b), field) == ra


def mat_mul(a, b, field):
    """Product of two row-list matrices."""
    if not a or not b:
        return [[] for _ in a]
    n, k, m = len(a), len(b), len(b[0])
    if any(len(r) != k for r in a):
        raise ValueError("inner dimension mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = field.zero
            for t in range(k):
                s = field.add(s, field.mul(a[i][t], b[t][j]))
            row.append(s)
        out.append(row)
    return out


def identity_rows(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def solve_coordinates(basis, v, field):
    """Coordinates of v in the given basis, or None if v is not in the span.

    basis: list of vectors (rows); solves x . basis = v.
    """
    if not basis:
        return [] if all(field.is_zero(e) for e in v) else None
    n = len(v)
    # transpose system: columns are basis vectors, augmented with v
    aug = [[basis[j][i] for j in range(len(basis))] + [v[i]] for i in range(n)]
    red, pivots = rref(aug, field)
    k = len(basis)
    if k in pivots:
        return None
    coords = [field.zero] * k
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][k]
    return coords
