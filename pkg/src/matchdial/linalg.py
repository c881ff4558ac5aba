"""Exact rational linear algebra: dense matrices, rank, kernels.

Scalars are `fractions.Fraction` throughout (arbitrary precision, always in
lowest terms with positive denominator, so equality is exact).  Rank and
kernel computations use Gaussian elimination with the first nonzero pivot
per column; there is no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def rat(value, den=None) -> Fraction:
    """Coerce ints, "p/q" strings or pairs to an exact rational."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def rat_str(q) -> str:
    """Serialize as "p/q", or just "p" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_arith(a, b, op: str) -> Fraction:
    """One arithmetic step on exact rationals.

    ``op`` is one of add/sub/mul/div; division by zero raises
    ZeroDivisionError like ordinary Fraction division.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _row_echelon(rows):
    """In-place forward elimination.  Returns the pivot column list.

    Pivot choice: first row with a nonzero entry in the current column.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        src = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                src = i
                break
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), n, [x for r in rows for x in r])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, s) -> "Matrix":
        s = Fraction(s)
        return Matrix(self.rows, self.cols, [s * a for a in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        acc += a * other.entries[k * other.cols + j]
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix-vector product, vec given as a sequence of length cols."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        return tuple(
            sum((self.entry(i, k) * vec[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.entry(j, i) for i in range(self.cols) for j in range(self.rows)])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def rref(self):
        """Reduced row echelon form: (rows, pivot columns)."""
        rows = self.to_rows()
        pivots = _row_echelon(rows)
        return rows, tuple(pivots)

    def rank(self) -> int:
        _, pivots = self.rref()
        return len(pivots)

    def kernel_basis(self):
        """Basis of the right null space, one vector per free column.

        Each returned vector v satisfies self @ v = 0 exactly, and the
        number of vectors equals cols - rank.
        """
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -rows[r][f]
            basis.append(tuple(v))
        return basis

    def row_space_basis(self):
        """Canonical (reduced row echelon) basis of the row space.

        Two matrices have equal row spaces iff these bases are equal.
        """
        rows, pivots = self.rref()
        return tuple(tuple(rows[i]) for i in range(len(pivots)))


class SparseMatrix:
    """Column-sparse exact matrix; companion to Matrix for large complexes.

    Stored as one sorted (row, coeff) tuple per column.  Rank splits the
    nonzero pattern into connected components first, then runs dense
    elimination per block; this is exact and fast on the block-structured
    differentials that show up here.
    """

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns):
        columns = tuple(tuple(sorted(col)) for col in columns)
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        for col in columns:
            for r, x in col:
                if not (0 <= r < rows):
                    raise ValueError("row index out of range")
                if x == 0:
                    raise ValueError("explicit zero entry")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "columns", columns)

    def __setattr__(self, name, value):
        raise AttributeError("SparseMatrix is immutable")

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return self.nnz() == 0

    def column(self, j: int):
        return self.columns[j]

    def to_dense(self) -> Matrix:
        entries = [Fraction(0)] * (self.rows * self.cols)
        for j, col in enumerate(self.columns):
            for r, x in col:
                entries[r * self.cols + j] = Fraction(x)
        return Matrix(self.rows, self.cols, entries)

    @classmethod
    def from_dense(cls, m: Matrix) -> "SparseMatrix":
        cols = [[] for _ in range(m.cols)]
        for i in range(m.rows):
            for j in range(m.cols):
                x = m.entry(i, j)
                if x:
                    cols[j].append((i, x))
        return cls(m.rows, m.cols, cols)

    def apply(self, vec):
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        out = [Fraction(0)] * self.rows
        for j, col in enumerate(self.columns):
            x = vec[j]
            if x:
                for r, c in col:
                    out[r] += c * x
        return tuple(out)

    def rank(self) -> int:
        # union-find over columns; two columns join when they share a row
        parent = list(range(self.cols))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        row_owner = {}
        for j, col in enumerate(self.columns):
            for r, _ in col:
                if r in row_owner:
                    ra, rb = find(row_owner[r]), find(j)
                    if ra != rb:
                        parent[rb] = ra
                else:
                    row_owner[r] = j

        blocks = {}
        for j, col in enumerate(self.columns):
            if col:
                blocks.setdefault(find(j), []).append(j)

        total = 0
        for cols in blocks.values():
            rows_here = sorted({r for j in cols for r, _ in self.columns[j]})
            rindex = {r: i for i, r in enumerate(rows_here)}
            dense = [[Fraction(0)] * len(cols) for _ in rows_here]
            for jj, j in enumerate(cols):
                for r, x in self.columns[j]:
                    dense[rindex[r]][jj] = Fraction(x)
            total += len(_row_echelon(dense))
        return total


def compose_columns(lower: SparseMatrix, upper: SparseMatrix):
    """First nonzero column of lower @ upper, or None if the product is zero.

    Returns (column index, {row: coeff}) for the witness column.
    """
    if lower.cols != upper.rows:
        raise ValueError("shape mismatch")
    for j in range(upper.cols):
        acc = {}
        for r, x in upper.columns[j]:
            for rr, y in lower.columns[r]:
                acc[rr] = acc.get(rr, 0) + y * x
        acc = {k: v for k, v in acc.items() if v != 0}
        if acc:
            return j, acc
    return None
