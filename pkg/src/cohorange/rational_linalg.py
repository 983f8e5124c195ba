"""Dense exact linear algebra over arbitrary-precision rationals.

Scalars are `fractions.Fraction` (always in lowest terms, positive
denominator). Matrices are small and dense; every kernel/image/rank
computation in the package reduces to the routines here, so everything
is exact — no tolerances anywhere.

A light sparse elimination toolkit (rows as {col: Fraction} dicts) is
included for the large, very sparse homotopy-category linear systems.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions, row-major.

    Zero rows or columns are legal; a 0xn or nx0 matrix represents a map
    from or to the zero space.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = [_frac(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction ------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_rows(cls, rows_list) -> "Matrix":
        rows_list = [list(r) for r in rows_list]
        nrows = len(rows_list)
        ncols = len(rows_list[0]) if rows_list else 0
        for r in rows_list:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(nrows, ncols, [x for r in rows_list for x in r])

    @classmethod
    def from_columns(cls, cols_list) -> "Matrix":
        return cls.from_rows(cols_list).transpose() if cols_list else cls.zeros(0, 0)

    # -- access ------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

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
        return f"Matrix({self.rows}x{self.cols}, {[str(x) for x in self.entries]})"

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix subtraction")
        return Matrix(self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.rows, self.cols, [c * x for x in self.entries])

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, m, k = self.rows, other.cols, self.cols
        out = [Fraction(0)] * (n * m)
        for i in range(n):
            base = i * k
            for t in range(k):
                a = self.entries[base + t]
                if a == 0:
                    continue
                obase = t * m
                row_out = i * m
                for j in range(m):
                    b = other.entries[obase + j]
                    if b != 0:
                        out[row_out + j] += a * b
        return Matrix(n, m, out)

    def apply(self, vec):
        """Multiply by a column vector given as a list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum((self.entries[i * self.cols + j] * _frac(vec[j]) for j in range(self.cols)),
                Fraction(0))
            for i in range(self.rows)
        ]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self.entries[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        rows = [self.row(i) + other.row(i) for i in range(self.rows)]
        return Matrix(self.rows, self.cols + other.cols,
                      [x for r in rows for x in r])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols,
                      list(self.entries) + list(other.entries))

    def take_columns(self, js) -> "Matrix":
        rows = [[self.entries[i * self.cols + j] for j in js] for i in range(self.rows)]
        return Matrix(self.rows, len(js), [x for r in rows for x in r])

    # -- elimination ---------------------------------------------------

    def rref(self):
        """Reduced row-echelon form; returns (Matrix, pivot column list)."""
        m = [self.row(i) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            if pv != 1:
                m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(self.rows, self.cols, [x for row in m for x in row]), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Matrix":
        """Columns form a basis of {v : self @ v = 0}; cols - rank of them."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis_cols = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, f]
            basis_cols.append(v)
        if not basis_cols:
            return Matrix.zeros(self.cols, 0)
        return Matrix.from_columns(basis_cols)

    def solve(self, b: "Matrix"):
        """One particular solution x of self @ x = b, or None if inconsistent.

        b may have several columns; they are solved simultaneously.
        """
        if b.rows != self.rows:
            raise ValueError("row count mismatch between matrix and right-hand side")
        aug = self.hstack(b)
        red, pivots = aug.rref()
        for r in range(red.rows):
            lead = next((j for j in range(red.cols) if red[r, j] != 0), None)
            if lead is not None and lead >= self.cols:
                return None
        sol = Matrix.zeros(self.cols, b.cols).to_rows()
        for r, pc in enumerate(pivots):
            if pc >= self.cols:
                continue
            for j in range(b.cols):
                sol[pc][j] = red[r, self.cols + j]
        return Matrix.from_rows(sol) if self.cols else Matrix.zeros(0, b.cols)

    def column_space_basis(self) -> "Matrix":
        """Subset of columns forming a basis of the column space."""
        _, pivots = self.rref()
        return self.take_columns(pivots)


def jordan_block(eigenvalue, d: int) -> Matrix:
    """d x d block: `eigenvalue` on the diagonal, 1 on the superdiagonal.

    The superdiagonal convention is fixed package-wide.
    """
    if d < 1:
        raise ValueError("jordan_block needs d >= 1")
    lam = _frac(eigenvalue)
    entries = []
    for i in range(d):
        for j in range(d):
            if i == j:
                entries.append(lam)
            elif j == i + 1:
                entries.append(Fraction(1))
            else:
                entries.append(Fraction(0))
    return Matrix(d, d, entries)


# ---------------------------------------------------------------------------
# Sparse elimination: rows are {column index: Fraction} dicts.
# Used for the chain-map and null-homotopy systems, which are huge but
# have only a handful of nonzeros per row.
# ---------------------------------------------------------------------------


def _sparse_eliminate(rows):
    """Forward-eliminate sparse rows in place; returns {pivot col: row}.

    Every returned row is scaled to a unit pivot and fully reduced
    against the other pivots (RREF in sparse form).
    """
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivot_rows:
                f = row[c]
                for j, v in pivot_rows[c].items():
                    nv = row.get(j, Fraction(0)) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            else:
                pv = row[c]
                if pv != 1:
                    row = {j: v / pv for j, v in row.items()}
                # back-substitute into existing pivot rows
                for pc, prow in pivot_rows.items():
                    if c in prow:
                        f = prow[c]
                        for j, v in row.items():
                            nv = prow.get(j, Fraction(0)) - f * v
                            if nv:
                                prow[j] = nv
                            else:
                                prow.pop(j, None)
                pivot_rows[c] = row
                break
    return pivot_rows


def sparse_nullspace(rows, ncols: int):
    """Basis of the nullspace of the sparse system, as dense vectors.

    `rows` is an iterable of {col: Fraction}; returns a list of
    Fraction lists of length ncols.
    """
    pivot_rows = _sparse_eliminate(rows)
    pivot_set = set(pivot_rows)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, prow in pivot_rows.items():
            coeff = prow.get(f)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


class SparseReducer:
    """Incremental sparse RREF span with membership reduction.

    add(vec) inserts a vector (dict or list) into the span; reduce(vec)
    returns the residue of vec modulo the current span as a dict.
    """

    def __init__(self):
        self.pivot_rows: dict[int, dict] = {}

    @staticmethod
    def _as_dict(vec):
        if isinstance(vec, dict):
            return {j: _frac(v) for j, v in vec.items() if v}
        return {j: _frac(v) for j, v in enumerate(vec) if v}

    def reduce(self, vec) -> dict:
        row = self._as_dict(vec)
        changed = True
        while changed:
            changed = False
            for c in sorted(row):
                prow = self.pivot_rows.get(c)
                if prow is None:
                    continue
                f = row[c]
                for j, v in prow.items():
                    nv = row.get(j, Fraction(0)) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                changed = True
                break
        return row

    def add(self, vec) -> bool:
        """Insert vec's residue into the span. True if the span grew."""
        row = self.reduce(vec)
        if not row:
            return False
        c = min(row)
        pv = row[c]
        if pv != 1:
            row = {j: v / pv for j, v in row.items()}
        for prow in self.pivot_rows.values():
            if c in prow:
                f = prow[c]
                for j, v in row.items():
                    nv = prow.get(j, Fraction(0)) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        self.pivot_rows[c] = row
        return True

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)
