"""Exact rational linear algebra.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), so every
question asked in this package is decided exactly. There is no floating
point and no tolerance anywhere: equality of vectors, matrices and the
subspaces built on top of them is literal structural equality. Sizes are
tiny by design (ambient dimension around 8 at most), so the implementation
favors clarity over asymptotics.

Vectors and matrices are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

Scalar = Union[Fraction, int]


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class RVector:
    """Immutable vector with exact rational entries."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ent = tuple(_frac(x) for x in self.entries)
        if not ent:
            raise ValueError("vector must have at least one entry")
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def dot(self, other: "RVector") -> Fraction:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return sum((x * y for x, y in zip(self.entries, other.entries)), Fraction(0))

    def scale(self, c: Scalar) -> "RVector":
        f = _frac(c)
        return RVector(tuple(f * x for x in self.entries))

    def __add__(self, other: "RVector") -> "RVector":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return RVector(tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "RVector") -> "RVector":
        return self + (-other)

    def __neg__(self) -> "RVector":
        return RVector(tuple(-x for x in self.entries))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class RMatrix:
    """Immutable rectangular matrix with exact rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_frac(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Union[RVector, Iterable[Scalar]]]) -> "RMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RMatrix":
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> RVector:
        return RVector(self.rows[i])

    def row_vectors(self) -> tuple[RVector, ...]:
        return tuple(RVector(r) for r in self.rows)

    def col(self, j: int) -> RVector:
        return RVector(tuple(r[j] for r in self.rows))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def transpose(self) -> "RMatrix":
        return RMatrix(tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)))

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace requires a square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def scale(self, c: Scalar) -> "RMatrix":
        f = _frac(c)
        return RMatrix(tuple(tuple(f * x for x in row) for row in self.rows))

    def apply(self, v: RVector) -> RVector:
        """Matrix-vector product."""
        if v.dim != self.ncols:
            raise ValueError(f"shape mismatch: {self.nrows}x{self.ncols} times vector of dim {v.dim}")
        return RVector(tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows))

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix addition")
        return RMatrix(tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RMatrix":
        return self.scale(-1)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().rows
        return RMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                for row in self.rows
            )
        )

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + "]"


def outer(u: RVector, v: RVector) -> RMatrix:
    """Outer product u v^T."""
    return RMatrix(tuple(tuple(a * b for b in v) for a in u))


def trace_product(a: RMatrix, b: RMatrix) -> Fraction:
    """trace(a @ b) without forming the product."""
    if a.ncols != b.nrows or a.nrows != b.ncols:
        raise ValueError("shape mismatch in trace_product")
    return sum(
        (a.rows[i][j] * b.rows[j][i] for i in range(a.nrows) for j in range(a.ncols)),
        Fraction(0),
    )


def row_reduce(m: RMatrix) -> tuple[RMatrix, int]:
    """Reduced row echelon form and rank, computed exactly.

    Pivot rule: columns left to right, and within a column the first
    unprocessed row with a nonzero entry. The output is therefore the
    unique RREF of the row space, with zero rows collected at the bottom.
    """
    rows = [list(r) for r in m.rows]
    nr, nc = len(rows), len(rows[0])
    piv_row = 0
    for col in range(nc):
        src = next((r for r in range(piv_row, nr) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[piv_row], rows[src] = rows[src], rows[piv_row]
        pivot = rows[piv_row][col]
        rows[piv_row] = [x / pivot for x in rows[piv_row]]
        for r in range(nr):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv_row])]
        piv_row += 1
        if piv_row == nr:
            break
    return RMatrix(tuple(tuple(r) for r in rows)), piv_row


def kernel_basis(m: RMatrix) -> tuple[RVector, ...]:
    """Basis of the null space {x : m @ x = 0}, one vector per free column."""
    rref, rank = row_reduce(m)
    nc = m.ncols
    pivot_cols = [next(j for j, x in enumerate(rref.rows[r]) if x != 0) for r in range(rank)]
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(nc):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * nc
        v[free] = Fraction(1)
        for r, p in enumerate(pivot_cols):
            v[p] = -rref.rows[r][free]
        basis.append(RVector(tuple(v)))
    return tuple(basis)


def nonneg_solve(a: RMatrix, b: RVector) -> RVector | None:
    """Find x >= 0 with a @ x = b, or None if no such x exists.

    Phase-one simplex over exact rationals with Bland's pivoting rule, so
    termination is guaranteed and the feasibility verdict is a theorem,
    not a numerical judgement.
    """
    m, n = a.nrows, a.ncols
    if b.dim != m:
        raise ValueError(f"right-hand side has dim {b.dim}, expected {m}")

    # Rows with negative right-hand side are negated so the artificial
    # basis starts feasible.
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = list(a.rows[i])
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau.append(row + art + [rhs])

    width = n + m
    basis = [n + i for i in range(m)]

    # Objective: minimize the sum of artificials. Under the artificial
    # basis the reduced cost of column j is -sum of its structural column,
    # and z[width] carries minus the current objective value.
    z = [Fraction(0)] * (width + 1)
    for j in range(n):
        z[j] = -sum((tableau[i][j] for i in range(m)), Fraction(0))
    z[width] = -sum((tableau[i][width] for i in range(m)), Fraction(0))

    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best: Fraction | None = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # Cannot happen: the phase-one objective is bounded below by 0.
            raise RuntimeError("unbounded phase-one objective")
        pivot = tableau[leave][enter]
        tableau[leave] = [x / pivot for x in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, tableau[leave])]
        basis[leave] = enter

    if z[width] != 0:
        return None

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i][width]
    return RVector(tuple(x))
