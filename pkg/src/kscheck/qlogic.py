"""Rays, projectors, subspaces and measurement contexts.

This module carries the lattice side of the toolkit: one-dimensional rays
in canonical integer form, the rank-1 projectors they generate, subspaces
with exact meet / join / orthocomplement, and contexts, i.e. maximal
families of mutually orthogonal rays whose projectors resolve the
identity.

Two rays with proportional coordinate vectors canonicalize to the same
coordinates, which is exactly the identification that lets a ray keep one
truth value across every context it appears in. Subspaces are stored as
their reduced row echelon basis, so subspace equality is plain structural
equality and no tolerance parameter exists anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .exactlin import RMatrix, RVector, Scalar, kernel_basis, outer, row_reduce

Coords = Union[RVector, Iterable[Scalar]]


def _as_vector(coords: Coords) -> RVector:
    return coords if isinstance(coords, RVector) else RVector(tuple(coords))


def canonical_ray_coords(coords: Coords) -> RVector:
    """Canonical representative of the ray through ``coords``.

    Clears denominators, divides by the gcd and flips the sign so the
    first nonzero entry is positive. Proportional inputs map to the same
    output; the zero vector is rejected.
    """
    v = _as_vector(coords)
    if v.is_zero():
        raise ValueError("the zero vector does not span a ray")
    scale = lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return RVector(tuple(ints))


@dataclass(frozen=True)
class Ray:
    """A labeled ray, stored in canonical integer form.

    The constructor canonicalizes, so ``Ray("a", (2, 2, 0, 0))`` and
    ``Ray("a", (-1, -1, 0, 0))`` are the same object value-wise.
    """

    id: str
    coords: RVector

    def __init__(self, id: str, coords: Coords) -> None:
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "coords", canonical_ray_coords(coords))

    @property
    def dim(self) -> int:
        return self.coords.dim

    def is_orthogonal_to(self, other: "Ray") -> bool:
        return self.coords.dot(other.coords) == 0

    def __str__(self) -> str:
        return f"{self.id}{self.coords}"


@dataclass(frozen=True)
class Projector:
    """Symmetric idempotent matrix."""

    matrix: RMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise ValueError("projector matrix must be square")
        if not m.is_symmetric():
            raise ValueError("projector matrix must be symmetric")
        if m @ m != m:
            raise ValueError("projector matrix must be idempotent")

    @classmethod
    def zero(cls, dim: int) -> "Projector":
        return cls(RMatrix.zeros(dim, dim))

    @classmethod
    def identity(cls, dim: int) -> "Projector":
        return cls(RMatrix.identity(dim))

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def trace(self) -> Fraction:
        return self.matrix.trace()

    def __add__(self, other: "Projector") -> "Projector":
        # Valid only for orthogonal summands; the constructor re-checks.
        return Projector(self.matrix + other.matrix)

    def complement(self) -> "Projector":
        return Projector(RMatrix.identity(self.dim) - self.matrix)

    def range(self) -> "Subspace":
        return Subspace.span(self.matrix.row_vectors(), self.dim)


def projector_of(ray: Ray) -> Projector:
    """Rank-1 projector v v^T / (v . v) onto the ray."""
    v = ray.coords
    n = v.dot(v)
    return Projector(outer(v, v).scale(Fraction(1, 1) / n))


@dataclass(frozen=True)
class Subspace:
    """Linear subspace, canonically represented by its RREF basis.

    ``basis`` holds the nonzero rows of the reduced row echelon form of
    any spanning set, so two equal subspaces are structurally equal. The
    zero subspace has an empty basis.
    """

    ambient_dim: int
    basis: tuple[RVector, ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        object.__setattr__(self, "basis", tuple(self.basis))
        last_pivot = -1
        pivots = []
        for row in self.basis:
            if row.dim != self.ambient_dim:
                raise ValueError("basis row has wrong dimension")
            p = next((j for j, x in enumerate(row) if x != 0), None)
            if p is None:
                raise ValueError("zero row in subspace basis")
            if p <= last_pivot or row[p] != 1:
                raise ValueError("subspace basis is not in reduced row echelon form")
            pivots.append(p)
            last_pivot = p
        for k, p in enumerate(pivots):
            for i, row in enumerate(self.basis):
                if i != k and row[p] != 0:
                    raise ValueError("subspace basis is not in reduced row echelon form")

    @classmethod
    def span(cls, vectors: Sequence[Coords], ambient_dim: int | None = None) -> "Subspace":
        vecs = [_as_vector(v) for v in vectors]
        if not vecs:
            if ambient_dim is None:
                raise ValueError("ambient dimension required for an empty span")
            return cls(ambient_dim, ())
        dim = vecs[0].dim
        if ambient_dim is not None and ambient_dim != dim:
            raise ValueError(f"vectors have dim {dim}, expected {ambient_dim}")
        rref, rank = row_reduce(RMatrix.from_rows(vecs))
        return cls(dim, rref.row_vectors()[:rank])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(RMatrix.identity(ambient_dim).row_vectors())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Coords) -> bool:
        """Exact membership test via reduction against the RREF basis."""
        x = list(_as_vector(v))
        if len(x) != self.ambient_dim:
            raise ValueError("vector has wrong dimension")
        for row in self.basis:
            p = next(j for j, y in enumerate(row) if y != 0)
            if x[p] != 0:
                f = x[p]
                x = [a - f * b for a, b in zip(x, row)]
        return all(a == 0 for a in x)

    def leq(self, other: "Subspace") -> bool:
        """Subspace inclusion self <= other."""
        return all(other.contains(row) for row in self.basis)


def join(s: Subspace, t: Subspace) -> Subspace:
    """Smallest subspace containing both: the span of the stacked bases."""
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.span(list(s.basis) + list(t.basis), s.ambient_dim)


def ortho(s: Subspace) -> Subspace:
    """Orthogonal complement, computed as the kernel of the basis matrix."""
    if s.is_zero():
        return Subspace.full(s.ambient_dim)
    return Subspace.span(kernel_basis(RMatrix.from_rows(s.basis)), s.ambient_dim)


def meet(s: Subspace, t: Subspace) -> Subspace:
    """Intersection of the two row spaces.

    Solved directly: a vector lies in both spans iff it can be written
    a . basis(s) = b . basis(t), so the intersection is the image of the
    kernel of the column-stacked matrix [basis(s)^T | -basis(t)^T]. This
    deliberately avoids the De Morgan route through complements, which the
    test suite checks as an independent law.
    """
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if s.is_zero() or t.is_zero():
        return Subspace.zero(s.ambient_dim)
    k1, k2 = s.dim, t.dim
    n = s.ambient_dim
    columns = RMatrix(
        tuple(
            tuple([s.basis[j][i] for j in range(k1)] + [-t.basis[j][i] for j in range(k2)])
            for i in range(n)
        )
    )
    vectors = []
    for c in kernel_basis(columns):
        x = RVector((Fraction(0),) * n)
        for j in range(k1):
            x = x + s.basis[j].scale(c[j])
        vectors.append(x)
    vectors = [v for v in vectors if not v.is_zero()]
    return Subspace.span(vectors, n)


class ContextError(ValueError):
    """Raised when a ray family fails the resolution-of-identity checks."""

    def __init__(self, violations: Sequence[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Context:
    """Maximal family of mutually orthogonal rays.

    Use :func:`validate_context` to construct one; it performs the
    cardinality, orthogonality and resolution-of-identity checks.
    """

    rays: tuple[Ray, ...]

    def __post_init__(self) -> None:
        if not self.rays:
            raise ValueError("a context needs at least one ray")

    @property
    def dim(self) -> int:
        return self.rays[0].dim

    @property
    def ray_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rays)

    def __len__(self) -> int:
        return len(self.rays)


def validate_context(rays: Sequence[Ray], dim: int) -> Context:
    """Check that ``rays`` form a complete measurement context in ``dim``.

    Accepts iff there are exactly ``dim`` rays, no two canonicalize to the
    same coordinates, and all pairs are orthogonal. The projector sum is
    then mathematically forced to be the identity, but it is still
    computed and asserted exactly. Raises :class:`ContextError` listing
    every violation found.
    """
    violations: list[str] = []
    rays = tuple(rays)
    for r in rays:
        if r.dim != dim:
            violations.append(f"ray {r.id} has dimension {r.dim}, expected {dim}")
    if violations:
        raise ContextError(violations)
    if len(rays) != dim:
        violations.append(f"context has {len(rays)} rays, needs {dim}")
    for a, b in itertools.combinations(rays, 2):
        if a.coords == b.coords:
            violations.append(f"rays {a.id} and {b.id} coincide after canonicalization")
        elif not a.is_orthogonal_to(b):
            violations.append(
                f"rays {a.id}{a.coords} and {b.id}{b.coords} are not orthogonal "
                f"(dot = {a.coords.dot(b.coords)})"
            )
    if violations:
        raise ContextError(violations)
    total = RMatrix.zeros(dim, dim)
    for r in rays:
        total = total + projector_of(r).matrix
    if total != RMatrix.identity(dim):
        raise ContextError([f"projectors do not resolve the identity (sum trace {total.trace()})"])
    return Context(rays)


def boolean_algebra_of(context: Context) -> frozenset[Projector]:
    """All 2^d sums of atomic projectors of the context.

    This is the Boolean algebra the context generates inside the projector
    lattice; it always contains the zero projector and the identity.
    """
    atoms = [projector_of(r) for r in context.rays]
    dim = context.dim
    elements = set()
    for size in range(len(atoms) + 1):
        for subset in itertools.combinations(atoms, size):
            total = RMatrix.zeros(dim, dim)
            for p in subset:
                total = total + p.matrix
            elements.add(Projector(total))
    return frozenset(elements)
