"""Classical finite probability spaces and quantum states.

The classical half is a finite outcome set with rational weights and the
usual measure axioms. The quantum half is a density operator: a rational
symmetric positive-semidefinite matrix of trace one, assigning each
projector the probability trace(rho P). Restricting that assignment to
one context always yields an ordinary classical probability space over
the context's rays; that is the bridge the rest of the toolkit leans on.

Every probability produced here is an exact rational. Density operators
are only constructible from rational data (explicit matrices or convex
mixtures of rational rays), and positive semidefiniteness is verified by
exact symmetric elimination, never by eigenvalues.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Hashable, Iterable, Mapping, Sequence

from .exactlin import RMatrix, RVector, Scalar, _frac, outer, trace_product
from .qlogic import Context, Projector, canonical_ray_coords, projector_of

if TYPE_CHECKING:
    from .ksengine import KSScenario

Label = Hashable


@dataclass(frozen=True)
class FiniteProbabilitySpace:
    """Finite outcome set with rational weights.

    The constructor checks structure only (weights cover exactly the
    outcomes). Whether the weights actually obey the measure axioms is
    the job of :func:`check_classical_axioms`, which must be able to
    examine broken inputs and report on them.
    """

    outcomes: tuple[Label, ...]
    weights: Mapping[Label, Fraction]

    def __post_init__(self) -> None:
        outcomes = tuple(self.outcomes)
        if len(set(outcomes)) != len(outcomes):
            raise ValueError("outcomes must be distinct")
        weights = {k: _frac(v) for k, v in self.weights.items()}
        if set(weights) != set(outcomes):
            raise ValueError("weights must be given for exactly the declared outcomes")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, outcomes: Iterable[Label]) -> "FiniteProbabilitySpace":
        outcomes = tuple(outcomes)
        w = Fraction(1, len(outcomes))
        return cls(outcomes, {o: w for o in outcomes})

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


def event_probability(space: FiniteProbabilitySpace, event: Iterable[Label]) -> Fraction:
    """Measure of an event, the sum of its outcome weights."""
    event = set(event)
    unknown = event - set(space.outcomes)
    if unknown:
        raise ValueError(f"labels outside the outcome set: {sorted(map(str, unknown))}")
    return sum((space.weights[o] for o in event), Fraction(0))


@dataclass(frozen=True)
class ClassicalAxiomReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_classical_axioms(
    space: FiniteProbabilitySpace, *, samples: int = 50, seed: int = 0
) -> ClassicalAxiomReport:
    """Verify the finite measure axioms on a space.

    Checks mu(empty) = 0, mu(everything) = 1, nonnegativity, and finite
    additivity over randomly drawn disjoint families (seeded, so the
    report is reproducible). Violations are reported, not raised.
    """
    violations: list[str] = []
    if event_probability(space, ()) != 0:
        violations.append("mu(empty set) != 0")
    total = space.total()
    if total != 1:
        violations.append(f"weights sum to {total}, expected 1")
    for o, w in space.weights.items():
        if w < 0:
            violations.append(f"negative weight {w} on outcome {o!r}")
    rng = random.Random(seed)
    outcomes = list(space.outcomes)
    for _ in range(samples):
        pool = outcomes[:]
        rng.shuffle(pool)
        nparts = rng.randint(1, max(1, len(pool)))
        parts: list[list[Label]] = [[] for _ in range(nparts)]
        for o in pool[: rng.randint(0, len(pool))]:
            parts[rng.randrange(nparts)].append(o)
        union = [o for part in parts for o in part]
        lhs = event_probability(space, union)
        rhs = sum((event_probability(space, part) for part in parts), Fraction(0))
        if lhs != rhs:
            violations.append(
                f"additivity fails on a family of {nparts} disjoint events: {lhs} != {rhs}"
            )
            break
    return ClassicalAxiomReport(tuple(violations))


def _is_psd(m: RMatrix) -> bool:
    """Exact positive-semidefiniteness test by symmetric elimination.

    A symmetric matrix is PSD iff this elimination never meets a negative
    pivot, and any zero pivot comes with an all-zero remaining row.
    Rational pivots replace the (generally irrational) eigenvalues.
    """
    n = m.nrows
    a = [list(row) for row in m.rows]
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


@dataclass(frozen=True)
class DensityOperator:
    """Rational symmetric PSD matrix of trace one."""

    matrix: RMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise ValueError("density operator must be square")
        if not m.is_symmetric():
            raise ValueError("density operator must be symmetric")
        if m.trace() != 1:
            raise ValueError(f"density operator must have trace 1, got {m.trace()}")
        if not _is_psd(m):
            raise ValueError("density operator must be positive semidefinite")

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    @classmethod
    def pure(cls, coords: RVector | Iterable[Scalar]) -> "DensityOperator":
        """Pure state on the ray through ``coords``."""
        v = canonical_ray_coords(coords)
        return cls(outer(v, v).scale(Fraction(1) / v.dot(v)))

    @classmethod
    def mixture(cls, parts: Sequence[tuple[Scalar, RVector | Iterable[Scalar]]]) -> "DensityOperator":
        """Convex mixture of pure states, weights summing to exactly 1."""
        if not parts:
            raise ValueError("mixture needs at least one component")
        weights = [_frac(w) for w, _ in parts]
        if any(w < 0 for w in weights):
            raise ValueError("mixture weights must be nonnegative")
        if sum(weights) != 1:
            raise ValueError(f"mixture weights sum to {sum(weights)}, expected 1")
        total = None
        for w, coords in parts:
            term = cls.pure(coords).matrix.scale(_frac(w))
            total = term if total is None else total + term
        return cls(total)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(RMatrix.identity(dim).scale(Fraction(1, dim)))


def born(rho: DensityOperator, p: Projector) -> Fraction:
    """Probability trace(rho p) of the projector in the given state."""
    if rho.dim != p.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, projector {p.dim}")
    return trace_product(rho.matrix, p.matrix)


def expectation(rho: DensityOperator, observable: RMatrix) -> Fraction:
    """Mean value trace(rho A) of a symmetric observable matrix."""
    if rho.dim != observable.nrows or not observable.is_square():
        raise ValueError("observable shape does not match the state")
    return trace_product(rho.matrix, observable)


def context_distribution(rho: DensityOperator, c: Context) -> FiniteProbabilitySpace:
    """The classical probability space a state induces on one context.

    Outcomes are the context's ray ids, weighted by their Born
    probabilities. Because the context's projectors resolve the identity
    the weights sum to exactly 1; this is asserted, not assumed.
    """
    weights = {r.id: born(rho, projector_of(r)) for r in c.rays}
    space = FiniteProbabilitySpace(tuple(r.id for r in c.rays), weights)
    if space.total() != 1:
        raise AssertionError(f"context distribution sums to {space.total()}, expected 1")
    return space


@dataclass(frozen=True)
class StateAxiomReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_state_axioms(rho: DensityOperator, scenario: "KSScenario") -> StateAxiomReport:
    """Verify the measure axioms of a state over a scenario's contexts.

    mu(zero projector) must be 0, and additivity must hold over every
    orthogonal family the contexts provide: for every subset of a
    context's atoms the measure of the summed projector must equal the
    sum of the atomic measures, and for every pair of disjoint subsets
    the measures of the two compound projectors must add up as well, so
    the whole Boolean algebra each context generates is covered.
    """
    violations: list[str] = []
    zero = born(rho, Projector.zero(rho.dim))
    if zero != 0:
        violations.append(f"mu(0) = {zero}, expected 0")
    for k, c in enumerate(scenario.contexts):
        ids = [r.id for r in c.rays]
        atom = {r.id: projector_of(r) for r in c.rays}
        all_subsets = [
            frozenset(combo)
            for size in range(len(ids) + 1)
            for combo in itertools.combinations(ids, size)
        ]
        compound: dict[frozenset[str], Projector] = {}
        for sub in all_subsets:
            total = Projector.zero(rho.dim)
            for rid in sub:
                total = total + atom[rid]
            compound[sub] = total
        mu = {sub: born(rho, compound[sub]) for sub in all_subsets}
        for sub in all_subsets:
            if len(sub) < 2:
                continue
            if mu[sub] != sum((mu[frozenset({rid})] for rid in sub), Fraction(0)):
                violations.append(
                    f"additivity fails in context {k + 1} on {{{', '.join(sorted(sub))}}}"
                )
        for a, b in itertools.combinations(all_subsets, 2):
            if a & b:
                continue
            if mu[a | b] != mu[a] + mu[b]:
                violations.append(
                    f"additivity fails in context {k + 1} on the disjoint pair "
                    f"{sorted(a)} / {sorted(b)}"
                )
    return StateAxiomReport(tuple(violations))


@dataclass(frozen=True)
class PvmReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def finite_pvm_check(contexts: Sequence[Context]) -> PvmReport:
    """Treat each context as a finite-outcome observable and verify its
    projection-valued measure axioms.

    For outcome subsets B of a context: M(empty) = 0, M(all outcomes) is
    the identity, M(A union B) = M(A) + M(B) for disjoint A and B, and
    M(complement of B) = identity - M(B).
    """
    violations: list[str] = []
    for k, c in enumerate(contexts):
        dim = c.dim
        atoms = {r.id: projector_of(r).matrix for r in c.rays}
        ids = list(atoms)
        all_subsets = [
            frozenset(combo)
            for size in range(len(ids) + 1)
            for combo in itertools.combinations(ids, size)
        ]
        measure: dict[frozenset[str], RMatrix] = {}
        for sub in all_subsets:
            total = RMatrix.zeros(dim, dim)
            for rid in sub:
                total = total + atoms[rid]
            measure[sub] = total
        if not measure[frozenset()].is_zero():
            violations.append(f"context {k + 1}: M(empty) != 0")
        if measure[frozenset(ids)] != RMatrix.identity(dim):
            violations.append(f"context {k + 1}: M(all outcomes) != identity")
        for sub in all_subsets:
            comp = frozenset(ids) - sub
            if measure[comp] != RMatrix.identity(dim) - measure[sub]:
                violations.append(f"context {k + 1}: complement rule fails on {sorted(sub)}")
        for a, b in itertools.combinations(all_subsets, 2):
            if a & b:
                continue
            if measure[a | b] != measure[a] + measure[b]:
                violations.append(
                    f"context {k + 1}: additivity fails on {sorted(a)} and {sorted(b)}"
                )
    return PvmReport(tuple(violations))
