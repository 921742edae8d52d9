"""Obstructions to context-independent value assignments.

Two classic finite demonstrations, checked by explicit matrix algebra at
construction time and then reduced to exact sign arithmetic:

* a 3 x 3 square of two-spin observables whose six product constraints
  admit no simultaneous +-1 assignment;
* the three-spin parity argument, where four compatible product
  observables force an impossible sign pattern on six local values.

Also provided: a direct demonstration that the statistics of one
observable depend on which compatible partner is measured alongside it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .contexts import Observable, observable, sequential_luders
from .states import DensityOperator, as_density, make_ghz

# Observables must square to I and satisfy their product constraints
# within this, per entry.
CONSTRAINT_TOL = 1e-9

# Exhaustive search is capped at this many +-1 observables (2^n cases).
_SEARCH_MAX_OBSERVABLES = 20


@dataclass(frozen=True)
class ValueAssignmentProblem:
    """+-1 observables with signed product constraints over contexts.

    ``contexts[k]`` lists indices of mutually commuting observables whose
    ordered matrix product must equal ``signs[k]`` times the identity.
    Construction verifies every constraint numerically; a corrupted
    problem never comes into existence.
    """

    observables: tuple[np.ndarray, ...] = field(repr=False)
    labels: tuple[str, ...]
    contexts: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        mats = tuple(la.require_hermitian(m) for m in self.observables)
        object.__setattr__(self, "observables", mats)
        n = len(mats)
        if len(self.labels) != n:
            raise ValueError(f"{n} observables but {len(self.labels)} labels")
        if len(self.contexts) != len(self.signs):
            raise ValueError(
                f"{len(self.contexts)} contexts but {len(self.signs)} signs"
            )
        dim = mats[0].shape[0]
        eye = np.eye(dim)
        for label, m in zip(self.labels, mats):
            if m.shape[0] != dim:
                raise la.DimensionError("observables live on different spaces")
            defect = float(np.abs(m @ m - eye).max())
            if defect >= CONSTRAINT_TOL:
                raise ValueError(
                    f"observable {label!r} does not square to I (defect {defect:.3e})"
                )
        for ctx, sign in zip(self.contexts, self.signs):
            if sign not in (-1, 1):
                raise ValueError(f"context sign must be +-1, got {sign!r}")
            if any(i < 0 or i >= n for i in ctx):
                raise ValueError(f"context {ctx!r} references unknown observables")
            for i, j in itertools.combinations(ctx, 2):
                defect = float(np.abs(la.commutator(mats[i], mats[j])).max())
                if defect >= CONSTRAINT_TOL:
                    raise ValueError(
                        f"context {ctx!r}: {self.labels[i]!r} and "
                        f"{self.labels[j]!r} do not commute (defect {defect:.3e})"
                    )
            product = eye.astype(complex)
            for i in ctx:
                product = product @ mats[i]
            defect = float(np.abs(product - sign * eye).max())
            if defect >= CONSTRAINT_TOL:
                raise ValueError(
                    f"context {ctx!r} product is not {sign:+d} I (defect {defect:.3e})"
                )

    @property
    def size(self) -> int:
        return len(self.observables)

    def context_labels(self) -> list[tuple[str, ...]]:
        return [tuple(self.labels[i] for i in ctx) for ctx in self.contexts]

    def assignment_satisfies(self, values: dict[str, int]) -> bool:
        """Exact integer check of one global +-1 assignment."""
        for ctx, sign in zip(self.contexts, self.signs):
            prod = 1
            for i in ctx:
                prod *= values[self.labels[i]]
            if prod != sign:
                return False
        return True

    def without_context(self, index: int) -> "ValueAssignmentProblem":
        """Copy of the problem with one constraint removed."""
        if not 0 <= index < len(self.contexts):
            raise ValueError(f"no context with index {index}")
        keep = [k for k in range(len(self.contexts)) if k != index]
        return ValueAssignmentProblem(
            observables=self.observables,
            labels=self.labels,
            contexts=tuple(self.contexts[k] for k in keep),
            signs=tuple(self.signs[k] for k in keep),
        )


def mermin_peres_square() -> ValueAssignmentProblem:
    """The 3 x 3 two-spin observable square with its six product constraints.

    Rows multiply to +I; the first two columns multiply to +I and the
    third to -I.  All nine observables square to I and commute within
    each row and column, which the constructor re-verifies numerically.
    """
    eye = np.eye(2, dtype=complex)
    x, y, z = la.SIGMA_X, la.SIGMA_Y, la.SIGMA_Z
    grid = [
        ("XI", la.tensor(x, eye)), ("IX", la.tensor(eye, x)), ("XX", la.tensor(x, x)),
        ("IY", la.tensor(eye, y)), ("YI", la.tensor(y, eye)), ("YY", la.tensor(y, y)),
        ("XY", la.tensor(x, y)), ("YX", la.tensor(y, x)), ("ZZ", la.tensor(z, z)),
    ]
    labels = tuple(name for name, _ in grid)
    mats = tuple(m for _, m in grid)
    contexts = (
        (0, 1, 2), (3, 4, 5), (6, 7, 8),   # rows
        (0, 3, 6), (1, 4, 7), (2, 5, 8),   # columns
    )
    signs = (1, 1, 1, 1, 1, -1)
    return ValueAssignmentProblem(
        observables=mats, labels=labels, contexts=contexts, signs=signs
    )


@dataclass(frozen=True)
class AssignmentSearchResult:
    """Outcome of exhaustive search over global +-1 assignments."""

    cases_checked: int
    satisfying_count: int
    example: dict[str, int] | None


def search_noncontextual_assignment(
    problem: ValueAssignmentProblem,
) -> AssignmentSearchResult:
    """Try every global +-1 assignment against all constraints.

    Arithmetic is exact integer multiplication, so the verdict carries no
    numerical tolerance.  Problems above 2^20 cases are refused.
    """
    n = problem.size
    if n > _SEARCH_MAX_OBSERVABLES:
        raise ValueError(
            f"search space 2^{n} exceeds the 2^{_SEARCH_MAX_OBSERVABLES} cap"
        )
    count = 0
    example: dict[str, int] | None = None
    cases = 0
    for values in itertools.product((1, -1), repeat=n):
        cases += 1
        assignment = dict(zip(problem.labels, values))
        if problem.assignment_satisfies(assignment):
            count += 1
            if example is None:
                example = assignment
    return AssignmentSearchResult(
        cases_checked=cases, satisfying_count=count, example=example
    )


@dataclass(frozen=True)
class ParityContradictionReport:
    """Numerical and sign-arithmetic content of the three-spin argument."""

    constraint_labels: tuple[str, ...]
    eigenvalues: tuple[int, ...]
    residuals: tuple[float, ...]
    forced_product: int
    constraint_product: int

    @property
    def state_is_joint_eigenvector(self) -> bool:
        return all(r < 1e-12 for r in self.residuals)

    @property
    def contradiction(self) -> bool:
        return self.forced_product != self.constraint_product


def ghz_contradiction() -> ParityContradictionReport:
    """Four product observables pin the three-spin state, yet no local
    +-1 values can reproduce their signs.

    The state (|000> + |111>)/sqrt(2) is a +1 eigenvector of X X X and a
    -1 eigenvector of X Y Y, Y X Y and Y Y X.  Multiplying the four
    constraints squares every local value, forcing product +1 against
    the observed -1.
    """
    psi = make_ghz().amplitudes
    x, y = la.SIGMA_X, la.SIGMA_Y
    combos = (
        ("XXX", (x, x, x), 1),
        ("XYY", (x, y, y), -1),
        ("YXY", (y, x, y), -1),
        ("YYX", (y, y, x), -1),
    )
    labels = []
    eigenvalues = []
    residuals = []
    for name, (m1, m2, m3), sign in combos:
        op = la.tensor(la.tensor(m1, m2), m3)
        residual = float(np.linalg.norm(op @ psi - sign * psi))
        labels.append(name)
        eigenvalues.append(sign)
        residuals.append(residual)
    forced = 1  # every local value appears an even number of times
    observed = int(np.prod(eigenvalues))
    return ParityContradictionReport(
        constraint_labels=tuple(labels),
        eigenvalues=tuple(eigenvalues),
        residuals=tuple(residuals),
        forced_product=forced,
        constraint_product=observed,
    )


@dataclass(frozen=True)
class ValueDependenceReport:
    """A-statistics and state changes under three compatible preparations.

    Because B and C each commute with A, the three marginal
    A-distributions agree identically; ``max_shift`` records the largest
    numerical residue of that identity.  What the partner choice does
    change is the prepared state itself: ``preparation_distances`` holds
    the pairwise trace distances between the plain, after-B and after-C
    states, which are generally far from zero.  A single run's A-value
    therefore cannot be fixed independently of the partner context even
    though no marginal statistic betrays the choice.
    """

    distribution_plain: dict[float, float]
    distribution_after_b: dict[float, float]
    distribution_after_c: dict[float, float]
    max_shift: float
    distributions_agree: bool
    preparation_distances: dict[str, float]

    @property
    def preparations_differ(self) -> bool:
        return max(self.preparation_distances.values()) > 1e-9


def value_dependence_demo(
    w, a: Observable, b: Observable, c: Observable, tol: float = 1e-9
) -> ValueDependenceReport:
    """Probe how measuring B or C first affects a later A measurement.

    Requires [A, B] = 0 and [A, C] = 0 but [B, C] != 0.  Compares the
    A-outcome distributions of three preparations (the state directly,
    after a non-selective B measurement, after a non-selective C
    measurement) and the prepared states themselves.
    """
    rho = as_density(w)
    for label, first, second in (("A,B", a, b), ("A,C", a, c)):
        defect = float(np.abs(la.commutator(first.matrix, second.matrix)).max())
        if defect >= tol:
            raise ValueError(
                f"[{label}] must vanish, max entry {defect:.3e}"
            )
    bc = float(np.abs(la.commutator(b.matrix, c.matrix)).max())
    if bc < tol:
        raise ValueError(
            "B and C commute; the comparison needs incompatible partners"
        )

    def distribution(state: DensityOperator) -> dict[float, float]:
        return {
            value: float(np.trace(state.matrix @ p).real)
            for value, p in zip(a.spectrum.eigenvalues, a.spectrum.projectors)
        }

    after_b_state = sequential_luders(rho, [b])
    after_c_state = sequential_luders(rho, [c])
    plain = distribution(rho)
    after_b = distribution(after_b_state)
    after_c = distribution(after_c_state)
    shift = max(
        max(abs(plain[k] - after_b[k]) for k in plain),
        max(abs(plain[k] - after_c[k]) for k in plain),
        max(abs(after_b[k] - after_c[k]) for k in plain),
    )
    distances = {
        "plain_vs_after_b": la.trace_distance(rho.matrix, after_b_state.matrix),
        "plain_vs_after_c": la.trace_distance(rho.matrix, after_c_state.matrix),
        "after_b_vs_after_c": la.trace_distance(
            after_b_state.matrix, after_c_state.matrix
        ),
    }
    return ValueDependenceReport(
        distribution_plain=plain,
        distribution_after_b=after_b,
        distribution_after_c=after_c,
        max_shift=shift,
        distributions_agree=shift < tol,
        preparation_distances=distances,
    )
