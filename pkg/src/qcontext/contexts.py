"""Measurement contexts and contextual states.

A context pairs a state with a measured observable.  Conditioning on the
measurement (without reading the outcome) replaces the state W by

    W_A = sum_i P_i W P_i

over the observable's spectral projectors.  The conditioned state is
diagonal in the measurement basis, reproduces every statistic of
observables compatible with A, and generally differs between
incompatible contexts.  The routines here compute that conditioning, the
conditions under which the conditioned state faithfully represents the
original one, and the Boolean structure a single context carries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .linalg import DimensionError
from .states import DensityOperator, as_density

# A conditioned state must commute with its observable this tightly.
CONTEXT_COMMUTE_TOL = 1e-9

# Expansion amplitudes below this mark an eigenvector as absent from the
# support of the state.
SUPPORT_TOL = 1e-8

# Probabilities must obey the usual axioms within this.
PROBABILITY_TOL = 1e-9

# Largest number of distinct eigenvalues the lattice check will expand
# into subsets (2^k elements, all pairs compared).
_LATTICE_MAX_LEVELS = 8


@dataclass(frozen=True)
class Observable:
    """Hermitian operator with its spectral resolution and a label."""

    matrix: np.ndarray = field(repr=False)
    spectrum: la.SpectralDecomposition = field(repr=False)
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def non_degenerate(self) -> bool:
        return all(m == 1 for m in self.spectrum.multiplicities)

    def eigenbasis(self) -> list[tuple[float, np.ndarray]]:
        """(eigenvalue, unit vector) pairs; defined only without degeneracy."""
        if not self.non_degenerate:
            raise ValueError(
                f"observable {self.label!r} is degenerate; no unique eigenbasis"
            )
        return [
            (a, la.rank_one_vector(p))
            for a, p in zip(self.spectrum.eigenvalues, self.spectrum.projectors)
        ]


def observable(matrix, label: str = "") -> Observable:
    """Validate a Hermitian matrix and attach its spectral resolution."""
    m = la.require_hermitian(matrix)
    return Observable(matrix=m, spectrum=la.spectral_decompose(m), label=label)


@dataclass(frozen=True)
class MeasurementContext:
    """A state together with the observable measured on it."""

    initial_state: DensityOperator
    observable: Observable

    def __post_init__(self):
        if self.initial_state.dim != self.observable.dim:
            raise DimensionError(
                f"state dimension {self.initial_state.dim} does not match "
                f"observable dimension {self.observable.dim}"
            )


def context(state, obs: Observable) -> MeasurementContext:
    return MeasurementContext(initial_state=as_density(state), observable=obs)


@dataclass(frozen=True)
class ContextualState:
    """State conditioned on a measurement context, with outcome weights."""

    state: DensityOperator
    context: MeasurementContext
    outcome_probabilities: dict[float, float]

    def __post_init__(self):
        defect = float(
            np.abs(la.commutator(self.state.matrix, self.context.observable.matrix)).max()
        )
        if defect >= CONTEXT_COMMUTE_TOL:
            raise ValueError(
                f"conditioned state fails to commute with its observable "
                f"(max |[W_A, A]| = {defect:.3e})"
            )
        probs = list(self.outcome_probabilities.values())
        if any(p < -PROBABILITY_TOL or p > 1.0 + PROBABILITY_TOL for p in probs):
            raise ValueError("outcome probabilities outside [0, 1]")
        total = sum(probs)
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"outcome probabilities sum to {total!r}, not 1")


def luders_nonselective(ctx: MeasurementContext) -> ContextualState:
    """Condition the context's state on its measurement, keeping no record.

    W -> sum_i P_i W P_i over the spectral projectors of the observable.
    The trace is preserved and each outcome keeps its original weight
    p_i = Tr(W P_i).
    """
    w = ctx.initial_state.matrix
    out = np.zeros_like(w)
    probabilities: dict[float, float] = {}
    for a, p in zip(ctx.observable.spectrum.eigenvalues, ctx.observable.spectrum.projectors):
        out += p @ w @ p
        probabilities[a] = float(np.trace(w @ p).real)
    return ContextualState(
        state=DensityOperator(out),
        context=ctx,
        outcome_probabilities=probabilities,
    )


@dataclass(frozen=True)
class RepresentativenessReport:
    """Checks that the conditioned state's expansion is faithful.

    For a pure state and a non-degenerate observable the conditioned
    state expands over the observable's eigenvectors; the expansion is
    representative when those vectors (i) really are eigenvectors,
    (ii) are mutually orthogonal, and (iii) all carry nonzero amplitude
    in the original state.  Eigenvectors with no amplitude are excluded
    from the support and listed separately.
    """

    eigenvector_condition: bool
    orthogonality_condition: bool
    support_condition: bool
    support_eigenvalues: tuple[float, ...]
    excluded_eigenvalues: tuple[float, ...]

    @property
    def representative(self) -> bool:
        return (
            self.eigenvector_condition
            and self.orthogonality_condition
            and self.support_condition
        )


def check_representative(cs: ContextualState, tol: float = 1e-9) -> RepresentativenessReport:
    """Verify the faithfulness conditions for a conditioned state.

    Raises
    ------
    ValueError
        If the initial state is mixed or the observable degenerate; the
        conditions are stated only for the pure, non-degenerate case.
    """
    ctx = cs.context
    w = ctx.initial_state
    if not w.is_pure() or not ctx.observable.non_degenerate:
        raise ValueError(
            "representativeness conditions stated only for pure/non-degenerate case"
        )
    psi = la.rank_one_vector(w.matrix)
    a_matrix = ctx.observable.matrix
    basis = ctx.observable.eigenbasis()

    support: list[tuple[float, np.ndarray]] = []
    excluded: list[float] = []
    for value, vec in basis:
        amplitude = abs(np.vdot(vec, psi))
        if amplitude > SUPPORT_TOL:
            support.append((value, vec))
        else:
            excluded.append(value)

    eigencond = all(
        float(np.linalg.norm(a_matrix @ vec - value * vec)) < tol
        for value, vec in support
    )
    orthocond = all(
        abs(np.vdot(u, v)) < tol
        for (_, u), (_, v) in itertools.combinations(support, 2)
    )
    supportcond = all(abs(np.vdot(vec, psi)) > SUPPORT_TOL for _, vec in support)
    return RepresentativenessReport(
        eigenvector_condition=eigencond,
        orthogonality_condition=orthocond,
        support_condition=supportcond,
        support_eigenvalues=tuple(value for value, _ in support),
        excluded_eigenvalues=tuple(excluded),
    )


@dataclass(frozen=True)
class EquivalenceResult:
    """Expectation of a probe before and after conditioning."""

    expectation_initial: float
    expectation_conditioned: float

    @property
    def delta(self) -> float:
        return abs(self.expectation_initial - self.expectation_conditioned)


def statistical_equivalence(
    ctx: MeasurementContext, probe: Observable | None = None
) -> EquivalenceResult:
    """Compare Tr(W B) with Tr(W_A B) for a probe observable B.

    With no probe the measured observable itself is used, for which the
    two expectations always coincide.  Any probe compatible with the
    measured observable keeps the agreement; an incompatible probe can
    witness the difference between W and W_A.
    """
    b = probe if probe is not None else ctx.observable
    if b.dim != ctx.observable.dim:
        raise DimensionError(
            f"probe dimension {b.dim} does not match context {ctx.observable.dim}"
        )
    before = ctx.initial_state.expectation(b.matrix)
    after = luders_nonselective(ctx).state.expectation(b.matrix)
    return EquivalenceResult(expectation_initial=before, expectation_conditioned=after)


def contexts_distance(w, a: Observable, b: Observable) -> float:
    """Trace distance between the conditionings of one state on two contexts.

    (1/2) Tr |W_A - W_B|; zero when the observables share an eigenbasis,
    strictly positive when the contexts genuinely differ on the state.
    """
    rho = as_density(w)
    wa = luders_nonselective(context(rho, a)).state.matrix
    wb = luders_nonselective(context(rho, b)).state.matrix
    return la.trace_distance(wa, wb)


def sequential_luders(w, sequence: list[Observable]) -> DensityOperator:
    """Apply non-selective conditionings in order, left to right."""
    rho = as_density(w)
    for obs in sequence:
        rho = luders_nonselective(context(rho, obs)).state
    return rho


@dataclass(frozen=True)
class BooleanLatticeReport:
    """Closure and probability checks for one context's event algebra."""

    element_count: int
    projectors_orthogonal: bool
    complete: bool
    closed_under_meet: bool
    closed_under_join: bool
    closed_under_complement: bool
    probabilities_consistent: bool
    max_defect: float

    @property
    def all_hold(self) -> bool:
        return (
            self.projectors_orthogonal
            and self.complete
            and self.closed_under_meet
            and self.closed_under_join
            and self.closed_under_complement
            and self.probabilities_consistent
        )


def boolean_lattice_check(
    a: Observable,
    states: list[DensityOperator] | None = None,
    tol: float = 1e-9,
) -> BooleanLatticeReport:
    """Expand the event algebra generated by one observable and verify it.

    The spectral projectors generate 2^k events (k distinct eigenvalues);
    the report confirms the generators are orthogonal and complete, that
    meet, join and complement stay inside the set, and that event
    probabilities behave additively on a batch of states (a fixed seeded
    batch of twenty when none is supplied).
    """
    projectors = list(a.spectrum.projectors)
    k = len(projectors)
    if k > _LATTICE_MAX_LEVELS:
        raise DimensionError(
            f"lattice expansion supports at most {_LATTICE_MAX_LEVELS} distinct "
            f"eigenvalues, observable has {k}"
        )
    dim = a.dim
    defect = 0.0

    orthogonal = True
    for i in range(k):
        for j in range(k):
            prod = projectors[i] @ projectors[j]
            target = projectors[i] if i == j else np.zeros_like(prod)
            err = float(np.abs(prod - target).max())
            defect = max(defect, err)
            if err >= tol:
                orthogonal = False
    total = sum(projectors)
    err = float(np.abs(total - np.eye(dim)).max())
    defect = max(defect, err)
    complete = err < tol

    subsets = list(itertools.product((0, 1), repeat=k))
    elements = {
        bits: sum(
            (projectors[i] for i in range(k) if bits[i]),
            np.zeros((dim, dim), dtype=complex),
        )
        for bits in subsets
    }

    meet_ok = join_ok = True
    for s in subsets:
        for t in subsets:
            meet_bits = tuple(x & y for x, y in zip(s, t))
            join_bits = tuple(x | y for x, y in zip(s, t))
            meet = elements[s] @ elements[t]
            err = float(np.abs(meet - elements[meet_bits]).max())
            defect = max(defect, err)
            if err >= tol:
                meet_ok = False
            join = elements[s] + elements[t] - meet
            err = float(np.abs(join - elements[join_bits]).max())
            defect = max(defect, err)
            if err >= tol:
                join_ok = False
    complement_ok = True
    for s in subsets:
        comp_bits = tuple(1 - x for x in s)
        err = float(np.abs((np.eye(dim) - elements[s]) - elements[comp_bits]).max())
        defect = max(defect, err)
        if err >= tol:
            complement_ok = False

    if states is None:
        rng = np.random.default_rng(0)
        states = []
        for _ in range(20):
            g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            m = g @ g.conj().T
            states.append(DensityOperator(m / np.trace(m).real))
    probs_ok = True
    for rho in states:
        values = {
            bits: float(np.trace(rho.matrix @ elements[bits]).real)
            for bits in subsets
        }
        for bits, p in values.items():
            if p < -tol or p > 1.0 + tol:
                probs_ok = False
            defect = max(defect, max(-p, p - 1.0, 0.0))
        atoms = [values[tuple(1 if i == j else 0 for i in range(k))] for j in range(k)]
        err = abs(sum(atoms) - 1.0)
        defect = max(defect, err)
        if err >= tol:
            probs_ok = False
        # additivity over disjoint events
        for s in subsets:
            for t in subsets:
                if all(x & y == 0 for x, y in zip(s, t)):
                    union = tuple(x | y for x, y in zip(s, t))
                    err = abs(values[union] - values[s] - values[t])
                    defect = max(defect, err)
                    if err >= tol:
                        probs_ok = False

    return BooleanLatticeReport(
        element_count=len(subsets),
        projectors_orthogonal=orthogonal,
        complete=complete,
        closed_under_meet=meet_ok,
        closed_under_join=join_ok,
        closed_under_complement=complement_ok,
        probabilities_consistent=probs_ok,
        max_defect=defect,
    )
