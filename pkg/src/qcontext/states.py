"""Pure and mixed states of compound systems: Schmidt structure, reduced
states, total spin, and the link between interaction and entanglement.

States live on tensor-product spaces ordered subsystem 1 (x) subsystem 2,
with row-major composite indexing: amplitude ``i * d2 + j`` belongs to the
product basis vector |i> (x) |j>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .linalg import DimensionError

# Norm / trace of a state must sit within this of 1.
NORMALIZATION_TOL = 1e-10

# Density operator eigenvalues may undershoot zero by at most this.
POSITIVITY_TOL = 1e-9

# Schmidt coefficients below this count as zero when ranking.
SCHMIDT_RANK_TOL = 1e-8

# Residual threshold for recognising H = H1 x I + I x H2.
NONINTERACTION_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    """Unit vector on a finite-dimensional Hilbert space."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.size < 1 or a.size > la.MAX_DIM:
            raise DimensionError(
                f"state dimension {a.size} outside supported range 1..{la.MAX_DIM}"
            )
        if not np.all(np.isfinite(a.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"state is not normalised: |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        """Rank-one density matrix |psi><psi|."""
        a = self.amplitudes
        return np.outer(a, a.conj())

    def to_density(self) -> "DensityOperator":
        return DensityOperator(self.projector())

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator.

    Validation runs at construction: Hermiticity within 1e-9 per entry,
    trace within 1e-10 of one, eigenvalues above -1e-9.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = la.require_hermitian(self.matrix)
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"density operator trace {tr!r} is not 1")
        eigenvalues, _ = la.jacobi_eigh(m)
        low = float(eigenvalues.min())
        if low < -POSITIVITY_TOL:
            raise ValueError(
                f"density operator has negative eigenvalue {low:.3e}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        """Tr(W^2); equals 1 exactly for pure states."""
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.purity() - 1.0) < tol

    def expectation(self, observable_matrix) -> float:
        """Tr(W A) for a Hermitian A."""
        a = la.require_hermitian(observable_matrix)
        if a.shape[0] != self.dim:
            raise DimensionError(
                f"observable dimension {a.shape[0]} does not match state {self.dim}"
            )
        return float(np.trace(self.matrix @ a).real)


def as_density(state) -> DensityOperator:
    """Accept a PureState, DensityOperator, vector or matrix."""
    if isinstance(state, DensityOperator):
        return state
    if isinstance(state, PureState):
        return state.to_density()
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        return PureState(a).to_density()
    return DensityOperator(a)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Biorthogonal expansion psi = sum_i c_i u_i (x) v_i.

    Only coefficients above ``SCHMIDT_RANK_TOL`` are kept; they descend and
    their squares sum to one.  Each left vector carries the deterministic
    phase convention (largest-magnitude component real positive), with the
    matching right vector absorbing the compensating phase.
    """

    dims: tuple[int, int]
    coefficients: tuple[float, ...]
    left_basis: tuple[np.ndarray, ...] = field(repr=False)
    right_basis: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def coefficient(self, i: int) -> float:
        """i-th coefficient, zero past the rank."""
        return self.coefficients[i] if i < len(self.coefficients) else 0.0

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(self.dims[0] * self.dims[1], dtype=complex)
        for c, u, v in zip(self.coefficients, self.left_basis, self.right_basis):
            out += c * np.kron(u, v)
        return out


def schmidt(psi, dims: tuple[int, int]) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite pure state.

    The amplitude matrix M (shape d1 x d2) is diagonalised through the
    Hermitian embedding [[0, M], [M^dagger, 0]], whose positive eigenvalues
    are the Schmidt coefficients.  This reuses the Jacobi kernel and keeps
    absolute accuracy ~1e-12 on coefficients near zero, where squaring
    into a Gram matrix would drown them in rounding noise.
    """
    state = psi if isinstance(psi, PureState) else PureState(psi)
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 < 1 or d2 < 1 or d1 * d2 != state.dim:
        raise DimensionError(
            f"dims {d1}x{d2} require state dimension {d1 * d2}, got {state.dim}"
        )
    m = state.amplitudes.reshape(d1, d2)
    n = d1 + d2
    b = np.zeros((n, n), dtype=complex)
    b[:d1, d1:] = m
    b[d1:, :d1] = m.conj().T
    eigenvalues, vectors = la.jacobi_eigh(b)

    pairs = [
        (float(eigenvalues[i]), vectors[:, i])
        for i in range(n)
        if eigenvalues[i] > SCHMIDT_RANK_TOL
    ]
    pairs.sort(key=lambda t: -t[0])

    coefficients: list[float] = []
    left: list[np.ndarray] = []
    right: list[np.ndarray] = []
    for c, w in pairs:
        u = w[:d1] * np.sqrt(2.0)
        # The embedding pairs u with the conjugate of the kron factor:
        # for m = sum c u v^T the +c eigenvector is (u, v*)/sqrt(2).
        v = np.conj(w[d1:]) * np.sqrt(2.0)
        u = u / np.linalg.norm(u)
        v = v / np.linalg.norm(v)
        # Move the pair's arbitrary phase onto the right factor so the
        # left vector obeys the global convention.
        k = int(np.argmax(np.abs(u)))
        z = u[k]
        phase = z.conj() / abs(z)
        coefficients.append(c)
        left.append(u * phase)
        right.append(v * phase.conj())
    return SchmidtDecomposition(
        dims=(d1, d2),
        coefficients=tuple(coefficients),
        left_basis=tuple(left),
        right_basis=tuple(right),
    )


def is_product(psi, dims: tuple[int, int]):
    """Decide whether a bipartite pure state factorises.

    Returns ``(True, (factor1, factor2))`` when the Schmidt rank is one,
    else ``(False, None)``.
    """
    dec = schmidt(psi, dims)
    if dec.rank == 1:
        return True, (PureState(dec.left_basis[0]), PureState(dec.right_basis[0]))
    return False, None


def reduced_state(w, dims: tuple[int, int], keep: int) -> DensityOperator:
    """Reduced density operator of one subsystem of a compound state."""
    rho = as_density(w)
    return DensityOperator(la.partial_trace(rho.matrix, dims, keep))


def basis_state(dim: int, index: int) -> PureState:
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside 0..{dim - 1}")
    a = np.zeros(dim, dtype=complex)
    a[index] = 1.0
    return PureState(a)


def product_basis_state(i: int, j: int) -> PureState:
    """Two-qubit product state |i> (x) |j>."""
    a = np.kron(basis_state(2, i).amplitudes, basis_state(2, j).amplitudes)
    return PureState(a)


def make_singlet() -> PureState:
    """Two-spin singlet (|01> - |10>) / sqrt(2)."""
    a = np.zeros(4, dtype=complex)
    a[1] = 1.0 / np.sqrt(2.0)
    a[2] = -1.0 / np.sqrt(2.0)
    return PureState(a)


def make_ghz() -> PureState:
    """Three-qubit state (|000> + |111>) / sqrt(2)."""
    a = np.zeros(8, dtype=complex)
    a[0] = 1.0 / np.sqrt(2.0)
    a[7] = 1.0 / np.sqrt(2.0)
    return PureState(a)


def total_spin_squared_matrix() -> np.ndarray:
    """(S1 + S2)^2 for two spin-1/2 systems, in units with hbar = 1."""
    eye = np.eye(2, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for pauli in (la.SIGMA_X, la.SIGMA_Y, la.SIGMA_Z):
        s = 0.5 * (la.tensor(pauli, eye) + la.tensor(eye, pauli))
        out += s @ s
    return out


def total_spin_squared(w) -> float:
    """Expectation of total spin squared in a two-spin state.

    Zero only in the singlet; the value separates entangled states from
    mixtures that share the same reduced states.
    """
    rho = as_density(w)
    if rho.dim != 4:
        raise DimensionError(f"total spin is defined for dimension 4, got {rho.dim}")
    return rho.expectation(total_spin_squared_matrix())


def is_noninteracting(h, dims: tuple[int, int]):
    """Test whether H = H1 (x) I + I (x) H2 and recover the parts.

    The candidate split is fixed by convention: H1 carries the full trace
    of H and H2 is traceless.  Returns ``(True, (h1, h2))`` when the
    reassembled sum matches H within 1e-9 per entry, else ``(False, None)``.
    """
    a = la.require_hermitian(h)
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 * d2 != a.shape[0]:
        raise DimensionError(
            f"dims {d1}x{d2} do not factor operator dimension {a.shape[0]}"
        )
    total = float(np.trace(a).real)
    h1 = la.partial_trace(a, (d1, d2), keep=1) / d2
    h2 = (la.partial_trace(a, (d1, d2), keep=2) - (total / d2) * np.eye(d2)) / d1
    recon = la.tensor(h1, np.eye(d2)) + la.tensor(np.eye(d1), h2)
    residual = float(np.abs(a - recon).max())
    if residual < NONINTERACTION_TOL:
        return True, (h1, h2)
    return False, None


def evolve_pure_state(h, t: float, psi) -> PureState:
    """psi -> exp(-i H t) psi, through the spectral resolution of H."""
    state = psi if isinstance(psi, PureState) else PureState(psi)
    u = la.evolution_operator(h, t)
    if u.shape[0] != state.dim:
        raise DimensionError(
            f"generator dimension {u.shape[0]} does not match state {state.dim}"
        )
    return PureState(u @ state.amplitudes)


def coupled_spins_hamiltonian(coupling: float) -> np.ndarray:
    """Two-spin generator sigma_z x I + I x sigma_z + g sigma_x x sigma_x."""
    eye = np.eye(2, dtype=complex)
    return (
        la.tensor(la.SIGMA_Z, eye)
        + la.tensor(eye, la.SIGMA_Z)
        + coupling * la.tensor(la.SIGMA_X, la.SIGMA_X)
    )


@dataclass(frozen=True)
class SchmidtTracePoint:
    """Schmidt data of the evolving state at one instant."""

    time: float
    coefficients: tuple[float, ...]
    rank: int


def entangling_evolution_demo(
    coupling: float, t_final: float, steps: int = 10
) -> list[SchmidtTracePoint]:
    """Evolve |00> under the coupled-spin generator and track Schmidt data.

    Without coupling the product structure survives (rank stays one, the
    second coefficient sits at rounding level); any nonzero coupling
    generically entangles the pair.  Each point is propagated directly
    from t = 0 so errors do not accumulate across steps.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    h = coupled_spins_hamiltonian(coupling)
    psi0 = product_basis_state(0, 0)
    out: list[SchmidtTracePoint] = []
    for k in range(steps + 1):
        t = t_final * k / steps
        psi_t = evolve_pure_state(h, t, psi0)
        dec = schmidt(psi_t, (2, 2))
        coeffs = tuple(dec.coefficient(i) for i in range(2))
        out.append(SchmidtTracePoint(time=t, coefficients=coeffs, rank=dec.rank))
    return out
