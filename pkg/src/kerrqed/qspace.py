"""Truncated operator algebra on small tensor-product Hilbert spaces.

Dense matrices throughout; every problem in this library fits in a few
thousand dimensions.  Hamiltonian entries are angular frequencies (rad/s),
observables and states are dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import HermiticityError

HERMITICITY_RTOL = 1e-12
RECONSTRUCTION_RTOL = 1e-10


@dataclass(frozen=True)
class SpinHalf:
    """Two-level factor."""

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Boson:
    """Bosonic mode truncated at photon number n_max (dimension n_max + 1)."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"Boson cutoff must be >= 1, got {self.n_max}")

    @property
    def dim(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class Charge:
    """Charge basis n in [center - n_max, center + n_max] (dimension 2 n_max + 1)."""

    n_max: int
    center: int = 0

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"Charge cutoff must be >= 1, got {self.n_max}")

    @property
    def dim(self) -> int:
        return 2 * self.n_max + 1

    @property
    def values(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1) + self.center


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered tensor product of factors."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("HilbertSpace needs at least one factor")

    @property
    def dim(self) -> int:
        d = 1
        for f in self.factors:
            d *= f.dim
        return d

    def factor_dims(self):
        return tuple(f.dim for f in self.factors)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex square matrix with its Hilbert-space structure."""

    space: HilbertSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if m.shape[0] != self.space.dim:
            raise ValueError(
                f"matrix dimension {m.shape[0]} does not match space dimension {self.space.dim}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class EigenSystem:
    """Ascending real eigenvalues and the unitary of column eigenvectors."""

    energies: np.ndarray
    vectors: np.ndarray


def hermiticity_residual(m: np.ndarray) -> float:
    """Relative Frobenius-norm deviation from Hermiticity."""
    norm = np.linalg.norm(m)
    if norm == 0.0:
        return 0.0
    return np.linalg.norm(m - m.conj().T) / norm


def require_hermitian(m: np.ndarray, rtol: float = HERMITICITY_RTOL, what: str = "operator"):
    res = hermiticity_residual(m)
    if res > rtol:
        raise HermiticityError(f"{what} is not Hermitian: relative residual {res:.3e} > {rtol:.1e}")


def annihilation(n_max: int) -> OperatorMatrix:
    """Truncated annihilation operator a with a[n-1, n] = sqrt(n)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    d = n_max + 1
    a = np.diag(np.sqrt(np.arange(1, d)), k=1).astype(complex)
    return OperatorMatrix(HilbertSpace((Boson(n_max),)), a)


def number_operator(n_max: int) -> OperatorMatrix:
    a = annihilation(n_max).matrix
    return OperatorMatrix(HilbertSpace((Boson(n_max),)), a.conj().T @ a)


_PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def pauli(axis: str) -> OperatorMatrix:
    """Pauli matrix; convention pinned with sigma_y = [[0, -i], [i, 0]]."""
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    return OperatorMatrix(HilbertSpace((SpinHalf(),)), _PAULI[axis].copy())


def embed(op: OperatorMatrix, factor_index: int, space: HilbertSpace) -> OperatorMatrix:
    """Kronecker-embed a single-factor operator into the full space."""
    dims = space.factor_dims()
    if not 0 <= factor_index < len(dims):
        raise ValueError(f"factor_index {factor_index} out of range for {len(dims)} factors")
    if op.dim != dims[factor_index]:
        raise ValueError(
            f"operator dimension {op.dim} does not match factor dimension {dims[factor_index]}"
        )
    m = np.eye(1, dtype=complex)
    for i, d in enumerate(dims):
        block = op.matrix if i == factor_index else np.eye(d, dtype=complex)
        m = np.kron(m, block)
    return OperatorMatrix(space, m)


def eigendecompose(H: OperatorMatrix, rtol: float = HERMITICITY_RTOL) -> EigenSystem:
    """Full Hermitian eigendecomposition, energies ascending."""
    require_hermitian(H.matrix, rtol=rtol, what="eigendecompose input")
    energies, vectors = np.linalg.eigh(H.matrix)
    return EigenSystem(energies=energies, vectors=vectors)


def reduced_state(vector: np.ndarray, space: HilbertSpace, keep_index: int) -> np.ndarray:
    """Partial trace of |v><v| keeping a single factor."""
    v = np.asarray(vector, dtype=complex).ravel()
    if v.size != space.dim:
        raise ValueError(f"vector length {v.size} does not match space dimension {space.dim}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state vector not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    dims = space.factor_dims()
    psi = v.reshape(dims)
    psi = np.moveaxis(psi, keep_index, 0).reshape(dims[keep_index], -1)
    return psi @ psi.conj().T


def reduced_qubit_state(vector: np.ndarray, space: HilbertSpace) -> OperatorMatrix:
    """Trace out every boson factor of a pure state; 2x2 density matrix."""
    spin_indices = [i for i, f in enumerate(space.factors) if isinstance(f, SpinHalf)]
    if len(spin_indices) != 1:
        raise ValueError(f"space must contain exactly one SpinHalf factor, found {len(spin_indices)}")
    rho = reduced_state(vector, space, spin_indices[0])
    return OperatorMatrix(HilbertSpace((SpinHalf(),)), rho)


def require_density_matrix(rho: np.ndarray, what: str = "density matrix"):
    require_hermitian(rho, rtol=1e-10, what=what)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"{what} trace {tr} deviates from 1 beyond 1e-10")
    evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if evals.min() < -1e-10:
        raise ValueError(f"{what} has negative eigenvalue {evals.min():.3e}")


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def fidelity(rho1, rho2) -> float:
    """Uhlmann fidelity F = (tr sqrt(sqrt(r1) r2 sqrt(r1)))^2."""
    m1 = rho1.matrix if isinstance(rho1, OperatorMatrix) else np.asarray(rho1, dtype=complex)
    m2 = rho2.matrix if isinstance(rho2, OperatorMatrix) else np.asarray(rho2, dtype=complex)
    require_density_matrix(m1, "first density matrix")
    require_density_matrix(m2, "second density matrix")
    s1 = _psd_sqrt(m1)
    inner = _psd_sqrt(s1 @ m2 @ s1)
    f = float(np.trace(inner).real ** 2)
    return min(max(f, 0.0), 1.0)
