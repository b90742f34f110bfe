"""Reduced density matrices, Schmidt spectra, and bipartite purity.

Features:
- reduced density matrix of any proper qubit subset by tensor reshape
- purity in two algebraically equivalent forms: Frobenius norm of the
  reduced density matrix (Form 1) and the XOR-indexed amplitude quadruple
  sum (Form 2, the default fast path: no N_A x N_A matrix is built)
- Schmidt spectrum with explicit bookkeeping of numerical zeros
- normalized entanglement measures: spectral E_A and linear entropy L_A
- exact counts of the three purity monomial classes
- purity of uniform-modulus states straight from the phase vector

All purity paths agree within 1e-12 on normalized states; the quadruple
sums are compensated with math.fsum so results do not depend on summation
chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .bitspace import MAX_COUNT_QUBITS, QubitMask, as_mask, submasks
from .states import PolarState, PureState

__all__ = [
    "SCHMIDT_CUTOFF",
    "DensityMatrix",
    "SchmidtSpectrum",
    "reduced_density_matrix",
    "purity_form1",
    "purity_form2",
    "schmidt_spectrum",
    "entanglement_E",
    "linear_entropy_L",
    "bipartite_term_counts",
    "purity_uniform",
]

# Eigenvalues at or below this are reported as numerical zeros.
SCHMIDT_CUTOFF = 1e-12

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(eq=False, frozen=True)
class DensityMatrix:
    """Hermitian, trace-1, positive semidefinite matrix of a reduced state.

    Hermiticity and unit trace are checked at construction.  Positive
    semidefiniteness (no eigenvalue below -1e-10) costs a full eigensolve,
    so it is checked by validate() and by schmidt_spectrum rather than on
    every partial trace.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128, order="C")
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if float(np.max(np.abs(m - m.conj().T))) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        """tr(rho^2), equal to the squared Frobenius norm for Hermitian rho."""
        return float(np.vdot(self.entries, self.entries).real)

    def eigenvalues(self) -> np.ndarray:
        """Real eigenvalues in non-increasing order."""
        return np.linalg.eigvalsh(self.entries)[::-1]

    def validate(self) -> None:
        """Raise if any eigenvalue is below -1e-10."""
        w = float(np.min(np.linalg.eigvalsh(self.entries)))
        if w < -EIGEN_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {w:.3e}")


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Eigenvalues of a reduced density matrix, split at the zero cutoff.

    `values` holds the nonzero part, non-increasing, each in (0, 1];
    `zeros` retains the entries at or below SCHMIDT_CUTOFF (possibly tiny
    negatives within EIGEN_TOL).  All entries together sum to 1.
    """

    values: tuple[float, ...]
    zeros: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        combined = self.values + self.zeros
        if not self.values:
            raise ValueError("Schmidt spectrum must contain a nonzero part")
        if any(b > a for a, b in zip(combined, combined[1:])):
            raise ValueError("Schmidt values must be non-increasing")
        if self.values[-1] <= SCHMIDT_CUTOFF or self.values[0] > 1.0 + EIGEN_TOL:
            raise ValueError("nonzero Schmidt values must lie in (cutoff, 1]")
        if self.zeros and self.zeros[0] > SCHMIDT_CUTOFF:
            raise ValueError("zero-part entries must not exceed the cutoff")
        if abs(math.fsum(combined) - 1.0) > EIGEN_TOL:
            raise ValueError("Schmidt values must sum to 1")

    @property
    def all_values(self) -> tuple[float, ...]:
        return self.values + self.zeros

    def purity(self) -> float:
        return math.fsum(v * v for v in self.values)


def _proper_mask(A: Union[QubitMask, int], n: int) -> QubitMask:
    """Validate A as a nonempty proper subset of the n qubits."""
    mask = as_mask(A, n)
    if mask == 0 or mask == (1 << n) - 1:
        raise ValueError("bipartition requires a nonempty proper subset of the qubits")
    return QubitMask(mask, n)


def reduced_density_matrix(state: PureState, A: Union[QubitMask, int]) -> DensityMatrix:
    """Partial trace over the complement of A.

    Entry (l, l') is sum_m z at (l, m) times conj(z at (l', m)), the m sum
    running over the complement's sub-indices; computed as t t* for the
    amplitude tensor t reshaped to (sub-index of A) x (sub-index of Abar).
    """
    m = _proper_mask(A, state.n)
    axes = [i - 1 for i in m.qubits()] + [i - 1 for i in m.complement().qubits()]
    t = state.amplitudes.reshape((2,) * state.n).transpose(axes).reshape(1 << m.size, -1)
    return DensityMatrix(t @ t.conj().T)


def purity_form1(state: PureState, A: Union[QubitMask, int]) -> float:
    """tr(rho_A^2) through the explicit reduced density matrix."""
    return reduced_density_matrix(state, A).purity()


def purity_form2(state: PureState, A: Union[QubitMask, int]) -> float:
    """tr(rho_A^2) as the XOR-indexed quadruple sum over amplitudes.

    pi_A = sum over k, h of z_k z_{k xor h} conj(z_{k xor h_A})
    conj(z_{k xor h_Abar}), with h_A the A-part of h.  Never builds the
    reduced matrix; one compensated pass over the 2^n values of h.
    """
    m = _proper_mask(A, state.n)
    N = 1 << state.n
    z = state.amplitudes
    zc = z.conj()
    ks = np.arange(N, dtype=np.intp)
    parts = []
    for h in range(N):
        h_a = h & m.mask
        h_b = h ^ h_a
        term = z * z[ks ^ h] * zc[ks ^ h_a] * zc[ks ^ h_b]
        parts.append(float(np.sum(term).real))
    return math.fsum(parts)


def schmidt_spectrum(state: PureState, A: Union[QubitMask, int]) -> SchmidtSpectrum:
    """Non-increasing eigenvalues of rho_A, split at the zero cutoff.

    The nonzero part coincides with the nonzero part of the complement's
    spectrum.  Raises when an eigenvalue falls below -1e-10.
    """
    rho = reduced_density_matrix(state, A)
    w = np.linalg.eigvalsh(rho.entries)
    if float(w[0]) < -EIGEN_TOL:
        raise ValueError(f"reduced density matrix has negative eigenvalue {float(w[0]):.3e}")
    w = w[::-1]
    values = tuple(float(x) for x in w if x > SCHMIDT_CUTOFF)
    zeros = tuple(float(x) for x in w if x <= SCHMIDT_CUTOFF)
    return SchmidtSpectrum(values, zeros)


def entanglement_E(state: PureState, A: Union[QubitMask, int]) -> float:
    """Spectral entanglement measure N_A/(N_A-1) * (1 - max eigenvalue).

    0 exactly for separable bipartitions, 1 for maximally entangled ones
    (when A is not larger than its complement); always in [0, 1].
    """
    m = _proper_mask(A, state.n)
    n_a_dim = 1 << m.size
    lam_max = schmidt_spectrum(state, A).values[0]
    return (n_a_dim / (n_a_dim - 1)) * (1.0 - lam_max)


def linear_entropy_L(state: PureState, A: Union[QubitMask, int]) -> float:
    """Normalized linear entropy N_A/(N_A-1) * (1 - pi_A), in [0, 1]."""
    m = _proper_mask(A, state.n)
    n_a_dim = 1 << m.size
    return (n_a_dim / (n_a_dim - 1)) * (1.0 - purity_form2(state, A))


def bipartite_term_counts(n: int, n_a: int) -> tuple[int, int, int]:
    """Exact sizes of the three monomial classes in the purity sum.

    Returns (count of |z_k|^4 terms, count of |z_k|^2 |z_h|^2 cross terms,
    count of genuine quadruples); the three add up to 2^(2n).
    """
    if not 2 <= n <= MAX_COUNT_QUBITS:
        raise ValueError(f"qubit count must be in [2, {MAX_COUNT_QUBITS}], got {n}")
    if not 1 <= n_a <= n - 1:
        raise ValueError(f"subset size must be in [1, {n - 1}], got {n_a}")
    n_b = n - n_a
    c1 = 1 << n
    c2 = (1 << n) * ((1 << n_a) + (1 << n_b) - 2)
    c4 = (1 << n) * ((1 << n_a) - 1) * ((1 << n_b) - 1)
    return c1, c2, c4


def purity_uniform(p: PolarState, A: Union[QubitMask, int]) -> float:
    """Purity of a uniform-modulus state straight from its phases.

    pi_A = (N_A + N_Abar - 1)/N + (1/N^2) * sum over k, nonzero l in the
    A-part, nonzero m in the complement part, of Re(zeta_k
    conj(zeta_{k xor l}) zeta_{k xor l xor m} conj(zeta_{k xor m})).
    Requires all moduli equal to 1/sqrt(N) within 1e-12.
    """
    m = _proper_mask(A, p.n)
    if not p.is_uniform():
        raise ValueError("purity_uniform requires uniform moduli 1/sqrt(N)")
    n = p.n
    N = 1 << n
    n_a_dim = 1 << m.size
    n_b_dim = 1 << (n - m.size)
    zeta = p.phases
    zc = zeta.conj()
    ks = np.arange(N, dtype=np.intp)
    parts = []
    for l in submasks(m.mask):
        if l == 0:
            continue
        for mm in submasks(m.complement().mask):
            if mm == 0:
                continue
            term = zeta * zc[ks ^ l] * zeta[ks ^ l ^ mm] * zc[ks ^ mm]
            parts.append(float(np.sum(term).real))
    return (n_a_dim + n_b_dim - 1) / N + math.fsum(parts) / (N * N)
