"""Potential of multipartite entanglement: coupling machinery and evaluators.

Features:
- exact coupling coefficients: g_hat in two closed forms that agree
  exactly, the support-disjointness gated g, and the symmetrized
  four-index coupling Delta obtained by averaging over balanced
  bipartitions
- admissibility kernel q whose zero set is exactly the set of quadruples
  that contribute to the potential
- CouplingTable: precomputed nonzero (l, m, weight) triples with exact
  rational weights, float views for fast evaluation, and an integer
  rescaling that makes sign-vector energies exact
- the potential pi_ME in three equivalent forms (bipartition average,
  XOR-coupled quadruple sum, deficit form), a uniform-modulus fast path,
  and an exact rational evaluator on sign vectors
- exact monomial counts in closed form

Weights are exact fractions; floats enter only at evaluation time.  All
floating sums are compensated with math.fsum over deterministically
ordered contribution lists, so results are independent of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Optional, Union

import numpy as np

from .bitspace import (
    MAX_COUNT_QUBITS,
    MAX_QUBITS,
    balanced_bipartitions,
    binomial,
    multinomial,
    submasks,
    weight,
)
from .bipartite import purity_form2
from .states import PolarState, PureState, SignVector

__all__ = [
    "CouplingTable",
    "MonomialCounts",
    "g_hat",
    "g_hat_dual",
    "g",
    "coupling_delta",
    "admissible_q",
    "build_coupling_table",
    "coupling_row_sum",
    "pi_me_form1",
    "pi_me_form2",
    "pi_me_form4",
    "pi_me_uniform",
    "energy_uniform_exact",
    "avg_linear_entropy",
    "monomial_counts",
]


def _check_args(n: int, n_a: int) -> None:
    if not 2 <= n <= MAX_COUNT_QUBITS:
        raise ValueError(f"qubit count must be in [2, {MAX_COUNT_QUBITS}], got {n}")
    if not 1 <= n_a <= n - 1:
        raise ValueError(f"subset size must be in [1, {n - 1}], got {n_a}")


@lru_cache(maxsize=None)
def _g_hat_core(s: int, t: int, n: int, n_a: int) -> Fraction:
    num = binomial(n - s - t, n_a - s) + binomial(n - s - t, n_a - t)
    return Fraction(num, 2 * binomial(n, n_a))


def g_hat(s: int, t: int, n: int, n_a: int) -> Fraction:
    """Weight-pair coupling coefficient, averaged over size-n_a subsets.

    g_hat(s, t; n_a) = (1/2) C(n, n_a)^(-1) [C(n-s-t, n_a-s) +
    C(n-s-t, n_a-t)] with out-of-range binomials equal to zero.  Symmetric
    in (s, t); g_hat(0, 0) = 1.
    """
    _check_args(n, n_a)
    if s < 0 or t < 0:
        raise ValueError("weights s, t must be nonnegative")
    return _g_hat_core(s, t, n, n_a)


def g_hat_dual(s: int, t: int, n: int, n_a: int) -> Fraction:
    """Same coefficient through the inverse-multinomial closed form.

    (1/2) (s! t! (n-s-t)! / n!) [C(n_a, s) C(n-n_a, t) +
    C(n_a, t) C(n-n_a, s)], zero when s + t > n.  Agrees with g_hat
    exactly; kept as an independent closed form.
    """
    _check_args(n, n_a)
    if s < 0 or t < 0:
        raise ValueError("weights s, t must be nonnegative")
    if s + t > n:
        return Fraction(0)
    denom = multinomial(n, (s, t, n - s - t))
    num = binomial(n_a, s) * binomial(n - n_a, t) + binomial(n_a, t) * binomial(n - n_a, s)
    return Fraction(num, 2 * denom)


def g(a: int, b: int, n: int, n_a: int) -> Fraction:
    """Mask coupling g(a, b; n_a): zero on overlapping supports.

    g(a, b; n_a) = g_hat(|a|, |b|; n_a) when a and b are disjoint, else 0.
    """
    _check_args(n, n_a)
    if not (0 <= a < (1 << n) and 0 <= b < (1 << n)):
        raise ValueError(f"masks must lie in [0, 2^{n})")
    if a & b:
        return Fraction(0)
    return _g_hat_core(weight(a), weight(b), n, n_a)


def coupling_delta(k: int, k2: int, l: int, l2: int, n: int, n_a: int) -> Fraction:
    """Symmetrized four-index coupling through the mask function g.

    Delta(k, k'; l, l'; n_a) = g((k xor l) or (k' xor l'),
    (k xor l') or (k' xor l); n_a).  Symmetric under swapping k with k'
    and under exchanging the pair (k, k') with (l, l').
    """
    _check_args(n, n_a)
    hi = 1 << n
    if not all(0 <= x < hi for x in (k, k2, l, l2)):
        raise ValueError(f"basis labels must lie in [0, 2^{n})")
    return g((k ^ l) | (k2 ^ l2), (k ^ l2) | (k2 ^ l), n, n_a)


def admissible_q(k: int, k2: int, l: int, l2: int) -> int:
    """Admissibility kernel; the quadruple contributes iff this is zero.

    q = ((k xor l) or (k' xor l')) and ((k xor l') or (k' xor l)).
    """
    return ((k ^ l) | (k2 ^ l2)) & ((k ^ l2) | (k2 ^ l))


@dataclass(eq=False, frozen=True)
class CouplingTable:
    """Nonzero balanced-average couplings (l, m, g(l, m; floor(n/2))).

    Entries have l != 0, m != 0, disjoint supports, and nonzero exact
    rational weight, in (l, m) lexicographic order.  `constant` is the
    uniform-state offset (N_A + N_Abar - 1)/N.  Float and integer views
    of the weights are materialized lazily and cached.
    """

    n: int
    n_a: int
    entries: tuple[tuple[int, int, Fraction], ...]
    constant: Fraction

    @property
    def scale(self) -> int:
        """Least common rescaling 2 C(n, n_a) making all weights integers."""
        return 2 * binomial(self.n, self.n_a)

    @cached_property
    def l_idx(self) -> np.ndarray:
        return np.array([e[0] for e in self.entries], dtype=np.intp)

    @cached_property
    def m_idx(self) -> np.ndarray:
        return np.array([e[1] for e in self.entries], dtype=np.intp)

    @cached_property
    def lm_idx(self) -> np.ndarray:
        return np.array([e[0] ^ e[1] for e in self.entries], dtype=np.intp)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([float(e[2]) for e in self.entries], dtype=np.float64)

    @cached_property
    def int_weights(self) -> np.ndarray:
        """Weights times `scale`, exact integers."""
        scale = self.scale
        vals = []
        for _, _, w in self.entries:
            v = w * scale
            if v.denominator != 1:
                raise AssertionError("weight rescaling failed to clear denominators")
            vals.append(int(v))
        return np.array(vals, dtype=np.int64)

    def validate(self) -> None:
        """Check disjoint supports and the exact row-sum normalization."""
        for l, m, w in self.entries:
            if l == 0 or m == 0 or (l & m) or w == 0:
                raise ValueError(f"malformed table entry {(l, m, w)}")
        for l in range(1 << self.n):
            if coupling_row_sum(l, self.n, self.n_a) != 1:
                raise ValueError(f"row sum at l={l} is not 1")


@lru_cache(maxsize=None)
def build_coupling_table(n: int) -> CouplingTable:
    """All nonzero couplings (l, m, g(l, m; floor(n/2))) with l, m != 0.

    Lexicographic entry order (l ascending, then m ascending).  Cached per
    n; tables are immutable and shared.
    """
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [2, {MAX_QUBITS}], got {n}")
    n_a = n // 2
    full = (1 << n) - 1
    entries = []
    for l in range(1, 1 << n):
        s = weight(l)
        for m in sorted(submasks(full ^ l)):
            if m == 0:
                continue
            w = _g_hat_core(s, weight(m), n, n_a)
            if w:
                entries.append((l, m, w))
    constant = Fraction((1 << n_a) + (1 << (n - n_a)) - 1, 1 << n)
    return CouplingTable(n, n_a, tuple(entries), constant)


def coupling_row_sum(l: int, n: int, n_a: int) -> Fraction:
    """Exact sum over m of g(l xor m, m; n_a); equals 1 for every l."""
    _check_args(n, n_a)
    if not 0 <= l < (1 << n):
        raise ValueError(f"mask must lie in [0, 2^{n})")
    total = Fraction(0)
    for m in range(1 << n):
        val = g(l ^ m, m, n, n_a)
        if val:
            total += val
    return total


def _resolve_table(n: int, table: Optional[CouplingTable]) -> CouplingTable:
    if table is None:
        return build_coupling_table(n)
    if table.n != n:
        raise ValueError(f"coupling table is for n={table.n}, state has n={n}")
    return table


def _entry_terms(
    table: CouplingTable,
    kernel: Callable[[int, int, int, float], float],
    workers: int = 1,
) -> list[float]:
    """Per-entry contributions kernel(l, m, l^m, weight), in entry order.

    The entry list may be partitioned across threads; chunks are merged in
    entry order, so the caller's fsum sees the same sequence regardless of
    worker count.
    """
    entries = table.entries
    if workers <= 1 or len(entries) < 4:
        return [kernel(l, m, l ^ m, float(w)) for l, m, w in entries]
    chunk = (len(entries) + workers - 1) // workers
    spans = [entries[i : i + chunk] for i in range(0, len(entries), chunk)]

    def run(span):
        return [kernel(l, m, l ^ m, float(w)) for l, m, w in span]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        out: list[float] = []
        for part in pool.map(run, spans):
            out.extend(part)
    return out


def pi_me_form1(state: PureState) -> float:
    """Potential as the mean purity over all balanced bipartitions."""
    parts = [purity_form2(state, A) for A in balanced_bipartitions(state.n)]
    return math.fsum(parts) / len(parts)


def pi_me_form2(
    state: PureState,
    table: Optional[CouplingTable] = None,
    workers: int = 1,
) -> float:
    """Potential as the XOR-coupled quadruple sum (the default fast path).

    Evaluated in the three-group split: the sum of |z_k|^4, the pair group
    2 sum_{l != 0} g_hat(|l|, 0) sum_k |z_k|^2 |z_{k xor l}|^2, and the
    table-driven interference group sum g(l, m) Re(z_k z_{k xor l xor m}
    conj(z_{k xor l}) conj(z_{k xor m})).
    """
    table = _resolve_table(state.n, table)
    n = state.n
    N = 1 << n
    z = state.amplitudes
    zc = z.conj()
    p = np.abs(z) ** 2
    ks = np.arange(N, dtype=np.intp)

    parts = [float(np.dot(p, p))]
    for l in range(1, N):
        w = _g_hat_core(weight(l), 0, n, table.n_a)
        if w:
            parts.append(2.0 * float(w) * float(np.dot(p, p[ks ^ l])))

    def kernel(l: int, m: int, lm: int, w: float) -> float:
        term = z * z[ks ^ lm] * zc[ks ^ l] * zc[ks ^ m]
        return w * float(np.sum(term).real)

    parts.extend(_entry_terms(table, kernel, workers))
    return math.fsum(parts)


def pi_me_form4(
    state: PureState,
    table: Optional[CouplingTable] = None,
    workers: int = 1,
) -> float:
    """Potential as one minus half the weighted cross-difference sum.

    pi_ME = 1 - (1/2) sum g(l, m) sum_k |z_k z_{k xor l xor m} -
    z_{k xor l} z_{k xor m}|^2.  Terms with l = 0 or m = 0 vanish
    identically, so only table entries contribute; the subtracted sum is
    nonnegative, making the distance from 1 explicit.
    """
    table = _resolve_table(state.n, table)
    z = state.amplitudes
    ks = np.arange(1 << state.n, dtype=np.intp)

    def kernel(l: int, m: int, lm: int, w: float) -> float:
        d = z * z[ks ^ lm] - z[ks ^ l] * z[ks ^ m]
        return w * float(np.sum(d.real * d.real + d.imag * d.imag))

    deficit = math.fsum(_entry_terms(table, kernel, workers))
    return 1.0 - 0.5 * deficit


def pi_me_uniform(
    phases: Union[PolarState, SignVector],
    table: Optional[CouplingTable] = None,
    workers: int = 1,
) -> float:
    """Potential of a uniform-modulus state straight from its phases.

    pi_ME(zeta) = (N_A + N_Abar - 1)/N + (1/N^2) sum over table entries of
    g(l, m) sum_k Re(zeta_k zeta_{k xor l xor m} conj(zeta_{k xor l})
    conj(zeta_{k xor m})).  Sign vectors are evaluated in exact integer
    arithmetic.
    """
    if isinstance(phases, SignVector):
        return float(energy_uniform_exact(phases, table))
    if not phases.is_uniform():
        raise ValueError("pi_me_uniform requires uniform moduli 1/sqrt(N)")
    table = _resolve_table(phases.n, table)
    N = 1 << phases.n
    zeta = phases.phases
    zc = zeta.conj()
    ks = np.arange(N, dtype=np.intp)

    def kernel(l: int, m: int, lm: int, w: float) -> float:
        term = zeta * zeta[ks ^ lm] * zc[ks ^ l] * zc[ks ^ m]
        return w * float(np.sum(term).real)

    parts = _entry_terms(table, kernel, workers)
    return float(table.constant) + math.fsum(parts) / (N * N)


def _interference_int(signs: np.ndarray, table: CouplingTable) -> int:
    """Exact rescaled interference sum of a sign vector.

    Returns sum over entries of W_e S_e with W_e the integer weights and
    S_e = sum_k s_k s_{k xor l} s_{k xor m} s_{k xor l xor m}.
    """
    s = signs.astype(np.int64)
    ks = np.arange(s.size, dtype=np.intp)
    total = 0
    for w, l, m, lm in zip(
        table.int_weights, table.l_idx, table.m_idx, table.lm_idx
    ):
        corr = int(np.dot(s * s[ks ^ l], s[ks ^ m] * s[ks ^ lm]))
        total += int(w) * corr
    return total


def energy_uniform_exact(
    sv: SignVector, table: Optional[CouplingTable] = None
) -> Fraction:
    """Exact rational potential of the real uniform state with these signs."""
    table = _resolve_table(sv.n, table)
    N = 1 << sv.n
    return table.constant + Fraction(_interference_int(sv.signs, table), table.scale * N * N)


def avg_linear_entropy(
    state: PureState,
    table: Optional[CouplingTable] = None,
    workers: int = 1,
) -> float:
    """Average linear entropy N_A/(N_A - 1) (1 - pi_ME), N_A = 2^floor(n/2).

    0 for product states, 1 exactly when every balanced bipartition is
    maximally mixed.
    """
    if state.n < 2:
        raise ValueError("average linear entropy requires n >= 2")
    n_a_dim = 1 << (state.n // 2)
    pot = pi_me_form2(state, table, workers)
    return (n_a_dim / (n_a_dim - 1)) * (1.0 - pot)


@dataclass(frozen=True)
class MonomialCounts:
    """Exact counts of distinct monomials in the potential.

    N1 counts |z_k|^4 terms, N2 the |z_k|^2 |z_h|^2 cross terms, N4 the
    genuine four-index interference terms.
    """

    N1: int
    N2: int
    N4: int


def monomial_counts(n: int) -> MonomialCounts:
    """Closed-form monomial counts of the potential for n qubits.

    N1 = 2^n; N2 = 2^(2n-2) - 2^(n-1) + (2^n/(3 + (-1)^n)) C(n, n/2);
    N4 = 2^(n-3) sum over 1 <= s, t <= ceil(n/2) of C(n, s) C(n-s, t).
    Eight times N4 equals 2^n times the coupling-table entry count.
    """
    if not 2 <= n <= MAX_COUNT_QUBITS:
        raise ValueError(f"qubit count must be in [2, {MAX_COUNT_QUBITS}], got {n}")
    n1 = 1 << n
    half_binom = binomial(n, n // 2)
    n2 = (1 << (2 * n - 2)) - (1 << (n - 1)) + ((1 << n) // (3 + (-1) ** n)) * half_binom
    cap = (n + 1) // 2
    s_total = sum(
        binomial(n, s) * binomial(n - s, t)
        for s in range(1, cap + 1)
        for t in range(1, cap + 1)
    )
    n4, rem = divmod(s_total << n, 8)
    if rem:
        raise AssertionError("interference count is not divisible as expected")
    return MonomialCounts(n1, n2, n4)
