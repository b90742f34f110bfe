"""Reduced density matrices, purities, Schmidt spectra, bipartite measures.

Oracle: explicit partial-trace summation over complement labels (helpers),
plus eigenvalue identities that tie every code path to the same spectrum.
"""

import itertools

import numpy as np
import pytest

from helpers import haar_unitary, naive_purity, naive_reduced_density
from mmeskit import (
    DensityMatrix,
    QubitMask,
    apply_single_qubit_unitary,
    bipartite_term_counts,
    entanglement_E,
    fully_factorized,
    ghz,
    linear_entropy_L,
    max_entangled_state,
    permute_qubits,
    polar,
    purity_form1,
    purity_form2,
    purity_uniform,
    random_phases,
    random_state,
    reduced_density_matrix,
    schmidt_spectrum,
    assemble,
)


def proper_subsets(n):
    labels = range(1, n + 1)
    for r in range(1, n):
        yield from itertools.combinations(labels, r)


def bell_pair():
    return ghz(2)


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex))

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(2, dtype=complex))

    def test_purity_and_eigenvalues(self):
        rho = DensityMatrix(np.diag([0.75, 0.25]).astype(complex))
        assert rho.purity() == pytest.approx(0.625)
        assert np.allclose(rho.eigenvalues(), [0.75, 0.25])  # descending

    def test_validate_rejects_negative_eigenvalue(self):
        rho = DensityMatrix(np.diag([1.5, -0.5]).astype(complex))
        with pytest.raises(ValueError):
            rho.validate()

    def test_entries_read_only(self):
        rho = DensityMatrix(np.eye(2, dtype=complex) / 2)
        with pytest.raises(ValueError):
            rho.entries[0, 0] = 9.0


class TestReducedDensityMatrix:
    def test_bell_marginal_is_maximally_mixed(self):
        rho = reduced_density_matrix(bell_pair(), QubitMask.from_qubits((1,), 2))
        assert np.allclose(rho.entries, np.eye(2) / 2)

    def test_product_state_marginal_is_pure(self):
        st = fully_factorized([(1, 0), (1, 0)])
        rho = reduced_density_matrix(st, QubitMask.from_qubits((2,), 2))
        assert np.allclose(rho.entries, [[1, 0], [0, 0]])

    def test_ghz_pair_marginal(self):
        rho = reduced_density_matrix(ghz(3), QubitMask.from_qubits((1, 2), 3))
        assert np.allclose(rho.entries, np.diag([0.5, 0, 0, 0.5]))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_matches_naive_partial_trace(self, n):
        for seed in range(3):
            st = random_state(n, 100 * n + seed)
            for qubits in proper_subsets(n):
                got = reduced_density_matrix(st, QubitMask.from_qubits(qubits, n))
                want = naive_reduced_density(st, qubits)
                assert np.allclose(got.entries, want, atol=1e-13)

    def test_rejects_empty_and_full_subsets(self):
        with pytest.raises(ValueError):
            reduced_density_matrix(ghz(2), 0b00)
        with pytest.raises(ValueError):
            reduced_density_matrix(ghz(2), 0b11)


class TestPurity:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_both_forms_match_spectrum(self, n):
        for seed in range(4):
            st = random_state(n, 10 * n + seed)
            for qubits in proper_subsets(n):
                A = QubitMask.from_qubits(qubits, n)
                p1 = purity_form1(st, A)
                p2 = purity_form2(st, A)
                spec = schmidt_spectrum(st, A).purity()
                assert p1 == pytest.approx(p2, abs=1e-12)
                assert p1 == pytest.approx(spec, abs=1e-10)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_naive_oracle(self, n):
        st = random_state(n, n)
        for qubits in proper_subsets(n):
            assert purity_form2(st, QubitMask.from_qubits(qubits, n)) == pytest.approx(
                naive_purity(st, qubits), abs=1e-12
            )

    def test_equal_for_complementary_parties(self):
        st = random_state(5, 77)
        for qubits in proper_subsets(5):
            A = QubitMask.from_qubits(qubits, 5)
            assert purity_form2(st, A) == pytest.approx(purity_form2(st, A.complement()), abs=1e-12)

    def test_bounds(self):
        for seed in range(5):
            st = random_state(4, seed)
            for qubits in proper_subsets(4):
                p = purity_form2(st, QubitMask.from_qubits(qubits, 4))
                dim_small = 1 << min(len(qubits), 4 - len(qubits))
                assert 1.0 / dim_small - 1e-12 <= p <= 1.0 + 1e-12


class TestSchmidt:
    def test_bell_spectrum(self):
        spec = schmidt_spectrum(bell_pair(), QubitMask.from_qubits((1,), 2))
        assert np.allclose(spec.values, [0.5, 0.5])

    def test_product_state_has_single_coefficient(self):
        st = fully_factorized([(1, 0), (0, 1), (1, 0)])
        spec = schmidt_spectrum(st, QubitMask.from_qubits((1, 3), 3))
        assert spec.values == pytest.approx((1.0,))
        assert len(spec.zeros) == 3

    def test_complementary_parties_share_nonzero_spectrum(self):
        st = random_state(5, 21)
        A = QubitMask.from_qubits((1, 4), 5)
        a = schmidt_spectrum(st, A).values
        b = schmidt_spectrum(st, A.complement()).values
        assert len(a) == len(b)
        assert np.allclose(a, b, atol=1e-10)

    def test_padded_length_matches_party_dimension(self):
        st = random_state(4, 22)
        A = QubitMask.from_qubits((1, 2, 3), 4)
        spec = schmidt_spectrum(st, A)
        assert len(spec.all_values) == 8
        assert sum(spec.all_values) == pytest.approx(1.0, abs=1e-10)


class TestEntanglementMeasures:
    def test_product_state_measures_vanish(self):
        st = fully_factorized([(1, 0), (0, 1), (1, 0)])
        for qubits in proper_subsets(3):
            A = QubitMask.from_qubits(qubits, 3)
            assert entanglement_E(st, A) == pytest.approx(0.0, abs=1e-12)
            assert linear_entropy_L(st, A) == pytest.approx(0.0, abs=1e-12)

    def test_bell_pair_is_maximal(self):
        A = QubitMask.from_qubits((1,), 2)
        assert entanglement_E(bell_pair(), A) == pytest.approx(1.0)
        assert linear_entropy_L(bell_pair(), A) == pytest.approx(1.0)

    def test_ghz_values_scale_with_party_dimension(self):
        # both measures normalize by the literal party dimension 2^|A|,
        # so complementary parties of GHZ(3) score differently
        pair = QubitMask.from_qubits((1, 2), 3)
        single = QubitMask.from_qubits((3,), 3)
        assert entanglement_E(ghz(3), pair) == pytest.approx(2.0 / 3.0)
        assert linear_entropy_L(ghz(3), pair) == pytest.approx(2.0 / 3.0)
        assert entanglement_E(ghz(3), single) == pytest.approx(1.0)
        assert linear_entropy_L(ghz(4), QubitMask.from_qubits((1, 2), 4)) == pytest.approx(2.0 / 3.0)

    def test_max_entangled_state_saturates(self):
        rng = np.random.default_rng(3)
        A = QubitMask.from_qubits((2, 3), 5)
        st = max_entangled_state(A, u_a=haar_unitary(4, rng), u_abar=haar_unitary(8, rng))
        assert entanglement_E(st, A) == pytest.approx(1.0, abs=1e-11)
        assert linear_entropy_L(st, A) == pytest.approx(1.0, abs=1e-11)


class TestTermCounts:
    @pytest.mark.parametrize(
        "n,na,expect",
        [(2, 1, (4, 8, 4)), (4, 2, (16, 96, 144)), (3, 1, (8, 32, 24))],
    )
    def test_known_rows(self, n, na, expect):
        assert bipartite_term_counts(n, na) == expect

    @pytest.mark.parametrize("n", range(2, 9))
    def test_total_is_fourth_power_of_dimension(self, n):
        for na in range(1, n):
            assert sum(bipartite_term_counts(n, na)) == 1 << (2 * n)

    def test_rejects_improper_split(self):
        with pytest.raises(ValueError):
            bipartite_term_counts(3, 0)
        with pytest.raises(ValueError):
            bipartite_term_counts(3, 3)


class TestUniformPurity:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_general_path_on_uniform_states(self, n):
        p = random_phases(n, 50 + n)
        st = assemble(p)
        for qubits in proper_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            assert purity_uniform(p, A) == pytest.approx(purity_form2(st, A), abs=1e-12)

    def test_rejects_non_uniform_moduli(self):
        with pytest.raises(ValueError):
            purity_uniform(polar(ghz(3)), QubitMask.from_qubits((1,), 3))


class TestSymmetries:
    def test_purity_is_permutation_covariant(self):
        st = random_state(4, 5)
        perm = (3, 1, 4, 2)  # new qubit i carries old qubit perm[i-1]
        new = permute_qubits(st, perm)
        for qubits in [(1,), (2, 3), (1, 4), (2,)]:
            mapped = tuple(sorted(perm[i - 1] for i in qubits))
            got = purity_form2(new, QubitMask.from_qubits(qubits, 4))
            want = purity_form2(st, QubitMask.from_qubits(mapped, 4))
            assert got == pytest.approx(want, abs=1e-12)

    def test_purity_is_local_unitary_invariant(self):
        rng = np.random.default_rng(8)
        st = random_state(4, 6)
        rotated = st
        for q in range(1, 5):
            rotated = apply_single_qubit_unitary(rotated, q, haar_unitary(2, rng))
        for qubits in proper_subsets(4):
            A = QubitMask.from_qubits(qubits, 4)
            assert purity_form2(rotated, A) == pytest.approx(purity_form2(st, A), abs=1e-11)
