"""Bit-level subsystem indexing: masks, extraction, embedding, counting.

Oracles: binary-string slicing for extract/embed, math.comb and factorials
for the counting helpers, itertools for subset enumeration.
"""

import itertools
import math

import numpy as np
import pytest

from mmeskit import QubitMask, balanced_bipartitions, binomial, embed, extract, weight
from mmeskit.bitspace import (
    MAX_COUNT_QUBITS,
    as_mask,
    complement,
    embed_table,
    masks_of_weight,
    multinomial,
    submasks,
)


def extract_oracle(k: int, qubits, n: int) -> int:
    """Read off the bits of k at the given labels, most significant first."""
    s = format(k, f"0{n}b")
    bits = "".join(s[q - 1] for q in sorted(qubits))
    return int(bits, 2) if bits else 0


def embed_oracle(sub: int, qubits, n: int) -> int:
    """Scatter the bits of sub onto the given labels inside an n-bit word."""
    qs = sorted(qubits)
    bits = format(sub, f"0{len(qs)}b") if qs else ""
    chars = ["0"] * n
    for ch, q in zip(bits, qs):
        chars[q - 1] = ch
    return int("".join(chars), 2) if n else 0


def all_label_subsets(n):
    labels = range(1, n + 1)
    for r in range(n + 1):
        yield from itertools.combinations(labels, r)


class TestWeightAndWordOps:
    def test_weight_matches_bin_count(self):
        for k in range(1 << 10):
            assert weight(k) == bin(k).count("1")

    def test_weight_handles_big_integers(self):
        assert weight((1 << 100) | 1) == 2

    def test_word_operators(self):
        from mmeskit.bitspace import and_, or_, xor

        assert xor(0b110, 0b011) == 0b101
        assert and_(0b110, 0b011) == 0b010
        assert or_(0b110, 0b011) == 0b111

    def test_complement_flips_exactly_n_bits(self):
        assert complement(0b101, 3) == 0b010
        for n in range(1, 8):
            for mask in range(1 << n):
                assert complement(mask, n) == mask ^ ((1 << n) - 1)


class TestQubitMask:
    def test_from_qubits_uses_one_based_labels(self):
        m = QubitMask.from_qubits((1, 3), 3)
        assert m.mask == 0b101
        assert m.qubits() == (1, 3)
        assert m.size == 2

    def test_complement_returns_remaining_labels(self):
        m = QubitMask.from_qubits((2,), 3)
        assert m.complement().qubits() == (1, 3)

    def test_label_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            QubitMask.from_qubits((0,), 3)
        with pytest.raises(ValueError):
            QubitMask.from_qubits((4,), 3)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            QubitMask.from_qubits((1, 1), 3)

    def test_mask_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            QubitMask(0b100, 2)

    def test_n_above_word_limit_rejected(self):
        with pytest.raises(ValueError):
            QubitMask(0, MAX_COUNT_QUBITS + 1)

    def test_bipartition_keeps_small_subsets(self):
        assert QubitMask.bipartition((1, 2), 4).qubits() == (1, 2)
        assert QubitMask.bipartition((3, 4), 4).qubits() == (3, 4)

    def test_bipartition_replaces_large_subsets_by_complement(self):
        assert QubitMask.bipartition((1, 2, 3), 4).qubits() == (4,)
        assert QubitMask.bipartition(0b0111, 4).qubits() == (1,)

    def test_bipartition_rejects_empty_and_full(self):
        with pytest.raises(ValueError):
            QubitMask.bipartition((), 4)
        with pytest.raises(ValueError):
            QubitMask.bipartition((1, 2, 3, 4), 4)

    def test_as_mask_accepts_ints_and_masks(self):
        m = QubitMask.from_qubits((2,), 3)
        assert as_mask(m, 3) == m.mask
        assert as_mask(0b010, 3) == 0b010

    def test_as_mask_rejects_mismatched_n(self):
        m = QubitMask.from_qubits((2,), 3)
        with pytest.raises(ValueError):
            as_mask(m, 4)


class TestBalancedBipartitions:
    def test_three_qubits_lists_singletons(self):
        assert [m.qubits() for m in balanced_bipartitions(3)] == [(1,), (2,), (3,)]

    def test_four_qubits_lists_all_pairs(self):
        got = [m.qubits() for m in balanced_bipartitions(4)]
        assert got == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

    @pytest.mark.parametrize("n", range(2, 9))
    def test_counts_sizes_and_order(self, n):
        parts = balanced_bipartitions(n)
        assert len(parts) == math.comb(n, n // 2)
        assert all(m.size == n // 2 for m in parts)
        labels = [m.qubits() for m in parts]
        assert labels == sorted(labels)
        assert len(set(labels)) == len(labels)


class TestExtractEmbed:
    def test_extract_example(self):
        assert extract(0b110, QubitMask.from_qubits((1, 3), 3)) == 0b10

    def test_embed_example(self):
        assert embed(0b11, QubitMask.from_qubits((1, 3), 3)) == 0b101

    @pytest.mark.parametrize("n", range(1, 7))
    def test_extract_matches_string_oracle(self, n):
        for qubits in all_label_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            for k in range(1 << n):
                assert extract(k, A) == extract_oracle(k, qubits, n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_embed_matches_string_oracle(self, n):
        for qubits in all_label_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            for sub in range(1 << len(qubits)):
                assert embed(sub, A) == embed_oracle(sub, qubits, n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_extract_embed_roundtrip(self, n):
        for qubits in all_label_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            for sub in range(1 << len(qubits)):
                assert extract(embed(sub, A), A) == sub

    @pytest.mark.parametrize("n", range(1, 7))
    def test_split_and_reassemble_is_identity(self, n):
        for qubits in all_label_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            B = A.complement()
            for k in range(1 << n):
                assert embed(extract(k, A), A) | embed(extract(k, B), B) == k

    def test_plain_int_masks_accept_optional_n(self):
        assert extract(0b110, 0b101, 3) == 0b10
        assert extract(0b110, 0b101) == 0b10
        with pytest.raises(ValueError):
            extract(0b110, 0b101, 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_embed_table_agrees_with_embed(self, n):
        for qubits in all_label_subsets(n):
            A = QubitMask.from_qubits(qubits, n)
            table = embed_table(A)
            assert table.dtype == np.intp
            assert len(table) == 1 << len(qubits)
            for sub in range(len(table)):
                assert int(table[sub]) == embed(sub, A)


class TestSubsetEnumeration:
    def test_submasks_descending_with_endpoints(self):
        assert list(submasks(0b101)) == [0b101, 0b100, 0b001, 0b000]

    @pytest.mark.parametrize("mask", [0, 1, 0b1011, 0b11110, 0b101010])
    def test_submasks_complete_and_ordered(self, mask):
        got = list(submasks(mask))
        expect = sorted((s for s in range(mask + 1) if s & mask == s), reverse=True)
        assert got == expect
        assert len(got) == 1 << weight(mask)

    def test_masks_of_weight_example(self):
        assert list(masks_of_weight(2, 4)) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_masks_of_weight_ascending_and_complete(self, n):
        for w in range(n + 1):
            got = list(masks_of_weight(w, n))
            assert got == sorted(got)
            assert all(weight(m) == w for m in got)
            assert len(got) == math.comb(n, w)


class TestCounting:
    def test_binomial_matches_math_comb(self):
        for n in range(31):
            for k in range(n + 1):
                assert binomial(n, k) == math.comb(n, k)

    def test_binomial_is_zero_outside_range(self):
        assert binomial(3, 5) == 0
        assert binomial(3, -1) == 0

    def test_multinomial_matches_factorial_formula(self):
        for parts in [(2, 2, 1), (3, 0, 2), (1, 1, 1, 1), (5,), (0, 0, 4)]:
            n = sum(parts)
            expect = math.factorial(n)
            for p in parts:
                expect //= math.factorial(p)
            assert multinomial(n, parts) == expect

    def test_multinomial_is_zero_when_parts_do_not_sum(self):
        assert multinomial(5, (2, 2, 2)) == 0
