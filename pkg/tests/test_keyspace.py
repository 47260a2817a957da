"""Tests for the keyspace audit.

The production counter walks a collapsed automaton; the oracle here is a
deliberately naive enumerator that materializes every sequence and runs
it through ``run_sequence``.  The two share nothing but the core press
semantics.  Frozen counts below were produced with the oracle (lengths
up to 5) and an equally naive standalone sweep at length 6 before the
production counter existed.
"""

import itertools
from fractions import Fraction

import pytest

from combolock.core import LockConfig, run_sequence
from combolock.keyspace import (
    KOutOfRange,
    LengthOutOfRange,
    analyze_range,
    count_unlocking,
    count_unlocking_with_prefix,
    is_unlocking,
    nominal_combinations,
    stats_to_csv,
)

UNLOCKING_COUNTS = {1: 0, 2: 0, 3: 0, 4: 1, 5: 34, 6: 710}


def naive_unlock_count(cfg: LockConfig, length: int) -> int:
    """Brute-force oracle: try every sequence, one at a time."""
    count = 0
    for seq in itertools.product(range(10), repeat=length):
        if run_sequence(cfg, seq)[1]:
            count += 1
    return count


class TestNominalCombinations:
    def test_four_of_ten(self):
        assert nominal_combinations(10, 4) == 210

    def test_choose_zero_and_all(self):
        assert nominal_combinations(7, 0) == 1
        assert nominal_combinations(7, 7) == 1

    def test_k_out_of_range(self):
        with pytest.raises(KOutOfRange):
            nominal_combinations(10, 11)
        with pytest.raises(KOutOfRange):
            nominal_combinations(10, -1)


class TestIsUnlocking:
    def test_exact_code(self, default_cfg):
        assert is_unlocking(default_cfg, [9, 5, 0, 2])

    def test_code_with_decoy(self, default_cfg):
        assert is_unlocking(default_cfg, [9, 5, 0, 6, 2])

    def test_scrambled_code(self, default_cfg):
        assert not is_unlocking(default_cfg, [0, 9, 1, 5, 2, 3])


class TestCountUnlocking:
    @pytest.mark.parametrize("length", [1, 2, 3])
    def test_below_code_length_nothing_unlocks(self, default_cfg, length):
        stats = count_unlocking(default_cfg, length)
        assert stats.unlocking == 0
        assert stats.probability == Fraction(0)

    def test_exactly_one_at_code_length(self, default_cfg):
        stats = count_unlocking(default_cfg, 4)
        assert stats.unlocking == 1
        assert stats.total_sequences == 10_000
        assert stats.probability == Fraction(1, 10_000)
        assert stats.nominal_claim == 210

    def test_the_unique_shortest_unlocking_sequence_is_the_code(self, default_cfg):
        winners = [
            seq
            for seq in itertools.product(range(10), repeat=4)
            if run_sequence(default_cfg, seq)[1]
        ]
        assert winners == [(9, 5, 0, 2)]

    @pytest.mark.parametrize("length", [1, 2, 3, 4])
    def test_matches_naive_oracle(self, default_cfg, length):
        assert count_unlocking(default_cfg, length).unlocking == naive_unlock_count(
            default_cfg, length
        )

    def test_matches_naive_oracle_at_length_five(self, default_cfg):
        assert count_unlocking(default_cfg, 5).unlocking == naive_unlock_count(default_cfg, 5)

    @pytest.mark.parametrize("length,expected", sorted(UNLOCKING_COUNTS.items()))
    def test_frozen_counts(self, default_cfg, length, expected):
        assert count_unlocking(default_cfg, length).unlocking == expected

    def test_length_out_of_range(self, default_cfg):
        with pytest.raises(LengthOutOfRange):
            count_unlocking(default_cfg, 0)
        with pytest.raises(LengthOutOfRange):
            count_unlocking(default_cfg, 9)

    def test_oracle_on_a_non_default_config(self):
        cfg = LockConfig(code=(1, 2, 3), reset_keys=frozenset({0}), dummy_keys=frozenset({9}))
        for length in (2, 3, 4):
            assert count_unlocking(cfg, length).unlocking == naive_unlock_count(cfg, length)


class TestPrefixPartition:
    @pytest.mark.parametrize("length", [4, 5])
    def test_leading_key_partition_sums_to_total(self, default_cfg, length):
        total = count_unlocking(default_cfg, length).unlocking
        parts = [
            count_unlocking_with_prefix(default_cfg, length, (key,)) for key in range(10)
        ]
        assert sum(parts) == total

    def test_two_key_prefix_partition(self, default_cfg):
        total = count_unlocking(default_cfg, 5).unlocking
        parts = [
            count_unlocking_with_prefix(default_cfg, 5, (a, b))
            for a in range(10)
            for b in range(10)
        ]
        assert sum(parts) == total

    def test_unlocked_prefix_counts_everything_below_it(self, default_cfg):
        assert count_unlocking_with_prefix(default_cfg, 5, (9, 5, 0, 2)) == 10

    def test_prefix_longer_than_length_rejected(self, default_cfg):
        with pytest.raises(LengthOutOfRange):
            count_unlocking_with_prefix(default_cfg, 2, (1, 2, 3))


class TestAnalyzeRange:
    def test_below_threshold_lengths(self, default_cfg):
        stats = analyze_range(default_cfg, 1, 3)
        assert [s.unlocking for s in stats] == [0, 0, 0]

    def test_single_length(self, default_cfg):
        stats = analyze_range(default_cfg, 4, 4)
        assert len(stats) == 1 and stats[0].unlocking == 1

    def test_counts_grow_past_the_code_length(self, default_cfg):
        stats = analyze_range(default_cfg, 4, 6)
        counts = [s.unlocking for s in stats]
        assert counts == sorted(counts)
        assert counts[0] < counts[1] < counts[2]

    def test_bad_ranges(self, default_cfg):
        with pytest.raises(LengthOutOfRange):
            analyze_range(default_cfg, 0, 3)
        with pytest.raises(LengthOutOfRange):
            analyze_range(default_cfg, 4, 9)
        with pytest.raises(LengthOutOfRange):
            analyze_range(default_cfg, 5, 4)


class TestCsvRendering:
    def test_exact_row_for_length_four(self, default_cfg):
        csv = stats_to_csv(analyze_range(default_cfg, 4, 4))
        lines = csv.splitlines()
        assert lines[0] == "length,total,unlocking,probability,nominal_claim"
        assert lines[1] == "4,10000,1,1/10000,210"

    def test_zero_probability_renders_as_zero(self, default_cfg):
        csv = stats_to_csv(analyze_range(default_cfg, 1, 1))
        assert csv.splitlines()[1] == "1,10,0,0,210"
