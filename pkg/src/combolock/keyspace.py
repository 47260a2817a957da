"""Exhaustive audit of the key-sequence space.

An attacker pressing keys at random walks the full 10-key alphabet, not
just code keys, so the honest measure of guessing risk is the number of
ordered sequences of a given length that fire the unlock edge.  Because
valid latch states are always prefixes, the cascade collapses to a tiny
automaton over "how many latches are set", and counting over that
automaton visits every one of the 10^length sequences exactly once
without materializing them.  Results are exact integers and ratios.

The classical back-of-envelope figure for a 4-of-10 keypad is C(10, 4) =
210 unordered key subsets.  The lock is order-sensitive, so the measured
probability differs by orders of magnitude; reports show both numbers
side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import KEYPAD, Effect, LatchVector, LockConfig, press_key, run_sequence

MAX_AUDIT_LENGTH = 8  # 10^8 sequences; counting stays exact and fast


class KOutOfRange(ValueError):
    pass


class LengthOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class KeyspaceStats:
    """Enumeration result for one sequence length."""

    length: int
    total_sequences: int
    unlocking: int
    probability: Fraction
    nominal_claim: int

    @property
    def probability_decimal(self) -> float:
        return self.unlocking / self.total_sequences

    def probability_str(self) -> str:
        return str(self.probability)


def nominal_combinations(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), the order-insensitive subset count."""
    if not 0 <= k <= n:
        raise KOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def is_unlocking(cfg: LockConfig, seq: Iterable[int]) -> bool:
    """True iff the sequence fires the unlock edge at some point."""
    return run_sequence(cfg, seq)[1]


def compile_transitions(cfg: LockConfig) -> list[list[int]]:
    """Transition table of the collapsed cascade automaton.

    State k = number of set latches (0..n-1); ``table[k][key]`` gives the
    next state, with n meaning "the unlock edge fired".  Built by probing
    the real press function so the two can never drift apart.
    """
    n = cfg.n
    table: list[list[int]] = []
    for k in range(n):
        state = LatchVector((True,) * k + (False,) * (n - k))
        row = []
        for key in KEYPAD:
            outcome = press_key(cfg, state, key)
            if outcome.effect is Effect.UNLOCK_EDGE:
                row.append(n)
            else:
                row.append(outcome.state.set_count)
        table.append(row)
    return table


def _count_unlocking_from(table: list[list[int]], start_state: int, length: int) -> int:
    """Sequences of ``length`` keys from ``start_state`` that ever unlock.

    Exact dynamic count over the collapsed automaton; the unlocked state
    is absorbing because a later reset does not revoke the unlock edge.
    """
    n = len(table)
    if start_state >= n:  # already unlocked
        return 10**length
    counts = [0] * (n + 1)
    counts[start_state] = 1
    for _ in range(length):
        nxt = [0] * (n + 1)
        nxt[n] = counts[n] * 10
        for k in range(n):
            c = counts[k]
            if c:
                for key in KEYPAD:
                    nxt[table[k][key]] += c
        counts = nxt
    return counts[n]


def count_unlocking(cfg: LockConfig, length: int) -> KeyspaceStats:
    """Audit every sequence of ``length`` presses over the full keypad."""
    if not 1 <= length <= MAX_AUDIT_LENGTH:
        raise LengthOutOfRange(
            f"length must be in 1..{MAX_AUDIT_LENGTH}, got {length}"
        )
    table = compile_transitions(cfg)
    unlocking = _count_unlocking_from(table, 0, length)
    total = 10**length
    return KeyspaceStats(
        length=length,
        total_sequences=total,
        unlocking=unlocking,
        probability=Fraction(unlocking, total),
        nominal_claim=nominal_combinations(len(KEYPAD), cfg.n),
    )


def count_unlocking_with_prefix(cfg: LockConfig, length: int, prefix: Sequence[int]) -> int:
    """Unlocking sequences of ``length`` that start with ``prefix``.

    Partitioning the space by prefix and summing the partial counts gives
    exactly the sequential total, so prefixes can be farmed out to
    independent workers and merged by addition.
    """
    if not 1 <= length <= MAX_AUDIT_LENGTH:
        raise LengthOutOfRange(f"length must be in 1..{MAX_AUDIT_LENGTH}, got {length}")
    if len(prefix) > length:
        raise LengthOutOfRange(f"prefix longer than sequence length {length}")
    state, unlocked = run_sequence(cfg, prefix)
    table = compile_transitions(cfg)
    start = cfg.n if unlocked else state.set_count
    return _count_unlocking_from(table, start, length - len(prefix))


def analyze_range(cfg: LockConfig, l_min: int, l_max: int) -> list[KeyspaceStats]:
    """Audit every length in [l_min, l_max]."""
    if not 1 <= l_min <= l_max <= MAX_AUDIT_LENGTH:
        raise LengthOutOfRange(
            f"need 1 <= l_min <= l_max <= {MAX_AUDIT_LENGTH}, got {l_min}..{l_max}"
        )
    return [count_unlocking(cfg, length) for length in range(l_min, l_max + 1)]


def stats_to_csv(stats: Iterable[KeyspaceStats]) -> str:
    lines = ["length,total,unlocking,probability,nominal_claim"]
    for s in stats:
        lines.append(
            f"{s.length},{s.total_sequences},{s.unlocking},{s.probability_str()},{s.nominal_claim}"
        )
    return "\n".join(lines) + "\n"


def stats_to_text(stats: Sequence[KeyspaceStats]) -> str:
    lines = ["Keyspace audit (full 10-key alphabet, ordered sequences)", ""]
    lines.append(f"{'length':>6}  {'total':>12}  {'unlocking':>9}  {'probability':>16}  {'decimal':>10}")
    for s in stats:
        lines.append(
            f"{s.length:>6}  {s.total_sequences:>12}  {s.unlocking:>9}  "
            f"{s.probability_str():>16}  {s.probability_decimal:>10.3e}"
        )
    if stats:
        nominal = stats[0].nominal_claim
        lines.append("")
        lines.append(
            f"Nominal order-insensitive figure: C(10, code length) = {nominal} subsets."
        )
        lines.append(
            "The lock is order-sensitive, so the measured ordered-sequence "
            "probabilities above are the operative ones."
        )
    return "\n".join(lines) + "\n"
