"""Pure, time-free model of the lock's latch cascade.

The lock stores one set/reset latch per code digit, chained so that latch
``i`` can only be set while latch ``i - 1`` is already high.  Keypad keys
fall into three roles: code keys advance the cascade when pressed in order,
reset keys clear every latch, and dummy (decoy) keys are electrically
unconnected and do nothing.  Everything in this module is an immutable
value; pressing a key returns a new state instead of mutating the old one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

KEYPAD = tuple(range(10))

DEFAULT_CODE = (9, 5, 0, 2)
DEFAULT_RESET_KEYS = frozenset({3, 4, 7, 8})
DEFAULT_DUMMY_KEYS = frozenset({1, 6})
DEFAULT_HOLD_TIME_MS = 4700


class ConfigError(ValueError):
    """A lock configuration violates one of its invariants."""


class EmptyCode(ConfigError):
    pass


class DuplicateCodeKey(ConfigError):
    pass


class OverlappingRoles(ConfigError):
    pass


class KeyOutOfRange(ConfigError):
    pass


class RoleKind(enum.Enum):
    CODE = "code"
    RESET = "reset"
    DUMMY = "dummy"


@dataclass(frozen=True)
class KeyRole:
    """Role of a single keypad key under a given configuration.

    ``index`` is the 0-based position in the code and is set only for
    ``RoleKind.CODE``.  Keys with no assigned role classify as dummies,
    matching switches that are simply left unconnected.
    """

    kind: RoleKind
    index: int | None = None

    def __post_init__(self) -> None:
        if (self.kind is RoleKind.CODE) != (self.index is not None):
            raise ValueError("index is required for code keys and only for them")


@dataclass(frozen=True)
class LockConfig:
    """The lock's identity: code sequence, key roles, and hold window.

    Defaults model the reference hardware: code 9-5-0-2, reset keys
    {3, 4, 7, 8}, decoys {1, 6}, and a 4.7 s hold window.
    """

    code: tuple[int, ...] = DEFAULT_CODE
    reset_keys: frozenset[int] = DEFAULT_RESET_KEYS
    dummy_keys: frozenset[int] = DEFAULT_DUMMY_KEYS
    hold_time_ms: int = DEFAULT_HOLD_TIME_MS

    def __post_init__(self) -> None:
        # Coerce common iterables so callers may pass lists/sets.
        object.__setattr__(self, "code", tuple(self.code))
        object.__setattr__(self, "reset_keys", frozenset(self.reset_keys))
        object.__setattr__(self, "dummy_keys", frozenset(self.dummy_keys))

    @property
    def n(self) -> int:
        """Code length; also the number of latches in the cascade."""
        return len(self.code)


def validate_config(cfg: LockConfig) -> LockConfig:
    """Return ``cfg`` unchanged if every invariant holds, else raise.

    Raises:
        EmptyCode: the code has no digits.
        DuplicateCodeKey: a digit appears twice in the code.
        OverlappingRoles: code, reset, and dummy sets are not disjoint.
        KeyOutOfRange: a referenced key is not a digit 0..9, or the
            hold time is not positive.
    """
    if len(cfg.code) == 0:
        raise EmptyCode("code must contain at least one key")
    if len(set(cfg.code)) != len(cfg.code):
        raise DuplicateCodeKey(f"code entries must be distinct: {list(cfg.code)}")
    for key in (*cfg.code, *cfg.reset_keys, *cfg.dummy_keys):
        if not isinstance(key, int) or not 0 <= key <= 9:
            raise KeyOutOfRange(f"key {key!r} is not a keypad digit 0..9")
    code_set = set(cfg.code)
    if code_set & cfg.reset_keys or code_set & cfg.dummy_keys or cfg.reset_keys & cfg.dummy_keys:
        raise OverlappingRoles(
            "code, reset, and dummy key sets must be pairwise disjoint: "
            f"code={sorted(code_set)} reset={sorted(cfg.reset_keys)} dummy={sorted(cfg.dummy_keys)}"
        )
    if cfg.hold_time_ms <= 0:
        raise KeyOutOfRange(f"hold_time_ms must be positive, got {cfg.hold_time_ms}")
    return cfg


@lru_cache(maxsize=4096)
def _role_map(cfg: LockConfig) -> dict[int, KeyRole]:
    roles: dict[int, KeyRole] = {}
    for key in KEYPAD:
        if key in cfg.reset_keys:
            roles[key] = KeyRole(RoleKind.RESET)
        else:
            roles[key] = KeyRole(RoleKind.DUMMY)
    for i, key in enumerate(cfg.code):
        roles[key] = KeyRole(RoleKind.CODE, i)
    return roles


def classify_key(cfg: LockConfig, key: int) -> KeyRole:
    """Classify a keypad digit under ``cfg``.

    Unassigned keys behave as dummies (an unconnected switch).
    """
    try:
        return _role_map(cfg)[key]
    except KeyError:
        raise KeyOutOfRange(f"key {key!r} is not a keypad digit 0..9") from None


@dataclass(frozen=True)
class LatchVector:
    """Outputs of the latch chain, ``q[i]`` high means latch i is set.

    Valid states are always prefixes: a set latch implies every earlier
    latch is set too, because the cascade only advances in order.
    """

    q: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", tuple(bool(b) for b in self.q))

    @classmethod
    def all_clear(cls, n: int) -> LatchVector:
        return _ALL_CLEAR.setdefault(n, cls((False,) * n))

    def __len__(self) -> int:
        return len(self.q)

    def __getitem__(self, i: int) -> bool:
        return self.q[i]

    def __iter__(self):
        return iter(self.q)

    @property
    def set_count(self) -> int:
        """Number of set latches (equals the cascade position)."""
        return sum(self.q)

    @property
    def last(self) -> bool:
        """State of the final latch, the one that drives the relay."""
        return self.q[-1]

    def is_prefix(self) -> bool:
        """True iff the set latches form a contiguous prefix."""
        seen_clear = False
        for bit in self.q:
            if bit and seen_clear:
                return False
            if not bit:
                seen_clear = True
        return True

    def with_set(self, i: int) -> LatchVector:
        return LatchVector(self.q[:i] + (True,) + self.q[i + 1:])


_ALL_CLEAR: dict[int, LatchVector] = {}


class Effect(enum.Enum):
    """What a single key press did to the cascade."""

    ADVANCED = "advanced"
    RESET_ALL = "reset_all"
    NO_OP = "no_op"
    UNLOCK_EDGE = "unlock_edge"


@dataclass(frozen=True)
class PressOutcome:
    """New latch state plus the effect of one press.

    ``index`` is the latch that was set for ADVANCED and UNLOCK_EDGE
    (always the last latch for the latter), ``None`` otherwise.
    """

    state: LatchVector
    effect: Effect
    index: int | None = None


def press_key(cfg: LockConfig, state: LatchVector, key: int) -> PressOutcome:
    """Apply one key press to the cascade.

    Dummy keys never touch the circuit.  Reset keys clear every latch.
    A code key sets its latch only when it is the next one in order;
    out-of-order and repeated code presses do nothing.  Setting the final
    latch is reported as UNLOCK_EDGE, the moment the relay pulls in.
    """
    role = classify_key(cfg, key)
    if role.kind is RoleKind.DUMMY:
        return PressOutcome(state, Effect.NO_OP)
    if role.kind is RoleKind.RESET:
        return PressOutcome(LatchVector.all_clear(len(state)), Effect.RESET_ALL)

    i = role.index
    assert i is not None
    can_set = not state[i] and (i == 0 or state[i - 1])
    if not can_set:
        return PressOutcome(state, Effect.NO_OP)
    new_state = state.with_set(i)
    if i == len(state) - 1:
        return PressOutcome(new_state, Effect.UNLOCK_EDGE, i)
    return PressOutcome(new_state, Effect.ADVANCED, i)


def run_sequence(cfg: LockConfig, keys: Iterable[int]) -> tuple[LatchVector, bool]:
    """Fold a key sequence from the cleared state.

    Returns the final latch state and whether an unlock edge occurred
    anywhere in the sequence.  A later reset does not revoke an unlock:
    once the relay has pulled in, the attempt counts as successful.
    """
    state = LatchVector.all_clear(cfg.n)
    unlocked = False
    for key in keys:
        outcome = press_key(cfg, state, key)
        state = outcome.state
        if outcome.effect is Effect.UNLOCK_EDGE:
            unlocked = True
    return state, unlocked
