"""Timed simulation: key events, the hold window, and relay outputs.

A scenario is a list of timestamped key presses.  Each press drives the
pure cascade from :mod:`combolock.core`; when the final latch goes high
the relay pulls in and a hold timer starts, after which every latch is
cleared again (auto relock).  The trace records every stimulus together
with the latch and output state right after it was applied.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    Effect,
    LatchVector,
    LockConfig,
    PressOutcome,
    press_key,
)


class ScenarioError(ValueError):
    """A scenario is malformed or violates the engine's preconditions."""


class UnsortedEvents(ScenarioError):
    pass


class NegativeTime(ScenarioError):
    pass


class ScenarioParseError(ScenarioError):
    """Scenario file rejected; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class TimerMode(enum.Enum):
    """When the auto-relock window is armed.

    ON_UNLOCK starts the hold timer at the moment the relay pulls in.
    ON_FIRST_PRESS starts it when the first latch is set, so a slow user
    can lose an entry in progress.
    """

    ON_UNLOCK = "on_unlock"
    ON_FIRST_PRESS = "on_first_press"


@dataclass(frozen=True)
class KeyEvent:
    """A key press at a point in scenario time."""

    t_ms: int
    key: int

    def __post_init__(self) -> None:
        if self.t_ms < 0:
            raise NegativeTime(f"event time must be non-negative, got {self.t_ms}")
        if not 0 <= self.key <= 9:
            raise ScenarioError(f"key must be a digit 0..9, got {self.key}")


class StimulusKind(enum.Enum):
    START = "start"
    PRESS = "press"
    HOLD_EXPIRED = "hold_expired"


OPEN, CLOSE = "OPEN", "CLOSE"
ON, OFF = "ON", "OFF"
HIGH, LOW = "HIGH", "LOW"


@dataclass(frozen=True)
class OutputState:
    """Relay-side observables: solenoid plus the two indicator lamps.

    The double-pole relay drives all three together, so the green lamp is
    on exactly while the solenoid is open and the red lamp is its
    complement.
    """

    solenoid_open: bool

    @property
    def solenoid(self) -> str:
        return OPEN if self.solenoid_open else CLOSE

    @property
    def green(self) -> str:
        return ON if self.solenoid_open else OFF

    @property
    def red(self) -> str:
        return OFF if self.solenoid_open else ON


def outputs_of(state: LatchVector) -> OutputState:
    """Map latch state to outputs: open exactly while the last latch is high."""
    return OutputState(solenoid_open=state.last)


@dataclass(frozen=True)
class TraceRecord:
    """One observable step: stimulus applied, resulting latches and outputs."""

    t_ms: int
    kind: StimulusKind
    key: int | None
    latches: LatchVector
    outputs: OutputState

    @property
    def stimulus(self) -> str:
        if self.kind is StimulusKind.PRESS:
            return f"press:{self.key}"
        return self.kind.value


@dataclass
class SimTrace:
    """Full observable record of one scenario run."""

    cfg: LockConfig
    records: list[TraceRecord] = field(default_factory=list)
    t_end_ms: int = 0

    @property
    def final(self) -> TraceRecord:
        return self.records[-1]

    def records_of(self, kind: StimulusKind) -> list[TraceRecord]:
        return [r for r in self.records if r.kind is kind]

    def to_csv(self) -> str:
        """Render the trace as CSV, one row per record.

        Latch levels are written HIGH/LOW, the solenoid OPEN/CLOSE, and
        the indicators ON/OFF.
        """
        n = self.cfg.n
        out = io.StringIO()
        q_cols = ",".join(f"q{i}" for i in range(n))
        out.write(f"t_ms,stimulus,{q_cols},solenoid,green,red\n")
        for rec in self.records:
            levels = ",".join(HIGH if b else LOW for b in rec.latches)
            out.write(
                f"{rec.t_ms},{rec.stimulus},{levels},"
                f"{rec.outputs.solenoid},{rec.outputs.green},{rec.outputs.red}\n"
            )
        return out.getvalue()


def run_scenario(
    cfg: LockConfig,
    events: Sequence[KeyEvent],
    t_end_ms: int,
    timer_mode: TimerMode = TimerMode.ON_UNLOCK,
) -> SimTrace:
    """Apply timestamped presses to the lock and enforce the hold window.

    Presses apply in order; when the relay pulls in (or, under
    ON_FIRST_PRESS, when the first latch is set) a relock is scheduled
    ``hold_time_ms`` later.  A reset key cancels the pending relock along
    with clearing the latches.  When a press and a scheduled relock land
    on the same millisecond the press is applied first.  Relocks beyond
    ``t_end_ms`` fall outside the observation window and are dropped.
    """
    for a, b in zip(events, events[1:]):
        if b.t_ms < a.t_ms:
            raise UnsortedEvents(f"events must be sorted by time: {a.t_ms} then {b.t_ms}")
    if t_end_ms < 0:
        raise NegativeTime(f"t_end_ms must be non-negative, got {t_end_ms}")
    if events and t_end_ms < events[-1].t_ms:
        raise ValueError(
            f"t_end_ms ({t_end_ms}) must cover the last event at {events[-1].t_ms} ms"
        )

    state = LatchVector.all_clear(cfg.n)
    trace = SimTrace(cfg=cfg, t_end_ms=t_end_ms)
    trace.records.append(TraceRecord(0, StimulusKind.START, None, state, outputs_of(state)))

    relock_at: int | None = None
    i = 0
    while True:
        event = events[i] if i < len(events) else None
        # Presses win ties against a relock scheduled for the same instant.
        if event is not None and (relock_at is None or event.t_ms <= relock_at):
            outcome = press_key(cfg, state, event.key)
            state = outcome.state
            relock_at = _retime_hold(cfg, timer_mode, outcome, event.t_ms, relock_at)
            trace.records.append(
                TraceRecord(event.t_ms, StimulusKind.PRESS, event.key, state, outputs_of(state))
            )
            i += 1
        elif relock_at is not None and relock_at <= t_end_ms:
            state = LatchVector.all_clear(cfg.n)
            trace.records.append(
                TraceRecord(relock_at, StimulusKind.HOLD_EXPIRED, None, state, outputs_of(state))
            )
            relock_at = None
        else:
            break
    return trace


def _retime_hold(
    cfg: LockConfig,
    timer_mode: TimerMode,
    outcome: PressOutcome,
    t_ms: int,
    relock_at: int | None,
) -> int | None:
    """Next pending relock time after one press."""
    if outcome.effect is Effect.RESET_ALL:
        return None
    if timer_mode is TimerMode.ON_UNLOCK:
        if outcome.effect is Effect.UNLOCK_EDGE:
            return t_ms + cfg.hold_time_ms
    else:  # ON_FIRST_PRESS: armed when the first latch is set
        if outcome.index == 0 and relock_at is None:
            return t_ms + cfg.hold_time_ms
    return relock_at


def parse_scenario(text: str) -> list[KeyEvent]:
    """Parse the scenario file format into events.

    One event per line as ``<t_ms> <key-digit>``; ``#`` starts a comment
    and blank lines are ignored.  Events must be sorted by time.
    """
    events: list[KeyEvent] = []
    last_t = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ScenarioParseError(line_no, f"expected '<t_ms> <key-digit>', got {line!r}")
        t_str, key_str = parts
        if not t_str.isdigit():
            raise ScenarioParseError(line_no, f"bad timestamp {t_str!r} (whole milliseconds)")
        if not (len(key_str) == 1 and key_str.isdigit()):
            raise ScenarioParseError(line_no, f"bad key {key_str!r} (single digit 0..9)")
        t_ms = int(t_str)
        if events and t_ms < last_t:
            raise ScenarioParseError(line_no, f"events must be sorted by time ({t_ms} < {last_t})")
        last_t = t_ms
        events.append(KeyEvent(t_ms, int(key_str)))
    return events


def load_scenario(path: str) -> list[KeyEvent]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


class VirtualLock:
    """Interactive lock on a virtual clock, for the REPL and scripting.

    Presses happen at the current virtual time; ``wait`` advances the
    clock and fires a pending relock if the new time reaches it.
    """

    def __init__(self, cfg: LockConfig, timer_mode: TimerMode = TimerMode.ON_UNLOCK) -> None:
        self.cfg = cfg
        self.timer_mode = timer_mode
        self.now_ms = 0
        self.state = LatchVector.all_clear(cfg.n)
        self._relock_at: int | None = None

    def press(self, key: int) -> PressOutcome:
        outcome = press_key(self.cfg, self.state, key)
        self.state = outcome.state
        self._relock_at = _retime_hold(
            self.cfg, self.timer_mode, outcome, self.now_ms, self._relock_at
        )
        return outcome

    def wait(self, ms: int) -> bool:
        """Advance the clock; returns True if the hold window expired."""
        if ms < 0:
            raise NegativeTime(f"wait must be non-negative, got {ms}")
        self.now_ms += ms
        if self._relock_at is not None and self._relock_at <= self.now_ms:
            self.state = LatchVector.all_clear(self.cfg.n)
            self._relock_at = None
            return True
        return False

    @property
    def outputs(self) -> OutputState:
        return outputs_of(self.state)

    @property
    def relock_pending_at(self) -> int | None:
        return self._relock_at
