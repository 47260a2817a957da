"""Simulator and security analyzer for a latch-cascade keypad lock.

The lock under study is a four-digit electronic combination lock built
from a chain of set/reset latches: code keys pressed in order walk the
chain, dedicated reset keys clear it, decoy keys do nothing, and setting
the final latch energizes a relay that opens the solenoid for an
RC-timed hold window.  This package models that machine exactly, replays
the bench-test table recorded on the reference hardware, computes the
circuit's timing and bias figures, and exhaustively audits how many key
sequences of a given length actually open it.
"""

from .circuit import (
    BjtOperatingPoint,
    CircuitParams,
    bjt_operating_point,
    derive_hold_time,
    discharge_voltage,
    divider_out,
    ripple_estimate,
    time_constant,
    time_to_threshold,
)
from .core import (
    Effect,
    KeyRole,
    LatchVector,
    LockConfig,
    PressOutcome,
    RoleKind,
    classify_key,
    press_key,
    run_sequence,
    validate_config,
)
from .keyspace import (
    KeyspaceStats,
    analyze_range,
    count_unlocking,
    count_unlocking_with_prefix,
    is_unlocking,
    nominal_combinations,
)
from .sim import (
    KeyEvent,
    OutputState,
    SimTrace,
    TimerMode,
    TraceRecord,
    VirtualLock,
    outputs_of,
    parse_scenario,
    run_scenario,
)
from .table1 import PUBLISHED_ROWS, Table1Report, reproduce_table1

__version__ = "0.1.0"

__all__ = [
    "BjtOperatingPoint",
    "CircuitParams",
    "Effect",
    "KeyEvent",
    "KeyRole",
    "KeyspaceStats",
    "LatchVector",
    "LockConfig",
    "OutputState",
    "PUBLISHED_ROWS",
    "PressOutcome",
    "RoleKind",
    "SimTrace",
    "Table1Report",
    "TimerMode",
    "TraceRecord",
    "VirtualLock",
    "analyze_range",
    "bjt_operating_point",
    "classify_key",
    "count_unlocking",
    "count_unlocking_with_prefix",
    "derive_hold_time",
    "discharge_voltage",
    "divider_out",
    "is_unlocking",
    "nominal_combinations",
    "outputs_of",
    "parse_scenario",
    "press_key",
    "reproduce_table1",
    "ripple_estimate",
    "run_scenario",
    "run_sequence",
    "time_constant",
    "time_to_threshold",
    "validate_config",
]
