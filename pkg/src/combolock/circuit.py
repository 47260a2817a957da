"""Closed-form circuit math for the lock's timing and output stages.

Covers the hold-timer RC network, the relay driver transistor's DC
operating point, the pull-up voltage dividers, and rough supply-side
figures (ripple, regulator headroom).  All functions are stateless and
work in SI units: ohms, farads, volts, amperes, seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class CircuitError(ValueError):
    """A circuit computation was asked for with unphysical inputs."""


class NonPositiveRC(CircuitError):
    pass


class ThresholdAboveInitial(CircuitError):
    pass


class InvalidBias(CircuitError):
    pass


class ZeroTotalResistance(CircuitError):
    pass


class NonPositiveFC(CircuitError):
    pass


@dataclass(frozen=True)
class CircuitParams:
    """Component values and rail figures of the reference build.

    r1..r4 pull the keypad switch nodes up; r6/c1 set the hold window;
    r9/r5 divide the first latch output at rest and r5/r8 feed the reset
    input; r10 is the driver transistor's base resistor.  c2 smooths the
    rectified rail, c3..c5 sit around the 12 V regulator.
    """

    r1: float = 10e3
    r2: float = 10e3
    r3: float = 10e3
    r4: float = 10e3
    r5: float = 680e3
    r6: float = 470e3
    r7: float = 100.0
    r8: float = 10e6
    r9: float = 10e3
    r10: float = 4.7e3
    c1: float = 10e-6
    c2: float = 470e-6
    c3: float = 100e-9
    c4: float = 100e-9
    c5: float = 100e-6
    vcc: float = 12.0
    vbe: float = 0.7
    hfe: float = 320.0
    vhigh: float = 11.3
    vlow: float = 0.7
    mains_v: float = 240.0
    mains_f: float = 50.0
    secondary_v: float = 12.0
    regulator_out_v: float = 12.0
    # Typical dropout of a 78xx three-terminal regulator.
    regulator_dropout_v: float = 2.0

    def __post_init__(self) -> None:
        for name in ("r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10"):
            if getattr(self, name) <= 0:
                raise CircuitError(f"{name} must be positive")
        for name in ("c1", "c2", "c3", "c4", "c5"):
            if getattr(self, name) <= 0:
                raise CircuitError(f"{name} must be positive")
        if self.hfe <= 0:
            raise CircuitError("hfe must be positive")
        if not 0 < self.vbe < self.vcc:
            raise InvalidBias(f"need 0 < vbe < vcc, got vbe={self.vbe}, vcc={self.vcc}")
        if self.mains_f <= 0:
            raise CircuitError("mains_f must be positive")


@dataclass(frozen=True)
class BjtOperatingPoint:
    """DC bias of the relay driver: last-latch drive voltage and currents."""

    v_q3: float
    i_b: float
    i_c: float
    i_e: float


def time_constant(r: float, c: float) -> float:
    """tau = R * C."""
    if r < 0 or c < 0:
        raise NonPositiveRC(f"r and c must be non-negative, got r={r}, c={c}")
    return r * c


def discharge_voltage(v0: float, r: float, c: float, t: float) -> float:
    """Voltage of a capacitor discharging through R after time t.

    First-order decay v0 * exp(-t / RC); strictly decreasing in t for
    any positive starting voltage.
    """
    if r <= 0 or c <= 0:
        raise NonPositiveRC(f"r and c must be positive, got r={r}, c={c}")
    if v0 < 0:
        raise CircuitError(f"v0 must be non-negative, got {v0}")
    if t < 0:
        raise CircuitError(f"t must be non-negative, got {t}")
    return v0 * math.exp(-t / (r * c))


def time_to_threshold(v0: float, vth: float, r: float, c: float) -> float:
    """Time for the discharge curve to fall from v0 to vth.

    Inverse of :func:`discharge_voltage`: returns RC * ln(v0 / vth).
    """
    if r <= 0 or c <= 0:
        raise NonPositiveRC(f"r and c must be positive, got r={r}, c={c}")
    if vth <= 0:
        raise CircuitError(f"vth must be positive, got {vth}")
    if vth > v0:
        raise ThresholdAboveInitial(f"threshold {vth} V exceeds initial voltage {v0} V")
    return r * c * math.log(v0 / vth)


def bjt_operating_point(vcc: float, vbe: float, rb: float, hfe: float) -> BjtOperatingPoint:
    """DC operating point of the common-emitter relay driver.

    The base loop gives v_q3 = vcc - vbe across the base resistor, so
    i_b = v_q3 / rb, i_c = hfe * i_b, and i_e = i_b + i_c (KCL, exact).
    """
    if vbe >= vcc:
        raise InvalidBias(f"vbe ({vbe} V) must be below vcc ({vcc} V)")
    if vbe <= 0:
        raise InvalidBias(f"vbe must be positive, got {vbe}")
    if rb <= 0:
        raise CircuitError(f"rb must be positive, got {rb}")
    if hfe <= 0:
        raise CircuitError(f"hfe must be positive, got {hfe}")
    v_q3 = vcc - vbe
    i_b = v_q3 / rb
    i_c = hfe * i_b
    return BjtOperatingPoint(v_q3=v_q3, i_b=i_b, i_c=i_c, i_e=i_b + i_c)


def divider_out(vin: float, r_top: float, r_bottom: float) -> float:
    """Output of a resistive divider: vin * r_bottom / (r_top + r_bottom)."""
    if r_top < 0 or r_bottom < 0:
        raise CircuitError(f"resistances must be non-negative, got {r_top}, {r_bottom}")
    if r_top + r_bottom == 0:
        raise ZeroTotalResistance("divider needs a non-zero total resistance")
    if vin < 0:
        raise CircuitError(f"vin must be non-negative, got {vin}")
    # Ratio first: keeps the r_top = 0 and r_bottom = 0 edges exact.
    return vin * (r_bottom / (r_top + r_bottom))


def ripple_estimate(i_load: float, f: float, c: float) -> float:
    """Peak-to-peak ripple of a full-wave rectified rail: I / (2 f C)."""
    if f <= 0 or c <= 0:
        raise NonPositiveFC(f"f and c must be positive, got f={f}, c={c}")
    if i_load < 0:
        raise CircuitError(f"i_load must be non-negative, got {i_load}")
    return i_load / (2.0 * f * c)


def derive_hold_time(params: CircuitParams) -> int:
    """Hold window in whole milliseconds, from the R6/C1 time constant.

    With the default parts this is 4700 ms and is what populates
    ``LockConfig.hold_time_ms``.
    """
    return round(time_constant(params.r6, params.c1) * 1000.0)


def regulator_output(v_in: float, params: CircuitParams | None = None) -> float:
    """Idealized three-terminal regulator: nominal output above dropout.

    Below the dropout margin the device just follows the input minus
    its dropout (clamped at zero); no foldback behavior is modeled.
    """
    p = params if params is not None else CircuitParams()
    if v_in >= p.regulator_out_v + p.regulator_dropout_v:
        return p.regulator_out_v
    return max(v_in - p.regulator_dropout_v, 0.0)
