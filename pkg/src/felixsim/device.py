"""Voltage-controlled behavioral memristor model.

The device switches between two discrete resistance states. A dimensionless
state variable x determines the resistance: r_on for x >= 0, r_off for x < 0.
The state only moves while the applied voltage is outside the threshold
window [-v_off_threshold, v_on_threshold]; inside that window the device is
inert, which is what makes single-voltage stateful gates possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


class DeviceError(ValueError):
    """Invalid device parameters or inputs."""


@dataclass(frozen=True)
class DeviceParams:
    """Behavioral model parameters.

    a: switching-rate shape parameter (dimensionless)
    r_on / r_off: low / high resistance states (ohms)
    v_on_threshold: positive switching threshold (volts)
    v_off_threshold: magnitude of the negative switching threshold (volts)
    x_init: state magnitude written by set_logic
    """

    a: float = 10.0
    r_on: float = 100.0
    r_off: float = 1000.0
    v_on_threshold: float = 1.2
    v_off_threshold: float = 0.6
    x_init: float = 1.0

    def __post_init__(self):
        if not (self.r_off > self.r_on > 0):
            raise DeviceError(f"need r_off > r_on > 0, got {self.r_on}, {self.r_off}")
        if self.v_on_threshold <= 0 or self.v_off_threshold <= 0:
            raise DeviceError("thresholds must be positive")
        if self.a <= 0:
            raise DeviceError("a must be positive")
        if self.x_init <= 0:
            raise DeviceError("x_init must be positive")


#: The parameter set used for the divider illustration with a 0.5 V
#: negative threshold and a 10 kOhm / 10 MOhm resistance pair.
LEGACY_PARAMS = DeviceParams(r_on=10e3, r_off=10e6, v_off_threshold=0.5)


@dataclass(frozen=True)
class MemristorCell:
    """A single memristor: state variable plus a label for reports."""

    x: float
    label: str = ""


def dx_dt(x: float, v: float, params: DeviceParams) -> float:
    """State rate of change for applied voltage v.

    Positive over-threshold voltages drive x up at rate 1/e^(x-a); negative
    ones drive it down at rate -1/e^(-x-a). Within the threshold window the
    rate is zero.
    """
    if not (math.isfinite(x) and math.isfinite(v)):
        raise DeviceError(f"non-finite state or voltage: x={x}, v={v}")
    if v > params.v_on_threshold:
        return math.exp(params.a - x)
    if v < -params.v_off_threshold:
        return -math.exp(params.a + x)
    return 0.0


def integrate_state(cell: MemristorCell, v: float, dt: float,
                    params: DeviceParams) -> MemristorCell:
    """One explicit-Euler step. The logarithmic rate self-limits, so x is
    never clamped."""
    if dt <= 0:
        raise DeviceError(f"dt must be positive, got {dt}")
    rate = dx_dt(cell.x, v, params)
    if rate == 0.0:
        return cell
    return replace(cell, x=cell.x + dt * rate)


def resistance_of(cell: MemristorCell, params: DeviceParams) -> float:
    """r_on for x >= 0 (boundary included), r_off otherwise."""
    return params.r_on if cell.x >= 0 else params.r_off


def logic_of(cell: MemristorCell) -> int:
    """Logic read-out: 1 for the low-resistance state (x >= 0)."""
    return 1 if cell.x >= 0 else 0


def set_logic(cell: MemristorCell, bit: int, params: DeviceParams) -> MemristorCell:
    """Idealized write: place x at +/- x_init according to bit."""
    if bit not in (0, 1):
        raise DeviceError(f"bit must be 0 or 1, got {bit}")
    return replace(cell, x=params.x_init if bit else -params.x_init)


def current_through(cell: MemristorCell, v: float, params: DeviceParams) -> float:
    """Ohmic current i = v / R(x)."""
    return v / resistance_of(cell, params)


def switching_time(params: DeviceParams, dt: float = None) -> float:
    """Time for x to traverse from +x_init to below zero under a constant
    over-threshold negative drive, computed by Euler integration.

    The rate is independent of the voltage magnitude once beyond threshold,
    so this is a pure function of (a, x_init). Used to size default pulse
    widths.
    """
    # analytic guess for step sizing: integral of e^-(x+a) over [0, x_init]
    estimate = math.exp(-params.a) * (1.0 - math.exp(-params.x_init))
    if dt is None:
        dt = estimate / 10000.0
    x = params.x_init
    t = 0.0
    drive = -(params.v_off_threshold * 2.0)
    while x >= 0:
        x += dt * dx_dt(x, drive, params)
        t += dt
        if t > 1e6 * estimate:  # pragma: no cover
            raise DeviceError("switching did not complete; bad parameters?")
    return t
