"""Transient execution of single-output stateful gates.

Topology: all input memristors are driven in parallel by the execution
voltage v0, their far terminals joined at a common node, and the output
memristor connects that node to ground with its top electrode grounded.
The divider voltage at the node rises with the number of logic-1 inputs;
if it exceeds the output cell's negative switching threshold, the output
(pre-initialized to logic 1) switches to logic 0. A single voltage
therefore selects which Boolean function is computed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .device import (
    DeviceError,
    DeviceParams,
    MemristorCell,
    integrate_state,
    logic_of,
    resistance_of,
    set_logic,
    switching_time,
)


class GateKind(enum.Enum):
    NOR3 = "nor3"
    NAND3 = "nand3"
    NAND2 = "nand2"
    MIN3 = "min3"
    NOT1 = "not1"


#: arity and switching threshold (minimum number of logic-1 inputs for
#: which the output must end at logic 0) per gate.
_GATE_ARITY = {
    GateKind.NOR3: 3,
    GateKind.NAND3: 3,
    GateKind.NAND2: 2,
    GateKind.MIN3: 3,
    GateKind.NOT1: 1,
}
_GATE_SWITCH_COUNT = {
    GateKind.NOR3: 1,
    GateKind.NAND3: 3,
    GateKind.NAND2: 2,
    GateKind.MIN3: 2,
    GateKind.NOT1: 1,
}


def gate_arity(gate: GateKind) -> int:
    return _GATE_ARITY[gate]


def gate_truth(gate: GateKind, bits: Sequence[int]) -> int:
    """Expected output for the gate on the given input bits."""
    if len(bits) != gate_arity(gate):
        raise ValueError(f"{gate.name} takes {gate_arity(gate)} inputs")
    return 0 if sum(bits) >= _GATE_SWITCH_COUNT[gate] else 1


def node_voltage(v0: float, r_out: float, input_resistances: Sequence[float]) -> float:
    """Voltage across the grounded output cell for the given divider state."""
    if not input_resistances:
        raise ValueError("at least one input resistance required")
    if r_out <= 0 or any(r <= 0 for r in input_resistances):
        raise ValueError("resistances must be positive")
    g_par = sum(1.0 / r for r in input_resistances)
    r_par = 1.0 / g_par
    return v0 * r_out / (r_out + r_par)


def _r_par(params: DeviceParams, ones: int, arity: int) -> float:
    g = ones / params.r_on + (arity - ones) / params.r_off
    return 1.0 / g


@dataclass(frozen=True)
class VoltageWindow:
    """Open-below, closed-above interval of admissible execution voltages."""

    low: float
    high: float

    @property
    def empty(self) -> bool:
        return not (self.low < self.high)

    @property
    def midpoint(self) -> float:
        if self.empty:
            raise ValueError("empty window has no midpoint")
        return 0.5 * (self.low + self.high)

    def contains(self, v0: float) -> bool:
        return (not self.empty) and self.low < v0 <= self.high


def static_window(gate: GateKind, params: DeviceParams) -> VoltageWindow:
    """Range of v0 for which the gate computes its truth table without
    disturbing any input.

    Three constraints, all evaluated at the initial state (output at r_on,
    where the node voltage is lowest and the input drop is highest):

    * patterns that must switch (ones >= threshold) see a node voltage
      above the output's negative threshold;
    * patterns that must not switch (worst case: threshold-1 ones) stay at
      or below it;
    * a logic-0 input must never see a forward drop above the positive
      threshold (worst case: the all-zeros pattern, where the node sits
      lowest).
    """
    n = gate_arity(gate)
    t = _GATE_SWITCH_COUNT[gate]
    r_on = params.r_on

    def divider_fraction(ones: int) -> float:
        r_par = _r_par(params, ones, n)
        return r_on / (r_on + r_par)

    low = params.v_off_threshold / divider_fraction(t)
    high = params.v_off_threshold / divider_fraction(t - 1) if t >= 1 else float("inf")
    # input preservation: v0 - v_node <= v_on at the all-zeros pattern
    keep = params.v_on_threshold / (1.0 - divider_fraction(0))
    return VoltageWindow(low, min(high, keep))


def default_v0(gate: GateKind, params: DeviceParams) -> float:
    """Midpoint of the derived operating window."""
    return static_window(gate, params).midpoint


#: Execution voltages as published for the reference simulator setup.
#: Kept as a named preset; they are not guaranteed to fall inside the
#: windows derived from the behavioral model parameters.
TABLE_V0_PRESET = {
    GateKind.MIN3: 1.2,
    GateKind.NAND2: 1.2,
    GateKind.NAND3: 1.2,
    GateKind.NOT1: 1.55,
    GateKind.NOR3: 1.2,
}


@dataclass
class StepSetup:
    gate: GateKind
    inputs: List[MemristorCell]
    output: MemristorCell
    v0: float
    pulse_width: Optional[float] = None
    dt: Optional[float] = None
    record_trace: bool = False

    def __post_init__(self):
        if len(self.inputs) != gate_arity(self.gate):
            raise ValueError(
                f"{self.gate.name} takes {gate_arity(self.gate)} inputs, "
                f"got {len(self.inputs)}")


@dataclass
class StepResult:
    output_logic: int
    energy: float
    inputs_preserved: bool
    output_cell: MemristorCell
    input_cells: List[MemristorCell]
    trace: Optional[List[Tuple[float, float, List[float]]]] = None


@lru_cache(maxsize=16)
def default_pulse_width(params: DeviceParams) -> float:
    """20x the full switching traversal time; guarantees completion."""
    return 20.0 * switching_time(params)


def execute_step(setup: StepSetup, params: DeviceParams,
                 steps_per_pulse: int = 2000) -> StepResult:
    """Time-step one gate execution and account its energy.

    The output cell must already hold logic 1. Sign convention: the output
    cell sees minus the node voltage (its top electrode is grounded), each
    input cell sees v0 minus the node voltage. Energy integrates
    sum(v^2/R) dt over every cell for the whole pulse; once every cell
    voltage is inside the dead zone the state is frozen and the remaining
    dissipation is added in closed form.
    """
    if setup.v0 < 0:
        raise ValueError("v0 must be non-negative")
    if logic_of(setup.output) != 1:
        raise ValueError("output cell must be initialized to logic 1")
    pulse = setup.pulse_width if setup.pulse_width is not None else default_pulse_width(params)
    dt = setup.dt if setup.dt is not None else pulse / steps_per_pulse

    inputs = list(setup.inputs)
    out = setup.output
    initial_logic = [logic_of(c) for c in inputs]

    energy = 0.0
    trace: Optional[list] = [] if setup.record_trace else None
    t = 0.0
    while t < pulse:
        r_in = [resistance_of(c, params) for c in inputs]
        r_out = resistance_of(out, params)
        v_node = node_voltage(setup.v0, r_out, r_in)
        v_out = -v_node
        v_in = setup.v0 - v_node

        if trace is not None:
            trace.append((t, v_node, [c.x for c in inputs] + [out.x]))

        power = v_out * v_out / r_out + sum(v_in * v_in / r for r in r_in)
        # a cell is still able to change resistance only if it is driven
        # beyond threshold towards the opposite state
        active = (out.x >= 0 and v_node > params.v_off_threshold) or any(
            c.x < 0 and v_in > params.v_on_threshold for c in inputs)
        if not active:
            # resistances are frozen for the rest of the pulse, so the
            # dissipation stays constant
            energy += power * (pulse - t)
            break
        energy += power * dt
        out = integrate_state(out, v_out, dt, params)
        inputs = [integrate_state(c, v_in, dt, params) for c in inputs]
        t += dt

    preserved = [logic_of(c) for c in inputs] == initial_logic
    return StepResult(
        output_logic=logic_of(out),
        energy=energy,
        inputs_preserved=preserved,
        output_cell=out,
        input_cells=inputs,
        trace=trace,
    )


@dataclass
class PatternResult:
    bits: Tuple[int, ...]
    expected: int
    actual: int
    inputs_preserved: bool
    energy: float

    @property
    def ok(self) -> bool:
        return self.actual == self.expected and self.inputs_preserved


@dataclass
class TruthTableReport:
    gate: GateKind
    v0: float
    patterns: List[PatternResult] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(p.ok for p in self.patterns)

    @property
    def mean_energy(self) -> float:
        return sum(p.energy for p in self.patterns) / len(self.patterns)


def verify_gate_truth_table(gate: GateKind, v0: float,
                            params: DeviceParams,
                            pulse_width: Optional[float] = None,
                            dt: Optional[float] = None) -> TruthTableReport:
    """Run the gate transiently on every input pattern and compare against
    its Boolean truth function."""
    n = gate_arity(gate)
    report = TruthTableReport(gate=gate, v0=v0)
    for pattern in range(1 << n):
        bits = tuple((pattern >> (n - 1 - i)) & 1 for i in range(n))
        cells = [set_logic(MemristorCell(0.0, label=f"in{i}"), b, params)
                 for i, b in enumerate(bits)]
        out = set_logic(MemristorCell(0.0, label="out"), 1, params)
        setup = StepSetup(gate=gate, inputs=cells, output=out, v0=v0,
                          pulse_width=pulse_width, dt=dt)
        result = execute_step(setup, params)
        report.patterns.append(PatternResult(
            bits=bits,
            expected=gate_truth(gate, bits),
            actual=result.output_logic,
            inputs_preserved=result.inputs_preserved,
            energy=result.energy,
        ))
    return report
