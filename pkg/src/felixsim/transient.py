"""Transient execution of whole adder-cell micro-programs.

Bridges the functional micro-program representation to the gate engine:
each single-voltage step is run as a full divider transient on real cell
states. Only the single-voltage gate set is simulable here; two-cycle
composite operations have no published decomposition in this context and
are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .device import DeviceParams, MemristorCell, logic_of, set_logic
from .engine import (
    GateKind,
    StepSetup,
    StepResult,
    default_v0,
    execute_step,
    TABLE_V0_PRESET,
)
from .isa import FunctionalOp, MicroProgram, ProgramError

_TRANSIENT_GATES = {
    FunctionalOp.NOR3: GateKind.NOR3,
    FunctionalOp.NAND3: GateKind.NAND3,
    FunctionalOp.NAND2: GateKind.NAND2,
    FunctionalOp.MIN3: GateKind.MIN3,
    FunctionalOp.NOT: GateKind.NOT1,
}


def v0_derived(gate: GateKind, params: DeviceParams) -> float:
    return default_v0(gate, params)


def v0_table(gate: GateKind, params: DeviceParams) -> float:
    return TABLE_V0_PRESET[gate]


@dataclass
class ProgramTransientResult:
    outputs: Dict[str, int]
    energy: float
    inputs_preserved: bool
    step_results: List[StepResult]


def run_program_transient(
    prog: MicroProgram,
    inputs: Dict[str, int],
    params: DeviceParams,
    v0_for_gate: Optional[Callable[[GateKind, DeviceParams], float]] = None,
    record_traces: bool = False,
) -> ProgramTransientResult:
    """Execute every step of a micro-program at circuit level.

    Cells live in a shared store; compute outputs are re-initialized to
    logic 1 immediately before their step, matching the execution model.
    Energy sums over compute pulses only (initialization writes excluded).
    """
    if v0_for_gate is None:
        v0_for_gate = v0_derived
    store: Dict[str, MemristorCell] = {}
    for name in prog.input_cells:
        if name not in inputs:
            raise ProgramError(f"missing input {name!r}")
        store[name] = set_logic(MemristorCell(0.0, label=name), inputs[name], params)
    for name, bit in prog.init_steps:
        store[name] = set_logic(MemristorCell(0.0, label=name), bit, params)

    energy = 0.0
    preserved = True
    step_results: List[StepResult] = []
    for step in prog.compute_steps:
        gate = _TRANSIENT_GATES.get(step.op)
        if gate is None:
            raise ProgramError(f"{step.op.name} has no single-voltage transient form")
        store[step.output] = set_logic(
            store.get(step.output, MemristorCell(0.0, label=step.output)), 1, params)
        setup = StepSetup(
            gate=gate,
            inputs=[store[c] for c in step.inputs],
            output=store[step.output],
            v0=v0_for_gate(gate, params),
            record_trace=record_traces,
        )
        result = execute_step(setup, params)
        for name, cell in zip(step.inputs, result.input_cells):
            store[name] = cell
        store[step.output] = result.output_cell
        energy += result.energy
        preserved = preserved and result.inputs_preserved
        step_results.append(result)

    # input cells must still read back what was written
    for name in prog.input_cells:
        preserved = preserved and (logic_of(store[name]) == inputs[name])
    outputs = {out: logic_of(store[cell]) for out, cell in prog.outputs.items()}
    return ProgramTransientResult(
        outputs=outputs,
        energy=energy,
        inputs_preserved=preserved,
        step_results=step_results,
    )


def average_program_energy(prog: MicroProgram, params: DeviceParams,
                           v0_for_gate=None) -> float:
    """Mean transient energy over all 8 input states of an adder cell."""
    total = 0.0
    for pattern in range(8):
        bits = {"A": (pattern >> 2) & 1, "B": (pattern >> 1) & 1, "Cin": pattern & 1}
        total += run_program_transient(prog, bits, params, v0_for_gate).energy
    return total / 8.0
