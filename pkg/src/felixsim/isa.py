"""Functional gate semantics, micro-programs and resource accounting.

A micro-program is an ordered list of gate steps over named cells. Input
cells are read-only (the logic family is non-destructive); every work cell
has to be initialized before compute steps may write it. Cycle costs per
operation follow the one/two-cycle split of the gate set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple


class ProgramError(ValueError):
    """Malformed micro-program or bad execution request."""


class FunctionalOp(enum.Enum):
    NOT = "not"
    OR = "or"
    NOR3 = "nor3"
    NAND2 = "nand2"
    NAND3 = "nand3"
    MIN3 = "min3"
    MAJ3 = "maj3"
    XOR2 = "xor2"
    AND2 = "and2"


OP_ARITY = {
    FunctionalOp.NOT: 1,
    FunctionalOp.OR: 2,
    FunctionalOp.NOR3: 3,
    FunctionalOp.NAND2: 2,
    FunctionalOp.NAND3: 3,
    FunctionalOp.MIN3: 3,
    FunctionalOp.MAJ3: 3,
    FunctionalOp.XOR2: 2,
    FunctionalOp.AND2: 2,
}

#: single-voltage gates take one cycle; MAJ/XOR/AND take two
OP_CYCLES = {
    FunctionalOp.NOT: 1,
    FunctionalOp.OR: 1,
    FunctionalOp.NOR3: 1,
    FunctionalOp.NAND2: 1,
    FunctionalOp.NAND3: 1,
    FunctionalOp.MIN3: 1,
    FunctionalOp.MAJ3: 2,
    FunctionalOp.XOR2: 2,
    FunctionalOp.AND2: 2,
}


def eval_functional(op: FunctionalOp, bits: Sequence[int]) -> int:
    """Boolean truth function for one operation."""
    if len(bits) != OP_ARITY[op]:
        raise ProgramError(f"{op.name} takes {OP_ARITY[op]} inputs, got {len(bits)}")
    s = sum(bits)
    if op is FunctionalOp.NOT:
        return 1 - bits[0]
    if op is FunctionalOp.OR:
        return 1 if s >= 1 else 0
    if op is FunctionalOp.NOR3:
        return 1 if s == 0 else 0
    if op is FunctionalOp.NAND2 or op is FunctionalOp.NAND3:
        return 0 if s == len(bits) else 1
    if op is FunctionalOp.MIN3:
        return 1 if s <= 1 else 0
    if op is FunctionalOp.MAJ3:
        return 1 if s >= 2 else 0
    if op is FunctionalOp.XOR2:
        return s % 2
    if op is FunctionalOp.AND2:
        return 1 if s == 2 else 0
    raise ProgramError(f"unknown op {op}")  # pragma: no cover


class InitPolicy(enum.Enum):
    PER_CELL = "per-cell"
    SHARED_SINGLE = "shared-single"


@dataclass(frozen=True)
class GateStep:
    op: FunctionalOp
    inputs: Tuple[str, ...]
    output: str


@dataclass(frozen=True)
class MicroProgram:
    """One adder cell's step sequence.

    input_cells are externally supplied and never written; init steps set
    work cells (grouped into init_cycles parallel cycles); outputs maps
    result names to cell ids.
    """

    name: str
    input_cells: Tuple[str, ...]
    init_steps: Tuple[Tuple[str, int], ...]
    init_cycles: int
    compute_steps: Tuple[GateStep, ...]
    outputs: Dict[str, str]

    def __post_init__(self):
        defined = set(self.input_cells) | {c for c, _ in self.init_steps}
        for step in self.compute_steps:
            for cell in step.inputs:
                if cell not in defined:
                    raise ProgramError(
                        f"{self.name}: step reads {cell!r} before it is defined")
            if step.output in self.input_cells:
                raise ProgramError(
                    f"{self.name}: step writes input cell {step.output!r}")
            defined.add(step.output)
        for out_name, cell in self.outputs.items():
            if cell not in defined:
                raise ProgramError(f"{self.name}: output {out_name} -> undefined {cell!r}")

    @property
    def work_cells(self) -> Tuple[str, ...]:
        seen: List[str] = []
        for cell, _ in self.init_steps:
            if cell not in seen:
                seen.append(cell)
        for step in self.compute_steps:
            if step.output not in seen and step.output not in self.input_cells:
                seen.append(step.output)
        return tuple(seen)

    @property
    def compute_cycles(self) -> int:
        return sum(OP_CYCLES[s.op] for s in self.compute_steps)

    @property
    def memristor_count(self) -> int:
        return len(self.input_cells) + len(self.work_cells)


@dataclass(frozen=True)
class ResourceReport:
    memristor_count: int
    compute_cycles: int
    cycles_with_init: int
    init_policy: InitPolicy = InitPolicy.PER_CELL

    def __post_init__(self):
        if self.cycles_with_init < self.compute_cycles:
            raise ProgramError("cycles_with_init must cover compute cycles")

    @property
    def init_cycles(self) -> int:
        return self.cycles_with_init - self.compute_cycles


def run_program(prog: MicroProgram, inputs: Dict[str, int]) -> Tuple[Dict[str, int], ResourceReport]:
    """Execute a micro-program on a fresh cell store.

    Returns the named outputs and the single-cell resource report. Input
    cells are guaranteed untouched by construction (compute steps may not
    write them).
    """
    store: Dict[str, int] = {}
    for cell in prog.input_cells:
        if cell not in inputs:
            raise ProgramError(f"missing input {cell!r}")
        bit = inputs[cell]
        if bit not in (0, 1):
            raise ProgramError(f"input {cell!r} must be a bit, got {bit!r}")
        store[cell] = bit
    initialized = set()
    for cell, bit in prog.init_steps:
        store[cell] = bit
        initialized.add(cell)
    for step in prog.compute_steps:
        for cell in step.inputs:
            if cell not in store:
                raise ProgramError(f"use of uninitialized cell {cell!r}")
        store[step.output] = eval_functional(step.op, [store[c] for c in step.inputs])
    outputs = {name: store[cell] for name, cell in prog.outputs.items()}
    report = ResourceReport(
        memristor_count=prog.memristor_count,
        compute_cycles=prog.compute_cycles,
        cycles_with_init=prog.compute_cycles + prog.init_cycles,
    )
    return outputs, report


def account_composition(cells: Sequence[ResourceReport],
                        carry_shared: bool = False) -> ResourceReport:
    """Combine per-cell reports into a chain total.

    Per-cell-init cells contribute their own init cycles; all cells flagged
    shared-single are initialized together in one extra cycle. With
    carry_shared each cell after the first receives its carry input from
    its predecessor's carry cell, removing one memristor per junction.
    """
    if not cells:
        raise ProgramError("cannot compose an empty cell list")
    compute = sum(c.compute_cycles for c in cells)
    init = sum(c.init_cycles for c in cells if c.init_policy is InitPolicy.PER_CELL)
    if any(c.init_policy is InitPolicy.SHARED_SINGLE for c in cells):
        init += 1
    memristors = sum(c.memristor_count for c in cells)
    if carry_shared:
        memristors -= len(cells) - 1
    policy = (InitPolicy.SHARED_SINGLE
              if all(c.init_policy is InitPolicy.SHARED_SINGLE for c in cells)
              else InitPolicy.PER_CELL)
    return ResourceReport(
        memristor_count=memristors,
        compute_cycles=compute,
        cycles_with_init=compute + init,
        init_policy=policy,
    )


def serialize_program(prog: MicroProgram) -> str:
    """Line-oriented text form: init and `op out <- in...` lines."""
    lines = [f"program {prog.name}"]
    lines.append("inputs " + " ".join(prog.input_cells))
    for cell, bit in prog.init_steps:
        lines.append(f"init {cell} {bit}")
    lines.append(f"init-cycles {prog.init_cycles}")
    for step in prog.compute_steps:
        lines.append(f"{step.op.value} {step.output} <- " + " ".join(step.inputs))
    for name, cell in sorted(prog.outputs.items()):
        lines.append(f"output {name} {cell}")
    return "\n".join(lines) + "\n"


def parse_program(text: str) -> MicroProgram:
    name = ""
    input_cells: Tuple[str, ...] = ()
    init_steps: List[Tuple[str, int]] = []
    init_cycles = 0
    steps: List[GateStep] = []
    outputs: Dict[str, str] = {}
    ops_by_value = {op.value: op for op in FunctionalOp}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "program":
            name = parts[1]
        elif parts[0] == "inputs":
            input_cells = tuple(parts[1:])
        elif parts[0] == "init":
            init_steps.append((parts[1], int(parts[2])))
        elif parts[0] == "init-cycles":
            init_cycles = int(parts[1])
        elif parts[0] == "output":
            outputs[parts[1]] = parts[2]
        elif parts[0] in ops_by_value:
            if len(parts) < 4 or parts[2] != "<-":
                raise ProgramError(f"malformed step line: {line!r}")
            steps.append(GateStep(ops_by_value[parts[0]], tuple(parts[3:]), parts[1]))
        else:
            raise ProgramError(f"unrecognized line: {line!r}")
    return MicroProgram(
        name=name,
        input_cells=input_cells,
        init_steps=tuple(init_steps),
        init_cycles=init_cycles,
        compute_steps=tuple(steps),
        outputs=outputs,
    )


def _prog(name, inputs, init, init_cycles, steps, outputs) -> MicroProgram:
    return MicroProgram(
        name=name,
        input_cells=tuple(inputs),
        init_steps=tuple(init),
        init_cycles=init_cycles,
        compute_steps=tuple(GateStep(op, tuple(ins), out) for op, ins, out in steps),
        outputs=dict(outputs),
    )


#: exact full-adder cell: two XORs for the sum, minority + complement for
#: the carry; four work cells, six compute cycles, two init cycles.
EXACT_PROGRAM = _prog(
    "exact-full-adder",
    ["A", "B", "Cin"],
    [("W1", 1), ("W2", 1), ("W3", 1), ("W4", 1)],
    2,
    [
        (FunctionalOp.XOR2, ["A", "B"], "W1"),
        (FunctionalOp.XOR2, ["Cin", "W1"], "W2"),
        (FunctionalOp.MIN3, ["A", "B", "Cin"], "W3"),
        (FunctionalOp.NOT, ["W3"], "W4"),
    ],
    {"Sum": "W2", "Cout": "W4"},
)

#: first approximate variant: minority sum, carry via NAND against a
#: dedicated constant-1 cell; three work cells, two compute cycles.
FAFA1_PROGRAM = _prog(
    "fafa1",
    ["A", "B", "Cin"],
    [("W1", 1), ("W2", 1), ("K1", 1)],
    1,
    [
        (FunctionalOp.MIN3, ["A", "B", "Cin"], "W1"),
        (FunctionalOp.NAND2, ["W1", "K1"], "W2"),
    ],
    {"Sum": "W1", "Cout": "W2"},
)

#: second approximate variant: minority sum, carry via direct complement;
#: two work cells, two compute cycles.
FAFA2_PROGRAM = _prog(
    "fafa2",
    ["A", "B", "Cin"],
    [("W1", 1), ("W2", 1)],
    1,
    [
        (FunctionalOp.MIN3, ["A", "B", "Cin"], "W1"),
        (FunctionalOp.NOT, ["W1"], "W2"),
    ],
    {"Sum": "W1", "Cout": "W2"},
)
