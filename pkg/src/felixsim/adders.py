"""Full-adder variants and the ripple-carry composer.

The approximate cell computes Sum as the minority of its three inputs and
Cout as the majority, so the carry chain is always exact and approximation
errors stay confined to the sum bits of the approximate positions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Tuple

from .isa import (
    EXACT_PROGRAM,
    FAFA1_PROGRAM,
    FAFA2_PROGRAM,
    InitPolicy,
    MicroProgram,
    ResourceReport,
    account_composition,
    run_program,
)


class UnsupportedVariantError(ValueError):
    """Raised for reference-only baseline designs that cannot be executed."""


class AdderVariant(enum.Enum):
    EXACT_ARITHMETIC = "exact"
    EXACT_FELIX = "exact-felix"
    FAFA1 = "fafa1"
    FAFA2 = "fafa2"

    @property
    def is_approximate(self) -> bool:
        return self in (AdderVariant.FAFA1, AdderVariant.FAFA2)


PROGRAM_FOR_VARIANT = {
    AdderVariant.EXACT_FELIX: EXACT_PROGRAM,
    AdderVariant.FAFA1: FAFA1_PROGRAM,
    AdderVariant.FAFA2: FAFA2_PROGRAM,
}


def full_add(variant: AdderVariant, a: int, b: int, c: int) -> Tuple[int, int]:
    """One-bit addition under the chosen cell; returns (sum, carry)."""
    for bit in (a, b, c):
        if bit not in (0, 1):
            raise ValueError(f"inputs must be bits, got {(a, b, c)}")
    if not isinstance(variant, AdderVariant):
        raise UnsupportedVariantError(
            f"{variant!r} is a reference-only design and cannot be executed")
    total = a + b + c
    if variant.is_approximate:
        majority = 1 if total >= 2 else 0
        return 1 - majority, majority
    return total & 1, total >> 1


def full_add_program(variant: AdderVariant, a: int, b: int, c: int) -> Tuple[int, int]:
    """Same result as full_add but by interpreting the cell's micro-program."""
    prog = PROGRAM_FOR_VARIANT.get(variant)
    if prog is None:
        raise UnsupportedVariantError(f"{variant} has no micro-program")
    outputs, _ = run_program(prog, {"A": a, "B": b, "Cin": c})
    return outputs["Sum"], outputs["Cout"]


@dataclass(frozen=True)
class RcaScenario:
    """Ripple-carry configuration: how many LSB positions are approximate."""

    width: int = 8
    approx_lsb_count: int = 4
    approx_variant: AdderVariant = AdderVariant.FAFA1
    carry_in: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be at least 1")
        if not (0 <= self.approx_lsb_count <= self.width):
            raise ValueError("approx_lsb_count must be within the adder width")
        if self.carry_in not in (0, 1):
            raise ValueError("carry_in must be a bit")

    def variant_at(self, position: int) -> AdderVariant:
        if position < self.approx_lsb_count:
            return self.approx_variant
        return AdderVariant.EXACT_FELIX


def scenario_1(variant: AdderVariant = AdderVariant.FAFA1) -> RcaScenario:
    """8-bit adder, four approximate LSB cells."""
    return RcaScenario(width=8, approx_lsb_count=4, approx_variant=variant)


def scenario_2(variant: AdderVariant = AdderVariant.FAFA1) -> RcaScenario:
    """8-bit adder, five approximate LSB cells."""
    return RcaScenario(width=8, approx_lsb_count=5, approx_variant=variant)


def rca_add(scenario: RcaScenario, a: int, b: int) -> int:
    """Ripple addition LSB to MSB; result carries an extra top bit."""
    limit = 1 << scenario.width
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValueError(f"operands must be unsigned {scenario.width}-bit values")
    carry = scenario.carry_in
    result = 0
    for i in range(scenario.width):
        s, carry = full_add(scenario.variant_at(i), (a >> i) & 1, (b >> i) & 1, carry)
        result |= s << i
    return result | (carry << scenario.width)


def extend_scenario(scenario: RcaScenario, new_width: int) -> RcaScenario:
    """Widen the adder; every added MSB position is exact."""
    if new_width < scenario.width:
        raise ValueError("cannot shrink a scenario")
    return replace(scenario, width=new_width)


def cell_resources(variant: AdderVariant,
                   init_policy: InitPolicy = InitPolicy.PER_CELL) -> ResourceReport:
    """Single-cell memristor/cycle accounting."""
    prog = PROGRAM_FOR_VARIANT.get(variant)
    if prog is None:
        raise UnsupportedVariantError(f"{variant} has no circuit program")
    return ResourceReport(
        memristor_count=prog.memristor_count,
        compute_cycles=prog.compute_cycles,
        cycles_with_init=prog.compute_cycles + prog.init_cycles,
        init_policy=init_policy,
    )


def rca_resources(scenario: RcaScenario) -> ResourceReport:
    """Composed accounting under the default init policy: exact cells are
    initialized per cell, the approximate run shares one init cycle."""
    cells = []
    for i in range(scenario.width):
        variant = scenario.variant_at(i)
        policy = (InitPolicy.SHARED_SINGLE if variant.is_approximate
                  else InitPolicy.PER_CELL)
        cells.append(cell_resources(variant, policy))
    return account_composition(cells, carry_shared=True)
