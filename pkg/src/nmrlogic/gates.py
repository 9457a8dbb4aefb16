"""The sixteen two-input boolean gates: truth tables, canalising structure,
equivalence orbits under rewiring and inversion.

Gate ids follow the standard truth-table ordering: reading the output
column for inputs (0,0), (0,1), (1,0), (1,1) top to bottom as the binary
digits of the id, most significant first.  So id = 8*f(0,0) + 4*f(0,1) +
2*f(1,0) + 1*f(1,1); e.g. XOR is 6 and NAND is 14.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import FrozenSet, NamedTuple, Tuple


@dataclass(frozen=True, order=True)
class TruthTable:
    """Outputs for input pairs (0,0), (0,1), (1,0), (1,1), in that order."""

    outputs: Tuple[bool, bool, bool, bool]

    def __post_init__(self) -> None:
        if len(self.outputs) != 4:
            raise ValueError("a two-input truth table has exactly 4 outputs")
        object.__setattr__(self, "outputs", tuple(bool(o) for o in self.outputs))

    @classmethod
    def from_id(cls, gate_id: int) -> "TruthTable":
        if not 0 <= gate_id <= 15:
            raise ValueError(f"gate id must be in 0..15, got {gate_id}")
        return cls(tuple(bool((gate_id >> (3 - k)) & 1) for k in range(4)))

    @property
    def gate_id(self) -> int:
        return sum(int(o) << (3 - k) for k, o in enumerate(self.outputs))

    @property
    def name(self) -> str:
        return GATE_NAMES[self.gate_id]

    def __call__(self, a: int, b: int) -> bool:
        return self.outputs[2 * int(bool(a)) + int(bool(b))]

    def ignores(self, variable: str) -> bool:
        """True when the output never depends on the given input."""
        if variable == "A":
            return self(0, 0) == self(1, 0) and self(0, 1) == self(1, 1)
        if variable == "B":
            return self(0, 0) == self(0, 1) and self(1, 0) == self(1, 1)
        raise ValueError(f"variable must be 'A' or 'B', got {variable!r}")


def truth_table(gate_id: int) -> TruthTable:
    return TruthTable.from_id(gate_id)


F = truth_table(0)
AND = truth_table(1)
GREATER = truth_table(2)  # A AND NOT B
A = truth_table(3)
LESS = truth_table(4)  # NOT A AND B
B = truth_table(5)
XOR = truth_table(6)
OR = truth_table(7)
NOR = truth_table(8)
XNOR = truth_table(9)
NOT_B = truth_table(10)
GREATER_EQUAL = truth_table(11)  # A OR NOT B
NOT_A = truth_table(12)
LESS_EQUAL = truth_table(13)  # NOT A OR B
NAND = truth_table(14)
T = truth_table(15)

ALL_GATES = tuple(truth_table(i) for i in range(16))

GATE_NAMES = {
    0: "F",
    1: "AND",
    2: ">",
    3: "A",
    4: "<",
    5: "B",
    6: "XOR",
    7: "OR",
    8: "NOR",
    9: "XNOR",
    10: "NOT B",
    11: ">=",
    12: "NOT A",
    13: "<=",
    14: "NAND",
    15: "T",
}

_TOKEN_ALIASES = {
    "f": 0, "false": 0,
    "and": 1,
    ">": 2, "gt": 2,
    "a": 3,
    "<": 4, "lt": 4,
    "b": 5,
    "xor": 6,
    "or": 7,
    "nor": 8,
    "xnor": 9,
    "not b": 10, "notb": 10, "not_b": 10,
    ">=": 11, "geq": 11, "ge": 11, "≥": 11,
    "not a": 12, "nota": 12, "not_a": 12,
    "<=": 13, "leq": 13, "le": 13, "≤": 13,
    "nand": 14,
    "t": 15, "true": 15,
}


def valid_gate_tokens() -> Tuple[str, ...]:
    return tuple(sorted(_TOKEN_ALIASES)) + tuple(str(i) for i in range(16))


def parse_gate(token: str) -> TruthTable:
    """Gate from a case-insensitive name token or a numeric id 0-15."""
    key = token.strip().lower()
    if key in _TOKEN_ALIASES:
        return truth_table(_TOKEN_ALIASES[key])
    try:
        gate_id = int(key)
    except ValueError:
        raise ValueError(f"unknown gate token {token!r}") from None
    return truth_table(gate_id)


class GateClass(enum.IntEnum):
    """Canalising classes: constant, strongly, weakly, non-canalising."""

    CONSTANT = 0
    STRONG = 1
    WEAK = 2
    NONE = 3


class CanalisingProfile(NamedTuple):
    count_a: int
    count_b: int


def is_canalising_value(tt: TruthTable, variable: str, value: bool) -> bool:
    """Does fixing `variable` to `value` pin the output for any other input?"""
    if variable == "A":
        return tt(value, 0) == tt(value, 1)
    if variable == "B":
        return tt(0, value) == tt(1, value)
    raise ValueError(f"variable must be 'A' or 'B', got {variable!r}")


def canalising_counts(tt: TruthTable) -> CanalisingProfile:
    """How many of the two values of each input are canalising."""
    return CanalisingProfile(
        sum(is_canalising_value(tt, "A", v) for v in (False, True)),
        sum(is_canalising_value(tt, "B", v) for v in (False, True)),
    )


def gate_class(tt: TruthTable) -> GateClass:
    profile = canalising_counts(tt)
    if profile == (2, 2):
        return GateClass.CONSTANT
    if profile in ((2, 0), (0, 2)):
        return GateClass.STRONG
    if profile == (1, 1):
        return GateClass.WEAK
    if profile == (0, 0):
        return GateClass.NONE
    raise RuntimeError(f"impossible canalising profile {profile} for {tt}")


def swap_inputs(tt: TruthTable) -> TruthTable:
    return TruthTable(tuple(tt(b, a) for a in (0, 1) for b in (0, 1)))


def negate_input(tt: TruthTable, variable: str) -> TruthTable:
    if variable == "A":
        return TruthTable(tuple(tt(1 - a, b) for a in (0, 1) for b in (0, 1)))
    if variable == "B":
        return TruthTable(tuple(tt(a, 1 - b) for a in (0, 1) for b in (0, 1)))
    raise ValueError(f"variable must be 'A' or 'B', got {variable!r}")


def negate_output(tt: TruthTable) -> TruthTable:
    return TruthTable(tuple(not o for o in tt.outputs))


def orbit(tt: TruthTable) -> FrozenSet[TruthTable]:
    """Closure under input swap, per-input negation and output negation."""
    seen = {tt}
    frontier = [tt]
    while frontier:
        current = frontier.pop()
        for image in (
            swap_inputs(current),
            negate_input(current, "A"),
            negate_input(current, "B"),
            negate_output(current),
        ):
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return frozenset(seen)
