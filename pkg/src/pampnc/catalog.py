"""Scenario presets and the reference mappings used for comparisons.

The four scenarios pair an MA-phase alphabet with its usable code family
(uniform PAM with the additive code, nonuniform PAM with the XOR code); the
relay always broadcasts uniform PAM of the same order. The numbered relay
mappings and named bit labelings below are the standard benchmark set for
these scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import SymbolMapping, TransitionModel, transition_model
from .constellation import NONUNIFORM, UNIFORM, PamConstellation, make_pam
from .denoise import ADDITIVE, XOR, DenoiseScheme, additive_scheme, xor_scheme


@dataclass(frozen=True)
class Scenario:
    name: str
    order: int
    ma_kind: str
    coupling: str

    def ma(self) -> PamConstellation:
        return make_pam(self.order, self.ma_kind)

    def bc(self) -> PamConstellation:
        return make_pam(self.order, UNIFORM)

    def scheme(self) -> DenoiseScheme:
        return additive_scheme(self.order) if self.coupling == ADDITIVE else xor_scheme(self.order)

    def components(self) -> tuple[PamConstellation, PamConstellation, DenoiseScheme]:
        return self.ma(), self.bc(), self.scheme()

    def model(self, snr_db: float) -> TransitionModel:
        return transition_model(self.ma(), self.bc(), self.scheme(), snr_db)


SCENARIOS = {
    "uniform4": Scenario("uniform4", 4, UNIFORM, ADDITIVE),
    "nonuniform4": Scenario("nonuniform4", 4, NONUNIFORM, XOR),
    "uniform8": Scenario("uniform8", 8, UNIFORM, ADDITIVE),
    "nonuniform8": Scenario("nonuniform8", 8, NONUNIFORM, XOR),
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}") from None


# Numbered relay symbol mappings (broadcast point per code value 0..Q-1).
REFERENCE_MAPPINGS: dict[str, dict[int, tuple[int, ...]]] = {
    "uniform4": {
        1: (-3, -1, 1, 3),
        2: (-3, 1, -1, 3),
    },
    "nonuniform4": {
        1: (-1, -3, 1, 3),
        2: (-3, -1, 1, 3),
        3: (-3, -1, 3, 1),
        4: (-3, 1, 3, -1),
    },
    "uniform8": {
        1: (-7, -5, -3, -1, 1, 3, 5, 7),
        2: (-5, 1, 7, -3, 3, -7, -1, 5),
    },
    "nonuniform8": {
        1: (-3, -1, -5, -7, 3, 1, 5, 7),
        2: (-3, -1, -5, -7, 3, 1, 7, 5),
        3: (-3, -1, -7, -5, 3, 1, 7, 5),
        4: (-7, -1, -5, -3, 5, 1, 7, 3),
        5: (-7, -1, -3, -5, 5, 3, 7, 1),
        6: (-7, -5, 7, 5, -1, -3, 1, 3),
        7: (-7, -5, -3, -1, 7, 5, 3, 1),
        8: (-7, -3, -5, -1, 5, 3, 7, 1),
        9: (-7, -3, -1, -5, 5, 3, 7, 1),
    },
}

# Named bit labelings, as label integers per symbol 0..Q-1.
BIT_LABELS: dict[tuple[int, str], tuple[int, ...]] = {
    (4, "gray"): (0b00, 0b01, 0b11, 0b10),
    (4, "binary"): (0b00, 0b01, 0b10, 0b11),
    (4, "third"): (0b00, 0b11, 0b01, 0b10),
    (8, "gray"): (0b000, 0b001, 0b101, 0b100, 0b110, 0b111, 0b011, 0b010),
    (8, "binary"): tuple(range(8)),
    (8, "third"): (0b000, 0b011, 0b100, 0b111, 0b010, 0b001, 0b110, 0b101),
}

BITMAP_NAMES = ("gray", "binary", "third")


def reference_mapping(scenario_name: str, index: int) -> SymbolMapping:
    table = REFERENCE_MAPPINGS[scenario_name]
    try:
        return SymbolMapping.from_points(table[index])
    except KeyError:
        raise ValueError(
            f"scenario {scenario_name!r} defines mappings {sorted(table)}, not {index}"
        ) from None


def named_bit_labels(order: int, name: str) -> tuple[int, ...]:
    try:
        return BIT_LABELS[(order, name)]
    except KeyError:
        raise ValueError(f"no bit labeling named {name!r} for order {order}") from None
