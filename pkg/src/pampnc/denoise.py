"""Denoise codes on symbol pairs and the level grouping they induce at the relay.

A denoise code maps an ordered symbol pair to a single network-code value.
Grouping the superposed levels by that value is what lets the relay forward
one symbol instead of two; a code is usable for a given alphabet only when
all symbol pairs meeting at one level agree on the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .constellation import SuperposedConstellation

ADDITIVE = "additive"
XOR = "xor"


class AmbiguityError(ValueError):
    """Two symbol pairs at the same superposed level demand different code values."""


@dataclass(frozen=True)
class DenoiseScheme:
    """A total code on Z_Q x Z_Q, tabulated.

    ``coupling`` records the algebraic family ("additive" for mod-Q sums,
    "xor" for bitwise XOR, None for ad hoc codes); downstream machinery such
    as equivalence reduction keys off it.
    """

    order: int
    coupling: str | None
    table: tuple[tuple[int, ...], ...]

    def code(self, s1: int, s2: int) -> int:
        return self.table[s1][s2]


def denoise_mod(s1: int, s2: int, order: int) -> int:
    """Mod-Q sum of the two symbols."""
    return (s1 + s2) % order


def denoise_xor(s1: int, s2: int, order: int) -> int:
    """Bitwise XOR of the natural binary representations of the two symbols."""
    return s1 ^ s2


def scheme_from_code(order: int, code: Callable[[int, int], int], coupling: str | None = None) -> DenoiseScheme:
    table = tuple(tuple(code(s1, s2) for s2 in range(order)) for s1 in range(order))
    for row in table:
        for value in row:
            if not 0 <= value < order:
                raise ValueError(f"code value {value} outside Z_{order}")
    return DenoiseScheme(order=order, coupling=coupling, table=table)


def additive_scheme(order: int) -> DenoiseScheme:
    return scheme_from_code(order, lambda a, b: denoise_mod(a, b, order), ADDITIVE)


def xor_scheme(order: int) -> DenoiseScheme:
    return scheme_from_code(order, lambda a, b: denoise_xor(a, b, order), XOR)


def check_exclusive_law(scheme: DenoiseScheme) -> bool:
    """True iff the code is a bijection in each argument with the other fixed.

    This is the property that lets a user holding its own symbol invert the
    code and recover the other user's symbol.
    """
    full = set(range(scheme.order))
    for s1 in range(scheme.order):
        if set(scheme.table[s1]) != full:
            return False
    for s2 in range(scheme.order):
        if {scheme.table[s1][s2] for s1 in range(scheme.order)} != full:
            return False
    return True


@dataclass(frozen=True)
class CodeGroupTable:
    """Superposed levels grouped by their network-code value.

    ``level_values[i]`` is the code value shared by every pair at level ``i``.
    For each value ``u``, ``members[u]`` lists the level indices in its group
    and ``weights[u]`` the matching prior weights (pair multiplicity at the
    level over total pairs in the group), kept as exact rationals.
    """

    order: int
    level_values: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[Fraction, ...], ...]


def group_levels(sup: SuperposedConstellation, scheme: DenoiseScheme) -> CodeGroupTable:
    """Assign each superposed level its code value and build the group table.

    Raises :class:`AmbiguityError` when two pairs at one level disagree, which
    happens for the XOR code on uniform PAM.
    """
    level_values = []
    for level, pairs in zip(sup.levels, sup.pairs_per_level):
        values = {scheme.code(s1, s2) for s1, s2 in pairs}
        if len(values) != 1:
            raise AmbiguityError(
                f"superposed level {level} maps to code values {sorted(values)}; "
                "the code cannot denoise this constellation"
            )
        level_values.append(values.pop())

    members: list[tuple[int, ...]] = []
    weights: list[tuple[Fraction, ...]] = []
    mult = sup.multiplicities
    for u in range(scheme.order):
        idx = tuple(i for i, v in enumerate(level_values) if v == u)
        total = sum(mult[i] for i in idx)
        members.append(idx)
        weights.append(tuple(Fraction(mult[i], total) for i in idx))
    return CodeGroupTable(
        order=scheme.order,
        level_values=tuple(level_values),
        members=tuple(members),
        weights=tuple(weights),
    )
