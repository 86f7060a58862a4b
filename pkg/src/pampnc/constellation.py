"""Integer-amplitude PAM alphabets and the superposed constellation seen by the relay.

Points are kept as exact integers and the unit-power normalization is carried
by :func:`noise_variance` instead, so decision-region boundaries (midpoints of
adjacent amplitudes) stay exact in floating point.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

UNIFORM = "uniform"
NONUNIFORM = "nonuniform"

# Half-distance between points that share every bit except the lowest one.
# d=2 is the conventional equally spaced grid; d=3 widens the gaps so that
# every two-user sum identifies the bitwise XOR of the symbol pair.
SPACING = {UNIFORM: 2, NONUNIFORM: 3}

SUPPORTED_ORDERS = (4, 8)


class InvalidOrder(ValueError):
    """Constellation order outside the supported set."""


@dataclass(frozen=True)
class PamConstellation:
    """A Q-PAM alphabet in natural symbol order (ascending amplitude)."""

    order: int
    kind: str
    points: tuple[int, ...]
    spacing: int

    @property
    def bits_per_symbol(self) -> int:
        return self.order.bit_length() - 1

    @property
    def avg_power(self) -> Fraction:
        """Mean squared amplitude, exact."""
        return Fraction(sum(p * p for p in self.points), self.order)


@dataclass(frozen=True)
class SuperposedConstellation:
    """Distinct sums of two alphabet points, with the ordered symbol pairs behind each.

    ``levels`` is sorted ascending and ``pairs_per_level[i]`` lists every
    ordered pair ``(s1, s2)`` whose amplitudes add up to ``levels[i]``.
    """

    levels: tuple[int, ...]
    pairs_per_level: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(pairs) for pairs in self.pairs_per_level)


def make_pam(order: int, kind: str) -> PamConstellation:
    """Build the uniform or nonuniform Q-PAM alphabet.

    The alphabet is generated from the bit expansion
    ``sum_k d**k * (2*b_k - 1)`` over all bit patterns and then sorted, which
    yields {-3,-1,1,3} / {-4,-2,2,4} for Q=4 and {-7..7} / {-13,-11,-7,-5,5,7,11,13}
    for Q=8.
    """
    if order not in SUPPORTED_ORDERS:
        raise InvalidOrder(f"unsupported PAM order {order}; expected one of {SUPPORTED_ORDERS}")
    if kind not in SPACING:
        raise InvalidOrder(f"unknown PAM kind {kind!r}; expected 'uniform' or 'nonuniform'")
    d = SPACING[kind]
    q = order.bit_length() - 1
    points = sorted(
        sum((d**k) * (2 * bit - 1) for k, bit in enumerate(bits))
        for bits in product((0, 1), repeat=q)
    )
    return PamConstellation(order=order, kind=kind, points=tuple(points), spacing=d)


def superpose(c: PamConstellation) -> SuperposedConstellation:
    """Enumerate all Q^2 ordered symbol pairs and group them by their sum."""
    by_level: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for s1, s2 in product(range(c.order), repeat=2):
        by_level[c.points[s1] + c.points[s2]].append((s1, s2))
    levels = tuple(sorted(by_level))
    return SuperposedConstellation(
        levels=levels,
        pairs_per_level=tuple(tuple(by_level[lvl]) for lvl in levels),
    )


def noise_variance(c: PamConstellation, snr_db: float) -> float:
    """Effective noise variance after scaling to integer amplitudes.

    SNR is the unit-power signal-to-noise ratio 1/sigma^2, so the variance
    seen by the integer-valued points is ``avg_power * 10**(-snr_db/10)``.
    """
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite, got {snr_db}")
    return float(c.avg_power) * 10.0 ** (-snr_db / 10.0)


def decision_boundaries(points) -> tuple[float, ...]:
    """Midpoints between adjacent points.

    Region ``i`` of a sorted list of points is ``(b[i-1], b[i]]`` with the
    outer regions extending to -inf/+inf; the lower region owns its upper
    boundary.
    """
    return tuple((a + b) / 2 for a, b in zip(points, points[1:]))
