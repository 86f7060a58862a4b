"""Closed-form error probabilities for the two-phase relay link.

Both phases use nearest-point detection, so every transition probability is a
Gaussian integral over an interval between midpoint boundaries. The multiple
access (MA) phase transitions live on the network-code values; the broadcast
(BC) phase transitions live on the relay alphabet. A relay symbol mapping is
the permutation wiring the two together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import (
    UNIFORM,
    PamConstellation,
    SuperposedConstellation,
    decision_boundaries,
    make_pam,
    noise_variance,
)
from .denoise import CodeGroupTable, DenoiseScheme, group_levels
from .constellation import superpose

_SQRT2 = math.sqrt(2.0)


class InvalidInterval(ValueError):
    """Interval with lower bound above upper bound."""


class InvalidRelayConstellation(ValueError):
    """The relay broadcasts uniform PAM only."""


def gaussian_interval_prob(mean: float, lo: float, hi: float, sigma: float) -> float:
    """Probability that N(mean, sigma^2) lands in (lo, hi].

    Evaluated through erfc on the tail side of the interval, so entries as
    small as 1e-13 keep full relative accuracy. Bounds may be +-inf.
    """
    if lo > hi:
        raise InvalidInterval(f"empty interval ({lo}, {hi})")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    a = (lo - mean) / (sigma * _SQRT2)
    b = (hi - mean) / (sigma * _SQRT2)
    if a >= 0.0:
        return 0.5 * (math.erfc(a) - math.erfc(b))
    if b <= 0.0:
        return 0.5 * (math.erfc(-b) - math.erfc(-a))
    # interval straddles the mean; grouping the tails keeps the result
    # invariant under sign reflection of all arguments
    return 1.0 - (0.5 * math.erfc(-a) + 0.5 * math.erfc(b))


def ma_transition_matrix(sup: SuperposedConstellation, groups: CodeGroupTable,
                         sigma: float) -> np.ndarray:
    """Probabilities of the relay resolving code value j given value i was sent.

    Entry (i, j) averages, over the prior weights of the levels in group i,
    the probability of the received sum landing in any decision region of a
    level in group j.
    """
    q = groups.order
    bounds = decision_boundaries(sup.levels)
    lo = (-math.inf,) + bounds
    hi = bounds + (math.inf,)
    out = np.zeros((q, q))
    for i in range(q):
        for j in range(q):
            # fsum makes mirrored entries bit-identical regardless of the
            # iteration order over group members
            out[i, j] = math.fsum(
                float(weight) * gaussian_interval_prob(sup.levels[src], lo[dst], hi[dst], sigma)
                for src, weight in zip(groups.members[i], groups.weights[i])
                for dst in groups.members[j]
            )
    out.setflags(write=False)
    return out


def bc_transition_matrix(bc: PamConstellation, sigma: float) -> np.ndarray:
    """Probabilities of a user detecting alphabet point j given point i was sent."""
    if bc.kind != UNIFORM:
        raise InvalidRelayConstellation(f"relay constellation must be uniform, got {bc.kind!r}")
    bounds = decision_boundaries(bc.points)
    lo = (-math.inf,) + bounds
    hi = bounds + (math.inf,)
    out = np.array([
        [gaussian_interval_prob(bc.points[i], lo[j], hi[j], sigma) for j in range(bc.order)]
        for i in range(bc.order)
    ])
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TransitionModel:
    """The pair of phase transition matrices at one SNR.

    ``ma_probs[i, j]`` is the MA-phase probability of code value i being
    resolved as j; ``bc_probs[i, j]`` the BC-phase probability of relay point
    i being detected as j. Both are row stochastic.
    """

    order: int
    coupling: str | None
    snr_db: float
    ma_noise_var: float
    bc_noise_var: float
    ma_probs: np.ndarray
    bc_probs: np.ndarray


def transition_model(ma: PamConstellation, bc: PamConstellation,
                     scheme: DenoiseScheme, snr_db: float) -> TransitionModel:
    """Build both transition matrices for an MA/BC constellation pair and code."""
    sup = superpose(ma)
    groups = group_levels(sup, scheme)
    var_ma = noise_variance(ma, snr_db)
    var_bc = noise_variance(bc, snr_db)
    return TransitionModel(
        order=scheme.order,
        coupling=scheme.coupling,
        snr_db=snr_db,
        ma_noise_var=var_ma,
        bc_noise_var=var_bc,
        ma_probs=ma_transition_matrix(sup, groups, math.sqrt(var_ma)),
        bc_probs=bc_transition_matrix(bc, math.sqrt(var_bc)),
    )


@dataclass(frozen=True)
class SymbolMapping:
    """Permutation assigning each network-code value a relay alphabet index.

    ``assign[u]`` is the index (into the uniform relay alphabet) of the point
    broadcast for code value ``u``.
    """

    order: int
    assign: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.assign) != list(range(self.order)):
            raise ValueError(f"assign must be a permutation of 0..{self.order - 1}, got {self.assign}")

    @classmethod
    def identity(cls, order: int) -> "SymbolMapping":
        return cls(order, tuple(range(order)))

    @classmethod
    def from_points(cls, points) -> "SymbolMapping":
        """Build from the actual broadcast amplitudes, e.g. (-3, 1, -1, 3)."""
        alphabet = make_pam(len(points), UNIFORM).points
        try:
            assign = tuple(alphabet.index(p) for p in points)
        except ValueError:
            raise ValueError(f"points {tuple(points)} are not drawn from {alphabet}") from None
        return cls(len(points), assign)

    def points(self) -> tuple[int, ...]:
        alphabet = make_pam(self.order, UNIFORM).points
        return tuple(alphabet[k] for k in self.assign)


def _pep_matrix(mapping: SymbolMapping, model: TransitionModel) -> np.ndarray:
    """Two-phase pairwise error matrix indexed by code values.

    Entry (i, k) is the probability of the end user resolving code value k
    when value i should have gone through error free.
    """
    w = np.asarray(mapping.assign)
    return model.ma_probs @ model.bc_probs[np.ix_(w, w)]


def ser_objective(mapping: SymbolMapping, model: TransitionModel) -> float:
    """Unnormalized symbol-error objective: off-diagonal mass of the two-phase PEP."""
    pep = _pep_matrix(mapping, model)
    return float(pep.sum() - np.trace(pep))


def ber_objective(mapping: SymbolMapping, bit_errors, model: TransitionModel) -> float:
    """Unnormalized bit-error objective.

    ``bit_errors`` is a BitMapping or a QxQ matrix of average bit-error counts
    per code-value error pattern (symmetric, zero diagonal).
    """
    weights = np.asarray(getattr(bit_errors, "matrix", bit_errors), dtype=float)
    pep = _pep_matrix(mapping, model)
    return float((pep * weights).sum())


def symbol_error_rate(mapping: SymbolMapping, model: TransitionModel) -> float:
    """End-to-end SER for one user decoding the other."""
    return ser_objective(mapping, model) / model.order


def bit_error_rate(mapping: SymbolMapping, bit_errors, model: TransitionModel) -> float:
    """End-to-end BER for one user decoding the other."""
    q = model.order.bit_length() - 1
    return ber_objective(mapping, bit_errors, model) / (model.order * q)


def ser_by_enumeration(mapping: SymbolMapping, model: TransitionModel,
                       scheme: DenoiseScheme) -> float:
    """SER by direct triple sum over (own symbol, sent symbol, decoded symbol).

    Brute-force cross-check of :func:`symbol_error_rate`; it walks the code
    table instead of reordering matrices.
    """
    q = model.order
    w = mapping.assign
    total = 0.0
    for s1 in range(q):
        for s2 in range(q):
            u = scheme.code(s1, s2)
            for s2_hat in range(q):
                if s2_hat == s2:
                    continue
                u_hat = scheme.code(s1, s2_hat)
                total += sum(
                    model.ma_probs[u, k] * model.bc_probs[w[k], w[u_hat]] for k in range(q)
                )
    return total / q**2


def ber_by_enumeration(mapping: SymbolMapping, labels, model: TransitionModel,
                       scheme: DenoiseScheme) -> float:
    """BER by direct triple sum, weighting each symbol error by its bit flips."""
    q = model.order
    bits = model.order.bit_length() - 1
    w = mapping.assign
    total = 0.0
    for s1 in range(q):
        for s2 in range(q):
            u = scheme.code(s1, s2)
            for s2_hat in range(q):
                if s2_hat == s2:
                    continue
                u_hat = scheme.code(s1, s2_hat)
                pep = sum(
                    model.ma_probs[u, k] * model.bc_probs[w[k], w[u_hat]] for k in range(q)
                )
                total += pep * bin(labels[s2] ^ labels[s2_hat]).count("1") / bits
    return total / q**2
