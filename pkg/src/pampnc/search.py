"""Exhaustive mapping searches with equivalence reduction.

Relay symbol mappings come in orbits that provably share both objectives:
negating every broadcast point (both code families), and relabeling code
values u -> (Q-2-u) mod Q (additive family only, a consequence of the
superposed constellation being symmetric about zero). Bit labelings collapse
further: only the per-offset (additive) or per-coset (XOR) average Hamming
profile enters the objective, so labelings with equal profiles are
interchangeable. Enumeration works on one representative per class and is
verified at runtime against the full space.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .analytic import SymbolMapping, TransitionModel, transition_model
from .denoise import ADDITIVE, XOR


class InvalidLabels(ValueError):
    """Bit labels are not Q distinct values of q bits."""


class OrbitInconsistency(RuntimeError):
    """An orbit member disagreed with its class objective during verification."""


class NoSignChange(ValueError):
    """Crossover search on an interval where the objective difference keeps its sign."""


# ---------------------------------------------------------------------------
# bit mappings

@dataclass(frozen=True, eq=False)
class BitMapping:
    """Assignment of distinct q-bit labels to symbols plus its error profile.

    ``profile[i]`` is the average Hamming distance between the labels of
    symbols a fixed offset (additive) or XOR coset (xor) apart; ``matrix``
    expands the profile to the QxQ table used by the bit-error objective.
    """

    order: int
    labels: tuple[int, ...]
    coupling: str
    profile: tuple[float, ...]
    matrix: np.ndarray

    def label_strings(self) -> tuple[str, ...]:
        q = self.order.bit_length() - 1
        return tuple(format(lbl, f"0{q}b") for lbl in self.labels)


def bit_error_profile(labels, coupling: str) -> tuple[float, ...]:
    """Average bit flips per code-value offset (additive) or coset (xor)."""
    q = len(labels)
    if sorted(labels) != list(range(q)):
        raise InvalidLabels(f"labels must be the {q} distinct values 0..{q - 1}, got {tuple(labels)}")
    profile = []
    for i in range(q):
        if coupling == ADDITIVE:
            flips = sum(bin(labels[k] ^ labels[(k + i) % q]).count("1") for k in range(q))
        elif coupling == XOR:
            flips = sum(bin(labels[k] ^ labels[k ^ i]).count("1") for k in range(q))
        else:
            raise ValueError(f"unknown coupling {coupling!r}")
        profile.append(flips / q)
    return tuple(profile)


def profile_matrix(profile, coupling: str) -> np.ndarray:
    """Expand a profile into the QxQ average bit-error table."""
    q = len(profile)
    if coupling == ADDITIVE:
        out = np.array([[profile[abs(i - j) % q] for j in range(q)] for i in range(q)])
    elif coupling == XOR:
        out = np.array([[profile[i ^ j] for j in range(q)] for i in range(q)])
    else:
        raise ValueError(f"unknown coupling {coupling!r}")
    out.setflags(write=False)
    return out


def make_bit_mapping(labels, coupling: str) -> BitMapping:
    labels = tuple(labels)
    profile = bit_error_profile(labels, coupling)
    return BitMapping(
        order=len(labels),
        labels=labels,
        coupling=coupling,
        profile=profile,
        matrix=profile_matrix(profile, coupling),
    )


def _hamming_table(order: int) -> np.ndarray:
    vals = np.arange(order)
    return np.array([[bin(a ^ b).count("1") for b in vals] for a in vals])


def distinct_bit_mappings(order: int, coupling: str) -> list[BitMapping]:
    """One representative per distinct error profile over all Q! labelings.

    Representatives are the lexicographically smallest label sequence with
    each profile, in order of first appearance.
    """
    perms = np.array(list(permutations(range(order))), dtype=np.intp)
    ham = _hamming_table(order)
    counts = np.empty((len(perms), order), dtype=np.int64)
    for off in range(order):
        if coupling == ADDITIVE:
            shifted = (np.arange(order) + off) % order
        elif coupling == XOR:
            shifted = np.arange(order) ^ off
        else:
            raise ValueError(f"unknown coupling {coupling!r}")
        counts[:, off] = ham[perms, perms[:, shifted]].sum(axis=1)
    reps: dict[tuple[int, ...], int] = {}
    for idx, row in enumerate(map(tuple, counts)):
        reps.setdefault(row, idx)
    return [make_bit_mapping(tuple(int(x) for x in perms[i]), coupling) for i in reps.values()]


# ---------------------------------------------------------------------------
# symbol-mapping equivalence classes

def sign_flip(assign) -> tuple[int, ...]:
    """Negate every broadcast point: index k becomes Q-1-k."""
    q = len(assign)
    return tuple(q - 1 - k for k in assign)


def order_flip(assign) -> tuple[int, ...]:
    """Relabel code values by u -> (Q-2-u) mod Q (additive coupling only)."""
    q = len(assign)
    return tuple(assign[(q - 2 - u) % q] for u in range(q))


def orbit_of(assign, coupling: str) -> tuple[tuple[int, ...], ...]:
    """All mappings sharing both objectives with ``assign``, sorted."""
    assign = tuple(assign)
    members = {assign, sign_flip(assign)}
    if coupling == ADDITIVE:
        members.add(order_flip(assign))
        members.add(sign_flip(order_flip(assign)))
    elif coupling != XOR:
        raise ValueError(f"unknown coupling {coupling!r}")
    return tuple(sorted(members))


def canonical_form(assign, coupling: str) -> tuple[int, ...]:
    """Lexicographically smallest member of the orbit."""
    return orbit_of(assign, coupling)[0]


@dataclass(frozen=True)
class EquivalenceClass:
    order: int
    coupling: str
    canonical: tuple[int, ...]
    orbit: tuple[tuple[int, ...], ...]


def enumerate_symbol_classes(order: int, coupling: str,
                             model: TransitionModel | None = None,
                             rtol: float = 1e-12) -> list[EquivalenceClass]:
    """Partition all Q! symbol mappings into equivalence orbits.

    When ``model`` is given, every orbit is verified against it: all members
    must produce the same symbol- and bit-error objectives to within ``rtol``
    relative, else :class:`OrbitInconsistency` is raised.
    """
    classes = []
    seen: set[tuple[int, ...]] = set()
    for assign in permutations(range(order)):
        if assign in seen:
            continue
        orbit = orbit_of(assign, coupling)
        seen.update(orbit)
        classes.append(EquivalenceClass(order=order, coupling=coupling,
                                        canonical=assign, orbit=orbit))
    if model is not None:
        verify_orbit_invariance(classes, model, rtol=rtol)
    return classes


def _pep_tensor(model: TransitionModel, assigns: np.ndarray) -> np.ndarray:
    """Stacked two-phase PEP matrices for many mappings at once."""
    sub = model.bc_probs[assigns[:, :, None], assigns[:, None, :]]
    return model.ma_probs @ sub


def _ser_values(pep: np.ndarray) -> np.ndarray:
    return pep.sum(axis=(1, 2)) - np.trace(pep, axis1=1, axis2=2)


def verify_orbit_invariance(classes, model: TransitionModel, rtol: float = 1e-12) -> None:
    """Check that every orbit member agrees on both objectives for ``model``.

    Uses the batch evaluator over all members, comparing the symbol objective
    and the bit objective under a probe labeling.
    """
    if not classes:
        return
    coupling = classes[0].coupling
    members = np.array([m for cl in classes for m in cl.orbit], dtype=np.intp)
    sizes = [len(cl.orbit) for cl in classes]
    pep = _pep_tensor(model, members)
    ser = _ser_values(pep)
    probe = make_bit_mapping(tuple(range(model.order)), coupling).matrix.ravel()
    ber = pep.reshape(len(members), -1) @ probe
    start = 0
    for cl, size in zip(classes, sizes):
        for vals, name in ((ser, "symbol"), (ber, "bit")):
            seg = vals[start:start + size]
            spread = float(seg.max() - seg.min())
            scale = max(float(np.abs(seg).max()), 1e-300)
            if spread > rtol * scale:
                raise OrbitInconsistency(
                    f"orbit of {cl.canonical} spreads {spread:.3e} "
                    f"({spread / scale:.3e} relative) on the {name} objective"
                )
        start += size


# ---------------------------------------------------------------------------
# optimization

@dataclass(frozen=True)
class MappingScore:
    mapping: SymbolMapping
    bitmap: BitMapping | None
    objective: float
    rate: float


@dataclass(frozen=True)
class SearchResult:
    criterion: str
    best: MappingScore
    ties: tuple[MappingScore, ...]
    evaluated: int
    used_fallback: bool = False


def _search_space(model: TransitionModel, classes):
    """Representatives to evaluate, falling back to all Q! when needed."""
    if classes is not None:
        return [cl.canonical for cl in classes], False
    if model.coupling in (ADDITIVE, XOR):
        try:
            classes = enumerate_symbol_classes(model.order, model.coupling, model=model)
            return [cl.canonical for cl in classes], False
        except OrbitInconsistency as err:
            warnings.warn(
                f"equivalence reduction disabled ({err}); searching all mappings",
                RuntimeWarning,
            )
    return list(permutations(range(model.order))), True


def _dedupe_by_value(reps, vals, tie_idx):
    """In fallback mode collapse exact-objective duplicates to their lex-min rep."""
    groups: dict[float, int] = {}
    for i in tie_idx:
        groups.setdefault(float(vals[i]), i)
    return sorted(groups.values())


def optimize_ser(model: TransitionModel, classes=None, *,
                 tie_rtol: float = 1e-12) -> SearchResult:
    """Exhaustive minimum-SER search over symbol-mapping representatives."""
    reps, fallback = _search_space(model, classes)
    assigns = np.array(reps, dtype=np.intp)
    vals = _ser_values(_pep_tensor(model, assigns))
    best = float(vals.min())
    tie_idx = np.flatnonzero(vals <= best + tie_rtol * abs(best)).tolist()
    if fallback:
        tie_idx = _dedupe_by_value(reps, vals, tie_idx)
    ties = tuple(
        MappingScore(SymbolMapping(model.order, reps[i]), None,
                     float(vals[i]), float(vals[i]) / model.order)
        for i in tie_idx
    )
    return SearchResult(criterion="ser", best=ties[0], ties=ties,
                        evaluated=len(reps), used_fallback=fallback)


def optimize_ber(model: TransitionModel, classes=None, bitmaps=None, *,
                 tie_rtol: float = 1e-12) -> SearchResult:
    """Exhaustive minimum-BER search over (symbol mapping, bit labeling) pairs."""
    reps, fallback = _search_space(model, classes)
    if bitmaps is None:
        if model.coupling not in (ADDITIVE, XOR):
            raise ValueError("explicit bitmaps are required for custom couplings")
        bitmaps = distinct_bit_mappings(model.order, model.coupling)
    assigns = np.array(reps, dtype=np.intp)
    pep = _pep_tensor(model, assigns).reshape(len(reps), -1)
    weights = np.stack([bm.matrix.ravel() for bm in bitmaps])
    vals = pep @ weights.T
    best = float(vals.min())
    bits = model.order.bit_length() - 1
    tie_pairs = np.argwhere(vals <= best + tie_rtol * abs(best)).tolist()
    if fallback:
        grouped: dict[tuple[float, int], tuple[int, int]] = {}
        for i, j in tie_pairs:
            grouped.setdefault((float(vals[i, j]), j), (i, j))
        tie_pairs = sorted(grouped.values())
    ties = tuple(
        MappingScore(SymbolMapping(model.order, reps[i]), bitmaps[j],
                     float(vals[i, j]), float(vals[i, j]) / (model.order * bits))
        for i, j in tie_pairs
    )
    return SearchResult(criterion="ber", best=ties[0], ties=ties,
                        evaluated=len(reps) * len(bitmaps), used_fallback=fallback)


# ---------------------------------------------------------------------------
# SNR sweeps and crossover location

@dataclass(frozen=True)
class Candidate:
    """A named (symbol mapping, optional bit labeling) pair to track in sweeps."""

    label: str
    mapping: SymbolMapping
    bitmap: BitMapping | None = None


@dataclass(frozen=True)
class CandidateScore:
    candidate: Candidate
    objective: float
    rate: float


@dataclass(frozen=True)
class SweepPoint:
    snr_db: float
    scores: tuple[CandidateScore, ...]
    optimum: SearchResult | None


def _candidate_objective(cand: Candidate, criterion: str, model: TransitionModel) -> float:
    from .analytic import ber_objective, ser_objective

    if criterion == "ser":
        return ser_objective(cand.mapping, model)
    if cand.bitmap is None:
        raise ValueError(f"candidate {cand.label!r} needs a bitmap for the ber criterion")
    return ber_objective(cand.mapping, cand.bitmap, model)


def sweep(ma, bc, scheme, snr_grid, criterion: str, candidates=(), *,
          include_optimum: bool = True, tie_rtol: float = 1e-12) -> list[SweepPoint]:
    """Evaluate candidates and (optionally) the global optimum on an SNR grid.

    Orbit verification runs once, at the first grid point; later points reuse
    the class list.
    """
    snr_grid = list(snr_grid)
    if not snr_grid:
        raise ValueError("snr_grid must be nonempty")
    if criterion not in ("ser", "ber"):
        raise ValueError(f"criterion must be 'ser' or 'ber', got {criterion!r}")
    bits = scheme.order.bit_length() - 1
    norm = scheme.order if criterion == "ser" else scheme.order * bits
    classes = None
    bitmaps = None
    points = []
    for snr_db in snr_grid:
        model = transition_model(ma, bc, scheme, snr_db)
        optimum = None
        if include_optimum:
            if classes is None and model.coupling in (ADDITIVE, XOR):
                classes = enumerate_symbol_classes(model.order, model.coupling, model=model)
            if criterion == "ser":
                optimum = optimize_ser(model, classes, tie_rtol=tie_rtol)
            else:
                if bitmaps is None and model.coupling in (ADDITIVE, XOR):
                    bitmaps = distinct_bit_mappings(model.order, model.coupling)
                optimum = optimize_ber(model, classes, bitmaps, tie_rtol=tie_rtol)
        scores = tuple(
            CandidateScore(cand, obj, obj / norm)
            for cand in candidates
            for obj in (_candidate_objective(cand, criterion, model),)
        )
        points.append(SweepPoint(snr_db=snr_db, scores=scores, optimum=optimum))
    return points


def find_crossover(ma, bc, scheme, criterion: str, cand_a: Candidate, cand_b: Candidate,
                   lo_db: float, hi_db: float, *, width_db: float = 0.1) -> tuple[float, float]:
    """Bisect the SNR at which two candidates swap rank under a criterion.

    Returns a bracket of width at most ``width_db``; raises
    :class:`NoSignChange` if the objective difference has the same sign at
    both endpoints.
    """
    def diff(snr_db: float) -> float:
        model = transition_model(ma, bc, scheme, snr_db)
        return (_candidate_objective(cand_a, criterion, model)
                - _candidate_objective(cand_b, criterion, model))

    lo, hi = float(lo_db), float(hi_db)
    d_lo, d_hi = diff(lo), diff(hi)
    if d_lo == 0.0 or d_hi == 0.0 or (d_lo > 0) == (d_hi > 0):
        raise NoSignChange(
            f"objective difference does not change sign on [{lo_db}, {hi_db}] dB "
            f"(endpoints {d_lo:.3e}, {d_hi:.3e})"
        )
    while hi - lo > width_db:
        mid = 0.5 * (lo + hi)
        d_mid = diff(mid)
        if d_mid == 0.0:
            half = width_db / 2
            return mid - half, mid + half
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi, d_hi = mid, d_mid
    return lo, hi
