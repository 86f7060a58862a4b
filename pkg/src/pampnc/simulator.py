"""Seeded Monte Carlo simulation of the full two-phase exchange.

Each trial draws one symbol per user, pushes the sum through the MA-phase
noise, lets the relay resolve the nearest superposed level and broadcast the
mapped point, then has both users detect and invert the code with their own
symbol. Trials are vectorized in fixed-size chunks, each chunk seeded from
(seed, chunk index), so results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .analytic import SymbolMapping
from .constellation import PamConstellation, decision_boundaries, noise_variance, superpose
from .denoise import DenoiseScheme, check_exclusive_law, group_levels
from .search import BitMapping, _hamming_table

CHUNK = 1 << 18


class InvalidConfig(ValueError):
    """Simulation configuration that cannot be run."""


@dataclass(frozen=True)
class SimConfig:
    ma: PamConstellation
    bc: PamConstellation
    scheme: DenoiseScheme
    mapping: SymbolMapping
    bitmap: BitMapping
    snr_db: float
    trials: int
    seed: int = 0
    workers: int = 1


@dataclass(frozen=True)
class SimResult:
    """Empirical error rates averaged over both users, with binomial standard errors."""

    snr_db: float
    trials: int
    seed: int
    ser: float
    ber: float
    ser_stderr: float
    ber_stderr: float
    symbol_errors: tuple[int, int]
    bit_errors: tuple[int, int]


@dataclass(frozen=True)
class _Tables:
    order: int
    ma_points: np.ndarray
    level_points: np.ndarray
    level_bounds: np.ndarray
    level_code: np.ndarray      # network-code value per level index
    bc_points: np.ndarray
    bc_bounds: np.ndarray
    assign: np.ndarray          # code value -> relay alphabet index
    assign_inv: np.ndarray      # relay alphabet index -> code value
    decode_user1: np.ndarray    # [s1, u] -> s2 with code(s1, s2) = u
    decode_user2: np.ndarray    # [s2, u] -> s1 with code(s1, s2) = u
    hamming: np.ndarray


def _build_tables(cfg: SimConfig) -> _Tables:
    q = cfg.scheme.order
    if cfg.ma.order != q or cfg.bc.order != q or cfg.mapping.order != q or cfg.bitmap.order != q:
        raise InvalidConfig("constellations, scheme, mapping and bitmap must share one order")
    if not check_exclusive_law(cfg.scheme):
        raise InvalidConfig("denoise code violates the exclusive law; users cannot decode")
    sup = superpose(cfg.ma)
    groups = group_levels(sup, cfg.scheme)  # AmbiguityError propagates

    decode_user1 = np.empty((q, q), dtype=np.intp)
    decode_user2 = np.empty((q, q), dtype=np.intp)
    for s1 in range(q):
        for s2 in range(q):
            u = cfg.scheme.code(s1, s2)
            decode_user1[s1, u] = s2
            decode_user2[s2, u] = s1

    assign = np.array(cfg.mapping.assign, dtype=np.intp)
    assign_inv = np.empty_like(assign)
    assign_inv[assign] = np.arange(q)
    labels = np.array(cfg.bitmap.labels, dtype=np.intp)
    return _Tables(
        order=q,
        ma_points=np.array(cfg.ma.points, dtype=float),
        level_points=np.array(sup.levels, dtype=float),
        level_bounds=np.array(decision_boundaries(sup.levels)),
        level_code=np.array(groups.level_values, dtype=np.intp),
        bc_points=np.array(cfg.bc.points, dtype=float),
        bc_bounds=np.array(decision_boundaries(cfg.bc.points)),
        assign=assign,
        assign_inv=assign_inv,
        decode_user1=decode_user1,
        decode_user2=decode_user2,
        hamming=_hamming_table(q)[labels][:, labels],
    )


def _run_chunk(tab: _Tables, sigma_ma: float, sigma_bc: float, n: int,
               seed: int, chunk_index: int) -> np.ndarray:
    """One vectorized chunk; returns [sym1, bit1, sym2, bit2] tallies."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,)))
    s1 = rng.integers(0, tab.order, n)
    s2 = rng.integers(0, tab.order, n)

    received = tab.ma_points[s1] + tab.ma_points[s2] + rng.normal(0.0, sigma_ma, n)
    # side="left" puts a sample sitting exactly on a boundary into the lower
    # region, matching the analytic region convention
    level = np.searchsorted(tab.level_bounds, received, side="left")
    u_hat = tab.level_code[level]
    broadcast = tab.bc_points[tab.assign[u_hat]]

    y1 = broadcast + rng.normal(0.0, sigma_bc, n)
    y2 = broadcast + rng.normal(0.0, sigma_bc, n)
    u1 = tab.assign_inv[np.searchsorted(tab.bc_bounds, y1, side="left")]
    u2 = tab.assign_inv[np.searchsorted(tab.bc_bounds, y2, side="left")]
    s2_hat = tab.decode_user1[s1, u1]
    s1_hat = tab.decode_user2[s2, u2]

    return np.array([
        int((s2_hat != s2).sum()),
        int(tab.hamming[s2, s2_hat].sum()),
        int((s1_hat != s1).sum()),
        int(tab.hamming[s1, s1_hat].sum()),
    ], dtype=np.int64)


def run_trials(cfg: SimConfig) -> SimResult:
    """Run the configured number of trials and tally both users' errors."""
    if cfg.trials < 1:
        raise InvalidConfig(f"trials must be >= 1, got {cfg.trials}")
    if cfg.workers < 1:
        raise InvalidConfig(f"workers must be >= 1, got {cfg.workers}")
    tab = _build_tables(cfg)
    sigma_ma = math.sqrt(noise_variance(cfg.ma, cfg.snr_db))
    sigma_bc = math.sqrt(noise_variance(cfg.bc, cfg.snr_db))

    sizes = [CHUNK] * (cfg.trials // CHUNK)
    if cfg.trials % CHUNK:
        sizes.append(cfg.trials % CHUNK)
    jobs = [(tab, sigma_ma, sigma_bc, n, cfg.seed, i) for i, n in enumerate(sizes)]

    if cfg.workers == 1 or len(jobs) == 1:
        tallies = [_run_chunk(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            tallies = list(pool.map(lambda job: _run_chunk(*job), jobs))
    sym1, bit1, sym2, bit2 = (int(x) for x in np.sum(tallies, axis=0))

    bits = cfg.ma.bits_per_symbol
    decisions = 2 * cfg.trials
    ser = (sym1 + sym2) / decisions
    ber = (bit1 + bit2) / (decisions * bits)
    return SimResult(
        snr_db=cfg.snr_db,
        trials=cfg.trials,
        seed=cfg.seed,
        ser=ser,
        ber=ber,
        ser_stderr=math.sqrt(ser * (1.0 - ser) / decisions),
        ber_stderr=math.sqrt(ber * (1.0 - ber) / (decisions * bits)),
        symbol_errors=(sym1, sym2),
        bit_errors=(bit1, bit2),
    )


def derived_seed(base_seed: int, *key: int) -> int:
    """Deterministic sub-seed for sweep points (and similar nested runs)."""
    seq = np.random.SeedSequence(entropy=base_seed, spawn_key=tuple(key))
    return int(seq.generate_state(1, np.uint64)[0])


def sweep_sim(cfg: SimConfig, snr_grid, trials_per_point: int | None = None) -> list[SimResult]:
    """Simulate one SNR grid; each point gets a seed derived from (seed, index)."""
    snr_grid = list(snr_grid)
    if not snr_grid:
        raise InvalidConfig("snr_grid must be nonempty")
    trials = cfg.trials if trials_per_point is None else trials_per_point
    if trials < 1:
        raise InvalidConfig(f"trials must be >= 1, got {trials}")
    return [
        run_trials(replace(cfg, snr_db=snr_db, trials=trials, seed=derived_seed(cfg.seed, i)))
        for i, snr_db in enumerate(snr_grid)
    ]
