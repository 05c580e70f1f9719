"""Seeded recovery experiments: single trials, grids, and curves.

Every trial is reproducible from integer seeds alone. Per-trial seeds
are derived from (root seed, grid coordinates, trial index), so sweeps
give byte-identical reports no matter how many workers execute them.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ._seeds import derive_seed
from .modulation import (
    MODULATION_KINDS,
    make_chirp_modulation,
    make_random_modulation,
    make_upsampler,
    modulation_operator,
    no_modulation,
    upsampled_size,
)
from .operators import (
    INDEX_LAWS,
    TRANSFORM_KINDS,
    LinearOperator,
    compose,
    make_transform,
    restrict_rows,
    sample_indices,
)
from .solver import SolverOptions, solve_bpdn

RECOVERY_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SensingConfig:
    """Full description of one acquisition to simulate.

    ``modulation`` is one of none/rademacher/steinhaus/chirp;
    ``chirp_rate`` only matters for the chirp kind, which also forces
    Fourier sensing on the upsampled grid. ``snr_db`` of None means
    noiseless measurements.
    """

    sensing_kind: str
    sparsity_kind: str
    n: int
    m: int
    s: int
    modulation: str = "none"
    chirp_rate: float = 0.0
    index_law: str = "iid_uniform"
    snr_db: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.sensing_kind not in TRANSFORM_KINDS:
            raise ValueError(f"unknown sensing kind {self.sensing_kind!r}")
        if self.sparsity_kind not in TRANSFORM_KINDS:
            raise ValueError(f"unknown sparsity kind {self.sparsity_kind!r}")
        if self.modulation not in MODULATION_KINDS:
            raise ValueError(f"unknown modulation {self.modulation!r}")
        if self.index_law not in INDEX_LAWS:
            raise ValueError(f"unknown index law {self.index_law!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        for kind in (self.sensing_kind, self.sparsity_kind):
            if kind in ("hadamard", "haar") and self.n & (self.n - 1):
                raise ValueError(f"{kind} requires n to be a power of 2")
        if self.modulation == "chirp":
            if self.sensing_kind != "fourier":
                raise ValueError("chirp acquisition senses in the Fourier basis")
            if self.n % 2:
                raise ValueError("chirp acquisition needs even n")
            if self.chirp_rate < 0:
                raise ValueError("chirp_rate must be >= 0")
        if not 1 <= self.s <= self.n:
            raise ValueError(f"sparsity s={self.s} must lie in [1, {self.n}]")
        if not 1 <= self.m <= self.n_upsampled:
            raise ValueError(f"m={self.m} must lie in [1, {self.n_upsampled}]")
        if self.snr_db is not None and not np.isfinite(self.snr_db):
            raise ValueError("snr_db must be finite or None")

    @property
    def n_upsampled(self) -> int:
        if self.modulation == "chirp":
            return upsampled_size(self.chirp_rate, self.n)
        return self.n


@dataclass(frozen=True)
class TrialResult:
    recovered: bool
    rel_error: float


def generate_sparse_signal(n: int, s: int, seed: int) -> np.ndarray:
    """Coefficient vector with s non-zeros: uniform support, uniform
    amplitudes in [0, 1], independent uniform phases."""
    if not 1 <= s <= n:
        raise ValueError(f"s={s} must lie in [1, {n}]")
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    support = rng.choice(n, size=s, replace=False)
    amplitudes = rng.random(s)
    phases = np.exp(2j * np.pi * rng.random(s))
    alpha = np.zeros(n, dtype=np.complex128)
    alpha[support] = amplitudes * phases
    return alpha


def add_noise(y: np.ndarray, snr_db: float, signal_std: float, seed: int) -> np.ndarray:
    """Add i.i.d. zero-mean complex Gaussian noise at the given input SNR.

    The per-entry noise variance is signal_std**2 * 10**(-snr_db / 10),
    split evenly between real and imaginary parts.
    """
    if signal_std <= 0:
        raise ValueError("signal_std must be positive")
    y = np.asarray(y, dtype=np.complex128)
    sigma = signal_std * 10.0 ** (-snr_db / 20.0)
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    noise = sigma / np.sqrt(2.0) * (rng.standard_normal(y.size) + 1j * rng.standard_normal(y.size))
    return y + noise


def build_acquisition(config: SensingConfig, modulation_seed: int) -> tuple[LinearOperator, LinearOperator]:
    """Assemble the unrestricted acquisition chain and the sparsity basis.

    Digital chains analyze in the sensing basis after an optional
    random diagonal modulation; the chirp chain modulates on the
    upsampled grid and analyzes in the Fourier basis of that grid.
    """
    sparsity = make_transform(config.sparsity_kind, config.n)
    if config.modulation == "chirp":
        spec = make_chirp_modulation(config.chirp_rate, config.n)
        chain = compose(
            make_transform("fourier", spec.n_upsampled).H,
            compose(
                modulation_operator(spec),
                compose(make_upsampler(config.n, spec.n_upsampled), sparsity),
            ),
        )
        return chain, sparsity
    analysis = make_transform(config.sensing_kind, config.n).H
    if config.modulation == "none":
        spec = no_modulation(config.n)
    else:
        spec = make_random_modulation(config.modulation, config.n, modulation_seed)
    chain = compose(analysis, compose(modulation_operator(spec), sparsity))
    return chain, sparsity


def run_trial(
    config: SensingConfig,
    trial_seed: int,
    solver_options: SolverOptions | None = None,
    recovery_threshold: float = RECOVERY_THRESHOLD,
) -> TrialResult:
    """Simulate one acquisition and recovery.

    Generates coefficients, measures through the configured chain with
    freshly drawn modulation and row indices, solves basis pursuit
    (denoising when ``snr_db`` is set, with the realized noise norm as
    the constraint radius), and reports the relative signal-domain
    error against the recovery threshold.
    """
    seeds = [derive_seed(config.seed, trial_seed, k) for k in range(4)]
    alpha = generate_sparse_signal(config.n, config.s, seeds[0])
    chain, sparsity = build_acquisition(config, seeds[1])
    omega = sample_indices(chain.out_dim, config.m, config.index_law, seeds[2])
    op = restrict_rows(chain, omega)
    y = op.forward(alpha)
    eta = 0.0
    if config.snr_db is not None:
        x = sparsity.forward(alpha)
        noisy = add_noise(y, config.snr_db, float(np.std(x)), seeds[3])
        eta = float(np.linalg.norm(noisy - y))
        y = noisy
    result = solve_bpdn(op, y, eta, solver_options)
    x_true = sparsity.forward(alpha)
    x_rec = sparsity.forward(result.alpha_star)
    rel_error = float(np.linalg.norm(x_true - x_rec) / np.linalg.norm(x_true))
    return TrialResult(recovered=rel_error <= recovery_threshold, rel_error=rel_error)


def best_s_term_error(alpha: np.ndarray, s: int) -> float:
    """l1 mass outside the s largest-magnitude entries (ties keep the
    lowest index)."""
    alpha = np.asarray(alpha)
    if not 0 <= s <= alpha.size:
        raise ValueError(f"s={s} must lie in [0, {alpha.size}]")
    order = np.argsort(-np.abs(alpha), kind="stable")
    return float(np.abs(alpha[order[s:]]).sum())


@dataclass(frozen=True)
class CellResult:
    s: int
    m: int
    w_bar: float
    trials: int
    successes: int
    probability: float
    seed: int


@dataclass
class ExperimentReport:
    """Empirical recovery probabilities over a parameter grid.

    ``runtime_seconds`` is informational only and deliberately left out
    of the serialized artifacts, which must be byte-identical across
    reruns and worker counts.
    """

    kind: str
    config: dict
    axes: dict
    cells: list[CellResult] = field(default_factory=list)
    runtime_seconds: float = 0.0

    def digest(self) -> str:
        payload = json.dumps({"kind": self.kind, "config": self.config, "axes": self.axes}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "config": self.config,
            "digest": self.digest(),
            "axes": self.axes,
            "cells": [asdict(c) for c in self.cells],
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["s,m,w_bar,trials,successes,probability"]
        for c in self.cells:
            lines.append(f"{c.s},{c.m},{c.w_bar!r},{c.trials},{c.successes},{c.probability!r}")
        return "\n".join(lines) + "\n"

    def save(self, path, fmt: str | None = None) -> None:
        path = Path(path)
        if fmt is None:
            fmt = "csv" if path.suffix.lower() == ".csv" else "json"
        if fmt not in ("csv", "json"):
            raise ValueError(f"unknown report format {fmt!r}")
        path.write_text(self.to_csv() if fmt == "csv" else self.to_json())


def _run_cell(task) -> int:
    config, trials, axis_key, root_seed, threshold, options = task
    successes = 0
    for trial in range(trials):
        trial_seed = derive_seed(root_seed, axis_key, config.m, trial)
        if run_trial(config, trial_seed, options, threshold).recovered:
            successes += 1
    return successes


def _execute_cells(tasks, workers):
    if workers is not None and workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(tasks) <= 1:
        return [_run_cell(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, tasks))


def phase_transition(
    sensing_kind: str,
    sparsity_kind: str,
    modulation_kind: str,
    n: int,
    s_grid,
    m_rule=range(1, 11),
    trials: int = 50,
    seed: int = 0,
    index_law: str = "iid_uniform",
    recovery_threshold: float = RECOVERY_THRESHOLD,
    solver_options: SolverOptions | None = None,
    workers: int | None = 1,
) -> ExperimentReport:
    """Empirical recovery probability over an (s, m) grid.

    For each sparsity s the measurement counts are the multiples
    ``k * s`` for k in ``m_rule``, clipped to the acquisition row
    count. Per-cell trial seeds derive from (seed, s, m, trial).
    """
    s_grid = [int(s) for s in s_grid]
    multipliers = sorted(set(int(k) for k in m_rule))
    if not s_grid or not multipliers or min(multipliers) < 1:
        raise ValueError("grids must be non-empty with positive multipliers")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    t0 = time.perf_counter()
    tasks = []
    for s in s_grid:
        for k in multipliers:
            m = k * s
            probe = SensingConfig(
                sensing_kind=sensing_kind, sparsity_kind=sparsity_kind, n=n, m=1, s=s,
                modulation=modulation_kind, index_law=index_law, seed=seed,
            )
            if m > probe.n_upsampled:
                continue
            config = SensingConfig(
                sensing_kind=sensing_kind, sparsity_kind=sparsity_kind, n=n, m=m, s=s,
                modulation=modulation_kind, index_law=index_law, seed=seed,
            )
            tasks.append((config, trials, s, seed, recovery_threshold, solver_options))

    counts = _execute_cells(tasks, workers)
    cells = [
        CellResult(
            s=cfg.s, m=cfg.m, w_bar=0.0, trials=trials, successes=succ,
            probability=succ / trials, seed=derive_seed(seed, cfg.s, cfg.m),
        )
        for (cfg, *_), succ in zip(tasks, counts)
    ]
    report_config = {
        "sensing_kind": sensing_kind, "sparsity_kind": sparsity_kind,
        "modulation": modulation_kind, "n": n, "trials": trials, "seed": seed,
        "index_law": index_law, "recovery_threshold": recovery_threshold,
    }
    axes = {"s": s_grid, "m_multipliers": multipliers}
    return ExperimentReport(
        kind="phase_transition", config=report_config, axes=axes, cells=cells,
        runtime_seconds=time.perf_counter() - t0,
    )


def default_m_grid(n: int, s: int, points: int = 20) -> list[int]:
    """Geometric grid of measurement counts from s to n."""
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    grid = np.unique(np.rint(np.geomspace(s, n, points)).astype(int))
    return [int(m) for m in grid]


def recovery_curve(
    sparsity_kind: str,
    n: int,
    s: int,
    w_bar_list,
    m_grid=None,
    trials: int = 50,
    seed: int = 0,
    index_law: str = "iid_uniform",
    recovery_threshold: float = RECOVERY_THRESHOLD,
    solver_options: SolverOptions | None = None,
    workers: int | None = 1,
) -> ExperimentReport:
    """Recovery probability versus m for the chirp acquisition chain.

    One curve per chirp rate; row indices are drawn from the upsampled
    grid. Per-cell trial seeds derive from (seed, s, m, trial), so the
    curves for different rates see matched signal draws.
    """
    w_bar_list = [float(w) for w in w_bar_list]
    if m_grid is None:
        m_grid = default_m_grid(n, s)
    m_grid = sorted(set(int(m) for m in m_grid))
    if not w_bar_list or not m_grid or min(m_grid) < 1:
        raise ValueError("grids must be non-empty with positive m")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    t0 = time.perf_counter()
    tasks = []
    meta = []
    for w_bar in w_bar_list:
        for m in m_grid:
            config = SensingConfig(
                sensing_kind="fourier", sparsity_kind=sparsity_kind, n=n, m=m, s=s,
                modulation="chirp", chirp_rate=w_bar, index_law=index_law, seed=seed,
            )
            tasks.append((config, trials, s, seed, recovery_threshold, solver_options))
            meta.append((w_bar, m))

    counts = _execute_cells(tasks, workers)
    cells = [
        CellResult(
            s=s, m=m, w_bar=w_bar, trials=trials, successes=succ,
            probability=succ / trials, seed=derive_seed(seed, s, m),
        )
        for (w_bar, m), succ in zip(meta, counts)
    ]
    report_config = {
        "sparsity_kind": sparsity_kind, "n": n, "s": s, "trials": trials, "seed": seed,
        "index_law": index_law, "recovery_threshold": recovery_threshold,
    }
    axes = {"w_bar": w_bar_list, "m": m_grid}
    return ExperimentReport(
        kind="recovery_curve", config=report_config, axes=axes, cells=cells,
        runtime_seconds=time.perf_counter() - t0,
    )
