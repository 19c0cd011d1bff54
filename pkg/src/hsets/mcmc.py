"""Metropolis tie-flip chain for the Beta random-graph model.

The chain state keeps the edge set as an HSet of edge ids and the degree
frequencies as a multiset ``degree -> number of vertices``.  Accepted flips
update both in place through reference-semantic operations, so a step costs
O(number of flipped ties) no matter how large the graph is.
"""

from __future__ import annotations

import csv
import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import HSet
from .operations import Semantic, difference, setsum, symmdiff

__all__ = [
    "BetaModel",
    "ChainConfig",
    "ChainState",
    "Start",
    "Trace",
    "acceptance_prob",
    "apply_flips",
    "degree_freq_from_edges",
    "edge_id",
    "edge_pair",
    "moving_average",
    "read_beta",
    "run_chain",
    "run_three_chains",
    "sample_beta",
    "sample_start",
    "step",
    "write_beta",
]


def edge_id(i: int, j: int, n: int) -> int:
    """Row-major index of the tie {i, j}, 1 <= i < j <= n, counted from 1."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return (i - 1) * (2 * n - i) // 2 + (j - i)


def edge_pair(h: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`edge_id`."""
    total = n * (n - 1) // 2
    if not 1 <= h <= total:
        raise ValueError(f"edge id {h} outside 1..{total}")
    # solve (i-1)(2n-i)/2 < h for the largest row start, then fix rounding
    i = int(((2 * n - 1) - math.sqrt((2 * n - 1) ** 2 - 8 * (h - 1))) // 2) + 1
    while i > 1 and (i - 1) * (2 * n - i) // 2 >= h:
        i -= 1
    while i * (2 * n - i - 1) // 2 < h:
        i += 1
    j = h - (i - 1) * (2 * n - i) // 2 + i
    return i, j


@dataclass
class BetaModel:
    """Independent ties with P(ij) = logistic(beta_i + beta_j)."""

    beta: np.ndarray

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=float)
        if self.beta.ndim != 1 or self.beta.size < 2:
            raise ValueError("beta must be a vector of at least 2 reals")
        if not np.all(np.isfinite(self.beta)):
            raise ValueError("beta must be finite")
        n = self.n
        self._pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self._beta_list = self.beta.tolist()

    @property
    def n(self) -> int:
        return int(self.beta.size)

    @property
    def n_ties(self) -> int:
        return self.n * (self.n - 1) // 2

    def pair(self, h: int) -> tuple[int, int]:
        if not 1 <= h <= len(self._pairs):
            raise ValueError(f"edge id {h} outside 1..{len(self._pairs)}")
        return self._pairs[h - 1]

    def tie_probabilities(self) -> np.ndarray:
        """p_ij for every edge id, in id order."""
        i, j = np.triu_indices(self.n, k=1)
        s = self.beta[i] + self.beta[j]
        return 1.0 / (1.0 + np.exp(-s))

    def log_prob(self, degrees: Sequence[int]) -> float:
        """log P(X = x | beta) from the degree vector of x."""
        i, j = np.triu_indices(self.n, k=1)
        psi = np.logaddexp(0.0, self.beta[i] + self.beta[j]).sum()
        return float(np.dot(degrees, self.beta) - psi)


class Start(str, enum.Enum):
    STATIONARY = "stationary"
    SPARSE = "sparse"
    DENSE = "dense"


@dataclass
class ChainState:
    edges: HSet
    degree_freq: HSet
    degrees: list[int]
    t: int = 0

    def snapshot(self):
        """Plain-data copy, for comparisons."""
        return (
            self.edges.render(),
            self.degree_freq.render(),
            tuple(self.degrees),
            self.t,
        )


@dataclass
class ChainConfig:
    n: int = 50
    iterations: int = 10001
    start: Start = Start.STATIONARY
    seed: int = 0
    window: int = 150
    snapshot_every: int = 1000

    def __post_init__(self):
        self.start = Start(self.start)
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")
        if self.n < 2:
            raise ValueError("n must be >= 2")


def _freq_hset(degrees: Iterable[int]) -> HSet:
    counts = Counter(degrees)
    return HSet(list(counts), list(counts.values()), generalized=True)


def degree_freq_from_edges(edges: HSet, n: int) -> HSet:
    """Degree-frequency multiset recomputed from scratch."""
    degrees = [0] * n
    for key in edges.keys():
        i, j = edge_pair(int(key), n)
        degrees[i - 1] += 1
        degrees[j - 1] += 1
    return _freq_hset(degrees)


def _state_from_ids(ids: Iterable[int], model: BetaModel) -> ChainState:
    ids = list(ids)
    degrees = [0] * model.n
    for h in ids:
        i, j = model.pair(h)
        degrees[i - 1] += 1
        degrees[j - 1] += 1
    return ChainState(HSet(ids), _freq_hset(degrees), degrees)


def sample_start(model: BetaModel, start: Start | str, rng: np.random.Generator) -> ChainState:
    start = Start(start)
    if start is Start.SPARSE:
        ids: Iterable[int] = ()
    elif start is Start.DENSE:
        ids = range(1, model.n_ties + 1)
    else:
        draws = rng.random(model.n_ties) < model.tie_probabilities()
        ids = (np.flatnonzero(draws) + 1).tolist()
    return _state_from_ids(ids, model)


def _proposed_degrees(model: BetaModel, state: ChainState, flips: Iterable[int]) -> dict[int, int]:
    """New degree of every vertex touched by ``flips`` (0-based vertex -> degree)."""
    table = state.edges._store.table
    new: dict[int, int] = {}
    degrees = state.degrees
    for h in set(flips):
        i, j = model.pair(h)
        delta = -1 if str(h) in table else 1
        for v in (i - 1, j - 1):
            new[v] = new.get(v, degrees[v]) + delta
    return new


def acceptance_prob(model: BetaModel, state: ChainState, flips: Iterable[int]) -> float:
    """min(exp(sum over touched vertices of (new - old degree) * beta), 1)."""
    new = _proposed_degrees(model, state, flips)
    beta = model._beta_list
    degrees = state.degrees
    log_q = sum((d - degrees[v]) * beta[v] for v, d in new.items())
    return 1.0 if log_q >= 0 else math.exp(log_q)


def apply_flips(model: BetaModel, state: ChainState, flips: Iterable[int]) -> None:
    """Toggle ``flips`` and update the degree frequencies incrementally."""
    flips = set(flips)
    new = _proposed_degrees(model, state, flips)
    old_counts = Counter(state.degrees[v] for v in new)
    new_counts = Counter(new.values())
    symmdiff(state.edges, HSet(flips), semantic=Semantic.REFER)
    difference(
        state.degree_freq,
        HSet(list(old_counts), list(old_counts.values())),
        semantic=Semantic.REFER,
    )
    setsum(
        state.degree_freq,
        HSet(list(new_counts), list(new_counts.values())),
        semantic=Semantic.REFER,
    )
    for v, d in new.items():
        state.degrees[v] = d


def step(model: BetaModel, state: ChainState, rng: np.random.Generator) -> bool:
    """One Metropolis update with a single uniformly drawn tie flip."""
    h = int(rng.integers(1, model.n_ties + 1))
    accepted = bool(rng.random() < acceptance_prob(model, state, (h,)))
    if accepted:
        apply_flips(model, state, (h,))
    state.t += 1
    return accepted


def moving_average(flags: np.ndarray, window: int) -> np.ndarray:
    """Centered moving mean; near the ends the window is truncated."""
    x = np.asarray(flags, dtype=float)
    n = x.size
    if window < 1:
        raise ValueError("window must be >= 1")
    csum = np.concatenate(([0.0], np.cumsum(x)))
    idx = np.arange(n)
    start = idx - window // 2
    lo = np.clip(start, 0, n)
    hi = np.clip(start + window, 0, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def _ecdf_rows(t: int, degree_freq: HSet, n: int) -> list[tuple[int, int, float]]:
    pairs = sorted((int(k), degree_freq._get(k)) for k in degree_freq.keys())
    rows = []
    acc = 0
    for degree, count in pairs:
        acc += count
        rows.append((t, degree, acc / n))
    return rows


@dataclass
class Trace:
    accepted: np.ndarray
    ties: np.ndarray
    movavg: np.ndarray
    ecdf: list[tuple[int, int, float]] = field(default_factory=list)
    final_state: ChainState | None = None

    def write_trace_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["iter", "accepted", "movavg", "ties"])
            for t, (a, m, k) in enumerate(zip(self.accepted, self.movavg, self.ties), 1):
                w.writerow([t, int(a), repr(float(m)), int(k)])

    def write_ecdf_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["snapshot_t", "degree", "cum_fraction"])
            for t, degree, frac in self.ecdf:
                w.writerow([t, degree, repr(frac)])


def run_chain(
    config: ChainConfig,
    model: BetaModel,
    rng: np.random.Generator | None = None,
) -> Trace:
    """Run ``config.iterations`` steps and record acceptance, tie counts and ECDFs.

    Iterations are numbered from 1; ECDF snapshots are taken after iterations
    1, 1 + snapshot_every, 1 + 2 * snapshot_every, ...
    """
    if config.n != model.n:
        raise ValueError(f"config.n={config.n} but model has {model.n} vertices")
    if rng is None:
        rng = np.random.default_rng(config.seed)
    state = sample_start(model, config.start, rng)
    accepted = np.zeros(config.iterations, dtype=bool)
    ties = np.zeros(config.iterations, dtype=np.int64)
    ecdf: list[tuple[int, int, float]] = []
    for k in range(config.iterations):
        accepted[k] = step(model, state, rng)
        ties[k] = state.edges.size_support()
        if k % config.snapshot_every == 0:
            ecdf.extend(_ecdf_rows(state.t, state.degree_freq, model.n))
    return Trace(accepted, ties, moving_average(accepted, config.window), ecdf, state)


def sample_beta(n: int, rng: np.random.Generator, mean: float = -1.0) -> np.ndarray:
    """Vertex parameters drawn from Normal(mean, identity)."""
    return rng.normal(mean, 1.0, size=n)


def read_beta(path: str | Path) -> np.ndarray:
    values = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    return np.asarray(values)


def write_beta(path: str | Path, beta: Sequence[float]) -> None:
    Path(path).write_text("".join(f"{float(b)!r}\n" for b in beta), encoding="utf-8")


def run_three_chains(
    n: int,
    iterations: int,
    seed: int,
    beta: np.ndarray | None = None,
    window: int = 150,
    snapshot_every: int = 1000,
) -> tuple[BetaModel, dict[Start, Trace]]:
    """Stationary, sparse and dense chains sharing one model, separate RNG streams."""
    beta_seq, *chain_seqs = np.random.SeedSequence(seed).spawn(1 + len(Start))
    if beta is None:
        beta = sample_beta(n, np.random.default_rng(beta_seq))
    model = BetaModel(beta)
    if model.n != n:
        raise ValueError(f"beta has {model.n} entries, expected n={n}")
    traces = {}
    for start, seq in zip(Start, chain_seqs):
        config = ChainConfig(n, iterations, start, seed, window, snapshot_every)
        traces[start] = run_chain(config, model, np.random.default_rng(seq))
    return model, traces
