"""End-to-end solver: cover, guess the bad partition, cut, solve pieces, keep the best."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .bad_cluster import BadClusterSolver
from .complete import SolverChoice, exact_cc, pivot_cc, solve_complete
from .cover import empty_edge_graph, min_vertex_cover
from .enumeration import BadPartition, EnumBudget, enumerate_partitions
from .exceptions import BudgetExceeded, ConfigError, InvariantViolation
from .graph import (MINUS, MISSING, Clustering, DeltaParams, MistakeReport, SignedGraph,
                    count_mistakes)
from .multiway import (EXACT_CUT_CAP, apply_cut, build_auxiliary, multiway_cut_exact,
                       multiway_cut_isolating)

logger = logging.getLogger(__name__)

CUT_SOLVERS = ("isolating", "exact")


@dataclass(frozen=True)
class PipelineConfig:
    delta: DeltaParams = field(default_factory=DeltaParams)
    solver: SolverChoice = field(default_factory=SolverChoice)
    cut_solver: str = "isolating"
    budget: EnumBudget = field(default_factory=EnumBudget)
    max_k: int = 8
    seed: int = 0
    exact_cut_cap: int = EXACT_CUT_CAP

    def __post_init__(self):
        if self.cut_solver not in CUT_SOLVERS:
            raise ConfigError(f"unknown cut solver {self.cut_solver!r}")
        if self.max_k < 0:
            raise ConfigError("max_k must be non-negative")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        # the 13-delta cleanliness test must stay meaningful
        self.delta.threshold(13)

    def echo(self) -> dict:
        return {
            "delta": str(self.delta.delta),
            "complete_solver": self.solver.kind,
            "cut_solver": self.cut_solver,
            "repeats": self.solver.repeats,
            "enum_max_subsets": self.budget.max_subsets,
            "enum_max_size": self.budget.max_subset_size,
            "max_k": self.max_k,
        }


@dataclass(frozen=True)
class PartitionSummary:
    index: int
    blocks: tuple
    cut_weight: int
    n_components: int
    n_candidates: int
    truncated: bool
    mistakes: int


@dataclass(frozen=True)
class GuaranteeBound:
    value: Fraction
    delta_valid: bool
    constant_applies: bool


@dataclass
class RunReport:
    n: int
    k: int
    bad_vertices: tuple
    best_partition: BadPartition | None
    clustering: Clustering
    mistakes: MistakeReport
    partitions: list
    config: dict
    seed: int
    truncated: bool
    selected: str
    runtime_ms: float
    guarantee: GuaranteeBound
    exact_opt: int | None = None

    @property
    def ratio(self) -> float | None:
        if self.exact_opt:
            return self.mistakes.total / self.exact_opt
        return None

    def to_dict(self) -> dict:
        out = {
            "version": __version__,
            "n": self.n,
            "k": self.k,
            "bad_vertices": list(self.bad_vertices),
            "partition": self.best_partition.as_lists() if self.best_partition else [],
            "clusters": [list(c) for c in self.clustering.clusters],
            "mistakes": self.mistakes.as_dict(),
            "config": dict(self.config),
            "seed": self.seed,
            "truncated": self.truncated,
        }
        if self.exact_opt is not None:
            out["exact_opt"] = self.exact_opt
        if self.ratio is not None:
            out["ratio"] = self.ratio
        out["runtime_ms"] = self.runtime_ms
        return out


def guarantee_bound(cfg, truncated: bool = True) -> GuaranteeBound:
    """``18/delta^2 + 7.3`` for the configured delta (or a bare delta value).

    ``constant_applies`` is only true for a valid delta with the exact
    complete solver, the exact cut solver and no truncated enumeration.
    """
    if isinstance(cfg, PipelineConfig):
        delta = cfg.delta.delta
        exact_parts = cfg.solver.kind == "exact" and cfg.cut_solver == "exact"
    elif isinstance(cfg, DeltaParams):
        delta, exact_parts = cfg.delta, False
    else:
        delta, exact_parts = Fraction(cfg), False
    if delta <= 0:
        raise ConfigError("delta must be positive")
    value = 18 / (delta * delta) + Fraction(73, 10)
    valid = delta <= Fraction(1, 5)
    return GuaranteeBound(value, valid, valid and exact_parts and not truncated)


def _child_seed(seed, *key):
    return int(np.random.SeedSequence([seed, *key]).generate_state(1)[0])


def _baselines(g: SignedGraph, cfg: PipelineConfig):
    n = g.n
    yield "one-cluster", [frozenset(range(n))] if n else []
    yield "singletons", [frozenset({v}) for v in range(n)]
    # complete solve with missing pairs read as MINUS
    relabeled = SignedGraph(np.where(g.matrix == MISSING, MINUS, g.matrix))
    if cfg.solver.kind == "exact" and n <= cfg.solver.exact_cap:
        blocks = exact_cc(relabeled, cap=cfg.solver.exact_cap)
    else:
        blocks = pivot_cc(relabeled, seed=_child_seed(cfg.seed, 1 << 30),
                          repeats=cfg.solver.repeats)
    yield "complete-ignoring-missing", blocks


def _solve_partition(g, part, index, cfg):
    tg = build_auxiliary(g, part)
    if cfg.cut_solver == "exact":
        cut = multiway_cut_exact(tg, cap=cfg.exact_cut_cap)
    else:
        cut = multiway_cut_isolating(tg)
    h, comps = apply_cut(g, part, cut)
    blocks = []
    truncated = False
    n_candidates = 0
    for ci, comp in enumerate(comps):
        sub, idx = h.induced(comp.vertices)
        choice = cfg.solver.with_seed(_child_seed(cfg.seed, index, ci))
        if comp.good_only:
            local = solve_complete(sub, None, choice)
        else:
            pos = {v: i for i, v in enumerate(idx)}
            bad_local = [pos[v] for v in part.blocks[comp.block]]
            runner = BadClusterSolver(sub, bad_local, cfg.delta, choice, cfg.budget)
            local = runner.run()
            truncated |= runner.truncated
            n_candidates += runner.n_candidates
        blocks.extend(frozenset(idx[v] for v in blk) for blk in local)
    clustering = Clustering.from_clusters(blocks, g.n)
    for blk in part.blocks:
        if len({clustering.labels[v] for v in blk}) != 1:
            raise InvariantViolation(f"partition block {blk} split in partition case {index}")
    mistakes = count_mistakes(g, clustering)
    summary = PartitionSummary(index, part.blocks, cut.weight, len(comps),
                               n_candidates, truncated, mistakes.total)
    return clustering, mistakes, summary


def solve(g: SignedGraph, cfg: PipelineConfig = PipelineConfig(),
          exact_cap: int | None = None) -> RunReport:
    """Run the full pipeline on ``g``.

    With ``exact_cap`` set and ``g.n <= exact_cap`` the exact optimum is
    computed as well and reported with the approximation ratio.
    """
    t0 = time.perf_counter()
    cover = min_vertex_cover(empty_edge_graph(g), cfg.max_k)
    bad = tuple(sorted(cover.bad_vertices))
    logger.debug("cover found: k=%d bad=%s", cover.k, bad)

    candidates = []
    summaries = []
    best_partition = None
    truncated = False
    if cover.k == 0:
        blocks = solve_complete(g, None, cfg.solver.with_seed(cfg.seed))
        c = Clustering.from_clusters(blocks, g.n)
        candidates.append(("complete", c, count_mistakes(g, c), None))
    else:
        best = None
        for index, part in enumerate(enumerate_partitions(bad)):
            try:
                c, m, summary = _solve_partition(g, part, index, cfg)
            except BudgetExceeded as exc:
                raise BudgetExceeded(f"partition {part.as_lists()}: {exc}",
                                     lower_bound=exc.lower_bound) from exc
            summaries.append(summary)
            truncated |= summary.truncated
            if best is None or m.total < best[2].total:
                best = (part, c, m)
        best_partition = best[0]
        candidates.append(("partition", best[1], best[2], best[0]))
    for name, blocks in _baselines(g, cfg):
        c = Clustering.from_clusters(blocks, g.n)
        candidates.append((name, c, count_mistakes(g, c), None))

    selected, clustering, mistakes, _ = candidates[0]
    for name, c, m, _ in candidates[1:]:
        if m.total < mistakes.total:
            selected, clustering, mistakes = name, c, m

    exact_opt = None
    if exact_cap is not None and g.n <= exact_cap:
        exact_opt = count_mistakes(g, Clustering.from_clusters(exact_cc(g, cap=exact_cap), g.n)).total
        if mistakes.total < exact_opt:
            raise InvariantViolation("pipeline beat the exact optimum")

    return RunReport(
        n=g.n,
        k=cover.k,
        bad_vertices=bad,
        best_partition=best_partition,
        clustering=clustering,
        mistakes=mistakes,
        partitions=summaries,
        config=cfg.echo(),
        seed=cfg.seed,
        truncated=truncated,
        selected=selected,
        runtime_ms=round((time.perf_counter() - t0) * 1000, 3),
        guarantee=guarantee_bound(cfg, truncated),
        exact_opt=exact_opt,
    )
