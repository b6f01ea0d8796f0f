"""Planted-partition instance generator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InputError
from .graph import MINUS, MISSING, PLUS, Clustering, SignedGraph


@dataclass(frozen=True)
class InstanceSpec:
    """Parameters of a planted instance.

    ``n`` counts good vertices; the instance has ``n + k_bad`` vertices.
    ``missing_frac`` is the fraction of pairs touching a bad vertex that are
    made unknown, so good-good pairs are always labelled.
    """

    n: int
    k_bad: int = 0
    num_clusters: int = 2
    flip_prob: float = 0.0
    missing_frac: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or self.k_bad < 0:
            raise InputError("vertex counts must be non-negative")
        total = self.n + self.k_bad
        if total > 0 and not 1 <= self.num_clusters <= total:
            raise InputError(f"num_clusters must lie in 1..{total}")
        if not 0.0 <= self.flip_prob <= 1.0:
            raise InputError("flip_prob must be a probability")
        if not 0.0 <= self.missing_frac <= 1.0:
            raise InputError("missing_frac must lie in [0, 1]")
        if self.seed < 0:
            raise InputError("seed must be non-negative")


class PlantedInstance(NamedTuple):
    graph: SignedGraph
    ground_truth: Clustering
    bad_vertices: tuple
    flipped: tuple  # labelled pairs whose sign disagrees with the ground truth


def gen_planted(spec: InstanceSpec) -> PlantedInstance:
    rng = np.random.default_rng(spec.seed)
    total = spec.n + spec.k_bad
    if total == 0:
        return PlantedInstance(SignedGraph(np.zeros((0, 0))), Clustering(()), (), ())
    order = rng.permutation(total)
    truth = np.empty(total, dtype=np.intp)
    truth[order] = np.arange(total) % spec.num_clusters
    bad = tuple(sorted(rng.choice(total, size=spec.k_bad, replace=False).tolist()))

    same = truth[:, None] == truth[None, :]
    m = np.where(same, PLUS, MINUS).astype(np.int8)

    is_bad = np.zeros(total, dtype=bool)
    is_bad[list(bad)] = True
    iu, iv = np.triu_indices(total, k=1)
    touching = np.flatnonzero(is_bad[iu] | is_bad[iv])
    n_missing = int(round(spec.missing_frac * len(touching)))
    gone = rng.choice(touching, size=n_missing, replace=False) if n_missing else []
    m[iu[gone], iv[gone]] = MISSING

    labelled = np.flatnonzero(m[iu, iv] != MISSING)
    flip = labelled[rng.random(len(labelled)) < spec.flip_prob]
    m[iu[flip], iv[flip]] *= -1
    upper = np.triu(m, k=1)
    m = upper + upper.T
    flipped = tuple(zip(iu[flip].tolist(), iv[flip].tolist()))
    return PlantedInstance(SignedGraph(m), Clustering.from_labels(truth), bad, flipped)
