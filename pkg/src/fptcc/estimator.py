"""scikit-learn style front end.

Both estimators take a precomputed signed affinity matrix (``+1`` similar,
``-1`` dissimilar, ``0``/``NaN`` unknown) and expose ``labels_`` after
``fit``, in the same way as ``affinity="precomputed"`` clusterers.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .complete import EXACT_CAP, SolverChoice, exact_cc
from .enumeration import EnumBudget
from .graph import Clustering, DeltaParams, count_mistakes
from .pipeline import PipelineConfig, solve
from .validation import check_delta, check_seed, check_signed_matrix


class CorrelationClustering(ClusterMixin, BaseEstimator):
    """Correlation clustering on signed graphs with unknown pairs.

    The number of clusters is not fixed in advance.  Unknown pairs must be
    coverable by at most ``max_k`` vertices; the running time is exponential
    only in that number.

    Parameters
    ----------
    delta : str, Fraction or float, default="1/65"
        Cleanliness parameter used when growing the cluster of the bad vertices.
    complete_solver : {"pivot", "exact"}, default="pivot"
        Solver used on the parts of the graph without unknown pairs.
    cut_solver : {"isolating", "exact"}, default="isolating"
        Multiway cut routine used to separate groups of bad vertices.
    repeats : int, default=5
        Best-of repeats for the randomised pivot solver.
    max_k : int, default=8
        Largest accepted vertex cover of the unknown pairs.
    enum_max_subsets : int, default=4096
        Full subset enumeration is used up to this many subsets.
    enum_max_size : int or None, default=None
        Subset size cap once enumeration is truncated; ``None`` means twice
        the number of bad vertices in the piece.
    exact_cap : int or None, default=None
        When set and the graph has at most this many vertices, also compute
        the exact optimum (``exact_opt_``).
    random_state : int, RandomState or None, default=0
        Seed for the pivot solver.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster id of each vertex, numbered in order of first appearance.
    n_clusters_ : int
    bad_vertices_ : ndarray
        Minimum vertex cover of the unknown pairs.
    k_ : int
    mistakes_ : int
        Disagreements of ``labels_`` with the input signs.
    exact_opt_ : int or None
    report_ : RunReport
        Full provenance of the run.
    """

    def __init__(self, delta="1/65", complete_solver="pivot", cut_solver="isolating",
                 repeats=5, max_k=8, enum_max_subsets=4096, enum_max_size=None,
                 exact_cap=None, random_state=0):
        self.delta = delta
        self.complete_solver = complete_solver
        self.cut_solver = cut_solver
        self.repeats = repeats
        self.max_k = max_k
        self.enum_max_subsets = enum_max_subsets
        self.enum_max_size = enum_max_size
        self.exact_cap = exact_cap
        self.random_state = random_state

    def _config(self) -> PipelineConfig:
        seed = check_seed(self.random_state)
        return PipelineConfig(
            delta=DeltaParams(check_delta(self.delta)),
            solver=SolverChoice(self.complete_solver, self.repeats, seed),
            cut_solver=self.cut_solver,
            budget=EnumBudget(self.enum_max_subsets, self.enum_max_size),
            max_k=self.max_k,
            seed=seed,
        )

    def fit(self, X, y=None):
        g = check_signed_matrix(X)
        report = solve(g, self._config(), exact_cap=self.exact_cap)
        self.report_ = report
        self.labels_ = np.asarray(report.clustering.labels, dtype=np.intp)
        self.n_clusters_ = report.clustering.n_clusters
        self.bad_vertices_ = np.asarray(report.bad_vertices, dtype=np.intp)
        self.k_ = report.k
        self.mistakes_ = report.mistakes.total
        self.exact_opt_ = report.exact_opt
        return self

    def score(self, X, y=None):
        """Negated number of disagreements of ``labels_`` with ``X``."""
        check_is_fitted(self, "labels_")
        g = check_signed_matrix(X)
        return -count_mistakes(g, self.labels_).total


class ExactCorrelationClustering(ClusterMixin, BaseEstimator):
    """Optimal correlation clustering by exhaustive search, for small graphs.

    Parameters
    ----------
    max_n : int, default=12
        Refuse graphs with more vertices than this.
    """

    def __init__(self, max_n=EXACT_CAP):
        self.max_n = max_n

    def fit(self, X, y=None):
        g = check_signed_matrix(X)
        c = Clustering.from_clusters(exact_cc(g, cap=self.max_n), g.n)
        self.labels_ = np.asarray(c.labels, dtype=np.intp)
        self.n_clusters_ = c.n_clusters
        self.mistakes_ = count_mistakes(g, c).total
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "labels_")
        return -count_mistakes(check_signed_matrix(X), self.labels_).total
