"""Input validation helpers for the estimator API."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exceptions import ConfigError, InputError
from .graph import SignedGraph


def check_signed_matrix(X) -> SignedGraph:
    """Coerce ``X`` into a :class:`SignedGraph`.

    Accepts a ``SignedGraph`` unchanged, or a square array-like whose
    off-diagonal entries are ``+1`` (similar), ``-1`` (dissimilar) and ``0`` or
    ``NaN`` (unknown).  Any positive value counts as ``+1`` and any negative
    value as ``-1``; the matrix must be symmetric in sign.  The diagonal is
    ignored.
    """
    if isinstance(X, SignedGraph):
        return X
    if hasattr(X, "toarray"):
        X = X.toarray()
    a = np.asarray(X, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square signed affinity matrix, got shape {a.shape}")
    if np.isinf(a).any():
        raise InputError("signed affinity matrix contains infinities")
    signs = np.sign(np.nan_to_num(a, nan=0.0)).astype(np.int8)
    np.fill_diagonal(signs, 0)
    if not np.array_equal(signs, signs.T):
        raise InputError("signed affinity matrix must be symmetric")
    return SignedGraph(signs)


def check_delta(delta) -> Fraction:
    """Parse ``delta`` as an exact rational (``"1/65"``, ``Fraction``, int or float)."""
    try:
        if isinstance(delta, float):
            d = Fraction(delta).limit_denominator(10 ** 6)
        else:
            d = Fraction(delta)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot read delta from {delta!r}") from exc
    if d <= 0:
        raise ConfigError("delta must be positive")
    return d


def check_seed(random_state) -> int:
    """Non-negative integer seed from an sklearn-style ``random_state``."""
    if random_state is None or isinstance(random_state, np.random.RandomState):
        rs = random_state if random_state is not None else np.random.mtrand._rand
        return int(rs.randint(np.iinfo(np.int32).max))
    if isinstance(random_state, (int, np.integer)):
        if random_state < 0:
            raise ConfigError("random_state must be non-negative")
        return int(random_state)
    raise ConfigError(f"{random_state!r} cannot be used as a seed")
