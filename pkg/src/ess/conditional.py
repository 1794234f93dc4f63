"""Joint distributions of two discrete variables and conditional Ess.

The effective support size of the "mean conditional" distribution of Y given
X is the ratio ``S(p(X, Y), a) / S(p(X), a)``. At order one it coincides with
the ``p(X)``-weighted geometric mean of the row-conditional sizes
``S(p(Y | X = x_i), 1)``; for other orders the two generally differ, and
:func:`verify_chain_identity` reports by how much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ONE, AlphaLike, AlphaParam, Pmf, ess, shannon_entropy
from .errors import ConditioningError, DomainError, NormalizationError

__all__ = [
    "ChainReport",
    "JointPmf",
    "chain_identity_rhs",
    "conditional_entropy",
    "conditional_y_given_x",
    "flatten",
    "make_joint",
    "marginal_x",
    "marginal_y",
    "mean_conditional_ess",
    "product_joint",
    "verify_chain_identity",
]


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Table of joint probabilities ``p(X = x_i, Y = y_j)``, rows indexed by X."""

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=float)
        if t.ndim != 2 or t.shape[0] < 1 or t.shape[1] < 1:
            raise DomainError("a joint pmf needs a nonempty two-dimensional table")
        if not np.all(np.isfinite(t)):
            raise DomainError("joint entries must be finite")
        if np.any(t < 0):
            raise DomainError("joint entries must be nonnegative")
        total = float(t.sum())
        if abs(total - 1.0) > 1e-9:
            raise NormalizationError(f"joint table sums to {total!r}, not 1")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @property
    def shape(self) -> tuple[int, int]:
        return self.table.shape

    def __repr__(self) -> str:
        return f"JointPmf({self.table.tolist()!r})"


def make_joint(table, normalize: bool = False) -> JointPmf:
    t = np.array(table, dtype=float)
    if normalize:
        total = t.sum()
        if not total > 0:
            raise DomainError("cannot normalize a table with zero total")
        t = t / total
    return JointPmf(t)


def product_joint(p: Pmf, q: Pmf) -> JointPmf:
    """Joint table of independent X ~ p and Y ~ q."""
    t = np.outer(p.probs, q.probs)
    obj = object.__new__(JointPmf)
    t.flags.writeable = False
    object.__setattr__(obj, "table", t)
    return obj


def flatten(j: JointPmf) -> Pmf:
    return Pmf._trusted(j.table.ravel())


def marginal_x(j: JointPmf) -> Pmf:
    return Pmf._trusted(j.table.sum(axis=1))


def marginal_y(j: JointPmf) -> Pmf:
    return Pmf._trusted(j.table.sum(axis=0))


def conditional_y_given_x(j: JointPmf, i: int) -> Pmf:
    """Distribution of Y given ``X = x_i``.

    Raises
    ------
    ConditioningError
        Row ``i`` has probability zero.
    """
    n_x = j.shape[0]
    if not -n_x <= i < n_x:
        raise DomainError(f"row index {i} out of range for {n_x} rows")
    row = j.table[i]
    total = row.sum()
    if total <= 0:
        raise ConditioningError(f"P(X = x_{i}) is zero; conditional is undefined")
    return Pmf._trusted(row / total)


def mean_conditional_ess(j: JointPmf, a: AlphaLike) -> float:
    """``S(p(X, Y), a) / S(p(X), a)``; depends on the table only."""
    a = AlphaParam.coerce(a)
    return ess(flatten(j), a) / ess(marginal_x(j), a)


def _weighted_geometric_mean(j: JointPmf, a: AlphaParam) -> float:
    px = marginal_x(j).probs
    log_sum = 0.0
    for i, w in enumerate(px):
        if w > 0:
            log_sum += w * math.log(ess(conditional_y_given_x(j, i), a))
    return math.exp(log_sum)


def chain_identity_rhs(j: JointPmf) -> float:
    """``prod_i S(p(Y | x_i), 1) ** p(x_i)``; null rows contribute a factor 1."""
    return _weighted_geometric_mean(j, ONE)


@dataclass(frozen=True)
class ChainReport:
    alpha: AlphaParam
    lhs: float
    rhs_geometric: float

    @property
    def abs_gap(self) -> float:
        return abs(self.lhs - self.rhs_geometric)

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha.label,
            "lhs": self.lhs,
            "rhs_geometric": self.rhs_geometric,
            "abs_gap": self.abs_gap,
        }


def verify_chain_identity(j: JointPmf, a: AlphaLike = ONE) -> ChainReport:
    """Compare the quotient definition with the weighted geometric mean.

    The right-hand side uses row-conditional sizes at the same order ``a``.
    The two agree to rounding at ``ONE`` and for product tables; otherwise
    the gap is only reported.
    """
    a = AlphaParam.coerce(a)
    return ChainReport(a, mean_conditional_ess(j, a), _weighted_geometric_mean(j, a))


def conditional_entropy(j: JointPmf) -> float:
    """``H(Y | X) = H(X, Y) - H(X)`` in nats."""
    return shannon_entropy(flatten(j)) - shannon_entropy(marginal_x(j))
