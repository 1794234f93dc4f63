"""Discrete probability mass functions and their effective support size.

The effective support size of order ``alpha`` is

.. math::

   S(p, \\alpha) = \\Big(\\sum_i p_i^\\alpha\\Big)^{1/(1-\\alpha)}

with the limits ``exp(H(p))`` at ``alpha = 1`` and ``1 / max(p)`` as
``alpha -> inf``. It is the exponential of the Renyi entropy of the same
order (a Hill number, in ecological terms) and always lies between 1 and
the number of outcomes with positive probability.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, NormalizationError, ParseError

__all__ = [
    "AlphaKind",
    "AlphaParam",
    "EssProfile",
    "INF",
    "ONE",
    "Pmf",
    "TABLE1_ALPHAS",
    "delta",
    "ess",
    "ess_profile",
    "make_pmf",
    "product_pmf",
    "renyi_entropy",
    "shannon_entropy",
    "support_size",
    "uniform",
]

SUM_TOL = 1e-9
ALPHA_ONE_GAP = 1e-12


class AlphaKind(enum.Enum):
    FINITE = "finite"
    ONE = "one"
    INF = "inf"


@dataclass(frozen=True)
class AlphaParam:
    """Order of an effective support size or Renyi entropy.

    ``FINITE`` orders are positive reals kept at least ``1e-12`` away from 1;
    the two limits are represented by the tagged constants :data:`ONE` and
    :data:`INF`, so they are evaluated by their exact formulas rather than
    approached numerically.
    """

    kind: AlphaKind
    value: float

    def __post_init__(self):
        v = self.value
        if self.kind is AlphaKind.ONE:
            if v != 1.0:
                raise DomainError(f"ONE must carry value 1.0, got {v!r}")
        elif self.kind is AlphaKind.INF:
            if v != math.inf:
                raise DomainError(f"INF must carry value inf, got {v!r}")
        else:
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"alpha must be a positive finite real, got {v!r}")
            if abs(v - 1.0) <= ALPHA_ONE_GAP:
                raise DomainError(
                    f"alpha={v!r} is within {ALPHA_ONE_GAP:g} of 1; use ONE instead"
                )

    @classmethod
    def finite(cls, value: float) -> "AlphaParam":
        return cls(AlphaKind.FINITE, float(value))

    @classmethod
    def coerce(cls, a: "AlphaLike") -> "AlphaParam":
        """Convert a number or string to an order.

        Exactly ``1`` maps to :data:`ONE` and ``inf`` to :data:`INF`. A
        string is read as a decimal literal, with ``inf``/``infinity``/``∞``
        accepted for the upper limit.
        """
        if isinstance(a, AlphaParam):
            return a
        if isinstance(a, str):
            text = a.strip().lower()
            if text in ("inf", "+inf", "infinity", "∞"):
                return INF
            try:
                a = float(text)
            except ValueError:
                raise ParseError(f"cannot parse alpha from {a!r}") from None
            if math.isnan(a):
                raise ParseError(f"cannot parse alpha from {text!r}")
        a = float(a)
        if a == 1.0:
            return ONE
        if a == math.inf:
            return INF
        return cls.finite(a)

    @property
    def is_one(self) -> bool:
        return self.kind is AlphaKind.ONE

    @property
    def is_inf(self) -> bool:
        return self.kind is AlphaKind.INF

    @property
    def label(self) -> str:
        if self.is_inf:
            return "inf"
        if self.is_one:
            return "1"
        return f"{self.value:g}"

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        if self.kind is AlphaKind.FINITE:
            return f"AlphaParam.finite({self.value!r})"
        return self.kind.name


ONE = AlphaParam(AlphaKind.ONE, 1.0)
INF = AlphaParam(AlphaKind.INF, math.inf)

AlphaLike = Union[AlphaParam, float, int, str]

TABLE1_ALPHAS = tuple(
    AlphaParam.coerce(a) for a in (0.001, 0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 10.0, math.inf)
)


@dataclass(frozen=True, eq=False)
class Pmf:
    """Validated probability mass function over ``m >= 1`` outcomes.

    Entries are nonnegative and sum to one within ``1e-9``. The stored array
    is read-only.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("a pmf needs a nonempty one-dimensional sequence")
        if not np.all(np.isfinite(arr)):
            raise DomainError("pmf entries must be finite")
        if np.any(arr < 0):
            raise DomainError("pmf entries must be nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise NormalizationError(f"pmf sums to {total!r}, not 1")
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @classmethod
    def _trusted(cls, probs: np.ndarray) -> "Pmf":
        # Internal results (products, marginals) skip the sum check.
        arr = np.clip(np.asarray(probs, dtype=float), 0.0, 1.0)
        arr.flags.writeable = False
        obj = object.__new__(cls)
        object.__setattr__(obj, "probs", arr)
        return obj

    @property
    def m(self) -> int:
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.m

    def __iter__(self):
        return iter(self.probs.tolist())

    def __getitem__(self, i):
        return self.probs[i]

    def __array__(self, dtype=None, copy=None):
        return self.probs if dtype is None else self.probs.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self) -> int:
        return hash(self.probs.tobytes())

    def __repr__(self) -> str:
        return f"Pmf({self.probs.tolist()!r})"

    def tolist(self) -> list[float]:
        return self.probs.tolist()

    def positive(self) -> np.ndarray:
        """Entries of the support, i.e. the strictly positive probabilities."""
        return self.probs[self.probs > 0]


def make_pmf(weights: Iterable[float], normalize: bool = False) -> Pmf:
    """Build a :class:`Pmf` from weights.

    Parameters
    ----------
    weights : iterable of float
        Nonnegative values. Without ``normalize`` they must already sum to 1
        within ``1e-9``.
    normalize : bool, optional
        Divide every entry by the total first.

    Raises
    ------
    DomainError
        Empty input, a negative or non-finite entry, or a zero total when
        normalizing.
    NormalizationError
        The weights do not sum to 1 and ``normalize`` is false.
    """
    arr = np.array(list(weights) if not isinstance(weights, np.ndarray) else weights,
                   dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("weights must be a nonempty one-dimensional sequence")
    if not np.all(np.isfinite(arr)):
        raise DomainError("weights must be finite")
    if np.any(arr < 0):
        raise DomainError("weights must be nonnegative")
    if normalize:
        total = arr.sum()
        if total <= 0:
            raise DomainError("cannot normalize weights with zero total")
        arr = arr / total
    return Pmf(arr)


def uniform(m: int) -> Pmf:
    if m < 1:
        raise DomainError("m must be at least 1")
    return Pmf._trusted(np.full(m, 1.0 / m))


def delta(m: int, at: int = 0) -> Pmf:
    """Degenerate pmf on ``m`` outcomes with all mass on outcome ``at``."""
    if m < 1 or not 0 <= at < m:
        raise DomainError(f"invalid degenerate pmf: m={m}, at={at}")
    arr = np.zeros(m)
    arr[at] = 1.0
    return Pmf._trusted(arr)


def support_size(p: Pmf) -> int:
    return int(np.count_nonzero(p.probs > 0))


def shannon_entropy(p: Pmf) -> float:
    """Shannon entropy in nats, with ``0 log 0 = 0``."""
    q = p.positive()
    return float(-np.sum(q * np.log(q))) + 0.0


def _log_power_sum(q: np.ndarray, alpha: float) -> float:
    # log(sum(q**alpha)). Near alpha = 1 the sum is close to 1 and the result
    # is later divided by 1 - alpha, so work with sum(q**alpha) - 1 directly.
    logq = np.log(q)
    if abs(alpha - 1.0) < 0.5:
        terms = np.concatenate([q, q * np.expm1((alpha - 1.0) * logq), [-1.0]])
        excess = math.fsum(terms)
        return math.log1p(excess)
    # Otherwise factor out the largest term.
    logs = alpha * logq
    top = logs.max()
    return float(top + np.log(np.exp(logs - top).sum()))


def renyi_entropy(p: Pmf, a: AlphaLike) -> float:
    """Renyi entropy of order ``a`` in nats.

    ``ONE`` gives the Shannon entropy and ``INF`` the min-entropy
    ``-log max(p)``. Zero entries are ignored for every order.
    """
    a = AlphaParam.coerce(a)
    if a.is_one:
        return shannon_entropy(p)
    q = p.positive()
    if a.is_inf:
        return float(-np.log(q.max())) + 0.0
    return _log_power_sum(q, a.value) / (1.0 - a.value) + 0.0


def ess(p: Pmf, a: AlphaLike) -> float:
    """Effective support size of ``p`` at order ``a``.

    Evaluated in the log domain for finite orders, as ``exp(H(p))`` at
    ``ONE`` and as ``1 / max(p)`` at ``INF``. The result is kept inside
    ``[1, support_size(p)]``, which only ever trims rounding noise.

    Examples
    --------
    >>> round(ess(make_pmf([0.9, 0.1]), 0.5), 6)
    1.6
    >>> ess(make_pmf([0.6, 0.4]), INF)
    1.6666666666666667
    """
    a = AlphaParam.coerce(a)
    q = p.positive()
    if a.is_inf:
        value = 1.0 / float(q.max())
    else:
        value = math.exp(renyi_entropy(p, a))
    return min(max(value, 1.0), float(q.size))


@dataclass(frozen=True)
class EssProfile:
    """Effective support sizes of one pmf over a list of orders."""

    alphas: tuple[AlphaParam, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.alphas) != len(self.values):
            raise DomainError("alphas and values must have the same length")

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return zip(self.alphas, self.values)

    def as_dict(self) -> dict[str, float]:
        return {a.label: v for a, v in self.items()}


def ess_profile(p: Pmf, alphas: Sequence[AlphaLike]) -> EssProfile:
    alphas = tuple(AlphaParam.coerce(a) for a in alphas)
    if not alphas:
        raise DomainError("at least one alpha is required")
    return EssProfile(alphas, tuple(ess(p, a) for a in alphas))


def product_pmf(p: Pmf, q: Pmf) -> Pmf:
    """Joint pmf of two independent variables, flattened row-major."""
    return Pmf._trusted(np.outer(p.probs, q.probs).ravel())
