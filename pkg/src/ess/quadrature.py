"""Numerical integration used by the continuous Ess evaluator."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = ["adaptive_simpson", "romberg_piecewise_linear"]


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 40,
    panels: int = 16,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson quadrature.

    The interval is first cut into ``panels`` equal pieces so that narrow
    peaks are not missed by the initial three-point rule. Each piece is then
    bisected until the Richardson estimate of its error falls below its share
    of ``tol``.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    QuadratureError
        A subinterval still fails the error test at ``max_depth``.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if not b > a:
        raise DomainError(f"empty interval [{a}, {b}]")

    edges = np.linspace(a, b, panels + 1).tolist()
    stack = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = f(lo), f(mid), f(hi)
        whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        stack.append((lo, hi, flo, fmid, fhi, whole, tol / panels, 0))

    total = 0.0
    err = 0.0
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm, frm = f(lmid), f(rmid)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        diff = left + right - whole
        if abs(diff) <= 15.0 * eps:
            total += left + right + diff / 15.0
            err += abs(diff) / 15.0
        elif depth + 1 >= max_depth:
            raise QuadratureError(
                f"no convergence on [{lo!r}, {hi!r}] after {max_depth} bisections"
            )
        else:
            stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
            stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
    return total, err


def romberg_piecewise_linear(
    g: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    fx: np.ndarray,
    tol: float = 1e-10,
    max_points: int = 1 << 22,
    singular_order: float | None = None,
) -> tuple[float, float]:
    """Integrate ``g(f(x))`` where ``f`` linearly interpolates ``(x, fx)``.

    Every grid cell is split dyadically, so the original nodes stay on every
    level and the integrand is smooth within each cell. Successive trapezoid
    sums are combined by Richardson extrapolation until two entries of the
    same column of the table agree within ``tol``.

    ``singular_order`` is the exponent ``s`` of an extra ``h**s`` term in the
    trapezoid error, as produced by ``g(f) = f**a`` at a node where ``f``
    vanishes (``s = 1 + a``). It is eliminated first.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    x = np.asarray(x, dtype=float)
    fx = np.asarray(fx, dtype=float)
    n_cells = x.size - 1
    index = np.arange(x.size, dtype=float)

    def trapezoid(level):
        t = np.linspace(0.0, n_cells, n_cells * (1 << level) + 1)
        xs = np.interp(t, index, x)
        return float(np.trapezoid(g(np.interp(t, index, fx)), xs))

    orders = [2.0 * k for k in range(1, 64)]
    if singular_order is not None:
        orders = sorted({float(singular_order), *orders})

    rows = [[trapezoid(0)]]
    level = 0
    while n_cells * (2 << level) + 1 <= max_points:
        level += 1
        row = [trapezoid(level)]
        for k in range(1, level + 1):
            factor = 2.0 ** orders[k - 1]
            row.append(row[k - 1] + (row[k - 1] - rows[-1][k - 1]) / (factor - 1.0))
        # A kink in g (f -> 0 with a fractional power) breaks the h**2 error
        # expansion, so take whichever column has settled best.
        gaps = [abs(row[k] - rows[-1][k]) for k in range(level)]
        k = int(np.argmin(gaps))
        rows.append(row)
        if level >= 2 and gaps[k] <= tol:
            return row[k], gaps[k]
    raise QuadratureError(f"Romberg refinement did not reach tol={tol:g}")
