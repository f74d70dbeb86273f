"""Derivative-free scalar minimization: golden-section with a bracketing scan."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimize a unimodal function on [lo, hi].

    Returns ``(x, f(x))`` at the bracket midpoint once the bracket width
    falls below ``tol`` (or after ``max_iter`` shrink steps).
    """
    if not hi > lo:
        raise ValueError(f"need hi > lo, got [{lo!r}, {hi!r}]")
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def scan_then_golden(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    num: int,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Global coarse scan to bracket the best minimum, then golden refinement.

    The scan evaluates ``f`` on ``num`` equispaced points; the refinement
    runs on the two grid cells around the best sample.  Returns the better
    of the refined point and the best raw sample.
    """
    if num < 3:
        raise ValueError(f"need at least 3 scan points, got {num}")
    xs = np.linspace(lo, hi, num)
    vals = np.array([float(f(x)) for x in xs])
    k = int(np.argmin(vals))
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, num - 1)])
    x, fx = golden_section(f, a, b, tol=tol)
    if vals[k] < fx:
        return float(xs[k]), float(vals[k])
    return float(x), float(fx)
