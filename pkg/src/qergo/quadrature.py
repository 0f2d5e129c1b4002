"""Adaptive Simpson quadrature, cumulative grid integration and bisection.

These are small, dependency-free numerical kernels. They are written out
here rather than taken from scipy so that the tolerances, depth limits and
failure diagnostics are exactly the ones the rest of the package relies on.
"""
from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from .errors import NumericalError, QuadratureError

EPS = np.finfo(float).eps
CHUNK = 1 << 16
_NODES = np.array([0.0, 0.25, 0.5, 0.75, 1.0])


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> tuple[float, float]:
    """Integrate a scalar function on [a, b] with adaptive Simpson.

    Returns ``(value, error_estimate)``. Each bisection halves a cell's share
    of ``tol``; cells still missing their share at ``max_depth`` are accepted
    only while the summed error estimate stays within ``tol``, otherwise
    ``QuadratureError`` is raised.
    """
    if a == b:
        return 0.0, 0.0
    if b < a:
        v, e = adaptive_simpson(f, b, a, tol, max_depth)
        return -v, e

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    total = 0.0
    err = 0.0
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, eps_i, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        h = hi - lo
        fl = f(0.5 * (lo + mid))
        fr = f(0.5 * (mid + hi))
        left = h / 12.0 * (flo + 4.0 * fl + fmid)
        right = h / 12.0 * (fmid + 4.0 * fr + fhi)
        delta = left + right - s
        floor = 64.0 * EPS * (abs(left) + abs(right))
        if abs(delta) <= 15.0 * eps_i or abs(delta) <= floor or h <= 4.0 * EPS * max(abs(lo), abs(hi)):
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
            continue
        if depth >= max_depth:
            # halved shares become unattainable near endpoint singularities;
            # accept the cell only while the global error budget still holds
            if err + abs(delta) / 15.0 > tol:
                raise QuadratureError(
                    "adaptive Simpson did not converge",
                    interval=(lo, hi),
                    depth=depth,
                    estimate=abs(delta) / 15.0,
                    tolerance=eps_i,
                    accumulated=err,
                )
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
            continue
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps_i, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps_i, depth + 1))
    return total, err


def _simpson_pairs(f, a, b, share, depth, max_depth):
    """Vectorised adaptive Simpson over many independent intervals."""
    h = b - a
    pts = a[:, None] + h[:, None] * _NODES
    vals = f(pts.ravel()).reshape(pts.shape)
    s1 = h / 6.0 * (vals[:, 0] + 4.0 * vals[:, 2] + vals[:, 4])
    s2 = h / 12.0 * (vals[:, 0] + 4.0 * vals[:, 1] + 2.0 * vals[:, 2] + 4.0 * vals[:, 3] + vals[:, 4])
    delta = s2 - s1
    floor = 64.0 * EPS * h * np.abs(vals).sum(axis=1)
    out = s2 + delta / 15.0
    bad = (np.abs(delta) > 15.0 * share) & (np.abs(delta) > floor)
    if np.any(bad):
        if depth >= max_depth:
            i = int(np.flatnonzero(bad)[0])
            raise QuadratureError(
                "adaptive Simpson did not converge",
                interval=(float(a[i]), float(b[i])),
                depth=depth,
                estimate=float(abs(delta[i]) / 15.0),
                tolerance=float(share[i]),
            )
        ab, bb, sb = a[bad], b[bad], 0.5 * share[bad]
        m = 0.5 * (ab + bb)
        out[bad] = (_simpson_pairs(f, ab, m, sb, depth + 1, max_depth)
                    + _simpson_pairs(f, m, bb, sb, depth + 1, max_depth))
    return out


def cumulative_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    grid: np.ndarray,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> np.ndarray:
    """Running integral of ``f`` over a sorted grid, ``out[0] == 0``.

    Each interval gets a 3-point and a 5-point Simpson estimate; the
    Richardson-corrected 5-point value is kept when the two agree within the
    interval's share of ``tol`` (proportional to its width). Intervals that
    miss are halved, all failing intervals at once, down to ``max_depth``.
    ``f`` must accept arrays.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-d array")
    if np.any(np.diff(grid) < 0):
        raise ValueError("grid must be non-decreasing")
    n = grid.size - 1
    out = np.zeros(grid.size)
    span = grid[-1] - grid[0]
    if n == 0 or span == 0:
        return out
    pieces = np.empty(n)
    for start in range(0, n, CHUNK):
        stop = min(start + CHUNK, n)
        a = grid[start:stop]
        b = grid[start + 1:stop + 1]
        pieces[start:stop] = _simpson_pairs(f, a, b, tol * (b - a) / span, 0, max_depth)
    out[1:] = np.cumsum(pieces)
    return out


def sign_change_intervals(values: np.ndarray) -> np.ndarray:
    """Indices ``i`` with a strict sign change between ``values[i]`` and ``values[i+1]``."""
    v = np.asarray(values)
    return np.flatnonzero(v[:-1] * v[1:] < 0)


def bisect(
    f: Callable[[float], float],
    a: float,
    b: float,
    fa: float | None = None,
    fb: float | None = None,
    xtol: float = 1e-12,
    maxiter: int = 200,
) -> float:
    """Bisection root of ``f`` on a sign-changing bracket [a, b]."""
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NumericalError("bracket does not change sign", a=a, b=b, fa=fa, fb=fb)
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        if b - a <= xtol or m in (a, b):
            return float(m)
        fm = f(m)
        if fm == 0.0:
            return float(m)
        if math.copysign(1.0, fm) == math.copysign(1.0, fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return float(0.5 * (a + b))
