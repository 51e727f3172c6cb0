"""Membership probes for the parameter loci.

A parameter lambda admits a vanishing series with coefficients c_0 = 1 and
c_j in {-1, 0, +1} (locus M) or {-1, +1} (locus M0) only if every truncation
satisfies the tail bound |f_k(lambda)| <= |lambda|^{k+1} / (1 - |lambda|).
The membership test runs a depth-first search over coefficient prefixes,
pruning a prefix as soon as the bound fails.  Escape (all prefixes dead) is
definitive; survival to the requested depth only says no truncation ruled
the parameter out, so it over-approximates the locus.

Escape depth is the maximum prefix length reached before the search tree
died; it does not depend on traversal order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidLambda

SET_M = "M"
SET_M0 = "M0"

#: Additive slack on the pruning bound so rounding never kills a prefix of a
#: genuine root series: soundness of escape matters more than a marginally
#: larger survivor set.
PRUNE_GUARD = 1e-15


@dataclass(frozen=True)
class MembershipResult:
    set_kind: str
    depth: int
    escaped_at: int  # 0 when survived, else max prefix length reached

    @property
    def survived(self) -> bool:
        return self.escaped_at == 0

    def __str__(self) -> str:
        state = "survived" if self.survived else f"escaped({self.escaped_at})"
        return f"{self.set_kind}:depth{self.depth}:{state}"


@dataclass(frozen=True)
class SurvivorList:
    prefixes: tuple[tuple[int, ...], ...]
    overflow: bool


@dataclass(frozen=True)
class EscapeGrid:
    """Row-major escape depths over a pixel window; row 0 has the largest
    imaginary part.  Value 0 means survived."""

    window: tuple[float, float, float, float]
    width: int
    height: int
    depth: int
    set_kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.height, self.width):
            raise ValueError("values shape must be (height, width)")


def _digits(set_kind: str) -> tuple[int, ...]:
    if set_kind == SET_M:
        return (-1, 0, 1)
    if set_kind == SET_M0:
        return (-1, 1)
    raise ValueError(f"set must be {SET_M!r} or {SET_M0!r}")


def _check_lambda(lam: complex) -> complex:
    lam = complex(lam)
    if not (0.0 < abs(lam) < 1.0):
        raise InvalidLambda(f"need 0 < |lambda| < 1, got lambda={lam}")
    return lam


def _prune_bounds_sq(absl: float, depth: int) -> list[float]:
    R = 1.0 / (1.0 - absl)
    guard = PRUNE_GUARD * R
    return [(absl ** (k + 1) * R + guard) ** 2 for k in range(depth)]


def _search(lam: complex, digits: tuple[int, ...], depth: int) -> int:
    """Pruned DFS over coefficient prefixes; 0 if some prefix of length
    ``depth`` survives, otherwise the maximum prefix length reached."""
    thr2 = _prune_bounds_sq(abs(lam), depth)
    if 1.0 > thr2[0]:
        return 1
    if depth == 1:
        return 0
    powers = [lam**k for k in range(depth)]
    ternary = len(digits) == 3
    max_len = 1
    stack = [(0, complex(1.0))]
    while stack:
        k, value = stack.pop()
        k1 = k + 1
        bound = thr2[k1]
        pw = powers[k1]
        last = k1 == depth - 1
        if k1 + 1 > max_len:
            max_len = k1 + 1
        # children pushed plus-first so the minus branch pops first (lex order)
        cand = (value + pw, value, value - pw) if ternary else (value + pw, value - pw)
        for child in cand:
            if child.real * child.real + child.imag * child.imag <= bound:
                if last:
                    return 0
                stack.append((k1, child))
    return max_len


def membership(lam: complex, set_kind: str = SET_M, depth: int = 40) -> MembershipResult:
    """Pruned depth-first membership probe at a single parameter."""
    lam = _check_lambda(lam)
    digits = _digits(set_kind)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    escaped_at = _search(lam, digits, depth)
    return MembershipResult(set_kind, depth, escaped_at)


def survivors(
    lam: complex, set_kind: str = SET_M, depth: int = 20, cap: int = 1024
) -> SurvivorList:
    """All coefficient prefixes of length ``depth`` whose truncations pass
    the tail bound at every level, in lexicographic order, truncated at
    ``cap`` entries with an overflow flag."""
    lam = _check_lambda(lam)
    digits = _digits(set_kind)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    thr2 = _prune_bounds_sq(abs(lam), depth)
    found: list[tuple[int, ...]] = []
    overflow = False
    if 1.0 > thr2[0]:
        return SurvivorList((), False)
    powers = [lam**k for k in range(depth)]

    prefix = [1]

    def extend(k: int, value: complex) -> bool:
        nonlocal overflow
        if k == depth - 1:
            if len(found) >= cap:
                overflow = True
                return False
            found.append(tuple(prefix))
            return True
        k1 = k + 1
        pw = powers[k1]
        for digit in digits:
            child = value + digit * pw
            if child.real**2 + child.imag**2 <= thr2[k1]:
                prefix.append(digit)
                keep_going = extend(k1, child)
                prefix.pop()
                if not keep_going:
                    return False
        return True

    extend(0, complex(1.0))
    return SurvivorList(tuple(found), overflow)


def _pixel_centers(window, width, height):
    x0, y0, x1, y1 = window
    xs = x0 + (np.arange(width) + 0.5) * (x1 - x0) / width
    ys = y1 - (np.arange(height) + 0.5) * (y1 - y0) / height
    return xs, ys


def escape_grid(
    window: tuple[float, float, float, float],
    width: int,
    height: int,
    set_kind: str = SET_M,
    depth: int = 40,
    threads: int = 1,
) -> EscapeGrid:
    """Per-pixel membership over a window, evaluated at pixel centers.

    Pixels at lambda = 0 or |lambda| >= 1 cannot belong to the locus and are
    assigned escape depth 1 by convention.  The raster is identical for any
    thread count: rows are computed independently and assembled by index.
    """
    x0, y0, x1, y1 = window
    if not (x0 < x1 and y0 < y1):
        raise ValueError("window must satisfy x0 < x1 and y0 < y1")
    if width < 1 or height < 1:
        raise ValueError("pixel counts must be >= 1")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    digits = _digits(set_kind)
    xs, ys = _pixel_centers(window, width, height)
    values = np.zeros((height, width), dtype=np.int32)

    def run_row(j: int) -> None:
        y = ys[j]
        row = values[j]
        for i in range(width):
            lam = complex(xs[i], y)
            a = abs(lam)
            if a == 0.0 or a >= 1.0:
                row[i] = 1
            else:
                row[i] = _search(lam, digits, depth)

    threads = max(1, int(threads))
    if threads == 1:
        for j in range(height):
            run_row(j)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_row, range(height)))
    return EscapeGrid(tuple(window), width, height, depth, set_kind, values)
