"""Orbits of ``X^m`` under the maps ``r_{m,i} = id^(i-1) x r x id^(m-i-1)``.

Two words ``x_1...x_m`` and ``y_1...y_m`` are equal in the structure monoid
exactly when the tuples share an orbit, so the orbit count at degree m is
``dim A_m``.

Tuples are encoded as base-n integers with the first coordinate most
significant, so integer order is lexicographic tuple order.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from math import ceil

import numpy as np

from .errors import BudgetExceeded
from .qset import QuadraticSet

DEFAULT_BUDGET = 10 ** 7


def encode(t: Sequence[int], n: int) -> int:
    code = 0
    for x in t:
        code = code * n + int(x)
    return code


def decode(code: int, n: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        code, x = divmod(code, n)
        out.append(x)
    return tuple(reversed(out))


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of ``X^m`` into orbits.

    ``labels[code]`` is the orbit id of the tuple with that code. Orbit ids
    are ordered by the smallest tuple they contain.
    """

    m: int
    n: int
    labels: np.ndarray
    orbit_sizes: tuple[int, ...]

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    def size_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.orbit_sizes))

    def orbit_id(self, t: Sequence[int]) -> int:
        return int(self.labels[encode(t, self.n)])

    def orbit_of(self, t: Sequence[int]) -> list[tuple[int, ...]]:
        codes = np.flatnonzero(self.labels == self.orbit_id(t))
        return [decode(int(c), self.n, self.m) for c in codes]

    def orbits(self) -> list[list[tuple[int, ...]]]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum((0,) + self.orbit_sizes)
        return [
            [decode(int(c), self.n, self.m) for c in order[bounds[i]:bounds[i + 1]]]
            for i in range(self.orbit_count)
        ]


def _generator_image(qs: QuadraticSet, codes: np.ndarray, m: int, i: int) -> np.ndarray:
    """Codes of ``r_{m,i+1}`` applied to every tuple (positions i, i+1)."""
    n = qs.n
    wa = n ** (m - 1 - i)
    wb = n ** (m - 2 - i)
    a = (codes // wa) % n
    b = (codes // wb) % n
    return codes + (qs.first[a, b] - a) * wa + (qs.second[a, b] - b) * wb


def _compress(parent: np.ndarray) -> np.ndarray:
    while True:
        grand = parent[parent]
        if np.array_equal(grand, parent):
            return parent
        parent = grand


def orbit_partition(
    qs: QuadraticSet,
    m: int,
    budget: int | None = None,
    generator_order: Sequence[int] | None = None,
) -> OrbitPartition:
    """Exact orbit partition of ``X^m``.

    Union-find with every root pointing at the smallest code of its class:
    each round hooks the larger root of every unmerged edge onto the smaller
    and then pointer-jumps to full compression, until no generator merges
    anything. ``generator_order`` permutes the order generators are applied
    in; the result does not depend on it.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = qs.n
    total = n ** m
    budget = DEFAULT_BUDGET if budget is None else budget
    if total > budget:
        raise BudgetExceeded(total, budget)
    dtype = np.int32 if total < 2 ** 31 else np.int64
    codes = np.arange(total, dtype=dtype)
    gens = list(range(m - 1)) if generator_order is None else list(generator_order)
    if sorted(gens) != list(range(m - 1)):
        raise ValueError(f"generator_order must permute range({m - 1})")

    parent = codes.copy()
    changed = True
    while changed:
        changed = False
        for g in gens:
            image = _generator_image(qs, codes, m, g).astype(dtype, copy=False)
            pu, pv = parent, parent[image]
            mask = pu != pv
            if not mask.any():
                continue
            changed = True
            pu, pv = pu[mask], pv[mask]
            np.minimum.at(parent, np.maximum(pu, pv), np.minimum(pu, pv))
            parent = _compress(parent)

    _, labels, sizes = np.unique(parent, return_inverse=True, return_counts=True)
    labels = labels.reshape(-1).astype(dtype, copy=False)
    labels.setflags(write=False)
    return OrbitPartition(m=m, n=n, labels=labels, orbit_sizes=tuple(int(s) for s in sizes))


def dim_A(qs: QuadraticSet, m: int, budget: int | None = None) -> int:
    """Dimension of the degree-m component of the structure algebra."""
    if m == 0:
        return 1
    if m == 1:
        return qs.n
    return orbit_partition(qs, m, budget=budget).orbit_count


@dataclass(frozen=True)
class GrowthTable:
    """Per-degree dimensions with a finite-window GK estimate.

    ``gk_estimate`` is None when the window is too short for the differences
    of ``dims`` to settle; ``window`` is the number of trailing degrees that
    had to vanish.
    """

    dims: tuple[int, ...]
    cumulative: tuple[int, ...]
    gk_estimate: int | None
    window: int

    @property
    def inconclusive(self) -> bool:
        return self.gk_estimate is None


def _gk_estimate(dims: Sequence[int], window: int) -> int | None:
    # d-th difference of dims == (d+1)-th difference of the cumulative sums
    diff = np.asarray(dims, dtype=np.int64)
    d = 0
    while diff.size >= window:
        if not diff[-window:].any():
            return d
        diff = np.diff(diff)
        d += 1
    return None


def growth_table(qs: QuadraticSet, m_max: int, budget: int | None = None) -> GrowthTable:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    dims = tuple(dim_A(qs, m, budget=budget) for m in range(m_max + 1))
    cumulative = tuple(int(c) for c in np.cumsum(dims))
    window = ceil(m_max / 2)
    return GrowthTable(dims, cumulative, _gk_estimate(dims, window), window)


def is_2_cancellative(qs: QuadraticSet) -> bool:
    """No X^2 orbit holds two pairs with the same first or the same second entry."""
    n = qs.n
    labels = orbit_partition(qs, 2).labels.astype(np.int64)
    X, Y = np.indices((n, n))
    return (np.unique(labels * n + X.ravel()).size == n * n
            and np.unique(labels * n + Y.ravel()).size == n * n)


def satisfies_maximality(qs: QuadraticSet) -> bool:
    n = qs.n
    return dim_A(qs, 2) == n + n * (n - 1) // 2


def orbit_size_counts(part: OrbitPartition) -> dict[int, int]:
    return dict(sorted(Counter(part.orbit_sizes).items()))
