"""Quadratic sets and their pointwise and structural predicates.

A quadratic set on ``X = {0, ..., n-1}`` is a bijection ``r`` of ``X x X``,
written ``r(x, y) = (sigma_x(y), gamma_y(x))``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import BadIndex, NotBijective, NotSD, RequiresBraided
from .permutation import Permutation

Pair = tuple[int, int]


def _as_permutations(table: np.ndarray) -> tuple[Permutation, ...] | None:
    """Rows of ``table`` as permutations, or None if any row is not bijective."""
    n = table.shape[0]
    full = np.arange(n)
    for row in table:
        if not np.array_equal(np.sort(row), full):
            return None
    return tuple(Permutation(row.tolist()) for row in table)


class QuadraticSet:
    """A finite quadratic set ``(X, r)`` with ``X = range(n)``.

    ``first[x, y]`` and ``second[x, y]`` hold the two coordinates of
    ``r(x, y)``. ``sigma[x]`` is the permutation ``y -> first[x, y]`` and
    ``gamma[y]`` is ``x -> second[x, y]``; either family is ``None`` when one
    of its maps fails to be bijective.
    """

    __slots__ = ("n", "first", "second", "sigma", "gamma", "_key")

    def __init__(self, n: int, first: np.ndarray, second: np.ndarray):
        self.n = n
        self.first = first
        self.second = second
        self.first.setflags(write=False)
        self.second.setflags(write=False)
        self.sigma = _as_permutations(first)
        self.gamma = _as_permutations(second.T)
        self._key = (n, first.tobytes(), second.tobytes())

    @property
    def r_table(self) -> tuple[Pair, ...]:
        """``r(x, y)`` at flat index ``x * n + y``."""
        return tuple(zip(self.first.ravel().tolist(), self.second.ravel().tolist()))

    def flat(self) -> list[int]:
        """The r-table flattened to ``2 n^2`` integers."""
        return np.stack([self.first.ravel(), self.second.ravel()], axis=1).ravel().tolist()

    def r(self, x: int, y: int) -> Pair:
        return int(self.first[x, y]), int(self.second[x, y])

    def __call__(self, x: int, y: int) -> Pair:
        return self.r(x, y)

    def __eq__(self, other):
        if not isinstance(other, QuadraticSet):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"QuadraticSet(n={self.n}, r={list(self.r_table)})"


def _from_arrays(n: int, first, second) -> QuadraticSet:
    first = np.asarray(first, dtype=np.int64).reshape(n, n)
    second = np.asarray(second, dtype=np.int64).reshape(n, n)
    if first.size and (first.min() < 0 or first.max() >= n or second.min() < 0 or second.max() >= n):
        raise BadIndex(f"r-table entries must lie in [0, {n})")
    codes = (first * n + second).ravel()
    seen = np.full(n * n, -1, dtype=np.int64)
    for idx, c in enumerate(codes.tolist()):
        if seen[c] >= 0:
            raise NotBijective(
                f"r({idx // n},{idx % n}) = r({seen[c] // n},{seen[c] % n}) = ({c // n},{c % n})",
                index=idx,
            )
        seen[c] = idx
    return QuadraticSet(n, first, second)


def make_from_r_table(n: int, pairs: Sequence[Sequence[int]]) -> QuadraticSet:
    """Build a quadratic set from ``n^2`` pairs, ``pairs[x*n + y] = r(x, y)``."""
    if n < 1:
        raise BadIndex("n must be at least 1")
    if len(pairs) != n * n:
        raise NotBijective(f"expected {n * n} pairs, got {len(pairs)}")
    for idx, p in enumerate(pairs):
        if len(p) != 2 or not all(isinstance(v, (int, np.integer)) and 0 <= v < n for v in p):
            raise BadIndex(f"entry {idx} = {p!r} is not a pair in [0, {n})")
    arr = np.asarray(pairs, dtype=np.int64).reshape(n * n, 2)
    return _from_arrays(n, arr[:, 0], arr[:, 1])


def _perm_rows(n: int, perms, label: str) -> np.ndarray:
    if len(perms) != n:
        raise BadIndex(f"expected {n} {label} permutations, got {len(perms)}")
    rows = []
    for p in perms:
        p = p if isinstance(p, Permutation) else Permutation(p)
        if p.n != n:
            raise BadIndex(f"{label} permutation {p} has degree {p.n}, expected {n}")
        rows.append(p.images)
    return np.array(rows, dtype=np.int64).reshape(n, n)


def make_sd(sigmas: Sequence) -> QuadraticSet:
    """The SD quadratic set ``r(x, y) = (sigma_x(y), x)``."""
    n = len(sigmas)
    if n < 1:
        raise BadIndex("need at least one permutation")
    first = _perm_rows(n, sigmas, "sigma")
    second = np.repeat(np.arange(n), n).reshape(n, n)
    return QuadraticSet(n, first, second)


def make_from_sigma_gamma(sigmas: Sequence, gammas: Sequence) -> QuadraticSet:
    """``r(x, y) = (sigma_x(y), gamma_y(x))``; r itself must be bijective."""
    n = len(sigmas)
    if n < 1:
        raise BadIndex("need at least one permutation")
    first = _perm_rows(n, sigmas, "sigma")
    second = _perm_rows(n, gammas, "gamma").T.copy()
    return _from_arrays(n, first, second)


# --- predicates -----------------------------------------------------------


def is_non_degenerate(qs: QuadraticSet) -> bool:
    return qs.sigma is not None and qs.gamma is not None


def is_involutive(qs: QuadraticSet) -> bool:
    F, S = qs.first, qs.second
    X, Y = np.indices((qs.n, qs.n))
    return bool(np.array_equal(F[F, S], X) and np.array_equal(S[F, S], Y))


def is_square_free(qs: QuadraticSet) -> bool:
    d = np.arange(qs.n)
    return bool(np.array_equal(qs.first[d, d], d) and np.array_equal(qs.second[d, d], d))


def is_sd(qs: QuadraticSet) -> bool:
    return bool(np.array_equal(qs.second, np.repeat(np.arange(qs.n), qs.n).reshape(qs.n, qs.n)))


def _braided_direct(qs: QuadraticSet) -> bool:
    F, S = qs.first, qs.second
    X, Y, Z = np.ix_(*(np.arange(qs.n),) * 3)
    X, Y, Z = np.broadcast_arrays(X, Y, Z)

    def r1(a, b, c):
        return F[a, b], S[a, b], c

    def r2(a, b, c):
        return a, F[b, c], S[b, c]

    lhs = r1(*r2(*r1(X, Y, Z)))
    rhs = r2(*r1(*r2(X, Y, Z)))
    return all(np.array_equal(u, v) for u, v in zip(lhs, rhs))


def _braided_conditions(qs: QuadraticSet) -> bool:
    # sigma_x(y) = F[x, y], gamma_y(x) = S[x, y]; conditions taken verbatim.
    F, S = qs.first, qs.second
    X, Y, Z = np.broadcast_arrays(*np.ix_(*(np.arange(qs.n),) * 3))
    cond_i = np.array_equal(F[X, F[Y, Z]], F[F[X, Y], F[S[X, Y], Z]])
    cond_ii = np.array_equal(S[S[Z, Y], X], S[S[Z, F[Y, X]], S[Y, X]])
    lhs = S[F[Y, X], F[S[Y, X], Z]]
    rhs = F[S[Y, F[X, Z]], S[X, Z]]
    cond_iii = np.array_equal(lhs, rhs)
    return bool(cond_i and cond_ii and cond_iii)


def is_braided(qs: QuadraticSet, method: str = "direct") -> bool:
    """Braid relation ``r1 r2 r1 == r2 r1 r2`` on ``X^3``.

    ``method="direct"`` compares both sides on every triple;
    ``method="yb-conditions"`` checks the three sigma/gamma identities.
    """
    if method == "direct":
        return _braided_direct(qs)
    if method == "yb-conditions":
        return _braided_conditions(qs)
    raise ValueError(f"unknown method {method!r}")


# --- powers of r ----------------------------------------------------------


def _check_power(qs: QuadraticSet, pair: Pair, k: int) -> None:
    if k < 0 or k > 2 * qs.n ** 2:
        raise ValueError(f"k={k} outside [0, {2 * qs.n ** 2}]")
    x, y = pair
    if not (0 <= x < qs.n and 0 <= y < qs.n):
        raise BadIndex(f"pair {pair} outside X^2")


def apply_r_power(qs: QuadraticSet, pair: Pair, k: int) -> Pair:
    _check_power(qs, pair, k)
    x, y = pair
    for _ in range(k):
        x, y = qs.r(x, y)
    return x, y


def closed_form_r_power(qs: QuadraticSet, pair: Pair, k: int) -> Pair:
    """``r^k(x, y)`` for an SD braided set via the sigma_x sigma_y formulas.

    With ``t = sigma_x sigma_y`` and ``j = k // 2``:

    - even k: ``(t^j sigma_x^-j (x), t^(j-1) sigma_x sigma_y^(1-j) (y))``
    - odd k: ``(t^j sigma_x sigma_y^-j (y), t^j sigma_x^-j (x))``

    In the square-free case these reduce to ``(t^j(x), t^(j-1) sigma_x(y))``
    and ``(t^j sigma_x(y), t^j(x))``.
    """
    _check_power(qs, pair, k)
    if not is_sd(qs):
        raise NotSD("closed form needs gamma_y = id for all y")
    if not is_braided(qs):
        raise RequiresBraided("closed form holds only for braided SD sets")
    x, y = pair
    sx, sy = qs.sigma[x], qs.sigma[y]
    t = sx * sy
    j = k // 2
    if is_square_free(qs):
        if k % 2 == 0:
            return (t ** j)(x), (t ** (j - 1) * sx)(y)
        return (t ** j * sx)(y), (t ** j)(x)
    if k % 2 == 0:
        return (t ** j * sx ** (-j))(x), (t ** (j - 1) * sx * sy ** (1 - j))(y)
    return (t ** j * sx * sy ** (-j))(y), (t ** j * sx ** (-j))(x)
