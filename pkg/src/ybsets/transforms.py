"""Derived solution, retraction, permutation groups, isomorphism and canonical forms."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from .errors import IllDefined, LimitExceeded, RequiresBraided, RequiresNonDegenerate
from .permutation import Permutation
from .qset import QuadraticSet, is_braided, is_non_degenerate, make_sd

CANONICAL_LIMIT = 8


def _require(qs: QuadraticSet, braided: bool = True) -> None:
    if not is_non_degenerate(qs):
        raise RequiresNonDegenerate("sigma_x and gamma_y must all be bijective")
    if braided and not is_braided(qs):
        raise RequiresBraided("r does not satisfy the braid relation")


def derived_solution(qs: QuadraticSet) -> QuadraticSet:
    """The SD set ``r'(x, y) = (gamma_x(sigma_{gamma_y^-1(x)}(y)), x)``."""
    _require(qs)
    n = qs.n
    ginv = [g.inverse() for g in qs.gamma]
    sigmas = [Permutation(qs.gamma[x](qs.sigma[ginv[y](x)](y)) for y in range(n))
              for x in range(n)]
    return make_sd(sigmas)


def retraction(qs: QuadraticSet) -> tuple[QuadraticSet, tuple[int, ...]]:
    """Quotient by ``x ~ y`` iff ``sigma_x = sigma_y`` and ``gamma_x = gamma_y``.

    Classes are numbered by their smallest element. The induced map is
    checked on every choice of representatives.
    """
    _require(qs)
    n = qs.n
    keys: dict[tuple, int] = {}
    class_map = []
    for x in range(n):
        key = (qs.sigma[x].images, qs.gamma[x].images)
        class_map.append(keys.setdefault(key, len(keys)))
    k = len(keys)
    cm = np.array(class_map)
    first = np.full((k, k), -1, dtype=np.int64)
    second = np.full((k, k), -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            a, b = cm[x], cm[y]
            u, v = cm[qs.first[x, y]], cm[qs.second[x, y]]
            if first[a, b] < 0:
                first[a, b], second[a, b] = u, v
            elif (first[a, b], second[a, b]) != (u, v):
                raise IllDefined(f"induced map depends on representatives at ({x},{y})")
    return QuadraticSet(k, first, second), tuple(class_map)


def multipermutation_level(qs: QuadraticSet, max_steps: int | None = None) -> int | None:
    """Number of retractions needed to reach one element, or None if the
    retraction tower stalls at a set with more than one element."""
    max_steps = qs.n if max_steps is None else max_steps
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    level, cur = 0, qs
    while cur.n > 1:
        if level >= max_steps:
            raise LimitExceeded(f"still {cur.n} elements after {max_steps} retractions")
        nxt, _ = retraction(cur)
        if nxt.n == cur.n:
            return None
        cur, level = nxt, level + 1
    return level


def retraction_tower(qs: QuadraticSet) -> list[int]:
    """Sizes of ``qs, Ret(qs), Ret^2(qs), ...`` until the size stops changing."""
    sizes = [qs.n]
    cur = qs
    while cur.n > 1:
        cur, _ = retraction(cur)
        if cur.n == sizes[-1]:
            break
        sizes.append(cur.n)
    return sizes


@dataclass(frozen=True)
class PermutationGroup:
    generators: tuple[Permutation, ...]
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.generators[0].n

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def orbit(self, x: int) -> set[int]:
        return {g(x) for g in self.elements}

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree


def closure(generators, n: int) -> frozenset:
    """Closure of ``generators`` under composition, by breadth-first search."""
    gens = list(dict.fromkeys(generators)) or [Permutation.identity(n)]
    elements = {Permutation.identity(n)}
    frontier = deque(elements)
    while frontier:
        p = frontier.popleft()
        for g in gens:
            q = g * p
            if q not in elements:
                elements.add(q)
                frontier.append(q)
    return frozenset(elements)


def permutation_group(qs: QuadraticSet, which: str = "sigma") -> PermutationGroup:
    """Group generated by the sigma_x, the gamma_x, or both."""
    if which not in ("sigma", "gamma", "both"):
        raise ValueError(f"unknown family {which!r}")
    gens: list[Permutation] = []
    if which in ("sigma", "both"):
        if qs.sigma is None:
            raise RequiresNonDegenerate("some sigma_x is not bijective")
        gens += qs.sigma
    if which in ("gamma", "both"):
        if qs.gamma is None:
            raise RequiresNonDegenerate("some gamma_y is not bijective")
        gens += qs.gamma
    gens = tuple(dict.fromkeys(gens))
    return PermutationGroup(gens, closure(gens, qs.n))


def _generated_orbit(gens, x: int) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for g in gens:
            z = g(y)
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen


def is_indecomposable(qs: QuadraticSet) -> bool:
    """Transitivity of the group generated by all sigma_x and gamma_x."""
    if not is_non_degenerate(qs):
        raise RequiresNonDegenerate("sigma_x and gamma_y must all be bijective")
    return len(_generated_orbit(qs.sigma + qs.gamma, 0)) == qs.n


def relabel(qs: QuadraticSet, pi) -> QuadraticSet:
    """The isomorphic copy ``(pi x pi) r (pi x pi)^-1``."""
    pi = np.asarray(list(pi), dtype=np.int64)
    inv = np.argsort(pi)
    A, B = np.indices((qs.n, qs.n))
    return QuadraticSet(qs.n, pi[qs.first[inv[A], inv[B]]], pi[qs.second[inv[A], inv[B]]])


# --- isomorphism ----------------------------------------------------------


def _point_invariants(qs: QuadraticSet) -> list[tuple]:
    from .orbits import orbit_partition

    part = orbit_partition(qs, 2)
    sizes = part.orbit_sizes
    n = qs.n
    out = []
    for x in range(n):
        s = qs.sigma[x].cycle_type() if qs.sigma is not None else None
        g = qs.gamma[x].cycle_type() if qs.gamma is not None else None
        diag = sizes[part.labels[x * n + x]]
        row = tuple(sorted(sizes[part.labels[x * n + y]] for y in range(n)))
        out.append((s, g, diag, row, qs.r(x, x) == (x, x)))
    return out


def are_isomorphic(a: QuadraticSet, b: QuadraticSet) -> Permutation | None:
    """Lexicographically first bijection f with ``(f x f) r_a = r_b (f x f)``,
    or None. Candidates are filtered by per-point invariants and images forced
    by already assigned pairs are propagated."""
    if a.n != b.n:
        return None
    return _find_isomorphism(a, b, _point_invariants(a), _point_invariants(b))


def isomorphism_key(qs: QuadraticSet) -> tuple:
    """Hashable invariant: equal for isomorphic sets."""
    return (qs.n, tuple(sorted(_point_invariants(qs), key=repr)))


def _find_isomorphism(a, b, inv_a, inv_b) -> Permutation | None:
    n = a.n
    if Counter(inv_a) != Counter(inv_b):
        return None
    candidates = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]

    def propagate(f, used, assigned):
        queue = list(assigned)
        done = [x for x in range(n) if f[x] >= 0]
        while queue:
            x = queue.pop()
            for y in list(done):
                for p, q in ((x, y), (y, x)):
                    u, v = a.r(p, q)
                    uu, vv = b.r(f[p], f[q])
                    for src, dst in ((u, uu), (v, vv)):
                        if f[src] < 0:
                            if used[dst] or inv_b[dst] != inv_a[src]:
                                return False
                            f[src] = dst
                            used[dst] = True
                            queue.append(src)
                            done.append(src)
                        elif f[src] != dst:
                            return False
        return True

    def search(f, used):
        try:
            x = f.index(-1)
        except ValueError:
            return list(f)
        for y in candidates[x]:
            if used[y]:
                continue
            g, u = list(f), list(used)
            g[x], u[y] = y, True
            if propagate(g, u, [x]):
                res = search(g, u)
                if res is not None:
                    return res
        return None

    res = search([-1] * n, [False] * n)
    return None if res is None else Permutation(res)


# --- canonical form -------------------------------------------------------


def canonical_form(qs: QuadraticSet, limit: int = CANONICAL_LIMIT) -> tuple[int, ...]:
    """Lexicographically smallest flattened r-table over all relabelings.

    Positions are read in flat order ``(a, b)``, coordinate by coordinate.
    A row or column label not yet assigned is branched over every unused
    element; a value whose element has no label yet gets the next free label,
    which is forced for minimality. Branches whose prefix exceeds the best
    table found so far are cut.

    Two leaves with equal tables differ by an automorphism. Automorphisms
    found this way that fix the current labels pointwise map sibling branches
    onto each other, so only one branch per orbit is explored.
    """
    n = qs.n
    if n > limit:
        raise LimitExceeded(f"canonical form limited to n <= {limit}, got {n}")
    F = qs.first.tolist()
    S = qs.second.tolist()
    total = 2 * n * n
    best: list[int] | None = None
    best_rho: list[int] | None = None
    autos: list[Permutation] = []

    def explored_orbits(rho, seeds):
        gens = [g for g in autos if all(g(e) == e for e in rho)]
        return set().union(*(_generated_orbit(gens, x) for x in seeds))

    def run(rho, pi, pos, prefix):
        nonlocal best, best_rho
        # cmp: 0 while prefix equals the best table so far, -1 once smaller
        cmp = 0
        if best is not None:
            head = best[:pos]
            if prefix > head:
                return
            if prefix < head:
                cmp = -1
        while pos < total:
            cell, coord = divmod(pos, 2)
            a, b = divmod(cell, n)
            if max(a, b) >= len(rho):
                explored: list[int] = []
                covered: set[int] = set()
                for x in range(n):
                    if pi[x] >= 0 or x in covered:
                        continue
                    pi2 = list(pi)
                    pi2[x] = len(rho)
                    run(rho + [x], pi2, pos, prefix)
                    explored.append(x)
                    covered = explored_orbits(rho, explored)
                return
            u = (F if coord == 0 else S)[rho[a]][rho[b]]
            if pi[u] < 0:
                pi = list(pi)
                pi[u] = len(rho)
                rho = rho + [u]
            val = pi[u]
            if cmp == 0 and best is not None:
                if val > best[pos]:
                    return
                if val < best[pos]:
                    cmp = -1
            prefix = prefix + [val]
            pos += 1
        if best is None or cmp < 0:
            best, best_rho = prefix, rho
        else:
            g = [0] * n
            for i in range(n):
                g[best_rho[i]] = rho[i]
            autos.append(Permutation(g))

    run([], [-1] * n, 0, [])
    return tuple(best)


def canonical_set(qs: QuadraticSet, limit: int = CANONICAL_LIMIT) -> QuadraticSet:
    """The relabeling of ``qs`` whose table is the canonical form."""
    flat = np.array(canonical_form(qs, limit), dtype=np.int64).reshape(qs.n * qs.n, 2)
    return QuadraticSet(qs.n, flat[:, 0].reshape(qs.n, qs.n), flat[:, 1].reshape(qs.n, qs.n))
