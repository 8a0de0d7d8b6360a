"""Named quadratic sets.

All sets live on ``{0, ..., n-1}``. Where the classical description uses
labels ``1..n``, element ``k`` here is label ``k + 1``.
"""

from __future__ import annotations

from .errors import BadIndex
from .permutation import Permutation
from .qset import QuadraticSet, is_braided, is_sd, is_square_free, make_from_sigma_gamma, make_sd


def _need(n: int, lo: int) -> None:
    if n < lo:
        raise BadIndex(f"n must be at least {lo}, got {n}")


def trivial(n: int) -> QuadraticSet:
    """The flip ``r(x, y) = (y, x)``."""
    _need(n, 1)
    return make_sd([Permutation.identity(n)] * n)


def dihedral_quandle(n: int) -> QuadraticSet:
    """``r(i, j) = (2i - j mod n, i)``."""
    _need(n, 2)
    return make_sd([Permutation((2 * i - j) % n for j in range(n)) for i in range(n)])


def cyclic_perm_example(n: int) -> QuadraticSet:
    """SD set whose r is a single cycle on ``X^2``, so ``dim A_m = 1`` for m > 1.

    ``sigma_0 = sigma_{n-1} = (0 1 ... n-1)`` and ``sigma_x = (x x+1 ... n-1)``
    for ``0 < x < n-1``. Non-degenerate but not braided once n >= 3.
    """
    _need(n, 2)
    full = Permutation.from_cycles(n, [tuple(range(n))])
    sigmas = [full] * n
    for x in range(1, n - 1):
        sigmas[x] = Permutation.from_cycles(n, [tuple(range(x, n))])
    return make_sd(sigmas)


def squarefree_example(n: int) -> QuadraticSet:
    """Square-free SD set with ``dim A_m = n + 1`` for all m > 1.

    ``sigma_{n-2} = id``, ``sigma_{n-1} = (0 1 ... n-2)`` and
    ``sigma_i = (i+1 ... n-1)`` for ``i < n-2``.
    """
    _need(n, 2)
    sigmas = [Permutation.from_cycles(n, [tuple(range(i + 1, n))]) for i in range(n - 2)]
    sigmas.append(Permutation.identity(n))
    sigmas.append(Permutation.from_cycles(n, [tuple(range(n - 1))]) if n > 2
                  else Permutation.identity(n))
    return make_sd(sigmas)


def shift_solution(n: int) -> QuadraticSet:
    """``r(a, b) = (b + 1, a)`` on Z/n."""
    _need(n, 2)
    step = Permutation((j + 1) % n for j in range(n))
    return make_sd([step] * n)


def skew_shift(n: int) -> QuadraticSet:
    """``r(x, y) = (y - 1, x + 2)`` on Z/n; its derived solution is the shift."""
    _need(n, 2)
    down = Permutation((j - 1) % n for j in range(n))
    up2 = Permutation((j + 2) % n for j in range(n))
    return make_from_sigma_gamma([down] * n, [up2] * n)


def three_element() -> QuadraticSet:
    """``sigma_0 = sigma_1 = id``, ``sigma_2 = (0 1)``."""
    e = Permutation.identity(3)
    return make_sd([e, e, Permutation([1, 0, 2])])


def _cycle_extension_candidates(n: int) -> list[list[Permutation]]:
    """SD sigma-families ``sigma_x = s^(x-2) sigma_2`` (in 1-based labels).

    ``s`` is the permutation forced on ``sigma_2 sigma_1`` by the prescribed
    orbit; ``sigma_2`` fixes label 2 and inverts ``s`` by conjugation. For odd
    n this pins ``sigma_2`` down; for even ``n = 2t`` the even labels are fixed
    and the odd labels admit ``t`` rotations ``tau_j``.
    """
    # work in 1-based labels, convert at the end
    if n % 2:
        t = (n - 1) // 2
        c = [2 * (i + 1) for i in range(t)] + [2 * i + 1 for i in range(t + 1)]
        s = {c[i]: c[(i + 1) % n] for i in range(n)}
        sigma2s = [{c[i]: c[-i % n] for i in range(n)}]
    else:
        t = n // 2
        evens = [2 * (i + 1) for i in range(t)]
        odds = [2 * i + 1 for i in range(t)]
        s = {**{evens[i]: evens[(i + 1) % t] for i in range(t)},
             **{odds[i]: odds[(i + 1) % t] for i in range(t)}}
        even_part = {evens[i]: evens[-i % t] for i in range(t)}
        sigma2s = [{**even_part, **{odds[i]: odds[(j - 1 - i) % t] for i in range(t)}}
                   for j in range(1, t + 1)]

    def to_perm(mapping):
        return Permutation(mapping[i + 1] - 1 for i in range(n))

    s_perm = to_perm(s)
    families = []
    for s2 in sigma2s:
        s2_perm = to_perm(s2)
        families.append([s_perm ** (x - 2) * s2_perm for x in range(1, n + 1)])
    return families


def _has_prescribed_orbit(qs: QuadraticSet) -> bool:
    """r cycles (2,1) -> (3,2) -> ... -> (n,n-1) -> (1,n) -> (2,1), 1-based."""
    n = qs.n
    chain = [((i + 1) % n, i) for i in range(n)]
    return all(qs.r(*chain[i]) == chain[(i + 1) % n] for i in range(n))


def cycle_extension(n: int) -> list[QuadraticSet]:
    """All 2-cancellative square-free SD braided sets with involutive ``sigma_x``
    extending the length-n orbit ``(2,1) -> (3,2) -> ... -> (1,n) -> (2,1)``.

    Candidates are built from the forced shape of ``sigma_2`` and kept only if
    they pass every required predicate.
    """
    from .orbits import is_2_cancellative, orbit_partition

    _need(n, 2)
    out = []
    for family in _cycle_extension_candidates(n):
        if not all((p * p).is_identity() for p in family):
            continue
        qs = make_sd(family)
        if not (is_sd(qs) and is_square_free(qs) and is_braided(qs)):
            continue
        if not (_has_prescribed_orbit(qs) and is_2_cancellative(qs)):
            continue
        if n not in orbit_partition(qs, 2).orbit_sizes:
            continue
        out.append(qs)
    return out


NAMED = {
    "trivial": trivial,
    "dihedral": dihedral_quandle,
    "cyclic-perm": cyclic_perm_example,
    "squarefree-example": squarefree_example,
    "shift": shift_solution,
    "skew-shift": skew_shift,
    "three-element": lambda n=3: three_element(),
    "cycle-ext": cycle_extension,
}

