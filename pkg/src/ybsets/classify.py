"""Isomorphism-free census of racks and quandles on small sets, and the
bound and minimality checks run against it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from math import ceil

from sympy import isprime

from .constructions import dihedral_quandle, three_element, trivial
from .errors import LimitExceeded
from .orbits import is_2_cancellative, orbit_partition
from .permutation import Permutation
from .qset import QuadraticSet, make_sd
from .transforms import _find_isomorphism, _point_invariants, canonical_form, canonical_set

QUANDLE_LIMIT = 6
RACK_LIMIT = 4
FAMILIES = ("quandle", "rack")


@dataclass(frozen=True)
class CatalogEntry:
    canonical_form: tuple[int, ...]
    representative: QuadraticSet
    orbit_count: int
    two_cancellative: bool
    orbit_sizes: tuple[int, ...]

    def record(self, n: int, family: str) -> dict:
        return {
            "n": n,
            "family": family,
            "canonical_form": list(self.canonical_form),
            "orbit_count": self.orbit_count,
            "two_cancellative": self.two_cancellative,
            "orbit_sizes": list(self.orbit_sizes),
        }


@dataclass(frozen=True)
class SolutionCatalog:
    n: int
    family: str
    entries: tuple[CatalogEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def records(self) -> list[dict]:
        return [e.record(self.n, self.family) for e in self.entries]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(rec, separators=(",", ":")) + "\n" for rec in self.records())


def _first_candidates(n: int, quandle: bool) -> list[tuple[int, ...]]:
    """One sigma_0 per orbit of conjugation by the stabiliser of 0.

    Relabelings fixing 0 conjugate sigma_0 and nothing else about the label
    0, so every isomorphism class has a member whose sigma_0 is listed.
    """
    stab = [p for p in permutations(range(n)) if p[0] == 0]
    seen: set = set()
    reps = []
    for s in permutations(range(n)):
        if quandle and s[0] != 0:
            continue
        if s in seen:
            continue
        orbit = set()
        for p in stab:
            conj = [0] * n
            for i in range(n):
                conj[p[i]] = p[s[i]]
            orbit.add(tuple(conj))
        seen |= orbit
        reps.append(s)
    return reps


def _propagate(assign: list, new: int, n: int) -> bool:
    """Impose ``sigma_{sigma_p(q)} = sigma_p sigma_q sigma_p^-1`` on every
    assigned pair, filling in forced values. False on a contradiction."""
    queue = [new]
    while queue:
        x = queue.pop()
        for y in range(n):
            if assign[y] is None:
                continue
            for p, q in ((x, y), (y, x)):
                sp, sq = assign[p], assign[q]
                if sp is None or sq is None:
                    continue
                z = sp[q]
                req = [0] * n
                for i in range(n):
                    req[sp[i]] = sp[sq[i]]
                req = tuple(req)
                if assign[z] is None:
                    assign[z] = req
                    queue.append(z)
                elif assign[z] != req:
                    return False
    return True


def iter_labeled_solutions(n: int, family: str):
    """Labeled SD braided sets found by the pruned search.

    Every isomorphism class of the family appears at least once; classes
    generally appear several times.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    quandle = family == "quandle"
    perms = list(permutations(range(n)))
    per_index = [[p for p in perms if not quandle or p[x] == x] for x in range(n)]
    per_index[0] = _first_candidates(n, quandle)

    def dfs(assign):
        try:
            x = assign.index(None)
        except ValueError:
            yield list(assign)
            return
        for cand in per_index[x]:
            nxt = list(assign)
            nxt[x] = cand
            if _propagate(nxt, x, n):
                yield from dfs(nxt)

    yield from dfs([None] * n)


def _catalog(n: int, family: str, limit: int) -> SolutionCatalog:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > limit:
        raise LimitExceeded(f"{family} census limited to n <= {limit}, got {n}")
    # bucket by a cheap invariant, test isomorphism inside a bucket, and
    # canonicalise only the first member of each new class
    buckets: dict[tuple, list] = {}
    found: dict[tuple[int, ...], QuadraticSet] = {}
    for sigmas in iter_labeled_solutions(n, family):
        qs = make_sd([Permutation(s) for s in sigmas])
        inv = _point_invariants(qs)
        bucket = buckets.setdefault(tuple(sorted(inv, key=repr)), [])
        if any(_find_isomorphism(qs, rep, inv, rep_inv) is not None for rep, rep_inv in bucket):
            continue
        bucket.append((qs, inv))
        key = canonical_form(qs)
        if key in found:
            raise AssertionError("non-isomorphic sets share a canonical form")
        found[key] = canonical_set(qs)
    entries = []
    for key in sorted(found):
        rep = found[key]
        part = orbit_partition(rep, 2)
        entries.append(CatalogEntry(key, rep, part.orbit_count, is_2_cancellative(rep),
                                    part.size_multiset()))
    return SolutionCatalog(n, family, tuple(entries))


def enumerate_quandles(n: int, limit: int = QUANDLE_LIMIT) -> SolutionCatalog:
    """All square-free SD braided sets on n points up to isomorphism."""
    return _catalog(n, "quandle", limit)


def enumerate_racks(n: int, limit: int = RACK_LIMIT) -> SolutionCatalog:
    """All non-degenerate SD braided sets on n points up to isomorphism."""
    return _catalog(n, "rack", limit)


def lower_bound(n: int, family: str) -> int:
    return 2 * n - 1 if family == "quandle" else ceil(n / 2)


def _single_cycle(qs: QuadraticSet) -> bool:
    s = qs.sigma
    return len(set(s)) == 1 and s[0].cycle_type() == (qs.n,)


@dataclass
class BoundsReport:
    n: int
    family: str
    bound: int
    min_orbit_count: int | None
    violations: list = field(default_factory=list)
    equality_mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.equality_mismatches


def verify_bounds(catalog: SolutionCatalog) -> BoundsReport:
    """Every entry must meet the family's lower bound on ``dim A_2``.

    For racks the bound is attained exactly by the entries whose sigma_x are
    all one and the same n-cycle; any entry breaking that equivalence is
    listed in ``equality_mismatches``.
    """
    bound = lower_bound(catalog.n, catalog.family)
    report = BoundsReport(catalog.n, catalog.family, bound,
                          min((e.orbit_count for e in catalog), default=None))
    for e in catalog:
        if e.orbit_count < bound:
            report.violations.append(e.canonical_form)
        if catalog.family == "rack" and (e.orbit_count == bound) != _single_cycle(e.representative):
            report.equality_mismatches.append(e.canonical_form)
    return report


def minimal_expected(n: int) -> set[tuple[int, ...]]:
    """Canonical forms of the quandles on n points with ``2n - 1`` orbits in X^2,
    as classified: odd prime dihedral, trivial on 2 points, the 3-point set."""
    out = set()
    if n == 1:
        out.add(canonical_form(trivial(1)))
    if n == 2:
        out.add(canonical_form(trivial(2)))
    if n == 3:
        out.add(canonical_form(three_element()))
    if n > 2 and isprime(n):
        out.add(canonical_form(dihedral_quandle(n)))
    return out


@dataclass
class MinimalityReport:
    n: int
    survivors: list
    expected: list
    missing: list
    unexpected: list

    @property
    def passed(self) -> bool:
        return not self.missing and not self.unexpected


def verify_minimality_classification(n: int, catalog: SolutionCatalog | None = None,
                                     limit: int = QUANDLE_LIMIT) -> MinimalityReport:
    catalog = enumerate_quandles(n, limit) if catalog is None else catalog
    survivors = {e.canonical_form for e in catalog if e.orbit_count == 2 * n - 1}
    expected = minimal_expected(n)
    return MinimalityReport(n, sorted(survivors), sorted(expected),
                            sorted(expected - survivors), sorted(survivors - expected))
