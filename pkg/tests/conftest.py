import functools
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import strategies as st

from ybsets.classify import enumerate_quandles, enumerate_racks
from ybsets.permutation import Permutation
from ybsets.qset import QuadraticSet, make_from_sigma_gamma, make_sd


@st.composite
def perms(draw, n):
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def sd_sets(draw, min_n=1, max_n=5):
    """SD sets with arbitrary sigma_x, mostly not braided."""
    n = draw(st.integers(min_n, max_n))
    return make_sd([draw(perms(n)) for _ in range(n)])


@st.composite
def squarefree_sd_sets(draw, min_n=1, max_n=5):
    """SD sets with every sigma_x fixing x."""
    n = draw(st.integers(min_n, max_n))
    sigmas = []
    for x in range(n):
        rest = [y for y in range(n) if y != x]
        shuffled = iter(draw(st.permutations(rest)))
        sigmas.append(Permutation(x if y == x else next(shuffled) for y in range(n)))
    return make_sd(sigmas)


@st.composite
def lyubashenko_sets(draw, min_n=1, max_n=6):
    """``r(x, y) = (f(y), g(x))`` with g a power of f: braided, not SD in general."""
    n = draw(st.integers(min_n, max_n))
    f = draw(perms(n))
    g = f ** draw(st.integers(0, 5))
    return make_from_sigma_gamma([f] * n, [g] * n)


@st.composite
def quadratic_sets(draw, min_n=1, max_n=4):
    """Any bijection of X x X, degenerate or not."""
    n = draw(st.integers(min_n, max_n))
    images = draw(st.permutations(range(n * n)))
    arr = np.array(images).reshape(n, n)
    return QuadraticSet(n, arr // n, arr % n)


@functools.cache
def rack_catalogs():
    return {n: enumerate_racks(n) for n in range(1, 5)}


@functools.cache
def quandle_catalogs():
    return {n: enumerate_quandles(n) for n in range(1, 7)}


@functools.cache
def all_sd_assignments(n):
    """Every SD set on n points, braided or not: (n!)^n of them."""
    ps = [Permutation(p) for p in permutations(range(n))]
    return [make_sd(list(c)) for c in product(ps, repeat=n)]


@pytest.fixture(scope="session")
def racks():
    return rack_catalogs()


@pytest.fixture(scope="session")
def quandles():
    return quandle_catalogs()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
