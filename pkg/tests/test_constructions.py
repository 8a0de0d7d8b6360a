import pytest

from ybsets.constructions import (NAMED, _cycle_extension_candidates, _has_prescribed_orbit,
                                  cycle_extension, cyclic_perm_example, dihedral_quandle,
                                  shift_solution, skew_shift, squarefree_example, three_element,
                                  trivial)
from ybsets.errors import BadIndex
from ybsets.orbits import dim_A, is_2_cancellative, orbit_partition, satisfies_maximality
from ybsets.permutation import Permutation
from ybsets.qset import (is_braided, is_involutive, is_non_degenerate, is_sd, is_square_free,
                         make_sd)
from ybsets.transforms import are_isomorphic, derived_solution

# (non-degenerate, braided, SD, square-free, involutive) for n = 3..6
PROFILES = {
    "trivial": (True, True, True, True, True),
    "dihedral": (True, True, True, True, False),
    "cyclic-perm": (True, False, True, False, False),
    "squarefree-example": (True, False, True, True, False),
    "shift": (True, True, True, False, False),
    "skew-shift": (True, True, False, False, False),
}


def _profile(qs):
    return (is_non_degenerate(qs), is_braided(qs), is_sd(qs), is_square_free(qs),
            is_involutive(qs))


@pytest.mark.parametrize("name", sorted(PROFILES))
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_predicate_profiles(name, n):
    assert _profile(NAMED[name](n)) == PROFILES[name]


def test_named_covers_cli_names():
    assert sorted(NAMED) == sorted(["trivial", "dihedral", "cyclic-perm", "squarefree-example",
                                    "shift", "skew-shift", "three-element", "cycle-ext"])


def test_flip():
    assert trivial(1).r(0, 0) == (0, 0)
    assert dim_A(trivial(2), 2) == 3
    assert satisfies_maximality(trivial(4))


def test_dihedral_tables():
    d5 = dihedral_quandle(5)
    assert [list(p.images) for p in d5.sigma][:2] == [[0, 4, 3, 2, 1], [2, 1, 0, 4, 3]]
    assert dihedral_quandle(2) == trivial(2)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_prime_dihedral_orbit_structure(p):
    sizes = orbit_partition(dihedral_quandle(p), 2).size_multiset()
    assert sizes == (1,) * p + (p,) * (p - 1)


@pytest.mark.parametrize("n, dim", [(4, 8), (6, 15), (8, 20), (9, 21), (10, 27)])
def test_composite_dihedral_dims(n, dim):
    # tabulated by orbit enumeration; above 2n - 1 in every case
    assert dim_A(dihedral_quandle(n), 2) == dim


def test_cyclic_perm_small():
    qs = cyclic_perm_example(2)
    assert qs.sigma[0] == qs.sigma[1] == Permutation([1, 0])
    assert dim_A(qs, 2) == 1
    assert cyclic_perm_example(5).sigma[2] == Permutation.from_cycles(5, [(2, 3, 4)])


def test_squarefree_example_tables():
    qs = squarefree_example(4)
    assert qs.sigma[2].is_identity()
    assert qs.sigma[3] == Permutation.from_cycles(4, [(0, 1, 2)])
    assert qs.sigma[0] == Permutation.from_cycles(4, [(1, 2, 3)])
    assert dim_A(squarefree_example(5), 3) == 6


@pytest.mark.parametrize("n, dim2", [(5, 3), (6, 3), (4, 2)])
def test_shift_family(n, dim2):
    assert dim_A(shift_solution(n), 2) == dim2
    assert dim_A(skew_shift(n), 2) == dim2
    assert derived_solution(skew_shift(n)) == shift_solution(n)


def test_three_element():
    qs = three_element()
    assert _profile(qs) == (True, True, True, True, False)
    assert orbit_partition(qs, 2).size_multiset() == (1, 1, 1, 2, 4)


@pytest.mark.parametrize("n", range(2, 13))
def test_cycle_extension_outputs(n):
    out = cycle_extension(n)
    assert out
    for qs in out:
        assert is_braided(qs) and is_sd(qs) and is_square_free(qs)
        assert is_2_cancellative(qs) and _has_prescribed_orbit(qs)
        assert all((s * s).is_identity() for s in qs.sigma)
        assert n in orbit_partition(qs, 2).orbit_sizes


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_cycle_extension_odd_is_dihedral(n):
    (qs,) = cycle_extension(n)
    assert are_isomorphic(qs, dihedral_quandle(n)) is not None


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_even_candidates(n):
    t = n // 2
    cands = _cycle_extension_candidates(n)
    assert len(cands) == t
    braided = [j + 1 for j, fam in enumerate(cands) if is_braided(make_sd(fam))]
    # braided exactly when 2j - 4 = 0 mod t
    assert braided == [j for j in range(1, t + 1) if (2 * j - 4) % t == 0]


@pytest.mark.parametrize("n", [4, 8, 12])
def test_second_braided_candidate_is_not_square_free(n):
    # sigma_x(x) = x + 2j - 4 mod 2t on odd x, so j = 2 + t/2 (read mod t)
    # moves every odd label
    t = n // 2
    j = (2 + t // 2 - 1) % t + 1
    qs = make_sd(_cycle_extension_candidates(n)[j - 1])
    assert is_braided(qs)
    assert not is_square_free(qs)
    assert not _has_prescribed_orbit(qs)


@pytest.mark.parametrize("name, n", [("trivial", 0), ("dihedral", 1), ("shift", 1), ("cycle-ext", 1)])
def test_size_checks(name, n):
    with pytest.raises(BadIndex):
        NAMED[name](n)
