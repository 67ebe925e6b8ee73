from fractions import Fraction

import pytest

from toricech.capacities import (
    PathSearchBudget,
    capacities,
    capacity,
    capacity_obstruction,
    capacity_oracle_ellipsoid,
    capacity_oracle_polydisk,
    find_minimal_generator,
    is_minimal,
    is_minimal_polydisk,
    minimal_ellipsoid_family,
    upper_hull,
)
from toricech.core.errors import BudgetExceeded
from toricech.domains import Ball, Ellipsoid, Polydisk, Polygon, action
from toricech.lattice import ONE, elliptic, enumerate_generators, parse_product


F = Fraction

ORACLE_PARAMETERS = [(1, 1), (1, 2), (3, 2), (F(5, 2), 1)]


def test_ellipsoid_oracle():
    assert capacity_oracle_ellipsoid(1, 1, 3) == 2
    assert [capacity_oracle_ellipsoid(1, 2, k) for k in range(9)] == [0, 1, 2, 2, 3, 3, 4, 4, 4]
    assert capacity_oracle_ellipsoid(F(7, 3), F(5, 2), 0) == 0


def test_polydisk_oracle():
    assert capacity_oracle_polydisk(F(7, 3), F(5, 2), 1) == F(7, 3)
    assert capacity_oracle_polydisk(3, 2, 1) == 2
    assert capacity_oracle_polydisk(3, 2, 0) == 0
    assert [capacity_oracle_polydisk(2, 1, k) for k in range(6)] == [0, 1, 2, 3, 4, 4]


def test_oracles_reject_bad_input():
    with pytest.raises(ValueError):
        capacity_oracle_ellipsoid(0, 1, 2)
    with pytest.raises(ValueError):
        capacity_oracle_polydisk(1, 1, -1)


def test_capacity_small_values():
    assert capacity(Polydisk(2, 1), 0) == 0
    assert capacities(Ball(1), 5) == [0, 1, 1, 2, 2, 2]
    assert capacity(Polydisk(2, 1), 1) == 1
    with pytest.raises(ValueError):
        capacity(Ball(1), -1)


@pytest.mark.parametrize('a, b', ORACLE_PARAMETERS)
def test_capacity_matches_ellipsoid_oracle(a, b):
    for k in range(16):
        assert capacity(Ellipsoid(a, b), k, budget=None) == capacity_oracle_ellipsoid(a, b, k)


@pytest.mark.parametrize('a, b', ORACLE_PARAMETERS)
def test_capacity_matches_polydisk_oracle(a, b):
    for k in range(16):
        assert capacity(Polydisk(a, b), k, budget=None) == capacity_oracle_polydisk(a, b, k)


def test_capacity_of_polygon():
    # the polygon with vertices (0,1), (1,0) is the ball B(1)
    triangle = Polygon(((0, 1), (1, 0)))
    assert capacities(triangle, 9) == capacities(Ball(1), 9)


def test_capacity_monotone_and_homogeneous():
    small, large = Polydisk(2, 1), Ball(3)
    values = capacities(small, 10, budget=None)
    assert values == sorted(values)
    for k in range(11):
        assert values[k] <= capacity(large, k, budget=None)
        assert capacity(Polydisk(3, F(3, 2)), k, budget=None) == F(3, 2) * values[k]


def test_capacity_budget():
    with pytest.raises(BudgetExceeded) as info:
        capacity(Ball(1), 12, budget=3)
    assert info.value.budget == 3


def test_path_search_budget_caps():
    caps = PathSearchBudget.for_domain(Polydisk(2, 1), F(5))
    assert (caps.x_cap, caps.y_cap) == (5, 2)
    assert all(d.a * 1 + d.b * 2 <= 5 for d in caps.directions())


@pytest.mark.parametrize('d', [1, 2, 3])
def test_minimal_generator_of_ball(d):
    k = d * (d + 3) // 2
    minimal = find_minimal_generator(Ball(F(7, 3)), k, budget=None)
    assert minimal == elliptic(1, 1, d)
    assert action(Ball(F(7, 3)), minimal) == capacity(Ball(F(7, 3)), k, budget=None)
    assert minimal.index == 2 * k


@pytest.mark.parametrize('d', [1, 2])
def test_minimal_generator_of_ellipsoid(d):
    k = (d + 1) ** 2 - 1
    assert find_minimal_generator(Ellipsoid(2, 1), k, budget=None) == elliptic(2, 1, d)
    k = (d + 1) * (3 * d + 2) // 2 - 1
    assert find_minimal_generator(Ellipsoid(F(9, 2), F(3, 2)), k, budget=None) == elliptic(3, 1, d)


def test_minimal_generator_tie():
    assert find_minimal_generator(Polydisk(1, 1), 1) is None
    assert find_minimal_generator(Ball(1), 0) == ONE


def test_upper_hull():
    assert upper_hull([(0, 2), (1, 1), (2, 1), (3, 0), (2, 0)]) == [(0, 2), (2, 1), (3, 0)]
    assert upper_hull([(0, 0), (1, 0), (2, 0)]) == [(0, 0), (2, 0)]


@pytest.mark.parametrize('d', range(1, 6))
def test_ellipsoid_family(d):
    assert minimal_ellipsoid_family(F(5, 2), F(5, 2), (d, 0)) == elliptic(1, 1, d)
    assert minimal_ellipsoid_family(2, 1, (2 * d, 0)) == elliptic(2, 1, d)
    assert minimal_ellipsoid_family(3, 1, (3 * d, 0)) == elliptic(3, 1, d)
    assert minimal_ellipsoid_family(1, 1, (d, d)) == elliptic(1, 1, 2 * d)


def test_ellipsoid_family_degenerate_point():
    assert minimal_ellipsoid_family(1, 1, (0, 0)) == ONE


def test_ellipsoid_family_vertical_end():
    # 2x + y <= 3 keeps two points in its last column
    assert minimal_ellipsoid_family(1, 2, (1, 1)) == parse_product('e(1,2) e(0,1)')
    assert minimal_ellipsoid_family(1, 2, (0, 1)) == elliptic(0, 1)


def test_ellipsoid_family_hull():
    assert minimal_ellipsoid_family(3, 2, (3, 0)) == elliptic(3, 2)
    assert minimal_ellipsoid_family(2, 1, (1, 1)) == parse_product('e(1,0) e(2,1)')


@pytest.mark.parametrize('d', range(1, 5))
def test_ellipsoid_family_is_the_minimizer(d):
    domain = Ball(F(11, 4))
    minimal = find_minimal_generator(domain, d * (d + 3) // 2, budget=None)
    assert minimal_ellipsoid_family(domain.a, domain.b, (d, 0)) == minimal


def test_is_minimal_polydisk():
    for b in (1, F(3, 2), 2, 3):
        d = 4 * int(-(-b // 1)) - 2
        assert is_minimal_polydisk(d, 2, b, 1)
    assert is_minimal_polydisk(0, 0, F(7, 3), 1)
    assert not is_minimal_polydisk(1, 0, 1, 1)
    assert is_minimal_polydisk(2, 2, F(199, 100), F(199, 100))
    assert not is_minimal_polydisk(2, 1, 1, 1)


def test_is_minimal():
    assert is_minimal(Ball(1), elliptic(1, 1, 2))
    assert not is_minimal(Ball(1), elliptic(1, 0))
    assert not is_minimal(Ball(1), parse_product('h(1,1)'))
    assert is_minimal(Polydisk(1, 1), parse_product('e(1,0)^2 e(0,1)^2'))
    assert not is_minimal(Polydisk(1, 1), elliptic(1, 1))
    assert is_minimal(Polygon(((0, 1), (1, 0))), elliptic(1, 1))
    assert is_minimal(Ball(3), ONE)


def test_minimal_generators_beat_every_generator_of_their_index():
    domain = Ellipsoid(F(5, 2), 1)
    for k in range(1, 7):
        minimal = find_minimal_generator(domain, k)
        if minimal is None:
            continue
        value = action(domain, minimal)
        for other in enumerate_generators(index=2 * k):
            if other != minimal:
                assert action(domain, other) > value


def test_capacity_obstruction():
    assert capacity_obstruction(Ball(2), Ball(1), 3) == 1
    assert capacity_obstruction(Ball(1), Ball(2), 5) is None
    assert capacity_obstruction(Polydisk(1, 1), Polydisk(1, 1), 5) is None
