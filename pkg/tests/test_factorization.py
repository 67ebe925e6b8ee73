from collections import Counter
from itertools import product as cartesian

import pytest

from toricech.lattice import (
    count_factorizations,
    elliptic,
    enumerate_factorizations,
    format_product,
    from_counts,
    parse_product,
    product_of,
)


def _canonical(factors):
    return tuple(sorted(format_product(factor) for factor in factors))


def _brute_force(generator, n):
    # every assignment of orbit units to n labelled boxes, empty boxes dropped
    units = []
    for edge in generator.edges:
        units += [(edge.direction, False)] * edge.epart
        units += [(edge.direction, True)] * edge.hcount
    found = set()
    for boxes in cartesian(range(n), repeat=len(units)):
        counts = [{} for _ in range(n)]
        for (direction, is_h), box in zip(units, boxes):
            m, l = counts[box].get(direction, (0, 0))
            counts[box][direction] = (m + 1, l + is_h)
        if any(not box for box in counts):
            continue
        found.add(_canonical(from_counts(box, generator.extended) for box in counts))
    return found


def test_two_equal_factors():
    assert list(enumerate_factorizations(elliptic(1, 1, 2), 2)) == [(elliptic(1, 1), elliptic(1, 1))]


def test_three_way_split_of_ninth_power():
    splits = list(enumerate_factorizations(elliptic(1, 1, 9), 3))
    assert (elliptic(1, 1, 3),) * 3 in splits
    # partitions of 9 into 3 parts
    assert len(splits) == 7


def test_separated_vertical_factors():
    generator = parse_product('e(1,0)^3 e(0,1)^2')
    splits = {_canonical(factors) for factors in enumerate_factorizations(generator, 2)}
    assert ('e(0,1)', 'e(1,0)^3 e(0,1)') in splits
    assert ('e(1,0) e(0,1)', 'e(1,0)^2 e(0,1)') in splits
    assert ('e(0,1)^2', 'e(1,0)^3') in splits


@pytest.mark.parametrize('text', [
    'e(1,1)^4',
    'e(1,0)^2 e(0,1)^2',
    'e(1,0) h(1,1) e(0,1)^2',
    'e(1,1) h(1,1) e(1,2)',
    'e(1,0)^2 e(1,1) h(2,1) e(0,1)^2',
    'e(2,1)^3 e(1,2)^3',
])
def test_matches_brute_force(text):
    generator = parse_product(text)
    assert generator.mult <= 6
    for n in range(1, generator.mult + 1):
        stream = list(enumerate_factorizations(generator, n))
        for factors in stream:
            assert len(factors) == n
            assert all(not factor.is_one for factor in factors)
            assert product_of(factors) == generator
        canonical = Counter(_canonical(factors) for factors in stream)
        assert all(count == 1 for count in canonical.values())
        assert set(canonical) == _brute_force(generator, n)


def test_out_of_range_counts():
    generator = elliptic(1, 1, 3)
    assert list(enumerate_factorizations(generator, 0)) == []
    assert list(enumerate_factorizations(generator, 4)) == []
    assert count_factorizations(generator, 3) == 1
    assert count_factorizations(elliptic(1, 1, 4), 2) == 2


def test_factor_missing_a_direction():
    splits = {_canonical(factors) for factors in enumerate_factorizations(parse_product('e(1,0)^2 e(0,1)'), 2)}
    assert splits == {('e(0,1)', 'e(1,0)^2'), ('e(1,0)', 'e(1,0) e(0,1)')}


def test_factors_come_in_canonical_order():
    generator = parse_product('e(1,0)^2 e(1,1) e(0,1)^2')
    for n in range(2, generator.mult + 1):
        for factors in enumerate_factorizations(generator, n):
            directions = sorted(generator.edge_map)
            counts = [tuple(factor.edge_map.get(d, (0, 0))[0] for d in directions) for factor in factors]
            assert counts == sorted(counts, reverse=True)


def test_single_factor():
    generator = parse_product('e(1,0) h(1,1) e(0,1)')
    assert list(enumerate_factorizations(generator, 1)) == [(generator,)]
