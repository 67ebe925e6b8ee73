from fractions import Fraction

import pytest

from toricech.core.errors import InvalidDomain, ParseError
from toricech.domains import (
    Ball,
    Ellipsoid,
    Polydisk,
    Polygon,
    action,
    area,
    contains,
    edge_costs,
    format_domain,
    inclusion_scale,
    inscribed_rectangle,
    parse_domain,
    scale,
    support,
)
from toricech.lattice import Direction, elliptic, parse_product, product, sample_generators
from toricech.utils import enable_reproducibility


F = Fraction

TRAPEZOID = Polygon(((0, 2), (1, 2), (3, 0)))


def test_support_polydisk():
    domain = Polydisk(3, 2)
    assert support(domain, 1, 1) == 5
    assert support(domain, 2, 3) == 12
    assert support(domain, 1, 0) == 3


def test_support_ball_and_polygon():
    assert support(Ball(F(7, 3)), 1, 1) == F(7, 3)
    assert support(Ellipsoid(4, 2), 1, 1) == 4
    assert support(TRAPEZOID, 1, 0) == 3
    assert support(TRAPEZOID, 1, 1) == 3
    assert support(TRAPEZOID, 0, 1) == 2


def test_support_rejects_zero_direction():
    with pytest.raises(ValueError):
        support(Polydisk(1, 1), 0, 0)


def test_polydisk_action_formula():
    rng = enable_reproducibility(3)
    domain = Polydisk(F(5, 2), F(4, 3))
    for generator in sample_generators(rng, 200):
        assert action(domain, generator) == domain.b * generator.x + domain.a * generator.y


@pytest.mark.parametrize('d', range(1, 6))
def test_ball_action(d):
    assert action(Ball(F(29, 10)), elliptic(1, 1, d)) == d * F(29, 10)
    assert action(Polydisk(F(11, 5), 1), elliptic(1, 0, d * (d + 3) // 2)) == d * (d + 3) // 2


def test_action_of_one_is_zero():
    assert action(Ball(3), parse_product('1')) == 0


def test_edge_costs():
    costs = edge_costs(Ellipsoid(2, 1), [Direction(1, 0), Direction(0, 1), Direction(2, 1)])
    assert costs == {Direction(1, 0): 1, Direction(0, 1): 2, Direction(2, 1): 2}


def test_action_properties():
    rng = enable_reproducibility(5)
    domains = [Polydisk(2, 1), Ellipsoid(F(7, 2), 2), TRAPEZOID]
    samples = sample_generators(rng, 50, accept=lambda g: g.is_all_e)
    for domain in domains:
        for first, second in zip(samples, samples[1:]):
            assert action(scale(domain, F(3, 2)), first) == F(3, 2) * action(domain, first)
            assert action(domain, product(first, second)) == action(domain, first) + action(domain, second)
            width, height = inscribed_rectangle(domain)
            assert action(domain, first) >= height * first.x + width * first.y


def test_action_monotone_under_inclusion():
    rng = enable_reproducibility(9)
    inner, outer = Polydisk(2, 1), Ball(3)
    assert contains(outer, inner)
    for generator in sample_generators(rng, 100):
        assert action(inner, generator) <= action(outer, generator)


def test_contains():
    assert contains(Polydisk(2, 2), Polydisk(1, 1))
    assert not contains(Polydisk(1, 1), Polydisk(2, 2))
    assert contains(Ball(3), Polydisk(2, 1))
    assert not contains(Ball(F(299, 100)), Polydisk(2, 1))
    assert contains(TRAPEZOID, Polydisk(1, 2))
    assert not contains(TRAPEZOID, Polydisk(2, 2))
    assert contains(Polydisk(3, 2), TRAPEZOID)
    assert contains(Ellipsoid(F(402, 100), F(201, 100)), Polydisk(2, 1))


def test_area():
    assert area(Ellipsoid(3, 2)) == 3
    assert area(Polydisk(F(11, 5), 1)) == F(11, 5)
    assert area(TRAPEZOID) == 4


def test_scale():
    assert scale(Ellipsoid(2, 1), F(3, 2)) == Ellipsoid(3, F(3, 2))
    assert scale(Polydisk(1, 1), 2) == Polydisk(2, 2)
    assert scale(TRAPEZOID, 2).boundary() == ((0, 4), (2, 4), (6, 0))
    with pytest.raises(InvalidDomain):
        scale(Ball(1), 0)


def test_inscribed_rectangle():
    assert inscribed_rectangle(Polydisk(3, 2)) == (3, 2)
    assert inscribed_rectangle(Ellipsoid(4, 2)) == (2, 1)
    assert inscribed_rectangle(TRAPEZOID) == (F(3, 2), F(3, 2))


def test_inclusion_scale():
    assert inclusion_scale(Polydisk(2, 1), Ball(1)) == 3
    assert inclusion_scale(Polydisk(2, 1), Polydisk(1, 1)) == 2
    assert inclusion_scale(Polydisk(2, 1), Ellipsoid(2, 1)) == 2


@pytest.mark.parametrize('build', [
    lambda: Polydisk(0, 1),
    lambda: Ellipsoid(1, F(-1, 2)),
    lambda: Polygon(((1, 2), (3, 0))),
    lambda: Polygon(((0, 2), (3, 1))),
    lambda: Polygon(((0, 1), (1, 2), (2, 0))),
    lambda: Polygon(((0, 2), (1, 1), (2, 1), (3, 0))),
    lambda: Polygon(((0, 2), (1, 2), (1, 1), (2, 0))),
    lambda: Polygon(((0, 2),)),
])
def test_invalid_domains(build):
    with pytest.raises(InvalidDomain):
        build()


def test_polygon_may_end_vertically():
    domain = Polygon(((0, 2), (1, 2), (2, 1), (2, 0)))
    assert domain.width == 2
    assert domain.height == 2
    assert area(domain) == F(7, 2)


@pytest.mark.parametrize('text, expected', [
    ('P(2,1)', Polydisk(2, 1)),
    ('B(299/100)', Ellipsoid(F(299, 100), F(299, 100))),
    ('E(2.5, 1)', Ellipsoid(F(5, 2), 1)),
    ('poly[(0,2),(1,2),(3,0)]', TRAPEZOID),
])
def test_parse_domain(text, expected):
    assert parse_domain(text) == expected


@pytest.mark.parametrize('text', ['Q(1,2)', 'P(1)', 'B(1,2)', 'poly[]', 'poly[(0,1) x (1,0)]', 'P(a,1)'])
def test_parse_domain_rejects(text):
    with pytest.raises(ParseError):
        parse_domain(text)


def test_parse_domain_invalid_values():
    with pytest.raises(InvalidDomain):
        parse_domain('P(0,1)')


@pytest.mark.parametrize('text', ['P(2,1)', 'E(5/2,1)', 'B(3)', 'poly[(0,2),(1,2),(3,0)]'])
def test_format_domain(text):
    assert format_domain(parse_domain(text)) == text
    assert str(parse_domain(text)) == text
