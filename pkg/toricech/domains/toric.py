from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import re

from toricech.core.errors import InvalidDomain, ParseError
from toricech.core.rational import as_rational, format_rational, parse_rational
from toricech.lattice.generator import ConvexGenerator, Direction


__all__ = [
    'ToricDomain',
    'Polydisk',
    'Ellipsoid',
    'Polygon',
    'Ball',
    'support',
    'action',
    'edge_costs',
    'contains',
    'scale',
    'area',
    'inscribed_rectangle',
    'inclusion_scale',
    'parse_domain',
    'format_domain',
]


Point = Tuple[Fraction, Fraction]
Number = Union[int, str, Fraction]


class ToricDomain:
    """Region under a nonincreasing concave graph in the first quadrant.

    Subclasses describe the upper boundary through ``boundary()``: vertices
    from ``(0, f(0))`` to ``(A, 0)``, left to right.
    """

    def boundary(self) -> Tuple[Point, ...]:
        raise NotImplementedError

    @cached_property
    def normals(self) -> Tuple[Point, ...]:
        # outward normals of the upper boundary edges, nonnegative
        vertices = self.boundary()
        return tuple((y0 - y1, x1 - x0) for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]))

    @property
    def width(self) -> Fraction:
        return self.boundary()[-1][0]

    @property
    def height(self) -> Fraction:
        return self.boundary()[0][1]

    def support(self, u: Fraction, v: Fraction) -> Fraction:
        return max(u * x + v * y for x, y in self.boundary())

    def scale(self, t: Number) -> 'ToricDomain':
        raise NotImplementedError

    def __str__(self) -> str:
        return format_domain(self)


def _positive(name: str, value: Number) -> Fraction:
    value = as_rational(value)
    if value <= 0:
        raise InvalidDomain(f'{name} must be positive, got {format_rational(value)}')
    return value


@dataclass(frozen=True)
class Polydisk(ToricDomain):
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, 'a', _positive('polydisk side a', self.a))
        object.__setattr__(self, 'b', _positive('polydisk side b', self.b))

    def boundary(self) -> Tuple[Point, ...]:
        zero = Fraction(0)
        return (zero, self.b), (self.a, self.b), (self.a, zero)

    def support(self, u: Fraction, v: Fraction) -> Fraction:
        return u * self.a + v * self.b

    def scale(self, t: Number) -> 'Polydisk':
        t = _positive('scale factor', t)
        return Polydisk(self.a * t, self.b * t)


@dataclass(frozen=True)
class Ellipsoid(ToricDomain):
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, 'a', _positive('ellipsoid axis a', self.a))
        object.__setattr__(self, 'b', _positive('ellipsoid axis b', self.b))

    def boundary(self) -> Tuple[Point, ...]:
        zero = Fraction(0)
        return (zero, self.b), (self.a, zero)

    def support(self, u: Fraction, v: Fraction) -> Fraction:
        return max(u * self.a, v * self.b)

    def scale(self, t: Number) -> 'Ellipsoid':
        t = _positive('scale factor', t)
        return Ellipsoid(self.a * t, self.b * t)


def Ball(c: Number) -> Ellipsoid:
    return Ellipsoid(c, c)


@dataclass(frozen=True)
class Polygon(ToricDomain):
    vertices: Tuple[Point, ...]

    def __post_init__(self) -> None:
        vertices = tuple((as_rational(x), as_rational(y)) for x, y in self.vertices)
        object.__setattr__(self, 'vertices', vertices)
        if len(vertices) < 2:
            raise InvalidDomain('a polygon boundary needs at least two vertices')
        (x0, y0), (xn, yn) = vertices[0], vertices[-1]
        if x0 != 0 or y0 <= 0:
            raise InvalidDomain(f'boundary must start at (0, f(0)) with f(0) > 0, got {_point(vertices[0])}')
        if yn != 0 or xn <= 0:
            raise InvalidDomain(f'boundary must end at (A, 0) with A > 0, got {_point(vertices[-1])}')
        for i, ((px, py), (qx, qy)) in enumerate(zip(vertices, vertices[1:])):
            last = i == len(vertices) - 2
            if qy > py:
                raise InvalidDomain(f'boundary increases from {_point((px, py))} to {_point((qx, qy))}')
            if qx < px or (qx == px and not last):
                raise InvalidDomain(f'vertices must run left to right; only the last edge may be vertical, '
                                    f'got {_point((px, py))} -> {_point((qx, qy))}')
            if (px, py) == (qx, qy):
                raise InvalidDomain(f'repeated vertex {_point((px, py))}')
        for p, q, r in zip(vertices, vertices[1:], vertices[2:]):
            # right turn or straight: (q - p) x (r - q) <= 0
            if (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0]) > 0:
                raise InvalidDomain(f'boundary is not concave at {_point(q)}')

    def boundary(self) -> Tuple[Point, ...]:
        return self.vertices

    def scale(self, t: Number) -> 'Polygon':
        t = _positive('scale factor', t)
        return Polygon(tuple((x * t, y * t) for x, y in self.vertices))


def _point(point: Point) -> str:
    return f'({format_rational(point[0])},{format_rational(point[1])})'


def support(domain: ToricDomain, u: Fraction, v: Fraction) -> Fraction:
    if u < 0 or v < 0 or (u == 0 and v == 0):
        raise ValueError(f'support direction must be nonnegative and nonzero, got ({u},{v})')
    return domain.support(u, v)


def edge_cost(domain: ToricDomain, direction: Direction) -> Fraction:
    # the edge vector (a, -b) pairs with the tangent line of normal (b, a)
    return Fraction(domain.support(direction.b, direction.a))


def edge_costs(domain: ToricDomain, directions: Iterable[Direction]) -> Dict[Direction, Fraction]:
    return {direction: edge_cost(domain, direction) for direction in directions}


def action(domain: ToricDomain, generator: ConvexGenerator) -> Fraction:
    return sum((edge.mult * edge_cost(domain, edge.direction) for edge in generator.edges), Fraction(0))


def _test_normals(*domains: ToricDomain) -> List[Point]:
    normals = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for domain in domains:
        normals.extend(domain.normals)
    return normals


def contains(outer: ToricDomain, inner: ToricDomain) -> bool:
    """Whether ``inner`` is a subset of ``outer``."""
    return all(inner.support(u, v) <= outer.support(u, v) for u, v in _test_normals(outer, inner))


def scale(domain: ToricDomain, t: Number) -> ToricDomain:
    return domain.scale(t)


def area(domain: ToricDomain) -> Fraction:
    polygon = [(Fraction(0), Fraction(0))] + list(reversed(domain.boundary()))
    twice = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(polygon, polygon[1:] + polygon[:1]))
    return twice / 2


def inscribed_rectangle(domain: ToricDomain) -> Tuple[Fraction, Fraction]:
    """Corner rectangle ``[0, w] x [0, h]`` of maximal area inside the domain.

    On each boundary segment ``x * f(x)`` is a concave quadratic, so its
    maximum is at an endpoint or at the clamped critical point.
    """
    best = (Fraction(0), Fraction(0))
    vertices = domain.boundary()
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        points = [(x0, y0), (x1, y1)]
        if x1 > x0:
            slope = (y1 - y0) / (x1 - x0)
            if slope < 0:
                critical = (slope * x0 - y0) / (2 * slope)
                if x0 < critical < x1:
                    points.append((critical, y0 + slope * (critical - x0)))
        for x, y in points:
            if x * y > best[0] * best[1]:
                best = (x, y)
    return best


def inclusion_scale(domain: ToricDomain, unit: ToricDomain) -> Fraction:
    """Least ``t`` with ``domain`` contained in ``t * unit``."""
    return max(domain.support(u, v) / unit.support(u, v) for u, v in _test_normals(unit))


_NUMBER = r'\s*([^,()\[\]\s]+)\s*'
_PAIR_PATTERN = re.compile(rf'^\s*([PE])\({_NUMBER},{_NUMBER}\)\s*$')
_BALL_PATTERN = re.compile(rf'^\s*B\({_NUMBER}\)\s*$')
_POLYGON_PATTERN = re.compile(r'^\s*poly\s*\[(.*)\]\s*$')
_VERTEX_PATTERN = re.compile(rf'\({_NUMBER},{_NUMBER}\)')


def parse_domain(text: str) -> ToricDomain:
    match = _PAIR_PATTERN.match(text)
    if match:
        kind, a, b = match.groups()
        cls = Polydisk if kind == 'P' else Ellipsoid
        return cls(parse_rational(a), parse_rational(b))
    match = _BALL_PATTERN.match(text)
    if match:
        return Ball(parse_rational(match.group(1)))
    match = _POLYGON_PATTERN.match(text)
    if match:
        body = match.group(1)
        vertices = _VERTEX_PATTERN.findall(body)
        if not vertices or _VERTEX_PATTERN.sub('', body).replace(',', '').strip():
            raise ParseError(f'not a vertex list: {text!r}')
        return Polygon(tuple((parse_rational(x), parse_rational(y)) for x, y in vertices))
    raise ParseError(f'not a domain literal: {text!r}, expected P(a,b), E(a,b), B(c) or poly[(x,y),...]')


def format_domain(domain: ToricDomain) -> str:
    if isinstance(domain, Polydisk):
        return f'P({format_rational(domain.a)},{format_rational(domain.b)})'
    if isinstance(domain, Ellipsoid):
        if domain.a == domain.b:
            return f'B({format_rational(domain.a)})'
        return f'E({format_rational(domain.a)},{format_rational(domain.b)})'
    return 'poly[' + ','.join(_point(p) for p in domain.boundary()) + ']'
