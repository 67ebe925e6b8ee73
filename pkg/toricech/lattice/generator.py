from fractions import Fraction
from functools import cached_property
from math import floor, gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import re

from dataclasses import dataclass

from toricech.core.errors import EmptyGenerator, InvalidEdge, ParseError, SharedHyperbolic


__all__ = [
    'Direction',
    'LabeledEdge',
    'ConvexGenerator',
    'ONE',
    'make_generator',
    'from_counts',
    'elliptic',
    'parse_product',
    'format_product',
    'lattice_count',
    'count_lattice_points',
    'ech_index',
    'j_zero',
    'total_multiplicity',
    'h_count',
    'e_distinct',
    'endpoints',
    'area_under',
    'product',
    'product_of',
    'shares_hyperbolic',
]


@dataclass(frozen=True)
class Direction:
    a: int
    b: int

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise InvalidEdge(f'direction coordinates must be integers, got ({self.a!r},{self.b!r})')
        if self.a < 0 or self.b < 0:
            raise InvalidEdge(f'direction ({self.a},{self.b}) has a negative coordinate')
        if self.a == 0 and self.b == 0:
            raise InvalidEdge('direction (0,0) is not an edge direction')
        if gcd(self.a, self.b) != 1:
            raise InvalidEdge(f'direction ({self.a},{self.b}) is not primitive')

    @property
    def is_horizontal(self) -> bool:
        return self.b == 0

    @property
    def is_vertical(self) -> bool:
        return self.a == 0

    @property
    def is_axis(self) -> bool:
        return self.a == 0 or self.b == 0

    @property
    def sort_key(self) -> Tuple[int, Fraction]:
        # steepness b/a, vertical last
        if self.a == 0:
            return 1, Fraction(0)
        return 0, Fraction(self.b, self.a)

    def steeper_than(self, other: 'Direction') -> bool:
        return self.b * other.a > other.b * self.a

    def __lt__(self, other: 'Direction') -> bool:
        return other.steeper_than(self)

    def __str__(self) -> str:
        return f'({self.a},{self.b})'


@dataclass(frozen=True)
class LabeledEdge:
    direction: Direction
    mult: int
    hcount: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.mult, int) or self.mult < 1:
            raise InvalidEdge(f'edge {self.direction} has multiplicity {self.mult!r}, expected a positive integer')
        if not isinstance(self.hcount, int) or not 0 <= self.hcount <= self.mult:
            raise InvalidEdge(f'edge {self.direction} has h-label {self.hcount!r} outside 0..{self.mult}')
        if self.hcount and self.direction.is_axis:
            raise InvalidEdge(f'horizontal and vertical edges can only be labeled e, got h on {self.direction}')

    @property
    def epart(self) -> int:
        return self.mult - self.hcount


@dataclass(frozen=True)
class ConvexGenerator:
    """A convex integral path with labelled edges, read as a formal product.

    Edges are stored by strictly increasing steepness, so the path starts at
    ``(0, y)``, runs along the shallow edges first and ends at ``(x, 0)``.
    Concavity of the path is therefore an invariant of the sort order.
    """

    edges: Tuple[LabeledEdge, ...] = ()
    extended: bool = False

    def __post_init__(self) -> None:
        for prev, edge in zip(self.edges, self.edges[1:]):
            if not edge.direction.steeper_than(prev.direction):
                raise InvalidEdge(f'edges {prev.direction} and {edge.direction} are not in '
                                  f'strictly increasing slope order')
        if not self.extended:
            for edge in self.edges:
                if edge.hcount > 1:
                    raise InvalidEdge(f'h-label {edge.hcount} on {edge.direction} needs an extended generator')

    @cached_property
    def x(self) -> int:
        return sum(edge.mult * edge.direction.a for edge in self.edges)

    @cached_property
    def y(self) -> int:
        return sum(edge.mult * edge.direction.b for edge in self.edges)

    @cached_property
    def mult(self) -> int:
        return sum(edge.mult for edge in self.edges)

    @cached_property
    def h(self) -> int:
        return sum(edge.hcount for edge in self.edges)

    @cached_property
    def e(self) -> int:
        return sum(1 for edge in self.edges if edge.hcount < edge.mult)

    @cached_property
    def vertices(self) -> Tuple[Tuple[int, int], ...]:
        px, py = 0, self.y
        points = [(px, py)]
        for edge in self.edges:
            px += edge.mult * edge.direction.a
            py -= edge.mult * edge.direction.b
            points.append((px, py))
        return tuple(points)

    @cached_property
    def twice_area(self) -> int:
        polygon = [(0, 0)] + list(reversed(self.vertices))
        total = 0
        for (x0, y0), (x1, y1) in zip(polygon, polygon[1:] + polygon[:1]):
            total += x0 * y1 - x1 * y0
        return total

    @cached_property
    def lattice_count(self) -> int:
        # Pick: 2A = 2L - B - 2 with B = m + x + y boundary points
        doubled = self.twice_area + self.mult + self.x + self.y + 2
        assert doubled % 2 == 0
        return doubled // 2

    @cached_property
    def index(self) -> int:
        return 2 * (self.lattice_count - 1) - self.h

    @property
    def is_one(self) -> bool:
        return not self.edges

    @property
    def is_all_e(self) -> bool:
        return self.h == 0

    @cached_property
    def edge_map(self) -> Dict[Direction, Tuple[int, int]]:
        return {edge.direction: (edge.mult, edge.hcount) for edge in self.edges}

    def __str__(self) -> str:
        return format_product(self)


ONE = ConvexGenerator()


def make_generator(edges: Iterable[LabeledEdge], extended: bool = False) -> ConvexGenerator:
    edges = list(edges)
    seen = set()
    for edge in edges:
        if edge.direction in seen:
            raise InvalidEdge(f'direction {edge.direction} appears twice')
        seen.add(edge.direction)
        if not extended and edge.hcount > 1:
            raise InvalidEdge(f'no factor h{edge.direction} may be repeated')
    edges.sort(key=lambda edge: edge.direction.sort_key)
    return ConvexGenerator(tuple(edges), extended)


def from_counts(counts: Mapping[Direction, Tuple[int, int]], extended: bool = False) -> ConvexGenerator:
    # counts maps a direction to (mult, hcount); zero multiplicities are skipped
    return make_generator((LabeledEdge(d, m, l) for d, (m, l) in counts.items() if m > 0), extended)


def elliptic(a: int, b: int, mult: int = 1) -> ConvexGenerator:
    return make_generator([LabeledEdge(Direction(a, b), mult)])


_FACTOR = r'([eh])\(\s*(\d+)\s*,\s*(\d+)\s*\)(?:\^(\d+))?'
_PRODUCT_PATTERN = re.compile(rf'^\s*(?:1|{_FACTOR}(?:\s+{_FACTOR})*)\s*$')
_FACTOR_PATTERN = re.compile(_FACTOR)


def parse_product(text: str, extended: bool = False) -> ConvexGenerator:
    if not _PRODUCT_PATTERN.match(text):
        raise ParseError(f'not a formal product: {text!r}')
    counts: Dict[Direction, List[int]] = {}
    for label, a, b, exponent in _FACTOR_PATTERN.findall(text):
        power = int(exponent) if exponent else 1
        if power < 1:
            raise InvalidEdge(f'factor {label}({a},{b}) has zero multiplicity')
        direction = Direction(int(a), int(b))
        mult_and_h = counts.setdefault(direction, [0, 0])
        mult_and_h[0] += power
        if label == 'h':
            if direction.is_axis:
                raise InvalidEdge(f'horizontal and vertical edges can only be labeled e, got h{direction}')
            mult_and_h[1] += power
            if mult_and_h[1] > 1 and not extended:
                raise InvalidEdge(f'no factor h{direction} may be repeated')
    return from_counts({d: (m, l) for d, (m, l) in counts.items()}, extended)


def format_product(generator: ConvexGenerator) -> str:
    if generator.is_one:
        return '1'
    factors = []
    for edge in generator.edges:
        a, b = edge.direction.a, edge.direction.b
        if edge.epart:
            factors.append(f'e({a},{b})' + (f'^{edge.epart}' if edge.epart > 1 else ''))
        if edge.hcount:
            factors.append(f'h({a},{b})' + (f'^{edge.hcount}' if edge.hcount > 1 else ''))
    return ' '.join(factors)


def lattice_count(generator: ConvexGenerator) -> int:
    return generator.lattice_count


def count_lattice_points(generator: ConvexGenerator) -> int:
    # column sums over the path height; independent of Pick's formula
    vertices = generator.vertices
    segments = list(zip(vertices, vertices[1:]))
    total = 0
    for u in range(generator.x + 1):
        height = Fraction(0)
        for (x0, y0), (x1, y1) in segments:
            if x0 == x1 == u:
                height = max(height, y0, y1)
            elif x0 <= u <= x1 and x0 < x1:
                height = max(height, y0 + Fraction((u - x0) * (y1 - y0), x1 - x0))
        if not segments:
            height = Fraction(generator.y)
        total += floor(height) + 1
    return total


def ech_index(generator: ConvexGenerator) -> int:
    return generator.index


def j_zero(generator: ConvexGenerator) -> int:
    return generator.index - 2 * generator.x - 2 * generator.y - generator.e


def total_multiplicity(generator: ConvexGenerator) -> int:
    return generator.mult


def h_count(generator: ConvexGenerator) -> int:
    return generator.h


def e_distinct(generator: ConvexGenerator) -> int:
    return generator.e


def endpoints(generator: ConvexGenerator) -> Tuple[int, int]:
    return generator.x, generator.y


def area_under(generator: ConvexGenerator) -> Fraction:
    if generator.is_one:
        raise EmptyGenerator('the generator 1 encloses no region')
    return Fraction(generator.twice_area, 2)


def shares_hyperbolic(first: ConvexGenerator, second: ConvexGenerator) -> bool:
    other = second.edge_map
    return any(edge.hcount and other.get(edge.direction, (0, 0))[1] for edge in first.edges)


def product(first: ConvexGenerator, second: ConvexGenerator) -> ConvexGenerator:
    extended = first.extended or second.extended
    if not extended and shares_hyperbolic(first, second):
        raise SharedHyperbolic(f'{first} and {second} have a hyperbolic orbit in common')
    counts = dict(first.edge_map)
    for direction, (m, l) in second.edge_map.items():
        m0, l0 = counts.get(direction, (0, 0))
        counts[direction] = (m0 + m, l0 + l)
    return from_counts(counts, extended)


def product_of(generators: Sequence[ConvexGenerator]) -> ConvexGenerator:
    result = ONE
    for generator in generators:
        result = product(result, generator)
    return result
