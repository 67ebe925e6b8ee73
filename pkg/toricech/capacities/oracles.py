from fractions import Fraction
from heapq import merge
from itertools import islice
from math import floor, gcd
from typing import List, Tuple, Union

from toricech.core.rational import as_rational
from toricech.lattice.generator import ONE, ConvexGenerator, Direction, LabeledEdge, make_generator


__all__ = [
    'capacity_oracle_ellipsoid',
    'capacity_oracle_polydisk',
    'minimal_ellipsoid_family',
    'is_minimal_polydisk',
    'upper_hull',
]


Number = Union[int, str, Fraction]


def capacity_oracle_ellipsoid(a: Number, b: Number, k: int) -> Fraction:
    """The k-th term (from 0, with repetitions) of the sorted values m * a + n * b."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise ValueError('ellipsoid parameters must be positive')
    if k < 0:
        raise ValueError(f'k must be nonnegative, got {k}')
    # the k + 1 smallest values only use m, n <= k
    rows = [[m * a + n * b for n in range(k + 1)] for m in range(k + 1)]
    return next(islice(merge(*rows), k, None))


def capacity_oracle_polydisk(a: Number, b: Number, k: int) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise ValueError('polydisk parameters must be positive')
    if k < 0:
        raise ValueError(f'k must be nonnegative, got {k}')
    return min(a * m + b * n for m in range(k + 1) for n in range(k + 1) if (m + 1) * (n + 1) >= k + 1)


def _cross(o: Tuple[int, int], p: Tuple[int, int], q: Tuple[int, int]) -> int:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def upper_hull(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Upper convex hull from left to right, collinear points dropped (monotone chain)."""
    hull: List[Tuple[int, int]] = []
    for point in sorted(set(points)):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) >= 0:
            hull.pop()
        hull.append(point)
    return hull


def _path_from_vertices(vertices: List[Tuple[int, int]]) -> ConvexGenerator:
    edges = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        dx, dy = x1 - x0, y0 - y1
        g = gcd(dx, dy)
        edges.append(LabeledEdge(Direction(dx // g, dy // g), g))
    return make_generator(edges)


def minimal_ellipsoid_family(a: Number, b: Number, p: Tuple[int, int]) -> ConvexGenerator:
    """Maximal all-e path under the line of slope -b/a through the lattice point ``p``.

    The path bounds the convex hull of the lattice points of the triangle
    ``b x + a y <= b p_x + a p_y``; it ends with a vertical edge when the
    rightmost column of that triangle has more than one point.
    """
    a, b = as_rational(a), as_rational(b)
    px, py = p
    if px < 0 or py < 0:
        raise ValueError(f'point must lie in the first quadrant, got {p}')
    level = b * px + a * py
    if level == 0:
        return ONE
    width = floor(level / b)
    tops = [(x, floor((level - b * x) / a)) for x in range(width + 1)]
    hull = upper_hull(tops)
    if hull[-1][1] > 0:
        hull.append((width, 0))
    return _path_from_vertices(hull)


def is_minimal_polydisk(x: int, y: int, a: Number, b: Number) -> bool:
    """Whether e(1,0)^x e(0,1)^y is the unique minimizer of b x + a y at its lattice count."""
    a, b = as_rational(a), as_rational(b)
    value = b * x + a * y
    count = (x + 1) * (y + 1)
    for other_x in range(floor(value / b) + 1):
        for other_y in range(floor((value - b * other_x) / a) + 1):
            if (other_x, other_y) != (x, y) and (other_x + 1) * (other_y + 1) >= count:
                return False
    return True
