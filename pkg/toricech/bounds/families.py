from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Union

from toricech.capacities.oracles import is_minimal_polydisk
from toricech.core.rational import as_rational
from toricech.domains.toric import Ball, Ellipsoid, Polydisk, ToricDomain, area
from toricech.lattice.generator import ConvexGenerator, Direction, LabeledEdge, elliptic, format_product, make_generator


__all__ = [
    'FAMILY_KINDS',
    'TargetFamily',
    'y1_bound',
    'ball_bound',
    'folding_bound',
    'polydisk_assumption_holds',
    'polydisk_target_degree',
    'volume_scale_squared',
    'reference_bound',
]


FAMILY_KINDS = ('ball', 'ellipsoid', 'square', 'polydisk')

Number = Union[int, str, Fraction]


@dataclass(frozen=True)
class TargetFamily:
    """Targets B(c), E(bc, c), P(c, c) or P(bc, c) as the scale c varies."""

    kind: str
    b: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f'family kind must be one of {", ".join(FAMILY_KINDS)}, got {self.kind!r}')
        b = as_rational(self.b)
        if b <= 0:
            raise ValueError(f'family ratio must be positive, got {b}')
        if self.kind in ('ball', 'square') and b != 1:
            raise ValueError(f'the {self.kind} family has no ratio')
        object.__setattr__(self, 'b', b)

    def member(self, c: Number) -> ToricDomain:
        c = as_rational(c)
        if self.kind == 'ball':
            return Ball(c)
        if self.kind == 'ellipsoid':
            return Ellipsoid(self.b * c, c)
        if self.kind == 'square':
            return Polydisk(c, c)
        return Polydisk(self.b * c, c)

    @property
    def unit(self) -> ToricDomain:
        return self.member(1)

    def targets(self, d_max: int) -> List[ConvexGenerator]:
        """Minimal generators used as targets; minimality does not depend on c."""
        if d_max < 1:
            raise ValueError(f'd_max must be positive, got {d_max}')
        if self.kind == 'ball':
            return [elliptic(1, 1, d) for d in range(1, d_max + 1)]
        if self.kind == 'ellipsoid':
            if self.b.denominator != 1:
                raise ValueError(f'ellipsoid targets need an integer ratio, got {self.b}')
            return [elliptic(int(self.b), 1, d) for d in range(1, d_max + 1)]
        found = []
        for x in range(d_max + 1):
            for y in range(d_max + 1):
                if (x or y) and is_minimal_polydisk(x, y, self.b, 1):
                    edges = [LabeledEdge(Direction(1, 0), x)] if x else []
                    edges += [LabeledEdge(Direction(0, 1), y)] if y else []
                    found.append(make_generator(edges))
        return sorted(found, key=lambda g: (g.index, format_product(g)))

    def __str__(self) -> str:
        if self.kind in ('ball', 'square'):
            return self.kind
        return f'{self.kind}({self.b})'


def y1_bound(a: Number, d: int) -> Fraction:
    a = as_rational(a)
    return min(1 + a, (3 * d - 2 + a) / d, Fraction(d + 3, 2))


def ball_bound(a: Number) -> Optional[Fraction]:
    """Lower bound on c for P(a, 1) into B(c), piecewise on 1 <= a <= 8."""
    a = as_rational(a)
    if a < 1 or a > 8:
        return None
    if a <= 2:
        return a + 1
    if a <= 4:
        return (10 + a) / 4
    if a <= Fraction(9, 2):
        return Fraction(7, 2)
    if a <= 7:
        return (13 + a) / 5
    return Fraction(4)


def folding_bound(a: Number) -> Fraction:
    # sharp for 2 <= a <= 12/5
    return 2 + as_rational(a) / 2


def polydisk_target_degree(b: Number) -> int:
    return 4 * ceil(as_rational(b)) - 2


def polydisk_assumption_holds(a: Number, b: Number) -> bool:
    a, b = as_rational(a), as_rational(b)
    return 2 * b / a >= 1 + (b - 1) / (4 * ceil(b) - 1)


def volume_scale_squared(domain: ToricDomain, family: TargetFamily) -> Fraction:
    """Square of the least c allowed by volume."""
    return area(domain) / area(family.unit)


def reference_bound(a: Number, family: TargetFamily) -> Optional[Fraction]:
    """Known sharp or published threshold for P(a, 1) in the family, when one applies."""
    a = as_rational(a)
    if family.kind == 'ball':
        return ball_bound(a)
    if family.kind == 'ellipsoid':
        if family.b.denominator == 1 and 1 <= a <= 2:
            return (a + family.b) / family.b
        return None
    if family.kind == 'square':
        return a if 1 <= a <= 2 else None
    if a >= 1 and family.b >= 1 and polydisk_assumption_holds(a, family.b):
        return max(Fraction(1), a / family.b)
    return None
