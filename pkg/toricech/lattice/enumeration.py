from fractions import Fraction
from itertools import combinations
from math import floor, gcd
from typing import Callable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy

from toricech.lattice.generator import ConvexGenerator, Direction, LabeledEdge, format_product, make_generator
from toricech.utils.tracker import SearchTracker


__all__ = [
    'PathNode',
    'PathSearch',
    'directions_within',
    'directions_up_to',
    'labelings',
    'enumerate_generators',
    'sample_generators',
]


class PathNode:
    """A convex integral path together with its running totals.

    ``edges`` lists ``(direction, mult)`` from the steepest edge to the
    shallowest, which is the order the search appends them in.
    """

    __slots__ = ('edges', 'x', 'y', 'mult', 'twice_area', 'nonaxis', 'action')

    def __init__(self, edges: Tuple[Tuple[Direction, int], ...] = (), x: int = 0, y: int = 0, mult: int = 0,
                 twice_area: int = 0, nonaxis: int = 0, action: Fraction = Fraction(0)):
        self.edges = edges
        self.x = x
        self.y = y
        self.mult = mult
        self.twice_area = twice_area
        self.nonaxis = nonaxis
        self.action = action

    def extend(self, direction: Direction, mult: int, cost: Fraction) -> 'PathNode':
        a, b = direction.a, direction.b
        # the new edge sits on top of the current path, which moves right by mult * a
        twice_area = self.twice_area + 2 * mult * a * self.y + mult * mult * a * b
        return PathNode(
            self.edges + ((direction, mult),),
            self.x + mult * a,
            self.y + mult * b,
            self.mult + mult,
            twice_area,
            self.nonaxis + (0 if direction.is_axis else 1),
            self.action + mult * cost,
        )

    @property
    def lattice_count(self) -> int:
        return (self.twice_area + self.mult + self.x + self.y + 2) // 2

    @property
    def grading(self) -> int:
        # least index over all labelings: every non-axis edge carries h
        return 2 * (self.lattice_count - 1) - self.nonaxis

    def nonaxis_directions(self) -> List[Direction]:
        return [direction for direction, _ in self.edges if not direction.is_axis]

    def generator(self, hlabels: Sequence[Direction] = ()) -> ConvexGenerator:
        marked = set(hlabels)
        return make_generator(LabeledEdge(d, m, 1 if d in marked else 0) for d, m in self.edges)

    def __repr__(self) -> str:
        return f'PathNode({format_product(self.generator())}, action={self.action})'


class PathSearch:
    """Depth-first enumeration of convex integral paths under monotone caps.

    Every cap bounds a quantity that only grows when an edge is appended, so
    a violated cap prunes the whole subtree and all larger multiplicities of
    the same edge. ``sum_floor`` works the same way through the largest
    ``x + y`` still reachable within the action cap. ``action_cap`` may be
    lowered while iterating.
    """

    def __init__(self, directions: Sequence[Direction], costs: Optional[Mapping[Direction, Fraction]] = None,
                 action_cap: Optional[Fraction] = None, lattice_cap: Optional[int] = None,
                 grading_cap: Optional[int] = None, x_cap: Optional[int] = None, y_cap: Optional[int] = None,
                 sum_floor: Optional[int] = None, tracker: Optional[SearchTracker] = None):
        if action_cap is None and lattice_cap is None and grading_cap is None:
            raise ValueError('path search needs an action, lattice or grading cap to terminate')
        if action_cap is not None and costs is None:
            raise ValueError('an action cap needs per-direction costs')
        if costs is not None and any(costs[d] <= 0 for d in directions):
            raise ValueError('direction costs must be positive')
        # steepest first
        self.directions = sorted(set(directions), key=lambda d: d.sort_key, reverse=True)
        self.costs = costs
        self.action_cap = action_cap
        self.lattice_cap = lattice_cap
        self.grading_cap = grading_cap
        self.x_cap = x_cap
        self.y_cap = y_cap
        self.sum_floor = sum_floor
        if sum_floor is not None:
            if action_cap is None:
                raise ValueError('a floor on x + y needs an action cap')
            # most x + y an extension can buy per unit of action
            self.reach = max((Fraction(d.a + d.b) / costs[d] for d in self.directions), default=Fraction(0))
        self.tracker = tracker if tracker is not None else SearchTracker()

    def lower_action_cap(self, cap: Fraction) -> None:
        if self.action_cap is None or cap < self.action_cap:
            self.action_cap = cap

    def within(self, node: PathNode) -> bool:
        if self.action_cap is not None and node.action > self.action_cap:
            return False
        if self.x_cap is not None and node.x > self.x_cap:
            return False
        if self.y_cap is not None and node.y > self.y_cap:
            return False
        if self.lattice_cap is not None and node.lattice_count > self.lattice_cap:
            return False
        if self.grading_cap is not None and node.grading > self.grading_cap:
            return False
        if self.sum_floor is not None:
            if node.x + node.y + (self.action_cap - node.action) * self.reach < self.sum_floor:
                return False
        return True

    def __iter__(self) -> Iterator[PathNode]:
        return self._descend(PathNode(), 0)

    def _descend(self, node: PathNode, start: int) -> Iterator[PathNode]:
        for i in range(start, len(self.directions)):
            direction = self.directions[i]
            cost = self.costs[direction] if self.costs is not None else Fraction(0)
            mult = 1
            while True:
                child = node.extend(direction, mult, cost)
                if not self.within(child):
                    break
                self.tracker.tick()
                yield child
                yield from self._descend(child, i + 1)
                mult += 1


def directions_within(width: Fraction, height: Fraction, cap: Fraction) -> List[Direction]:
    """Directions (a, b) with a * height + b * width <= cap.

    For a domain containing the rectangle [0, width] x [0, height] these are
    the only directions a single edge of action at most ``cap`` can take.
    """
    if width <= 0 or height <= 0:
        raise ValueError(f'inscribed rectangle must have positive sides, got {width} x {height}')
    directions = []
    for a in range(floor(cap / height) + 1):
        for b in range(floor((cap - a * height) / width) + 1):
            if (a or b) and gcd(a, b) == 1:
                directions.append(Direction(a, b))
    return directions


def directions_up_to(total: int) -> List[Direction]:
    # an edge (a, b) alone already encloses a + b + 1 lattice points
    return [Direction(a, s - a) for s in range(1, total + 1) for a in range(s + 1) if gcd(a, s - a) == 1]


def labelings(node: PathNode, index: Optional[int] = None,
              max_index: Optional[int] = None) -> Iterator[ConvexGenerator]:
    """Every h-labeling of the path whose index is ``index`` (or at most ``max_index``)."""
    base = 2 * (node.lattice_count - 1)
    nonaxis = node.nonaxis_directions()
    if index is not None:
        counts = [base - index] if 0 <= base - index <= len(nonaxis) else []
    else:
        counts = [h for h in range(len(nonaxis) + 1) if max_index is None or base - h <= max_index]
    for h in counts:
        for marked in combinations(nonaxis, h):
            yield node.generator(marked)


def enumerate_generators(max_index: Optional[int] = None, index: Optional[int] = None,
                         all_e: bool = False, tracker: Optional[SearchTracker] = None) -> List[ConvexGenerator]:
    """All convex generators with index at most ``max_index`` (or exactly ``index``).

    The generator 1 is included when the bound admits index 0. Results are
    sorted by index and then by their formal product text.
    """
    if (max_index is None) == (index is None):
        raise ValueError('pass exactly one of max_index and index')
    bound = max_index if max_index is not None else index
    if bound < 0:
        return []
    found = [make_generator([])] if bound >= 0 and (index is None or index == 0) else []
    search = PathSearch(directions_up_to((bound + 1) // 2), grading_cap=bound, tracker=tracker)
    for node in search:
        if all_e:
            generator = node.generator()
            if (index is None and generator.index <= bound) or generator.index == index:
                found.append(generator)
        else:
            found.extend(labelings(node, index=index, max_index=max_index))
    return sorted(found, key=lambda g: (g.index, format_product(g)))


def sample_generators(rng: numpy.random.Generator, count: int, max_edges: int = 4, max_coord: int = 4,
                      max_mult: int = 3, extended: bool = False,
                      accept: Optional[Callable[[ConvexGenerator], bool]] = None) -> List[ConvexGenerator]:
    """Random nonempty generators; h labels are drawn only on non-axis edges."""
    pool = [Direction(a, b) for a in range(max_coord + 1) for b in range(max_coord + 1)
            if (a or b) and gcd(a, b) == 1]
    samples = []
    while len(samples) < count:
        size = int(rng.integers(1, max_edges + 1))
        picks = rng.choice(len(pool), size=min(size, len(pool)), replace=False)
        edges = []
        for i in picks:
            direction = pool[int(i)]
            mult = int(rng.integers(1, max_mult + 1))
            if direction.is_axis:
                hcount = 0
            elif extended:
                hcount = int(rng.integers(0, mult + 1))
            else:
                hcount = int(rng.integers(0, 2))
            edges.append(LabeledEdge(direction, mult, hcount))
        generator = make_generator(edges, extended)
        if accept is None or accept(generator):
            samples.append(generator)
    return samples
