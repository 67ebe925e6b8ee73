from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import List, Optional, Tuple

from toricech.capacities.oracles import is_minimal_polydisk, minimal_ellipsoid_family
from toricech.domains.toric import Ellipsoid, Polydisk, ToricDomain, edge_cost, edge_costs, inscribed_rectangle
from toricech.lattice.enumeration import PathNode, PathSearch, directions_within
from toricech.lattice.generator import ConvexGenerator, Direction
from toricech.utils.tracker import SearchTracker


__all__ = [
    'DEFAULT_NODE_BUDGET',
    'PathSearchBudget',
    'capacity',
    'capacities',
    'find_minimal_generator',
    'is_minimal',
    'capacity_obstruction',
]


DEFAULT_NODE_BUDGET = 10_000


@dataclass(frozen=True)
class PathSearchBudget:
    """Caps for paths of action at most ``action_cap`` in a domain.

    With ``[0, w] x [0, h]`` inside the domain every path satisfies
    ``action >= h * x + w * y``, which bounds ``x``, ``y`` and the directions.
    """

    action_cap: Fraction
    x_cap: int
    y_cap: int
    width: Fraction
    height: Fraction

    @classmethod
    def for_domain(cls, domain: ToricDomain, action_cap: Fraction) -> 'PathSearchBudget':
        width, height = inscribed_rectangle(domain)
        return cls(action_cap, floor(action_cap / height), floor(action_cap / width), width, height)

    def directions(self) -> List[Direction]:
        return directions_within(self.width, self.height, self.action_cap)

    def search(self, domain: ToricDomain, tracker: SearchTracker, max_edge_sum: Optional[int] = None,
               **caps) -> PathSearch:
        directions = self.directions()
        if max_edge_sum is not None:
            directions = [d for d in directions if d.a + d.b <= max_edge_sum]
        return PathSearch(directions, edge_costs(domain, directions), action_cap=self.action_cap,
                          x_cap=self.x_cap, y_cap=self.y_cap, tracker=tracker, **caps)


def _tracker(budget: Optional[int], tracker: Optional[SearchTracker]) -> SearchTracker:
    return tracker if tracker is not None else SearchTracker(budget)


def _minimizers(domain: ToricDomain, k: int, tracker: SearchTracker) -> Tuple[Fraction, List[PathNode]]:
    # e(1,0)^k and e(0,1)^k both have k + 1 lattice points
    cap = k * min(edge_cost(domain, Direction(1, 0)), edge_cost(domain, Direction(0, 1)))
    # a path using direction (a, b) already encloses a + b + 1 lattice points
    search = PathSearchBudget.for_domain(domain, cap).search(domain, tracker, max_edge_sum=k, lattice_cap=k + 1)
    best, nodes = cap, []
    for node in search:
        if node.lattice_count != k + 1:
            continue
        if node.action < best:
            best, nodes = node.action, [node]
            search.lower_action_cap(best)
        elif node.action == best:
            nodes.append(node)
    tracker.update(minimizers=len(nodes))
    return best, nodes


def capacity(domain: ToricDomain, k: int, budget: Optional[int] = DEFAULT_NODE_BUDGET,
             tracker: Optional[SearchTracker] = None) -> Fraction:
    """The k-th ECH capacity: least action of an all-e path with k + 1 lattice points."""
    if k < 0:
        raise ValueError(f'k must be nonnegative, got {k}')
    if k == 0:
        return Fraction(0)
    best, _ = _minimizers(domain, k, _tracker(budget, tracker))
    return best


def capacities(domain: ToricDomain, k_max: int, budget: Optional[int] = DEFAULT_NODE_BUDGET) -> List[Fraction]:
    return [capacity(domain, k, budget) for k in range(k_max + 1)]


def find_minimal_generator(domain: ToricDomain, k: int, budget: Optional[int] = DEFAULT_NODE_BUDGET,
                           tracker: Optional[SearchTracker] = None) -> Optional[ConvexGenerator]:
    """The unique all-e minimizer at lattice count k + 1, or None on a tie."""
    if k < 0:
        raise ValueError(f'k must be nonnegative, got {k}')
    if k == 0:
        return ConvexGenerator()
    _, nodes = _minimizers(domain, k, _tracker(budget, tracker))
    if len(nodes) != 1:
        return None
    return nodes[0].generator()


def _tangent_vertex(domain: Ellipsoid, generator: ConvexGenerator) -> Tuple[int, int]:
    return max(generator.vertices, key=lambda p: domain.b * p[0] + domain.a * p[1])


@lru_cache(maxsize=4096)
def is_minimal(domain: ToricDomain, generator: ConvexGenerator, budget: Optional[int] = DEFAULT_NODE_BUDGET) -> bool:
    """Whether ``generator`` is all-e and uniquely minimizes the action at its index.

    Ellipsoids and rectangle paths in polydisks are decided in closed form;
    everything else falls back to the exhaustive minimizer search.
    """
    if not generator.is_all_e or generator.extended:
        return False
    if generator.is_one:
        return True
    if isinstance(domain, Ellipsoid):
        # the action is the level of the tangent line, so the minimizer holds every lattice point below it
        vertex = _tangent_vertex(domain, generator)
        return minimal_ellipsoid_family(domain.a, domain.b, vertex) == generator
    if isinstance(domain, Polydisk) and all(edge.direction.is_axis for edge in generator.edges):
        return is_minimal_polydisk(generator.x, generator.y, domain.a, domain.b)
    return find_minimal_generator(domain, generator.lattice_count - 1, budget) == generator


def capacity_obstruction(domain: ToricDomain, target: ToricDomain, k_max: int,
                         budget: Optional[int] = DEFAULT_NODE_BUDGET) -> Optional[int]:
    """First ``k <= k_max`` with ``c_k(domain) > c_k(target)``, or None."""
    for k in range(1, k_max + 1):
        if capacity(domain, k, budget) > capacity(target, k, budget):
            return k
    return None
