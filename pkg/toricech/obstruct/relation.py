from typing import Callable, List, Optional

from toricech.capacities.capacity import PathSearchBudget
from toricech.core.errors import HLabeledTarget
from toricech.domains.toric import ToricDomain, action
from toricech.lattice.enumeration import labelings
from toricech.lattice.generator import ConvexGenerator, format_product
from toricech.utils.tracker import SearchTracker


__all__ = ['le', 'le_weak', 'shares_elliptic', 'candidates', 'related_generators']


def _require_all_e(generator: ConvexGenerator) -> None:
    if generator.h:
        raise HLabeledTarget(f'target generator {generator} carries an h label')


def _count_condition(generator: ConvexGenerator, target: ConvexGenerator) -> bool:
    # x + y - h/2 >= x' + y' + m' - 1, doubled
    return 2 * (generator.x + generator.y) - generator.h >= 2 * (target.x + target.y + target.mult - 1)


def le(domain: ToricDomain, target_domain: ToricDomain, generator: ConvexGenerator, target: ConvexGenerator) -> bool:
    _require_all_e(target)
    return (generator.index == target.index
            and action(domain, generator) <= action(target_domain, target)
            and _count_condition(generator, target))


def le_weak(domain: ToricDomain, target_domain: ToricDomain, generator: ConvexGenerator,
            target: ConvexGenerator) -> bool:
    """Equal index, action inequality and ``x + y >= x' + y'``."""
    _require_all_e(target)
    return (generator.index == target.index
            and action(domain, generator) <= action(target_domain, target)
            and generator.x + generator.y >= target.x + target.y)


def shares_elliptic(first: ConvexGenerator, second: ConvexGenerator) -> bool:
    other = second.edge_map
    for edge in first.edges:
        if edge.epart:
            m, l = other.get(edge.direction, (0, 0))
            if m - l > 0:
                return True
    return False


def related_generators(domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator,
                       accept: Callable[[ConvexGenerator], bool], sum_floor: Optional[int] = None,
                       tracker: Optional[SearchTracker] = None) -> List[ConvexGenerator]:
    """Generators of the target's index whose action in ``domain`` is at most the target's.

    Only those passing ``accept`` are kept, sorted by (action, formal product);
    ``sum_floor`` is a lower bound on ``x + y`` that ``accept`` implies.
    """
    _require_all_e(target)
    tracker = tracker if tracker is not None else SearchTracker()
    if target.is_one:
        return [target]
    cap = action(target_domain, target)
    index = target.index
    # a lone edge (a, b) already has grading 2(a + b) - 1
    search = PathSearchBudget.for_domain(domain, cap).search(
        domain, tracker, max_edge_sum=(index + 1) // 2, grading_cap=index, sum_floor=sum_floor)
    found = []
    for node in search:
        for generator in labelings(node, index=index):
            if accept(generator):
                found.append((node.action, format_product(generator), generator))
    tracker.update(candidates=len(found))
    found.sort(key=lambda item: item[:2])
    return [generator for _, _, generator in found]


def candidates(domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator,
               tracker: Optional[SearchTracker] = None) -> List[ConvexGenerator]:
    """Exactly the generators related to ``target`` by ``le``."""
    floor = target.x + target.y + target.mult - 1
    return related_generators(domain, target_domain, target, lambda g: _count_condition(g, target), floor, tracker)
