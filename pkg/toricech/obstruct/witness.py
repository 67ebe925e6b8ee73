from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import warnings

from toricech.capacities.capacity import is_minimal
from toricech.core.errors import BudgetExceeded, NotMinimal
from toricech.core.parallel import parallel_map
from toricech.domains.toric import ToricDomain, contains, format_domain
from toricech.lattice.factorization import enumerate_factorizations
from toricech.lattice.generator import ONE, ConvexGenerator, elliptic, product, shares_hyperbolic
from toricech.obstruct.certificate import CRITERIA, Certificate
from toricech.obstruct.relation import candidates, le_weak, related_generators, shares_elliptic
from toricech.utils.tracker import SearchTracker


__all__ = [
    'DEFAULT_SEARCH_BUDGET',
    'SearchOptions',
    'Excluded',
    'NotExcluded',
    'Verdict',
    'find_witness',
    'check_embedding',
]


DEFAULT_SEARCH_BUDGET = 2_000_000

Pair = Tuple[ConvexGenerator, ConvexGenerator]


@dataclass(frozen=True)
class SearchOptions:
    conjectural_mode: bool = False
    max_n: Optional[int] = None
    node_budget: Optional[int] = DEFAULT_SEARCH_BUDGET
    criterion: str = 'full'
    jobs: Optional[int] = 1
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.criterion not in CRITERIA:
            raise ValueError(f'criterion must be one of {", ".join(CRITERIA)}, got {self.criterion!r}')
        if self.max_n is not None and self.max_n < 1:
            raise ValueError(f'max_n must be positive, got {self.max_n}')


@dataclass(frozen=True)
class Excluded:
    """No witness exists for ``target``: the embedding is obstructed."""

    target: ConvexGenerator
    trace: Dict[str, int] = field(default_factory=dict)
    conditional: bool = False

    @property
    def excluded(self) -> bool:
        return True


@dataclass(frozen=True)
class NotExcluded:
    certificates: Tuple[Certificate, ...] = ()
    conditional: bool = False

    @property
    def excluded(self) -> bool:
        return False


Verdict = Union[Excluded, NotExcluded]


def _check_target(target_domain: ToricDomain, target: ConvexGenerator, opts: SearchOptions) -> None:
    if opts.conjectural_mode:
        if not target.is_all_e:
            raise NotMinimal(f'{target} has an h label; conjectural mode still needs all edges labeled e')
        return
    if not is_minimal(target_domain, target, opts.node_budget):
        raise NotMinimal(f'{target} is not minimal for {format_domain(target_domain)}')


def _inclusion_pairs(target: ConvexGenerator) -> Tuple[Pair, ...]:
    # one pair (e, e) per unit of multiplicity
    return tuple((unit, unit) for edge in target.edges
                 for unit in [elliptic(edge.direction.a, edge.direction.b)] * edge.mult)


class _WitnessSearch:
    """Backtracking over factorizations of the target and candidate assignments."""

    def __init__(self, domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator,
                 opts: SearchOptions, tracker: SearchTracker):
        self.domain = domain
        self.target_domain = target_domain
        self.target = target
        self.opts = opts
        self.full = opts.criterion == 'full'
        self.tracker = tracker
        self.cache: Dict[ConvexGenerator, List[ConvexGenerator]] = {}

    def candidates(self, factor: ConvexGenerator) -> List[ConvexGenerator]:
        if factor not in self.cache:
            self.cache[factor] = candidates(self.domain, self.target_domain, factor, self.tracker)
        return self.cache[factor]

    def run(self) -> Optional[Tuple[Pair, ...]]:
        limit = self.target.mult
        if self.opts.max_n is not None:
            limit = min(limit, self.opts.max_n)
        for n in range(1, limit + 1):
            for factors in enumerate_factorizations(self.target, n):
                self.tracker.tick()
                lists = [self.candidates(factor) for factor in factors]
                if not all(lists):
                    continue
                self.tracker.update(factorizations=1)
                pairs = self._assign(factors, lists, 0, [], ONE, {(ONE, ONE)})
                if pairs is not None:
                    return tuple(pairs)
            if self.opts.verbose:
                self.tracker.display(f'witness search | n = {n}')
        return None

    def _assign(self, factors: Sequence[ConvexGenerator], lists: Sequence[List[ConvexGenerator]], i: int,
                chosen: List[Pair], lam: ConvexGenerator,
                subproducts: Set[Pair]) -> Optional[List[Pair]]:
        if i == len(factors):
            if lam.index != self.target.index:
                return None
            return list(chosen)
        factor = factors[i]
        # identical target factors take candidates in nondecreasing position
        start = 0
        if i > 0 and factors[i - 1] == factor:
            start = lists[i].index(chosen[-1][0])
        for position in range(start, len(lists[i])):
            generator = lists[i][position]
            self.tracker.tick()
            if shares_hyperbolic(lam, generator):
                continue
            if self.full and not self._distinct_ok(chosen, generator, factor):
                continue
            grown = subproducts
            if self.full:
                grown = self._grow(subproducts, generator, factor)
                if grown is None:
                    continue
            chosen.append((generator, factor))
            found = self._assign(factors, lists, i + 1, chosen, product(lam, generator), grown)
            chosen.pop()
            if found is not None:
                return found
        return None

    @staticmethod
    def _distinct_ok(chosen: List[Pair], generator: ConvexGenerator, factor: ConvexGenerator) -> bool:
        for other, other_factor in chosen:
            if (other, other_factor) != (generator, factor) and shares_elliptic(other, generator):
                return False
        return True

    @staticmethod
    def _grow(subproducts: Set[Pair], generator: ConvexGenerator, factor: ConvexGenerator) -> Optional[Set[Pair]]:
        grown = set(subproducts)
        for lam_part, target_part in subproducts:
            lam_next = product(lam_part, generator)
            target_next = product(target_part, factor)
            if lam_next.index != target_next.index:
                return None
            grown.add((lam_next, target_next))
        return grown


def _weak_witness(domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator,
                  tracker: SearchTracker) -> Optional[Tuple[Pair, ...]]:
    found = related_generators(domain, target_domain, target,
                               lambda g: le_weak(domain, target_domain, g, target),
                               target.x + target.y, tracker)
    if not found:
        return None
    return ((found[0], target),)


def _search(domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator, opts: SearchOptions,
            tracker: SearchTracker) -> Optional[Certificate]:
    certify = partial(Certificate, domain, target_domain, target,
                      conditional=opts.conjectural_mode, criterion=opts.criterion)
    if target.is_one:
        return certify(())
    if contains(target_domain, domain):
        tracker.update(inclusion=1)
        if opts.criterion == 'weak':
            return certify(((target, target),))
        return certify(_inclusion_pairs(target))
    if opts.criterion == 'weak':
        pairs = _weak_witness(domain, target_domain, target, tracker)
    else:
        pairs = _WitnessSearch(domain, target_domain, target, opts, tracker).run()
    return certify(pairs) if pairs is not None else None


def _warn_conditional(opts: SearchOptions) -> None:
    if opts.conjectural_mode:
        warnings.warn('conjectural mode only asks the target generators to be all-e; '
                      'its verdicts are conditional', stacklevel=3)


def find_witness(domain: ToricDomain, target_domain: ToricDomain, target: ConvexGenerator,
                 opts: Optional[SearchOptions] = None,
                 tracker: Optional[SearchTracker] = None) -> Optional[Certificate]:
    """A certificate for ``target``, or None once every decomposition has been ruled out.

    Raises ``NotMinimal`` when the target fails the precondition and
    ``BudgetExceeded`` when the search is cut short; None is only returned
    after the whole finite search space was enumerated.
    """
    opts = opts if opts is not None else SearchOptions()
    _warn_conditional(opts)
    _check_target(target_domain, target, opts)
    tracker = tracker if tracker is not None else SearchTracker(opts.node_budget, opts.verbose)
    certificate = _search(domain, target_domain, target, opts, tracker)
    tracker.summarize(f'witness search | {target}')
    return certificate


def _run_target(domain: ToricDomain, target_domain: ToricDomain, opts: SearchOptions,
                target: ConvexGenerator) -> Tuple[str, Optional[Certificate], Dict[str, int]]:
    tracker = SearchTracker(opts.node_budget, opts.verbose)
    try:
        certificate = _search(domain, target_domain, target, opts, tracker)
    except BudgetExceeded:
        return 'budget', None, tracker.as_dict()
    tracker.summarize(f'witness search | {target}')
    return ('found' if certificate is not None else 'absent'), certificate, tracker.as_dict()


def _is_absent(outcome: Tuple[str, Optional[Certificate], Dict[str, int]]) -> bool:
    return outcome[0] == 'absent'


def check_embedding(domain: ToricDomain, target_domain: ToricDomain, targets: Sequence[ConvexGenerator],
                    opts: Optional[SearchOptions] = None) -> Verdict:
    """Exclude the embedding of ``domain`` into ``target_domain`` through the given targets.

    ``Excluded`` names the first target, in input order, whose search ended
    in definitive absence. ``BudgetExceeded`` is raised only when no target
    excluded the embedding and some search ran out of budget.
    """
    opts = opts if opts is not None else SearchOptions()
    _warn_conditional(opts)
    for target in targets:
        _check_target(target_domain, target, opts)
    run = partial(_run_target, domain, target_domain, opts)
    # searches after the first excluding target are cancelled
    outcomes = parallel_map(run, targets, opts.jobs, stop=_is_absent, verbose=opts.verbose)
    certificates = []
    exhausted = None
    for target, (status, certificate, trace) in zip(targets, outcomes):
        if status == 'absent':
            return Excluded(target, trace, opts.conjectural_mode)
        if status == 'budget' and exhausted is None:
            exhausted = target
        if certificate is not None:
            certificates.append(certificate)
    if exhausted is not None:
        raise BudgetExceeded(opts.node_budget, f'witness search for {exhausted} exceeded its budget of '
                                               f'{opts.node_budget} nodes; nothing was excluded')
    return NotExcluded(tuple(certificates), opts.conjectural_mode)
