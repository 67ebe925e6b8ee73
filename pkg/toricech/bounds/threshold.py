from dataclasses import dataclass, replace
from fractions import Fraction
from functools import partial
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import csv
import json
import sys

from toricech.bounds.families import TargetFamily, reference_bound, volume_scale_squared
from toricech.core.errors import MonotonicityError, NoBracket
from toricech.core.parallel import parallel_map
from toricech.core.rational import as_rational, capped_midpoint, decimal_string, format_rational
from toricech.domains.toric import Polydisk, ToricDomain, format_domain, inclusion_scale
from toricech.lattice.generator import ConvexGenerator, format_product
from toricech.obstruct.witness import SearchOptions, check_embedding


__all__ = [
    'DEFAULT_TOLERANCE',
    'Threshold',
    'threshold_search',
    'exclusion_threshold',
    'ScanRow',
    'scan',
    'SCAN_COLUMNS',
    'write_csv',
    'write_json_lines',
]


DEFAULT_TOLERANCE = Fraction(1, 1000)

# halvings of the inclusion scale tried before giving up on a lower bracket
MAX_HALVINGS = 32


@dataclass(frozen=True)
class Threshold:
    value: Fraction
    lo: Fraction
    hi: Fraction
    target: Optional[ConvexGenerator]
    steps: int


class _Verdicts:

    def __init__(self, domain: ToricDomain, family: TargetFamily, targets: Sequence[ConvexGenerator],
                 opts: SearchOptions):
        self.domain = domain
        self.family = family
        self.targets = list(targets)
        self.opts = opts
        self.seen: Dict[Fraction, Optional[ConvexGenerator]] = {}

    def excluding(self, c: Fraction) -> Optional[ConvexGenerator]:
        """The target excluding the embedding at scale c, or None."""
        if c not in self.seen:
            verdict = check_embedding(self.domain, self.family.member(c), self.targets, self.opts)
            self.seen[c] = verdict.target if verdict.excluded else None
            if self.opts.verbose:
                state = f'excluded by {verdict.target}' if verdict.excluded else 'not excluded'
                print(f'threshold | c = {format_rational(c)} {state}', file=sys.stderr, flush=True)
        return self.seen[c]

    def excluded(self, c: Fraction) -> bool:
        return self.excluding(c) is not None


def threshold_search(domain: ToricDomain, family: TargetFamily, targets: Optional[Sequence[ConvexGenerator]] = None,
                     d_max: Optional[int] = None, tol: Fraction = DEFAULT_TOLERANCE,
                     opts: Optional[SearchOptions] = None) -> Threshold:
    """Bisect the family scale between an excluded and a not excluded member.

    The returned value ``v`` is excluded at ``v - tol`` and not excluded at
    ``v + tol``, both re-checked. Three evenly spaced scales across the
    initial bracket must agree with ``v``, else ``MonotonicityError``.
    """
    opts = opts if opts is not None else SearchOptions()
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError(f'tolerance must be positive, got {tol}')
    if targets is None:
        if d_max is None:
            raise ValueError('pass targets or d_max')
        targets = family.targets(d_max)
    verdicts = _Verdicts(domain, family, targets, opts)

    hi = inclusion_scale(domain, family.unit)
    if verdicts.excluded(hi):
        raise NoBracket(f'{format_domain(domain)} is excluded from {format_domain(family.member(hi))} '
                        f'although it is contained in it')
    lo = hi / 2
    for _ in range(MAX_HALVINGS):
        if verdicts.excluded(lo):
            break
        hi, lo = lo, lo / 2
    else:
        raise NoBracket(f'no excluded scale of {family} found down to c = {format_rational(lo)}')
    bracket = (lo, hi)

    steps = 0
    while hi - lo > tol:
        mid = capped_midpoint(lo, hi)
        if verdicts.excluded(mid):
            lo = mid
        else:
            hi = mid
        steps += 1
    value = capped_midpoint(lo, hi)

    if not verdicts.excluded(value - tol):
        raise MonotonicityError(f'c = {format_rational(value - tol)} is not excluded although '
                                f'c = {format_rational(lo)} is')
    if verdicts.excluded(value + tol):
        raise MonotonicityError(f'c = {format_rational(value + tol)} is excluded although '
                                f'c = {format_rational(hi)} is not')
    start, stop = bracket
    for k in (1, 2, 3):
        c = start + (stop - start) * k / 4
        if abs(c - value) <= tol:
            continue
        if verdicts.excluded(c) != (c < value):
            raise MonotonicityError(f'verdict at c = {format_rational(c)} contradicts the threshold '
                                    f'{format_rational(value)}')
    return Threshold(value, lo, hi, verdicts.excluding(lo), steps)


def exclusion_threshold(domain: ToricDomain, family: TargetFamily,
                        targets: Optional[Sequence[ConvexGenerator]] = None, d_max: Optional[int] = None,
                        tol: Fraction = DEFAULT_TOLERANCE, opts: Optional[SearchOptions] = None) -> Fraction:
    return threshold_search(domain, family, targets, d_max, tol, opts).value


@dataclass(frozen=True)
class ScanRow:
    a: Fraction
    bound: Fraction
    target: Optional[ConvexGenerator]
    volume_squared: Fraction
    reference: Optional[Fraction]

    @property
    def exceeds_volume(self) -> bool:
        # c^2 against the volume floor, no square roots
        return self.bound * self.bound > self.volume_squared

    def as_dict(self) -> Dict[str, Any]:
        return {
            'a': format_rational(self.a),
            'bound': format_rational(self.bound),
            'bound_decimal': decimal_string(self.bound),
            'target': format_product(self.target) if self.target is not None else '',
            'volume_squared': format_rational(self.volume_squared),
            'exceeds_volume': self.exceeds_volume,
            'reference': format_rational(self.reference) if self.reference is not None else '',
            'reference_decimal': decimal_string(self.reference) if self.reference is not None else '',
        }


SCAN_COLUMNS = ('a', 'bound', 'bound_decimal', 'target', 'volume_squared', 'exceeds_volume',
                'reference', 'reference_decimal')


def _scan_row(family: TargetFamily, d_max: int, tol: Fraction, opts: SearchOptions, a: Fraction) -> ScanRow:
    domain = Polydisk(a, 1)
    threshold = threshold_search(domain, family, d_max=d_max, tol=tol, opts=opts)
    return ScanRow(a, threshold.value, threshold.target, volume_scale_squared(domain, family),
                   reference_bound(a, family))


def scan(a_grid: Iterable[Fraction], family: TargetFamily, d_max: int, tol: Fraction = DEFAULT_TOLERANCE,
         opts: Optional[SearchOptions] = None, jobs: Optional[int] = 1) -> List[ScanRow]:
    """One threshold row per ``a`` for P(a, 1), in grid order."""
    opts = opts if opts is not None else SearchOptions()
    # rows run in parallel, each row's searches run serially
    row_opts = replace(opts, jobs=1)
    grid = [as_rational(a) for a in a_grid]
    row = partial(_scan_row, family, d_max, as_rational(tol), row_opts)
    return parallel_map(row, grid, jobs, verbose=opts.verbose)


def write_csv(rows: Iterable[ScanRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=SCAN_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        record = row.as_dict()
        record['exceeds_volume'] = 'true' if record['exceeds_volume'] else 'false'
        writer.writerow(record)


def write_json_lines(rows: Iterable[ScanRow], stream: TextIO) -> None:
    for row in rows:
        stream.write(json.dumps({'schema': 'toricech.scan/1', **row.as_dict()}) + '\n')
