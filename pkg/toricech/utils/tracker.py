from typing import Dict, Optional
from collections import defaultdict

import sys

from toricech.core.errors import BudgetExceeded


__all__ = ['Meter', 'SearchTracker']


class Meter:

    def __init__(self):
        self.total = 0

    def update(self, value):
        self.total += value


class SearchTracker:
    """Counts search nodes against a budget and reports progress on stderr.

    ``tick`` is called once per visited node; it is the only call on the hot
    path, so it touches a plain integer rather than a meter.
    """

    def __init__(self, budget: Optional[int] = None, verbose: bool = False,
                 delimiter: Optional[str] = None, refresh: int = 50_000):
        self.trackers = defaultdict(Meter)
        self.budget = budget
        self.verbose = verbose
        self.nodes = 0
        self.refresh = refresh
        self.delimiter = delimiter if delimiter is not None else ' ' * 20
        self.header = ''

    def __getattr__(self, item):
        if item in self.__dict__.get('trackers', {}):
            return self.trackers[item]
        if item in self.__dict__:
            return self.__dict__[item]
        raise AttributeError(f'`{type(self).__name__}` has no attribute `{item}`')

    def tick(self, n: int = 1):
        self.nodes += n
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        if self.verbose and self.nodes % self.refresh == 0:
            self.display(self.header)

    def update(self, **kwargs):
        for k, v in kwargs.items():
            self.trackers[k].update(v)

    def as_dict(self) -> Dict[str, int]:
        summary = {'nodes': self.nodes}
        for k in sorted(self.trackers):
            summary[k] = self.trackers[k].total
        return summary

    def display(self, header: Optional[str] = ''):
        message_buffer = [header, f'nodes: {self.nodes}']
        for k, v in self.trackers.items():
            message_buffer.append(f'{k}: {v.total}')
        message = ' - '.join(m for m in message_buffer if m)
        print(f'\r{message}', end=self.delimiter, file=sys.stderr, flush=True)

    def summarize(self, header: Optional[str] = ''):
        if not self.verbose:
            return
        message_buffer = [header, f'nodes: {self.nodes}']
        for k, v in self.trackers.items():
            message_buffer.append(f'{k}: {v.total}')
        message = ' - '.join(m for m in message_buffer if m)
        print(f'\r{message}', end=f'{self.delimiter}\n', file=sys.stderr, flush=True)
