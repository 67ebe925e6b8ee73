from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Any, Dict, Iterator, List, Tuple

import json

from toricech.core.errors import CertificateError, HLabeledTarget, InvalidDomain, InvalidEdge, ParseError, \
    SharedHyperbolic
from toricech.domains.toric import ToricDomain, format_domain, parse_domain
from toricech.lattice.generator import ConvexGenerator, format_product, parse_product, product_of
from toricech.obstruct.relation import le, le_weak, shares_elliptic


__all__ = [
    'CERTIFICATE_SCHEMA',
    'CRITERIA',
    'Certificate',
    'verify_certificate',
]


CERTIFICATE_SCHEMA = 'toricech.certificate/1'
CRITERIA = ('full', 'first-bullet', 'weak')

# beyond this many pairs subsets are counted through pair multiplicities
RAW_SUBSET_LIMIT = 12

Pair = Tuple[ConvexGenerator, ConvexGenerator]


@dataclass(frozen=True)
class Certificate:
    """Paired factorizations witnessing that a target generator is not obstructed.

    Construction runs ``verify_certificate``, so every instance is valid.
    """

    domain: ToricDomain
    target: ToricDomain
    target_generator: ConvexGenerator
    pairs: Tuple[Pair, ...]
    conditional: bool = False
    criterion: str = 'full'

    def __post_init__(self) -> None:
        object.__setattr__(self, 'pairs', tuple((first, second) for first, second in self.pairs))
        verify_certificate(self)

    @cached_property
    def lam(self) -> ConvexGenerator:
        return product_of([first for first, _ in self.pairs])

    @property
    def n(self) -> int:
        return len(self.pairs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema': CERTIFICATE_SCHEMA,
            'domain': format_domain(self.domain),
            'target': format_domain(self.target),
            'target_generator': format_product(self.target_generator),
            'lambda': format_product(self.lam),
            'n': self.n,
            'pairs': [{'lambda': format_product(first), 'target': format_product(second)}
                      for first, second in self.pairs],
            'conditional': self.conditional,
            'criterion': self.criterion,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> 'Certificate':
        if document.get('schema') != CERTIFICATE_SCHEMA:
            raise CertificateError(f'unknown certificate schema {document.get("schema")!r}')
        try:
            certificate = cls(
                domain=parse_domain(document['domain']),
                target=parse_domain(document['target']),
                target_generator=parse_product(document['target_generator']),
                pairs=tuple((parse_product(pair['lambda']), parse_product(pair['target']))
                            for pair in document['pairs']),
                conditional=bool(document.get('conditional', False)),
                criterion=document.get('criterion', 'full'),
            )
        except (KeyError, TypeError) as e:
            raise CertificateError(f'malformed certificate document: {e}') from e
        except (ParseError, InvalidEdge, InvalidDomain, SharedHyperbolic) as e:
            raise CertificateError(f'certificate does not parse: {e}') from e
        try:
            recorded = parse_product(document['lambda']) if 'lambda' in document else certificate.lam
        except (ParseError, InvalidEdge) as e:
            raise CertificateError(f'recorded lambda does not parse: {e}') from e
        if recorded != certificate.lam:
            raise CertificateError(f'recorded lambda {document["lambda"]} is not the product of the pairs '
                                   f'({certificate.lam})')
        if 'n' in document and document['n'] != certificate.n:
            raise CertificateError(f'recorded n = {document["n"]} but the certificate has {certificate.n} pairs')
        return certificate

    @classmethod
    def from_json(cls, text: str) -> 'Certificate':
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise CertificateError(f'certificate is not valid JSON: {e}') from e
        if not isinstance(document, dict):
            raise CertificateError('certificate document must be a JSON object')
        return cls.from_dict(document)


def _subsets(pairs: Tuple[Pair, ...]) -> Iterator[List[Pair]]:
    if len(pairs) <= RAW_SUBSET_LIMIT:
        for size in range(len(pairs) + 1):
            for chosen in combinations(pairs, size):
                yield list(chosen)
        return
    # subsets agree up to which copies of identical pairs they take
    counts = Counter(pairs)
    distinct = list(counts)
    for multiplicities in product(*(range(counts[pair] + 1) for pair in distinct)):
        yield [pair for pair, k in zip(distinct, multiplicities) for _ in range(k)]


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def verify_certificate(certificate: Certificate) -> None:
    """Re-check every condition a certificate claims; raises ``CertificateError``."""
    pairs = certificate.pairs
    _check(certificate.criterion in CRITERIA, f'unknown criterion {certificate.criterion!r}')
    _check(all(not first.is_one and not second.is_one for first, second in pairs),
           'certificate factors must be nonempty')
    try:
        targets = product_of([second for _, second in pairs])
        lam = product_of([first for first, _ in pairs])
    except SharedHyperbolic as e:
        raise CertificateError(f'factors do not multiply: {e}') from e
    _check(targets == certificate.target_generator,
           f'target factors multiply to {targets}, not {certificate.target_generator}')
    _check(lam.index == targets.index, f'I({lam}) = {lam.index} differs from I({targets}) = {targets.index}')

    relation = le_weak if certificate.criterion == 'weak' else le
    if certificate.criterion == 'weak':
        _check(len(pairs) <= 1, 'a weak certificate has a single pair')
    for first, second in pairs:
        try:
            related = relation(certificate.domain, certificate.target, first, second)
        except HLabeledTarget as e:
            raise CertificateError(str(e)) from e
        _check(related, f'{first} is not related to {second}')

    if certificate.criterion != 'full':
        return
    for (i, (first, second)), (j, (other, other_target)) in combinations(enumerate(pairs), 2):
        if (first, second) != (other, other_target):
            _check(not shares_elliptic(first, other),
                   f'distinct pairs {i} and {j} share an elliptic orbit: {first} and {other}')
    for subset in _subsets(pairs):
        lam_part = product_of([first for first, _ in subset])
        target_part = product_of([second for _, second in subset])
        _check(lam_part.index == target_part.index,
               f'subproducts {lam_part} and {target_part} have indices {lam_part.index} and {target_part.index}')
