from typing import Dict, Iterator, List, Tuple

from sympy.utilities.enumerative import MultisetPartitionTraverser, list_visitor

from toricech.lattice.generator import ConvexGenerator, Direction, from_counts


__all__ = ['enumerate_factorizations', 'count_factorizations']


Part = Tuple[Direction, bool]
Vector = Tuple[int, ...]


def _parts(generator: ConvexGenerator) -> List[Part]:
    # (direction, is_h) in canonical order, e before h within a direction
    parts = []
    for edge in generator.edges:
        if edge.epart:
            parts.append((edge.direction, False))
        if edge.hcount:
            parts.append((edge.direction, True))
    return parts


def _multiplicities(generator: ConvexGenerator, parts: List[Part]) -> List[int]:
    edge_map = generator.edge_map
    return [edge_map[direction][1] if is_h else edge_map[direction][0] - edge_map[direction][1]
            for direction, is_h in parts]


def _generator(vector: Vector, parts: List[Part], extended: bool) -> ConvexGenerator:
    counts: Dict[Direction, Tuple[int, int]] = {}
    for count, (direction, is_h) in zip(vector, parts):
        m, l = counts.get(direction, (0, 0))
        counts[direction] = (m + count, l + count) if is_h else (m + count, l)
    return from_counts(counts, extended)


def _vectors(state, size: int) -> List[Vector]:
    vectors = []
    for block in list_visitor(state, range(size)):
        vector = [0] * size
        for component in block:
            vector[component] += 1
        vectors.append(tuple(vector))
    return sorted(vectors, reverse=True)


def enumerate_factorizations(generator: ConvexGenerator, n: int) -> Iterator[Tuple[ConvexGenerator, ...]]:
    """Yield every unordered decomposition of ``generator`` into ``n`` nonempty factors once.

    The orbit units of the generator, one per (direction, label) part, form a
    multiset whose partitions into exactly ``n`` blocks are the
    decompositions. Factors come in non-increasing order of their count
    vectors; the stream order is the traverser's and depends only on the
    inputs.
    """
    if n < 1 or n > generator.mult:
        return
    if n == 1:
        yield (generator,)
        return
    parts = _parts(generator)
    traverser = MultisetPartitionTraverser()
    for state in traverser.enum_range(_multiplicities(generator, parts), n - 1, n):
        yield tuple(_generator(vector, parts, generator.extended) for vector in _vectors(state, len(parts)))


def count_factorizations(generator: ConvexGenerator, n: int) -> int:
    return sum(1 for _ in enumerate_factorizations(generator, n))
