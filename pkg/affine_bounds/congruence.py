from __future__ import annotations

import itertools
import logging
from functools import reduce

from .algebra import FiniteAlgebra, Symbol
from .conf import get_setting
from .exceptions import BudgetExceededError, InvalidAlgebraError, NotACongruenceError
from .translation import translation_monoid

logger = logging.getLogger(__name__)


class Partition(object):
    """
    An equivalence relation on 0..n-1, stored in normal form: `block_id[i]`
    is the smallest element of the block of i.

    Partitions are ordered by refinement: p <= q iff every block of p lies
    inside a block of q (p is contained in q as a relation).
    """
    __slots__ = ('block_id',)

    def __init__(self, block_id):
        block_id = tuple(block_id)
        for i, r in enumerate(block_id):
            if not isinstance(r, int) or not 0 <= r <= i or block_id[r] != r:
                raise InvalidAlgebraError('%r is not a partition in normal form' % (block_id,))
        self.block_id = block_id

    @classmethod
    def from_labels(cls, labels):
        """Builds the partition whose blocks are the positions sharing a label."""
        first = {}
        return cls(first.setdefault(label, i) for i, label in enumerate(labels))

    @classmethod
    def from_blocks(cls, blocks, n=None):
        """
        Builds a partition from a list of blocks; elements of 0..n-1 missing
        from every block become singletons.
        """
        blocks = [sorted(set(block)) for block in blocks]
        members = [a for block in blocks for a in block]
        if len(members) != len(set(members)):
            raise InvalidAlgebraError('Blocks %r overlap' % (blocks,))
        if n is None:
            n = max(members, default=-1) + 1
        if any(not isinstance(a, int) or not 0 <= a < n for a in members):
            raise InvalidAlgebraError('Blocks %r leave the carrier 0..%d' % (blocks, n - 1))
        labels = list(range(n))
        for block in blocks:
            for a in block:
                labels[a] = block[0]
        return cls(labels)

    @classmethod
    def discrete(cls, n):
        return cls(range(n))

    @classmethod
    def total(cls, n):
        return cls([0] * n)

    @property
    def carrier_size(self):
        return len(self.block_id)

    def __len__(self):
        return len(self.block_id)

    @property
    def blocks(self):
        blocks = {}
        for i, r in enumerate(self.block_id):
            blocks.setdefault(r, []).append(i)
        return [blocks[r] for r in sorted(blocks)]

    @property
    def block_count(self):
        return sum(1 for i, r in enumerate(self.block_id) if i == r)

    @property
    def is_discrete(self):
        return self.block_count == len(self)

    @property
    def is_total(self):
        return self.block_count <= 1

    def related(self, a, b):
        return self.block_id[a] == self.block_id[b]

    def pairs(self):
        """The relation as (a, b) pairs with a < b."""
        return [(a, b) for block in self.blocks for a, b in itertools.combinations(block, 2)]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.block_id == other.block_id

    def __hash__(self):
        return hash(self.block_id)

    def __le__(self, other):
        self._check_size(other)
        return all(other.block_id[i] == other.block_id[r] for i, r in enumerate(self.block_id))

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self != other and self <= other

    def __gt__(self, other):
        return other < self

    def __repr__(self):
        return '%s(%r)' % (type(self).__name__, self.blocks)

    def _check_size(self, other):
        if len(self) != len(other):
            raise InvalidAlgebraError('Partitions of carriers of size %d and %d' % (len(self), len(other)))

    def join(self, other) -> 'Partition':
        """The smallest equivalence containing both."""
        self._check_size(other)
        forest = _UnionFind(len(self))
        for i in range(len(self)):
            forest.union(i, self.block_id[i])
            forest.union(i, other.block_id[i])
        return Partition.from_labels(forest.find(i) for i in range(len(self)))

    def meet(self, other) -> 'Partition':
        self._check_size(other)
        return Partition.from_labels(zip(self.block_id, other.block_id))


class Congruence(Partition):
    """
    A partition known to be invariant under the translation monoid of the
    algebra it was computed for.
    """
    __slots__ = ('verified',)

    def __init__(self, block_id, verified=True):
        super(Congruence, self).__init__(block_id)
        self.verified = verified

    @classmethod
    def of(cls, partition, verified=True):
        return cls(partition.block_id, verified=verified)


class _UnionFind(object):
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _check_partition(algebra, partition):
    if len(partition) != algebra.carrier_size:
        raise InvalidAlgebraError('A partition of %d elements does not fit the carrier of size %d'
                                  % (len(partition), algebra.carrier_size))


def _check_carrier(algebra, setting, purpose):
    limit = get_setting(setting)
    if algebra.carrier_size > limit:
        raise BudgetExceededError('%s is limited to carriers of size <= %d, got %d'
                                  % (purpose, limit, algebra.carrier_size), limit)


def is_congruence(algebra: FiniteAlgebra, partition: Partition) -> bool:
    """
    True iff every element f of M(A) maps related elements to related
    elements. It suffices to compare each element with the representative
    of its block.
    """
    _check_partition(algebra, partition)
    block_id = partition.block_id
    for f in translation_monoid(algebra):
        image = f.image
        for i, r in enumerate(block_id):
            if block_id[image[i]] != block_id[image[r]]:
                return False
    return True


def is_congruence_direct(algebra: FiniteAlgebra, partition: Partition) -> bool:
    """
    Checks compatibility with every operation from the definition: changing
    one argument within its block never changes the block of the value.
    """
    _check_partition(algebra, partition)
    block_id = partition.block_id
    for symbol in algebra.signature:
        for slot in range(symbol.arity):
            for rest in itertools.product(algebra.elements, repeat=symbol.arity - 1):
                for i, r in enumerate(block_id):
                    a = algebra.evaluate(symbol.name, rest[:slot] + (i,) + rest[slot:])
                    b = algebra.evaluate(symbol.name, rest[:slot] + (r,) + rest[slot:])
                    if block_id[a] != block_id[b]:
                        return False
    return True


def generate_congruence(algebra: FiniteAlgebra, pairs) -> Congruence:
    """
    The smallest congruence containing `pairs`.

    The images (f(a), f(b)) of the generating pairs under M(A) form a
    symmetric set closed under M(A), so its equivalence closure is already
    a congruence.
    """
    forest = _UnionFind(algebra.carrier_size)
    pairs = list(pairs)
    for a, b in pairs:
        algebra.check_element(a)
        algebra.check_element(b)
    monoid = translation_monoid(algebra)
    for a, b in pairs:
        if a == b:
            continue
        for f in monoid:
            forest.union(f.image[a], f.image[b])
    return Congruence.of(Partition.from_labels(forest.find(i) for i in algebra.elements))


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int) -> Congruence:
    congruence = generate_congruence(algebra, [(a, b)])
    logger.debug('theta(%d, %d) of %s has %d blocks', a, b, algebra.name, congruence.block_count)
    return congruence


def largest_congruence_below(algebra: FiniteAlgebra, partition: Partition) -> Congruence:
    """
    The largest congruence contained in `partition`: a and b are related
    iff f(a) and f(b) are related by `partition` for every f in M(A).
    """
    _check_partition(algebra, partition)
    block_id = partition.block_id
    monoid = translation_monoid(algebra)
    profiles = [tuple(block_id[f.image[a]] for f in monoid) for a in algebra.elements]
    return Congruence.of(Partition.from_labels(profiles))


def join_congruences(algebra: FiniteAlgebra, first: Partition, second: Partition) -> Congruence:
    return generate_congruence(algebra, first.pairs() + second.pairs())


def _lattice_key(partition):
    # finest first, the total relation last
    return (-partition.block_count, partition.block_id)


def congruence_lattice(algebra: FiniteAlgebra):
    """
    Lists all congruences, finest first.

    Every congruence is the join of the principal congruences of its pairs,
    so the lattice is the closure of the principal congruences and the
    diagonal under binary joins.
    """
    _check_carrier(algebra, 'AFFINE_LATTICE_MAX_CARRIER', 'The congruence lattice')
    n = algebra.carrier_size
    found = {Congruence.of(Partition.discrete(n))}
    found.update(principal_congruence(algebra, a, b) for a, b in itertools.combinations(range(n), 2))

    frontier = list(found)
    while frontier:
        fresh = []
        for first in frontier:
            for second in list(found):
                joined = Congruence.of(first.join(second))
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
        frontier = fresh

    lattice = sorted(found, key=_lattice_key)
    logger.debug('Con(%s) has %d elements', algebra.name, len(lattice))
    return lattice


def quotient(algebra: FiniteAlgebra, congruence: Partition, name=None) -> FiniteAlgebra:
    """
    The quotient algebra A / congruence.

    Blocks ordered by smallest member are the new elements 0..k-1; every
    table is computed on representatives and then re-checked against all
    argument tuples of the original algebra.
    """
    _check_partition(algebra, congruence)
    if not is_congruence(algebra, congruence):
        raise NotACongruenceError('%r is not a congruence of %s' % (Partition(congruence.block_id), algebra.name))

    block_id = congruence.block_id
    representatives = [b[0] for b in congruence.blocks]
    index = {r: i for i, r in enumerate(representatives)}
    size = len(representatives)

    operations = []
    for symbol in algebra.signature:
        table = [index[block_id[algebra.evaluate(symbol.name, tuple(representatives[i] for i in args))]]
                 for args in itertools.product(range(size), repeat=symbol.arity)]
        for args in itertools.product(algebra.elements, repeat=symbol.arity):
            classes = tuple(index[block_id[a]] for a in args)
            position = 0
            for c in classes:
                position = position * size + c
            if table[position] != index[block_id[algebra.evaluate(symbol.name, args)]]:
                raise NotACongruenceError('The table of "%s" depends on the choice of representatives at %r'
                                          % (symbol.name, args))
        operations.append((Symbol(symbol.name, symbol.arity), table))

    if name is None:
        name = '%s/%s' % (algebra.name, congruence.blocks)
    return FiniteAlgebra(size, operations, name=name)


def is_simple(algebra: FiniteAlgebra) -> bool:
    """
    True iff the diagonal and the total relation are the only congruences
    and they differ, i.e. every pair of distinct elements generates the
    total relation. One-element algebras are not simple.
    """
    _check_carrier(algebra, 'AFFINE_LATTICE_MAX_CARRIER', 'The simplicity test')
    n = algebra.carrier_size
    if n < 2:
        return False
    return all(principal_congruence(algebra, a, b).is_total for a, b in itertools.combinations(range(n), 2))


def all_partitions(n):
    """
    Generates every partition of 0..n-1 through restricted growth strings,
    in lexicographic order of the strings.
    """
    if n == 0:
        yield Partition(())
        return
    labels = [0] * n
    maxima = [0] * n

    def extend(position):
        if position == n:
            yield Partition.from_labels(labels)
            return
        for label in range(maxima[position - 1] + 2):
            labels[position] = label
            maxima[position] = max(maxima[position - 1], label)
            yield from extend(position + 1)

    yield from extend(1)


def congruence_lattice_scan(algebra: FiniteAlgebra):
    """All congruences by filtering every partition with the definition."""
    _check_carrier(algebra, 'AFFINE_ORACLE_MAX_CARRIER', 'The partition scan')
    return sorted((Congruence.of(p) for p in all_partitions(algebra.carrier_size)
                   if is_congruence_direct(algebra, p)), key=_lattice_key)


def principal_congruence_scan(algebra: FiniteAlgebra, a: int, b: int) -> Congruence:
    """The meet of every congruence relating a and b."""
    containing = [c for c in congruence_lattice_scan(algebra) if c.related(a, b)]
    return Congruence.of(reduce(Partition.meet, containing))


def largest_congruence_below_scan(algebra: FiniteAlgebra, partition: Partition) -> Congruence:
    """The join of every congruence contained in `partition`."""
    below = [c for c in congruence_lattice_scan(algebra) if c <= partition]
    return Congruence.of(reduce(Partition.join, below))
