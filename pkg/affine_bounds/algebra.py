from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .conf import get_setting
from .exceptions import (
    ArityError, ElementRangeError, InvalidAlgebraError, UnknownSymbolError
)

logger = logging.getLogger(__name__)

# tokens a symbol name may not collide with in the term grammar
RESERVED_NAMES = {'x'}
SYMBOL_NAME_RE = re.compile(r'^[^\s()#]+$')


@dataclass(frozen=True)
class Symbol:
    """An operation symbol of a signature."""
    name: str
    arity: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not SYMBOL_NAME_RE.match(self.name):
            raise InvalidAlgebraError('Invalid symbol name %r' % (self.name,))
        if self.name in RESERVED_NAMES:
            raise InvalidAlgebraError('The symbol name "%s" is reserved for the variable' % self.name)
        if isinstance(self.arity, bool) or not isinstance(self.arity, int) or self.arity < 0:
            raise InvalidAlgebraError('Symbol "%s" has invalid arity %r' % (self.name, self.arity))

    def __str__(self):
        return '%s/%d' % (self.name, self.arity)


class Signature(object):
    """
    A finite, ordered family of symbols with unique names.

    The order is the catalog order: every enumeration over symbols in the
    package follows it.
    """
    def __init__(self, symbols: Iterable[Symbol] = ()):
        self.symbols = tuple(symbols)
        self._by_name = {}
        for symbol in self.symbols:
            if symbol.name in self._by_name:
                raise InvalidAlgebraError('Duplicate symbol "%s" in signature' % symbol.name)
            self._by_name[symbol.name] = symbol

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, name):
        if isinstance(name, Symbol):
            return self._by_name.get(name.name) == name
        return name in self._by_name

    def __getitem__(self, name) -> Symbol:
        if isinstance(name, Symbol):
            name = name.name
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbolError('Unknown symbol "%s"' % name)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return 'Signature(%s)' % ', '.join(str(s) for s in self.symbols)

    def of_arity(self, arity):
        return tuple(s for s in self.symbols if s.arity == arity)

    @property
    def max_arity(self):
        return max([s.arity for s in self.symbols], default=0)


def row_major_index(args: Sequence[int], carrier_size: int) -> int:
    """
    Index of `args` in an operation table: sum of a_i * n^(k-i).
    """
    index = 0
    for a in args:
        index = index * carrier_size + a
    return index


class FiniteAlgebra(object):
    """
    A finite algebra given by operation tables.

    Required arguments:
        `carrier_size` -- number of elements; elements are 0..n-1
        `operations` -- a sequence of (Symbol, table) pairs, each table a
                        flat sequence of n^arity carrier indices in
                        row-major order

    Optional arguments:
        `name` -- a label used in reports (default = '')

    Instances are immutable; the translation monoid is cached on first use.
    """
    def __init__(self, carrier_size, operations, name=''):
        if isinstance(carrier_size, bool) or not isinstance(carrier_size, int) or carrier_size < 1:
            raise InvalidAlgebraError('The carrier size must be a positive integer, got %r' % (carrier_size,))

        self.carrier_size = carrier_size
        self.name = name
        max_arity = get_setting('AFFINE_MAX_ARITY')

        symbols = []
        tables = {}
        for symbol, table in operations:
            if symbol.arity > max_arity:
                raise InvalidAlgebraError('Symbol "%s" has arity %d, above the supported maximum %d'
                                          % (symbol.name, symbol.arity, max_arity))
            table = tuple(table)
            expected = carrier_size ** symbol.arity
            if len(table) != expected:
                raise InvalidAlgebraError('Table of "%s" has %d entries, expected %d'
                                          % (symbol.name, len(table), expected))
            for position, entry in enumerate(table):
                if isinstance(entry, bool) or not isinstance(entry, int) or not 0 <= entry < carrier_size:
                    raise InvalidAlgebraError('Table of "%s" has entry %r at position %d outside the carrier'
                                              % (symbol.name, entry, position))
            symbols.append(symbol)
            tables[symbol.name] = table

        self.signature = Signature(symbols)
        self._tables = tables
        self._cache = {}

    def __repr__(self):
        return 'FiniteAlgebra(%r, carrier=%d, %r)' % (self.name, self.carrier_size, self.signature)

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and
                self.carrier_size == other.carrier_size and
                self.signature == other.signature and
                self._tables == other._tables)

    def __hash__(self):
        return hash((self.carrier_size, self.signature))

    @property
    def elements(self):
        return range(self.carrier_size)

    @property
    def operations(self):
        return [(symbol, self._tables[symbol.name]) for symbol in self.signature]

    def symbol(self, name) -> Symbol:
        return self.signature[name]

    def table(self, symbol) -> tuple:
        return self._tables[self.signature[symbol].name]

    def check_element(self, element):
        if isinstance(element, bool) or not isinstance(element, int) or not 0 <= element < self.carrier_size:
            raise ElementRangeError('Element %r is outside the carrier 0..%d' % (element, self.carrier_size - 1))

    def apply(self, symbol, args: Sequence[int]) -> int:
        """
        Evaluates `symbol` on `args`, i.e. the table entry at the
        row-major index of `args`.
        """
        symbol = self.signature[symbol]
        if len(args) != symbol.arity:
            raise ArityError('Symbol "%s" takes %d arguments, got %d' % (symbol.name, symbol.arity, len(args)))
        for a in args:
            self.check_element(a)
        return self._tables[symbol.name][row_major_index(args, self.carrier_size)]

    def evaluate(self, name, args):
        """`apply` without validation, for inner loops."""
        return self._tables[name][row_major_index(args, self.carrier_size)]

    def reduct(self, names, name=None):
        """
        Returns the algebra keeping only the symbols in `names`.
        """
        names = set(n.name if isinstance(n, Symbol) else n for n in names)
        for n in names:
            self.signature[n]
        operations = [(s, t) for s, t in self.operations if s.name in names]
        if name is None:
            name = '%s|%s' % (self.name, ','.join(s.name for s, _ in operations))
        return FiniteAlgebra(self.carrier_size, operations, name=name)

    def with_operation(self, name, arity, table, label=None):
        """
        Returns a copy of the algebra extended by one operation.
        """
        operations = self.operations + [(Symbol(name, arity), table)]
        return FiniteAlgebra(self.carrier_size, operations, name=label if label is not None else self.name)

    def cached(self, key, factory):
        """Memoizes `factory()` under `key` for this algebra."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = factory()
            return value


def apply(algebra: FiniteAlgebra, symbol, args: Sequence[int]) -> int:
    return algebra.apply(symbol, args)


@dataclass(frozen=True)
class LawCheck:
    """
    The outcome of an exhaustive law check.

    It is truthy iff the law holds; otherwise `witness` is the first
    argument tuple (in lexicographic order) violating it.
    """
    law: str
    symbols: tuple
    holds: bool
    witness: Any = None
    note: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def describe(self):
        text = '%s(%s): %s' % (self.law, ', '.join(self.symbols), 'holds' if self.holds else 'fails')
        if self.witness is not None:
            text += ', witness %s' % (self.witness,)
        return text

    def as_dict(self):
        return {
            'law': self.law,
            'symbols': list(self.symbols),
            'holds': self.holds,
            'witness': _jsonable(self.witness),
            'note': {k: _jsonable(v) for k, v in self.note.items()},
        }


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class CyclicMonoid:
    """
    The monoid generated by a unary map f: f^0 = id, f^1, ..., with
    f^(index + period) = f^index.
    """
    index: int
    period: int
    powers: tuple

    @property
    def size(self):
        return self.index + self.period


def cyclic_monoid(algebra: FiniteAlgebra, symbol) -> CyclicMonoid:
    symbol = algebra.symbol(symbol)
    if symbol.arity != 1:
        raise ArityError('Symbol "%s" is not unary' % symbol.name)
    table = algebra.table(symbol)

    current = tuple(algebra.elements)
    seen = {}
    powers = []
    while current not in seen:
        seen[current] = len(powers)
        powers.append(current)
        current = tuple(table[z] for z in current)
    index = seen[current]
    return CyclicMonoid(index=index, period=len(powers) - index, powers=tuple(powers))


def check_associative(algebra: FiniteAlgebra, symbol) -> LawCheck:
    """
    Checks the generalized associative law of `symbol`.

    A unary map is associative when the monoid it generates is finite, which
    always holds on a finite carrier; the index and period are recorded in
    the note. For arity n >= 2 all n bracketings of every (2n-1)-tuple are
    compared.
    """
    symbol = algebra.symbol(symbol)
    if symbol.arity == 0:
        raise ArityError('Associativity is not defined for the constant "%s"' % symbol.name)

    if symbol.arity == 1:
        monoid = cyclic_monoid(algebra, symbol)
        return LawCheck('associative', (symbol.name,), True,
                        note={'index': monoid.index, 'period': monoid.period, 'size': monoid.size})

    n = symbol.arity
    name = symbol.name
    for args in itertools.product(algebra.elements, repeat=2 * n - 1):
        first = None
        for j in range(n):
            inner = algebra.evaluate(name, args[j:j + n])
            value = algebra.evaluate(name, args[:j] + (inner,) + args[j + n:])
            if first is None:
                first = value
            elif value != first:
                return LawCheck('associative', (name,), False, witness=args)
    return LawCheck('associative', (name,), True)


def check_distributes(algebra: FiniteAlgebra, g, f) -> LawCheck:
    """
    Checks whether `g` distributes over `f`.

    For unary `g` this is the full form g(f(a)) = f(g(a_1), ..., g(a_n)) or
    one of the single-slot forms g(f(a)) = f(..., g(a_k), ...); the note
    records which form held. For `g` of arity m >= 2 the law is checked in
    every slot k of `g`, for all b and a.
    """
    g = algebra.symbol(g)
    f = algebra.symbol(f)
    if g.arity < 1 or f.arity < 1:
        raise ArityError('Distributivity needs symbols of arity >= 1, got %s and %s' % (g, f))

    elements = algebra.elements
    evaluate = algebra.evaluate
    if g.arity == 1:
        gt = algebra.table(g)
        forms = [('full', None)] + [('slot', k) for k in range(f.arity)]
        first_failure = None
        for form, k in forms:
            failure = None
            for a in itertools.product(elements, repeat=f.arity):
                left = gt[evaluate(f.name, a)]
                if form == 'full':
                    right = evaluate(f.name, tuple(gt[v] for v in a))
                else:
                    right = evaluate(f.name, a[:k] + (gt[a[k]],) + a[k + 1:])
                if left != right:
                    failure = a
                    break
            if failure is None:
                note = {'form': 'full' if form == 'full' else 'slot %d' % (k + 1)}
                return LawCheck('distributes', (g.name, f.name), True, note=note)
            if first_failure is None:
                first_failure = failure
        return LawCheck('distributes', (g.name, f.name), False, witness={'a': first_failure})

    for k in range(g.arity):
        for b in itertools.product(elements, repeat=g.arity - 1):
            for a in itertools.product(elements, repeat=f.arity):
                left = evaluate(g.name, b[:k] + (evaluate(f.name, a),) + b[k:])
                right = evaluate(f.name, tuple(evaluate(g.name, b[:k] + (v,) + b[k:]) for v in a))
                if left != right:
                    return LawCheck('distributes', (g.name, f.name), False,
                                    witness={'slot': k + 1, 'b': b, 'a': a})
    return LawCheck('distributes', (g.name, f.name), True)


class ChoeOrder(object):
    """
    A linear order on the symbols of arity >= 2, plus the set of unary
    symbols, for the algebra it was built for.
    """
    def __init__(self, algebra: FiniteAlgebra, order: Sequence[str]):
        order = tuple(s.name if isinstance(s, Symbol) else s for s in order)
        expected = set(s.name for s in algebra.signature if s.arity >= 2)
        for name in order:
            if name not in algebra.signature:
                raise InvalidAlgebraError('Unknown symbol "%s" in Choe order' % name)
        if len(set(order)) != len(order) or set(order) != expected:
            raise InvalidAlgebraError('The Choe order %s is not a permutation of the symbols of arity >= 2 %s'
                                      % (list(order), sorted(expected)))
        self.order = order
        self.unary = frozenset(s.name for s in algebra.signature if s.arity == 1)

    def __repr__(self):
        return 'ChoeOrder(%s)' % ' < '.join(self.order)


@dataclass(frozen=True)
class LawReport:
    """A conjunction of law checks."""
    checks: tuple

    @property
    def holds(self):
        return all(self.checks)

    @property
    def violations(self):
        return [check for check in self.checks if not check]

    def __bool__(self):
        return self.holds


def check_choe_distributive(algebra: FiniteAlgebra, order: ChoeOrder, require_associative=False) -> LawReport:
    """
    Checks that `algebra` is distributive with respect to `order`:

     1. for sigma < pi in the order, pi distributes over sigma;
     2. every unary symbol distributes over every symbol of arity >= 1.

    With `require_associative`, the associativity of every symbol of
    arity >= 1 is added to the report.
    """
    checks = []
    for i, sigma in enumerate(order.order):
        for pi in order.order[i + 1:]:
            checks.append(check_distributes(algebra, pi, sigma))

    operations = [s.name for s in algebra.signature if s.arity >= 1]
    for omega in sorted(order.unary, key=operations.index):
        for sigma in operations:
            checks.append(check_distributes(algebra, omega, sigma))

    if require_associative:
        for name in operations:
            checks.append(check_associative(algebra, name))

    report = LawReport(tuple(checks))
    logger.debug('Choe check of %s with %r: %d laws, %d violated',
                 algebra.name, order, len(checks), len(report.violations))
    return report


def is_isomorphic(first: FiniteAlgebra, second: FiniteAlgebra) -> bool:
    """
    Brute-force isomorphism test of two algebras of the same signature.
    """
    if first.signature != second.signature or first.carrier_size != second.carrier_size:
        return False
    n = first.carrier_size
    if n > get_setting('AFFINE_LATTICE_MAX_CARRIER'):
        raise InvalidAlgebraError('Isomorphism search is limited to carriers of size <= %d'
                                  % get_setting('AFFINE_LATTICE_MAX_CARRIER'))

    for bijection in itertools.permutations(range(n)):
        for symbol in first.signature:
            if any(bijection[first.evaluate(symbol.name, args)] !=
                   second.evaluate(symbol.name, tuple(bijection[a] for a in args))
                   for args in itertools.product(range(n), repeat=symbol.arity)):
                break
        else:
            return True
    return False
