from __future__ import annotations

import itertools
import math

from .algebra import FiniteAlgebra, Symbol
from .exceptions import CatalogError

# boolean algebras beyond 2^4 elements are not desk scale
BOOLEAN_MAX_ATOMS = 4
SYM_GROUP_MAX_DEGREE = 4
DIVISOR_LATTICE_MAX = 10 ** 4

MASK_64 = (1 << 64) - 1


class LinearCongruentialGenerator(object):
    """
    The 64-bit linear congruential generator used for every seeded fixture:

        state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64

    Each draw returns the high 31 bits of the new state, so fixtures built
    from a seed reproduce in any implementation.
    """
    multiplier = 6364136223846793005
    increment = 1442695040888963407

    def __init__(self, seed):
        self.state = seed & MASK_64

    def next(self):
        self.state = (self.multiplier * self.state + self.increment) & MASK_64
        return self.state >> 33

    def randrange(self, n):
        return self.next() % n

    def choice(self, sequence):
        return sequence[self.randrange(len(sequence))]


def _tabulate(n, arity, function):
    return [function(*args) for args in itertools.product(range(n), repeat=arity)]


def _require(condition, message):
    if not condition:
        raise CatalogError(message)


def _params(kind, params, count):
    _require(len(params) == count,
             'Builtin "%s" takes %d parameter(s), got %d' % (kind, count, len(params)))
    for p in params:
        _require(isinstance(p, int) and not isinstance(p, bool) and p >= 0,
                 'Parameters of "%s" must be natural numbers, got %r' % (kind, p))
    return params


def zn_ring(n):
    _require(n >= 1, 'zn_ring requires n >= 1')
    return FiniteAlgebra(n, [
        (Symbol('+', 2), _tabulate(n, 2, lambda a, b: (a + b) % n)),
        (Symbol('*', 2), _tabulate(n, 2, lambda a, b: (a * b) % n)),
    ], name='zn_ring:%d' % n)


def zn_group(n):
    _require(n >= 1, 'zn_group requires n >= 1')
    return FiniteAlgebra(n, [
        (Symbol('+', 2), _tabulate(n, 2, lambda a, b: (a + b) % n)),
        (Symbol('zero', 0), [0]),
        (Symbol('neg', 1), _tabulate(n, 1, lambda a: (-a) % n)),
    ], name='zn_group:%d' % n)


def sym_group(n):
    """
    The symmetric group on n points; elements are the permutations in
    lexicographic order, so element 0 is the identity.
    """
    _require(1 <= n <= SYM_GROUP_MAX_DEGREE, 'sym_group requires 1 <= n <= %d' % SYM_GROUP_MAX_DEGREE)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(i, j):
        p, q = perms[i], perms[j]
        return index[tuple(p[q[k]] for k in range(n))]

    def inverse(i):
        p = perms[i]
        inv = [0] * n
        for k, v in enumerate(p):
            inv[v] = k
        return index[tuple(inv)]

    size = len(perms)
    return FiniteAlgebra(size, [
        (Symbol('*', 2), _tabulate(size, 2, compose)),
        (Symbol('e', 0), [0]),
        (Symbol('inv', 1), _tabulate(size, 1, inverse)),
    ], name='sym_group:%d' % n)


def left_zero_semigroup(n):
    _require(n >= 1, 'left_zero_semigroup requires n >= 1')
    return FiniteAlgebra(n, [
        (Symbol('*', 2), _tabulate(n, 2, lambda a, b: a)),
    ], name='left_zero_semigroup:%d' % n)


def divisor_lattice(n):
    """The divisors of n (ascending) under lcm (join) and gcd (meet)."""
    _require(1 <= n <= DIVISOR_LATTICE_MAX, 'divisor_lattice requires 1 <= n <= %d' % DIVISOR_LATTICE_MAX)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    index = {d: i for i, d in enumerate(divisors)}
    size = len(divisors)

    def lcm(i, j):
        a, b = divisors[i], divisors[j]
        return index[a * b // math.gcd(a, b)]

    def gcd(i, j):
        return index[math.gcd(divisors[i], divisors[j])]

    return FiniteAlgebra(size, [
        (Symbol('join', 2), _tabulate(size, 2, lcm)),
        (Symbol('meet', 2), _tabulate(size, 2, gcd)),
    ], name='divisor_lattice:%d' % n)


def boolean_algebra(k):
    """The subsets of a k-set, encoded as bit masks."""
    _require(k <= BOOLEAN_MAX_ATOMS, 'boolean_algebra with %d atoms is over desk scale (max %d)'
             % (k, BOOLEAN_MAX_ATOMS))
    size = 2 ** k
    top = size - 1
    return FiniteAlgebra(size, [
        (Symbol('or', 2), _tabulate(size, 2, lambda a, b: a | b)),
        (Symbol('and', 2), _tabulate(size, 2, lambda a, b: a & b)),
        (Symbol('not', 1), _tabulate(size, 1, lambda a: top ^ a)),
        (Symbol('bot', 0), [0]),
        (Symbol('top', 0), [top]),
    ], name='boolean_algebra:%d' % k)


def boolean_semiring():
    return FiniteAlgebra(2, [
        (Symbol('+', 2), _tabulate(2, 2, lambda a, b: a | b)),
        (Symbol('*', 2), _tabulate(2, 2, lambda a, b: a & b)),
    ], name='boolean_semiring')


def boolean_semimodule(k):
    """
    The semimodule B^k over the Boolean semiring B: addition is the
    componentwise or, and each semiring element r acts by the unary
    symbol `r<r>` (r0 sends everything to 0, r1 is the identity).
    """
    _require(1 <= k <= BOOLEAN_MAX_ATOMS, 'boolean_semimodule requires 1 <= k <= %d' % BOOLEAN_MAX_ATOMS)
    size = 2 ** k
    return FiniteAlgebra(size, [
        (Symbol('+', 2), _tabulate(size, 2, lambda a, b: a | b)),
        (Symbol('r0', 1), _tabulate(size, 1, lambda a: 0)),
        (Symbol('r1', 1), _tabulate(size, 1, lambda a: a)),
    ], name='boolean_semimodule:%d' % k)


def random_magma(n, seed):
    _require(n >= 1, 'random_magma requires n >= 1')
    generator = LinearCongruentialGenerator(seed)
    return FiniteAlgebra(n, [
        (Symbol('*', 2), [generator.randrange(n) for _ in range(n * n)]),
    ], name='random_magma:%d,%d' % (n, seed))


def random_unary(n, seed):
    _require(n >= 1, 'random_unary requires n >= 1')
    generator = LinearCongruentialGenerator(seed)
    return FiniteAlgebra(n, [
        (Symbol('f', 1), [generator.randrange(n) for _ in range(n)]),
    ], name='random_unary:%d,%d' % (n, seed))


def successor_chain(n, m):
    """
    The unary algebra on 0..n-1 with s(i) = i + 1 for i < n - 1 and
    s(n - 1) = m: a tail of length m running into a cycle of length n - m.
    """
    _require(n >= 1 and 0 <= m < n, 'successor_chain requires 0 <= m < n')
    return FiniteAlgebra(n, [
        (Symbol('s', 1), [i + 1 if i < n - 1 else m for i in range(n)]),
    ], name='successor_chain:%d,%d' % (n, m))


def random_algebra(generator, carrier_size, symbols):
    """
    An algebra with random tables over the given symbols, drawn from
    `generator` (a `LinearCongruentialGenerator`).
    """
    return FiniteAlgebra(carrier_size, [
        (symbol, [generator.randrange(carrier_size)
                  for _ in range(carrier_size ** symbol.arity)])
        for symbol in symbols
    ], name='random:%d' % carrier_size)


CATALOG = {
    'zn_ring': (zn_ring, 1),
    'zn_group': (zn_group, 1),
    'sym_group': (sym_group, 1),
    'left_zero_semigroup': (left_zero_semigroup, 1),
    'divisor_lattice': (divisor_lattice, 1),
    'boolean_algebra': (boolean_algebra, 1),
    'boolean_semiring': (boolean_semiring, 0),
    'boolean_semimodule': (boolean_semimodule, 1),
    'random_magma': (random_magma, 2),
    'random_unary': (random_unary, 2),
    'successor_chain': (successor_chain, 2),
}


def builtin_algebra(kind, params=()) -> FiniteAlgebra:
    """
    Instantiates a catalog algebra.

    Required arguments:
        `kind` -- a key of `CATALOG`

    Optional arguments:
        `params` -- the natural-number parameters of the kind (default = ())
    """
    try:
        factory, count = CATALOG[kind]
    except KeyError:
        raise CatalogError('Unknown builtin algebra "%s"; known kinds are: %s'
                           % (kind, ', '.join(sorted(CATALOG))))
    return factory(*_params(kind, list(params), count))


def parse_builtin(text) -> FiniteAlgebra:
    """
    Parses `NAME:P1,P2,...` (parameters optional) into a catalog algebra.
    """
    kind, _, params = text.partition(':')
    values = []
    for p in filter(None, (p.strip() for p in params.split(','))):
        try:
            values.append(int(p))
        except ValueError:
            raise CatalogError('Invalid parameter "%s" for builtin "%s"' % (p, kind))
    return builtin_algebra(kind.strip(), values)
