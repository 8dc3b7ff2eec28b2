"""
The free magma over the generators a and b, where the product of two
elements is their ordered pair, and the unboundedness of its translation
monoid: the map induced by t_i = (...((x * a) * a) ...) * a (i factors)
is induced by no proper affine term of height below i.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Symbol
from .exceptions import BudgetExceededError
from .terms import AffineTerm, Apply, Constant, Variable, X

logger = logging.getLogger(__name__)

GENERATORS = ('a', 'b')
PRODUCT = Symbol('*', 2)
MAX_INDEX = 6


@dataclass(frozen=True)
class TreeConstant(Constant):
    """A free-magma element used as a constant leaf."""
    value: object

    def __str__(self):
        return format_tree(self.value)


def tree_size(tree) -> int:
    """Number of generator leaves."""
    if isinstance(tree, str):
        return 1
    return tree_size(tree[0]) + tree_size(tree[1])


def format_tree(tree) -> str:
    if isinstance(tree, str):
        return tree
    return '(%s*%s)' % (format_tree(tree[0]), format_tree(tree[1]))


def b_depth(tree):
    """Depth of the shallowest b in `tree`, or None if b does not occur."""
    if isinstance(tree, str):
        return 0 if tree == 'b' else None
    depths = [d for d in (b_depth(tree[0]), b_depth(tree[1])) if d is not None]
    return min(depths) + 1 if depths else None


@lru_cache(maxsize=None)
def count_trees(size: int) -> int:
    """The number of elements with exactly `size` leaves."""
    if size == 1:
        return len(GENERATORS)
    return sum(count_trees(k) * count_trees(size - k) for k in range(1, size))


def trees_up_to(size: int):
    """All elements with at most `size` leaves, smallest first."""
    by_size = {1: list(GENERATORS)}
    for s in range(2, size + 1):
        by_size[s] = [(left, right) for k in range(1, s)
                      for left in by_size[k] for right in by_size[s - k]]
    return [tree for s in range(1, size + 1) for tree in by_size[s]]


def evaluate(term, z):
    """The value of a term of the free magma at x = z."""
    if isinstance(term, AffineTerm):
        term = term.term
    if isinstance(term, Variable):
        return z
    if isinstance(term, Constant):
        return term.value
    return (evaluate(term.children[0], z), evaluate(term.children[1], z))


def power_term(i: int) -> AffineTerm:
    """t_0 = x and t_i = t_(i-1) * a."""
    term = X
    for _ in range(i):
        term = Apply(PRODUCT, (term, TreeConstant('a')))
    return AffineTerm(term)


def power_value(i: int):
    """t_i evaluated at b."""
    return evaluate(power_term(i), 'b')


def _closed_reaches(value, height, cap):
    # some closed term of height <= `height` with constants of size <= cap
    # evaluates to `value`
    if tree_size(value) <= cap:
        return True
    return (height >= 1 and not isinstance(value, str) and
            _closed_reaches(value[0], height - 1, cap) and _closed_reaches(value[1], height - 1, cap))


def proper_reaches(value, height, cap) -> bool:
    """
    Whether a proper affine term of height <= `height`, with constants of
    size <= `cap`, evaluates at b to `value`.

    The product is injective, so a term with a product at the root can only
    reach a pair, and then exactly when its children reach the components:
    x sits below one child, the other is closed. This decides the question
    for all terms at once.
    """
    if value == 'b':
        return True
    if height == 0 or isinstance(value, str):
        return False
    left, right = value
    return ((proper_reaches(left, height - 1, cap) and _closed_reaches(right, height - 1, cap)) or
            (proper_reaches(right, height - 1, cap) and _closed_reaches(left, height - 1, cap)))


def enumerate_proper_terms(max_height: int, constants):
    """
    Lists every proper affine term of height <= `max_height` over the
    product with constants from `constants`. For small cross-checks only.
    """
    closed = [TreeConstant(c) for c in constants]
    proper = [X]
    for _ in range(max_height):
        new_proper = [X]
        for inner in proper:
            for c in closed:
                new_proper.append(Apply(PRODUCT, (inner, c)))
                new_proper.append(Apply(PRODUCT, (c, inner)))
        proper = new_proper
        closed = [TreeConstant(c) for c in constants] + [Apply(PRODUCT, pair)
                                                         for pair in itertools.product(closed, repeat=2)]
    return [AffineTerm(t) for t in proper]


def random_proper_term(generator, max_height: int, cap: int) -> AffineTerm:
    """
    Draws a proper term of height <= `max_height` from `generator` (a
    `LinearCongruentialGenerator`).
    """
    pool = trees_up_to(min(cap, 3))

    def closed(height):
        if height == 0 or generator.randrange(3) == 0:
            return TreeConstant(generator.choice(pool))
        return Apply(PRODUCT, (closed(height - 1), closed(height - 1)))

    def proper(height):
        if height == 0 or generator.randrange(4) == 0:
            return X
        if generator.randrange(2):
            return Apply(PRODUCT, (proper(height - 1), closed(height - 1)))
        return Apply(PRODUCT, (closed(height - 1), proper(height - 1)))

    return AffineTerm(proper(max_height))


def depth_invariant_holds(term: AffineTerm) -> bool:
    """The shallowest b in the value at b lies no deeper than the height."""
    return b_depth(evaluate(term, 'b')) <= term.height


@dataclass(frozen=True)
class PowerCheck:
    index: int
    value: object
    matched_below: bool
    witness: AffineTerm

    def as_dict(self):
        return {
            'i': self.index,
            'value': format_tree(self.value),
            'matched_below': self.matched_below,
            'witness': format_power(self.witness),
            'witness_height': self.witness.height,
        }


@dataclass(frozen=True)
class FreeMagmaReport:
    i_max: int
    const_size_cap: int
    constant_pool: int
    rows: tuple

    @property
    def holds(self):
        return not any(row.matched_below for row in self.rows)

    def __bool__(self):
        return self.holds

    def as_dict(self):
        return {
            'i_max': self.i_max,
            'const_size_cap': self.const_size_cap,
            'constant_pool': self.constant_pool,
            'holds': self.holds,
            'rows': [row.as_dict() for row in self.rows],
        }


def format_power(term) -> str:
    if isinstance(term, AffineTerm):
        term = term.term
    if isinstance(term, Variable):
        return 'x'
    if isinstance(term, Constant):
        return format_tree(term.value)
    return '(%s %s %s)' % (term.symbol.name, format_power(term.children[0]), format_power(term.children[1]))


def free_magma_witness(i_max: int, const_size_cap: int) -> FreeMagmaReport:
    """
    For every i <= `i_max`, checks that no proper affine term of height
    below i, with constants of at most `const_size_cap` leaves, sends b to
    t_i(b), while t_i itself (height i) does.
    """
    if not 0 <= i_max <= MAX_INDEX:
        raise BudgetExceededError('i_max must be between 0 and %d, got %d' % (MAX_INDEX, i_max), MAX_INDEX)
    if not 1 <= const_size_cap <= 2 * max(i_max, 1):
        raise BudgetExceededError('const_size_cap must be between 1 and %d, got %d'
                                  % (2 * max(i_max, 1), const_size_cap), 2 * max(i_max, 1))

    rows = []
    for i in range(1, i_max + 1):
        value = power_value(i)
        matched = proper_reaches(value, i - 1, const_size_cap)
        witness = power_term(i)
        if not proper_reaches(value, i, const_size_cap) or evaluate(witness, 'b') != value:
            raise AssertionError('t_%d does not reach its own value' % i)
        logger.debug('t_%d(b) = %s, reached below height %d: %s', i, format_tree(value), i, matched)
        rows.append(PowerCheck(i, value, matched, witness))

    pool = sum(count_trees(s) for s in range(1, const_size_cap + 1))
    return FreeMagmaReport(i_max, const_size_cap, pool, tuple(rows))
