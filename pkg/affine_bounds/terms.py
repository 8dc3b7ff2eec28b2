from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import NamedTuple, Union

from .algebra import Signature, Symbol
from .conf import get_setting, resolve
from .exceptions import (
    BudgetExceededError, NonLinearTermError, ShapeMismatchError, TermSyntaxError
)

logger = logging.getLogger(__name__)

VARIABLE = 'x'
STAR = '*'
ZERO = '0'

TOKEN_RE = re.compile(r'\s*(?:(?P<open>\()|(?P<close>\))|(?P<atom>[^\s()]+))')
CONSTANT_RE = re.compile(r'^#(\d+)$')


class Term(object):
    """Base class of term trees over the signature extended by constants."""
    __slots__ = ()


@dataclass(frozen=True)
class Variable(Term):
    def __str__(self):
        return VARIABLE


@dataclass(frozen=True)
class Constant(Term):
    """A carrier element adjoined as a nullary symbol, written #k."""
    value: int

    def __str__(self):
        return '#%d' % self.value


class Measures(NamedTuple):
    height: int
    arity: int
    x_count: int


@dataclass(frozen=True, eq=False, repr=False)
class Apply(Term):
    """
    A symbol applied to its children.

    Measures and the hash are computed once, from the children's, so
    deep terms are never walked recursively.
    """
    symbol: Symbol
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, 'children', tuple(self.children))
        if len(self.children) != self.symbol.arity:
            raise ShapeMismatchError('Symbol "%s" takes %d arguments, got %d'
                                     % (self.symbol.name, self.symbol.arity, len(self.children)))
        height = arity = x_count = 0
        for child in self.children:
            measures = term_measures(child)
            height = max(height, measures.height + 1)
            arity = max(arity, measures.arity)
            x_count += measures.x_count
        object.__setattr__(self, 'measures', Measures(height, max(arity, self.symbol.arity), x_count))
        object.__setattr__(self, '_hash', hash((self.symbol, tuple(hash(c) for c in self.children))))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Apply):
            return NotImplemented
        pairs = [(self, other)]
        while pairs:
            a, b = pairs.pop()
            if a is b:
                continue
            if isinstance(a, Apply) and isinstance(b, Apply):
                if a._hash != b._hash or a.symbol != b.symbol:
                    return False
                pairs.extend(zip(a.children, b.children))
            elif a != b:
                return False
        return True

    def __repr__(self):
        return 'Apply(%s)' % format_term(self)

    def __str__(self):
        return format_term(self)


X = Variable()

LEAF_MEASURES = Measures(0, 0, 0)
X_MEASURES = Measures(0, 0, 1)


def term_measures(term: Term) -> Measures:
    """
    Returns the height, the arity and the number of occurrences of x.

    Leaves (x, constants, nullary symbols) have height 0; a node has
    height one more than its highest child. The arity of a node is the
    largest of its own arity and the arities of its children.
    """
    if isinstance(term, Apply):
        return term.measures
    if isinstance(term, Variable):
        return X_MEASURES
    return LEAF_MEASURES


def fold_term(term, leaf, node):
    """
    Evaluates `term` bottom-up with an explicit stack: `leaf(t)` at x and
    constants, `node(t, values)` at every application, with the values of
    its children in order.
    """
    results = []
    stack = [(term, False)]
    while stack:
        t, expanded = stack.pop()
        if not isinstance(t, Apply):
            results.append(leaf(t))
        elif not expanded and t.children:
            stack.append((t, True))
            stack.extend((child, False) for child in reversed(t.children))
        else:
            start = len(results) - len(t.children)
            values = results[start:]
            del results[start:]
            results.append(node(t, values))
    return results[0]


class AffineTerm(object):
    """
    A term in which x occurs at most once.

    `proper` is True when x does occur.
    """
    __slots__ = ('term', 'measures')

    def __init__(self, term: Union[Term, 'AffineTerm']):
        if isinstance(term, AffineTerm):
            term = term.term
        measures = term_measures(term)
        if measures.x_count > 1:
            raise NonLinearTermError('The term %s contains x %d times' % (format_term(term), measures.x_count))
        self.term = term
        self.measures = measures

    @property
    def proper(self):
        return self.measures.x_count == 1

    @property
    def height(self):
        return self.measures.height

    @property
    def arity(self):
        return self.measures.arity

    def __eq__(self, other):
        return isinstance(other, AffineTerm) and self.term == other.term

    def __hash__(self):
        return hash(self.term)

    def __repr__(self):
        return 'AffineTerm(%s)' % format_term(self.term)

    def __str__(self):
        return format_term(self.term)


def _substitute(term, replacement):
    # rebuilds the path from the root down to the single x-leaf
    path = []
    while isinstance(term, Apply):
        slot = next(i for i, child in enumerate(term.children) if term_measures(child).x_count)
        path.append((term, slot))
        term = term.children[slot]
    result = replacement
    for node, slot in reversed(path):
        result = Apply(node.symbol, node.children[:slot] + (result,) + node.children[slot + 1:])
    return result


def concat(s, t) -> AffineTerm:
    """
    Concatenation along x: replaces the x-leaf of `s` (if any) by `t`.
    """
    s = AffineTerm(s)
    t = AffineTerm(t)
    if not s.proper:
        return s
    return AffineTerm(_substitute(s.term, t.term))


def format_term(term) -> str:
    if isinstance(term, AffineTerm):
        term = term.term
    return fold_term(term, str, _format_node)


def _format_node(term, values):
    if not values:
        return term.symbol.name
    return '(%s %s)' % (term.symbol.name, ' '.join(values))


class _Tokens(object):
    """
    Tokenizer over `src` keeping byte offsets for diagnostics.
    """
    def __init__(self, src):
        self.src = src
        self.position = 0
        self.tokens = [(m.lastgroup, m.group(m.lastgroup), self._offset(m.start(m.lastgroup)))
                       for m in TOKEN_RE.finditer(src)]

    def _offset(self, index):
        return len(self.src[:index].encode('utf-8'))

    def peek(self):
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def next(self):
        token = self.peek()
        if token is None:
            raise TermSyntaxError('Unexpected end of input', self._offset(len(self.src)))
        self.position += 1
        return token


def parse_term(src: str, signature: Signature, carrier_size: int) -> Term:
    """
    Parses a term in parenthesized prefix notation.

    Required arguments:
        `src` -- the source text, e.g. "(+ (* #2 x) #3)"
        `signature` -- the signature symbols are looked up in
        `carrier_size` -- constants #k must satisfy k < carrier_size

    Grammar:
        term := "x" | "#" digits | "(" symbol term* ")" | symbol

    A bare symbol is a nullary application. Errors are reported as
    `TermSyntaxError` with the byte offset of the offending token.
    """
    tokens = _Tokens(src)
    term = _parse(tokens, signature, carrier_size)
    token = tokens.peek()
    if token is not None:
        raise TermSyntaxError('Unexpected trailing input "%s"' % token[1], token[2])
    return term


def _lookup(signature, name, offset):
    if name not in signature:
        raise TermSyntaxError('Unknown symbol "%s"' % name, offset)
    return signature[name]


def _parse(tokens, signature, carrier_size):
    # open applications, innermost last: (symbol, head offset, children)
    frames = []
    while True:
        token = tokens.peek()
        if frames and token is None:
            raise TermSyntaxError('Missing ")"', tokens._offset(len(tokens.src)))
        if frames and token[0] == 'close':
            tokens.next()
            symbol, head_offset, children = frames.pop()
            if len(children) != symbol.arity:
                raise TermSyntaxError('Symbol "%s" takes %d arguments, got %d'
                                      % (symbol.name, symbol.arity, len(children)), head_offset)
            term = Apply(symbol, tuple(children))
        else:
            kind, text, offset = tokens.next()
            if kind == 'close':
                raise TermSyntaxError('Unexpected ")"', offset)
            if kind == 'open':
                head = tokens.next()
                if head[0] != 'atom' or head[1] == VARIABLE or head[1].startswith('#'):
                    raise TermSyntaxError('Expected a symbol after "("', head[2])
                frames.append((_lookup(signature, head[1], head[2]), head[2], []))
                continue
            term = _parse_atom(text, offset, signature, carrier_size)

        if not frames:
            return term
        frames[-1][2].append(term)


def _parse_atom(text, offset, signature, carrier_size):
    if text == VARIABLE:
        return X
    if text.startswith('#'):
        match = CONSTANT_RE.match(text)
        if not match:
            raise TermSyntaxError('Malformed constant "%s"' % text, offset)
        value = int(match.group(1))
        if value >= carrier_size:
            raise TermSyntaxError('Constant #%d is outside the carrier of size %d' % (value, carrier_size), offset)
        return Constant(value)
    symbol = _lookup(signature, text, offset)
    if symbol.arity != 0:
        raise TermSyntaxError('Symbol "%s" takes %d arguments, got 0' % (symbol.name, symbol.arity), offset)
    return Apply(symbol, ())


@dataclass(frozen=True)
class Skeleton:
    """
    A term over the skeleton signature: leaves "x", "*" (a constant
    slot) and "0" (a nullary symbol slot), and one node head per arity
    n >= 1.
    """
    head: Union[str, int]
    children: tuple = ()

    def __str__(self):
        return format_skeleton(self)

    @property
    def is_leaf(self):
        return not isinstance(self.head, int)


@dataclass(frozen=True)
class Params:
    """
    A parameter tuple mirroring a skeleton: a Symbol at every node and at
    every 0-leaf, a carrier element at every *-leaf, None at the x-leaf.
    """
    value: object = None
    children: tuple = ()

    def __str__(self):
        return format_params(self)


SKELETON_X = Skeleton(VARIABLE)
SKELETON_STAR = Skeleton(STAR)
SKELETON_ZERO = Skeleton(ZERO)


def format_skeleton(skeleton: Skeleton) -> str:
    if skeleton.is_leaf:
        return skeleton.head
    return '(%d %s)' % (skeleton.head, ' '.join(format_skeleton(c) for c in skeleton.children))


def format_params(params: Params) -> str:
    if isinstance(params.value, Symbol):
        if not params.children:
            return params.value.name
        return '(%s %s)' % (params.value.name, ' '.join(format_params(c) for c in params.children))
    if params.value is None:
        return '-'
    return str(params.value)


def skeleton_measures(skeleton: Skeleton) -> Measures:
    if skeleton.head == VARIABLE:
        return Measures(0, 0, 1)
    if skeleton.is_leaf:
        return Measures(0, 0, 0)
    child_measures = [skeleton_measures(c) for c in skeleton.children]
    return Measures(
        max(m.height for m in child_measures) + 1,
        max([skeleton.head] + [m.arity for m in child_measures]),
        sum(m.x_count for m in child_measures),
    )


def skeletonize(term: Term):
    """
    Splits `term` into its shape and its parameters.

    Returns a pair (Skeleton, Params): x becomes the x-leaf, a constant #a
    becomes a *-leaf with parameter a, a nullary symbol becomes a 0-leaf
    with the symbol as parameter, and an n-ary node becomes the node n with
    its symbol as parameter.
    """
    if isinstance(term, AffineTerm):
        term = term.term
    if isinstance(term, Variable):
        return SKELETON_X, Params()
    if isinstance(term, Constant):
        return SKELETON_STAR, Params(term.value)
    if not term.children:
        return SKELETON_ZERO, Params(term.symbol)

    pairs = [skeletonize(child) for child in term.children]
    return (Skeleton(term.symbol.arity, tuple(s for s, _ in pairs)),
            Params(term.symbol, tuple(p for _, p in pairs)))


def unskeletonize(skeleton: Skeleton, params: Params) -> Term:
    """
    Rebuilds the term from a skeleton and a matching parameter tuple.
    """
    head = skeleton.head
    if head == VARIABLE:
        if params.value is not None or params.children:
            raise ShapeMismatchError('The x-leaf takes no parameter, got %s' % format_params(params))
        return X
    if head == STAR:
        if isinstance(params.value, Symbol) or not isinstance(params.value, int) or params.children:
            raise ShapeMismatchError('A *-leaf takes a carrier element, got %s' % format_params(params))
        return Constant(params.value)
    if head == ZERO:
        if not isinstance(params.value, Symbol) or params.value.arity != 0 or params.children:
            raise ShapeMismatchError('A 0-leaf takes a nullary symbol, got %s' % format_params(params))
        return Apply(params.value, ())

    if (not isinstance(params.value, Symbol) or params.value.arity != head or
            len(params.children) != head):
        raise ShapeMismatchError('The node %d takes a symbol of arity %d and %d children, got %s'
                                 % (head, head, head, format_params(params)))
    return Apply(params.value, tuple(unskeletonize(s, p) for s, p in zip(skeleton.children, params.children)))


def count_skeletons(max_height, max_arity):
    """
    Returns (linear, closed): the numbers of skeletons of height at most
    `max_height` and arity at most `max_arity` with x exactly once and
    with no x at all.
    """
    closed, linear = 2, 1
    for _ in range(max_height):
        linear = 1 + sum(n * linear * closed ** (n - 1) for n in range(1, max_arity + 1))
        closed = 2 + sum(closed ** n for n in range(1, max_arity + 1))
    return linear, closed


def skeleton_sort_key(skeleton):
    measures = skeleton_measures(skeleton)
    return (measures.height, measures.arity, format_skeleton(skeleton))


def enumerate_skeletons(max_height: int, max_arity: int, budget=None):
    """
    Lists the skeletons with x exactly once, height <= `max_height` and
    arity <= `max_arity`, ordered by height, then arity, then serialization.

    Optional arguments:
        `budget` -- maximum number of skeletons (default =
                    AFFINE_ENUMERATION_BUDGET)
    """
    budget = resolve(budget, 'AFFINE_ENUMERATION_BUDGET')
    limit = get_setting('AFFINE_MAX_ARITY')
    if max_arity > limit:
        raise BudgetExceededError('Skeleton arity %d is above the supported maximum %d' % (max_arity, limit), limit)
    if max_height < 0 or max_arity < 0:
        raise ValueError('Bounds must be natural numbers')

    expected, _ = count_skeletons(max_height, max_arity)
    if expected > budget:
        logger.warning('Refusing to enumerate %d skeletons (budget %d)', expected, budget)
        raise BudgetExceededError('%d skeletons of height <= %d and arity <= %d exceed the budget %d'
                                  % (expected, max_height, max_arity, budget), budget)

    closed = [SKELETON_STAR, SKELETON_ZERO]
    linear = [SKELETON_X]
    for level in range(max_height):
        new_linear = [SKELETON_X]
        for n in range(1, max_arity + 1):
            for slot in range(n):
                for inner in linear:
                    for rest in _products(closed, n - 1):
                        new_linear.append(Skeleton(n, rest[:slot] + (inner,) + rest[slot:]))
        linear = new_linear
        if level < max_height - 1:
            closed = [SKELETON_STAR, SKELETON_ZERO] + [
                Skeleton(n, rest) for n in range(1, max_arity + 1) for rest in _products(closed, n)]

    skeletons = sorted(set(linear), key=skeleton_sort_key)
    logger.debug('Enumerated %d skeletons (height <= %d, arity <= %d)', len(skeletons), max_height, max_arity)
    return skeletons


def _products(pool, repeat):
    if repeat == 0:
        yield ()
        return
    for head in pool:
        for tail in _products(pool, repeat - 1):
            yield (head,) + tail


def nest(symbol: Symbol, slot: int, constants, inner: Term) -> Term:
    """
    Builds the term symbol(#c_1, ..., inner, ..., #c_n) with `inner` at
    position `slot` (0-based) and the constants elsewhere.
    """
    children = [Constant(c) for c in constants]
    children.insert(slot, inner)
    return Apply(symbol, tuple(children))
