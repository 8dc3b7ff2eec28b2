from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from .algebra import FiniteAlgebra, row_major_index
from .conf import resolve
from .exceptions import BudgetExceededError, ShapeMismatchError
from .terms import (
    STAR, VARIABLE, ZERO, AffineTerm, Params, Skeleton, Variable, X,
    concat, enumerate_skeletons, fold_term, nest, skeleton_measures, unskeletonize
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnaryMap:
    """
    A self-map of the carrier; position i of `image` holds f(i).

    Equality is extensional: `witness` (an AffineTerm inducing the map)
    is provenance only.
    """
    image: tuple
    witness: Optional[AffineTerm] = field(default=None, compare=False, hash=False)

    def __call__(self, z):
        return self.image[z]

    def __len__(self):
        return len(self.image)

    def compose(self, other: 'UnaryMap') -> tuple:
        """The image of self after other."""
        return tuple(self.image[v] for v in other.image)

    def as_list(self):
        return list(self.image)


def identity_image(n):
    return tuple(range(n))


def eval_affine(algebra: FiniteAlgebra, term, z: int) -> int:
    """
    Evaluates `term` at x = z: x gives z, a constant gives itself and a
    node applies its operation to the values of its children.
    """
    if isinstance(term, AffineTerm):
        term = term.term
    algebra.check_element(z)
    return _eval(algebra, term, z)


def _eval(algebra, term, z):
    def leaf(t):
        if isinstance(t, Variable):
            return z
        algebra.check_element(t.value)
        return t.value

    return fold_term(term, leaf, lambda t, values: algebra.evaluate(t.symbol.name, tuple(values)))


def _column(algebra, term):
    # the values of `term` at every z at once
    n = algebra.carrier_size

    def leaf(t):
        if isinstance(t, Variable):
            return identity_image(n)
        algebra.check_element(t.value)
        return (t.value,) * n

    def node(t, columns):
        algebra.signature[t.symbol]
        table = algebra.table(t.symbol)
        return tuple(table[row_major_index([c[z] for c in columns], n)] for z in range(n))

    return fold_term(term, leaf, node)


def induced_map(algebra: FiniteAlgebra, term) -> UnaryMap:
    """The map z -> eval_affine(algebra, term, z), with `term` as its witness."""
    if not isinstance(term, AffineTerm):
        term = AffineTerm(term)
    return UnaryMap(_column(algebra, term.term), term)


def eval_skeleton(algebra: FiniteAlgebra, skeleton: Skeleton, params: Params) -> UnaryMap:
    """
    Evaluates a skeleton under a parameter tuple, without building the term.
    """
    return UnaryMap(_skeleton_column(algebra, skeleton, params))


def _skeleton_column(algebra, skeleton, params):
    n = algebra.carrier_size
    head = skeleton.head
    if head == VARIABLE:
        if params.value is not None or params.children:
            raise ShapeMismatchError('The x-leaf takes no parameter')
        return identity_image(n)
    if head == STAR:
        if not isinstance(params.value, int) or params.children:
            raise ShapeMismatchError('A *-leaf takes a carrier element')
        algebra.check_element(params.value)
        return (params.value,) * n
    if head == ZERO:
        symbol = params.value
        if getattr(symbol, 'arity', None) != 0 or params.children:
            raise ShapeMismatchError('A 0-leaf takes a nullary symbol')
        return (algebra.evaluate(symbol.name, ()),) * n

    symbol = params.value
    if getattr(symbol, 'arity', None) != head or len(params.children) != head:
        raise ShapeMismatchError('The node %d takes a symbol of arity %d' % (head, head))
    table = algebra.table(symbol)
    columns = [_skeleton_column(algebra, s, p) for s, p in zip(skeleton.children, params.children)]
    return tuple(table[row_major_index([c[z] for c in columns], n)] for z in range(n))


def translations(algebra: FiniteAlgebra, max_arity=None):
    """
    Lists the distinct translations z -> f(a_1, ..., z, ..., a_n).

    Symbols are visited in catalog order, then slots, then constant tuples
    in lexicographic order; the first witness of each map is kept.

    Optional arguments:
        `max_arity` -- ignore symbols of higher arity (default = None)
    """
    n = algebra.carrier_size
    seen = {}
    for symbol in algebra.signature:
        if symbol.arity == 0 or (max_arity is not None and symbol.arity > max_arity):
            continue
        table = algebra.table(symbol)
        for slot in range(symbol.arity):
            for constants in itertools.product(range(n), repeat=symbol.arity - 1):
                image = tuple(table[row_major_index(constants[:slot] + (z,) + constants[slot:], n)]
                              for z in range(n))
                if image not in seen:
                    seen[image] = UnaryMap(image, AffineTerm(nest(symbol, slot, constants, X)))
    return list(seen.values())


class TranslationMonoid(object):
    """
    The monoid generated by the translations, with a proper witness term
    and the discovery depth for every element.
    """
    def __init__(self, algebra, elements, generators, depths):
        self.algebra = algebra
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self._by_image = {f.image: f for f in self.elements}
        self._depths = depths

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f):
        image = f.image if isinstance(f, UnaryMap) else tuple(f)
        return image in self._by_image

    @property
    def images(self):
        return frozenset(self._by_image)

    def witness(self, f) -> AffineTerm:
        image = f.image if isinstance(f, UnaryMap) else tuple(f)
        return self._by_image[image].witness

    def depth(self, f) -> int:
        image = f.image if isinstance(f, UnaryMap) else tuple(f)
        return self._depths[image]

    @property
    def max_depth(self):
        return max(self._depths.values())


def layered_affine_maps(algebra: FiniteAlgebra, max_height=None, max_arity=None, cap=None):
    """
    Collects the maps induced by proper affine terms of height at most
    `max_height` whose symbols have arity at most `max_arity`.

    A proper term of height h is a translation applied to a proper term
    of height h - 1 (its other children are closed, so they evaluate to
    constants), so each layer is the previous one composed with the
    translations. Returns a list of UnaryMaps in discovery order (height
    major), each witnessed by a term of minimal height, and a dict of
    their depths. `None` bounds run until the layers stop growing.
    """
    cap = resolve(cap, 'AFFINE_MONOID_CAP')
    n = algebra.carrier_size
    generators = translations(algebra, max_arity)
    identity = UnaryMap(identity_image(n), AffineTerm(X))

    known = {identity.image: identity}
    depths = {identity.image: 0}
    frontier = [identity]
    level = 0
    while frontier and (max_height is None or level < max_height):
        level += 1
        layer = []
        for f in frontier:
            for generator in generators:
                image = generator.compose(f)
                if image in known:
                    continue
                g = UnaryMap(image, concat(generator.witness, f.witness))
                known[image] = g
                depths[image] = level
                layer.append(g)
                if len(known) > cap:
                    logger.warning('Closure of %s passed the cap of %d maps', algebra.name, cap)
                    raise BudgetExceededError('The translation monoid of %s has more than %d elements'
                                              % (algebra.name, cap), cap)
        logger.debug('Layer %d of %s: %d new maps', level, algebra.name, len(layer))
        frontier = layer
    return list(known.values()), depths, generators


def translation_monoid(algebra: FiniteAlgebra, cap=None) -> TranslationMonoid:
    """
    Computes M(A) by breadth-first closure of the identity under
    composition with the translations.

    The identity is witnessed by x; an element found at depth d is
    witnessed by a term of height d. The result is cached on the algebra.

    Optional arguments:
        `cap` -- abort when the closure grows past this many elements
                 (default = AFFINE_MONOID_CAP)
    """
    cap = resolve(cap, 'AFFINE_MONOID_CAP')

    def build():
        elements, depths, generators = layered_affine_maps(algebra, cap=cap)
        logger.debug('M(%s) has %d elements (depth %d)', algebra.name, len(elements), max(depths.values()))
        return TranslationMonoid(algebra, elements, generators, depths)

    monoid = algebra.cached('translation_monoid', build)
    if len(monoid) > cap:
        raise BudgetExceededError('The translation monoid of %s has more than %d elements'
                                  % (algebra.name, cap), cap)
    return monoid


class SkeletonEvaluator(object):
    """
    Evaluates skeletons over all their parameter tuples at once.

    For a closed skeleton the result is the set of values it takes; for a
    linear skeleton the set of maps it induces. Every value (map) keeps
    the first recipe producing it, from which a parameter tuple is rebuilt
    on demand. Results are shared between skeletons of equal content.
    """
    def __init__(self, algebra: FiniteAlgebra):
        self.algebra = algebra
        self.n = algebra.carrier_size
        self._closed = {}
        self._linear = {}
        self._content = {}

    def closed_values(self, skeleton: Skeleton) -> dict:
        try:
            return self._closed[skeleton]
        except KeyError:
            pass

        algebra = self.algebra
        values = {}
        if skeleton.head == STAR:
            values = {a: a for a in range(self.n)}
        elif skeleton.head == ZERO:
            for symbol in algebra.signature.of_arity(0):
                values.setdefault(algebra.evaluate(symbol.name, ()), symbol)
        else:
            children = [list(self.closed_values(c)) for c in skeleton.children]
            for symbol in algebra.signature.of_arity(skeleton.head):
                for args in itertools.product(*children):
                    values.setdefault(algebra.evaluate(symbol.name, args), (symbol, args))
        self._closed[skeleton] = values
        return values

    def linear_maps(self, skeleton: Skeleton) -> dict:
        try:
            return self._linear[skeleton]
        except KeyError:
            pass

        if skeleton.head == VARIABLE:
            maps = {identity_image(self.n): None}
        else:
            slot = _x_slot(skeleton)
            inner = self.linear_maps(skeleton.children[slot])
            siblings = tuple(tuple(self.closed_values(c)) for i, c in enumerate(skeleton.children) if i != slot)
            key = (skeleton.head, slot, id(inner), siblings)
            maps = self._content.get(key)
            if maps is None:
                maps = self._content[key] = self._compose(skeleton.head, slot, inner, siblings)
        self._linear[skeleton] = maps
        return maps

    def _compose(self, arity, slot, inner, siblings):
        n = self.n
        maps = {}
        for symbol in self.algebra.signature.of_arity(arity):
            table = self.algebra.table(symbol)
            for constants in itertools.product(*siblings):
                before, after = constants[:slot], constants[slot:]
                for image in inner:
                    composed = tuple(table[row_major_index(before + (v,) + after, n)] for v in image)
                    if composed not in maps:
                        maps[composed] = (symbol, constants, image)
        return maps

    def closed_params(self, skeleton, value) -> Params:
        recipe = self.closed_values(skeleton)[value]
        if skeleton.head == STAR:
            return Params(recipe)
        if skeleton.head == ZERO:
            return Params(recipe)
        symbol, args = recipe
        return Params(symbol, tuple(self.closed_params(c, v) for c, v in zip(skeleton.children, args)))

    def linear_params(self, skeleton, image) -> Params:
        if skeleton.head == VARIABLE:
            return Params()
        symbol, constants, inner = self.linear_maps(skeleton)[image]
        slot = _x_slot(skeleton)
        values = list(constants)
        values.insert(slot, None)
        children = []
        for i, child in enumerate(skeleton.children):
            if i == slot:
                children.append(self.linear_params(child, inner))
            else:
                children.append(self.closed_params(child, values[i]))
        return Params(symbol, tuple(children))


def _x_slot(skeleton):
    for i, child in enumerate(skeleton.children):
        if skeleton_measures(child).x_count:
            return i
    raise ShapeMismatchError('Skeleton %s does not contain x' % skeleton)


def skeleton_affine_maps(algebra: FiniteAlgebra, max_height: int, max_arity: int, budget=None):
    """
    Enumerates every linear skeleton of height <= `max_height` and arity
    <= `max_arity` with every parameter tuple, and returns the induced maps
    in discovery order (skeleton order, then parameter order), each with
    the term of its first skeleton and parameter tuple as witness.
    """
    evaluator = SkeletonEvaluator(algebra)
    skeletons = enumerate_skeletons(max_height, max_arity, budget=budget)
    first = {}
    for skeleton in skeletons:
        for image in evaluator.linear_maps(skeleton):
            if image not in first:
                first[image] = skeleton
    logger.debug('%d skeletons over %s induce %d maps', len(skeletons), algebra.name, len(first))
    return [UnaryMap(image, AffineTerm(unskeletonize(skeleton, evaluator.linear_params(skeleton, image))))
            for image, skeleton in first.items()]


def brute_force_affine_maps(algebra: FiniteAlgebra, max_height: int, max_arity: int, budget=None):
    """
    The set of maps induced by all proper affine terms of height at most
    `max_height` and arity at most `max_arity`, computed from the skeleton
    enumeration.

    Optional arguments:
        `budget` -- maximum number of skeletons (default =
                    AFFINE_ENUMERATION_BUDGET)
    """
    evaluator = SkeletonEvaluator(algebra)
    images = set()
    for skeleton in enumerate_skeletons(max_height, max_arity, budget=budget):
        images.update(evaluator.linear_maps(skeleton))
    return frozenset(UnaryMap(image) for image in images)
