from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    ChoeOrder, FiniteAlgebra, LawCheck, LawReport, check_associative,
    check_choe_distributive, check_distributes, cyclic_monoid
)
from .exceptions import InvalidAlgebraError, PreconditionError
from .terms import format_term
from .translation import (
    UnaryMap, induced_map, layered_affine_maps, skeleton_affine_maps, translation_monoid
)

logger = logging.getLogger(__name__)

MODES = ('layered', 'skeleton')


@dataclass(frozen=True)
class BoundednessCertificate:
    """
    Proof that A is affinely bounded by `m`: one witness term per element
    of M(A), in the order of the monoid's elements.
    """
    m: int
    witnesses: tuple

    def __bool__(self):
        return True

    def verify(self, algebra: FiniteAlgebra) -> bool:
        """
        Re-evaluates every witness: it must be proper, within both bounds
        and induce its map; the maps must cover M(A).
        """
        monoid = translation_monoid(algebra)
        for f in self.witnesses:
            term = f.witness
            if not term.proper or term.height > self.m or term.arity > self.m:
                return False
            if induced_map(algebra, term) != f:
                return False
        return set(f.image for f in self.witnesses) == monoid.images

    def as_dict(self):
        return {
            'm': self.m,
            'witnesses': [{'map': f.as_list(), 'term': format_term(f.witness)} for f in self.witnesses],
        }


@dataclass(frozen=True)
class BoundednessFailure:
    """The elements of M(A) no term within the bounds induces."""
    m: int
    missing: tuple

    def __bool__(self):
        return False

    def as_dict(self):
        return {'m': self.m, 'missing': [f.as_list() for f in self.missing]}


def _natural(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError('%s must be a natural number, got %r' % (name, value))
    return value


def bounded_maps(algebra: FiniteAlgebra, m: int, mode='layered', height_only=False, budget=None):
    """
    The maps induced by proper affine terms of height <= m (and arity <= m
    unless `height_only`), each with its first witness.
    """
    signature_arity = algebra.signature.max_arity
    if height_only and signature_arity > m:
        raise PreconditionError('The height-only check needs every symbol arity <= %d; the signature has arity %d'
                                % (m, signature_arity))
    max_arity = signature_arity if height_only else min(m, signature_arity)

    if mode == 'layered':
        maps, _, _ = layered_affine_maps(algebra, max_height=m, max_arity=max_arity)
        return maps
    if mode == 'skeleton':
        return skeleton_affine_maps(algebra, m, max_arity, budget=budget)
    raise ValueError('Unknown mode "%s"; expected one of %s' % (mode, ', '.join(MODES)))


def check_bounded_by(algebra: FiniteAlgebra, m: int, mode='layered', height_only=False, budget=None):
    """
    Decides whether `algebra` is affinely bounded by `m`.

    Required arguments:
        `algebra` -- the finite algebra
        `m` -- the bound on height and arity of the witness terms

    Optional arguments:
        `mode` -- 'layered' composes translations height by height;
                  'skeleton' enumerates every skeleton and parameter tuple
                  (default = 'layered')
        `height_only` -- bound the height only; allowed when no symbol has
                         arity above `m` (default = False)
        `budget` -- skeleton budget of the 'skeleton' mode
                    (default = AFFINE_ENUMERATION_BUDGET)

    Returns a `BoundednessCertificate` or a `BoundednessFailure`.
    """
    _natural(m, 'm')
    monoid = translation_monoid(algebra)
    found = {f.image: f for f in bounded_maps(algebra, m, mode, height_only, budget)}

    missing = tuple(f for f in monoid if f.image not in found)
    logger.debug('Bound %d on %s (%s): %d of %d maps reached',
                 m, algebra.name, mode, len(monoid) - len(missing), len(monoid))
    if missing:
        return BoundednessFailure(m, missing)
    return BoundednessCertificate(m, tuple(found[f.image] for f in monoid))


def minimal_bound(algebra: FiniteAlgebra, mode='layered', budget=None):
    """
    Returns (m, certificate) for the least m the algebra is bounded by.

    The breadth-first witnesses of M(A) have height at most the closure
    depth and arity at most the signature's, so the search stops there.
    """
    monoid = translation_monoid(algebra)
    ceiling = max(monoid.max_depth, algebra.signature.max_arity)
    for m in range(ceiling + 1):
        result = check_bounded_by(algebra, m, mode=mode, budget=budget)
        if result:
            logger.debug('Minimal bound of %s is %d (ceiling %d)', algebra.name, m, ceiling)
            return m, result
    raise AssertionError('The breadth-first witnesses of %s exceed the ceiling %d' % (algebra.name, ceiling))


def _violations(checks):
    return [check.as_dict() for check in checks if not check]


def choe_bound(algebra: FiniteAlgebra, order) -> int:
    """
    The bound 2 * (number of symbols of arity >= 2) + sum of |M(A_w)| over
    the unary symbols w, minus the number of unary symbols, valid for
    algebras associative and distributive with respect to `order`.

    |M(A_w)| is the size of the monoid generated by w, identity included.
    Raises `PreconditionError` listing the violated laws otherwise.
    """
    if not isinstance(order, ChoeOrder):
        order = ChoeOrder(algebra, order)
    report = check_choe_distributive(algebra, order, require_associative=True)
    if not report:
        violations = _violations(report.checks)
        raise PreconditionError('%s is not associative and distributive with respect to %r: %s'
                                % (algebra.name, order,
                                   '; '.join(check.describe() for check in report.violations)),
                                violations)

    unary = algebra.signature.of_arity(1)
    bound = (2 * len(order.order) +
             sum(cyclic_monoid(algebra, symbol).size for symbol in unary) -
             len(unary))
    logger.debug('Choe bound of %s with %r is %d', algebra.name, order, bound)
    return bound


@dataclass(frozen=True)
class DecompositionCheck:
    """
    Whether M(A) = {f o g : f in M(outer), g in M(inner)} for the two
    reducts; `outer` and `inner` name the order that worked, or the order
    as given when neither does.
    """
    holds: bool
    outer: tuple
    inner: tuple
    outer_size: int
    inner_size: int
    counterexample: Optional[UnaryMap] = None

    def __bool__(self):
        return self.holds

    def as_dict(self):
        return {
            'holds': self.holds,
            'outer': list(self.outer),
            'inner': list(self.inner),
            'outer_size': self.outer_size,
            'inner_size': self.inner_size,
            'counterexample': self.counterexample.as_list() if self.counterexample is not None else None,
        }


def _symbol_names(algebra, part):
    names = []
    for s in part:
        name = getattr(s, 'name', s)
        algebra.signature[name]
        names.append(name)
    return tuple(names)


def commuting_decomposition_check(algebra: FiniteAlgebra, part1, part2) -> DecompositionCheck:
    """
    Checks whether every element of M(A) is a composite f o g with f and g
    from the translation monoids of the reducts on `part1` and `part2`.

    Both composition orders are tried, `part1` outer first.
    """
    first = _symbol_names(algebra, part1)
    second = _symbol_names(algebra, part2)
    operations = set(s.name for s in algebra.signature if s.arity >= 1)
    if set(first) & set(second) or set(first) | set(second) != operations:
        raise InvalidAlgebraError('%s and %s do not partition the symbols of arity >= 1 %s'
                                  % (list(first), list(second), sorted(operations)))

    monoid = translation_monoid(algebra)
    reducts = {part: translation_monoid(algebra.reduct(part)) for part in (first, second)}

    checks = []
    for outer, inner in ((first, second), (second, first)):
        composites = set(f.compose(g) for f in reducts[outer] for g in reducts[inner])
        missing = [f for f in monoid if f.image not in composites]
        check = DecompositionCheck(not missing, outer, inner, len(reducts[outer]), len(reducts[inner]),
                                   missing[0] if missing else None)
        if check:
            return check
        checks.append(check)
    return checks[0]


@dataclass(frozen=True)
class ClassVerification:
    """The axioms of a class of algebras and the bound it guarantees."""
    class_name: str
    bound: int
    laws: LawReport
    result: object = field(default=None)

    def __bool__(self):
        return bool(self.laws) and bool(self.result)


def _binary(algebra, count):
    binary = algebra.signature.of_arity(2)
    if len(binary) < count:
        raise PreconditionError('%s needs %d binary symbol(s), has %d' % (algebra.name, count, len(binary)))
    return binary


def _commutative(algebra, symbol):
    for a in algebra.elements:
        for b in algebra.elements:
            if algebra.evaluate(symbol.name, (a, b)) != algebra.evaluate(symbol.name, (b, a)):
                return LawCheck('commutative', (symbol.name,), False, witness=(a, b))
    return LawCheck('commutative', (symbol.name,), True)


def _identity_of(algebra, symbol):
    for e in algebra.elements:
        if all(algebra.evaluate(symbol.name, (e, a)) == a == algebra.evaluate(symbol.name, (a, e))
               for a in algebra.elements):
            return e
    return None


def _has_identity(algebra, symbol):
    e = _identity_of(algebra, symbol)
    return LawCheck('identity', (symbol.name,), e is not None, note={'identity': e})


def _has_inverses(algebra, symbol):
    e = _identity_of(algebra, symbol)
    if e is None:
        return LawCheck('inverses', (symbol.name,), False)
    for a in algebra.elements:
        if not any(algebra.evaluate(symbol.name, (a, b)) == e == algebra.evaluate(symbol.name, (b, a))
                   for b in algebra.elements):
            return LawCheck('inverses', (symbol.name,), False, witness=(a,))
    return LawCheck('inverses', (symbol.name,), True)


def _absorption(algebra, join, meet):
    for a in algebra.elements:
        for b in algebra.elements:
            if (algebra.evaluate(join.name, (a, algebra.evaluate(meet.name, (a, b)))) != a or
                    algebra.evaluate(meet.name, (a, algebra.evaluate(join.name, (a, b)))) != a):
                return LawCheck('absorption', (join.name, meet.name), False, witness=(a, b))
    return LawCheck('absorption', (join.name, meet.name), True)


def _complemented(algebra, join, meet, negation):
    tops = set(algebra.evaluate(join.name, (a, algebra.evaluate(negation.name, (a,)))) for a in algebra.elements)
    bottoms = set(algebra.evaluate(meet.name, (a, algebra.evaluate(negation.name, (a,)))) for a in algebra.elements)
    holds = len(tops) == 1 and len(bottoms) == 1
    return LawCheck('complement', (join.name, meet.name, negation.name), holds,
                    note={'tops': sorted(tops), 'bottoms': sorted(bottoms)})


def _semigroup_laws(algebra):
    return [check_associative(algebra, s) for s in _binary(algebra, 1)]


def _group_laws(algebra):
    product = _binary(algebra, 1)[0]
    return [check_associative(algebra, product), _has_identity(algebra, product), _has_inverses(algebra, product)]


def _semiring_laws(algebra):
    plus, times = _binary(algebra, 2)[:2]
    return [check_associative(algebra, plus), check_associative(algebra, times),
            _commutative(algebra, plus), check_distributes(algebra, times, plus)]


def _ring_laws(algebra):
    plus = _binary(algebra, 2)[0]
    return _semiring_laws(algebra) + [_has_inverses(algebra, plus)]


def _boolean_laws(algebra):
    join, meet = _binary(algebra, 2)[:2]
    unary = algebra.signature.of_arity(1)
    if not unary:
        raise PreconditionError('%s has no complement symbol' % algebra.name)
    return [check_associative(algebra, join), check_associative(algebra, meet),
            _commutative(algebra, join), _commutative(algebra, meet),
            check_distributes(algebra, meet, join), check_distributes(algebra, join, meet),
            _absorption(algebra, join, meet), _complemented(algebra, join, meet, unary[0])]


def _semimodule_laws(algebra):
    plus = _binary(algebra, 1)[0]
    checks = [check_associative(algebra, plus), _commutative(algebra, plus)]
    checks.extend(check_distributes(algebra, r, plus) for r in algebra.signature.of_arity(1))
    return checks


def _unary_laws(algebra):
    higher = [s for s in algebra.signature if s.arity >= 2]
    if higher:
        raise PreconditionError('%s has symbols of arity >= 2: %s' % (algebra.name, ', '.join(map(str, higher))))
    return [check_associative(algebra, s) for s in algebra.signature.of_arity(1)]


CLASSES = {
    'semigroup': (_semigroup_laws, lambda algebra: 2),
    'group': (_group_laws, lambda algebra: 3),
    'ring': (_ring_laws, lambda algebra: 3),
    'semiring': (_semiring_laws, lambda algebra: 3),
    'boolean': (_boolean_laws, lambda algebra: 3),
    'semimodule': (_semimodule_laws, lambda algebra: 2),
    'unary': (_unary_laws, lambda algebra: len(translation_monoid(algebra)) - 1),
}


def verify_class(algebra: FiniteAlgebra, class_name: str, mode='layered') -> ClassVerification:
    """
    Checks the axioms of `class_name` on `algebra` and then the bound the
    class guarantees: 2 for semigroups and semimodules, 3 for groups,
    rings, semirings and Boolean algebras, |M(A)| - 1 for unary algebras.

    Binary symbols are taken in catalog order (the first is the addition
    or the join). Raises `PreconditionError` when an axiom fails.
    """
    try:
        laws, bound = CLASSES[class_name]
    except KeyError:
        raise ValueError('Unknown class "%s"; expected one of %s' % (class_name, ', '.join(CLASSES)))

    report = LawReport(tuple(laws(algebra)))
    if not report:
        raise PreconditionError('%s is not a %s: %s'
                                % (algebra.name, class_name,
                                   '; '.join(check.describe() for check in report.violations)),
                                _violations(report.checks))
    m = bound(algebra)
    result = check_bounded_by(algebra, m, mode=mode)
    if not result:
        logger.warning('%s is a %s but is not bounded by %d', algebra.name, class_name, m)
    return ClassVerification(class_name, m, report, result)
