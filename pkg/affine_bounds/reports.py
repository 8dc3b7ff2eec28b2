"""
One function per CLI verb, each wrapping a library operation into a
`Report`, and the text rendering of reports.
"""
from __future__ import annotations

import json
import logging

from .algebra import ChoeOrder, FiniteAlgebra, check_associative
from .boundedness import check_bounded_by, choe_bound, minimal_bound, verify_class
from .catalog import LinearCongruentialGenerator
from .congruence import congruence_lattice, is_simple, principal_congruence, quotient
from .documents import AlgebraDocument, Report
from .exceptions import PreconditionError
from .free_magma import depth_invariant_holds, format_power, free_magma_witness, random_proper_term
from .terms import format_term
from .translation import brute_force_affine_maps, translation_monoid

logger = logging.getLogger(__name__)

DEPTH_SAMPLES = 200


def _status(verdict):
    return 'ok' if verdict else 'fail'


def report_info(algebra: FiniteAlgebra, choe_order=None) -> Report:
    payload = {
        'name': algebra.name,
        'carrier': algebra.carrier_size,
        'symbols': [{'symbol': s.name, 'arity': s.arity} for s in algebra.signature],
        'laws': [check_associative(algebra, s).as_dict() for s in algebra.signature if s.arity >= 1],
    }
    if choe_order is not None:
        payload['choe_order'] = list(choe_order)
    return Report(status='ok', verb='info', payload=payload)


def report_monoid(algebra: FiniteAlgebra) -> Report:
    monoid = translation_monoid(algebra)
    return Report(status='ok', verb='monoid', payload={
        'size': len(monoid),
        'depth': monoid.max_depth,
        'generators': len(monoid.generators),
        'elements': [{'map': f.as_list(), 'term': format_term(f.witness), 'depth': monoid.depth(f)}
                     for f in monoid],
    })


def report_congruences(algebra: FiniteAlgebra) -> Report:
    lattice = congruence_lattice(algebra)
    return Report(status='ok', verb='congruences', payload={
        'count': len(lattice),
        'congruences': [c.blocks for c in lattice],
    })


def report_quotient(algebra: FiniteAlgebra, pair) -> Report:
    a, b = pair
    congruence = principal_congruence(algebra, a, b)
    result = quotient(algebra, congruence)
    return Report(status='ok', verb='quotient', payload={
        'pair': [a, b],
        'congruence': congruence.blocks,
        'quotient': AlgebraDocument.from_algebra(result).model_dump(exclude_none=True),
    })


def report_simple(algebra: FiniteAlgebra) -> Report:
    simple = is_simple(algebra)
    return Report(status=_status(simple), verb='simple', payload={
        'simple': simple,
        'congruences': len(congruence_lattice(algebra)),
    })


def report_bound(algebra: FiniteAlgebra, m, mode='layered', budget=None) -> Report:
    result = check_bounded_by(algebra, m, mode=mode, budget=budget)
    payload = {'bounded': bool(result), 'mode': mode}
    payload.update(result.as_dict())
    return Report(status=_status(result), verb='bound', payload=payload)


def report_minimal_bound(algebra: FiniteAlgebra, mode='layered', budget=None) -> Report:
    m, certificate = minimal_bound(algebra, mode=mode, budget=budget)
    return Report(status='ok', verb='minimal-bound', payload={'m': m, 'certificate': certificate.as_dict()})


def report_choe(algebra: FiniteAlgebra, order) -> Report:
    order = ChoeOrder(algebra, order)
    try:
        bound = choe_bound(algebra, order)
    except PreconditionError as e:
        return Report(status='fail', verb='choe', payload={
            'order': list(order.order),
            'error': str(e),
            'violations': e.violations,
        })
    result = check_bounded_by(algebra, bound)
    payload = {'order': list(order.order), 'bound': bound, 'bounded': bool(result)}
    payload.update(result.as_dict())
    return Report(status=_status(result), verb='choe', payload=payload)


def report_verify_class(algebra: FiniteAlgebra, class_name, mode='layered') -> Report:
    try:
        verification = verify_class(algebra, class_name, mode=mode)
    except PreconditionError as e:
        return Report(status='fail', verb='verify-class', payload={
            'class': class_name,
            'error': str(e),
            'violations': e.violations,
        })
    payload = {
        'class': class_name,
        'bound': verification.bound,
        'bounded': bool(verification.result),
        'laws': [check.as_dict() for check in verification.laws.checks],
    }
    payload.update(verification.result.as_dict())
    return Report(status=_status(verification), verb='verify-class', payload=payload)


def oracle_compare(algebra: FiniteAlgebra, max_height, max_arity, budget=None) -> Report:
    """
    Compares the skeleton enumeration with the translation monoid for every
    height up to `max_height`: ok iff the enumeration reaches M(A) and stays
    there.
    """
    monoid = translation_monoid(algebra)
    stabilization = None
    sizes = []
    for h in range(max_height + 1):
        maps = brute_force_affine_maps(algebra, h, max_arity, budget=budget)
        sizes.append(len(maps))
        if set(f.image for f in maps) == monoid.images:
            if stabilization is None:
                stabilization = h
        elif stabilization is not None:
            stabilization = None
            break
    logger.debug('Oracle on %s up to (%d, %d): sizes %s', algebra.name, max_height, max_arity, sizes)
    return Report(status=_status(stabilization is not None), verb='oracle-compare', payload={
        'max_height': max_height,
        'max_arity': max_arity,
        'monoid_size': len(monoid),
        'brute_force_size': sizes[-1],
        'sizes': sizes,
        'stabilization_height': stabilization,
    })


def report_free_magma(i_max, cap, seed, samples=DEPTH_SAMPLES) -> Report:
    report = free_magma_witness(i_max, cap)
    generator = LinearCongruentialGenerator(seed)
    violations = []
    for _ in range(samples):
        term = random_proper_term(generator, generator.randrange(max(i_max, 1) + 1), cap)
        if not depth_invariant_holds(term):
            violations.append(format_power(term))
    payload = report.as_dict()
    payload['depth_invariant'] = {'samples': samples, 'seed': seed, 'violations': violations}
    return Report(status=_status(report.holds and not violations), verb='free-magma', payload=payload)


def error_report(verb, error) -> Report:
    return Report(status='error', verb=verb, payload={'error': str(error), 'type': type(error).__name__})


def render(report: Report, limit=None) -> str:
    """
    Renders a report as text: scalars one per line, lists one item per
    line, at most `limit` items each (None shows everything).
    """
    lines = ['%s: %s' % (report.verb, report.status)]
    _render_mapping(report.payload, lines, '', limit)
    return '\n'.join(lines)


def _render_mapping(mapping, lines, indent, limit):
    for key, value in mapping.items():
        if isinstance(value, dict) and value and key != 'quotient':
            lines.append('%s%s:' % (indent, key))
            _render_mapping(value, lines, indent + '  ', limit)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append('%s%s (%d):' % (indent, key, len(value)))
            shown = value if limit is None else value[:limit]
            for item in shown:
                lines.append('%s  %s' % (indent, _inline(item)))
            if len(shown) < len(value):
                lines.append('%s  ... %d more (use --all)' % (indent, len(value) - len(shown)))
        else:
            lines.append('%s%s: %s' % (indent, key, _inline(value)))


def _inline(value):
    if isinstance(value, dict) and set(value) >= {'map', 'term'}:
        return '%s  %s' % (value['map'], value['term'])
    if isinstance(value, (dict, list, bool)) or value is None:
        return json.dumps(value)
    return str(value)
