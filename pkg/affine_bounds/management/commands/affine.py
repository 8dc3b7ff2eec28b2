import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from affine_bounds import reports
from affine_bounds.boundedness import CLASSES, MODES
from affine_bounds.catalog import parse_builtin
from affine_bounds.conf import get_setting
from affine_bounds.documents import load_algebra, load_algebra_file
from affine_bounds.exceptions import AffineError

logger = logging.getLogger(__name__)

VERBS = (
    'info', 'monoid', 'congruences', 'quotient', 'simple', 'bound', 'minimal-bound',
    'choe', 'verify-class', 'oracle-compare', 'free-magma',
)


def _natural(text):
    value = int(text)
    if value < 0:
        raise ValueError(text)
    return value


def _names(text):
    return [name.strip() for name in text.split(',') if name.strip()]


class Command(BaseCommand):
    help = 'Translation monoids, congruences and affine bounds of finite algebras.'
    requires_system_checks = []
    stealth_options = ('stdin',)

    exit_code = 0

    def add_arguments(self, parser):
        parser.add_argument('verb', choices=VERBS)

        source = parser.add_mutually_exclusive_group()
        source.add_argument('--algebra', metavar='FILE',
                            help='Algebra file (JSON); "-" reads standard input.')
        source.add_argument('--builtin', metavar='NAME:P1,P2',
                            help='A catalog algebra, e.g. zn_ring:6.')

        parser.add_argument('--m', type=_natural, help='Bound on height and arity.')
        parser.add_argument('--max-height', type=_natural)
        parser.add_argument('--max-arity', type=_natural)
        parser.add_argument('--order', type=_names, help='Choe order, e.g. join,meet.')
        parser.add_argument('--class', dest='class_name', choices=sorted(CLASSES))
        parser.add_argument('--pair', help='Generating pair a,b of a principal congruence.')
        parser.add_argument('--mode', choices=MODES, default='layered')
        parser.add_argument('--json', action='store_true', help='Print exactly one JSON report.')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--budget', type=_natural, help='Skeleton enumeration budget.')
        parser.add_argument('--all', action='store_true', help='List every witness in text output.')
        parser.add_argument('--i-max', type=_natural, default=5)
        parser.add_argument('--cap', type=_natural, default=10)

    def run_from_argv(self, argv):
        super(Command, self).run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    def handle(self, *args, **options):
        verb = options['verb']
        try:
            report = self.dispatch(verb, options)
        except CommandError as e:
            if options['json']:
                self.stdout.write(reports.error_report(verb, e).model_dump_json())
            raise
        except AffineError as e:
            logger.debug('%s failed: %s', verb, e)
            report = reports.error_report(verb, e)
            self.stderr.write('Error: %s' % e)

        self.exit_code = report.exit_code
        if options['json']:
            self.stdout.write(report.model_dump_json())
        elif report.status != 'error':
            limit = None if options['all'] else get_setting('AFFINE_REPORT_WITNESS_LIMIT')
            self.stdout.write(reports.render(report, limit))

    def dispatch(self, verb, options):
        if verb == 'free-magma':
            if options['seed'] is None:
                raise CommandError('free-magma draws random terms and requires --seed', returncode=2)
            return reports.report_free_magma(options['i_max'], options['cap'], options['seed'])

        algebra, choe_order = self.load(options)
        if verb == 'info':
            return reports.report_info(algebra, choe_order)
        if verb == 'monoid':
            return reports.report_monoid(algebra)
        if verb == 'congruences':
            return reports.report_congruences(algebra)
        if verb == 'quotient':
            return reports.report_quotient(algebra, self.pair(options))
        if verb == 'simple':
            return reports.report_simple(algebra)
        if verb == 'bound':
            return reports.report_bound(algebra, self.require(options, 'm'), options['mode'], options['budget'])
        if verb == 'minimal-bound':
            return reports.report_minimal_bound(algebra, options['mode'], options['budget'])
        if verb == 'choe':
            order = options['order'] or choe_order
            if not order:
                raise CommandError('choe requires --order or a "choe_order" in the algebra file', returncode=2)
            return reports.report_choe(algebra, order)
        if verb == 'verify-class':
            return reports.report_verify_class(algebra, self.require(options, 'class_name', '--class'),
                                               options['mode'])
        return reports.oracle_compare(algebra, self.require(options, 'max_height', '--max-height'),
                                      self.require(options, 'max_arity', '--max-arity'), options['budget'])

    def require(self, options, name, flag=None):
        if options[name] is None:
            raise CommandError('%s requires %s' % (options['verb'], flag or '--' + name), returncode=2)
        return options[name]

    def pair(self, options):
        text = self.require(options, 'pair')
        try:
            a, b = [int(v) for v in text.split(',')]
        except ValueError:
            raise CommandError('--pair expects two elements a,b, got "%s"' % text, returncode=2)
        return a, b

    def load(self, options):
        if options['builtin']:
            return parse_builtin(options['builtin']), None
        path = options['algebra']
        if not path:
            raise CommandError('%s requires --algebra or --builtin' % options['verb'], returncode=2)
        if path == '-':
            stdin = options.get('stdin') or sys.stdin
            text = stdin if isinstance(stdin, str) else stdin.read()
            return load_algebra(text.encode('utf-8'))
        return load_algebra_file(path)
