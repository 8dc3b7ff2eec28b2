import io
import json
import os
import shutil
import tempfile

from django.test import SimpleTestCase, override_settings

from affine_bounds.boundedness import check_bounded_by, minimal_bound
from affine_bounds.cli import run
from affine_bounds.documents import dump_algebra
from affine_bounds.terms import format_term
from affine_bounds.translation import translation_monoid

from ..fixtures import z6


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.path = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.path)

    def write_algebra(self, text):
        path = os.path.join(self.path, 'algebra.json')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def run_json(self, *argv, **kwargs):
        code, out, err = run(list(argv) + ['--json'], **kwargs)
        return code, json.loads(out)

    def test_info(self):
        code, report = self.run_json('info', '--builtin', 'zn_ring:6')
        self.assertEqual(code, 0)
        self.assertEqual(report['status'], 'ok')
        self.assertEqual(report['verb'], 'info')
        self.assertEqual(report['payload']['carrier'], 6)
        self.assertEqual(report['payload']['symbols'], [{'symbol': '+', 'arity': 2}, {'symbol': '*', 'arity': 2}])

    def test_monoid(self):
        code, report = self.run_json('monoid', '--builtin', 'zn_ring:6')
        self.assertEqual(code, 0)
        payload = report['payload']
        self.assertEqual((payload['size'], payload['depth']), (36, 2))
        monoid = translation_monoid(z6())
        self.assertEqual([e['map'] for e in payload['elements']], [f.as_list() for f in monoid])
        self.assertEqual([e['term'] for e in payload['elements']], [format_term(f.witness) for f in monoid])

    def test_congruences(self):
        code, report = self.run_json('congruences', '--builtin', 'zn_ring:6')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['count'], 4)
        self.assertEqual(report['payload']['congruences'][1], [[0, 3], [1, 4], [2, 5]])

    def test_quotient(self):
        code, report = self.run_json('quotient', '--builtin', 'zn_ring:6', '--pair', '0,3')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['quotient']['carrier'], 3)
        self.assertEqual(run(['quotient', '--builtin', 'zn_ring:6', '--pair', '0'])[0], 2)
        self.assertEqual(run(['quotient', '--builtin', 'zn_ring:6'])[0], 2)
        self.assertEqual(run(['quotient', '--builtin', 'zn_ring:6', '--pair', '0,9'])[0], 2)

    def test_simple(self):
        self.assertEqual(run(['simple', '--builtin', 'zn_ring:5'])[0], 0)
        code, report = self.run_json('simple', '--builtin', 'zn_ring:6')
        self.assertEqual(code, 1)
        self.assertEqual(report['status'], 'fail')
        self.assertFalse(report['payload']['simple'])

    def test_bound(self):
        code, report = self.run_json('bound', '--builtin', 'zn_ring:6', '--m', '3')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['witnesses'], check_bounded_by(z6(), 3).as_dict()['witnesses'])
        code, report = self.run_json('bound', '--builtin', 'zn_ring:6', '--m', '1')
        self.assertEqual(code, 1)
        self.assertIn([1, 2, 3, 4, 5, 0], report['payload']['missing'])
        code, report = self.run_json('bound', '--builtin', 'zn_ring:6', '--m', '2', '--mode', 'skeleton')
        self.assertEqual(code, 0)

    def test_bound_requires_m(self):
        code, out, err = run(['bound', '--builtin', 'zn_ring:6'])
        self.assertEqual(code, 2)
        self.assertIn('requires --m', err)
        self.assertIn('usage:', err)

    def test_json_usage_errors(self):
        code, report = self.run_json('bound', '--builtin', 'zn_ring:6')
        self.assertEqual(code, 2)
        self.assertEqual((report['status'], report['verb']), ('error', 'bound'))
        self.assertIn('requires --m', report['payload']['error'])
        for argv in [['quotient', '--builtin', 'zn_ring:6'], ['choe', '--builtin', 'zn_ring:6'],
                     ['verify-class', '--builtin', 'zn_ring:6'], ['free-magma'], ['info'],
                     ['bound', '--builtin', 'zn_ring:6', '--m', 'three'], ['prove']]:
            code, out, err = run(argv + ['--json'])
            self.assertEqual(code, 2)
            self.assertEqual(json.loads(out)['status'], 'error')
            self.assertIn('usage:', err)

    def test_minimal_bound(self):
        code, report = self.run_json('minimal-bound', '--builtin', 'sym_group:3')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['m'], 3)
        m, certificate = minimal_bound(z6())
        code, report = self.run_json('minimal-bound', '--builtin', 'zn_ring:6')
        self.assertEqual(report['payload'], {'m': m, 'certificate': certificate.as_dict()})

    def test_choe(self):
        code, report = self.run_json('choe', '--builtin', 'zn_ring:6', '--order', '+,*')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['bound'], 4)
        code, report = self.run_json('choe', '--builtin', 'zn_ring:6', '--order', '*,+')
        self.assertEqual(code, 1)
        self.assertEqual(report['payload']['violations'][0]['law'], 'distributes')
        self.assertEqual(run(['choe', '--builtin', 'zn_ring:6'])[0], 2)
        self.assertEqual(run(['choe', '--builtin', 'zn_ring:6', '--order', '+'])[0], 2)

    def test_choe_order_from_file(self):
        path = self.write_algebra(dump_algebra(z6(), ['+', '*']))
        code, report = self.run_json('choe', '--algebra', path)
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['order'], ['+', '*'])

    def test_verify_class(self):
        code, report = self.run_json('verify-class', '--builtin', 'zn_ring:6', '--class', 'ring')
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['bound'], 3)
        code, report = self.run_json('verify-class', '--builtin', 'left_zero_semigroup:2', '--class', 'group')
        self.assertEqual(code, 1)
        self.assertTrue(report['payload']['violations'])
        self.assertEqual(run(['verify-class', '--builtin', 'zn_ring:6'])[0], 2)
        self.assertEqual(run(['verify-class', '--builtin', 'zn_ring:6', '--class', 'field'])[0], 2)

    def test_oracle_compare(self):
        code, report = self.run_json('oracle-compare', '--builtin', 'zn_ring:6', '--max-height', '3',
                                     '--max-arity', '2')
        self.assertEqual(code, 0)
        payload = report['payload']
        self.assertEqual(payload['stabilization_height'], 2)
        self.assertEqual(payload['monoid_size'], 36)
        self.assertEqual(payload['brute_force_size'], 36)
        self.assertEqual(payload['sizes'], [1, 11, 36, 36])

        code, report = self.run_json('oracle-compare', '--builtin', 'zn_ring:6', '--max-height', '0',
                                     '--max-arity', '0')
        self.assertEqual(code, 1)
        self.assertIsNone(report['payload']['stabilization_height'])

    def test_oracle_budget(self):
        code, report = self.run_json('oracle-compare', '--builtin', 'zn_ring:6', '--max-height', '5',
                                     '--max-arity', '2')
        self.assertEqual(code, 2)
        self.assertEqual(report['status'], 'error')
        self.assertEqual(report['payload']['type'], 'BudgetExceededError')

    def test_free_magma(self):
        code, report = self.run_json('free-magma', '--seed', '7')
        self.assertEqual(code, 0)
        payload = report['payload']
        self.assertTrue(payload['holds'])
        self.assertEqual(len(payload['rows']), 5)
        self.assertEqual(payload['depth_invariant']['violations'], [])
        self.assertEqual(run(['free-magma'])[0], 2)
        self.assertEqual(run(['free-magma', '--seed', '7', '--i-max', '7'])[0], 2)

    def test_algebra_from_stdin(self):
        text = dump_algebra(z6())
        code, report = self.run_json('monoid', '--algebra', '-', stdin=io.StringIO(text))
        self.assertEqual(code, 0)
        self.assertEqual(report['payload']['size'], 36)

    def test_malformed_document(self):
        path = self.write_algebra('{\n  "carrier": 3,\n')
        code, out, err = run(['info', '--algebra', path])
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('line', err)

    def test_unknown_field(self):
        path = self.write_algebra('{"carrier": 3, "colour": "red"}')
        code, out, err = run(['info', '--algebra', path])
        self.assertEqual(code, 2)
        self.assertIn('colour', err)

    def test_missing_file(self):
        self.assertEqual(run(['info', '--algebra', os.path.join(self.path, 'missing.json')])[0], 2)

    def test_usage_errors(self):
        code, out, err = run(['info', '--builtin', 'zn_ring:6', '--algebra', 'a.json'])
        self.assertEqual(code, 2)
        self.assertIn('usage:', err)
        self.assertEqual(run(['prove', '--builtin', 'zn_ring:6'])[0], 2)
        self.assertEqual(run(['info'])[0], 2)
        self.assertEqual(run(['bound', '--builtin', 'zn_ring:6', '--m', 'three'])[0], 2)
        self.assertEqual(run(['info', '--builtin', 'field:5'])[0], 2)

    def test_text_output(self):
        code, out, err = run(['bound', '--builtin', 'zn_ring:6', '--m', '2'])
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('bound: ok'))
        self.assertIn('witnesses (36):', out)
        self.assertNotIn('more (use --all)', out)

    @override_settings(AFFINE_REPORT_WITNESS_LIMIT=5)
    def test_witness_limit(self):
        code, out, err = run(['monoid', '--builtin', 'zn_ring:6'])
        self.assertIn('... 31 more (use --all)', out)
        code, out, err = run(['monoid', '--builtin', 'zn_ring:6', '--all'])
        self.assertNotIn('more (use --all)', out)
