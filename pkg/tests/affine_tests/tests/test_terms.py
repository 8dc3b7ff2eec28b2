from django.test import SimpleTestCase, override_settings
from hypothesis import given, strategies as st

from affine_bounds.exceptions import (
    BudgetExceededError, NonLinearTermError, ShapeMismatchError, TermSyntaxError
)
from affine_bounds.terms import (
    SKELETON_X, AffineTerm, Apply, Constant, Params, Skeleton, X, concat,
    count_skeletons, enumerate_skeletons, format_params, format_skeleton, format_term,
    parse_term, skeleton_measures, skeletonize, term_measures, unskeletonize
)

from ..fixtures import z6
from ..strategies import affine_terms, algebras, identity_settings, sample_settings, terms


def parse(src, algebra=None):
    algebra = algebra or z6()
    return parse_term(src, algebra.signature, algebra.carrier_size)


class ParserTestCase(SimpleTestCase):

    def test_parse_and_format(self):
        for src in ['x', '#3', '(+ (* #2 x) #3)', '(* x (+ x #1))']:
            self.assertEqual(format_term(parse(src)), src)
        self.assertEqual(format_term(parse('  ( +   x\n #1 ) ')), '(+ x #1)')

    def test_nullary_symbols(self):
        from affine_bounds.catalog import builtin_algebra
        algebra = builtin_algebra('zn_group', [4])
        term = parse('(+ x zero)', algebra)
        self.assertEqual(term, Apply(algebra.symbol('+'), (X, Apply(algebra.symbol('zero'), ()))))
        self.assertEqual(format_term(term), '(+ x zero)')

    def assertSyntaxError(self, src, offset):
        with self.assertRaises(TermSyntaxError) as cm:
            parse(src)
        self.assertEqual(cm.exception.offset, offset)

    def test_errors(self):
        self.assertSyntaxError('(+ x)', 1)
        self.assertSyntaxError('(foo x)', 1)
        self.assertSyntaxError('#9', 0)
        self.assertSyntaxError('#a', 0)
        self.assertSyntaxError('(+ x #1', 7)
        self.assertSyntaxError('x y', 2)
        self.assertSyntaxError('', 0)
        self.assertSyntaxError('(x)', 1)
        self.assertSyntaxError('+', 0)
        self.assertSyntaxError(')', 0)

    def test_error_message_carries_offset(self):
        with self.assertRaises(TermSyntaxError) as cm:
            parse('(+ x #1 #2 #3)')
        self.assertIn('(at offset 1)', str(cm.exception))

    def test_deep_nesting(self):
        src = '(+ ' * 1500 + 'x' + ' #1)' * 1500
        term = parse(src)
        self.assertEqual(term_measures(term), (1500, 2, 1))
        self.assertEqual(format_term(term), src)
        self.assertEqual(term, parse(src))
        self.assertEqual(hash(term), hash(parse(src)))
        self.assertNotEqual(term, parse(src.replace('#1)', '#2)', 1)))
        self.assertSyntaxError(src[:-1], len(src) - 1)


class MeasuresTestCase(SimpleTestCase):

    def test_measures(self):
        self.assertEqual(tuple(term_measures(parse('(+ (* #2 x) #3)'))), (2, 2, 1))
        self.assertEqual(tuple(term_measures(X)), (0, 0, 1))
        self.assertEqual(tuple(term_measures(Constant(1))), (0, 0, 0))
        self.assertEqual(tuple(term_measures(parse('(* x (+ x #1))'))), (2, 2, 2))

    def test_affine_terms(self):
        self.assertTrue(AffineTerm(parse('(+ x #1)')).proper)
        self.assertFalse(AffineTerm(parse('(+ #2 #1)')).proper)
        self.assertRaises(NonLinearTermError, AffineTerm, parse('(* x (+ x #1))'))

    def test_concat(self):
        s = parse('(+ x #1)')
        t = parse('(* #2 x)')
        self.assertEqual(format_term(concat(s, t)), '(+ (* #2 x) #1)')
        self.assertEqual(concat(s, t).height, 2)
        self.assertEqual(concat(parse('(+ #2 #1)'), t), AffineTerm(parse('(+ #2 #1)')))
        self.assertEqual(concat(X, t), AffineTerm(t))
        self.assertEqual(concat(s, X), AffineTerm(s))

    def test_apply_checks_arity(self):
        self.assertRaises(ShapeMismatchError, Apply, z6().symbol('+'), (X,))


class SkeletonTestCase(SimpleTestCase):

    def test_skeletonize(self):
        skeleton, params = skeletonize(parse('(+ (* #2 x) #3)'))
        self.assertEqual(format_skeleton(skeleton), '(2 (2 * x) *)')
        self.assertEqual(format_params(params), '(+ (* 2 -) 3)')
        self.assertEqual(skeletonize(X), (SKELETON_X, Params()))

    def test_unskeletonize_checks_shape(self):
        skeleton, params = skeletonize(parse('(+ x #3)'))
        self.assertRaises(ShapeMismatchError, unskeletonize, skeleton, Params(z6().symbol('+'), (Params(), Params())))
        self.assertRaises(ShapeMismatchError, unskeletonize, Skeleton('*'), Params(z6().symbol('+')))
        self.assertRaises(ShapeMismatchError, unskeletonize, Skeleton(1, (SKELETON_X,)),
                          Params(z6().symbol('+'), (Params(),)))

    def test_counts_match_enumeration(self):
        for max_height in range(3):
            for max_arity in range(4):
                linear, _ = count_skeletons(max_height, max_arity)
                skeletons = enumerate_skeletons(max_height, max_arity)
                self.assertEqual(len(skeletons), linear)
                self.assertEqual(skeletons[0], SKELETON_X)
                for skeleton in skeletons:
                    measures = skeleton_measures(skeleton)
                    self.assertEqual(measures.x_count, 1)
                    self.assertLessEqual(measures.height, max_height)
                    self.assertLessEqual(measures.arity, max_arity)

    def test_known_counts(self):
        self.assertEqual(count_skeletons(0, 2), (1, 2))
        self.assertEqual(count_skeletons(1, 1), (2, 4))
        self.assertEqual(count_skeletons(2, 2)[0], 103)
        self.assertEqual(count_skeletons(3, 2)[0], 15348)

    def test_enumeration_order(self):
        skeletons = enumerate_skeletons(2, 2)
        keys = [(skeleton_measures(s).height, skeleton_measures(s).arity) for s in skeletons]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual([format_skeleton(s) for s in skeletons[:2]], ['x', '(1 x)'])

    def test_small_enumerations(self):
        self.assertEqual(enumerate_skeletons(0, 2), [SKELETON_X])
        self.assertEqual([format_skeleton(s) for s in enumerate_skeletons(1, 1)], ['x', '(1 x)'])
        self.assertEqual(set(format_skeleton(s) for s in enumerate_skeletons(1, 2)),
                         {'x', '(1 x)', '(2 x *)', '(2 * x)', '(2 x 0)', '(2 0 x)'})

    def test_budget(self):
        self.assertRaises(BudgetExceededError, enumerate_skeletons, 4, 2)
        self.assertRaises(BudgetExceededError, enumerate_skeletons, 1, 5)
        self.assertEqual(len(enumerate_skeletons(3, 2)), 15348)

    @override_settings(AFFINE_ENUMERATION_BUDGET=50)
    def test_budget_setting(self):
        self.assertRaises(BudgetExceededError, enumerate_skeletons, 2, 2)
        self.assertEqual(len(enumerate_skeletons(2, 2, budget=103)), 103)


class TermIdentityTestCase(SimpleTestCase):

    @identity_settings
    @given(st.data())
    def test_skeleton_round_trip(self, data):
        algebra = data.draw(algebras())
        term = data.draw(terms(algebra))
        skeleton, params = skeletonize(term)
        self.assertEqual(unskeletonize(skeleton, params), term)

    @identity_settings
    @given(st.data())
    def test_skeleton_keeps_measures(self, data):
        algebra = data.draw(algebras())
        term = data.draw(terms(algebra))
        self.assertEqual(skeleton_measures(skeletonize(term)[0]), term_measures(term))

    @sample_settings
    @given(st.data())
    def test_format_parse(self, data):
        algebra = data.draw(algebras())
        term = data.draw(terms(algebra))
        self.assertEqual(parse_term(format_term(term), algebra.signature, algebra.carrier_size), term)

    @sample_settings
    @given(st.data())
    def test_concat_is_a_monoid(self, data):
        algebra = data.draw(algebras())
        s, t, u = [AffineTerm(data.draw(affine_terms(algebra))) for _ in range(3)]
        self.assertEqual(concat(s, concat(t, u)), concat(concat(s, t), u))
        self.assertEqual(concat(X, s), s)
        self.assertEqual(concat(s, X), s)

    @sample_settings
    @given(st.data())
    def test_concat_adds_heights(self, data):
        algebra = data.draw(algebras())
        s = AffineTerm(data.draw(affine_terms(algebra, proper=True)))
        t = AffineTerm(data.draw(affine_terms(algebra)))
        joined = concat(s, t)
        self.assertLessEqual(joined.height, s.height + t.height)
        self.assertEqual(joined.proper, t.proper)
        self.assertEqual(joined.arity, max(s.arity, t.arity))
