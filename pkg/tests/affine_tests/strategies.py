from hypothesis import HealthCheck, settings, strategies as st

from affine_bounds.algebra import Symbol
from affine_bounds.catalog import LinearCongruentialGenerator, random_algebra
from affine_bounds.terms import Apply, Constant, X

SYMBOLS = (Symbol('c', 0), Symbol('f', 1), Symbol('g', 2), Symbol('h', 2))


@st.composite
def algebras(draw, max_carrier=4):
    n = draw(st.integers(min_value=1, max_value=max_carrier))
    seed = draw(st.integers(min_value=0, max_value=2 ** 64 - 1))
    chosen = draw(st.lists(st.sampled_from(SYMBOLS), min_size=1, max_size=3, unique=True))
    return random_algebra(LinearCongruentialGenerator(seed), n, [s for s in SYMBOLS if s in chosen])


def _leaf(draw, algebra, allow_x):
    nullary = algebra.signature.of_arity(0)
    kinds = ['constant'] + (['nullary'] if nullary else []) + (['x'] if allow_x else [])
    kind = draw(st.sampled_from(kinds))
    if kind == 'x':
        return X
    if kind == 'nullary':
        return Apply(draw(st.sampled_from(nullary)), ())
    return Constant(draw(st.integers(min_value=0, max_value=algebra.carrier_size - 1)))


def _operations(algebra):
    return [s for s in algebra.signature if s.arity >= 1]


@st.composite
def terms(draw, algebra, max_height=3):
    """Arbitrary terms in x; x may occur any number of times."""
    operations = _operations(algebra)

    def build(height):
        if height == 0 or not operations or draw(st.integers(min_value=0, max_value=3)) == 0:
            return _leaf(draw, algebra, allow_x=True)
        symbol = draw(st.sampled_from(operations))
        return Apply(symbol, tuple(build(height - 1) for _ in range(symbol.arity)))

    return build(max_height)


@st.composite
def closed_terms(draw, algebra, max_height=2):
    operations = _operations(algebra)

    def build(height):
        if height == 0 or not operations or draw(st.booleans()):
            return _leaf(draw, algebra, allow_x=False)
        symbol = draw(st.sampled_from(operations))
        return Apply(symbol, tuple(build(height - 1) for _ in range(symbol.arity)))

    return build(max_height)


@st.composite
def affine_terms(draw, algebra, max_height=3, proper=None):
    """
    Terms with x at most once; `proper` forces (True) or forbids (False) x,
    None leaves it to the draw.
    """
    if proper is None:
        proper = draw(st.booleans())
    if not proper:
        return draw(closed_terms(algebra, max_height))

    operations = _operations(algebra)

    def build(height):
        if height == 0 or not operations or draw(st.integers(min_value=0, max_value=3)) == 0:
            return X
        symbol = draw(st.sampled_from(operations))
        slot = draw(st.integers(min_value=0, max_value=symbol.arity - 1))
        children = [draw(closed_terms(algebra, height - 1)) for _ in range(symbol.arity - 1)]
        children.insert(slot, build(height - 1))
        return Apply(symbol, tuple(children))

    return build(max_height)


# the identity suites run a fixed, reproducible corpus
identity_settings = settings(max_examples=1000, derandomize=True, deadline=None,
                             suppress_health_check=list(HealthCheck))
sample_settings = settings(identity_settings, max_examples=200)
