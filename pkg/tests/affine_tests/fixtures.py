from affine_bounds.algebra import FiniteAlgebra, Symbol
from affine_bounds.catalog import LinearCongruentialGenerator, builtin_algebra, random_algebra


def z6():
    return builtin_algebra('zn_ring', [6])


def lz2():
    return builtin_algebra('left_zero_semigroup', [2])


def s3():
    return builtin_algebra('sym_group', [3])


def minus_mod3():
    """(a - b) mod 3, the standard non-associative operation."""
    return FiniteAlgebra(3, [(Symbol('-', 2), [(a - b) % 3 for a in range(3) for b in range(3)])], name='minus3')


def constants_only(n=3):
    return FiniteAlgebra(n, [(Symbol('c', 0), [0])], name='constants')


def transpositions():
    """The transpositions (0 1) and (1 2) of three points: M(A) is all of S3."""
    return FiniteAlgebra(3, [
        (Symbol('p', 1), [1, 0, 2]),
        (Symbol('q', 1), [0, 2, 1]),
    ], name='transpositions')


def affine_image(n, a, b):
    """z -> a*z + b mod n."""
    return tuple((a * z + b) % n for z in range(n))


def seeded_algebras(count, seed, max_carrier=4, max_symbols=3):
    """
    Deterministic random algebras with at most `max_symbols` symbols of
    arity <= 2 on carriers of size <= `max_carrier`.
    """
    generator = LinearCongruentialGenerator(seed)
    algebras = []
    for _ in range(count):
        n = 1 + generator.randrange(max_carrier)
        symbols = [Symbol('s%d' % j, generator.choice((0, 1, 2, 2)))
                   for j in range(1 + generator.randrange(max_symbols))]
        algebras.append(random_algebra(generator, n, symbols))
    return algebras


def small_builtins():
    """Every catalog algebra with carrier <= 6 used as a standing fixture."""
    specs = [
        ('zn_ring', [n]) for n in range(1, 7)
    ] + [
        ('zn_group', [n]) for n in range(1, 7)
    ] + [
        ('sym_group', [1]), ('sym_group', [2]), ('sym_group', [3]),
        ('left_zero_semigroup', [2]), ('left_zero_semigroup', [3]),
        ('divisor_lattice', [6]), ('divisor_lattice', [12]),
        ('boolean_algebra', [1]), ('boolean_algebra', [2]),
        ('boolean_semiring', []),
        ('boolean_semimodule', [1]), ('boolean_semimodule', [2]),
        ('random_magma', [3, 11]), ('random_magma', [4, 5]),
        ('random_unary', [5, 3]), ('successor_chain', [6, 2]),
    ]
    return [builtin_algebra(kind, params) for kind, params in specs]
