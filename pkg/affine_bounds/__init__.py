"""
Translation monoids, congruences and affine bounds of finite algebras.
"""
__version__ = '1.0.0'
