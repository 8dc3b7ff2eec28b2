# -*- coding: utf-8 -*-
import os

from setuptools import find_packages, setup


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as f:
        return f.read()

setup(
    name='affine-bounds',
    version='1.0.0',
    description='Translation monoids, congruences and affine bounds of finite algebras',
    long_description=read('README.rst'),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Framework :: Django',
    ],
    license='GPL2',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    install_requires=[
        'django>=3.2',
        'pydantic>=2.0',
    ],
    extras_require={
        'tests': ['hypothesis>=6.0'],
    },
    entry_points={
        'console_scripts': [
            'affine-bounds=affine_bounds.cli:main',
        ],
    },
)
