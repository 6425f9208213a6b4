# -*- coding: utf-8 -*-
from setuptools import setup, find_packages  # Always prefer setuptools over distutils
from codecs import open  # To use a consistent encoding
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='''affinecheck''',

    # Versions should comply with PEP440.
    version='0.0.1',

    description='''Exhaustive verification of quantale, V-category and '''
                '''affine set constructions on finite models''',
    long_description=long_description,

    license='AGPL',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
    ],

    keywords='''quantale enriched-category affine-set finite-model''',

    packages=find_packages(exclude=['contrib', 'docs']),
    python_requires='>=3.8',

    # List run-time dependencies here.  These will be installed by pip when your
    # project is installed. Pinned versions for development live in
    # requirements.txt.
    install_requires=[
        'numpy>=1.17',
        'networkx>=2.4',
        'python-slugify>=1.2.0',
    ],

    include_package_data=True,
    package_data={
        'affinecheck': ['default.ini'],
        'affinecheck.tests': ['test-data/*.json', 'test-data/*.ini'],
    },

    data_files=[],

    # To provide executable scripts, use entry points in preference to the
    # "scripts" keyword.
    entry_points='''
        [console_scripts]
        affinecheck=affinecheck.commands:main
    ''',
)
