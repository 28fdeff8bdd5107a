# -*- coding: utf-8 -*-

import os
import subprocess  # nosec
import sys

from setuptools import setup

os.chdir(os.path.dirname(os.path.realpath(__file__)))

with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

package_name = 'kitbath'
version = subprocess.check_output([sys.executable,  # nosec
                                   os.path.join('scripts', 'find_version.py')],
                                  universal_newlines=True).strip()

setup(
    name=package_name,
    version=version,
    description='Covariance matrices of a dissipative Kitaev chain coupled to a Markovian bath.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Physics',
        'Typing :: Typed',
    ],
    keywords=['kitaev chain', 'open quantum systems', 'covariance matrix', 'majorana fermions'],
    packages=[package_name],
    package_data={package_name: ['schema.json']},
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.20',          # linear algebra and fitting
        'scipy>=1.6',           # quadrature and ODE integration
        'tbtrim>=0.2.1',        # traceback trim support
        'bpc-utils~=0.10.0',    # utility library
        'jsonschema>=3.2',      # run configuration schema
        'typing_extensions',
    ],
    extras_require={
        'lint': [
            'flake8',
            'pylint',
            'mypy',
            'bandit>=1.6.3',
            'vermin>=1.1.0',
            'colorlabels>=0.7.0',
        ],
        'test': [
            'pytest>=4.5.0',
            'pytest-doctestplus>=0.5.0',
            'coverage',
        ],
        'docs': [
            'Sphinx',
            'sphinx-autodoc-typehints',
            'sphinxemoji',
        ],
        'plot': [
            'matplotlib',
        ],
    },
    entry_points={
        'console_scripts': [
            'kitbath = kitbath.cli:main',
        ]
    },
)
