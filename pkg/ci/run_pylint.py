import itertools
import os
import pathlib
import subprocess  # nosec
import sys
from typing import List

if not os.path.isfile('setup.py'):
    sys.exit('Please execute this script in the project root directory.')

plugins = ['check_elif', 'docstyle', 'emptystring', 'overlapping_exceptions']
enabled = ['F', 'E', 'W', 'R', 'basic', 'classes', 'format', 'imports', 'refactoring', 'else_if_used', 'docstyle',
           'compare-to-empty-string', 'overlapping-except']
disabled = ['blacklisted-name', 'invalid-name', 'missing-class-docstring', 'missing-function-docstring',
            'missing-module-docstring', 'design', 'too-many-lines', 'eq-without-hash', 'old-division',
            'no-absolute-import', 'input-builtin', 'too-many-nested-blocks']

pylint_args = [
    '--load-plugins=' + ','.join('pylint.extensions.' + plugin for plugin in plugins),
    '--disable=all',
    '--enable=' + ','.join(enabled),
    '--disable=' + ','.join(disabled),
    '--max-line-length=120',
    '--init-import=yes',
]  # type: List[str]

current_dir = pathlib.Path('.')
py_files = sorted(str(path) for path in itertools.chain(
    current_dir.glob('./**/*.py'),
    current_dir.glob('./**/*.pyi'),
) if path.parts[0] in ('kitbath', 'tests', 'ci', 'scripts', 'docs', 'setup.py'))

sys.exit(subprocess.call(['pylint'] + pylint_args + ['--'] + py_files))  # nosec
