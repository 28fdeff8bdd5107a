# -*- coding: utf-8 -*-
# pylint: disable=no-member

import contextlib
import io
import json
import math
import os
import sys
import tempfile
import unittest

# root path
ROOT = os.path.dirname(os.path.realpath(__file__))
sys.path.insert(0, os.path.abspath(os.path.join(ROOT, '..')))
from kitbath import __version__
from kitbath.cli import COMMANDS, SCHEMA_PATH, get_parser, main, parse_config, run
from kitbath.errors import ConfigError
sys.path.pop(0)

# environs
os.environ['KITBATH_QUIET'] = 'true'
os.environ['KITBATH_CONCURRENCY'] = '1'


@contextlib.contextmanager
def test_environ(**env):
    _env = dict()
    for var, value in env.items():
        _env[var] = os.environ.get(var)
        os.environ[var] = value

    try:
        yield
    finally:
        for var in env:
            if _env[var] is None:
                del os.environ[var]
            else:
                os.environ[var] = _env[var]


def read_csv(path):
    with open(path, encoding='utf-8') as file:
        lines = file.read().splitlines()
    header = lines[1].split(',')
    return [dict(zip(header, map(float, line.split(',')))) for line in lines[2:]]


class TestConfig(unittest.TestCase):

    def __init__(self, methodName):
        self.maxDiff = None
        super().__init__(methodName)

    def test_defaults(self):
        config = parse_config('{"command": "steady", "h": 2}')
        self.assertEqual(config.command, 'steady')
        self.assertEqual(config.h_values, (2.0,))
        self.assertTrue(config.h_explicit)
        self.assertEqual(config.displacements, (0,))
        self.assertEqual(config.profile.as_dict(), {0: 1.0})
        self.assertEqual(config.bath.gamma, 0.1)
        self.assertEqual(config.bath.beta, math.inf)
        self.assertEqual((config.quad.abs_tol, config.quad.rel_tol), (1e-10, 1e-10))
        self.assertEqual(config.output.stem, 'steady')
        self.assertTrue(config.quiet)
        self.assertEqual(config.concurrency, 1)
        self.assertEqual(config.effective['model']['h'], [2.0])

    def test_scan_default(self):
        config = parse_config('{"command": "scan-h"}')
        self.assertFalse(config.h_explicit)
        self.assertEqual(len(config.h_values), 81)
        self.assertEqual((config.h_values[0], config.h_values[20], config.h_values[-1]), (0.0, 1.0, 4.0))

    def test_sections(self):
        text = json.dumps({
            'command': 'evolve',
            'model': {'h': [0.5, 1.5], 'n_sites': 16, 'boundary': 'periodic'},
            'profile': {'nearest_neighbour': {'a': 0.25, 'g0': 1.0}},
            'bath': {'coupling': 0.1},
            'sweep': {'d': {'start': -1, 'stop': 1}, 't_points': 5, 'coherent': False, 'rate': 'halved'},
            'quadrature': {'method': 'gauss', 'nodes': 32},
            'output': {'stem': 'run', 'formats': ['csv']},
        })
        config = parse_config(text)
        self.assertEqual(config.h_values, (0.5, 1.5))
        self.assertEqual(config.model.boundary, 'periodic')
        self.assertEqual(config.displacements, (-1, 0, 1))
        self.assertEqual(config.profile.as_dict(), {-1: 0.25, 0: 1.0, 1: 0.25})
        self.assertFalse(config.sweep.coherent)
        self.assertEqual(config.sweep.rate, 'halved')
        self.assertEqual(config.quad.method, 'gauss')
        self.assertEqual(config.output.formats, ('csv',))

    def test_overrides(self):
        config = parse_config('{"command": "steady", "h": 2, "bath": {"coupling": 0.2}}',
                              {'h': [0.5], 'gamma': 0.3, 'sweep.t_max': None})
        self.assertEqual(config.h_values, (0.5,))
        self.assertEqual(config.bath.gamma, 0.3)
        self.assertEqual(config.effective['model']['h'], [0.5])

    def test_errors(self):
        for text, key, line in (
            ('{"command": "steady",\n "h": "two"}', 'model.h', 2),
            ('{"command": "steady",\n "colour": 1}', 'colour', 2),
            ('{"command": "steady",\n "model": {"spin": 1}}', 'model.spin', 2),
            ('{"command": "steady", "bath": {"b": 1.5}}', 'bath.b', 1),
            ('{"command": "steady", "bath": {"gamma": 0.1,\n "coupling": 0.1}}', 'bath.coupling', 2),
            ('{"command": "teleport"}', 'command', 1),
        ):
            with self.assertRaises(ConfigError, msg=text) as context:
                parse_config(text)
            self.assertEqual(context.exception.key, key, text)
            self.assertEqual(context.exception.line, line, text)

        with self.assertRaises(ConfigError) as context:
            parse_config('{"command": "steady",\n "h": }')
        self.assertEqual(context.exception.line, 2)
        with self.assertRaises(ConfigError):
            parse_config('[]')
        with self.assertRaises(ConfigError):
            parse_config('{"h": 0.5}')

    def test_range_message(self):
        with self.assertRaises(ConfigError) as context:
            parse_config('{"command": "steady", "bath": {"b": 1.5}}')
        self.assertIn('must lie in [0, 1], got 1.5', str(context.exception))

    def test_schema_rejects(self):
        for text, key, fragment in (
            ('{"command": "steady", "output": {"stem": "a/b"}}', 'output.stem', 'does not match'),
            ('{"command": "steady", "profile": {"local": 1, "g": {"0": 1}}}', 'profile', 'takes exactly one of'),
            ('{"command": "steady", "quadrature": {"split_points": [0]}}', 'quadrature.split_points',
             'must lie in (0, 3.14159), got 0'),
            ('{"command": "steady", "sweep": {"coherent": "yes"}}', 'sweep.coherent', 'expected boolean'),
            ('{"command": "steady", "bath": {"density": {"family": "gaussian", "energy": 1}}}', 'bath.density',
             'must be one of flat, lorentzian, power-law'),
            ('{"command": "steady", "sweep": {"d": {"start": 0}}}', 'sweep.d', 'sweep.d: '),
        ):
            with self.assertRaises(ConfigError, msg=text) as context:
                parse_config(text)
            self.assertEqual(context.exception.key, key, text)
            self.assertIn(fragment, str(context.exception), text)

    def test_schema_matches_records(self):
        with open(SCHEMA_PATH, encoding='utf-8') as file:
            schema = json.load(file)
        config = parse_config('{"command": "steady"}')
        for section in ('quadrature', 'sweep', 'output'):
            self.assertEqual(set(schema['properties'][section]['properties']), set(config.effective[section]),
                             section)
        self.assertEqual(schema['properties']['command']['enum'], list(COMMANDS))

    def test_non_finite(self):
        with self.assertRaises(ConfigError):
            parse_config('{"command": "steady", "h": NaN}')
        with self.assertRaises(ConfigError) as context:
            parse_config('{"command": "steady"}', {'gamma': math.inf})
        self.assertEqual(context.exception.key, 'gamma')

    def test_override_validated(self):
        with self.assertRaises(ConfigError) as context:
            parse_config('{"command": "steady"}', {'sweep.t_points': 1})
        self.assertEqual(context.exception.key, 'sweep.t_points')
        self.assertIsNone(context.exception.line)
        self.assertIn('must lie in [2, inf], got 1', str(context.exception))

    def test_environ(self):
        with test_environ(KITBATH_QUADRATURE='gauss', KITBATH_OUTPUT='elsewhere'):
            config = parse_config('{"command": "steady"}')
        self.assertEqual(config.quad.method, 'gauss')
        self.assertEqual(config.output.directory, 'elsewhere')
        config = parse_config('{"command": "steady", "quadrature": {"method": "adaptive"}}')
        self.assertEqual(config.quad.method, 'adaptive')


class TestCommands(unittest.TestCase):

    def __init__(self, methodName):
        self.maxDiff = None
        super().__init__(methodName)

    def test_get_parser(self):
        parser = get_parser()
        args = parser.parse_args(['-q', '--h', '0.5', '1.5', '--secular', '-o', 'out', 'corr-length'])
        self.assertIs(args.quiet, True)
        self.assertEqual(args.h, [0.5, 1.5])
        self.assertIs(args.coherent, False)
        self.assertEqual(args.output, 'out')
        self.assertEqual(args.command, 'corr-length')

        args = parser.parse_args([])
        self.assertIsNone(args.coherent)
        self.assertIsNone(args.command)

    def test_steady(self):
        with tempfile.TemporaryDirectory() as tempdir:
            path = os.path.join(tempdir, 'config.json')
            with open(path, 'w', encoding='utf-8') as file:
                json.dump({'command': 'steady', 'h': 2.0, 'model': {'n_sites': 8}}, file)
            status = main(['-c', path, '--h', '0.5', '--d', '0', '1', '-o', tempdir])
            self.assertEqual(status, 0)

            rows = read_csv(os.path.join(tempdir, 'steady.csv'))
            self.assertEqual([(row['h'], row['d']) for row in rows], [(0.5, 0.0), (0.5, 1.0)])
            self.assertEqual(rows[0]['t'], math.inf)
            with open(os.path.join(tempdir, 'steady.json'), encoding='utf-8') as file:
                metadata = json.load(file)
            self.assertEqual(metadata['version'], __version__)
            self.assertEqual(metadata['config']['model']['h'], [0.5])
            self.assertIs(metadata['failed_points'], False)
            self.assertLessEqual(metadata['max_singular']['0.5'], 1.0 + 1e-9)
            self.assertTrue(os.path.isfile(os.path.join(tempdir, 'steady-physicality.csv')))

    def test_scan(self):
        with tempfile.TemporaryDirectory() as tempdir:
            config = parse_config(json.dumps({
                'command': 'scan-h',
                'h': {'start': 1.5, 'stop': 2.5, 'step': 0.5},
                'output': {'directory': tempdir, 'formats': ['csv', 'json']},
            }))
            self.assertEqual(run(config), 0)
            rows = read_csv(os.path.join(tempdir, 'scan-h.csv'))
            self.assertEqual([row['h'] for row in rows], [1.5, 2.0, 2.5])
            for row in rows:
                self.assertAlmostEqual(row['same_site'], row['closed_form'], delta=1e-8)
            self.assertFalse(os.path.exists(os.path.join(tempdir, 'scan-h-same-site.py')))

    def test_exit_codes(self):
        stderr = io.StringIO()
        with tempfile.TemporaryDirectory() as tempdir, contextlib.redirect_stderr(stderr):
            self.assertEqual(main(['-o', tempdir]), 1)
            self.assertEqual(main(['-c', os.path.join(tempdir, 'missing.json'), 'steady']), 1)
            self.assertEqual(main(['--gamma', '-1', '-o', tempdir, 'steady']), 1)
            with self.assertRaises(SystemExit) as context:
                main(['--boundary', 'twisted', 'steady'])
            self.assertEqual(context.exception.code, 1)
        self.assertIn('command: missing', stderr.getvalue())


if __name__ == '__main__':
    unittest.main()
