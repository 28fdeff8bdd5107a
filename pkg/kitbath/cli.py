# -*- coding: utf-8 -*-
"""Command-line entry point: parameter sweeps, oracle gates and data emission."""

import argparse
import functools
import json
import math
import os
import re
import sys
import traceback
from typing import Any, Callable, Dict, Generator, List, Mapping, NamedTuple, NoReturn, Optional, Sequence, Tuple

import jsonschema
import numpy
from bpc_utils import Config, TaskLock, first_non_none, map_tasks, parse_boolean_state, parse_positive_integer
from typing_extensions import Literal

from kitbath import __version__
from kitbath.bath import (BathSpec, CouplingProfile, g_tilde, markov_params, rate_for_coupling,
                          spectral_density)
from kitbath.covariance import (NOISE_FLOOR, QuadratureSpec, Rate, covariance_estimate, criticality_scan,
                                fit_relaxation, fit_tail, mode_kernel, same_site_closed_form)
from kitbath.emit import (OutputRecord, sort_records, write_metadata, write_plot_script, write_records, write_svg,
                          write_table)
from kitbath.errors import ConfigError, KitbathError, UnderflowRange
from kitbath.model import KitaevParams
from kitbath.oracle import (ComparisonReport, finite_chain_covariance, finite_chain_gate, greens_gate,
                            ground_state_gate, schur_suite, spectrum_gate)
from kitbath.quadratic import assemble_covariance, physicality_check

__all__ = ['main', 'run', 'parse_config', 'get_parser', 'RunConfig']

Command = Literal['steady', 'evolve', 'scan-h', 'corr-length', 'oracle-check', 'diag']

#: Supported commands.
COMMANDS = ('steady', 'evolve', 'scan-h', 'corr-length', 'oracle-check', 'diag')
#: Artifact formats.
FORMATS = ('csv', 'json', 'plot', 'svg')

# exit codes
EXIT_SUCCESS = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_GATE = 3

###############################################################################
# Typings


class SweepSpec(NamedTuple):
    """Sweep and time-grid parameters.

    Attributes:
        t_max (float): final time in units of ``1 / max(g̃Γ)``
        t_points (int): number of grid times
        t_in (float): initial time
        fit_range (Tuple[int, int]): displacements of tail fits, inclusive
        coherent (bool): include the coherence terms of the kernels
        rate (Literal['full', 'halved']): population decay of transients
        n_momenta (int): momenta per Green's gate
        couplings (Tuple[float, ...]): ``g̃Γ/2`` values of the Green's gate
        span (float): Green's gate window in units of ``1 / (g̃Γ)``

    """

    t_max: float = 20.0
    t_points: int = 41
    t_in: float = 0.0
    fit_range: Tuple[int, int] = (20, 60)
    coherent: bool = True
    rate: Rate = 'full'
    n_momenta: int = 32
    couplings: Tuple[float, ...] = (0.05, 0.3)
    span: float = 10.0


class OutputSpec(NamedTuple):
    """Output directory, file stem and formats."""

    directory: str
    stem: str
    formats: Tuple[str, ...] = FORMATS


class RunConfig(Config):
    command = 'steady'  # type: Command
    h_values = (0.5,)  # type: Tuple[float, ...]
    h_explicit = False  # type: bool
    displacements = (0,)  # type: Tuple[int, ...]
    model = KitaevParams(0.5)  # type: KitaevParams
    bath = BathSpec(0.1)  # type: BathSpec
    profile = CouplingProfile.local()  # type: CouplingProfile
    quad = QuadratureSpec()  # type: QuadratureSpec
    sweep = SweepSpec()  # type: SweepSpec
    output = None  # OutputSpec
    seed = 0  # type: int
    concurrency = None  # Optional[int]
    quiet = False  # type: bool
    effective = {}  # type: Dict[str, object]


###############################################################################
# Auxiliaries

# option default values
#: Default value for the ``quiet`` option.
_default_quiet = False
#: Default value for the ``concurrency`` option.
_default_concurrency = None  # auto detect
#: Default value for the ``output`` option.
_default_output = 'kitbath-output'
#: Default value for the ``quadrature`` option.
_default_quadrature = 'adaptive'

#: Default field of every command but ``scan-h``.
_default_h = (0.5,)
#: Default field scan of ``scan-h``: ``[0, 4]`` in steps of ``0.05``.
_default_scan = {'start': 0.0, 'stop': 4.0, 'step': 0.05}

# option getter utility functions
# option value precedence is: explicit value (CLI flag or config-file key) > environment variable > default value


def _get_quiet_option(explicit: Optional[bool] = None) -> Optional[bool]:
    """Get the value for the ``quiet`` option.

    Args:
        explicit (Optional[bool]): the value explicitly specified by user,
            :data:`None` if not specified

    Returns:
        bool: the value for the ``quiet`` option

    :Environment Variables:
        :envvar:`KITBATH_QUIET` -- the value in environment variable

    See Also:
        :data:`_default_quiet`

    """
    # first_non_none(a, b, c) would evaluate every layer
    def _option_layers() -> Generator[Optional[bool], None, None]:
        yield explicit
        yield parse_boolean_state(os.getenv('KITBATH_QUIET'))
        yield _default_quiet
    return first_non_none(_option_layers())


def _get_concurrency_option(explicit: Optional[int] = None) -> Optional[int]:
    """Get the value for the ``concurrency`` option.

    Args:
        explicit (Optional[int]): the value explicitly specified by user,
            :data:`None` if not specified

    Returns:
        Optional[int]: the value for the ``concurrency`` option;
        :data:`None` means *auto detection* at runtime

    :Environment Variables:
        :envvar:`KITBATH_CONCURRENCY` -- the value in environment variable

    See Also:
        :data:`_default_concurrency`

    """
    return parse_positive_integer(explicit or os.getenv('KITBATH_CONCURRENCY') or _default_concurrency)


def _get_output_option(explicit: Optional[str] = None) -> str:
    """Get the value for the ``output`` option.

    Args:
        explicit (Optional[str]): the value explicitly specified by user,
            :data:`None` if not specified

    Returns:
        str: the output directory

    :Environment Variables:
        :envvar:`KITBATH_OUTPUT` -- the value in environment variable

    See Also:
        :data:`_default_output`

    """
    return explicit or os.getenv('KITBATH_OUTPUT') or _default_output


def _get_quadrature_option(explicit: Optional[str] = None) -> str:
    """Get the value for the ``quadrature`` option.

    Args:
        explicit (Optional[str]): the value explicitly specified by user,
            :data:`None` if not specified

    Returns:
        str: the quadrature method, ``adaptive`` or ``gauss``

    :Environment Variables:
        :envvar:`KITBATH_QUADRATURE` -- the value in environment variable

    See Also:
        :data:`_default_quadrature`

    """
    return explicit or os.getenv('KITBATH_QUADRATURE') or _default_quadrature


###############################################################################
# Configuration

#: Path of the JSON schema of run configurations, shipped as package data.
SCHEMA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'schema.json')

#: Keys of every configuration section.
_SECTIONS = {
    'model': ('h', 'n_sites', 'boundary'),
    'bath': ('gamma', 'delta_e', 'b', 'beta', 'coupling', 'density'),
    'profile': ('local', 'nearest_neighbour', 'g'),
    'quadrature': ('method', 'abs_tol', 'rel_tol', 'max_subdivisions', 'split_points', 'nodes'),
    'sweep': ('d', 't_max', 't_points', 't_in', 'fit_range', 'coherent', 'rate', 'n_momenta', 'couplings', 'span'),
    'output': ('directory', 'stem', 'formats'),
}
#: Top-level keys outside the sections.
_TOP_LEVEL = ('command', 'seed', 'concurrency', 'quiet')
#: Top-level shorthands and their section keys.
_SHORTHANDS = {
    'h': ('model', 'h'),
    'd': ('sweep', 'd'),
    'gamma': ('bath', 'gamma'),
}
#: Bath keys that replace each other when overridden.
_BATH_SOURCES = ('gamma', 'coupling', 'density')

#: Configuration object with the shorthands merged into their sections.
Instance = Dict[str, Any]


@functools.lru_cache(maxsize=None)
def _validator() -> 'jsonschema.Draft7Validator':
    """Validator of :data:`SCHEMA_PATH`, loaded once."""
    with open(SCHEMA_PATH, encoding='utf-8') as file:
        schema = json.load(file)
    return jsonschema.Draft7Validator(schema)


def _line_of(text: str, key: str) -> Optional[int]:
    """1-based line of the first occurrence of the last component of ``key``."""
    name = key.rsplit('.', 1)[-1]
    match = re.search(r'"%s"\s*:' % re.escape(name), text)
    if match is None:
        return None
    return text.count('\n', 0, match.start()) + 1


def _fail(text: str, key: str, message: str) -> ConfigError:
    return ConfigError('%s: %s' % (key, message), key=key, line=_line_of(text, key))


def _format_bound(value: float) -> str:
    if math.isinf(value):
        return '-inf' if value < 0 else 'inf'
    return '%g' % value


def _bounds(schema: Mapping[str, Any]) -> str:
    """Interval notation of the numeric bounds of a schema."""
    if 'exclusiveMinimum' in schema:
        low = '(%s' % _format_bound(schema['exclusiveMinimum'])
    else:
        low = '[%s' % _format_bound(schema.get('minimum', -math.inf))
    if 'exclusiveMaximum' in schema:
        high = '%s)' % _format_bound(schema['exclusiveMaximum'])
    else:
        high = '%s]' % _format_bound(schema.get('maximum', math.inf))
    return '%s, %s' % (low, high)


def _schema_error(error: 'jsonschema.ValidationError', text: str) -> ConfigError:
    """Translate a schema violation into a :exc:`ConfigError` naming key, range and line."""
    names = [part for part in error.absolute_path if isinstance(part, str)]
    instance = error.instance
    validator = error.validator

    if validator == 'additionalProperties':
        known = error.schema.get('properties', {})
        patterns = error.schema.get('patternProperties', {})
        extra = sorted(name for name in instance
                       if name not in known and not any(re.search(pattern, name) for pattern in patterns))
        names.extend(extra[:1])
        message = 'unknown key'
    elif validator == 'required':
        missing = [name for name in error.validator_value if name not in instance]
        names.extend(missing[:1])
        message = 'missing'
        choices = error.schema.get('properties', {}).get(missing[0], {}).get('enum') if missing else None
        if choices:
            message = 'missing, expected one of %s' % ', '.join(choices)
    elif validator == 'type':
        expected = error.validator_value if isinstance(error.validator_value, list) else [error.validator_value]
        message = 'expected %s, got %r' % (' or '.join(expected), instance)
    elif validator == 'enum':
        message = 'must be one of %s, got %r' % (', '.join(map(str, error.validator_value)), instance)
    elif validator in ('minimum', 'maximum', 'exclusiveMinimum', 'exclusiveMaximum'):
        message = 'must lie in %s, got %r' % (_bounds(error.schema), instance)
    elif validator == 'oneOf':
        message = 'expected a value, a list or a range, got %r' % (instance,)
    elif validator == 'maxProperties' and names == ['profile']:
        message = 'takes exactly one of %s' % ', '.join(_SECTIONS['profile'])
    else:
        message = error.message

    if names and names[0] in _SECTIONS:
        key = '.'.join(names[:2])
    else:
        key = names[0] if names else 'configuration'
    return _fail(text, key, message)


def _reject_constant(name: str) -> NoReturn:
    raise ConfigError('invalid JSON: non-finite number %s' % name)


def _merge(instance: Instance, section: str, name: str, value: object, text: str) -> None:
    target = instance.setdefault(section, {})
    if not isinstance(target, dict):
        return  # rejected by the schema
    if name in target:
        raise _fail(text, '%s.%s' % (section, name), 'given twice')
    target[name] = value


def _instance(data: Mapping[str, object], text: str) -> Instance:
    """Merge the top-level shorthands into their sections."""
    instance = {}  # type: Instance
    for key, value in data.items():
        if key in _SHORTHANDS:
            _merge(instance, *_SHORTHANDS[key], value, text)
        elif key in _SECTIONS and isinstance(value, Mapping):
            for name, item in value.items():
                _merge(instance, key, name, item, text)
        else:
            instance[key] = value
    return instance


def _override(instance: Instance, overrides: Mapping[str, object]) -> None:
    """Apply command-line values given as dotted keys or shorthands."""
    for key, value in overrides.items():
        if value is None:
            continue
        items = value if isinstance(value, list) else [value]
        if any(isinstance(item, float) and not math.isfinite(item) for item in items):
            raise ConfigError('%s: expected a finite number, got %r' % (key, value), key=key)
        if key in _SHORTHANDS:
            section, name = _SHORTHANDS[key]
        elif key in _TOP_LEVEL:
            instance[key] = value
            continue
        else:
            section, _, name = key.partition('.')
            if name not in _SECTIONS.get(section, ()):
                raise ConfigError('%s: unknown key' % key, key=key)
        target = instance.setdefault(section, {})
        if not isinstance(target, dict):
            continue
        if section == 'bath' and name in _BATH_SOURCES:
            for other in _BATH_SOURCES:
                target.pop(other, None)
        target[name] = value


def _environ(instance: Instance) -> None:
    """Fill the options that environment variables may provide before validation."""
    quadrature = instance.setdefault('quadrature', {})
    if isinstance(quadrature, dict):
        quadrature['method'] = _get_quadrature_option(quadrature.get('method'))
    output = instance.setdefault('output', {})
    if isinstance(output, dict):
        output['directory'] = _get_output_option(output.get('directory'))


def _fields(text: str, key: str, value: Any) -> Tuple[float, ...]:
    """Field values from a number, a list or a ``{start, stop, step}`` range."""
    if isinstance(value, Mapping):
        start, stop, step = (float(value[name]) for name in ('start', 'stop', 'step'))
        if stop < start:
            raise _fail(text, key, 'range stop %r lies below start %r' % (stop, start))
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + index * step, 12) for index in range(count))
    items = value if isinstance(value, list) else [value]
    return tuple(float(item) for item in items)


def _displacements(text: str, key: str, value: Any) -> Tuple[int, ...]:
    """Displacements from an integer, a list or an inclusive ``{start, stop}`` range."""
    if isinstance(value, Mapping):
        start, stop = int(value['start']), int(value['stop'])
        if stop < start:
            raise _fail(text, key, 'range stop %d lies below start %d' % (stop, start))
        return tuple(range(start, stop + 1))
    items = value if isinstance(value, list) else [value]
    return tuple(int(item) for item in items)


def _profile(instance: Instance, text: str) -> CouplingProfile:
    section = instance.get('profile', {})
    try:
        if 'local' in section:
            return CouplingProfile.local(float(section['local']))
        if 'nearest_neighbour' in section:
            value = section['nearest_neighbour']
            return CouplingProfile.nearest_neighbour(float(value['a']), float(value.get('g0', 0.0)))
        if 'g' in section:
            return CouplingProfile.from_mapping({int(d): float(g) for d, g in section['g'].items()})
    except ConfigError:
        raise
    except KitbathError as error:
        raise _fail(text, 'profile', str(error)) from None
    return CouplingProfile.local()


def _bath(instance: Instance, text: str, profile: CouplingProfile) -> BathSpec:
    section = instance.get('bath', {})
    sources = [key for key in _BATH_SOURCES if key in section]
    if len(sources) > 1:
        raise _fail(text, 'bath.%s' % sources[1], 'conflicts with bath.%s' % sources[0])
    try:
        if 'density' in section:
            value = section['density']
            parameters = {name: float(item) for name, item in value.items()
                          if name not in ('family', 'energy', 'beta')}
            density = spectral_density(value['family'], **parameters)
            beta = value.get('beta')
            spec = markov_params(density, float(value['energy']), math.inf if beta is None else float(beta))
            return spec.check()
        if 'coupling' in section:
            gamma = rate_for_coupling(profile, float(section['coupling']))
        else:
            gamma = float(section.get('gamma', 0.1))
        beta = section.get('beta')
        spec = BathSpec(gamma, float(section.get('delta_e', 0.0)), float(section.get('b', 0.0)),
                        math.inf if beta is None else float(beta))
        return spec.check()
    except ConfigError:
        raise
    except KitbathError as error:
        raise _fail(text, 'bath', str(error)) from None


def _quadrature(instance: Instance, text: str) -> QuadratureSpec:
    section = instance.get('quadrature', {})
    quad = QuadratureSpec(
        section.get('method', _default_quadrature),
        float(section.get('abs_tol', 1e-10)),
        float(section.get('rel_tol', 1e-10)),
        int(section.get('max_subdivisions', 2000)),
        tuple(float(point) for point in section.get('split_points', ())),
        int(section.get('nodes', 64)),
    )
    try:
        return quad.check()
    except ConfigError as error:
        raise _fail(text, error.key or 'quadrature', str(error)) from None


def _sweep(instance: Instance, text: str) -> SweepSpec:
    section = instance.get('sweep', {})
    first, last = (int(item) for item in section.get('fit_range', (20, 60)))
    if last <= first:
        raise _fail(text, 'sweep.fit_range', 'last displacement %d must exceed the first %d' % (last, first))
    return SweepSpec(
        float(section.get('t_max', 20.0)),
        int(section.get('t_points', 41)),
        float(section.get('t_in', 0.0)),
        (first, last),
        bool(section.get('coherent', True)),
        section.get('rate', 'full'),
        int(section.get('n_momenta', 32)),
        tuple(float(value) for value in section.get('couplings', (0.05, 0.3))),
        float(section.get('span', 10.0)),
    )


def _output(instance: Instance, command: str) -> OutputSpec:
    section = instance.get('output', {})
    return OutputSpec(section.get('directory', _default_output), section.get('stem', command),
                      tuple(section.get('formats', FORMATS)))


def parse_config(text: str = '{}', overrides: Optional[Mapping[str, object]] = None) -> RunConfig:
    """Parse and validate a JSON run configuration.

    Args:
        text (str): configuration text, a JSON object
        overrides (Optional[Mapping[str, object]]): values taking precedence
            over the text, keyed by shorthand (``h``, ``d``, ``gamma``),
            top-level key or dotted ``section.key``; :data:`None` values are
            ignored

    Returns:
        RunConfig: validated configuration with defaults filled in

    Raises:
        ConfigError: on invalid JSON, unknown keys, mistyped or out-of-range
            values; the message names the key, the valid range and the line

    Types and ranges are checked against :data:`SCHEMA_PATH` after the
    overrides and environment variables are applied.

    """
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as error:
        raise ConfigError('invalid JSON: %s' % error.msg, line=error.lineno) from None
    if not isinstance(data, dict):
        raise ConfigError('configuration must be a JSON object, got %s' % type(data).__name__, line=1)
    instance = _instance(data, text)
    _override(instance, overrides or {})
    _environ(instance)

    error = jsonschema.exceptions.best_match(_validator().iter_errors(instance))
    if error is not None:
        raise _schema_error(error, text)

    command = instance['command']
    model_section = instance.get('model', {})
    h_explicit = 'h' in model_section
    fallback = _default_scan if command == 'scan-h' else list(_default_h)
    h_values = _fields(text, 'model.h', model_section.get('h', fallback))
    model = KitaevParams(h_values[0], int(model_section.get('n_sites', 64)),
                         model_section.get('boundary', 'antiperiodic'))
    profile = _profile(instance, text)
    bath = _bath(instance, text, profile)
    quad = _quadrature(instance, text)
    sweep = _sweep(instance, text)
    displacements = _displacements(text, 'sweep.d', instance.get('sweep', {}).get('d', 0))
    output = _output(instance, command)
    seed = int(instance.get('seed', 0))

    config = RunConfig(
        command=command,
        h_values=h_values,
        h_explicit=h_explicit,
        displacements=displacements,
        model=model,
        bath=bath,
        profile=profile,
        quad=quad,
        sweep=sweep,
        output=output,
        seed=seed,
        concurrency=_get_concurrency_option(instance.get('concurrency')),
        quiet=_get_quiet_option(instance.get('quiet')),
    )
    config.effective = {
        'command': command,
        'model': {'h': list(h_values), 'n_sites': model.n_sites, 'boundary': model.boundary},
        'bath': bath._asdict(),
        'profile': {'g': profile.as_dict()},
        'quadrature': quad._asdict(),
        'sweep': dict(sweep._asdict(), d=list(displacements)),
        'output': output._asdict(),
        'seed': seed,
    }
    return config


###############################################################################
# Sweep tasks


def _gtilde_range(profile: CouplingProfile, resolution: int = 1024) -> Tuple[float, float]:
    values = [g_tilde(profile, float(phi)) for phi in numpy.linspace(0.0, math.pi, resolution + 1)]
    return min(values), max(values)


def evaluate_block(point: Tuple[float, int, float], *, kind: str, profile: CouplingProfile, spec: BathSpec,
                   quad: QuadratureSpec, t_in: float, coherent: bool, rate: Rate,
                   gtilde_range: Tuple[float, float]) -> OutputRecord:
    """Covariance block of one sweep point ``(h, d, t)`` as an output row."""
    h, d, t = point
    estimate = covariance_estimate(kind, h, d, profile=profile, spec=spec, quad=quad,  # type: ignore[arg-type]
                                   t=t if kind == 'time' else 0.0, t_in=t_in, coherent=coherent, rate=rate)
    block = estimate.block
    return OutputRecord(h, d, t, float(block[0, 0]), float(block[0, 1]), float(block[1, 0]), float(block[1, 1]),
                        spec.gamma, gtilde_range[0], gtilde_range[1], estimate.error)


def do_block(point: Tuple[float, int, float], **kwargs: object) -> Optional[OutputRecord]:
    """Wrapper function to catch exceptions."""
    try:
        return evaluate_block(point, **kwargs)  # type: ignore[arg-type]
    except Exception:  # pylint: disable=broad-except
        with TaskLock():
            print('Failed to evaluate block at h=%r, d=%r, t=%r' % point, file=sys.stderr)
            traceback.print_exc()
    return None


def run_gate(task: Tuple[str, float], *, quad: QuadratureSpec, couplings: Sequence[float], n_momenta: int,
             span: float, n_sites: int, displacements: Sequence[int]) -> List[ComparisonReport]:
    """Run one oracle gate for a single field."""
    name, h = task
    if name == 'greens':
        return greens_gate((h,), couplings, n_momenta, span=span)
    if name == 'finite-chain':
        return finite_chain_gate((h,), quad=quad)
    if name == 'ground-state':
        return [ground_state_gate(h, quad=quad)]
    if name == 'spectrum':
        return [spectrum_gate(h, n_sites)]
    if name == 'ground-state-chain':
        return [ground_state_gate(h, d, n_sites, quad=quad) for d in displacements]
    raise ValueError('unknown gate %r' % name)


def do_gate(task: Tuple[str, float], **kwargs: object) -> Optional[List[ComparisonReport]]:
    """Wrapper function to catch exceptions."""
    try:
        return run_gate(task, **kwargs)  # type: ignore[arg-type]
    except Exception:  # pylint: disable=broad-except
        with TaskLock():
            print('Failed to run %s gate at h=%r' % task, file=sys.stderr)
            traceback.print_exc()
    return None


###############################################################################
# Commands


class _Emitter:
    """Writes the artifacts of one run below the output directory."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.written = []  # type: List[str]

    def path(self, suffix: str) -> str:
        return os.path.join(self.config.output.directory, self.config.output.stem + suffix)

    def _done(self, path: str) -> None:
        self.written.append(path)
        _progress(self.config, 'wrote %s', path)

    def table(self, suffix: str, columns: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        path = self.path(suffix + '.csv')
        if 'csv' in self.config.output.formats:
            write_table(path, columns, rows, config=self.config.effective, version=__version__)
            self._done(path)
        return path

    def records(self, suffix: str, records: Sequence[OutputRecord]) -> None:
        if 'csv' in self.config.output.formats:
            path = write_records(self.path(suffix + '.csv'), records, config=self.config.effective,
                                 version=__version__)
            self._done(path)

    def metadata(self, **extra: object) -> None:
        if 'json' in self.config.output.formats:
            path = write_metadata(self.path('.json'), config=self.config.effective, version=__version__, **extra)
            self._done(path)

    def plot(self, suffix: str, kind: str, data_file: str, group_by: str = '') -> None:
        if 'plot' in self.config.output.formats:
            path = write_plot_script(self.path(suffix + '.py'), kind, data_file, config=self.config.effective,
                                     version=__version__, group_by=group_by)
            self._done(path)

    def svg(self, suffix: str, xs: Sequence[float], ys: Sequence[float], title: str) -> None:
        if 'svg' in self.config.output.formats:
            path = write_svg(self.path(suffix + '.svg'), xs, ys, title=title, config=self.config.effective,
                             version=__version__)
            self._done(path)


def _progress(config: RunConfig, message: str, *args: object) -> None:
    if not config.quiet:
        with TaskLock():
            print('kitbath: %s' % (message % args), file=sys.stderr)


def _sweep_blocks(config: RunConfig, kind: str, points: Sequence[Tuple[float, int, float]],
                  ) -> Tuple[List[OutputRecord], bool]:
    """Evaluate sweep points in the worker pool; the flag reports failed points."""
    if kind in ('time', 'steady'):
        # closed-form regime is checked once before dispatching
        mode_kernel(kind, profile=config.profile, spec=config.bath,  # type: ignore[arg-type]
                    t=config.sweep.t_in, t_in=config.sweep.t_in)
    kwargs = {
        'kind': kind,
        'profile': config.profile,
        'spec': config.bath,
        'quad': config.quad,
        't_in': config.sweep.t_in,
        'coherent': config.sweep.coherent,
        'rate': config.sweep.rate,
        'gtilde_range': _gtilde_range(config.profile),
    }
    _progress(config, 'evaluating %d %s blocks', len(points), kind)
    results = map_tasks(do_block, points, kwargs=kwargs, processes=config.concurrency)
    records = [record for record in results if record is not None]
    return sort_records(records), len(records) < len(results)


def _run_steady(config: RunConfig, emitter: _Emitter) -> int:
    points = [(h, d, math.inf) for h in config.h_values for d in config.displacements]
    records, failed = _sweep_blocks(config, 'steady', points)

    physicality = []  # type: List[Tuple[float, float]]
    for h in config.h_values:
        params = config.model._replace(h=h)

        def block(d: int, params: KitaevParams = params) -> numpy.ndarray:
            return finite_chain_covariance(params, config.profile, config.bath, d, coherent=config.sweep.coherent)
        physicality.append((h, physicality_check(assemble_covariance(block, params.n_sites))))

    emitter.records('', records)
    emitter.table('-physicality', ('h', 'max_singular'), physicality)
    emitter.metadata(max_singular={repr(h): value for h, value in physicality}, failed_points=failed)
    return EXIT_NUMERIC if failed else EXIT_SUCCESS


def _run_evolve(config: RunConfig, emitter: _Emitter) -> int:
    low, high = _gtilde_range(config.profile)
    scale = max(abs(low), abs(high)) * config.bath.gamma
    unit = 1.0 / scale if scale > 0.0 else 1.0
    times = config.sweep.t_in + numpy.linspace(0.0, config.sweep.t_max * unit, config.sweep.t_points)

    points = [(h, d, float(t)) for h in config.h_values for d in config.displacements for t in times]
    transient, failed = _sweep_blocks(config, 'time', points)
    limits, failed_steady = _sweep_blocks(config, 'steady', [(h, d, math.inf) for h in config.h_values
                                                             for d in config.displacements])
    failed = failed or failed_steady

    steady = {(record.h, record.d): numpy.array(record[3:7]) for record in limits}
    deviations = {}  # type: Dict[Tuple[float, float], float]
    for record in transient:
        if (record.h, record.d) not in steady:
            continue
        gap = float(numpy.max(numpy.abs(numpy.array(record[3:7]) - steady[record.h, record.d])))
        deviations[record.h, record.t] = max(deviations.get((record.h, record.t), 0.0), gap)

    floor = max(NOISE_FLOOR, 100.0 * config.quad.abs_tol)
    fits = []  # type: List[Tuple[float, float, float, float]]
    relaxation = sorted((h, t, value) for (h, t), value in deviations.items())
    for h in config.h_values:
        series = [(t, value) for field, t, value in relaxation if field == h]
        try:
            fit = fit_relaxation([t for t, _ in series], [value for _, value in series], floor=floor)
        except UnderflowRange as error:
            with TaskLock():
                print('Failed to fit relaxation at h=%r: %s' % (h, error), file=sys.stderr)
            failed = True
            continue
        fits.append((h, fit.rate, fit.prefactor, fit.residual))
        _progress(config, 'h=%g: relaxation rate %.6g (residual %.3g)', h, fit.rate, fit.residual)

    emitter.records('', transient + limits)
    data_file = emitter.table('-relaxation', ('h', 't', 'deviation'), relaxation)
    emitter.table('-fit', ('h', 'rate', 'prefactor', 'residual'), fits)
    emitter.plot('-relaxation', 'relaxation', data_file, group_by='h')
    if relaxation:
        first = [(t, value) for field, t, value in relaxation if field == config.h_values[0] and value > 0]
        emitter.svg('-relaxation', [t for t, _ in first], [math.log(value) for _, value in first],
                    'ln |C(t) - C(inf)| at h=%g' % config.h_values[0])
    emitter.metadata(relaxation_fit=[{'h': h, 'rate': rate, 'prefactor': prefactor, 'residual': residual}
                                     for h, rate, prefactor, residual in fits],
                     expected_rate=scale, failed_points=failed)
    return EXIT_NUMERIC if failed else EXIT_SUCCESS


def _run_scan(config: RunConfig, emitter: _Emitter) -> int:
    _progress(config, 'scanning %d fields', len(config.h_values))
    report = criticality_scan(config.h_values, config.quad)
    rows = []  # type: List[Tuple[float, ...]]
    for h, value, slope, xi in zip(report.h_scan, report.same_site_value, report.derivative_estimate,
                                   report.correlation_length):
        closed = math.nan if abs(h) == 1.0 else same_site_closed_form(float(h))[0]
        rows.append((float(h), float(value), closed, float(slope), float(xi)))

    data_file = emitter.table('', ('h', 'same_site', 'closed_form', 'derivative', 'xi'), rows)
    emitter.plot('-same-site', 'same-site', data_file)
    emitter.plot('-derivative', 'derivative', data_file)
    emitter.svg('-same-site', report.h_scan, report.same_site_value, 'Steady same-site covariance')
    emitter.metadata(criticality={'jump_location': report.jump_location, 'jump_size': report.jump_size})
    return EXIT_SUCCESS


def _run_corr(config: RunConfig, emitter: _Emitter) -> int:
    first, last = config.sweep.fit_range
    lengths = list(range(first, last + 1))
    points = [(h, L, math.inf) for h in config.h_values for L in lengths]
    records, failed = _sweep_blocks(config, 'weak', points)

    floor = max(NOISE_FLOOR, 100.0 * config.quad.abs_tol)
    tail = []  # type: List[Tuple[float, ...]]
    fits = []  # type: List[Tuple[float, ...]]
    for h in config.h_values:
        rows = [record for record in records if record.h == h]
        entry = 'c01' if abs(h) < 1.0 else 'c10'
        values = [getattr(record, entry) for record in rows]
        tail.extend((h, record.d, record.c01, record.c10, abs(value)) for record, value in zip(rows, values))
        if abs(h) == 1.0 or h == 0.0:
            continue
        try:
            fit = fit_tail([record.d for record in rows], values, floor=floor)
        except UnderflowRange as error:
            with TaskLock():
                print('Failed to fit tail at h=%r: %s' % (h, error), file=sys.stderr)
            failed = True
            continue
        log_length = -1.0 / math.log(abs(h)) if abs(h) < 1.0 else 1.0 / math.log(abs(h))
        fits.append((h, fit.xi, fit.slope, fit.prefactor, log_length, 1.0 / abs(abs(h) - 1.0)))
        _progress(config, 'h=%g: correlation length %.6g', h, fit.xi)

    data_file = emitter.table('', ('h', 'L', 'c01', 'c10', 'magnitude'), tail)
    emitter.table('-fit', ('h', 'xi', 'slope', 'prefactor', 'xi_log', 'xi_linear'), fits)
    emitter.plot('-tail', 'tail', data_file, group_by='h')
    first_tail = [(row[1], math.log(row[4])) for row in tail if row[0] == config.h_values[0] and row[4] > 0]
    emitter.svg('-tail', [L for L, _ in first_tail], [value for _, value in first_tail],
                'ln |C_L| at h=%g' % config.h_values[0])
    emitter.metadata(tail_fit=[dict(zip(('h', 'xi', 'slope', 'prefactor', 'xi_log', 'xi_linear'), row))
                               for row in fits], failed_points=failed)
    return EXIT_NUMERIC if failed else EXIT_SUCCESS


def _gate_status(config: RunConfig, emitter: _Emitter, tasks: Sequence[Tuple[str, float]],
                 extra: Sequence[ComparisonReport] = ()) -> int:
    kwargs = {
        'quad': config.quad,
        'couplings': config.sweep.couplings,
        'n_momenta': config.sweep.n_momenta,
        'span': config.sweep.span,
        'n_sites': config.model.n_sites,
        'displacements': config.displacements,
    }
    _progress(config, 'running %d gates', len(tasks))
    results = map_tasks(do_gate, tasks, kwargs=kwargs, processes=config.concurrency)
    crashed = any(result is None for result in results)
    reports = [report for result in results if result is not None for report in result]
    reports.extend(extra)

    for report in reports:
        line = '%s: %s (max deviation %.3g at %s, threshold %.3g%s)' % (
            report.label, 'passed' if report.passed else 'FAILED', report.max_deviation, report.location,
            report.threshold, '' if report.gating else ', informational')
        if report.passed or not report.gating:
            _progress(config, '%s', line)
        else:
            with TaskLock():
                print('kitbath: %s' % line, file=sys.stderr)

    emitter.metadata(reports=[report._asdict() for report in reports], failed_gates=crashed)
    if crashed:
        return EXIT_NUMERIC
    if all(report.passed for report in reports if report.gating):
        return EXIT_SUCCESS
    return EXIT_GATE


def _run_oracle(config: RunConfig, emitter: _Emitter) -> int:
    greens_fields = config.h_values if config.h_explicit else (0.5, 1.0, 2.0)
    chain_fields = config.h_values if config.h_explicit else (0.5, 1.2)
    tasks = [('greens', h) for h in greens_fields]
    tasks.extend(('finite-chain', h) for h in chain_fields)
    tasks.append(('ground-state', 1.5))
    return _gate_status(config, emitter, tasks)


def _run_diag(config: RunConfig, emitter: _Emitter) -> int:
    tasks = [('spectrum', h) for h in config.h_values]
    tasks.extend(('ground-state-chain', h) for h in config.h_values)
    return _gate_status(config, emitter, tasks, schur_suite(config.seed))


_Handler = Callable[[RunConfig, _Emitter], int]

#: Handler of every command.
_HANDLERS = {
    'steady': _run_steady,
    'evolve': _run_evolve,
    'scan-h': _run_scan,
    'corr-length': _run_corr,
    'oracle-check': _run_oracle,
    'diag': _run_diag,
}  # type: Dict[str, _Handler]


def run(config: RunConfig) -> int:
    """Execute a validated configuration and write its artifacts.

    Args:
        config (RunConfig): configuration from :func:`parse_config`

    Returns:
        int: exit status; ``0`` on success, ``2`` if a sweep point or a fit
        failed numerically, ``3`` if an oracle gate failed

    Raises:
        ConfigError: if the output directory is not writable

    """
    directory = config.output.directory
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as error:
        raise ConfigError('output.directory: cannot create %r (%s)' % (directory, error.strerror),
                          key='output.directory') from None
    if not os.access(directory, os.W_OK):
        raise ConfigError('output.directory: %r is not writable' % directory, key='output.directory')
    return _HANDLERS[config.command](config, _Emitter(config))


###############################################################################
# CLI

# display strings for the current option values
__kitbath_quiet__ = 'quiet mode' if _get_quiet_option() else 'non-quiet mode'
__kitbath_concurrency__ = _get_concurrency_option() or 'auto detect'
__kitbath_output__ = _get_output_option()
__kitbath_quadrature__ = _get_quadrature_option()


class _Parser(argparse.ArgumentParser):
    """Argument parser exiting with status 1 on usage errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, '%s: error: %s\n' % (self.prog, message))


def get_parser() -> argparse.ArgumentParser:
    """Generate CLI parser.

    Returns:
        argparse.ArgumentParser: CLI parser for kitbath

    """
    parser = _Parser(prog='kitbath', usage='kitbath [options] <command>',
                     description='Covariance matrices of a dissipative Kitaev chain coupled to a Markovian bath.')
    parser.add_argument('-V', '--version', action='version', version=__version__)
    parser.add_argument('-q', '--quiet', action='store_true', default=None,
                        help='run in quiet mode (current: %s)' % __kitbath_quiet__)
    parser.add_argument('-C', '--concurrency', action='store', type=int, metavar='N',
                        help='the number of concurrent processes for sweeps (current: %s)' % __kitbath_concurrency__)
    parser.add_argument('-c', '--config', action='store', metavar='FILE',
                        help='JSON configuration file; flags override its values')
    parser.add_argument('--seed', action='store', type=int, help='seed of randomized property suites')

    model_group = parser.add_argument_group(title='model options', description='chain and bath parameters')
    model_group.add_argument('--h', action='store', type=float, nargs='+', metavar='H',
                             help='transverse field values (default: 0.5; scan-h: 0 to 4 in steps of 0.05)')
    model_group.add_argument('--n-sites', action='store', type=int, metavar='N',
                             help='sites of finite chains (default: 64)')
    model_group.add_argument('--boundary', action='store', choices=('antiperiodic', 'periodic'),
                             help='sector of the wrap bond (default: antiperiodic)')
    model_group.add_argument('--gamma', action='store', type=float, help='bath decay rate (default: 0.1)')
    model_group.add_argument('--coupling', action='store', type=float, metavar='RATE',
                             help='set the decay rate so that max g_tilde * gamma / 2 equals RATE')

    sweep_group = parser.add_argument_group(title='sweep options', description='displacements and time grids')
    sweep_group.add_argument('--d', action='store', type=int, nargs='+', metavar='D',
                             help='displacements j - k (default: 0)')
    sweep_group.add_argument('--t-max', action='store', type=float,
                             help='final time in units of 1 / max(g_tilde * gamma) (default: 20)')
    sweep_group.add_argument('--t-points', action='store', type=int, metavar='N',
                             help='number of grid times (default: 41)')
    sweep_group.add_argument('--fit-range', action='store', type=int, nargs=2, metavar=('FIRST', 'LAST'),
                             help='displacements of correlation length fits (default: 20 60)')
    sweep_group.add_argument('--secular', action='store_false', dest='coherent', default=None,
                             help='drop the coherence terms of the kernels')
    sweep_group.add_argument('--rate', action='store', choices=('full', 'halved'),
                             help='population decay of transients (default: full)')

    quad_group = parser.add_argument_group(title='quadrature options', description='Brillouin-zone quadrature')
    quad_group.add_argument('--quadrature', action='store', choices=('adaptive', 'gauss'),
                            help='quadrature method (current: %s)' % __kitbath_quadrature__)
    quad_group.add_argument('--abs-tol', action='store', type=float, help='absolute tolerance (default: 1e-10)')
    quad_group.add_argument('--rel-tol', action='store', type=float, help='relative tolerance (default: 1e-10)')

    output_group = parser.add_argument_group(title='output options', description='artifact location')
    output_group.add_argument('-o', '--output', action='store', metavar='DIR',
                              help='output directory (current: %s)' % __kitbath_output__)
    output_group.add_argument('--stem', action='store', help='file name stem (default: the command)')

    parser.add_argument('command', action='store', nargs='?', choices=COMMANDS,
                        help='steady | evolve | scan-h | corr-length | oracle-check | diag')
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, object]:
    return {
        'command': args.command,
        'seed': args.seed,
        'concurrency': args.concurrency,
        'quiet': args.quiet,
        'h': args.h,
        'd': args.d,
        'gamma': args.gamma,
        'bath.coupling': args.coupling,
        'model.n_sites': args.n_sites,
        'model.boundary': args.boundary,
        'sweep.t_max': args.t_max,
        'sweep.t_points': args.t_points,
        'sweep.fit_range': None if args.fit_range is None else list(args.fit_range),
        'sweep.coherent': args.coherent,
        'sweep.rate': args.rate,
        'quadrature.method': args.quadrature,
        'quadrature.abs_tol': args.abs_tol,
        'quadrature.rel_tol': args.rel_tol,
        'output.directory': args.output,
        'output.stem': args.stem,
    }


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for kitbath.

    Args:
        argv (Optional[List[str]]): CLI arguments

    Returns:
        int: exit status; ``0`` success, ``1`` usage or configuration error,
        ``2`` numerical failure, ``3`` oracle-gate failure

    :Environment Variables:
     - :envvar:`KITBATH_QUIET` -- same as the ``--quiet`` option in CLI
     - :envvar:`KITBATH_CONCURRENCY` -- same as the ``--concurrency`` option in CLI
     - :envvar:`KITBATH_OUTPUT` -- same as the ``--output`` option in CLI
     - :envvar:`KITBATH_QUADRATURE` -- same as the ``--quadrature`` option in CLI

    """
    parser = get_parser()
    args = parser.parse_args(argv)

    text = '{}'
    if args.config:
        try:
            with open(args.config, encoding='utf-8') as file:
                text = file.read()
        except OSError as error:
            print('kitbath: error: cannot read %r (%s)' % (args.config, error.strerror), file=sys.stderr)
            return EXIT_CONFIG

    try:
        config = parse_config(text, _overrides(args))
        return run(config)
    except ValueError as error:
        print('kitbath: error: %s' % error, file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as error:
        print('kitbath: numerical failure: %s' % error, file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == '__main__':
    sys.exit(main())
