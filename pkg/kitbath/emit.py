# -*- coding: utf-8 -*-
"""Output writers: delimited text, metadata sidecars and plot emission.

Every file written here embeds the effective configuration and the package
version: as a leading comment line of delimited text and plot scripts, as
a ``<metadata>`` element of SVG files, and as top-level keys of JSON files.

"""

import json
import math
import os
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

import numpy

__all__ = [
    'OutputRecord', 'RECORD_COLUMNS', 'sort_records', 'jsonable',
    'write_table', 'write_records', 'write_metadata', 'write_plot_script', 'write_svg',
]

#: Number format of delimited text; 17 significant digits round-trip a double.
FLOAT_FORMAT = '%.17g'


class OutputRecord(NamedTuple):
    """One covariance block of a sweep.

    Attributes:
        h (float): transverse field
        d (int): displacement ``j - k``
        t (float): time, ``inf`` for steady states
        c00 (float): block entry ``C[0][0]``
        c01 (float): block entry ``C[0][1]``
        c10 (float): block entry ``C[1][0]``
        c11 (float): block entry ``C[1][1]``
        gamma (float): bath decay rate
        gtilde_min (float): minimum of the coupling transform
        gtilde_max (float): maximum of the coupling transform
        error (float): achieved quadrature error

    """

    h: float
    d: int
    t: float
    c00: float
    c01: float
    c10: float
    c11: float
    gamma: float
    gtilde_min: float
    gtilde_max: float
    error: float


#: Column names of :class:`OutputRecord` tables.
RECORD_COLUMNS = OutputRecord._fields


def sort_records(records: Iterable[OutputRecord]) -> List[OutputRecord]:
    """Order rows by ``(h, d, t)``."""
    return sorted(records, key=lambda record: (record.h, record.d, record.t))


def jsonable(value: object) -> object:
    """Convert numpy values and non-finite floats into plain JSON values."""
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, numpy.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, numpy.generic):
        return jsonable(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def _banner(config: Mapping[str, object], version: str) -> str:
    return 'kitbath %s %s' % (version, json.dumps(jsonable(config), sort_keys=True))


def write_table(path: str, columns: Sequence[str], rows: Sequence[Sequence[float]], *,
                config: Mapping[str, object], version: str) -> str:
    """Write comma-separated numbers under one header line.

    The file starts with a ``#`` comment carrying the version and the
    effective configuration, followed by the header and one line per row.

    """
    table = numpy.asarray(rows, dtype=float).reshape(-1, len(columns))
    with open(path, 'w', encoding='utf-8') as file:
        file.write('# %s\n' % _banner(config, version))
        numpy.savetxt(file, table, fmt=FLOAT_FORMAT, delimiter=',', header=','.join(columns), comments='')
    return path


def write_records(path: str, records: Iterable[OutputRecord], *,
                  config: Mapping[str, object], version: str) -> str:
    """Write sorted :class:`OutputRecord` rows with :data:`RECORD_COLUMNS`."""
    rows = [tuple(record) for record in sort_records(records)]
    return write_table(path, RECORD_COLUMNS, rows, config=config, version=version)


def write_metadata(path: str, *, config: Mapping[str, object], version: str, **extra: object) -> str:
    """Write the JSON sidecar with configuration, version and command results."""
    document = {'version': version, 'config': config}  # type: Dict[str, object]
    document.update(extra)
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(jsonable(document), file, indent=2, sort_keys=True)
        file.write('\n')
    return path


###############################################################################
# Plots

_PLOT_TEMPLATE = '''\
# -*- coding: utf-8 -*-
# %(banner)s
"""%(title)s, read from %(data)s."""

import os

import matplotlib.pyplot as plt
import numpy

HERE = os.path.dirname(os.path.realpath(__file__))
data = numpy.genfromtxt(os.path.join(HERE, %(data)r), delimiter=',', names=True, skip_header=1)

figure, axes = plt.subplots()
for key, group in %(grouping)s:
    axes.plot(group[%(x)r], %(transform)s(group[%(y)r]), marker='.', label=key)
axes.set_xlabel(%(xlabel)r)
axes.set_ylabel(%(ylabel)r)
axes.set_title(%(title)r)
if %(legend)r:
    axes.legend()
figure.savefig(os.path.join(HERE, %(image)r))
'''

#: Axes and transform of the plot scripts by kind.
PLOT_KINDS = {
    'same-site': ('h', 'same_site', 'h', 'C_0[0][1]', '', 'Steady same-site covariance'),
    'derivative': ('h', 'derivative', 'h', 'dC_0[0][1] / dh', '', 'Derivative of the same-site covariance'),
    'tail': ('L', 'magnitude', 'L', 'ln |C_L|', 'numpy.log', 'Covariance tail'),
    'relaxation': ('t', 'deviation', 't', 'ln |C(t) - C(inf)|', 'numpy.log', 'Relaxation towards the steady state'),
}  # type: Dict[str, Tuple[str, str, str, str, str, str]]


def write_plot_script(path: str, kind: str, data_file: str, *, config: Mapping[str, object], version: str,
                      group_by: str = '') -> str:
    """Write a matplotlib script that plots one column of ``data_file``.

    Args:
        path (str): script path
        kind (str): one of :data:`PLOT_KINDS`
        data_file (str): table next to the script

    Keyword Args:
        config (Mapping[str, object]): effective configuration
        version (str): package version
        group_by (str): column whose values get one curve each

    """
    x, y, xlabel, ylabel, transform, title = PLOT_KINDS[kind]
    if group_by:
        grouping = ('((value, data[data[%r] == value]) for value in numpy.unique(data[%r]))'
                    % (group_by, group_by))
    else:
        grouping = "[('', data)]"
    source = _PLOT_TEMPLATE % {
        'banner': _banner(config, version),
        'data': os.path.basename(data_file),
        'image': os.path.splitext(os.path.basename(path))[0] + '.png',
        'grouping': grouping,
        'x': x, 'y': y, 'xlabel': xlabel, 'ylabel': ylabel, 'title': title,
        'transform': transform or '',
        'legend': bool(group_by),
    }
    with open(path, 'w', encoding='utf-8') as file:
        file.write(source)
    return path


def write_svg(path: str, xs: Sequence[float], ys: Sequence[float], *, title: str, config: Mapping[str, object],
              version: str, width: int = 640, height: int = 400) -> str:
    """Write a standalone SVG polyline of ``ys`` against ``xs``.

    Non-finite points are dropped; a flat or empty series is drawn on a unit range.

    """
    points = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
    margin = 40
    if points:
        x_low, x_high = min(p[0] for p in points), max(p[0] for p in points)
        y_low, y_high = min(p[1] for p in points), max(p[1] for p in points)
    else:
        x_low = y_low = 0.0
        x_high = y_high = 1.0
    x_span = (x_high - x_low) or 1.0
    y_span = (y_high - y_low) or 1.0

    def scale(point: Tuple[float, float]) -> str:
        px = margin + (point[0] - x_low) / x_span * (width - 2 * margin)
        py = height - margin - (point[1] - y_low) / y_span * (height - 2 * margin)
        return '%.2f,%.2f' % (px, py)

    polyline = ' '.join(scale(point) for point in points)
    metadata = json.dumps(jsonable(config), sort_keys=True).replace('--', '- -')
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (width, height, width, height),
        '<metadata><!-- kitbath %s %s --></metadata>' % (version, metadata),
        '<title>%s</title>' % title,
        '<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="#888"/>'
        % (margin, margin, width - 2 * margin, height - 2 * margin),
        '<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="%s"/>' % polyline,
        '<text x="%d" y="%d" font-size="12">%.6g</text>' % (margin, height - margin + 15, x_low),
        '<text x="%d" y="%d" font-size="12" text-anchor="end">%.6g</text>'
        % (width - margin, height - margin + 15, x_high),
        '<text x="%d" y="%d" font-size="12" text-anchor="end">%.6g</text>' % (margin - 4, height - margin, y_low),
        '<text x="%d" y="%d" font-size="12" text-anchor="end">%.6g</text>' % (margin - 4, margin + 4, y_high),
        '</svg>',
    ]
    with open(path, 'w', encoding='utf-8') as file:
        file.write('\n'.join(lines) + '\n')
    return path
