"""Report serialization: JSON is the record, tables are for reading."""

import json

import numpy as np

import config


def _plain(value):
    """numpy scalars and arrays to JSON-native values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [[int(v) for v in row] for row in value] if value.ndim == 2 else [int(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


def to_json(report, indent=None):
    indent = config.REPORT_INDENT if indent is None else indent
    return json.dumps(_plain(report), sort_keys=True, indent=indent) + '\n'


def _is_grid(value):
    return (isinstance(value, list) and value and all(isinstance(row, list) for row in value)
            and all(cell is None or isinstance(cell, (int, str)) for row in value for cell in row))


def _grid_lines(grid, width):
    header = ' ' * width + ''.join(f"{t:>{width}}" for t in range(max(len(r) for r in grid)))
    lines = [header]
    for s, row in enumerate(grid):
        cells = ''.join(f"{'.' if c is None else c:>{width}}" for c in row)
        lines.append(f"{s:>{width}}{cells}")
    return lines


def to_table(report, width=None, indent=0):
    """Plain-text rendering of the same dictionary; grids print rows by first index."""
    width = config.TABLE_CELL_WIDTH if width is None else width
    report = _plain(report)
    pad = ' ' * indent
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(to_table(value, width, indent + config.REPORT_INDENT).rstrip('\n'))
        elif _is_grid(value):
            lines.append(f"{pad}{key}:")
            lines.extend(pad + line for line in _grid_lines(value, width))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(to_table(item, width, indent + config.REPORT_INDENT).rstrip('\n'))
                lines.append('')
        else:
            lines.append(f"{pad}{key}: {value}")
    return '\n'.join(lines) + '\n'


def render(report, fmt):
    if fmt == 'json':
        return to_json(report)
    if fmt == 'table':
        return to_table(report)
    raise ValueError(f"unknown report format {fmt!r}")
