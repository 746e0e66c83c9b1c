"""
Diagram files:
{"coefficient": {"p": 2, "m": 2} | "Z",
 "modules": {"a": {"dim": 2, "x": [[0, 0], [1, 0]]}},
 "maps": {"f": [[...]]}}

Matrices are row-major and act on column vectors. Identity maps may be
omitted, and so may composites of listed maps.
"""

import json
import logging

import numpy as np

from src.diagrams.algebra import CoeffAlgebra, RModule
from src.diagrams.functor import DiagramFunctor
from src.errors import ParseError
from src.fincat.io import line_of, read_json

logger = logging.getLogger(__name__)


def parse_coefficient(value, path='<memory>'):
    if isinstance(value, str):
        return CoeffAlgebra.parse(value)
    if isinstance(value, dict) and 'p' in value:
        try:
            return CoeffAlgebra(int(value['p']), int(value.get('m', 1)))
        except (TypeError, ValueError) as exc:
            raise ParseError(path, 'coefficient', str(exc)) from None
    raise ParseError(path, 'coefficient', "expected {\"p\": p, \"m\": m} or \"Z\"")


def _matrix(raw, rows, cols, path, field, text, algebra):
    line = line_of(text, field.split('.')[-1])
    if (not isinstance(raw, list) or len(raw) != rows
            or any(not isinstance(row, list) or len(row) != cols for row in raw)):
        raise ParseError(path, field, f"expected {rows} rows of {cols} entries", line=line)
    try:
        entries = [[int(v) for v in row] for row in raw]
    except (TypeError, ValueError):
        raise ParseError(path, field, "entries must be integers", line=line) from None
    if rows == 0:
        return algebra.ring.zeros(0, cols)
    return algebra.ring.reduce(np.array(entries, dtype=object).reshape(rows, cols))


def parse_diagram(data, category, path='<memory>', text=None, name=None, coefficient=None):
    """A DiagramFunctor on category. coefficient (a CoeffAlgebra) overrides the file's."""
    if not isinstance(data, dict):
        raise ParseError(path, None, "expected a JSON object")
    if coefficient is None:
        if 'coefficient' not in data:
            raise ParseError(path, 'coefficient', "missing field")
        coefficient = parse_coefficient(data['coefficient'], path)
    modules_raw = data.get('modules')
    if not isinstance(modules_raw, dict):
        raise ParseError(path, 'modules', "expected an object keyed by object name")

    modules = []
    for c, obj in enumerate(category.objects):
        if obj not in modules_raw:
            raise ParseError(path, f"modules.{obj}", "missing module", line=line_of(text, 'modules'))
        entry = modules_raw[obj]
        if isinstance(entry, int):
            entry = {'dim': entry}
        if not isinstance(entry, dict) or 'dim' not in entry:
            raise ParseError(path, f"modules.{obj}", "expected {\"dim\": d, \"x\": [...]}",
                             line=line_of(text, obj))
        dim = int(entry['dim'])
        x = (_matrix(entry['x'], dim, dim, path, f"modules.{obj}.x", text, coefficient)
             if 'x' in entry else coefficient.ring.zeros(dim, dim))
        try:
            modules.append(RModule(coefficient, dim, x))
        except ValueError as exc:
            raise ParseError(path, f"modules.{obj}", str(exc), line=line_of(text, obj)) from None
    unknown = set(modules_raw) - set(category.objects)
    if unknown:
        raise ParseError(path, 'modules', f"unknown objects {sorted(unknown)}")

    maps = {}
    for mor_name, raw in (data.get('maps') or {}).items():
        try:
            f = category.morphism_index(mor_name)
        except KeyError:
            raise ParseError(path, f"maps.{mor_name}", "unknown morphism",
                             line=line_of(text, mor_name)) from None
        m = category.morphisms[f]
        maps[f] = _matrix(raw, modules[m.cod].dim, modules[m.dom].dim, path,
                          f"maps.{mor_name}", text, coefficient)
    try:
        functor = DiagramFunctor.from_partial(category, coefficient, modules, maps,
                                              name or data.get('name') or 'F')
    except ValueError as exc:
        raise ParseError(path, 'maps', str(exc)) from None
    logger.debug("parsed diagram %r from %s", functor, path)
    return functor


def load_diagram(path, category, name=None, coefficient=None):
    data, text = read_json(path)
    return parse_diagram(data, category, path, text, name, coefficient)


def dump_diagram(functor):
    base = functor.base
    modules = {obj: functor.modules[c].to_dict() for c, obj in enumerate(base.objects)}
    maps = {
        m.name: [[int(v) for v in row] for row in functor.maps[f]]
        for f, m in enumerate(base.morphisms) if not m.identity
    }
    return {'coefficient': functor.algebra.to_dict(), 'modules': modules, 'maps': maps,
            'name': functor.name}


def save_diagram(functor, path, indent=2):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(dump_diagram(functor), fh, indent=indent, sort_keys=True)
        fh.write('\n')