"""Category files: {"objects": [...], "morphisms": [...], "composition": [[g, f, gf], ...]}."""

import json
import logging

from src.errors import InputError, ParseError
from src.fincat.category import FinCat

logger = logging.getLogger(__name__)


def line_of(text, token):
    """1-based line of the first occurrence of "token" in text, or None."""
    if text is None:
        return None
    needle = json.dumps(str(token))
    pos = text.find(needle)
    if pos < 0:
        return None
    return text.count('\n', 0, pos) + 1


def read_json(path):
    """Parsed JSON plus the raw text (for line diagnostics)."""
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(path, None, f"cannot read file: {exc.strerror}") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ParseError(path, None, exc.msg, line=exc.lineno) from None


def parse_category(data, path='<memory>', text=None, name=None):
    if not isinstance(data, dict):
        raise ParseError(path, None, "expected a JSON object", line=1 if text else None)
    for key in ('objects', 'morphisms'):
        if key not in data:
            raise ParseError(path, key, "missing field")
    objects = data['objects']
    if not isinstance(objects, list) or not objects:
        raise ParseError(path, 'objects', "expected a non-empty list", line=line_of(text, 'objects'))

    morphisms = []
    for k, entry in enumerate(data['morphisms']):
        field = f"morphisms[{k}]"
        if not isinstance(entry, dict):
            raise ParseError(path, field, "expected an object with name, dom, cod")
        missing = [key for key in ('name', 'dom', 'cod') if key not in entry]
        if missing:
            raise ParseError(path, field, f"missing {', '.join(missing)}",
                             line=line_of(text, entry.get('name', 'morphisms')))
        morphisms.append((entry['name'], entry['dom'], entry['cod'], entry.get('identity', False)))

    composition = []
    for k, entry in enumerate(data.get('composition', [])):
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(path, f"composition[{k}]", "expected [g, f, gf]",
                             line=line_of(text, 'composition'))
        composition.append(tuple(entry))

    try:
        category = FinCat.from_names(objects, morphisms, composition, name=name or data.get('name'))
    except InputError as exc:
        raise ParseError(path, 'morphisms', str(exc)) from None
    logger.debug("parsed %r from %s", category, path)
    return category


def load_category(path):
    data, text = read_json(path)
    return parse_category(data, path, text)


def dump_category(category):
    """Dictionary in the file format; identities are listed and flagged, implied compositions omitted."""
    morphisms = []
    for m in category.morphisms:
        entry = {'name': m.name, 'dom': category.objects[m.dom], 'cod': category.objects[m.cod]}
        if m.identity and m.name != f"id_{category.objects[m.dom]}":
            entry['identity'] = True
        morphisms.append(entry)
    composition = []
    for (g, f), h in sorted(category.table.items()):
        if category.is_identity(g) or category.is_identity(f):
            if h == (f if category.is_identity(g) else g):
                continue
        composition.append([category.morphisms[g].name, category.morphisms[f].name,
                            category.morphisms[h].name])
    out = {'objects': list(category.objects), 'morphisms': morphisms, 'composition': composition}
    if category.name and category.name != 'category':
        out['name'] = category.name
    return out


def save_category(category, path, indent=2):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(dump_category(category), fh, indent=indent, sort_keys=True)
        fh.write('\n')
