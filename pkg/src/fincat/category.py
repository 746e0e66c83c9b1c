"""
Finite categories with explicit composition tables.

Objects and morphisms are addressed by their position in the input order.
Every other package works with these indices; names only matter for files
and reports.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from src.config_manager import size_guard
from src.errors import InputError, InvalidCategory, SizeGuardExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: int
    cod: int
    identity: bool = False


@dataclass
class ValidationReport:
    """Violations found by a validator. Empty means valid."""

    subject: str
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, message):
        self.violations.append(message)

    def summary(self, limit=5):
        if self.ok:
            return f"{self.subject}: valid"
        shown = '; '.join(self.violations[:limit])
        more = len(self.violations) - limit
        if more > 0:
            shown += f"; ... {more} more"
        return f"{self.subject}: {shown}"

    def to_dict(self):
        return {'subject': self.subject, 'valid': self.ok, 'violations': list(self.violations)}


class FinCat:
    """A finite category: objects, morphisms with flagged identities, composition table.

    `table` maps (g, f) to g.f for morphism indices with cod f = dom g.
    Labels are optional structured tags (for generated categories) that can
    be looked up in both directions.
    """

    def __init__(self, objects, morphisms, table, object_labels=None, morphism_labels=None, name=None):
        self.objects: Tuple[str, ...] = tuple(objects)
        self.morphisms: Tuple[Morphism, ...] = tuple(morphisms)
        self.table: Dict[Tuple[int, int], int] = dict(table)
        self.object_labels = tuple(object_labels) if object_labels is not None else self.objects
        self.morphism_labels = (
            tuple(morphism_labels) if morphism_labels is not None
            else tuple(m.name for m in self.morphisms)
        )
        self.name = name or 'category'

    @classmethod
    def from_names(cls, objects, morphisms, composition=(), name=None):
        """Build a category from names, as in the category file format.

        `morphisms` holds (name, dom, cod) or (name, dom, cod, identity)
        entries. A morphism named id_<obj> from obj to obj is that object's
        identity; objects without one get id_<obj> prepended. Compositions
        with identities are implied unless listed explicitly.
        """
        objects = [str(o) for o in objects]
        if len(set(objects)) != len(objects):
            raise InputError("duplicate object names")
        obj_index = {o: i for i, o in enumerate(objects)}

        entries = []
        for entry in morphisms:
            mor_name, dom, cod = (str(x) for x in entry[:3])
            flagged = bool(entry[3]) if len(entry) > 3 else False
            for end in (dom, cod):
                if end not in obj_index:
                    raise InputError(f"morphism {mor_name}: unknown object {end!r}")
            is_identity = flagged or (mor_name == f"id_{dom}" and dom == cod)
            entries.append(Morphism(mor_name, obj_index[dom], obj_index[cod], is_identity))

        has_identity = {m.dom for m in entries if m.identity}
        missing = [Morphism(f"id_{o}", i, i, True) for i, o in enumerate(objects) if i not in has_identity]
        all_morphisms = missing + entries
        names = [m.name for m in all_morphisms]
        if len(set(names)) != len(names):
            raise InputError("duplicate morphism names")
        mor_index = {n: i for i, n in enumerate(names)}

        identities = {}
        for i, m in enumerate(all_morphisms):
            if m.identity:
                if m.dom != m.cod:
                    raise InputError(f"identity {m.name} must be an endomorphism")
                if m.dom in identities:
                    raise InputError(f"object {objects[m.dom]} has two identities")
                identities[m.dom] = i

        table = {}
        for f, m in enumerate(all_morphisms):
            table[(identities[m.cod], f)] = f
            table[(f, identities[m.dom])] = f
        for entry in composition:
            g, f, h = (str(x) for x in entry)
            for mor_name in (g, f, h):
                if mor_name not in mor_index:
                    raise InputError(f"composition {g} o {f}: unknown morphism {mor_name!r}")
            table[(mor_index[g], mor_index[f])] = mor_index[h]

        return cls(objects, all_morphisms, table, name=name)

    # -- sizes and lookup ---------------------------------------------

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    @cached_property
    def _object_index(self):
        return {o: i for i, o in enumerate(self.objects)}

    @cached_property
    def _morphism_index(self):
        return {m.name: i for i, m in enumerate(self.morphisms)}

    @cached_property
    def _object_by_label(self):
        return {label: i for i, label in enumerate(self.object_labels)}

    @cached_property
    def _morphism_by_label(self):
        return {label: i for i, label in enumerate(self.morphism_labels)}

    def object_index(self, name):
        return self._object_index[name]

    def morphism_index(self, name):
        return self._morphism_index[name]

    def object_by_label(self, label):
        return self._object_by_label[label]

    def morphism_by_label(self, label):
        return self._morphism_by_label[label]

    @cached_property
    def identities(self):
        """Object index -> index of its identity morphism."""
        out = {}
        for i, m in enumerate(self.morphisms):
            if m.identity:
                out.setdefault(m.dom, i)
        return out

    def identity(self, obj):
        return self.identities[obj]

    def dom(self, f):
        return self.morphisms[f].dom

    def cod(self, f):
        return self.morphisms[f].cod

    def is_identity(self, f):
        return self.morphisms[f].identity

    def compose(self, g, f):
        """g.f for composable indices."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise ValueError(
                f"{self.morphisms[g].name} o {self.morphisms[f].name} is not defined"
            ) from None

    def compose_chain(self, arrows):
        """a_n . ... . a_1 for arrows listed in path order."""
        result = arrows[0]
        for a in arrows[1:]:
            result = self.compose(a, result)
        return result

    @cached_property
    def _hom(self):
        hom = {}
        for i, m in enumerate(self.morphisms):
            hom.setdefault((m.dom, m.cod), []).append(i)
        return {k: tuple(v) for k, v in hom.items()}

    def hom(self, a, b):
        """Morphisms a -> b in input order."""
        return self._hom.get((a, b), ())

    @cached_property
    def _into(self):
        into = [[] for _ in self.objects]
        for i, m in enumerate(self.morphisms):
            into[m.cod].append(i)
        return tuple(tuple(v) for v in into)

    @cached_property
    def _out_of(self):
        out = [[] for _ in self.objects]
        for i, m in enumerate(self.morphisms):
            out[m.dom].append(i)
        return tuple(tuple(v) for v in out)

    def into(self, c):
        """Morphisms with codomain c, in input order."""
        return self._into[c]

    def out_of(self, c):
        """Morphisms with domain c, in input order."""
        return self._out_of[c]

    def __repr__(self):
        return f"FinCat({self.name}: {self.n_objects} objects, {self.n_morphisms} morphisms)"


@dataclass(frozen=True, eq=False)
class CatMap:
    """A functor between finite categories, given on indices."""

    source: FinCat
    target: FinCat
    object_map: Tuple[int, ...]
    morphism_map: Tuple[int, ...]
    name: Optional[Any] = None

    def on_object(self, c):
        return self.object_map[c]

    def on_morphism(self, f):
        return self.morphism_map[f]

    def validate(self):
        report = ValidationReport(f"functor {self.name or ''}".strip())
        src, tgt = self.source, self.target
        if len(self.object_map) != src.n_objects or len(self.morphism_map) != src.n_morphisms:
            report.add("object or morphism map has the wrong length")
            return report
        for f, m in enumerate(src.morphisms):
            image = self.morphism_map[f]
            if tgt.dom(image) != self.object_map[m.dom] or tgt.cod(image) != self.object_map[m.cod]:
                report.add(f"{m.name}: domain or codomain not preserved")
            if m.identity and not tgt.is_identity(image):
                report.add(f"{m.name}: identity not sent to an identity")
        for (g, f), h in src.table.items():
            if tgt.table.get((self.morphism_map[g], self.morphism_map[f])) != self.morphism_map[h]:
                report.add(
                    f"composition {src.morphisms[g].name} o {src.morphisms[f].name} not preserved"
                )
        return report


def validate(category):
    """Every violated identity law, closure and associativity instance."""
    report = ValidationReport(f"category {category.name}")
    n_obj = category.n_objects
    morphisms = category.morphisms

    for i, m in enumerate(morphisms):
        if not (0 <= m.dom < n_obj and 0 <= m.cod < n_obj):
            report.add(f"{m.name}: endpoint out of range")
            return report

    identities = {}
    for i, m in enumerate(morphisms):
        if m.identity:
            if m.dom != m.cod:
                report.add(f"identity {m.name} is not an endomorphism")
            elif m.dom in identities:
                report.add(f"object {category.objects[m.dom]} has two identities")
            else:
                identities[m.dom] = i
    for c, obj in enumerate(category.objects):
        if c not in identities:
            report.add(f"object {obj} has no identity")
    if not report.ok:
        return report

    for (g, f), h in category.table.items():
        if morphisms[f].cod != morphisms[g].dom:
            report.add(f"composite {morphisms[g].name} o {morphisms[f].name} listed for a non-composable pair")
        elif not (0 <= h < len(morphisms)):
            report.add(f"composite {morphisms[g].name} o {morphisms[f].name} is not a morphism")
        elif morphisms[h].dom != morphisms[f].dom or morphisms[h].cod != morphisms[g].cod:
            report.add(
                f"closure fails at ({morphisms[g].name}, {morphisms[f].name}): "
                f"{morphisms[h].name} has the wrong domain or codomain"
            )

    for f, m in enumerate(morphisms):
        left = category.table.get((identities[m.cod], f))
        right = category.table.get((f, identities[m.dom]))
        if left != f:
            report.add(f"identity law fails at ({morphisms[identities[m.cod]].name}, {m.name})")
        if right != f:
            report.add(f"identity law fails at ({m.name}, {morphisms[identities[m.dom]].name})")

    for f, mf in enumerate(morphisms):
        for g in category.out_of(mf.cod):
            if (g, f) not in category.table:
                report.add(f"composite {morphisms[g].name} o {mf.name} is missing")

    if not report.ok:
        return report

    for f, mf in enumerate(morphisms):
        for g in category.out_of(mf.cod):
            gf = category.table[(g, f)]
            for h in category.out_of(morphisms[g].cod):
                if category.table[(h, gf)] != category.table[(category.table[(h, g)], f)]:
                    report.add(
                        f"associativity fails at ({morphisms[h].name}, {morphisms[g].name}, {mf.name})"
                    )
    logger.debug("validated %r: %d violations", category, len(report.violations))
    return report


def require_valid(category):
    report = validate(category)
    if not report.ok:
        raise InvalidCategory(report)
    return category


def check_size(category, construction):
    """Refuse categories above the configured morphism bound."""
    bound = size_guard()
    if category.n_morphisms > bound:
        raise SizeGuardExceeded(construction, category.n_morphisms, bound)
