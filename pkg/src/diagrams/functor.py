"""
Functors from a finite category to R-modules, families of modules indexed by
objects, and natural transformations between functors.

Matrices act on column vectors: entry [i][j] is the coefficient of basis
vector i in the image of basis vector j, and F(g.f) = F(g) F(f).
"""

import logging
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from src.errors import IncompatibleBase, InvalidDiagram
from src.fincat.category import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObFamily:
    """One module per object of the base category."""

    base: Any
    algebra: Any
    modules: Tuple[Any, ...]

    def dims(self):
        return tuple(mod.dim for mod in self.modules)


class DiagramFunctor:
    """F: C -> Mod_R given by modules per object and matrices per morphism."""

    def __init__(self, base, algebra, modules, maps, name=None):
        self.base = base
        self.algebra = algebra
        self.ring = algebra.ring
        self.modules = tuple(modules)
        self.maps = tuple(self.ring.reduce(np.asarray(m)) for m in maps)
        self.name = name or 'F'
        if len(self.modules) != base.n_objects or len(self.maps) != base.n_morphisms:
            raise ValueError(
                f"{self.name}: expected {base.n_objects} modules and {base.n_morphisms} maps, "
                f"got {len(self.modules)} and {len(self.maps)}"
            )

    @classmethod
    def from_partial(cls, base, algebra, modules, maps, name=None):
        """Fill in identities and composites from maps given on some morphisms.

        `maps` is a dict morphism index -> matrix. A missing non-identity
        morphism is filled from any listed composite of known morphisms.
        """
        ring = algebra.ring
        known = {f: ring.reduce(np.asarray(m)) for f, m in maps.items()}
        for c, mod in enumerate(modules):
            known.setdefault(base.identity(c), ring.identity(mod.dim))
        changed = True
        while changed and len(known) < base.n_morphisms:
            changed = False
            for (g, f), h in sorted(base.table.items()):
                if h not in known and g in known and f in known:
                    known[h] = ring.matmul(known[g], known[f])
                    changed = True
        missing = [base.morphisms[f].name for f in range(base.n_morphisms) if f not in known]
        if missing:
            raise ValueError(f"no map given for {', '.join(missing)}")
        return cls(base, algebra, modules, [known[f] for f in range(base.n_morphisms)], name)

    @classmethod
    def constant(cls, base, module, name=None):
        ring = module.algebra.ring
        return cls(base, module.algebra, [module] * base.n_objects,
                   [ring.identity(module.dim)] * base.n_morphisms, name or 'const')

    def module(self, c):
        return self.modules[c]

    def map(self, f):
        return self.maps[f]

    def dims(self):
        return tuple(mod.dim for mod in self.modules)

    def precompose(self, catmap, name=None):
        """F . catmap, a functor on catmap.source."""
        if catmap.target is not self.base:
            raise IncompatibleBase(f"{self.name}: functor does not start at the target of {catmap.name}")
        return DiagramFunctor(
            catmap.source, self.algebra,
            [self.modules[c] for c in catmap.object_map],
            [self.maps[f] for f in catmap.morphism_map],
            name or f"{self.name}.{catmap.name}",
        )

    def require_valid(self):
        report = check_functor(self)
        if not report.ok:
            raise InvalidDiagram(report)
        return self

    def __repr__(self):
        return f"DiagramFunctor({self.name} on {self.base.name}, dims={self.dims()})"


def check_functor(functor):
    """Shape, identity, composition and R-linearity violations."""
    report = ValidationReport(f"diagram {functor.name}")
    base, ring = functor.base, functor.ring
    names = [m.name for m in base.morphisms]
    shapes_ok = True
    for f, m in enumerate(base.morphisms):
        expected = (functor.modules[m.cod].dim, functor.modules[m.dom].dim)
        if functor.maps[f].shape != expected:
            report.add(f"{names[f]}: matrix shape {functor.maps[f].shape}, expected {expected}")
            shapes_ok = False
    if not shapes_ok:
        return report
    for c, mod in enumerate(functor.modules):
        if mod.algebra != functor.algebra:
            report.add(f"module at {base.objects[c]} is over {mod.algebra}, not {functor.algebra}")
        ident = base.identity(c)
        if not ring.equal(functor.maps[ident], ring.identity(mod.dim)):
            report.add(f"{names[ident]} is not sent to the identity")
    for f, m in enumerate(base.morphisms):
        if not functor.modules[m.dom].is_equivariant(functor.modules[m.cod], functor.maps[f]):
            report.add(f"{names[f]}: map does not commute with x")
    for (g, f), h in base.table.items():
        if not ring.equal(functor.maps[h], ring.matmul(functor.maps[g], functor.maps[f])):
            report.add(f"F({names[g]} o {names[f]}) != F({names[g]}) F({names[f]})")
    return report


def restrict(functor):
    """O(F): forget the morphisms."""
    return ObFamily(functor.base, functor.algebra, functor.modules)


def require_same_base(first, second):
    if first.base is not second.base:
        raise IncompatibleBase(f"{first.name} and {second.name} live on different categories")
    if first.algebra != second.algebra:
        raise IncompatibleBase(
            f"{first.name} is over {first.algebra} but {second.name} is over {second.algebra}"
        )


class NaturalTransformation:
    """Components eta_c: F(c) -> G(c)."""

    def __init__(self, source, target, components, name=None):
        require_same_base(source, target)
        self.source = source
        self.target = target
        ring = source.ring
        self.components = tuple(ring.reduce(np.asarray(c)) for c in components)
        self.name = name or 'eta'

    def check(self):
        report = ValidationReport(f"transformation {self.name}")
        F, G, ring = self.source, self.target, self.source.ring
        for c, comp in enumerate(self.components):
            expected = (G.modules[c].dim, F.modules[c].dim)
            if comp.shape != expected:
                report.add(f"component at {F.base.objects[c]} has shape {comp.shape}, expected {expected}")
        if not report.ok:
            return report
        for c, comp in enumerate(self.components):
            if not F.modules[c].is_equivariant(G.modules[c], comp):
                report.add(f"component at {F.base.objects[c]} does not commute with x")
        for f, m in enumerate(F.base.morphisms):
            left = ring.matmul(G.maps[f], self.components[m.dom])
            right = ring.matmul(self.components[m.cod], F.maps[f])
            if not ring.equal(left, right):
                report.add(f"naturality fails at {m.name}")
        return report

    def then(self, other):
        """other . self."""
        ring = self.source.ring
        return NaturalTransformation(
            self.source, other.target,
            [ring.matmul(b, a) for a, b in zip(self.components, other.components)],
            f"{other.name}.{self.name}",
        )

    def is_surjective(self):
        ring = self.source.ring
        return all(ring.rank(comp) == comp.shape[0] for comp in self.components)

    def kernel_functor(self, name=None):
        """The objectwise kernel K with its inclusion K -> source.

        K(c) has the kernel basis of eta_c; a kernel vector's coordinates are
        its entries at the free columns of that basis.
        """
        F, ring = self.source, self.source.ring
        if F.algebra.integral:
            raise ValueError("kernels are only formed over F_p")
        bases, frees, modules = [], [], []
        for c, comp in enumerate(self.components):
            basis, free = ring.kernel_basis(comp)
            x = ring.matmul(F.modules[c].x, basis)[list(free), :]
            bases.append(basis)
            frees.append(free)
            modules.append(type(F.modules[c])(F.algebra, len(free), x))
        maps = []
        for f, m in enumerate(F.base.morphisms):
            image = ring.matmul(F.maps[f], bases[m.dom])
            maps.append(image[list(frees[m.cod]), :])
        kernel = DiagramFunctor(F.base, F.algebra, modules, maps, name or f"ker {self.name}")
        inclusion = NaturalTransformation(kernel, F, bases, f"incl {kernel.name}")
        logger.debug("kernel of %s: dims %s", self.name, kernel.dims())
        return kernel, inclusion
