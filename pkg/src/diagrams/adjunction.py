"""
Induction from object families (the left adjoint of restriction) and the
counit of the adjunction.

Induce(D)(c) is the direct sum of D(dom u) over the morphisms u with
codomain c, in morphism order. A morphism g: c -> c' sends the u-summand
identically onto the (g.u)-summand.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.diagrams.algebra import RModule, direct_sum
from src.diagrams.functor import DiagramFunctor, NaturalTransformation, ObFamily, restrict
from src.fincat.category import check_size

logger = logging.getLogger(__name__)


class InducedFunctor(DiagramFunctor):
    """Induce(D), remembering which block belongs to which morphism."""

    def __init__(self, family, name=None):
        base, algebra = family.base, family.algebra
        ring = algebra.ring
        self.family = family
        self.summands = tuple(base.into(c) for c in range(base.n_objects))
        self.offsets = []
        modules = []
        for c, into in enumerate(self.summands):
            offsets, total = {}, 0
            for u in into:
                offsets[u] = total
                total += family.modules[base.dom(u)].dim
            self.offsets.append(offsets)
            modules.append(direct_sum(algebra, [family.modules[base.dom(u)] for u in into]))
        maps = []
        for g, mg in enumerate(base.morphisms):
            matrix = ring.zeros(modules[mg.cod].dim, modules[mg.dom].dim)
            for u in self.summands[mg.dom]:
                size = family.modules[base.dom(u)].dim
                src = self.offsets[mg.dom][u]
                tgt = self.offsets[mg.cod][base.compose(g, u)]
                matrix[tgt:tgt + size, src:src + size] = ring.identity(size)
            maps.append(matrix)
        super().__init__(base, algebra, modules, maps, name or 'Lambda')

    def block(self, c, u):
        """Row slice of the u-summand inside Induce(D)(c)."""
        start = self.offsets[c][u]
        return slice(start, start + self.family.modules[self.base.dom(u)].dim)


def induce(family, name=None):
    check_size(family.base, 'induce')
    functor = InducedFunctor(family, name)
    logger.debug("induced functor on %s: dims %s", family.base.name, functor.dims())
    return functor


def concentrated(base, c, module):
    """The family with module at c and 0 elsewhere."""
    zero = RModule.zero(module.algebra)
    return ObFamily(base, module.algebra, tuple(module if d == c else zero for d in range(base.n_objects)))


def induce_at(base, c, module, name=None):
    """Induce of the family concentrated at c."""
    return induce(concentrated(base, c, module), name or f"Lambda^{base.objects[c]}")


def induce_map(source, target, maps, name=None):
    """Induce on a family map psi_c: D_c -> E_c, block diagonal in each object."""
    base, ring = source.family.base, source.ring
    components = []
    for c in range(base.n_objects):
        matrix = ring.zeros(target.modules[c].dim, source.modules[c].dim)
        for u in source.summands[c]:
            d = base.dom(u)
            matrix[target.block(c, u), source.block(c, u)] = maps[d]
        components.append(matrix)
    return NaturalTransformation(source, target, components, name or 'Lambda(psi)')


def counit(functor, induced=None):
    """epsilon: Induce(O F) -> F, sending the u-summand by F(u)."""
    induced = induce(restrict(functor)) if induced is None else induced
    return transpose(induced, functor, [functor.ring.identity(mod.dim) for mod in functor.modules],
                     name=f"epsilon_{functor.name}")


def transpose(induced, functor, maps, name=None):
    """The natural transformation Induce(D) -> F matching maps psi_c: D_c -> F(c)."""
    base, ring = functor.base, functor.ring
    components = []
    for c in range(base.n_objects):
        matrix = ring.zeros(functor.modules[c].dim, induced.modules[c].dim)
        for u in induced.summands[c]:
            matrix[:, induced.block(c, u)] = ring.matmul(functor.maps[u], maps[base.dom(u)])
        components.append(matrix)
    return NaturalTransformation(induced, functor, components, name or 'transpose')


def untranspose(transformation):
    """The family maps D_c -> F(c) of a transformation out of Induce(D)."""
    induced = transformation.source
    base = induced.base
    return [transformation.components[c][:, induced.block(c, base.identity(c))]
            for c in range(base.n_objects)]


@dataclass(frozen=True)
class Splitting:
    """Induce(O F)(c) = F(c) + ker(epsilon_c).

    section: F(c) -> identity summand; retraction: epsilon_c;
    kernel_inclusion / kernel_projection: the complementary pair, with the
    kernel parametrized by the non-identity summands.
    """

    ring: Any
    section: np.ndarray
    retraction: np.ndarray
    kernel_inclusion: np.ndarray
    kernel_projection: np.ndarray

    def check(self):
        ring = self.ring
        n = self.section.shape[0]
        ok = ring.equal(ring.matmul(self.retraction, self.section), ring.identity(self.section.shape[1]))
        ok = ok and ring.equal(
            ring.matmul(self.kernel_projection, self.kernel_inclusion),
            ring.identity(self.kernel_inclusion.shape[1]),
        )
        ok = ok and ring.is_zero(ring.matmul(self.retraction, self.kernel_inclusion))
        whole = (ring.matmul(self.section, self.retraction)
                 + ring.matmul(self.kernel_inclusion, self.kernel_projection))
        return ok and ring.equal(ring.reduce(whole), ring.identity(n))


def counit_section(functor, c, induced=None):
    """The splitting of epsilon_F at object c."""
    induced = induce(restrict(functor)) if induced is None else induced
    base, ring = functor.base, functor.ring
    epsilon = counit(functor, induced).components[c]
    total = induced.modules[c].dim
    ident = base.identity(c)
    own = induced.block(c, ident)
    section = ring.zeros(total, functor.modules[c].dim)
    section[own, :] = ring.identity(functor.modules[c].dim)

    others = [u for u in induced.summands[c] if u != ident]
    size = sum(functor.modules[base.dom(u)].dim for u in others)
    inclusion = ring.zeros(total, size)
    projection = ring.zeros(size, total)
    col = 0
    for u in others:
        block = induced.block(c, u)
        width = block.stop - block.start
        inclusion[block, col:col + width] = ring.identity(width)
        inclusion[own, col:col + width] = ring.reduce(-np.asarray(functor.maps[u]))
        projection[col:col + width, block] = ring.identity(width)
        col += width
    return Splitting(ring, section, epsilon, inclusion, projection)
