"""
Natural systems on a finite category: functors on its factorization category
C'. Also bimodules (functors on C^op x C) and the natural systems built from
functors and Hom spaces.
"""

import logging

from src.diagrams.algebra import RModule
from src.diagrams.functor import DiagramFunctor, check_functor, require_same_base
from src.diagrams.hom import HomSpace
from src.errors import IncompatibleBase
from src.fincat.constructions import factorization

logger = logging.getLogger(__name__)


class NaturalSystem:
    """D: C' -> k-spaces (or free abelian groups), stored as a functor on C'.

    Objects of C' are the morphisms of C with the same indices, so D.value(f)
    is the space attached to the morphism f of C.
    """

    def __init__(self, base, functor, name=None):
        prime, dom_cod = factorization(base)
        if functor.base is not prime:
            raise IncompatibleBase("natural system must be a functor on the factorization category")
        self.base = base
        self.prime = prime
        self.dom_cod = dom_cod
        self.functor = functor
        self.algebra = functor.algebra
        self.ring = functor.ring
        self.name = name or functor.name

    def value(self, f):
        return self.functor.modules[f]

    def dim(self, f):
        return self.functor.modules[f].dim

    def action(self, f, alpha, beta):
        """D(alpha, beta): D(f) -> D(beta.f.alpha)."""
        base = self.base
        g = base.compose(beta, base.compose(f, alpha))
        return self.functor.maps[self.prime.morphism_by_label((f, g, alpha, beta))]

    def left(self, alpha, g):
        """D(alpha, 1): D(g) -> D(g.alpha)."""
        return self.action(g, alpha, self.base.identity(self.base.cod(g)))

    def right(self, h, beta):
        """D(1, beta): D(h) -> D(beta.h)."""
        return self.action(h, self.base.identity(self.base.dom(h)), beta)

    def check(self):
        report = check_functor(self.functor)
        report.subject = f"natural system {self.name}"
        return report

    def __repr__(self):
        return f"NaturalSystem({self.name} on {self.base.name})"


def natural_system_from_maps(base, algebra, dims, action, name=None):
    """Build a natural system from value dimensions and an action callback.

    dims[f] is the dimension at the morphism f; action(f, g, alpha, beta)
    returns the matrix D(f) -> D(g) of the C'-morphism (alpha, beta).
    """
    prime, _ = factorization(base)
    modules = [RModule.trivial(algebra, d) for d in dims]
    maps = [action(*label) for label in prime.morphism_labels]
    return NaturalSystem(base, DiagramFunctor(prime, algebra, modules, maps, name), name)


def natural_system_from_functor(functor, name=None):
    """alpha -> F(cod alpha), with (alpha, beta) acting by F(beta)."""
    base = functor.base
    ground = functor.algebra.ground()
    return natural_system_from_maps(
        base, ground,
        [functor.modules[m.cod].dim for m in base.morphisms],
        lambda f, g, alpha, beta: functor.maps[beta],
        name or f"{functor.name}.cod",
    )


def hom_natural_system(source, target, name=None):
    """alpha: a -> b  gives  Hom_R(F(a), G(b)); (u, v) acts by phi -> G(v) phi F(u)."""
    require_same_base(source, target)
    base = source.base
    spaces = [HomSpace(source.modules[m.dom], target.modules[m.cod]) for m in base.morphisms]

    def action(f, g, u, v):
        return spaces[g].action(source.maps[u], target.maps[v], spaces[f])

    system = natural_system_from_maps(
        base, source.algebra.ground(), [s.dim for s in spaces], action,
        name or f"Hom({source.name},{target.name})",
    )
    system.spaces = spaces
    return system


def corepresentable_hom_system(base, c, functor, name=None):
    """alpha: a -> b  gives  Hom(free on C(c, a), G(b)) = G(b)^{C(c, a)}.

    The blocks follow the morphisms c -> a in order. (s, t): alpha -> beta
    sends phi to w' -> G(t) phi(s.w').
    """
    ring = functor.ring
    blocks = [base.hom(c, m.dom) for m in base.morphisms]
    dims = [len(blocks[f]) * functor.modules[m.cod].dim for f, m in enumerate(base.morphisms)]

    def action(f, g, s, t):
        width = functor.modules[base.cod(f)].dim
        height = functor.modules[base.cod(g)].dim
        position = {w: k for k, w in enumerate(blocks[f])}
        out = ring.zeros(dims[g], dims[f])
        for k, w in enumerate(blocks[g]):
            source = position[base.compose(s, w)]
            out[k * height:(k + 1) * height, source * width:(source + 1) * width] = functor.maps[t]
        return out

    return natural_system_from_maps(
        base, functor.algebra.ground(), dims, action,
        name or f"Hom(L h^{base.objects[c]},{functor.name})",
    )


def bimodule_base(base):
    """C^op x C, the very instance the (dom, cod) functor lands in."""
    return factorization(base)[1].target


def hom_bimodule(source, target, name=None):
    """(a, b) -> Hom_R(F(a), G(b)) as a functor on C^op x C."""
    require_same_base(source, target)
    base = source.base
    pairs = bimodule_base(base)
    spaces = [HomSpace(source.modules[i], target.modules[j]) for (i, j) in pairs.object_labels]
    ground = source.algebra.ground()
    modules = [RModule.trivial(ground, s.dim) for s in spaces]
    maps = []
    for k, (u, v) in enumerate(pairs.morphism_labels):
        m = pairs.morphisms[k]
        maps.append(spaces[m.cod].action(source.maps[u], target.maps[v], spaces[m.dom]))
    return DiagramFunctor(pairs, ground, modules, maps, name or f"Hom({source.name},{target.name})")


def pullback_bimodule(base, bimodule, name=None):
    """The natural system alpha -> B(dom alpha, cod alpha)."""
    prime, dom_cod = factorization(base)
    functor = bimodule.precompose(dom_cod, name or f"{bimodule.name}.(dom,cod)")
    return NaturalSystem(base, functor, functor.name)


def zero_system(base, algebra, name='0'):
    ring = algebra.ring
    return natural_system_from_maps(base, algebra, [0] * base.n_morphisms,
                                    lambda *label: ring.zeros(0, 0), name)


def constant_system(base, algebra, dim=1, name='const'):
    ring = algebra.ring
    return natural_system_from_maps(base, algebra, [dim] * base.n_morphisms,
                                    lambda *label: ring.identity(dim), name)
