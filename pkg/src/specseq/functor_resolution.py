"""
Resolutions of a functor F: C -> Mod_R by induced functors.

F_0 = Induce(P) for the family of projective covers P(c) -> F(c); the
augmentation is epsilon_F . Induce(psi). Each later term covers the objectwise
kernel of the previous map the same way, and d_q: F_(q+1) -> F_q is the cover
of that kernel followed by its inclusion.
"""

import logging
from dataclasses import dataclass
from typing import Any, Tuple

from src.diagrams.adjunction import induce, transpose
from src.diagrams.functor import ObFamily
from src.fincat.category import check_size
from src.homalg.resolution import projective_cover

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FunctorResolution:
    """F <- F_0 <- F_1 <- ... <- F_Q.

    differentials[q] is d_q: F_(q+1) -> F_q. covers[q] holds the family maps
    psi_c: P_q(c) -> K_q(c), where K_0 = F and K_(q+1) = ker of the map out
    of F_q.
    """

    target: Any
    terms: Tuple[Any, ...]
    families: Tuple[Any, ...]
    covers: Tuple[Any, ...]
    augmentation: Any
    differentials: Tuple[Any, ...]
    kernels: Tuple[Any, ...]

    @property
    def bound(self):
        return len(self.terms) - 1

    def d(self, q):
        return self.differentials[q]

    def check_exact(self):
        """(object, degree) pairs where exactness fails; -1 marks the augmentation."""
        base = self.target.base
        ring = self.target.ring
        bad = []
        for c in range(base.n_objects):
            aug = self.augmentation.components[c]
            if ring.rank(aug) != self.target.modules[c].dim:
                bad.append((c, -1))
            outgoing = [aug] + [d.components[c] for d in self.differentials]
            for q in range(len(self.differentials)):
                lower, upper = outgoing[q], outgoing[q + 1]
                if not ring.is_zero(ring.matmul(lower, upper)):
                    bad.append((c, q))
                elif ring.rank(lower) + ring.rank(upper) != self.terms[q].modules[c].dim:
                    bad.append((c, q))
        return bad


def _cover(functor):
    """Induce(P) -> functor for the projective covers P(c) -> functor(c)."""
    covers = [projective_cover(mod) for mod in functor.modules]
    family = ObFamily(functor.base, functor.algebra, tuple(cover for cover, _ in covers))
    induced = induce(family)
    maps = [pi for _, pi in covers]
    return family, induced, maps, transpose(induced, functor, maps, name=f"aug {functor.name}")


def resolve_functor(functor, bound):
    """F_0, ..., F_bound with d_0, ..., d_(bound-1)."""
    if bound < 1:
        raise ValueError(f"resolution length must be at least 1, got {bound}")
    if functor.algebra.integral:
        raise ValueError("functor resolutions are built over F_p[x]/(x^m) only")
    check_size(functor.base, 'resolve_functor')

    terms, families, covers, differentials, kernels = [], [], [], [], [functor]
    current = functor
    inclusion = None
    augmentation = None
    for q in range(bound + 1):
        family, induced, maps, onto = _cover(current)
        terms.append(induced)
        families.append(family)
        covers.append(tuple(maps))
        if q == 0:
            augmentation = onto
        else:
            differentials.append(onto.then(inclusion))
        current, inclusion = onto.kernel_functor(name=f"K_{q + 1}")
        kernels.append(current)
        logger.debug("F_%d on %s: dims %s", q, functor.base.name, induced.dims())
    return FunctorResolution(functor, tuple(terms), tuple(families), tuple(covers),
                             augmentation, tuple(differentials), tuple(kernels))
