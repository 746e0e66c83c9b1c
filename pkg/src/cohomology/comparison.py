"""
Comparison between K*(C, M), M = Hom(free on C(c, dom a), G(cod a)), and the
limit complex of G.Q_c over the comma category c/C.

A cochain f on C goes to f~(c -> c_0 -> ... -> c_n) = f(c_0 -> ... -> c_n)(c -> c_0).
Both sides have one G(c_n) block per pair (chain, w: c -> c_0), so f -> f~
is a permutation of blocks.
"""

import logging
from dataclasses import dataclass
from typing import Any, List

from src.cohomology.baues_wirsching import bw_complex
from src.cohomology.limits import limit_complex
from src.diagrams.natural_system import corepresentable_hom_system
from src.fincat.constructions import comma_under
from src.fincat.nerve import NerveChain

logger = logging.getLogger(__name__)


def _offsets(chains, fiber_dim):
    table, total = {}, 0
    for chain in chains:
        table[chain] = total
        total += fiber_dim(chain)
    return table


@dataclass(frozen=True, eq=False)
class ComparisonResult:
    transforms: List[Any]
    residuals: List[Any]
    bw: Any
    comma_complex: Any
    ring: Any

    @property
    def commutes(self):
        return all(self.ring.is_zero(r) for r in self.residuals)

    @property
    def invertible(self):
        return all(t.shape[0] == t.shape[1] and self.ring.rank(t) == t.shape[0] for t in self.transforms)


def comma_comparison(category, c, functor, bound):
    """The matrices T^n: K^n(C, M) -> C^n(c/C, G.Q_c) and the residuals T d - d T."""
    comma, projection = comma_under(category, c)
    system = corepresentable_hom_system(category, c, functor)
    pulled = functor.precompose(projection, f"{functor.name}.Q")
    bw = bw_complex(category, system, bound)
    lim = limit_complex(comma, pulled, bound)
    ring = bw.ring

    def comma_fiber(chain):
        return pulled.modules[chain.end(comma)].dim

    def bw_fiber(chain):
        return system.dim(chain.composite(category))

    transforms = []
    for n in range(bound + 2):
        bw_offsets = _offsets(bw.labels[n], bw_fiber)
        lim_offsets = _offsets(lim.labels[n], comma_fiber)
        t = ring.zeros(lim.dims[n], bw.dims[n])
        for tau in lim.labels[n]:
            a, w = comma.object_labels[tau.start]
            sigma = NerveChain(a, tuple(comma.morphism_labels[g][2] for g in tau.arrows))
            size = comma_fiber(tau)
            block = category.hom(c, a).index(w)
            col = bw_offsets[sigma] + block * size
            row = lim_offsets[tau]
            t[row:row + size, col:col + size] = ring.identity(size)
        transforms.append(t)

    residuals = [
        ring.reduce(ring.matmul(transforms[n + 1], bw.d(n)) - ring.matmul(lim.d(n), transforms[n]))
        for n in range(bound + 1)
    ]
    result = ComparisonResult(transforms, residuals, bw, lim, ring)
    logger.debug("comma comparison at %s: commutes=%s invertible=%s",
                 category.objects[c], result.commutes, result.invertible)
    return result
