"""
The double complex K^{p,q} = K^p(C, Hom_R(F_q(dom -), G(cod -))) built from a
resolution F_* of F, and its total complex.

Horizontal maps are the natural-system coboundaries in p. Vertical maps
precompose with d_q: F_(q+1) -> F_q and carry the sign (-1)^p in the total
differential.
"""

import logging

from src.cohomology.baues_wirsching import bw_complex
from src.cohomology.complexes import CochainComplex
from src.diagrams.algebra import block_diagonal
from src.diagrams.functor import require_same_base
from src.diagrams.natural_system import hom_natural_system
from src.errors import CompositionNonzero

logger = logging.getLogger(__name__)


class DoubleComplex:
    """Cells (p, q) with 0 <= p <= P and 0 <= q <= Q; maps leaving the window are dropped."""

    def __init__(self, ring, dims, horizontal, vertical, name=None):
        self.ring = ring
        self.dims = dims
        self.horizontal = horizontal
        self.vertical = vertical
        self.P = len(dims) - 1
        self.Q = len(dims[0]) - 1
        self.name = name or 'K'

    def dim(self, p, q):
        return self.dims[p][q]

    def h(self, p, q):
        """K^{p,q} -> K^{p+1,q}."""
        return self.horizontal[q][p]

    def v(self, p, q):
        """K^{p,q} -> K^{p,q+1}, unsigned."""
        return self.vertical[p][q]

    def check(self):
        """Cells where rows, columns or squares fail."""
        ring = self.ring
        bad = []
        for p in range(self.P + 1):
            for q in range(self.Q + 1):
                if p + 2 <= self.P and not ring.is_zero(ring.matmul(self.h(p + 1, q), self.h(p, q))):
                    bad.append(('row', p, q))
                if q + 2 <= self.Q and not ring.is_zero(ring.matmul(self.v(p, q + 1), self.v(p, q))):
                    bad.append(('column', p, q))
                if p + 1 <= self.P and q + 1 <= self.Q:
                    across = ring.matmul(self.v(p + 1, q), self.h(p, q))
                    down = ring.matmul(self.h(p, q + 1), self.v(p, q))
                    if not ring.equal(across, down):
                        bad.append(('square', p, q))
        return bad

    def cells(self, n):
        """(p, q) cells of total degree n, ordered by p."""
        return [(p, n - p) for p in range(self.P + 1) if 0 <= n - p <= self.Q]

    def total(self):
        """Tot with d = d_h + (-1)^p d_v, plus the (p, q) of every coordinate."""
        ring = self.ring
        top = self.P + self.Q
        offsets, dims, positions = [], [], []
        for n in range(top + 1):
            table, total, where = {}, 0, []
            for cell in self.cells(n):
                table[cell] = total
                size = self.dim(*cell)
                where.extend([cell] * size)
                total += size
            offsets.append(table)
            dims.append(total)
            positions.append(tuple(where))
        differentials = []
        for n in range(top):
            d = ring.zeros(dims[n + 1], dims[n])
            for (p, q) in self.cells(n):
                col = offsets[n][(p, q)]
                width = self.dim(p, q)
                if p + 1 <= self.P:
                    row = offsets[n + 1][(p + 1, q)]
                    d[row:row + self.dim(p + 1, q), col:col + width] += self.h(p, q)
                if q + 1 <= self.Q:
                    row = offsets[n + 1][(p, q + 1)]
                    d[row:row + self.dim(p, q + 1), col:col + width] += (-1) ** p * self.v(p, q)
            differentials.append(ring.reduce(d))
        complex_ = CochainComplex(ring, dims, differentials, name=f"Tot({self.name})")
        if complex_.check():
            raise CompositionNonzero(differentials[0].shape, differentials[-1].shape)
        return complex_, positions


def build_double_complex(source, target, resolution, P, Q=None):
    """K^{p,q} for p <= P, q <= Q (default: the resolution length)."""
    require_same_base(source, target)
    if resolution.target is not source:
        raise ValueError("resolution does not resolve the first functor")
    if P < 1:
        raise ValueError(f"column bound must be at least 1, got {P}")
    Q = resolution.bound if Q is None else Q
    if Q > resolution.bound:
        raise ValueError(f"resolution has length {resolution.bound}, need {Q}")
    base = source.base
    ring = source.algebra.ground().ring

    systems = [hom_natural_system(resolution.terms[q], target, name=f"Hom(F_{q},{target.name})")
               for q in range(Q + 1)]
    rows = [bw_complex(base, systems[q], P - 1) for q in range(Q + 1)]
    dims = [[rows[q].dims[p] for q in range(Q + 1)] for p in range(P + 1)]
    horizontal = [list(rows[q].differentials[:P]) for q in range(Q + 1)]

    vertical = [[None] * Q for _ in range(P + 1)]
    for q in range(Q):
        d_q = resolution.d(q)
        upper, lower = systems[q], systems[q + 1]
        # phi -> phi . d_q at dom(alpha), one block per morphism alpha of C
        per_morphism = [
            lower.spaces[f].action(d_q.components[m.dom], ring.identity(target.modules[m.cod].dim),
                                   upper.spaces[f])
            for f, m in enumerate(base.morphisms)
        ]
        for p in range(P + 1):
            chains = rows[q].labels[p]
            blocks = [per_morphism[chain.composite(base)] for chain in chains]
            vertical[p][q] = block_diagonal(ring, blocks, dims[p][q + 1], dims[p][q])

    double = DoubleComplex(ring, dims, horizontal, vertical,
                           name=f"Hom({source.name}_*,{target.name})")
    logger.debug("double complex %s: dims %s", double.name, dims)
    return double
