"""
Ext between functors computed as Ext over the category algebra R[C], by the
normalized bar resolution relative to the idempotents 1_c. Nothing here
touches functor resolutions or double complexes; it exists to cross-check
them.

Cochains in degree n are maps f(a_1, ..., a_n): M(dom a_n) -> N(cod a_1)
over composable strings of basis elements x^k u of R[C] other than the 1_c,
with
  (d f)(a_1..a_(n+1)) = a_1 f(a_2..) + sum_i (-1)^i f(.., a_i a_(i+1), ..)
                        + (-1)^(n+1) f(a_1..a_n) a_(n+1).
"""

import logging
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from src.cohomology.complexes import CochainComplex
from src.diagrams.functor import require_same_base
from src.fincat.category import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CategoryAlgebraModule:
    """The space sum_c F(c) with the actions of the morphisms and of x."""

    functor: Any
    dim: int
    offsets: Tuple[int, ...]
    morphism_actions: Tuple[Any, ...]
    x: Any

    def block(self, k, u):
        """x^k u as a map F(dom u) -> F(cod u)."""
        F = self.functor
        ring = F.ring
        matrix = F.maps[u]
        target = F.modules[F.base.cod(u)]
        for _ in range(k):
            matrix = ring.matmul(target.x, matrix)
        return matrix

    def check(self):
        report = ValidationReport(f"category algebra module {self.functor.name}")
        base, ring = self.functor.base, self.functor.ring
        for (g, f), h in base.table.items():
            product = ring.matmul(self.morphism_actions[g], self.morphism_actions[f])
            if not ring.equal(product, self.morphism_actions[h]):
                report.add(f"action of {base.morphisms[h].name} is not the product of its factors")
        for f, action in enumerate(self.morphism_actions):
            if not ring.equal(ring.matmul(self.x, action), ring.matmul(action, self.x)):
                report.add(f"x does not commute with {base.morphisms[f].name}")
        return report


def functor_to_algebra_module(functor):
    base, ring = functor.base, functor.ring
    offsets, total = [], 0
    for mod in functor.modules:
        offsets.append(total)
        total += mod.dim
    actions = []
    for f, m in enumerate(base.morphisms):
        action = ring.zeros(total, total)
        rows = slice(offsets[m.cod], offsets[m.cod] + functor.modules[m.cod].dim)
        cols = slice(offsets[m.dom], offsets[m.dom] + functor.modules[m.dom].dim)
        action[rows, cols] = functor.maps[f]
        actions.append(action)
    x = ring.zeros(total, total)
    for c, mod in enumerate(functor.modules):
        x[offsets[c]:offsets[c] + mod.dim, offsets[c]:offsets[c] + mod.dim] = mod.x
    return CategoryAlgebraModule(functor, total, tuple(offsets), tuple(actions), x)


def _basis(base, m):
    """Basis elements (k, u) of R[C] modulo the span of the identities."""
    return [(k, u) for u in range(base.n_morphisms) for k in range(m)
            if not (k == 0 and base.is_identity(u))]


def _product(base, m, a, b):
    """a.b in R[C] modulo the identities, as a basis element or None."""
    (k, u), (l, v) = a, b
    if base.dom(u) != base.cod(v) or k + l >= m:
        return None
    uv = base.compose(u, v)
    if k + l == 0 and base.is_identity(uv):
        return None
    return (k + l, uv)


def oracle_ext(source, target, bound):
    """dim Ext^n_{R[C]}(F, G) for n <= bound."""
    require_same_base(source, target)
    if source.algebra.integral:
        raise ValueError("the oracle works over F_p[x]/(x^m) only")
    base, ring = source.base, source.ring
    m = source.algebra.m
    M = functor_to_algebra_module(source)
    N = functor_to_algebra_module(target)
    basis = _basis(base, m)
    by_cod = {}
    for a in basis:
        by_cod.setdefault(base.cod(a[1]), []).append(a)

    def dom(a):
        return base.dom(a[1])

    def cod(a):
        return base.cod(a[1])

    # degree-0 cells are objects, higher cells composable strings a_1..a_n
    cells = [[('obj', c) for c in range(base.n_objects)]]
    for n in range(1, bound + 2):
        level = []
        if n == 1:
            level = [(a,) for a in basis]
        else:
            for cell in cells[n - 1]:
                for b in by_cod.get(dom(cell[-1]), ()):
                    level.append(cell + (b,))
        cells.append(level)

    def fiber(cell):
        if cell[0] == 'obj':
            c = cell[1]
            return source.modules[c].dim, target.modules[c].dim
        return source.modules[dom(cell[-1])].dim, target.modules[cod(cell[0])].dim

    offsets, dims = [], []
    for level in cells:
        table, total = {}, 0
        for cell in level:
            table[cell] = total
            a, b = fiber(cell)
            total += a * b
        offsets.append(table)
        dims.append(total)

    differentials = []
    for n in range(bound + 1):
        d = ring.zeros(dims[n + 1], dims[n])
        for cell in cells[n + 1]:
            row = offsets[n + 1][cell]
            src_dim, tgt_dim = fiber(cell)
            height = src_dim * tgt_dim

            def add(source_cell, matrix):
                col = offsets[n][source_cell]
                d[row:row + height, col:col + matrix.shape[1]] += matrix

            first, last = cell[0], cell[-1]
            head = cell[1:] if n else ('obj', dom(first))
            inner_src, inner_tgt = fiber(head)
            add(head, np.kron(N.block(*first), ring.identity(inner_src)))
            for i in range(1, n + 1):
                merged = _product(base, m, cell[i - 1], cell[i])
                if merged is not None:
                    add(cell[:i - 1] + (merged,) + cell[i + 1:], (-1) ** i * ring.identity(height))
            tail = cell[:-1] if n else ('obj', cod(last))
            inner_src, inner_tgt = fiber(tail)
            add(tail, (-1) ** (n + 1) * np.kron(ring.identity(inner_tgt), M.block(*last).T))
        differentials.append(ring.reduce(d))

    complex_ = CochainComplex(ring, dims, differentials, name=f"bar({source.name},{target.name})")
    complex_.verify()
    result = [complex_.cohomology(n).dim for n in range(bound + 1)]
    logger.debug("oracle Ext(%s, %s) on %s: %s", source.name, target.name, base.name, result)
    return result
