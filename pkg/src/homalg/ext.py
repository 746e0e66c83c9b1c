"""
Ext over R = F_p[x]/(x^m) as the cohomology of Hom_R(P_*(A), B), and the maps
induced on Ext by module maps.

An R-linear map R^s -> B is determined by the images of the s generators,
so Hom_R(P_q, B) is identified with B^(s_q), generator by generator.
"""

import logging
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from src.cohomology.complexes import CochainComplex
from src.homalg.resolution import spliced_resolution

logger = logging.getLogger(__name__)


def _x_powers(module):
    ring = module.algebra.ring
    powers = [ring.identity(module.dim)]
    for _ in range(module.algebra.m - 1):
        powers.append(ring.matmul(module.x, powers[-1]))
    return powers


def pullback_matrix(free_source, free_target, matrix, module, post=None):
    """phi -> post . phi . matrix on generator coordinates.

    matrix: free_source -> free_target is R-linear; phi: free_target -> module
    is given by the images of its generators, the result likewise on
    free_source. post defaults to the identity of module.
    """
    algebra = module.algebra
    ring = algebra.ring
    m = algebra.m
    s_src = free_source.dim // m
    s_tgt = free_target.dim // m
    powers = _x_powers(module)
    b = module.dim
    out_dim = b if post is None else post.shape[0]
    out = ring.zeros(s_src * out_dim, s_tgt * b)
    matrix = np.asarray(matrix)
    for j in range(s_src):
        column = matrix[:, j * m]
        for i in range(s_tgt):
            block = ring.zeros(b, b)
            for k in range(m):
                c = int(column[i * m + k])
                if c:
                    block = ring.reduce(block + c * powers[k])
            if post is not None:
                block = ring.matmul(post, block)
            out[j * out_dim:(j + 1) * out_dim, i * b:(i + 1) * b] = block
    return out


@dataclass(frozen=True, eq=False)
class ExtComputation:
    """Hom_R(P_*(A), B) and its cohomology Ext^0..Ext^Q with cocycle representatives."""

    source: Any
    target: Any
    resolution: Any
    complex: Any
    groups: Tuple[Any, ...]

    @property
    def bound(self):
        return len(self.groups) - 1

    def dims(self):
        return [g.dim for g in self.groups]

    def dim(self, q):
        return self.groups[q].dim

    def representatives(self, q):
        return self.groups[q].representatives


def hom_complex(resolution, target, bound):
    """Hom_R(P_q, B) for q = 0..bound+1 with the pullback differentials."""
    algebra = target.algebra
    ring = algebra.ring
    dims = [resolution.rank(q) * target.dim for q in range(bound + 2)]
    differentials = [
        pullback_matrix(resolution.free[q + 1], resolution.free[q], resolution.d(q + 1), target)
        for q in range(bound + 1)
    ]
    return CochainComplex(ring, dims, differentials, name=f"Hom(P_*({resolution.module.dim}), B)")


def ext_objects(source, target, bound):
    """Ext^q_R(A, B) for q <= bound."""
    if source.algebra != target.algebra:
        raise ValueError("modules over different algebras")
    resolution = spliced_resolution(source, bound + 1)
    complex_ = hom_complex(resolution, target, bound)
    groups = tuple(complex_.cohomology(q) for q in range(bound + 1))
    logger.debug("Ext(%r, %r): dims %s", source, target, [g.dim for g in groups])
    return ExtComputation(source, target, resolution, complex_, groups)


def lift_chain_map(source_res, target_res, f, length):
    """Chain maps L_q: P_q(A') -> P_q(A) over f: A' -> A, for q <= length.

    Each generator is sent to the first solution of the lifting equation.
    """
    ring = source_res.module.algebra.ring
    lifts = []
    for q in range(length + 1):
        src_free = source_res.free[q]
        tgt_free = target_res.free[q]
        m = src_free.algebra.m
        s = src_free.dim // m
        if q == 0:
            rhs = ring.matmul(f, source_res.d(0))
        else:
            rhs = ring.matmul(lifts[q - 1], source_res.d(q))
        generators = rhs[:, [j * m for j in range(s)]] if s else rhs[:, :0]
        if generators.shape[1]:
            values = ring.solve(target_res.d(q), generators)
            if values is None:
                raise ValueError(f"chain map does not lift in degree {q}")
        else:
            values = ring.zeros(tgt_free.dim, 0)
        lifts.append(tgt_free.extend_from_generators(values))
    return lifts


def induced_ext_map(source_ext, target_ext, f, g, q):
    """Ext^q(A, B) -> Ext^q(A', B') induced by f: A' -> A and g: B -> B'.

    source_ext is Ext(A, B), target_ext is Ext(A', B'). Cocycles phi map to
    g . phi . L_q, which is then expressed in the target's class basis.
    """
    ring = source_ext.source.algebra.ring
    lifts = lift_chain_map(target_ext.resolution, source_ext.resolution, f, q)
    on_cochains = pullback_matrix(
        target_ext.resolution.free[q], source_ext.resolution.free[q], lifts[q],
        source_ext.target, post=ring.reduce(g),
    )
    reps = source_ext.representatives(q)
    group = target_ext.groups[q]
    out = ring.zeros(group.dim, reps.shape[1])
    for j in range(reps.shape[1]):
        out[:, j] = group.coordinates(ring.matmul(on_cochains, reps[:, j:j + 1])[:, 0])
    return out
