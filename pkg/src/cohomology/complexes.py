"""Finite truncations of cochain complexes and their cohomology."""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from src.errors import CompositionNonzero
from src.exactalg.homology import group_dim, homology_at
from src.fincat.nerve import face, nerve

logger = logging.getLogger(__name__)


class CochainComplex:
    """C^0 -> C^1 -> ... -> C^(N+1) with differentials d^0, ..., d^N.

    Cohomology is available in degrees 0..N; C^(N+1) only serves as the
    target of d^N.
    """

    def __init__(self, ring, dims, differentials, labels=None, name=None):
        self.ring = ring
        self.dims = tuple(int(d) for d in dims)
        self.differentials = tuple(differentials)
        self.labels = labels
        self.name = name or 'complex'
        if len(self.dims) != len(self.differentials) + 1:
            raise ValueError(f"{len(self.dims)} degrees need {len(self.dims) - 1} differentials")
        for n, d in enumerate(self.differentials):
            if d.shape != (self.dims[n + 1], self.dims[n]):
                raise ValueError(
                    f"d^{n} has shape {d.shape}, expected {(self.dims[n + 1], self.dims[n])}"
                )
        logger.debug("complex %s: dims %s", self.name, self.dims)

    @property
    def bound(self):
        """Highest degree whose cohomology is computed."""
        return len(self.differentials) - 1

    def d(self, n):
        return self.differentials[n]

    def incoming(self, n):
        if n == 0:
            return self.ring.zeros(self.dims[0], 0)
        return self.differentials[n - 1]

    def check(self):
        """Degrees n with d^(n+1) d^n != 0."""
        bad = []
        for n in range(len(self.differentials) - 1):
            product = self.ring.matmul(self.differentials[n + 1], self.differentials[n])
            if not self.ring.is_zero(product):
                bad.append(n)
        return bad

    def verify(self):
        bad = self.check()
        if bad:
            n = bad[0]
            raise CompositionNonzero(self.differentials[n].shape, self.differentials[n + 1].shape)
        return self

    def cohomology(self, n):
        if not 0 <= n <= self.bound:
            raise ValueError(f"degree {n} outside the computed range 0..{self.bound}")
        return homology_at(self.incoming(n), self.differentials[n], self.ring)

    def cohomology_result(self):
        return CohomologyResult(
            tuple(self.cohomology(n) for n in range(self.bound + 1)),
            self.bound,
            self.ring.integral,
        )

    def export(self):
        """Dimensions and differentials as row-major integer lists."""
        return {
            'name': self.name,
            'ring': repr(self.ring),
            'dims': list(self.dims),
            'differentials': [[[int(v) for v in row] for row in np.asarray(d)] for d in self.differentials],
        }


@dataclass(frozen=True)
class CohomologyResult:
    """H^0..H^N; anything above N is not computed."""

    groups: Tuple[Any, ...]
    bound: int
    integral: bool = False

    def group(self, n):
        if n > self.bound:
            return None
        return self.groups[n]

    def dim(self, n) -> Optional[int]:
        group = self.group(n)
        return None if group is None else group_dim(group)

    def dims(self) -> List[int]:
        return [group_dim(g) for g in self.groups]

    def vanishes_above(self, start=1):
        return all(g.is_zero if self.integral else g.dim == 0 for g in self.groups[start:])

    def to_dict(self):
        degrees = []
        for n, g in enumerate(self.groups):
            if self.integral:
                degrees.append({'degree': n, 'group': g.to_dict(), 'text': str(g)})
            else:
                degrees.append({'degree': n, 'dim': g.dim})
        return {'bound': self.bound, 'degrees': degrees, 'not_computed_from': self.bound + 1}


def nerve_complex(category, bound, ring, fiber_dim, terms, normalized=False, name=None):
    """Cochains on the nerve: C^n = product over degree-n chains of a fiber.

    fiber_dim(chain) gives the fiber size; terms(chain) lists, for a chain of
    degree n+1, pairs (i, matrix) with matrix mapping the fiber over face i
    into the fiber over the chain, signs included. Faces missing from the
    (normalized) chain list contribute nothing.
    """
    chains = [nerve(category, n, normalized) for n in range(bound + 2)]
    offsets, dims = [], []
    for level in chains:
        table, total = {}, 0
        for chain in level:
            table[chain] = total
            total += fiber_dim(chain)
        offsets.append(table)
        dims.append(total)

    differentials = []
    for n in range(bound + 1):
        d = ring.zeros(dims[n + 1], dims[n])
        for tau in chains[n + 1]:
            row = offsets[n + 1][tau]
            height = fiber_dim(tau)
            for i, matrix in terms(tau):
                sigma = face(category, tau, i)
                col = offsets[n].get(sigma)
                if col is None:
                    continue
                width = fiber_dim(sigma)
                d[row:row + height, col:col + width] += np.asarray(matrix, dtype=d.dtype)
        differentials.append(ring.reduce(d))
    return CochainComplex(ring, dims, differentials, labels=chains, name=name)
