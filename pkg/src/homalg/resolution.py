"""
Minimal projective covers, syzygies and spliced free resolutions over
R = F_p[x]/(x^m).

The resolution of A is assembled from the short exact sequences
0 -> Omega^(q+1) A -> P(Omega^q A) -> Omega^q A -> 0: the differential
P_q -> P_(q-1) is the cover of Omega^q A followed by the inclusion of
Omega^q A into P_(q-1).
"""

import logging
import threading
from dataclasses import dataclass
from typing import Any, Tuple

from src.diagrams.algebra import RModule

logger = logging.getLogger(__name__)


def projective_cover(module):
    """(P, pi): P = R^s with s = dim A/xA and pi: P -> A onto.

    The generators are standard basis vectors of A completing the image of
    x, so ker pi lies in xP.
    """
    if module.algebra.integral:
        raise ValueError("projective covers are only built over F_p[x]/(x^m)")
    ring = module.algebra.ring
    _, chosen = ring.complement_columns(module.x, ring.identity(module.dim))
    generators = ring.identity(module.dim)[:, list(chosen)]
    cover = RModule.free(module.algebra, len(chosen))
    pi = module.extend_from_generators(generators)
    return cover, pi


def syzygy(module, cover=None):
    """(Omega, omega): the kernel of the cover with its inclusion into P."""
    cover, pi = projective_cover(module) if cover is None else cover
    ring = module.algebra.ring
    basis, free = ring.kernel_basis(pi)
    x = ring.matmul(cover.x, basis)[list(free), :]
    return RModule(module.algebra, len(free), x), basis


@dataclass(frozen=True, eq=False)
class Resolution:
    """P_0 <- P_1 <- ... <- P_Q, with augmentation P_0 -> A.

    differentials[q] is d_q: P_q -> P_(q-1) for q >= 1 (index 0 holds the
    augmentation). covers[q] is pi: P_q -> Omega^q A, inclusions[q] is
    Omega^q A -> P_(q-1) for q >= 1.
    """

    module: Any
    free: Tuple[Any, ...]
    differentials: Tuple[Any, ...]
    syzygies: Tuple[Any, ...]
    covers: Tuple[Any, ...]
    inclusions: Tuple[Any, ...]

    @property
    def length(self):
        return len(self.free) - 1

    @property
    def augmentation(self):
        return self.differentials[0]

    def rank(self, q):
        """Number of free generators of P_q."""
        return self.free[q].dim // self.module.algebra.m

    def d(self, q):
        return self.differentials[q]

    def check_exact(self):
        """Degrees where the resolution fails d.d = 0 or exactness (by ranks)."""
        ring = self.module.algebra.ring
        bad = []
        aug = self.differentials[0]
        if ring.rank(aug) != self.module.dim:
            bad.append(-1)
        for q in range(self.length):
            upper = self.differentials[q + 1]
            lower = self.differentials[q]
            if not ring.is_zero(ring.matmul(lower, upper)):
                bad.append(q)
                continue
            if ring.rank(lower) + ring.rank(upper) != self.free[q].dim:
                bad.append(q)
        return bad

    def summary(self):
        return [self.rank(q) for q in range(self.length + 1)]


def _build(module, length):
    algebra = module.algebra
    ring = algebra.ring
    free, differentials, syzygies, covers, inclusions = [], [], [module], [], [None]
    current = module
    for q in range(length + 1):
        cover, pi = projective_cover(current)
        free.append(cover)
        covers.append(pi)
        if q == 0:
            differentials.append(pi)
        else:
            differentials.append(ring.matmul(inclusions[q], pi))
        omega, inclusion = syzygy(current, (cover, pi))
        syzygies.append(omega)
        inclusions.append(inclusion)
        current = omega
    logger.debug("resolution of %r: ranks %s", module, [f.dim // algebra.m for f in free])
    return Resolution(module, tuple(free), tuple(differentials), tuple(syzygies),
                      tuple(covers), tuple(inclusions))


_cache = {}
_cache_lock = threading.Lock()


def spliced_resolution(module, length):
    """The spliced resolution through P_length, cached per module presentation."""
    if length < 0:
        raise ValueError(f"negative resolution length {length}")
    key = module.key()
    with _cache_lock:
        cached = _cache.get(key)
        if cached is None or cached.length < length:
            cached = _build(module, length)
            _cache[key] = cached
    if cached.length == length and cached.module is module:
        return cached
    return Resolution(module, cached.free[:length + 1], cached.differentials[:length + 1],
                      cached.syzygies[:length + 2], cached.covers[:length + 1],
                      cached.inclusions[:length + 2])


def clear_cache():
    with _cache_lock:
        _cache.clear()
