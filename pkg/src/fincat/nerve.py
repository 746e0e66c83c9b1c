"""Nerve chains c_0 -> c_1 -> ... -> c_n and their faces."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import config


@dataclass(frozen=True)
class NerveChain:
    """A composable string of arrows, listed in path order.

    Degree 0 chains are bare objects and carry no arrows.
    """

    start: int
    arrows: Tuple[int, ...] = ()

    @property
    def degree(self):
        return len(self.arrows)

    def end(self, category):
        return category.cod(self.arrows[-1]) if self.arrows else self.start

    def objects(self, category):
        return (self.start,) + tuple(category.cod(a) for a in self.arrows)

    def composite(self, category):
        """a_n . ... . a_1, or the identity of the start for degree 0."""
        if not self.arrows:
            return category.identity(self.start)
        return category.compose_chain(self.arrows)

    def is_degenerate(self, category):
        return any(category.is_identity(a) for a in self.arrows)

    def label(self, category):
        if not self.arrows:
            return category.objects[self.start]
        return ','.join(category.morphisms[a].name for a in self.arrows)


def face(category, chain, i):
    """The i-th face: drop c_i, composing the two arrows around it when 0 < i < n."""
    n = chain.degree
    if not 0 <= i <= n or n == 0:
        raise ValueError(f"face {i} of a degree {n} chain")
    arrows = chain.arrows
    if i == 0:
        return NerveChain(category.cod(arrows[0]), arrows[1:])
    if i == n:
        return NerveChain(chain.start, arrows[:-1])
    merged = category.compose(arrows[i], arrows[i - 1])
    return NerveChain(chain.start, arrows[:i - 1] + (merged,) + arrows[i + 1:])


@lru_cache(maxsize=config.NERVE_CACHE_SIZE)
def nerve(category, n, normalized=False):
    """All degree-n chains in lexicographic order of morphism indices.

    With normalized=True chains containing an identity are skipped.
    """
    if n < 0:
        raise ValueError(f"negative nerve degree {n}")
    if n == 0:
        return tuple(NerveChain(c) for c in range(category.n_objects))
    chains = []
    for a in range(category.n_morphisms):
        if normalized and category.is_identity(a):
            continue
        _extend(category, (a,), n, normalized, chains)
    return tuple(chains)


def _extend(category, arrows, n, normalized, out):
    if len(arrows) == n:
        out.append(NerveChain(category.dom(arrows[0]), arrows))
        return
    for b in category.out_of(category.cod(arrows[-1])):
        if normalized and category.is_identity(b):
            continue
        _extend(category, arrows + (b,), n, normalized, out)


def chain_index(category, n, normalized=False):
    """Chain -> position in nerve(category, n)."""
    return _chain_index(category, n, normalized)


@lru_cache(maxsize=config.NERVE_CACHE_SIZE)
def _chain_index(category, n, normalized):
    return {chain: i for i, chain in enumerate(nerve(category, n, normalized))}
