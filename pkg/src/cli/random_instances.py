"""
Seeded random instances: a finite category with two functors on it.

Categories come from classes that are associative by construction (posets,
posets with an adjoined bottom, cyclic groups, face monoids). On posets a
functor is a family of nested subspaces of one ambient module, read either
as quotients (surjective maps) or as submodules (injective maps). On
one-object categories it is a translation action on blocks indexed by a left
ideal. Functoriality therefore holds without rejection sampling.
"""

import logging
import random
from dataclasses import dataclass
from typing import Tuple

import numpy as np

import config
from src.diagrams.algebra import CoeffAlgebra, RModule, direct_sum
from src.diagrams.functor import DiagramFunctor
from src.fincat.category import require_valid
from src.fincat.constructions import cyclic_group_category, face_monoid_category, poset_category

logger = logging.getLogger(__name__)

KINDS = ('poset', 'bottom', 'group', 'monoid')


@dataclass(frozen=True)
class RandomBounds:
    max_objects: int = config.RANDOM_MAX_OBJECTS
    max_arrows: int = config.RANDOM_MAX_ARROWS
    max_dim: int = config.RANDOM_MAX_DIM
    edge_probability: float = config.RANDOM_EDGE_PROBABILITY
    group_orders: Tuple[int, ...] = config.RANDOM_GROUP_ORDERS
    primes: Tuple[int, ...] = config.RANDOM_PRIMES
    nilpotency: Tuple[int, ...] = config.RANDOM_NILPOTENCY
    face_rank: int = config.RANDOM_FACE_RANK


def random_poset(rng, bounds, bottom=False):
    """A poset on up to max_objects elements; with bottom, the least element counts too."""
    n = rng.randint(1, max(1, bounds.max_objects - (1 if bottom else 0)))
    elements = [chr(ord('a') + i) for i in range(n)]
    pairs = [(elements[i], elements[j]) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    relations = [pair for pair in pairs if rng.random() < bounds.edge_probability]
    relations = relations[:bounds.max_arrows]
    if bottom:
        relations += [('0', e) for e in elements]
        elements = ['0'] + elements
    return poset_category(elements, relations, name=f"poset{n}{'+0' if bottom else ''}")


def random_face_monoid(rng, bounds):
    """Generated by one sign vector, or by two when max_arrows leaves room for five elements."""
    rank = rng.randint(1, bounds.face_rank)
    signs = [''.join(rng.choice('0+-') for _ in range(rank)) for _ in range(2)]
    signs = [s if s.strip('0') else '+' * rank for s in signs]
    count = 2 if bounds.max_arrows >= 4 and rng.random() < 0.5 else 1
    return face_monoid_category(signs[:count])


def random_algebra(rng, bounds):
    return CoeffAlgebra(rng.choice(bounds.primes), rng.choice(bounds.nilpotency))


def _ambient(rng, algebra, bounds):
    lengths = [rng.randint(1, algebra.m) for _ in range(rng.randint(1, bounds.max_dim))]
    return direct_sum(algebra, [RModule.truncated(algebra, k) for k in lengths])


def _closure(ring, module, vectors):
    """The smallest x-stable subspace containing the columns of vectors."""
    span = ring.image(vectors)
    while span.shape[1]:
        grown = ring.image(np.hstack([span, ring.matmul(module.x, span)]))
        if grown.shape[1] == span.shape[1]:
            break
        span = grown
    return span


def _nested_spans(rng, category, algebra, ambient):
    """x-stable subspaces W_c of the ambient module with W_a inside W_b whenever a -> b."""
    ring = algebra.ring
    n = category.n_objects
    below = [[a for a in range(n) if a != c and category.hom(a, c)] for c in range(n)]
    spans = {}
    for c in sorted(range(n), key=lambda c: len(below[c])):
        pieces = [spans[a] for a in below[c]]
        if rng.random() < 0.5:
            pieces.append(ring.reduce(np.array([[rng.randrange(algebra.p)] for _ in range(ambient.dim)])))
        stacked = np.hstack(pieces) if pieces else ring.zeros(ambient.dim, 0)
        spans[c] = _closure(ring, ambient, stacked)
    return [spans[c] for c in range(n)]


def quotient_functor(rng, category, algebra, ambient, name='F'):
    """c -> V / W_c; maps are induced by the identity of V, hence surjective."""
    ring = algebra.ring
    sections, projections, modules = [], [], []
    for span in _nested_spans(rng, category, algebra, ambient):
        base, chosen = ring.complement_columns(span, ring.identity(ambient.dim))
        section = ring.identity(ambient.dim)[:, list(chosen)]
        basis = np.hstack([base, section])
        coords = ring.inverse(basis)
        projection = coords[base.shape[1]:, :]
        sections.append(section)
        projections.append(projection)
        x = ring.matmul(ring.matmul(projection, ambient.x), section)
        modules.append(RModule(algebra, len(chosen), x))
    maps = [ring.matmul(projections[m.cod], sections[m.dom]) for m in category.morphisms]
    functor = DiagramFunctor(category, algebra, modules, maps, name)
    functor.require_valid()
    return functor


def submodule_functor(rng, category, algebra, ambient, name='F'):
    """c -> W_c inside V; maps are the inclusions, hence injective."""
    ring = algebra.ring
    bases = _nested_spans(rng, category, algebra, ambient)
    modules = []
    for basis in bases:
        x = ring.solve(basis, ring.matmul(ambient.x, basis)) if basis.shape[1] else ring.zeros(0, 0)
        modules.append(RModule(algebra, basis.shape[1], x))
    maps = []
    for m in category.morphisms:
        source, target = bases[m.dom], bases[m.cod]
        if source.shape[1] == 0 or target.shape[1] == 0:
            maps.append(ring.zeros(target.shape[1], source.shape[1]))
        else:
            maps.append(ring.solve(target, source))
    functor = DiagramFunctor(category, algebra, modules, maps, name)
    functor.require_valid()
    return functor


def translation_functor(rng, category, algebra, bounds, name='F'):
    """A one-object category acting on M^S, M cyclic, S a left ideal: block s goes to block u.s."""
    ring = algebra.ring
    seeds = rng.sample(range(category.n_morphisms), rng.randint(1, min(2, category.n_morphisms)))
    ideal = set(seeds)
    frontier = list(seeds)
    while frontier:
        s = frontier.pop()
        for u in range(category.n_morphisms):
            t = category.compose(u, s)
            if t not in ideal:
                ideal.add(t)
                frontier.append(t)
    ideal = sorted(ideal)
    position = {s: k for k, s in enumerate(ideal)}
    block = RModule.truncated(algebra, rng.randint(1, min(algebra.m, bounds.max_dim)))
    module = direct_sum(algebra, [block] * len(ideal))
    size = block.dim
    maps = []
    for u in range(category.n_morphisms):
        action = ring.zeros(module.dim, module.dim)
        for s in ideal:
            t = position[category.compose(u, s)]
            k = position[s]
            action[t * size:(t + 1) * size, k * size:(k + 1) * size] = ring.identity(size)
        maps.append(action)
    functor = DiagramFunctor(category, algebra, [module], maps, name)
    functor.require_valid()
    return functor


def divisor_functor(rng, category, name='F'):
    """Z at every object of a poset, a <= b acting by phi(b) / phi(a) with phi(a) | phi(b)."""
    algebra = CoeffAlgebra.integers()
    n = category.n_objects
    below = [[a for a in range(n) if a != c and category.hom(a, c)] for c in range(n)]
    potential = {}
    for c in sorted(range(n), key=lambda c: len(below[c])):
        value = rng.choice((1, 2, 3))
        for a in below[c]:
            value = int(np.lcm(value, potential[a]))
        potential[c] = value * rng.choice((1, 1, 2))
    ring = algebra.ring
    module = RModule.trivial(algebra, 1)
    maps = [ring.reduce(np.array([[potential[m.cod] // potential[m.dom]]], dtype=object))
            for m in category.morphisms]
    functor = DiagramFunctor(category, algebra, [module] * n, maps, name)
    functor.require_valid()
    return functor


def random_category(rng, bounds, kind):
    if kind == 'group':
        category = cyclic_group_category(rng.choice(bounds.group_orders))
    elif kind == 'monoid':
        category = random_face_monoid(rng, bounds)
    else:
        category = random_poset(rng, bounds, bottom=kind == 'bottom')
    require_valid(category)
    return category


def random_functor(rng, category, algebra, bounds, kind, name='F'):
    if kind in ('group', 'monoid'):
        return translation_functor(rng, category, algebra, bounds, name)
    build = quotient_functor if rng.random() < 0.5 else submodule_functor
    return build(rng, category, algebra, _ambient(rng, algebra, bounds), name)


def random_instance(seed, bounds=None, kind=None, integral=False):
    """(category, F, G), reproducible for a fixed seed."""
    bounds = bounds or RandomBounds()
    rng = random.Random(seed)
    if integral and kind in ('group', 'monoid'):
        raise ValueError("integer diagrams are drawn on posets only")
    kind = kind or rng.choice(KINDS[:2] if integral else KINDS)
    category = random_category(rng, bounds, kind)
    if integral:
        return category, divisor_functor(rng, category, 'F'), divisor_functor(rng, category, 'G')
    algebra = random_algebra(rng, bounds)
    pair = [random_functor(rng, category, algebra, bounds, kind, name) for name in ('F', 'G')]
    logger.debug("random instance %d: %s over %s, dims %s / %s", seed, category.name, algebra,
                 pair[0].dims(), pair[1].dims())
    return category, pair[0], pair[1]
