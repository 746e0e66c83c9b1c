"""Builders shared by the test modules."""

from dataclasses import replace

import numpy as np

from src.cli.random_instances import RandomBounds
from src.config_manager import ConfigManager
from src.diagrams.algebra import RModule
from src.diagrams.functor import DiagramFunctor


MANAGER = ConfigManager(environ={})

# keeps every total complex in the low hundreds of dimensions
SMALL = RandomBounds(max_objects=2, max_arrows=1, max_dim=1, group_orders=(2,), primes=(2, 3, 5))
SMALL_FIELDS = replace(SMALL, nilpotency=(1,))
DUAL_NUMBERS = replace(SMALL, nilpotency=(2,))
F2_F5 = replace(SMALL, primes=(2, 5))
# up to 4 objects and 10 arrows; modules stay at most 3-dimensional
WIDE = RandomBounds(max_objects=4, max_arrows=10, max_dim=1, group_orders=(2, 3), face_rank=1)


def example(name):
    return MANAGER.example_path(name)


def arrow_functor(arrow, algebra, dim_a, dim_b, matrix, name='F'):
    """F on a -> b over an algebra acting trivially (x = 0)."""
    ring = algebra.ring
    modules = [RModule.trivial(algebra, dim_a), RModule.trivial(algebra, dim_b)]
    f = arrow.morphism_index('f')
    return DiagramFunctor.from_partial(arrow, algebra, modules,
                                       {f: ring.reduce(np.array(matrix, dtype=np.int64).reshape(dim_b, dim_a))},
                                       name)


def random_arrow_functor(rng, arrow, algebra, name='F', max_dim=2):
    dim_a, dim_b = rng.randint(0, max_dim), rng.randint(0, max_dim)
    matrix = [[rng.randrange(algebra.p) for _ in range(dim_a)] for _ in range(dim_b)]
    return arrow_functor(arrow, algebra, dim_a, dim_b, matrix, name)
