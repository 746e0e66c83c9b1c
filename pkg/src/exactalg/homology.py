"""Ring dispatch for homology, rank, kernel and image."""

import numpy as np

from src.errors import CompositionNonzero
from src.exactalg.field import PrimeField
from src.exactalg.integer import ZZ, IntegerRing


def ring_for(coefficient):
    """A ring object from a prime, 'Z', or an existing ring."""
    if isinstance(coefficient, (PrimeField, IntegerRing)):
        return coefficient
    if coefficient in ('Z', 'z', None):
        return ZZ
    return PrimeField(int(coefficient))


def rank(m, ring):
    return ring.rank(m)


def kernel(m, ring):
    return ring.kernel(m)


def image(m, ring):
    return ring.image(m)


def homology_at(d_in, d_out, ring):
    """ker(d_out) / im(d_in).

    Returns an FGAbelianGroup over the integers and a Subquotient over F_p.
    Raises CompositionNonzero unless d_out.d_in = 0.
    """
    d_in = ring.reduce(d_in)
    d_out = ring.reduce(d_out)
    if d_in.ndim != 2 or d_out.ndim != 2 or d_in.shape[0] != d_out.shape[1]:
        raise ValueError(f"incompatible shapes {d_in.shape} and {d_out.shape}")
    if not ring.is_zero(ring.matmul(d_out, d_in)):
        raise CompositionNonzero(d_in.shape, d_out.shape)
    return ring.homology(d_in, d_out)


def group_dim(group):
    """Field dimension of a Subquotient, or rank plus torsion count of an FGAbelianGroup."""
    if hasattr(group, 'dim'):
        return group.dim
    return group.rank + len(group.torsion)
