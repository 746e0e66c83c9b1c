"""Finitely generated abelian groups and field subquotients Z/B."""

from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np
from sympy import factorint


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, every d_i >= 2."""

    rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        object.__setattr__(self, 'torsion', tuple(int(d) for d in self.torsion))
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i + 1 < len(self.torsion) and self.torsion[i + 1] % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @staticmethod
    def from_invariants(rank, factors):
        """Canonical form from arbitrary nonzero cyclic orders (1s are dropped)."""
        powers = {}
        for d in factors:
            d = abs(int(d))
            if d == 0:
                raise ValueError("use rank for free summands, not 0")
            for prime, exponent in factorint(d).items():
                powers.setdefault(prime, []).append(prime ** exponent)
        length = max((len(v) for v in powers.values()), default=0)
        invariants = [1] * length
        for prime_powers in powers.values():
            prime_powers.sort(reverse=True)
            for i, q in enumerate(prime_powers):
                invariants[length - 1 - i] *= q
        return FGAbelianGroup(rank, tuple(d for d in invariants if d > 1))

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def to_dict(self):
        return {'rank': self.rank, 'torsion': list(self.torsion)}

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append('Z')
        elif self.rank > 1:
            parts.append(f'Z^{self.rank}')
        parts.extend(f'Z/{d}' for d in self.torsion)
        return ' + '.join(parts) if parts else '0'


@dataclass(frozen=True, eq=False)
class Subquotient:
    """Z/B inside F_p^ambient; representatives span a complement of B in Z."""

    field: Any
    ambient: int
    cycles: np.ndarray
    boundaries: np.ndarray
    representatives: np.ndarray

    @property
    def dim(self):
        return self.representatives.shape[1]

    def coordinates(self, v):
        """Coordinates of the class of the cycle v in the representative basis."""
        spanning = np.hstack([self.boundaries, self.representatives])
        solution = self.field.solve(spanning, v)
        if solution is None:
            raise ValueError("vector is not a cycle of this subquotient")
        return solution[self.boundaries.shape[1]:]

    def to_dict(self):
        return {'dim': self.dim}

    def __str__(self):
        return f"F_{self.field.p}^{self.dim}" if self.dim else '0'
