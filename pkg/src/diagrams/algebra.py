"""
Coefficient algebras R = F_p[x]/(x^m) (or the integers) and finite R-modules.

An R-module is a k-vector space of some dimension together with the matrix
X of multiplication by x. Over the integers a module is a free abelian group
of the given rank and X is zero.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import isprime

from src.errors import InputError
from src.exactalg.field import PrimeField
from src.exactalg.integer import ZZ


@dataclass(frozen=True)
class CoeffAlgebra:
    p: int = 2
    m: int = 1
    integral: bool = False

    def __post_init__(self):
        if self.integral:
            object.__setattr__(self, 'p', None)
            object.__setattr__(self, 'm', 1)
            return
        if self.p is None or not isprime(int(self.p)):
            raise ValueError(f"coefficient prime {self.p!r} is not prime")
        if int(self.m) < 1:
            raise ValueError(f"nilpotency {self.m} must be at least 1")
        object.__setattr__(self, 'p', int(self.p))
        object.__setattr__(self, 'm', int(self.m))

    @classmethod
    def integers(cls):
        return cls(integral=True)

    @classmethod
    def parse(cls, text):
        """'p,m', 'p' or 'Z'."""
        text = str(text).strip()
        if text.upper() == 'Z':
            return cls.integers()
        parts = [t.strip() for t in text.split(',')]
        try:
            values = [int(t) for t in parts]
        except ValueError:
            raise InputError(f"coefficients must be 'p,m' or 'Z', got {text!r}") from None
        if len(values) not in (1, 2):
            raise InputError(f"coefficients must be 'p,m' or 'Z', got {text!r}")
        try:
            return cls(values[0], values[1] if len(values) == 2 else 1)
        except ValueError as exc:
            raise InputError(str(exc)) from None

    @cached_property
    def ring(self):
        return ZZ if self.integral else PrimeField(self.p)

    @property
    def is_field(self):
        return not self.integral and self.m == 1

    def ground(self):
        """The algebra of the underlying k-spaces: F_p itself, or the integers."""
        return self if self.integral else CoeffAlgebra(self.p, 1)

    def to_dict(self):
        return 'Z' if self.integral else {'p': self.p, 'm': self.m}

    def __str__(self):
        if self.integral:
            return 'Z'
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.p}[x]/(x^{self.m})"


@dataclass(frozen=True, eq=False)
class RModule:
    algebra: CoeffAlgebra
    dim: int
    x: np.ndarray

    def __post_init__(self):
        ring = self.algebra.ring
        x = ring.reduce(np.asarray(self.x).reshape(self.dim, self.dim)) if self.dim else ring.zeros(0, 0)
        object.__setattr__(self, 'x', x)
        if self.algebra.integral and not ring.is_zero(x):
            raise ValueError("modules over the integers carry no x-action")
        power = ring.identity(self.dim)
        for _ in range(self.algebra.m):
            power = ring.matmul(power, x)
        if not ring.is_zero(power):
            raise ValueError(f"x^{self.algebra.m} does not act as zero")

    @classmethod
    def free(cls, algebra, rank):
        """R^rank with basis e_{i,k} = x^k e_i at index i*m + k."""
        m = algebra.m
        x = algebra.ring.zeros(rank * m, rank * m)
        for i in range(rank):
            for k in range(m - 1):
                x[i * m + k + 1, i * m + k] = 1
        return cls(algebra, rank * m, x)

    @classmethod
    def trivial(cls, algebra, dim):
        """k^dim with x acting as zero."""
        return cls(algebra, dim, algebra.ring.zeros(dim, dim))

    @classmethod
    def truncated(cls, algebra, length):
        """R/(x^length), a cyclic module of dimension length <= m."""
        if not 0 <= length <= algebra.m:
            raise ValueError(f"length {length} outside 0..{algebra.m}")
        x = algebra.ring.zeros(length, length)
        for k in range(length - 1):
            x[k + 1, k] = 1
        return cls(algebra, length, x)

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, 0, algebra.ring.zeros(0, 0))

    def direct_sum(self, *others):
        modules = (self,) + others
        return direct_sum(self.algebra, modules)

    def extend_from_generators(self, values):
        """The R-linear map R^s -> self sending e_j to column j of values.

        Column j*m + k of the result is X^k v_j.
        """
        ring = self.algebra.ring
        m = self.algebra.m
        values = ring.reduce(values)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        s = values.shape[1]
        out = ring.zeros(self.dim, s * m)
        for j in range(s):
            v = values[:, j]
            for k in range(m):
                out[:, j * m + k] = v
                v = ring.matmul(self.x, v.reshape(-1, 1))[:, 0]
        return out

    def is_equivariant(self, target, matrix):
        """Whether matrix: self -> target commutes with x."""
        ring = self.algebra.ring
        matrix = ring.reduce(matrix).reshape(target.dim, self.dim)
        return ring.equal(ring.matmul(target.x, matrix), ring.matmul(matrix, self.x))

    def key(self):
        return (self.algebra, self.dim, tuple(int(v) for v in np.asarray(self.x).reshape(-1)))

    def to_dict(self):
        return {'dim': self.dim, 'x': [[int(v) for v in row] for row in self.x]}

    def __repr__(self):
        return f"RModule({self.algebra}, dim={self.dim})"


def direct_sum(algebra, modules):
    dim = sum(mod.dim for mod in modules)
    x = algebra.ring.zeros(dim, dim)
    offset = 0
    for mod in modules:
        x[offset:offset + mod.dim, offset:offset + mod.dim] = mod.x
        offset += mod.dim
    return RModule(algebra, dim, x)


def block_diagonal(ring, blocks, rows=None, cols=None):
    """Block-diagonal matrix of the given blocks."""
    rows = sum(b.shape[0] for b in blocks) if rows is None else rows
    cols = sum(b.shape[1] for b in blocks) if cols is None else cols
    out = ring.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
