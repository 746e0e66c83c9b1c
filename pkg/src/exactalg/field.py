"""Dense linear algebra over a prime field F_p on numpy arrays.

Small primes use int64 entries; from WIDE_PRIME on, entries are Python ints
in object arrays so that no product can wrap.
"""

import numpy as np
from sympy import isprime

from src.exactalg.groups import Subquotient

# (p - 1)^2 < 2^62 below this bound, so one product plus one entry fits in int64
WIDE_PRIME = 2 ** 31
INT64_LIMIT = 2 ** 63 - 1


class PrimeField:
    """The field F_p. Matrices act on column vectors; entries live in [0, p)."""

    __slots__ = ('p', 'dtype')

    integral = False

    def __init__(self, p):
        p = int(p)
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.dtype = object if p >= WIDE_PRIME else np.int64

    # -- construction -------------------------------------------------

    def reduce(self, m):
        return np.asarray(m, dtype=self.dtype) % self.p

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=self.dtype)

    def identity(self, n):
        return np.eye(n, dtype=np.int64).astype(self.dtype)

    def matmul(self, a, b):
        a = self.reduce(a)
        b = self.reduce(b)
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.dtype is object or a.shape[1] * (self.p - 1) ** 2 <= INT64_LIMIT:
            return (a @ b) % self.p
        wide = (a.astype(object) @ b.astype(object)) % self.p
        return wide.astype(np.int64)

    def is_zero(self, m):
        return not np.any(self.reduce(m))

    def equal(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        return a.shape == b.shape and self.is_zero(a - b)

    # -- elimination --------------------------------------------------

    def rref(self, m):
        """Reduced row echelon form. Returns (R, pivot_columns)."""
        a = self.reduce(m).copy()
        rows, cols = a.shape
        p = self.p
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            inv = pow(int(a[r, c]), -1, p)
            a[r] = (a[r] * inv) % p
            column = a[:, c].copy()
            column[r] = 0
            others = np.nonzero(column)[0]
            if others.size:
                a[others] = (a[others] - np.outer(column[others], a[r])) % p
            pivots.append(c)
            r += 1
        return a, tuple(pivots)

    def rank(self, m):
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m):
        """Kernel basis as columns, plus the free columns.

        Each basis vector has a 1 in its own free column and 0 in the other
        free columns, so the coordinates of a kernel element are its entries
        at the free columns.
        """
        m = np.asarray(m)
        rows, cols = m.shape
        if rows == 0:
            return self.identity(cols), tuple(range(cols))
        rref, pivots = self.rref(m)
        free = tuple(j for j in range(cols) if j not in set(pivots))
        basis = self.zeros(cols, len(free))
        if free:
            basis[list(free), range(len(free))] = 1
            if pivots:
                basis[list(pivots), :] = (-rref[:len(pivots)][:, list(free)]) % self.p
        return basis, free

    def kernel(self, m):
        return self.kernel_basis(m)[0]

    def image(self, m):
        """Basis of the column space: the pivot columns of m."""
        m = self.reduce(m)
        if m.size == 0:
            return self.zeros(m.shape[0], 0)
        _, pivots = self.rref(m)
        return m[:, list(pivots)]

    def solve(self, a, b):
        """First solution x of a x = b (free variables set to 0), or None."""
        a = self.reduce(a)
        b = self.reduce(b)
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        rows, cols = a.shape
        if rows == 0:
            x = self.zeros(cols, b.shape[1])
            return x[:, 0] if vector else x
        rref, pivots = self.rref(np.hstack([a, b]))
        if any(c >= cols for c in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, c in enumerate(pivots):
            x[c] = rref[i, cols:]
        return x[:, 0] if vector else x

    def inverse(self, a):
        a = self.reduce(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError(f"cannot invert a {a.shape} matrix")
        rref, pivots = self.rref(np.hstack([a, self.identity(n)]))
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix is singular")
        return rref[:, n:]

    def complement_columns(self, span, candidates):
        """Indices of candidate columns that extend a basis of span(span)."""
        span = self.reduce(span)
        candidates = self.reduce(candidates)
        base = self.image(span) if span.size else self.zeros(candidates.shape[0], 0)
        if candidates.shape[1] == 0:
            return base, ()
        _, pivots = self.rref(np.hstack([base, candidates]))
        offset = base.shape[1]
        return base, tuple(c - offset for c in pivots if c >= offset)

    # -- homology -----------------------------------------------------

    def homology(self, d_in, d_out):
        """ker(d_out) / im(d_in) with a chosen section of representatives."""
        cycles = self.kernel(d_out)
        boundaries, chosen = self.complement_columns(d_in, cycles)
        return Subquotient(
            field=self,
            ambient=cycles.shape[0],
            cycles=cycles,
            boundaries=boundaries,
            representatives=cycles[:, list(chosen)],
        )

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('F', self.p))

    def __repr__(self):
        return f"F_{self.p}"
