"""Hom_R(A, B) as a k-vector space with a fixed basis."""

import numpy as np


class HomSpace:
    """R-linear maps A -> B.

    A map phi (a B.dim x A.dim matrix) is vectorized row-major. The space is
    the kernel of vec(phi) -> vec(X_B phi - phi X_A); the coordinates of a
    map are its entries at the free positions of that kernel basis.
    """

    def __init__(self, source, target):
        if source.algebra != target.algebra:
            raise ValueError("modules over different algebras")
        self.source = source
        self.target = target
        self.ring = source.algebra.ring
        a, b = source.dim, target.dim
        n = a * b
        if source.algebra.integral or source.algebra.m == 1 or n == 0:
            self.basis = self.ring.identity(n)
            self.free = tuple(range(n))
        else:
            ring = self.ring
            equation = ring.reduce(
                np.kron(ring.reduce(target.x), ring.identity(a))
                - np.kron(ring.identity(b), ring.reduce(source.x).T)
            )
            self.basis, self.free = ring.kernel_basis(equation)

    @property
    def dim(self):
        return len(self.free)

    def matrix(self, coords):
        """The map with the given coordinates."""
        coords = np.asarray(coords).reshape(-1)
        vec = self.ring.matmul(self.basis, coords.reshape(-1, 1))[:, 0]
        return vec.reshape(self.target.dim, self.source.dim)

    def coordinates(self, phi):
        vec = self.ring.reduce(phi).reshape(-1)
        return vec[list(self.free)]

    def basis_maps(self):
        return [self.matrix(self.ring.identity(self.dim)[:, j]) for j in range(self.dim)]

    def action(self, pre, post, source_space=None):
        """Matrix of phi -> post . phi . pre, from source_space = Hom(A', B') to self = Hom(A, B).

        pre: A -> A' and post: B' -> B. source_space defaults to self.
        """
        source_space = self if source_space is None else source_space
        ring = self.ring
        out = ring.zeros(self.dim, source_space.dim)
        for j, phi in enumerate(source_space.basis_maps()):
            image = ring.matmul(ring.matmul(post, phi), pre)
            out[:, j] = self.coordinates(image)
        return out
