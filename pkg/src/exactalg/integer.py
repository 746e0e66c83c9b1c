"""Integer matrices with arbitrary-precision entries and Smith normal form."""

import logging

import numpy as np

from src.exactalg.groups import FGAbelianGroup

logger = logging.getLogger(__name__)


def _as_rows(m):
    m = np.asarray(m, dtype=object)
    return [[int(v) for v in row] for row in m], m.shape


def _identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _to_array(rows, shape):
    out = np.zeros(shape, dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def _smith(m):
    """Smith form by elementary operations. Returns (U, D, V, V_inv) as row lists.

    U.m.V = D. Only swaps, negations and additions of integer multiples are
    used, so U and V are unimodular and V_inv is tracked alongside V.
    """
    a, (rows, cols) = _as_rows(m)
    U = _identity_rows(rows)
    V = _identity_rows(cols)
    V_inv = _identity_rows(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(target, source, q):
        # row_target += q * row_source
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        U[target] = [x + q * y for x, y in zip(U[target], U[source])]

    def add_col(target, source, q):
        # col_target += q * col_source
        for row in a:
            row[target] += q * row[source]
        for row in V:
            row[target] += q * row[source]
        V_inv[source] = [x - q * y for x, y in zip(V_inv[source], V_inv[target])]

    for t in range(min(rows, cols)):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            d = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // d
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, cols):
                q = a[t][j] // d
                if q:
                    add_col(j, t, -q)

            # a nonzero remainder is smaller than the pivot: make it the pivot
            smallest = None
            for i in range(t + 1, rows):
                if a[i][t] and (smallest is None or abs(a[i][t]) < abs(smallest[2])):
                    smallest = ('row', i, a[i][t])
            for j in range(t + 1, cols):
                if a[t][j] and (smallest is None or abs(a[t][j]) < abs(smallest[2])):
                    smallest = ('col', j, a[t][j])
            if smallest is not None:
                if smallest[0] == 'row':
                    swap_rows(t, smallest[1])
                else:
                    swap_cols(t, smallest[1])
                continue

            # divisibility: pull an offending row into row t
            offender = None
            for i in range(t + 1, rows):
                if any(a[i][j] % d for j in range(t + 1, cols)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    return U, a, V, V_inv


def smith_normal_form(m):
    """(U, D, V) with U.m.V = D diagonal, d_1 | d_2 | ..., U and V unimodular."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    U, D, V, _ = _smith(m)
    return _to_array(U, (rows, rows)), _to_array(D, (rows, cols)), _to_array(V, (cols, cols))


def invariant_factors(m):
    """Nonzero diagonal entries of the Smith form."""
    _, D, _, _ = _smith(np.asarray(m, dtype=object))
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


class IntegerRing:
    """The integers, as object arrays of Python ints."""

    __slots__ = ()

    integral = True
    p = None

    def reduce(self, m):
        m = np.asarray(m, dtype=object)
        return np.vectorize(int, otypes=[object])(m) if m.size else m.copy()

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=object)

    def identity(self, n):
        return _to_array(_identity_rows(n), (n, n))

    def matmul(self, a, b):
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return a.dot(b)

    def is_zero(self, m):
        return all(v == 0 for v in np.asarray(m, dtype=object).flat)

    def equal(self, a, b):
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        return a.shape == b.shape and self.is_zero(a - b)

    def rank(self, m):
        m = np.asarray(m, dtype=object)
        if m.size == 0:
            return 0
        return len(invariant_factors(m))

    def kernel(self, m):
        """A basis of ker m (a saturated sublattice) as columns."""
        m = np.asarray(m, dtype=object)
        rows, cols = m.shape
        if rows == 0 or cols == 0:
            return self.identity(cols)
        _, D, V, _ = _smith(m)
        r = sum(1 for i in range(min(rows, cols)) if D[i][i])
        return _to_array(V, (cols, cols))[:, r:]

    def image(self, m):
        """Nonzero columns of m.V, a basis of the column lattice."""
        m = np.asarray(m, dtype=object)
        rows, cols = m.shape
        if rows == 0 or cols == 0:
            return self.zeros(rows, 0)
        _, D, V, _ = _smith(m)
        r = sum(1 for i in range(min(rows, cols)) if D[i][i])
        return self.matmul(m, _to_array(V, (cols, cols)))[:, :r]

    def homology(self, d_in, d_out):
        """ker(d_out) / im(d_in) as a finitely generated abelian group."""
        d_in = np.asarray(d_in, dtype=object)
        d_out = np.asarray(d_out, dtype=object)
        ambient = d_out.shape[1]
        if d_out.shape[0] and ambient:
            _, D, _, V_inv = _smith(d_out)
            r = sum(1 for i in range(min(d_out.shape)) if D[i][i])
            V_inv = _to_array(V_inv, (ambient, ambient))
        else:
            r = 0
            V_inv = self.identity(ambient)
        # d_out.d_in = 0 puts the image of d_in in the span of the last
        # ambient - r columns of V, whose coordinates are rows r.. of V_inv.d_in
        relations = self.matmul(V_inv, d_in)[r:, :]
        free = ambient - r
        factors = invariant_factors(relations) if relations.size else []
        logger.debug("Z-homology: kernel rank %d, %d relations", free, len(factors))
        return FGAbelianGroup.from_invariants(free - len(factors), factors)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash('Z')

    def __repr__(self):
        return 'Z'


ZZ = IntegerRing()
