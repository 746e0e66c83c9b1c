"""
Spectral sequences of a filtered cochain complex over F_p, computed directly
from the filtration:

  Z_r^{s,n} = { x in F^s C^n : D x in F^(s+r) C^(n+1) }
  B_r^{s,n} = F^s C^n  intersected with  D(F^(s-r) C^(n-1))
  E_r^{s,n} = Z_r^{s,n} / (Z_(r-1)^{s+1,n} + B_(r-1)^{s,n})

with d_r: E_r^{s,n} -> E_r^{s+r,n+1} induced by D. Pages are indexed by
(s, t) with t = n - s. A double complex gives two filtrations: by columns
(s = p) and by rows (s = q).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.exactalg.groups import Subquotient

logger = logging.getLogger(__name__)

FILTRATIONS = ('column', 'row')


class FilteredComplex:
    """A cochain complex whose coordinates each carry a filtration degree.

    F^s C^n is spanned by the coordinates of degree n with filtration >= s,
    so D must not lower the filtration of any coordinate.
    """

    def __init__(self, complex_, filtration):
        if complex_.ring.integral:
            raise ValueError("spectral sequences are computed over F_p only")
        self.complex = complex_
        self.field = complex_.ring
        self.filtration = [np.asarray(f, dtype=np.int64) for f in filtration]
        if [len(f) for f in self.filtration] != list(complex_.dims):
            raise ValueError("filtration degrees do not match the complex dimensions")
        values = [int(v) for f in self.filtration for v in f]
        self.lowest = min(values, default=0)
        self.highest = max(values, default=0)
        self._z = {}
        self._terms = {}

    @property
    def top(self):
        return len(self.complex.dims) - 1

    @property
    def r_infinity(self):
        """A page index past every differential."""
        return self.highest - self.lowest + 2

    def _dim(self, n):
        return self.complex.dims[n] if 0 <= n <= self.top else 0

    def _d(self, n):
        """D: C^n -> C^(n+1), zero at both ends."""
        if n < 0:
            return self.field.zeros(self._dim(0), 0)
        if n >= len(self.complex.differentials):
            return self.field.zeros(self._dim(n + 1), self._dim(n))
        return self.complex.d(n)

    def filtered(self, s, n):
        """Basis of F^s C^n as columns of the identity."""
        keep = np.nonzero(self.filtration[n] >= s)[0]
        return self.field.identity(self._dim(n))[:, keep]

    def cycles(self, r, s, n):
        """Z_r^{s,n}."""
        key = (r, s, n)
        if key not in self._z:
            basis = self.filtered(s, n)
            if n + 1 > self.top:
                self._z[key] = basis
            else:
                low = np.nonzero(self.filtration[n + 1] < s + r)[0]
                image = self.field.matmul(self._d(n), basis)[low, :]
                self._z[key] = self.field.matmul(basis, self.field.kernel(image)) if low.size else basis
        return self._z[key]

    def boundaries(self, r, s, n):
        """B_r^{s,n} = D(Z_r^{s-r,n-1})."""
        if n == 0:
            return self.field.zeros(self._dim(0), 0)
        return self.field.matmul(self._d(n - 1), self.cycles(r, s - r, n - 1))

    def term(self, r, s, n):
        """E_r^{s,n} as a subquotient of C^n."""
        key = (r, s, n)
        if key not in self._terms:
            numerator = self.cycles(r, s, n)
            denominator = np.hstack([self.cycles(r - 1, s + 1, n), self.boundaries(r - 1, s, n)])
            base, chosen = self.field.complement_columns(denominator, numerator)
            self._terms[key] = Subquotient(
                field=self.field,
                ambient=self._dim(n),
                cycles=numerator,
                boundaries=base,
                representatives=numerator[:, list(chosen)],
            )
        return self._terms[key]

    def differential(self, r, s, n):
        """d_r: E_r^{s,n} -> E_r^{s+r,n+1} in representative coordinates."""
        source = self.term(r, s, n)
        if n + 1 > self.top:
            return self.field.zeros(0, source.dim)
        target = self.term(r, s + r, n + 1)
        out = self.field.zeros(target.dim, source.dim)
        if source.dim and target.dim:
            images = self.field.matmul(self._d(n), source.representatives)
            for j in range(source.dim):
                out[:, j] = target.coordinates(images[:, j])
        return out

    def cohomology_dim(self, n):
        return self.complex.cohomology(n).dim

    def filtration_dim(self, s, n):
        """dim F^s H^n: the classes with a representative in F^s C^n."""
        kernel = self.cycles(self.r_infinity, s, n)
        image = self.field.image(self._d(n - 1)) if n else self.field.zeros(self._dim(0), 0)
        return self.field.rank(np.hstack([kernel, image])) - self.field.rank(image)


@dataclass
class SpectralSequencePage:
    """E_r^{s,t} dimensions and the differentials d_r leaving each cell.

    r is None for the E_infinity page.
    """

    r: Optional[int]
    dims: Dict[Tuple[int, int], int]
    differentials: Dict[Tuple[int, int], Any] = field(default_factory=dict)
    stable: Dict[Tuple[int, int], bool] = field(default_factory=dict)

    def dim(self, s, t):
        return self.dims.get((s, t), 0)

    def grid(self, s_max, t_max):
        """Rows indexed by s, columns by t; None outside the computed cells."""
        return [[self.dims.get((s, t)) for t in range(t_max + 1)] for s in range(s_max + 1)]

    def diagonal(self, n):
        return sum(d for (s, t), d in self.dims.items() if s + t == n)

    def to_dict(self, s_max, t_max):
        out = {'r': 'inf' if self.r is None else self.r, 'dims': self.grid(s_max, t_max)}
        if self.differentials:
            out['nonzero_differentials'] = sorted(
                [s, t] for (s, t), d in self.differentials.items() if np.any(d)
            )
        return out


@dataclass
class SpectralSequence:
    filtration: str
    pages: List[SpectralSequencePage]
    infinity: SpectralSequencePage
    tot: List[int]
    filtration_dims: Dict[int, List[int]]
    max_degree: int
    s_max: int

    def page(self, r):
        for page in self.pages:
            if page.r == r:
                return page
        raise KeyError(f"page E_{r} was not computed")

    def degenerates_at(self, r):
        """True when every d_k with k >= r vanishes on the computed cells."""
        return all(not np.any(d) for page in self.pages if page.r >= r
                   for d in page.differentials.values())

    def check_pages(self, engine):
        """Cells where d_r d_r != 0 or E_(r+1) is not the cohomology of (E_r, d_r)."""
        bad = []
        for page in self.pages:
            r = page.r
            for (s, t), dim in page.dims.items():
                n = s + t
                if n + 2 <= engine.top:
                    twice = engine.field.matmul(engine.differential(r, s + r, n + 1),
                                                engine.differential(r, s, n))
                    if np.any(twice):
                        bad.append(('d_r^2', r, s, t))
                out_rank = engine.field.rank(engine.differential(r, s, n))
                in_rank = engine.field.rank(engine.differential(r, s - r, n - 1)) if n >= 1 else 0
                if engine.term(r + 1, s, n).dim != dim - out_rank - in_rank:
                    bad.append(('page', r, s, t))
        return bad

    def to_dict(self):
        t_max = self.max_degree
        return {
            'filtration': self.filtration,
            'pages': [page.to_dict(self.s_max, t_max) for page in self.pages],
            'Einf': self.infinity.to_dict(self.s_max, t_max),
            'tot': self.tot,
            'filtration_dims': {str(n): dims for n, dims in sorted(self.filtration_dims.items())},
        }


def double_complex_filtration(double, which):
    """Tot(double) with each coordinate tagged by its column or row."""
    if which not in FILTRATIONS:
        raise ValueError(f"filtration must be one of {FILTRATIONS}, got {which!r}")
    total, positions = double.total()
    index = 0 if which == 'column' else 1
    return FilteredComplex(total, [[cell[index] for cell in where] for where in positions])


def spectral_sequence(double, filtration='column', max_degree=None, r_max=None):
    """E_1..E_(r_max) and E_infinity for total degrees n <= max_degree.

    Defaults certify n <= min(P, Q) - 1 and also report n = min(P, Q).
    """
    engine = double_complex_filtration(double, filtration)
    s_max = double.P if filtration == 'column' else double.Q
    max_degree = min(double.P, double.Q) if max_degree is None else max_degree
    if not 0 <= max_degree < engine.top:
        raise ValueError(f"degree {max_degree} outside 0..{engine.top - 1}")
    r_max = max_degree + 1 if r_max is None else r_max
    cells = [(s, n - s) for n in range(max_degree + 1) for s in range(min(n, s_max) + 1)]

    pages = []
    for r in range(1, r_max + 1):
        page = SpectralSequencePage(r, {})
        for s, t in cells:
            n = s + t
            page.dims[(s, t)] = engine.term(r, s, n).dim
            page.differentials[(s, t)] = engine.differential(r, s, n)
            page.stable[(s, t)] = r > max(s, t + 1)
        pages.append(page)

    infinity = SpectralSequencePage(None, {
        (s, t): engine.term(engine.r_infinity, s, s + t).dim for s, t in cells
    })
    tot = [engine.cohomology_dim(n) for n in range(max_degree + 1)]
    filtration_dims = {
        n: [engine.filtration_dim(s, n) for s in range(min(n, s_max) + 2)]
        for n in range(max_degree + 1)
    }
    result = SpectralSequence(filtration, pages, infinity, tot, filtration_dims, max_degree, s_max)
    logger.debug("%s spectral sequence of %s: Tot %s", filtration, double.name, tot)
    return result, engine
