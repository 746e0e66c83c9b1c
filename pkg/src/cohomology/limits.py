"""
Derived limits lim^n F of a functor on a finite category, computed by the
cochain complex C^n(C, F) = product over chains c_0 -> ... -> c_n of F(c_n).
"""

import logging

from src.cohomology.complexes import nerve_complex
from src.errors import CrossCheckFailed
from src.fincat.category import check_size

logger = logging.getLogger(__name__)


def limit_complex(category, functor, bound, normalized=False):
    """C*(C, F) through C^(bound+1).

    (d phi)(a_1, ..., a_(n+1)) = sum_{i=0..n} (-1)^i phi(face_i)
                                 + (-1)^(n+1) F(a_(n+1)) phi(a_1, ..., a_n)
    """
    if bound < 1:
        raise ValueError(f"truncation degree must be at least 1, got {bound}")
    check_size(category, 'limit_complex')
    ring = functor.ring

    def fiber_dim(chain):
        return functor.modules[chain.end(category)].dim

    def terms(chain):
        n = chain.degree - 1
        size = fiber_dim(chain)
        out = [(i, (-1) ** i * ring.identity(size)) for i in range(n + 1)]
        out.append((n + 1, (-1) ** (n + 1) * functor.maps[chain.arrows[-1]]))
        return out

    complex_ = nerve_complex(category, bound, ring, fiber_dim, terms, normalized,
                             name=f"C*({category.name},{functor.name})")
    complex_.verify()
    return complex_


def equalizer_limit(functor):
    """lim F as compatible families: the kernel of v -> (F(f) v_dom f - v_cod f)_f."""
    base, ring = functor.base, functor.ring
    offsets, total = [], 0
    for mod in functor.modules:
        offsets.append(total)
        total += mod.dim
    rows = sum(functor.modules[m.cod].dim for m in base.morphisms)
    relations = ring.zeros(rows, total)
    r = 0
    for f, m in enumerate(base.morphisms):
        height = functor.modules[m.cod].dim
        width = functor.modules[m.dom].dim
        relations[r:r + height, offsets[m.dom]:offsets[m.dom] + width] += functor.maps[f]
        relations[r:r + height, offsets[m.cod]:offsets[m.cod] + height] -= ring.identity(height)
        r += height
    return ring.kernel(ring.reduce(relations))


def limit_cohomology(category, functor, bound, normalized=False):
    """lim^n F for n <= bound; H^0 is checked against the equalizer description."""
    complex_ = limit_complex(category, functor, bound, normalized)
    result = complex_.cohomology_result()
    h0 = result.groups[0]
    rank = equalizer_limit(functor).shape[1]
    matches = (h0.rank == rank and not h0.torsion) if result.integral else h0.dim == rank
    if not matches:
        logger.warning("H^0 of %s is %s but the equalizer has rank %d", complex_.name, h0, rank)
        raise CrossCheckFailed(f"H^0 of {complex_.name} disagrees with the equalizer limit")
    logger.debug("lim^* of %s over %s: %s", functor.name, category.name, result.dims())
    return result
