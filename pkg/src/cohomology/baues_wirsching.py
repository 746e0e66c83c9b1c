"""
Cohomology of a category with coefficients in a natural system D:
K^n(C, D) = product over chains (a_1, ..., a_n) of D(a_n ... a_1), with
D(1_c) over the object c in degree 0.
"""

import logging

from src.cohomology.complexes import nerve_complex
from src.diagrams.natural_system import pullback_bimodule
from src.fincat.category import check_size

logger = logging.getLogger(__name__)


def bw_complex(category, system, bound, normalized=False):
    """K*(C, D) through K^(bound+1).

    (d phi)(a_1, ..., a_(n+1)) = D(a_1, 1) phi(a_2, ..., a_(n+1))
                                 + sum_{i=1..n} (-1)^i phi(face_i)
                                 + (-1)^(n+1) D(1, a_(n+1)) phi(a_1, ..., a_n)
    """
    if bound < 1:
        raise ValueError(f"truncation degree must be at least 1, got {bound}")
    if system.base is not category:
        raise ValueError("natural system lives on another category")
    check_size(category, 'bw_complex')
    ring = system.ring

    def fiber_dim(chain):
        return system.dim(chain.composite(category))

    def terms(chain):
        n = chain.degree - 1
        arrows = chain.arrows
        head = category.compose_chain(arrows[1:]) if n > 0 else category.identity(category.cod(arrows[0]))
        tail = category.compose_chain(arrows[:-1]) if n > 0 else category.identity(chain.start)
        size = fiber_dim(chain)
        out = [(0, system.left(arrows[0], head))]
        out.extend((i, (-1) ** i * ring.identity(size)) for i in range(1, n + 1))
        out.append((n + 1, (-1) ** (n + 1) * system.right(tail, arrows[-1])))
        return out

    complex_ = nerve_complex(category, bound, ring, fiber_dim, terms, normalized,
                             name=f"K*({category.name},{system.name})")
    complex_.verify()
    return complex_


def bw_cohomology(category, system, bound, normalized=False):
    result = bw_complex(category, system, bound, normalized).cohomology_result()
    logger.debug("H^*(%s, %s): %s", category.name, system.name, result.dims())
    return result


def hochschild_mitchell(category, bimodule, bound, normalized=False):
    """H^n(C, B) for a bimodule B, through the natural system B(dom a, cod a)."""
    return bw_cohomology(category, pullback_bimodule(category, bimodule), bound, normalized)
