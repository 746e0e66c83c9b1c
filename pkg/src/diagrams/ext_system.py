"""The natural system alpha -> Ext^q_R(F(dom alpha), G(cod alpha))."""

import logging

from src.diagrams.functor import require_same_base
from src.diagrams.natural_system import natural_system_from_maps
from src.homalg.ext import ext_objects, induced_ext_map

logger = logging.getLogger(__name__)


def ext_computations(source, target, bound):
    """Ext(F(a), G(b)) through degree bound for every pair of objects (a, b)."""
    require_same_base(source, target)
    base = source.base
    return {
        (a, b): ext_objects(source.modules[a], target.modules[b], bound)
        for a in range(base.n_objects) for b in range(base.n_objects)
    }


def ext_natural_system(source, target, q, computations=None, name=None):
    """Values Ext^q(F(a), G(b)); (u, v): alpha -> beta acts through F(u) and G(v).

    The action lifts F(u) along the stored resolutions, so only the class of
    the chosen lift matters.
    """
    if q < 0:
        raise ValueError(f"negative Ext degree {q}")
    require_same_base(source, target)
    base = source.base
    if computations is None:
        computations = ext_computations(source, target, q)
    ext = {f: computations[(m.dom, m.cod)] for f, m in enumerate(base.morphisms)}

    def action(f, g, u, v):
        return induced_ext_map(ext[f], ext[g], source.maps[u], target.maps[v], q)

    system = natural_system_from_maps(
        base, source.algebra.ground(), [ext[f].dim(q) for f in range(base.n_morphisms)], action,
        name or f"Ext^{q}({source.name},{target.name})",
    )
    logger.debug("Ext^%d natural system on %s: dims %s", q, base.name, system.functor.dims())
    return system
