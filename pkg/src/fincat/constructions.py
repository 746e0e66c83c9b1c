"""
Categories derived from a finite category: opposite, product, comma category
under an object, the factorization category, relabelings and small families
(posets, cyclic groups, face monoids) used for examples and random instances.
"""

import logging
from functools import lru_cache

import config
from src.config_manager import size_guard
from src.errors import SizeGuardExceeded
from src.fincat.category import CatMap, FinCat, Morphism, check_size

logger = logging.getLogger(__name__)


def opposite(category):
    """Same objects and morphism indices, arrows reversed."""
    morphisms = [Morphism(m.name, m.cod, m.dom, m.identity) for m in category.morphisms]
    table = {(f, g): h for (g, f), h in category.table.items()}
    return FinCat(
        category.objects, morphisms, table,
        object_labels=category.object_labels,
        morphism_labels=category.morphism_labels,
        name=f"{category.name}^op",
    )


def product(a, b):
    """a x b; object (i, j) has index i*|Ob b| + j, morphism (f, g) index f*|Mor b| + g."""
    bound = size_guard()
    size = a.n_morphisms * b.n_morphisms
    if size > bound:
        raise SizeGuardExceeded('product', size, bound)
    return _product(a, b)


def _product(a, b):
    nb_obj, nb_mor = b.n_objects, b.n_morphisms
    objects = [f"({x},{y})" for x in a.objects for y in b.objects]
    labels = [(i, j) for i in range(a.n_objects) for j in range(nb_obj)]
    morphisms = []
    mor_labels = []
    for f, mf in enumerate(a.morphisms):
        for g, mg in enumerate(b.morphisms):
            morphisms.append(Morphism(
                f"({mf.name},{mg.name})",
                mf.dom * nb_obj + mg.dom,
                mf.cod * nb_obj + mg.cod,
                mf.identity and mg.identity,
            ))
            mor_labels.append((f, g))
    table = {}
    for (f2, f1), f in a.table.items():
        for (g2, g1), g in b.table.items():
            table[(f2 * nb_mor + g2, f1 * nb_mor + g1)] = f * nb_mor + g
    return FinCat(objects, morphisms, table, labels, mor_labels, name=f"{a.name}x{b.name}")


@lru_cache(maxsize=config.CONSTRUCTION_CACHE_SIZE)
def comma_under(category, c):
    """c/C with its projection Q_c to C.

    Objects are the morphisms alpha: c -> a (label (a, alpha)); a morphism
    (a, alpha) -> (b, beta) is gamma: a -> b with gamma.alpha = beta
    (label (alpha, beta, gamma)). Object 0 is (c, 1_c).
    """
    check_size(category, 'comma_under')
    out = list(category.out_of(c))
    ident = category.identity(c)
    out.remove(ident)
    out.insert(0, ident)

    objects = [f"({category.objects[category.cod(a)]},{category.morphisms[a].name})" for a in out]
    obj_labels = [(category.cod(a), a) for a in out]
    morphisms, mor_labels, gammas = [], [], []
    for i, alpha in enumerate(out):
        for j, beta in enumerate(out):
            for gamma in category.hom(category.cod(alpha), category.cod(beta)):
                if category.compose(gamma, alpha) == beta:
                    morphisms.append(Morphism(
                        f"{category.morphisms[gamma].name}:{objects[i]}->{objects[j]}",
                        i, j, i == j and category.is_identity(gamma),
                    ))
                    mor_labels.append((alpha, beta, gamma))
                    gammas.append(gamma)

    index = {label: k for k, label in enumerate(mor_labels)}
    table = {}
    for k1, (alpha, beta, g1) in enumerate(mor_labels):
        for k2, (beta2, delta, g2) in enumerate(mor_labels):
            if beta2 == beta:
                table[(k2, k1)] = index[(alpha, delta, category.compose(g2, g1))]

    comma = FinCat(objects, morphisms, table, obj_labels, mor_labels,
                   name=f"{category.objects[c]}/{category.name}")
    projection = CatMap(
        comma, category,
        tuple(category.cod(a) for a in out),
        tuple(gammas),
        name=f"Q_{category.objects[c]}",
    )
    logger.debug("comma category %s: %d objects, %d morphisms",
                 comma.name, comma.n_objects, comma.n_morphisms)
    return comma, projection


@lru_cache(maxsize=config.CONSTRUCTION_CACHE_SIZE)
def factorization(category):
    """The factorization category C' and (dom, cod): C' -> C^op x C.

    Objects are the morphisms of C, in order. A morphism f -> g is a pair
    (alpha, beta) with beta.f.alpha = g, labelled (f, g, alpha, beta) and
    ordered by f, g, alpha, beta. Composition is
    (alpha2, beta2).(alpha1, beta1) = (alpha1.alpha2, beta2.beta1).
    """
    check_size(category, 'factorization')
    morphisms, labels = [], []
    for f, mf in enumerate(category.morphisms):
        for g, mg in enumerate(category.morphisms):
            for alpha in category.hom(mg.dom, mf.dom):
                f_alpha = category.compose(f, alpha)
                for beta in category.hom(mf.cod, mg.cod):
                    if category.compose(beta, f_alpha) == g:
                        morphisms.append(Morphism(
                            f"({category.morphisms[alpha].name},{category.morphisms[beta].name}):"
                            f"{mf.name}->{mg.name}",
                            f, g,
                            f == g and category.is_identity(alpha) and category.is_identity(beta),
                        ))
                        labels.append((f, g, alpha, beta))

    index = {label: k for k, label in enumerate(labels)}
    by_source = {}
    for k, label in enumerate(labels):
        by_source.setdefault(label[0], []).append(k)
    table = {}
    for k1, (f, g, a1, b1) in enumerate(labels):
        for k2 in by_source.get(g, ()):
            _, h, a2, b2 = labels[k2]
            table[(k2, k1)] = index[(f, h, category.compose(a1, a2), category.compose(b2, b1))]

    names = [m.name for m in category.morphisms]
    prime = FinCat(names, morphisms, table, tuple(range(category.n_morphisms)), labels,
                   name=f"{category.name}'")

    n_obj, n_mor = category.n_objects, category.n_morphisms
    # only the codomain of (dom, cod); its size follows from the guard on category
    target = _product(opposite(category), category)
    dom_cod = CatMap(
        prime, target,
        tuple(m.dom * n_obj + m.cod for m in category.morphisms),
        tuple(alpha * n_mor + beta for (_, _, alpha, beta) in labels),
        name='(dom,cod)',
    )
    logger.debug("factorization category of %s: %d objects, %d morphisms",
                 category.name, prime.n_objects, prime.n_morphisms)
    return prime, dom_cod


def relabel(category, morphism_order, object_order=None):
    """The same category with morphisms (and optionally objects) listed in a new order.

    morphism_order[k] is the old index of the new k-th morphism.
    """
    if object_order is None:
        object_order = list(range(category.n_objects))
    if sorted(morphism_order) != list(range(category.n_morphisms)):
        raise ValueError("morphism_order is not a permutation")
    if sorted(object_order) != list(range(category.n_objects)):
        raise ValueError("object_order is not a permutation")
    new_obj = {old: new for new, old in enumerate(object_order)}
    new_mor = {old: new for new, old in enumerate(morphism_order)}
    morphisms = []
    for old in morphism_order:
        m = category.morphisms[old]
        morphisms.append(Morphism(m.name, new_obj[m.dom], new_obj[m.cod], m.identity))
    table = {(new_mor[g], new_mor[f]): new_mor[h] for (g, f), h in category.table.items()}
    return FinCat(
        [category.objects[o] for o in object_order],
        morphisms, table,
        [category.object_labels[o] for o in object_order],
        [category.morphism_labels[m] for m in morphism_order],
        name=category.name,
    )


def initial_objects(category):
    """Objects with exactly one morphism to every object."""
    return tuple(
        c for c in range(category.n_objects)
        if all(len(category.hom(c, d)) == 1 for d in range(category.n_objects))
    )


def with_initial_object(category, name='bottom'):
    """Adjoin a new object (last) with a unique morphism to every object."""
    check_size(category, 'with_initial_object')
    bottom = category.n_objects
    objects = list(category.objects) + [name]
    morphisms = list(category.morphisms)
    first_new = len(morphisms)
    to_obj = {}
    for c, obj in enumerate(objects):
        to_obj[c] = len(morphisms)
        if c == bottom:
            morphisms.append(Morphism(f"id_{name}", bottom, bottom, True))
        else:
            morphisms.append(Morphism(f"{name}->{obj}", bottom, c))
    table = dict(category.table)
    ident = to_obj[bottom]
    for c in range(len(objects)):
        u = to_obj[c]
        table[(u, ident)] = u
    for c in range(category.n_objects):
        u = to_obj[c]
        for g in category.out_of(c):
            table[(g, u)] = to_obj[category.cod(g)]
    labels = list(category.morphism_labels) + [morphisms[k].name for k in range(first_new, len(morphisms))]
    return FinCat(objects, morphisms, table, list(category.object_labels) + [name], labels,
                  name=f"{category.name}+{name}")


def poset_category(elements, relations, name='poset'):
    """The category of a finite poset.

    `relations` lists pairs (x, y) meaning x <= y; the reflexive-transitive
    closure is taken. Morphisms: identities first, then x<y in element order.
    """
    elements = [str(e) for e in elements]
    n = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    leq = [[i == j for j in range(n)] for i in range(n)]
    for x, y in relations:
        leq[index[str(x)]][index[str(y)]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise ValueError(f"{elements[i]} and {elements[j]} form a cycle")

    morphisms = [Morphism(f"id_{e}", i, i, True) for i, e in enumerate(elements)]
    arrow = {(i, i): i for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                arrow[(i, j)] = len(morphisms)
                morphisms.append(Morphism(f"{elements[i]}<{elements[j]}", i, j))
    table = {}
    for (i, j), f in arrow.items():
        for k in range(n):
            if (j, k) in arrow:
                table[(arrow[(j, k)], f)] = arrow[(i, k)]
    return FinCat(elements, morphisms, table, name=name)


def cyclic_group_category(order, name=None):
    """One object '*' with morphisms g^0 = id_*, g^1, ..., g^(order-1)."""
    if order < 1:
        raise ValueError("group order must be positive")
    morphisms = [Morphism('id_*', 0, 0, True)] + [Morphism(f"g{k}", 0, 0) for k in range(1, order)]
    table = {(i, j): (i + j) % order for i in range(order) for j in range(order)}
    return FinCat(['*'], morphisms, table, name=name or f"Z/{order}")


def face_product(x, y):
    """Sign vectors over {0, +, -}: x wins wherever it is nonzero."""
    return ''.join(a if a != '0' else b for a, b in zip(x, y))


def face_monoid_category(faces, name=None):
    """One object '*' with the monoid generated by sign vectors under face_product.

    Every element is idempotent; the zero vector is the identity. Elements
    after the identity are sorted, morphism labels are the sign vectors.
    """
    faces = [str(f) for f in faces]
    if not faces:
        raise ValueError("at least one face is needed")
    rank = len(faces[0])
    if any(len(f) != rank or set(f) - set('0+-') for f in faces):
        raise ValueError(f"faces must be sign vectors of one length: {faces}")
    zero = '0' * rank
    elements = {zero, *faces}
    frontier = list(elements)
    while frontier:
        x = frontier.pop()
        for y in list(elements):
            for z in (face_product(x, y), face_product(y, x)):
                if z not in elements:
                    elements.add(z)
                    frontier.append(z)
    ordered = [zero] + sorted(elements - {zero})
    index = {f: i for i, f in enumerate(ordered)}
    morphisms = [Morphism('id_*', 0, 0, True)] + [Morphism(f"[{f}]", 0, 0) for f in ordered[1:]]
    table = {(i, j): index[face_product(x, y)] for i, x in enumerate(ordered) for j, y in enumerate(ordered)}
    return FinCat(['*'], morphisms, table, morphism_labels=ordered, name=name or f"faces{len(ordered)}")
