import json

import pytest

import config
from src.config_manager import reload_config
from src.errors import InputError, InvalidCategory, ParseError, SizeGuardExceeded
from src.fincat.category import require_valid, validate
from src.fincat.constructions import (
    comma_under,
    cyclic_group_category,
    face_monoid_category,
    factorization,
    initial_objects,
    opposite,
    poset_category,
    product,
    relabel,
    with_initial_object,
)
from src.fincat.io import dump_category, load_category, parse_category
from src.fincat.nerve import NerveChain, face, nerve
from tests.helpers import example


class TestValidation:
    def test_arrow_is_valid(self, arrow):
        assert validate(arrow).ok
        assert [m.name for m in arrow.morphisms] == ['id_a', 'id_b', 'f']

    def test_corrupted_identity_law(self):
        corrupted = load_category(example('arrow_corrupted'))
        report = validate(corrupted)
        assert not report.ok
        assert "identity law fails at (f, id_a)" in report.violations
        with pytest.raises(InvalidCategory, match="identity law"):
            require_valid(corrupted)

    def test_missing_composite(self):
        category = parse_category({
            'objects': ['a', 'b', 'c'],
            'morphisms': [{'name': 'f', 'dom': 'a', 'cod': 'b'}, {'name': 'g', 'dom': 'b', 'cod': 'c'}],
        })
        assert "composite g o f is missing" in validate(category).violations

    def test_compose_outside_table(self, arrow):
        f = arrow.morphism_index('f')
        with pytest.raises(ValueError):
            arrow.compose(f, f)


class TestNerve:
    def test_arrow_chain_counts(self, arrow):
        id_a, id_b, f = (arrow.morphism_index(n) for n in ('id_a', 'id_b', 'f'))
        assert len(nerve(arrow, 0)) == 2
        assert len(nerve(arrow, 1)) == 3
        assert {c.arrows for c in nerve(arrow, 2)} == {(id_a, id_a), (id_a, f), (f, id_b), (id_b, id_b)}

    def test_normalized_chains(self, arrow):
        assert len(nerve(arrow, 1, normalized=True)) == 1
        assert nerve(arrow, 2, normalized=True) == ()

    def test_faces(self, arrow):
        id_a, f = arrow.morphism_index('id_a'), arrow.morphism_index('f')
        chain = NerveChain(0, (id_a, f))
        assert face(arrow, chain, 0) == NerveChain(0, (f,))
        assert face(arrow, chain, 1) == NerveChain(0, (f,))
        assert face(arrow, chain, 2) == NerveChain(0, (id_a,))
        assert chain.is_degenerate(arrow)
        assert chain.composite(arrow) == f


class TestConstructions:
    def test_comma_under(self, arrow):
        comma, projection = comma_under(arrow, arrow.object_index('a'))
        assert comma.n_objects == 2
        assert sum(not m.identity for m in comma.morphisms) == 1
        assert validate(comma).ok
        assert projection.validate().ok
        assert initial_objects(comma) == (0,)
        assert comma_under(arrow, arrow.object_index('b'))[0].n_objects == 1

    def test_factorization_of_arrow_is_a_cospan(self, arrow):
        prime, dom_cod = factorization(arrow)
        assert (prime.n_objects, prime.n_morphisms) == (3, 5)
        assert validate(prime).ok
        assert dom_cod.validate().ok
        f = arrow.morphism_index('f')
        into_f = [k for k in prime.into(f) if not prime.is_identity(k)]
        assert len(into_f) == 2

    def test_factorization_of_group(self, z2):
        prime, _ = factorization(z2)
        assert prime.n_morphisms == 8
        assert validate(prime).ok

    def test_product_of_arrows(self, arrow):
        square = product(arrow, arrow)
        assert (square.n_objects, square.n_morphisms) == (4, 9)
        assert validate(square).ok

    def test_opposite(self, arrow):
        op = opposite(arrow)
        f = op.morphism_index('f')
        assert (op.dom(f), op.cod(f)) == (op.object_index('b'), op.object_index('a'))
        assert validate(op).ok

    def test_initial_object(self, cospan):
        assert initial_objects(cospan) == ()
        extended = with_initial_object(cospan)
        assert validate(extended).ok
        assert initial_objects(extended) == (3,)

    def test_face_monoid(self):
        monoid = face_monoid_category(['+-', '-0'])
        assert monoid.n_morphisms == 4
        assert validate(monoid).ok
        assert monoid.morphism_by_label('00') == monoid.identity(0)
        assert all(monoid.compose(k, k) == k for k in range(4))
        a, b = monoid.morphism_by_label('+-'), monoid.morphism_by_label('-0')
        assert monoid.compose(a, b) == a
        assert monoid.compose(b, a) == monoid.morphism_by_label('--')
        with pytest.raises(ValueError):
            face_monoid_category(['+', '0-'])

    def test_poset_closure(self):
        poset = poset_category('xyz', [('x', 'y'), ('y', 'z')])
        assert poset.n_morphisms == 6
        assert poset.hom(0, 2)
        assert validate(poset).ok
        with pytest.raises(ValueError, match="cycle"):
            poset_category('xy', [('x', 'y'), ('y', 'x')])

    def test_cyclic_group(self):
        group = cyclic_group_category(3)
        assert group.n_morphisms == 3
        assert validate(group).ok

    def test_relabel_keeps_a_category(self, cospan):
        order = list(reversed(range(cospan.n_morphisms)))
        shuffled = relabel(cospan, order)
        assert validate(shuffled).ok
        assert [m.name for m in shuffled.morphisms] == [cospan.morphisms[k].name for k in order]


class TestSizeGuard:
    def test_environment_override(self, arrow):
        reload_config(environ={'CATEXT_SIZE_GUARD': '2'})
        with pytest.raises(SizeGuardExceeded, match="factorization"):
            factorization(arrow)

    def test_product_is_measured_as_a_whole(self):
        group = cyclic_group_category(7)
        reload_config(environ={'CATEXT_SIZE_GUARD': '40'})
        with pytest.raises(SizeGuardExceeded, match="product: category has 49 morphisms"):
            product(group, group)
        assert product(group, cyclic_group_category(5)).n_morphisms == 35

    def test_caches_are_bounded(self):
        for _ in range(config.NERVE_CACHE_SIZE + 5):
            nerve(cyclic_group_category(2), 1)
        assert nerve.cache_info().currsize <= config.NERVE_CACHE_SIZE
        for _ in range(config.CONSTRUCTION_CACHE_SIZE + 5):
            factorization(cyclic_group_category(2))
        assert factorization.cache_info().currsize <= config.CONSTRUCTION_CACHE_SIZE

    def test_malformed_override(self):
        with pytest.raises(InputError, match="CATEXT_SIZE_GUARD"):
            reload_config(environ={'CATEXT_SIZE_GUARD': 'many'})


class TestFiles:
    @pytest.mark.parametrize('name', ['terminal', 'arrow', 'cospan', 'z2_group'])
    def test_round_trip(self, name):
        category = load_category(example(name))
        dumped = dump_category(category)
        again = parse_category(json.loads(json.dumps(dumped)))
        assert dump_category(again) == dumped
        assert again.table == category.table

    def test_json_error_has_line(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "objects": ["a"],\n  "morphisms": [\n}\n')
        with pytest.raises(ParseError) as info:
            load_category(str(path))
        assert info.value.line is not None

    def test_missing_field(self):
        with pytest.raises(ParseError, match="objects"):
            parse_category({'morphisms': []})
