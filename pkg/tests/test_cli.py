import json
import random

import pytest

from src.cli.jobs import HANDLERS, JobSpec, build_parser, main
from src.cli.random_instances import KINDS, quotient_functor, random_instance, submodule_functor
from src.cli.reports import render, to_table
from src.config_manager import ConfigManager
from src.diagrams.algebra import CoeffAlgebra, RModule
from src.diagrams.functor import check_functor
from src.diagrams.io import dump_diagram
from src.errors import CompositionNonzero, CrossCheckFailed, InputError
from src.fincat.category import validate
from src.fincat.io import dump_category
from tests.helpers import example


def _run(tmp_path, argv, environ=None, name='report.json'):
    out = tmp_path / name
    status = main(argv + ['--out', str(out)], environ=environ or {})
    return status, out


def _report(tmp_path, argv, environ=None):
    status, out = _run(tmp_path, argv, environ)
    return status, json.loads(out.read_text())


class TestCommands:
    def test_verify_terminal(self, tmp_path):
        status, report = _report(tmp_path, ['verify', '--input', example('terminal'),
                                            '--diagram-f', example('terminal_k_dual'), '--degree', '2'])
        assert status == 0
        assert set(report['verdicts'].values()) == {'PASS'}
        assert report['ext_oracle'] == [1, 1, 1]
        assert report['N'] == 2
        assert report['truncation_affected'] == [[s, 3 - s] for s in range(4)]

    def test_bw_reports_torsion(self, tmp_path):
        status, report = _report(tmp_path, ['bw', '--input', example('cospan'),
                                            '--diagram-f', example('cospan_times2_Z'), '--degree', '2'])
        assert status == 0
        degrees = report['cohomology']['degrees']
        assert degrees[0]['group'] == {'rank': 1, 'torsion': []}
        assert degrees[1]['group'] == {'rank': 0, 'torsion': [2]}
        assert degrees[1]['text'] == 'Z/2'
        assert report['cohomology']['not_computed_from'] == 3

    def test_limits_agree_with_bw(self, tmp_path):
        argv = ['--input', example('cospan'), '--diagram-f', example('cospan_times2_Z'), '--degree', '2']
        _, limits = _report(tmp_path, ['limits'] + argv)
        _, bw = _report(tmp_path, ['bw'] + argv)
        assert limits['cohomology'] == bw['cohomology']

    def test_hom_coefficients(self, tmp_path):
        argv = ['--input', example('arrow'), '--diagram-f', example('arrow_const_k_dual'),
                '--diagram-g', example('arrow_const_k_dual'), '--degree', '2']
        status, bw = _report(tmp_path, ['bw'] + argv)
        assert status == 0
        assert [d['dim'] for d in bw['cohomology']['degrees']] == [1, 0, 0]
        status, hm = _report(tmp_path, ['hochschild-mitchell'] + argv)
        assert status == 0
        assert hm['cohomology'] == bw['cohomology']

    def test_ext(self, tmp_path):
        status, report = _report(tmp_path, ['ext', '--input', example('arrow'),
                                            '--diagram-f', example('arrow_const_k_dual'), '--degree', '2'])
        assert status == 0
        assert report['objectwise'] == {'a->a': [1, 1, 1], 'a->b': [1, 1, 1],
                                        'b->a': [1, 1, 1], 'b->b': [1, 1, 1]}
        assert len(report['functor_category']) == 3

    def test_specseq(self, tmp_path):
        status, report = _report(tmp_path, ['specseq', '--input', example('terminal'),
                                            '--diagram-f', example('terminal_k_dual'), '--degree', '2'])
        assert status == 0
        assert report['first']['filtration'] == 'row'
        assert report['second']['filtration'] == 'column'
        assert report['second']['tot'][:3] == [1, 1, 1]

    def test_random_suite(self, tmp_path):
        status, report = _report(tmp_path, ['random-suite', '--degree', '1', '--seed', '3'],
                                 environ={'CATEXT_SUITE_SIZE': '2'})
        assert status == 0
        assert [run['seed'] for run in report['runs']] == [3, 4]
        assert report['failed'] == []


class TestInputErrors:
    def test_corrupted_category(self, tmp_path):
        status, report = _report(tmp_path, ['validate', '--input', example('arrow_corrupted')])
        assert status == 2
        assert "identity law fails at (f, id_a)" in report['category']['violations']

    def test_valid_category_and_diagram(self, tmp_path):
        status, report = _report(tmp_path, ['validate', '--input', example('arrow'),
                                            '--diagram-f', example('arrow_const_k_field')])
        assert status == 0
        assert report['F']['valid']

    def test_missing_input(self, tmp_path):
        status, report = _report(tmp_path, ['bw'])
        assert status == 2
        assert 'needs --input' in report['error']

    def test_verify_refuses_integers(self, tmp_path):
        status, report = _report(tmp_path, ['verify', '--input', example('cospan'),
                                            '--diagram-f', example('cospan_times2_Z')])
        assert status == 2
        assert '--coeff' in report['error']

    def test_size_guard(self, tmp_path):
        status, report = _report(tmp_path, ['verify', '--input', example('arrow'),
                                            '--diagram-f', example('arrow_const_k_dual'), '--degree', '1'],
                                 environ={'CATEXT_SIZE_GUARD': '2'})
        assert status == 2
        assert 'size guard' in report['error']

    @pytest.mark.parametrize('argv', [
        ['bw', '--coeff', '4'],
        ['bw', '--degree', '0'],
    ])
    def test_bad_flags(self, tmp_path, argv, capsys):
        assert main(argv, environ={}) == 2
        assert 'error' in capsys.readouterr().err

    def test_bad_environment(self, capsys):
        assert main(['bw'], environ={'CATEXT_SIZE_GUARD': 'lots'}) == 2
        assert 'CATEXT_SIZE_GUARD' in capsys.readouterr().err

    @pytest.mark.parametrize('error', [CrossCheckFailed("H^0 disagrees"), CompositionNonzero((1, 1), (1, 1))])
    def test_internal_failures_are_reported(self, tmp_path, monkeypatch, error):
        def broken(job):
            raise error

        monkeypatch.setitem(HANDLERS, 'limits', broken)
        status, report = _report(tmp_path, ['limits', '--input', example('arrow')])
        assert status == 1
        assert report['error'] == str(error)

    def test_job_spec_validation(self):
        with pytest.raises(InputError):
            JobSpec(command='draw')
        with pytest.raises(InputError):
            JobSpec(command='bw', format='xml')


class TestReports:
    def test_json_is_reproducible(self, tmp_path):
        argv = ['verify', '--input', example('arrow'), '--diagram-f', example('arrow_const_k_field'),
                '--degree', '2']
        _, first = _run(tmp_path, argv, name='first.json')
        _, second = _run(tmp_path, argv, name='second.json')
        assert first.read_bytes() == second.read_bytes()

    def test_table_format(self, tmp_path):
        status, out = _run(tmp_path, ['verify', '--input', example('terminal'),
                                      '--diagram-f', example('terminal_k_dual'), '--degree', '1',
                                      '--format', 'table'], name='report.txt')
        text = out.read_text()
        assert status == 0
        assert 'verdicts:' in text
        assert 'E2:' in text

    def test_table_marks_missing_cells(self):
        text = to_table({'grid': [[1, None], [0, 2]]}, width=3)
        assert text.splitlines()[2] == '  0  1  .'

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render({}, 'xml')

    def test_parser_defaults_are_unset(self):
        args = build_parser().parse_args(['bw'])
        assert args.degree is None and args.format is None


class TestRandomInstances:
    @pytest.mark.parametrize('seed', range(100))
    def test_reproducible_and_valid(self, seed):
        category, F, G = random_instance(seed)
        again = random_instance(seed)
        assert dump_category(category) == dump_category(again[0])
        assert dump_diagram(F) == dump_diagram(again[1])
        assert validate(category).ok
        assert check_functor(F).ok and check_functor(G).ok

    @pytest.mark.parametrize('kind', KINDS)
    def test_every_kind(self, kind):
        category, F, G = random_instance(7, kind=kind)
        assert F.algebra == G.algebra
        if kind == 'bottom':
            assert category.objects[0] == '0'

    def test_monoids_have_idempotents(self):
        for seed in range(10):
            category, F, _ = random_instance(seed, kind='monoid')
            idempotent = [k for k in range(category.n_morphisms)
                          if not category.is_identity(k) and category.compose(k, k) == k]
            assert idempotent
            assert check_functor(F).ok

    def test_submodule_and_quotient_diagrams(self, arrow):
        rng = random.Random(0)
        algebra = CoeffAlgebra(3, 2)
        ring = algebra.ring
        f = arrow.morphism_index('f')
        for _ in range(10):
            ambient = RModule.free(algebra, 2)
            sub = submodule_functor(rng, arrow, algebra, ambient)
            quotient = quotient_functor(rng, arrow, algebra, ambient)
            assert ring.rank(sub.maps[f]) == sub.modules[0].dim
            assert ring.rank(quotient.maps[f]) == quotient.modules[1].dim

    def test_integer_instances(self):
        _, F, G = random_instance(1, kind='poset', integral=True)
        assert F.algebra.integral and check_functor(G).ok
        with pytest.raises(ValueError):
            random_instance(1, kind='group', integral=True)


class TestConfiguration:
    def test_bundled_examples_are_listed(self):
        names = ConfigManager(environ={}).get_available_examples()
        assert {'arrow', 'cospan', 'terminal', 'z2_group'} <= set(names)

    def test_precedence(self):
        manager = ConfigManager(environ={'CATEXT_SUITE_SIZE': '4'})
        assert manager.get('RANDOM_SUITE_SIZE') == 4
        assert manager.get('DEGREE') == 3
        manager.update_settings({'DEGREE': 5, 'FORMAT': None})
        assert manager.get('DEGREE') == 5
        assert manager.get('format') == 'json'
