import random

import numpy as np
import pytest

from src.cli.random_instances import random_instance
from src.cohomology.complexes import CochainComplex
from src.diagrams.algebra import CoeffAlgebra, RModule
from src.diagrams.functor import DiagramFunctor
from src.diagrams.io import dump_diagram, parse_diagram
from src.exactalg.field import PrimeField
from src.exactalg.integer import ZZ
from src.fincat.constructions import relabel
from src.specseq.double_complex import DoubleComplex, build_double_complex
from src.specseq.functor_resolution import resolve_functor
from src.specseq.spectral import FilteredComplex, double_complex_filtration, spectral_sequence
from src.specseq.verify import PASS, natural_system_e2, verify_theorem
from tests.helpers import DUAL_NUMBERS, SMALL, SMALL_FIELDS, arrow_functor


def _square(field, h, v):
    """One square of 1-dimensional cells with horizontal map h and vertical map v."""
    one = lambda value: np.array([[value]], dtype=np.int64)
    return DoubleComplex(field, [[1, 1], [1, 1]],
                         horizontal=[[one(h)], [one(h)]],
                         vertical=[[one(v)], [one(v)]], name='square')


class TestFunctorResolution:
    def test_constant_functor_on_the_arrow(self, arrow):
        F = arrow_functor(arrow, CoeffAlgebra(2, 1), 1, 1, [[1]])
        resolution = resolve_functor(F, 2)
        assert resolution.terms[0].dims() == (1, 2)
        assert resolution.kernels[1].dims() == (0, 1)
        assert resolution.terms[1].dims() == (0, 1)
        assert resolution.terms[2].dims() == (0, 0)
        assert resolution.check_exact() == []

    @pytest.mark.parametrize('seed', range(8))
    def test_random_resolutions_are_exact(self, seed):
        _, F, _ = random_instance(seed, SMALL)
        resolution = resolve_functor(F, 3)
        assert resolution.augmentation.is_surjective()
        assert resolution.check_exact() == []
        for d in resolution.differentials:
            assert d.check().ok

    def test_rejects_short_and_integral(self, arrow_k_field, cospan_times2):
        with pytest.raises(ValueError):
            resolve_functor(arrow_k_field, 0)
        with pytest.raises(ValueError):
            resolve_functor(cospan_times2, 2)


class TestDoubleComplex:
    def test_total_complex_of_a_square(self):
        double = _square(PrimeField(3), 1, 1)
        assert double.check() == []
        total, positions = double.total()
        assert total.dims == (1, 2, 1)
        assert positions[1] == ((0, 1), (1, 0))
        assert [[int(v) for v in row] for row in total.d(1)] == [[1, 2]]
        assert [total.cohomology(n).dim for n in range(2)] == [0, 0]

    def test_anticommuting_square_is_rejected(self):
        double = DoubleComplex(PrimeField(3), [[1, 1], [1, 1]],
                               horizontal=[[np.array([[1]])], [np.array([[2]])]],
                               vertical=[[np.array([[1]])], [np.array([[1]])]])
        assert double.check() == [('square', 0, 0)]

    @pytest.mark.parametrize('seed', range(6))
    def test_built_from_a_resolution(self, seed):
        _, F, G = random_instance(seed, SMALL)
        resolution = resolve_functor(F, 3)
        double = build_double_complex(F, G, resolution, 3)
        assert double.Q == 3
        assert double.check() == []
        total, _ = double.total()
        assert total.check() == []

    def test_resolution_must_match(self, arrow_k_field, arrow):
        other = arrow_functor(arrow, CoeffAlgebra(2, 1), 1, 1, [[0]])
        resolution = resolve_functor(arrow_k_field, 2)
        with pytest.raises(ValueError):
            build_double_complex(other, arrow_k_field, resolution, 2)
        with pytest.raises(ValueError):
            build_double_complex(arrow_k_field, arrow_k_field, resolution, 2, 3)


class TestSpectralEngine:
    def test_isomorphic_rows_die_on_the_second_page(self):
        sequence, engine = spectral_sequence(_square(PrimeField(3), 1, 0), 'column')
        assert sequence.page(1).dims == {(0, 0): 1, (0, 1): 1, (1, 0): 1}
        assert sequence.page(2).dims == {(0, 0): 0, (0, 1): 0, (1, 0): 0}
        assert sequence.tot == [0, 0]
        assert not sequence.degenerates_at(1)
        assert sequence.degenerates_at(2)
        assert sequence.check_pages(engine) == []

    def test_row_filtration_sees_the_same_cohomology(self):
        double = _square(PrimeField(3), 1, 0)
        rows, _ = spectral_sequence(double, 'row')
        assert rows.page(1).dims == {(0, 0): 0, (0, 1): 0, (1, 0): 0}
        assert rows.infinity.diagonal(1) == 0

    def test_filtration_of_cohomology(self):
        double = _square(PrimeField(2), 0, 0)
        sequence, engine = spectral_sequence(double, 'column')
        assert sequence.tot == [1, 2]
        assert sequence.filtration_dims[1] == [2, 1, 0]
        assert engine.filtration_dim(0, 0) == 1

    def test_bad_arguments(self):
        double = _square(PrimeField(3), 1, 1)
        with pytest.raises(ValueError):
            double_complex_filtration(double, 'diagonal')
        with pytest.raises(ValueError):
            spectral_sequence(double, 'column', max_degree=2)
        sequence, _ = spectral_sequence(double)
        with pytest.raises(KeyError):
            sequence.page(10)

    def test_integral_complexes_are_rejected(self):
        complex_ = CochainComplex(ZZ, [1, 1], [np.array([[0]], dtype=object)])
        with pytest.raises(ValueError):
            FilteredComplex(complex_, [[0], [0]])

    def test_pages_carry_stability(self, terminal_k):
        resolution = resolve_functor(terminal_k, 3)
        double = build_double_complex(terminal_k, terminal_k, resolution, 3)
        sequence, _ = spectral_sequence(double, 'column')
        assert sequence.max_degree == 3
        assert [p.r for p in sequence.pages] == [1, 2, 3, 4]
        assert sequence.page(4).stable[(0, 2)]
        assert not sequence.page(2).stable[(2, 0)]
        assert set(sequence.to_dict()) == {'filtration', 'pages', 'Einf', 'tot', 'filtration_dims'}


class TestVerification:
    def test_terminal_category(self, terminal_k):
        report = verify_theorem(terminal_k, terminal_k, 3)
        assert report.passed, report.mismatches
        assert [report.e2[0][q] for q in range(4)] == [1, 1, 1, 1]
        assert all(report.e2[p][q] == 0 for p in range(1, 4) for q in range(4 - p))
        assert report.ext_oracle == [1, 1, 1, 1]
        assert report.tot == [1, 1, 1, 1]
        assert report.truncation_affected == [(s, 4 - s) for s in range(5)]

    def test_arrow_has_two_columns(self, arrow_k_dual):
        report = verify_theorem(arrow_k_dual, arrow_k_dual, 2)
        assert report.passed, report.mismatches
        for p in range(2, 3):
            assert all(not report.e2[p][q] for q in range(3 - p))
        for n in range(3):
            assert sum(report.e_infinity[p][n - p] for p in range(n + 1)) == report.ext_oracle[n]

    @pytest.mark.parametrize('seed', range(20))
    def test_hereditary_arrow(self, seed, arrow):
        rng = random.Random(seed)
        algebra = CoeffAlgebra(rng.choice((2, 3)), 1)
        F = arrow_functor(arrow, algebra, 1, 2, [[rng.randrange(algebra.p)], [rng.randrange(algebra.p)]])
        G = arrow_functor(arrow, algebra, 2, 1, [[rng.randrange(algebra.p), rng.randrange(algebra.p)]], 'G')
        report = verify_theorem(F, G, 2)
        assert report.passed, report.mismatches
        assert all(report.e2[p][q] == 0 for p in range(3) for q in range(1, 3 - p))
        assert report.ext_oracle[2] == 0

    @pytest.mark.parametrize('seed', range(10))
    def test_random_instances(self, seed):
        _, F, G = random_instance(seed, SMALL_FIELDS)
        report = verify_theorem(F, G, 3)
        assert report.passed, report.mismatches
        assert set(report.verdicts.values()) == {PASS}
        assert 'counterexample' not in report.to_dict()

    @pytest.mark.parametrize('seed', range(10))
    def test_morphism_order_does_not_matter(self, seed):
        category, F, G = random_instance(seed, SMALL_FIELDS)
        order = list(range(category.n_morphisms))
        random.Random(seed).shuffle(order)
        shuffled = relabel(category, order)
        moved = [parse_diagram(dump_diagram(D), shuffled) for D in (F, G)]
        first, second = verify_theorem(F, G, 3), verify_theorem(*moved, 3)
        assert first.e2 == second.e2
        assert first.e_infinity == second.e_infinity
        assert first.ext_oracle == second.ext_oracle

    @pytest.mark.parametrize('seed', range(20))
    def test_row_sequence_degenerates_over_dual_numbers(self, seed):
        _, F, G = random_instance(seed, DUAL_NUMBERS)
        assert F.algebra.m == 2
        report = verify_theorem(F, G, 2)
        assert report.verdicts['row_degenerates'] == PASS
        assert all(report.row_e2[s][t] == 0 for s in range(3) for t in range(1, 3 - s))

    def test_natural_system_grid(self, arrow_k_field):
        grid = natural_system_e2(arrow_k_field, arrow_k_field, 2)
        assert grid[0] == [1, 0, 0]
        assert grid[1][:2] == [0, 0]
        assert grid[2][0] == 0
        assert grid[1][2] is None

    def test_wide_prime_coefficients(self, terminal):
        algebra = CoeffAlgebra(4294967311, 2)
        k = DiagramFunctor.constant(terminal, RModule.trivial(algebra, 1))
        report = verify_theorem(k, k, 2)
        assert report.passed, report.mismatches
        assert report.ext_oracle == [1, 1, 1]

    def test_rejects_integers(self, cospan_times2):
        with pytest.raises(ValueError):
            verify_theorem(cospan_times2, cospan_times2, 2)
