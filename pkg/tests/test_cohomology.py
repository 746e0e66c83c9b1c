import random

import numpy as np
import pytest

from src.cli.random_instances import random_instance
from src.cohomology.baues_wirsching import bw_cohomology, bw_complex, hochschild_mitchell
from src.cohomology.comparison import comma_comparison
from src.cohomology.complexes import CochainComplex
from src.cohomology.limits import equalizer_limit, limit_cohomology, limit_complex
from src.diagrams.adjunction import induce
from src.diagrams.algebra import CoeffAlgebra, RModule
from src.diagrams.functor import DiagramFunctor, ObFamily
from src.diagrams.natural_system import (
    constant_system,
    hom_bimodule,
    hom_natural_system,
    natural_system_from_functor,
)
from src.errors import CompositionNonzero
from src.exactalg.field import PrimeField
from src.exactalg.groups import FGAbelianGroup
from src.fincat.constructions import with_initial_object
from tests.helpers import F2_F5, SMALL, WIDE, arrow_functor

N = 3
TOP = 4


def _random_family(rng, category, algebra):
    lengths = [rng.randint(0, algebra.m) for _ in range(category.n_objects)]
    return ObFamily(category, algebra, tuple(RModule.truncated(algebra, k) for k in lengths))


class TestDifferentials:
    @pytest.mark.parametrize('seed', range(50))
    def test_every_complex_squares_to_zero(self, seed):
        category, F, G = random_instance(seed, WIDE)
        complexes = [
            limit_complex(category, F, TOP),
            bw_complex(category, natural_system_from_functor(F), TOP),
            bw_complex(category, hom_natural_system(F, G), TOP, normalized=True),
        ]
        for complex_ in complexes:
            assert len(complex_.dims) == TOP + 2
            assert complex_.check() == []


class TestLimits:
    def test_cospan_has_torsion(self, cospan, cospan_times2):
        result = limit_cohomology(cospan, cospan_times2, N)
        assert result.group(0) == FGAbelianGroup(1)
        assert result.group(1) == FGAbelianGroup(0, (2,))
        assert result.vanishes_above(2)
        assert result.group(N + 1) is None

    def test_arrow_with_zero_map(self, arrow):
        F = arrow_functor(arrow, CoeffAlgebra.integers(), 1, 1, [[0]])
        result = limit_cohomology(arrow, F, N)
        assert result.group(0) == FGAbelianGroup(1)
        assert result.vanishes_above(1)

    def test_complex_squares_to_zero(self, cospan, cospan_times2):
        complex_ = limit_complex(cospan, cospan_times2, N)
        assert complex_.check() == []
        assert len(complex_.dims) == N + 2

    def test_broken_differential_is_caught(self):
        one = np.ones((1, 1), dtype=np.int64)
        broken = CochainComplex(PrimeField(3), [1, 1, 1], [one, one])
        assert broken.check() == [0]
        with pytest.raises(CompositionNonzero):
            broken.verify()

    def test_constant_functor_over_initial_object(self, cospan):
        extended = with_initial_object(cospan)
        algebra = CoeffAlgebra(3, 1)
        F = DiagramFunctor.constant(extended, RModule.trivial(algebra, 2))
        result = limit_cohomology(extended, F, N)
        assert result.dims() == [2, 0, 0, 0]
        assert equalizer_limit(F).shape[1] == 2

    @pytest.mark.parametrize('seed', range(20))
    def test_initial_object_vanishing(self, seed):
        category, F, _ = random_instance(seed, kind='bottom')
        result = limit_cohomology(category, F, TOP)
        assert result.vanishes_above(1)
        assert result.dim(0) == equalizer_limit(F).shape[1]

    @pytest.mark.parametrize('seed', range(20))
    def test_initial_object_vanishing_over_integers(self, seed):
        category, F, _ = random_instance(seed, kind='bottom', integral=True)
        result = limit_cohomology(category, F, TOP)
        assert result.integral
        assert result.vanishes_above(1)
        assert result.group(0) == FGAbelianGroup(equalizer_limit(F).shape[1])


class TestBauesWirsching:
    def test_group_cohomology_of_z2(self, z2):
        system = constant_system(z2, CoeffAlgebra(2, 1))
        assert bw_cohomology(z2, system, N).dims() == [1, 1, 1, 1]

    def test_odd_coefficients_kill_z2(self, z2):
        system = constant_system(z2, CoeffAlgebra(3, 1))
        assert bw_cohomology(z2, system, N).dims() == [1, 0, 0, 0]

    def test_functor_coefficients_give_derived_limits(self, cospan, cospan_times2):
        system = natural_system_from_functor(cospan_times2)
        assert bw_cohomology(cospan, system, N) == limit_cohomology(cospan, cospan_times2, N)

    @pytest.mark.parametrize('seed', range(20))
    def test_agrees_with_limits_over_factorizations(self, seed):
        category, F, G = random_instance(seed, SMALL)
        system = hom_natural_system(F, G)
        bw = bw_cohomology(category, system, N)
        over_prime = limit_cohomology(system.prime, system.functor, N, normalized=True)
        assert bw.dims() == over_prime.dims()

    @pytest.mark.parametrize('seed', range(6))
    def test_normalized_cochains(self, seed):
        category, F, G = random_instance(seed, SMALL)
        system = hom_natural_system(F, G)
        assert (bw_cohomology(category, system, N, normalized=True).dims()
                == bw_cohomology(category, system, N).dims())

    def test_rejects_degree_zero(self, arrow, arrow_k_field):
        with pytest.raises(ValueError):
            bw_complex(arrow, natural_system_from_functor(arrow_k_field), 0)

    def test_rejects_foreign_system(self, arrow, cospan, cospan_times2):
        with pytest.raises(ValueError):
            bw_complex(arrow, natural_system_from_functor(cospan_times2), N)

    @pytest.mark.parametrize('seed', range(6))
    def test_hochschild_mitchell(self, seed):
        category, F, G = random_instance(seed, SMALL)
        assert (hochschild_mitchell(category, hom_bimodule(F, G), N).dims()
                == bw_cohomology(category, hom_natural_system(F, G), N).dims())


class TestInducedVanishing:
    @pytest.mark.parametrize('seed', range(20))
    def test_hom_out_of_induced_is_acyclic(self, seed):
        category, _, G = random_instance(seed, F2_F5)
        assert G.algebra.p in (2, 5)
        family = _random_family(random.Random(seed), category, G.algebra)
        system = hom_natural_system(induce(family), G)
        result = bw_cohomology(category, system, TOP)
        assert result.vanishes_above(1)

    @pytest.mark.parametrize('seed', range(20))
    def test_comma_comparison(self, seed):
        category, _, G = random_instance(seed, F2_F5)
        for c in range(category.n_objects):
            comparison = comma_comparison(category, c, G, TOP)
            assert comparison.commutes
            assert comparison.invertible

    def test_comparison_on_the_arrow(self, arrow, arrow_k_dual):
        comparison = comma_comparison(arrow, arrow.object_index('a'), arrow_k_dual, N)
        assert comparison.commutes
        assert comparison.invertible
        assert comparison.comma_complex.cohomology_result().vanishes_above(1)
