import pytest

from src.config_manager import reload_config
from src.diagrams.algebra import CoeffAlgebra
from src.diagrams.io import load_diagram
from src.fincat.io import load_category
from tests.helpers import example


@pytest.fixture(autouse=True)
def clean_config():
    """Every test starts from the file defaults, whatever the shell exports."""
    reload_config(environ={})
    yield
    reload_config(environ={})


@pytest.fixture
def terminal():
    return load_category(example('terminal'))


@pytest.fixture
def arrow():
    return load_category(example('arrow'))


@pytest.fixture
def cospan():
    return load_category(example('cospan'))


@pytest.fixture
def z2():
    return load_category(example('z2_group'))


@pytest.fixture
def dual_numbers():
    """F_2[x]/(x^2)."""
    return CoeffAlgebra(2, 2)


@pytest.fixture
def terminal_k(terminal):
    return load_diagram(example('terminal_k_dual'), terminal)


@pytest.fixture
def arrow_k_dual(arrow):
    return load_diagram(example('arrow_const_k_dual'), arrow)


@pytest.fixture
def arrow_k_field(arrow):
    return load_diagram(example('arrow_const_k_field'), arrow)


@pytest.fixture
def cospan_times2(cospan):
    return load_diagram(example('cospan_times2_Z'), cospan)
