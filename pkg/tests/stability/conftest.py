import pytest

from discretization.assembly import assemble_system
from discretization.elements import gauss_rule
from discretization.mesh import build_mesh
from discretization.models import StabilityParams
from profiles.flows import poiseuille

TEST_HEIGHT = 2.0
TEST_RE = 500.0
TEST_ALPHA = 1.0
TEST_ELEMENTS = 8


@pytest.fixture
def profile():
    return poiseuille(TEST_HEIGHT)


@pytest.fixture
def mesh():
    return build_mesh(TEST_HEIGHT, TEST_ELEMENTS)


@pytest.fixture
def params():
    return StabilityParams(re=TEST_RE, alpha=TEST_ALPHA)


@pytest.fixture
def system(mesh, profile, params):
    """Small assembled Poiseuille system"""
    return assemble_system(mesh, profile, params, gauss_rule(5))
