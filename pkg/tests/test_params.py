import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abrsa.params import ConsistencyError, DensityTriple, ModelParams, derived

unit = st.floats(min_value=0.0, max_value=1.0)
interior = st.floats(min_value=1e-9, max_value=1.0 - 1e-9)


@pytest.mark.parametrize("alpha,t", [(-0.1, 0.5), (1.1, 0.5), (0.5, -1e-9), (0.5, 1.0001), (float("nan"), 0.5), (0.3, float("inf"))])
def test_params_rejects_out_of_range(alpha, t):
    with pytest.raises(ValueError):
        ModelParams(alpha=alpha, t=t)


def test_beta_is_complement():
    p = ModelParams(alpha=0.3, t=0.5)
    assert p.beta == 1.0 - 0.3


@given(alpha=interior)
def test_derived_identities(alpha):
    d = derived(ModelParams(alpha=alpha, t=0.5))
    assert math.isclose(d.gamma**2, alpha * (1.0 - alpha), rel_tol=1e-13)
    assert math.isclose(d.theta**2 * (1.0 - alpha), alpha, rel_tol=1e-13)
    assert d.gamma <= 0.5


def test_gamma_max_at_half():
    assert derived(ModelParams(alpha=0.5, t=0.0)).gamma == 0.5


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_derived_rejects_endpoints(alpha):
    with pytest.raises(ValueError):
        derived(ModelParams(alpha=alpha, t=0.5))


def test_density_triple_validates_sum():
    DensityTriple(rho_A=0.3, rho_B=0.3, rho_X=0.4)
    with pytest.raises(ConsistencyError):
        DensityTriple(rho_A=0.3, rho_B=0.3, rho_X=0.5)
    with pytest.raises(ValueError):
        DensityTriple(rho_A=-0.2, rho_B=0.6, rho_X=0.6)
