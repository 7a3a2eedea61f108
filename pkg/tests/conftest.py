import hypothesis
import pytest

hypothesis.settings.register_profile(
    "abrsa",
    deadline=None,  # numba JIT on first call blows any per-example deadline
    max_examples=100,
    derandomize=True,
)
hypothesis.settings.load_profile("abrsa")


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the numba kernels once so timed tests measure computation."""
    from abrsa import oracle, simulator

    simulator.estimate_density(
        simulator.LatticeConfig(
            n_sites=4, alpha=0.5, sample_times=(1.0,), boundary="free",
            master_seed=0, replicas=2,
        )
    )
    simulator.run_once(
        simulator.LatticeConfig(
            n_sites=4, alpha=0.5, sample_times=(1.0,), boundary="free",
            master_seed=0, replicas=1,
        ),
        0,
    )
    oracle.exact_occupation(
        oracle.OracleProblem(n_sites=2, alpha=0.5, t=0.5, target_site=0)
    )
    return True
