import pytest
from hypothesis import HealthCheck, settings

from regretgames import kernels

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(params=kernels.available())
def backend(request):
    """Run the test once per available kernel backend."""
    prev = kernels.use(request.param)
    yield request.param
    kernels.use(prev)
