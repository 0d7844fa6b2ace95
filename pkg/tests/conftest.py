import pytest

from orbitloom import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jitted kernels once so timing-sensitive tests never pay
    # the JIT cost; a no-op on the numpy backend
    kernels.warmup()
