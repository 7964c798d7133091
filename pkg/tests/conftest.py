import pytest

from mmvkit.numerics import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


def rel_err(a, b):
    a, b = complex(a) if isinstance(a, complex) else a, b
    scale = max(abs(a), abs(b))
    return 0 if scale == 0 else abs(a - b) / scale
