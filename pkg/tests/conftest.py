import pytest

import pairlab as pl


@pytest.fixture(scope="session")
def toy_record():
    return pl.CurveRecord(q=5, a=0, b=1, n=6, r=3, k=2, d=8)


@pytest.fixture(scope="session")
def toy_ctx(toy_record):
    return pl.build_context(toy_record)


@pytest.fixture(scope="session")
def f25():
    return pl.build_extension(5, 2)


@pytest.fixture(scope="session")
def f5():
    return pl.base_params(5)
