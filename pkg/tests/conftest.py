import functools

import pytest

from pbzlat import catalog


@functools.lru_cache(maxsize=None)
def _built(name):
    return catalog.build(name)


@pytest.fixture
def alg():
    """alg("D4") returns the (cached) catalog algebra."""
    return _built
