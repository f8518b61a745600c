import pytest

from lawcat.laxext import LaxExtension
from lawcat.monad import builtin_monads
from lawcat.quantale import builtin_quantales


@pytest.fixture(scope="session")
def quantales():
    return builtin_quantales()


@pytest.fixture(scope="session")
def monads():
    return builtin_monads()


_EXT_CACHE = {}


@pytest.fixture(scope="session")
def ext_factory(quantales, monads):
    def make(monad_name, quantale_name):
        key = (monad_name, quantale_name)
        if key not in _EXT_CACHE:
            _EXT_CACHE[key] = LaxExtension(monads[monad_name], quantales[quantale_name])
        return _EXT_CACHE[key]

    return make
