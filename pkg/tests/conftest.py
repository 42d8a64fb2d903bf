import pytest

from ccx.algebra import Quiver, build_algebra
from ccx.character import CharacterEngine
from ccx.fixtures import load_fixture
from ccx.modules import module_from_arrows


def preprojective_a2(p=101):
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    return build_algebra(q, [[(1, ["b", "a"])], [(1, ["a", "b"])]], p, name="preprojective A2")


def cyclic_b(p=101):
    """The bound cyclic quiver 1 -> 2 -> 3 -> 1 expected for End(T)."""
    q = Quiver(["1", "2", "3"], [("g", "1", "2"), ("b", "2", "3"), ("a", "3", "1")])
    return build_algebra(q, [[(1, ["a", "b"])], [(1, ["b", "g"])]], p)


def a2_modules(A):
    return {
        "1": module_from_arrows(A, [1, 0], {}, "1"),
        "2": module_from_arrows(A, [0, 1], {}, "2"),
        "T2": module_from_arrows(A, [1, 1], {"a": [[1]]}, "T2"),
        "T3": module_from_arrows(A, [1, 1], {"b": [[1]]}, "T3"),
    }


@pytest.fixture(scope="session")
def A():
    return preprojective_a2()


@pytest.fixture(scope="session")
def mods(A):
    return a2_modules(A)


@pytest.fixture(scope="session")
def fx():
    return load_fixture()


@pytest.fixture(scope="session")
def td(fx):
    return fx.tilting


@pytest.fixture(scope="session")
def engine(fx):
    return CharacterEngine(fx)
