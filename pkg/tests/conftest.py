import pytest

from irrbase.affine import build_agl
from irrbase.wreath import build_wreath


def brute_closure(gens, degree):
    """Independent closure oracle: multiply image tables until closed.

    Deliberately avoids the package's chain machinery so BSGS orders can be
    checked against it.
    """
    ident = tuple(range(degree))
    tbls = [tuple(v - 1 for v in g.images) for g in gens]
    els = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in tbls:
                c = tuple(g[v] for v in a)
                if c not in els:
                    els.add(c)
                    new.append(c)
        frontier = new
    return els


@pytest.fixture(scope="session")
def agl71():
    return build_agl(7, 1)


@pytest.fixture(scope="session")
def agl32():
    return build_agl(3, 2)


@pytest.fixture(scope="session")
def agl52():
    return build_agl(5, 2)


@pytest.fixture(scope="session")
def wreath52():
    return build_wreath(5, 2)
