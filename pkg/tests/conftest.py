"""Shared group fixtures.

Groups are immutable once built, so session scope is safe and keeps the
subgroup-lattice caches warm across test modules.
"""

import pytest

from idemconv import (
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    semidirect_product,
    symmetric_group,
)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s4():
    return symmetric_group(4)


@pytest.fixture(scope="session")
def s5():
    return symmetric_group(5)


@pytest.fixture(scope="session")
def d4():
    return dihedral_group(4)


@pytest.fixture(scope="session")
def q8():
    return quaternion_group()


@pytest.fixture(scope="session")
def c12():
    return cyclic_group(12)


@pytest.fixture(scope="session")
def g18():
    # (C3 x C3) x| C2 with the involution swapping the two torus factors.
    torus = direct_product(cyclic_group(3), cyclic_group(3))
    swap = tuple((x % 3) * 3 + x // 3 for x in range(9))
    return semidirect_product(torus, cyclic_group(2), [tuple(range(9)), swap])
