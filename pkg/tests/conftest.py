import itertools
import random

import pytest
from hypothesis import settings

from rootmonoid import lattice as lat
from rootmonoid.cones import Cone, Face
from rootmonoid.monoid import build

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def orthant(n):
    return Cone(n, [tuple(int(i == j) for j in range(n)) for i in range(n)])


def make_re1():
    sigma = orthant(2)
    return build(sigma, Face.from_rays(sigma, [(1, 0)]), [((-1, 0), (-1, 1))])


def make_re2():
    sigma = orthant(3)
    return build(sigma, Face.from_rays(sigma, [(1, 0, 0)]), [((-1, 0, 0), (-1, 1, 1))])


@pytest.fixture(scope="session")
def re1():
    return make_re1()


@pytest.fixture(scope="session")
def re2():
    return make_re2()


def random_pointed_cone(rng: random.Random, n: int, coord_bound: int = 3, max_rays: int = 4) -> Cone:
    """A strongly convex, full-dimensional cone with small integer generators."""
    while True:
        count = rng.randint(n, max_rays)
        gens = []
        while len(gens) < count:
            v = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(n))
            if any(v):
                gens.append(v)
        if lat.rank(gens) < n:
            continue
        c = Cone(n, gens)
        if c.is_strongly_convex():
            return c


def box(n, bound):
    return itertools.product(range(-bound, bound + 1), repeat=n)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
