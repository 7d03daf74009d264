import json
import pathlib

import pytest

from growthpricer import (
    DiscreteAtoms,
    Game,
    GeometricLadder,
    LinearTilted,
    MarketParams,
    Uniform,
    lognormal_game,
    put_game,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def atoms(*pairs):
    return Game(DiscreteAtoms.from_pairs(pairs))


@pytest.fixture(scope="session")
def game1():
    return atoms((3, 0.5), (0, 0.5))


@pytest.fixture(scope="session")
def game2():
    return atoms((2, 0.5), (0.625, 0.5))


@pytest.fixture(scope="session")
def samuelson():
    return atoms((2.7, 0.5), (0.3, 0.5))


@pytest.fixture(scope="session")
def uniform():
    return Game(Uniform())


@pytest.fixture(scope="session")
def tilted():
    return Game(LinearTilted(-1.0, 2.0, -1.0))


@pytest.fixture(scope="session")
def stpete():
    return Game(GeometricLadder(2.0))


@pytest.fixture(scope="session")
def lognormal():
    return lognormal_game(100.0, 0.3, 0.04)


@pytest.fixture(scope="session")
def put_params():
    return MarketParams(S=90.0, K=120.0, T=2.0, sigma=0.1, r=0.04)


@pytest.fixture(scope="session")
def put(put_params):
    return put_game(put_params)


@pytest.fixture(scope="session")
def neg_atoms():
    return atoms((-0.5, 0.5), (2, 0.5))


@pytest.fixture(scope="session")
def expected():
    return json.loads((GOLDEN / "expected.json").read_text())
