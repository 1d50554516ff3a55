import pytest

import gkmcrystals as G


def make_d1():
    """Rank-2 datum [[2,-1],[-1,0]]: one real, one imaginary index."""
    return G.rank2_datum(G.Rank2Params(1, 1, 0))


def make_d2():
    """Rank-1 real datum [[2]]."""
    return G.make_datum(("1",), ((2,),))


def make_imaginary_only():
    """Single imaginary index with a_11 = 0."""
    return G.make_datum(("1",), ((0,),))


def make_toy_monster():
    return G.MonsterModel(G.MonsterParams(2, (2, 1)))


@pytest.fixture
def d1():
    return make_d1()


@pytest.fixture
def d2():
    return make_d2()


@pytest.fixture
def toy_monster():
    return make_toy_monster()
