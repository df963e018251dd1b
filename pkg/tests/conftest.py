import pytest

from petrisynth import (
    HittingSetInstance,
    Lts,
    RemovalSet,
    apply_removal,
    parse_lts,
)

# The running example: three branches u/v/w from the initial state, with a
# long x/y branch and two short branches sharing events with it.
DEMO_TEXT = """\
lts demo
initial bot
bot u s0
bot v t0
bot w q0
s0 x s1
s1 y s2
s2 x s3
t0 x t1
t0 a t1
q0 y q1
q0 a q1
"""


@pytest.fixture(scope="session")
def demo() -> Lts:
    return parse_lts(DEMO_TEXT)


@pytest.fixture(scope="session")
def demo_no_s3(demo) -> Lts:
    # language-implementable variant: the deep x edge is cut
    return apply_removal(demo, RemovalSet("state", ["s3"]))


@pytest.fixture(scope="session")
def demo_no_a(demo) -> Lts:
    # realizable variant: the shared event a is dropped entirely
    return apply_removal(demo, RemovalSet("event", ["a"]))


@pytest.fixture(scope="session")
def demo_zero(demo):
    return {e: 0 for e in demo.events}


# 6 elements, the 9 pairs of a highly symmetric graph, budget 4.  Known
# minimum hitting set size: 4.
NINE_PAIR_SETS = (
    ("X0", "X1"), ("X0", "X3"), ("X0", "X5"),
    ("X1", "X2"), ("X1", "X5"),
    ("X2", "X3"), ("X2", "X4"),
    ("X3", "X4"), ("X4", "X5"),
)


@pytest.fixture(scope="session")
def nine_pairs() -> HittingSetInstance:
    universe = [f"X{i}" for i in range(6)]
    return HittingSetInstance(universe, NINE_PAIR_SETS, 4)


@pytest.fixture(scope="session")
def toy_instance() -> HittingSetInstance:
    return HittingSetInstance(["X0", "X1"], [["X0", "X1"]], 1)


@pytest.fixture(scope="session")
def triangle() -> HittingSetInstance:
    return HittingSetInstance(
        ["X0", "X1", "X2"],
        [["X0", "X1"], ["X0", "X2"], ["X1", "X2"]],
        2,
    )
