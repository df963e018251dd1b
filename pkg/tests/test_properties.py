"""Randomized invariant suites over small generated systems.

Five suites, each at 1000 deterministic cases: expansion only ever yields
valid regions, every region built by the machinery sums its effects to zero
around cycles, the atom solver is sound, it agrees with exhaustive bounded
region enumeration on tiny systems, and every witness synthesizes into a net
that passes the matching verifier.
"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from petrisynth import (
    FailureReport,
    Lts,
    RegionError,
    Witness,
    check_property,
    expand_region,
    is_region,
    synthesized_net,
    verify_embedding,
    verify_language_simulation,
    verify_realization,
)
from petrisynth.separation import (
    enumerate_atoms,
    region_solves,
    seed_regions,
    solve_atom,
)

from oracles import bounded_regions, oracle_solves

ALPHABET = ("a", "b")

COMMON = dict(
    max_examples=1000,
    deadline=None,
    derandomize=True,
    database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                           HealthCheck.data_too_large],
)


@st.composite
def small_lts(draw, max_states=6):
    """Reachable deterministic system on <= max_states states over {a, b}."""
    n = draw(st.integers(min_value=1, max_value=max_states))
    targets = {}
    for i in range(n):
        for event in ALPHABET:
            choice = draw(st.integers(min_value=-1, max_value=n - 1))
            if choice >= 0:
                targets[(i, event)] = choice
    edges = []
    seen = {0}
    stack = [0]
    while stack:
        src = stack.pop()
        for event in ALPHABET:
            dst = targets.get((src, event))
            if dst is not None:
                edges.append((f"s{src}", event, f"s{dst}"))
                if dst not in seen:
                    seen.add(dst)
                    stack.append(dst)
    return Lts("rand", "s0", edges)


def _find_cycle(lts):
    """First closed edge path found by DFS, or None on acyclic systems."""
    color = {}
    parent_edge = {}
    for root in sorted(lts.states):
        if root in color:
            continue
        color[root] = "gray"
        stack = [(root, iter(lts.out_edges(root)))]
        while stack:
            state, pending = stack[-1]
            advanced = False
            for event, dst in pending:
                if color.get(dst) == "gray":
                    cycle = [(state, event, dst)]
                    cursor = state
                    while cursor != dst:
                        edge = parent_edge[cursor]
                        cycle.append(edge)
                        cursor = edge[0]
                    cycle.reverse()
                    return cycle
                if dst not in color:
                    color[dst] = "gray"
                    parent_edge[dst] = (state, event, dst)
                    stack.append((dst, iter(lts.out_edges(dst))))
                    advanced = True
                    break
            if not advanced:
                color[state] = "black"
                stack.pop()
    return None


@settings(**COMMON)
@given(
    lts=small_lts(),
    sup_init=st.integers(min_value=0, max_value=8),
    con_a=st.integers(min_value=0, max_value=3),
    con_b=st.integers(min_value=0, max_value=3),
    pro_a=st.integers(min_value=0, max_value=3),
    pro_b=st.integers(min_value=0, max_value=3),
)
def test_expansion_outputs_satisfy_region_axioms(lts, sup_init, con_a, con_b, pro_a, pro_b):
    con = {e: v for e, v in zip(ALPHABET, (con_a, con_b)) if e in lts.events}
    pro = {e: v for e, v in zip(ALPHABET, (pro_a, pro_b)) if e in lts.events}
    try:
        region = expand_region(lts, sup_init, con, pro)
    except RegionError:
        return  # inconsistent candidate: correctly refused
    ok, violation = is_region(lts, region)
    assert ok, violation
    assert region.sup[lts.initial] == sup_init
    for src, event, dst in lts.edges:
        assert region.con[event] <= region.sup[src]
        assert region.sup[dst] == region.sup[src] - region.con[event] + region.pro[event]
        assert region.sup[dst] >= 0


@settings(**COMMON)
@given(lts=small_lts())
def test_cycle_effect_sums_vanish(lts):
    cycle = _find_cycle(lts)
    if cycle is None:
        return
    zero = {event: 0 for event in lts.events}
    regions = [expand_region(lts, 0, zero, zero)]
    regions.extend(seed_regions(lts))
    atoms = enumerate_atoms(lts, "both")
    for atom in atoms[:3]:
        region = solve_atom(lts, atom)
        if region is not None:
            regions.append(region)
    for region in regions:
        assert sum(region.eff(event) for _, event, _ in cycle) == 0


@settings(**COMMON)
@given(lts=small_lts(), pick=st.integers(min_value=0, max_value=10 ** 6))
def test_solver_soundness(lts, pick):
    atoms = enumerate_atoms(lts, "both")
    if not atoms:
        return
    atom = atoms[pick % len(atoms)]
    region = solve_atom(lts, atom)
    if region is None:
        return
    assert region_solves(region, atom)
    ok, violation = is_region(lts, region)
    assert ok, violation


@settings(**COMMON)
@given(lts=small_lts(), pick=st.integers(min_value=0, max_value=10 ** 6))
def test_solver_complete_against_bounded_oracle(lts, pick):
    atoms = enumerate_atoms(lts, "both")
    if not atoms:
        return
    atom = atoms[pick % len(atoms)]
    region = solve_atom(lts, atom)
    if region is None:
        # the exact decision is negative, so no bounded region may solve it
        assert not oracle_solves(lts, atom, bound=3)
    else:
        # and a positive decision must cover everything the oracle can do
        assert region_solves(region, atom)


@settings(**COMMON)
@given(lts=small_lts(), prop=st.sampled_from(("ssp", "essp", "both")))
def test_witness_synthesis_round_trip(lts, prop):
    outcome = check_property(lts, prop)
    if isinstance(outcome, FailureReport):
        for atom in outcome.atoms[:2]:
            assert solve_atom(lts, atom) is None
        return
    assert isinstance(outcome, Witness)
    net = synthesized_net(lts, outcome)
    if prop == "ssp":
        phi = verify_embedding(lts, net)
        assert isinstance(phi, dict), getattr(phi, "reason", phi)
    elif prop == "essp":
        assert verify_language_simulation(lts, net) is None
    else:
        assert verify_realization(lts, net) is None
