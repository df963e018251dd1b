"""Synthesized nets, reachability graphs, and the three implementation checks.

A witness (one region per place) turns into a weighted Petri net: f(R,e) is
the region's con(e), f(e,R) its pro(e), and the initial marking its support
at the initial state.  The net embeds / language-simulates / realizes the
source LTS exactly when the witness covers the SSP / ESSP / both, so the
verifiers here close the loop behind the solver.

The embedding and language checks never explore the net: the simulation map
is forced (markings propagate deterministically along the LTS edges from the
initial marking), so they terminate even for unbounded nets.  Realization
explores, but caps the search at |states|+1 markings since any realizing net
has exactly |states| of them.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .lts import Lts, LtsError, lts_isomorphic, _check_token
from .regions import Region, RegionError, is_region


class SynthesisError(ValueError):
    """Ill-formed net, or witness and LTS that do not belong together."""


class CapExceeded:
    """Reachability exploration stopped: more markings than the cap allows."""

    __slots__ = ("cap", "count")

    def __init__(self, cap: int, count: int):
        self.cap = cap
        self.count = count

    def __repr__(self):
        return f"CapExceeded(cap={self.cap}, count={self.count})"


class VerifyFailure:
    """First violated condition of an implementation check."""

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        self.reason = reason

    def render(self) -> str:
        return self.reason

    def __repr__(self):
        return f"VerifyFailure({self.reason!r})"


class PetriNet:
    __slots__ = ("name", "places", "transitions", "flow", "initial_marking", "regions")

    def __init__(self, name: str, places: Iterable[str], transitions: Iterable[str],
                 flow: Mapping[tuple[str, str], int], initial_marking: Mapping[str, int],
                 regions: Mapping[str, Region] | None = None):
        _check_token(name)
        self.name = name
        self.places = tuple(sorted(set(places)))
        self.transitions = tuple(sorted(set(transitions)))
        for token in self.places + self.transitions:
            _check_token(token)
        clashes = set(self.places) & set(self.transitions)
        if clashes:
            raise SynthesisError(f"places and transitions must be disjoint: {sorted(clashes)}")
        place_set, transition_set = set(self.places), set(self.transitions)
        self.flow = {}
        for (a, b), weight in flow.items():
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 0:
                raise SynthesisError(f"flow({a},{b}) must be a nonnegative integer")
            if a in place_set and b in transition_set:
                pass
            elif a in transition_set and b in place_set:
                pass
            else:
                raise SynthesisError(f"flow endpoints must pair a place with a transition: {a}, {b}")
            if weight:
                self.flow[(a, b)] = weight
        self.initial_marking = {}
        for place in self.places:
            tokens = initial_marking.get(place)
            if tokens is None:
                raise SynthesisError(f"initial marking undefined for place {place}")
            if not isinstance(tokens, int) or isinstance(tokens, bool) or tokens < 0:
                raise SynthesisError(f"initial marking of {place} must be a nonnegative integer")
            self.initial_marking[place] = tokens
        extra = set(initial_marking) - place_set
        if extra:
            raise SynthesisError(f"initial marking mentions unknown places: {sorted(extra)}")
        # regions are carried only by synthesized nets (parsed nets have none)
        self.regions = dict(regions) if regions else {}

    def f(self, a: str, b: str) -> int:
        return self.flow.get((a, b), 0)

    def initial_tuple(self) -> tuple[int, ...]:
        return tuple(self.initial_marking[p] for p in self.places)

    def enabled_at(self, marking: tuple[int, ...], t: str) -> bool:
        return all(marking[i] >= self.f(p, t) for i, p in enumerate(self.places))

    def fire(self, marking: tuple[int, ...], t: str) -> tuple[int, ...]:
        return tuple(marking[i] - self.f(p, t) + self.f(t, p)
                     for i, p in enumerate(self.places))

    def __repr__(self):
        return (f"PetriNet({self.name!r}, {len(self.places)} places, "
                f"{len(self.transitions)} transitions)")


def synthesized_net(lts: Lts, witness) -> PetriNet:
    """One place per witness region, flows from con/pro, marking from sup(initial)."""
    regions = tuple(witness.regions) if hasattr(witness, "regions") else tuple(witness)
    unique: list[Region] = []
    for region in regions:
        ok, violation = _validated(lts, region)
        if not ok:
            raise SynthesisError(f"witness region is not a region of {lts.name}: {violation}")
        if region not in unique:
            unique.append(region)
    prefix = "R"
    while any(f"{prefix}{i}" in lts.events for i in range(len(unique))):
        prefix += "R"
    flow = {}
    marking = {}
    carried = {}
    for i, region in enumerate(unique):
        place = f"{prefix}{i}"
        for event in lts.events:
            flow[(place, event)] = region.con[event]
            flow[(event, place)] = region.pro[event]
        marking[place] = region.sup[lts.initial]
        carried[place] = region
    return PetriNet(lts.name, marking.keys(), lts.events, flow, marking, carried)


def _validated(lts: Lts, region: Region):
    try:
        return is_region(lts, region)
    except RegionError as err:
        return False, str(err)


def reachability_graph(net: PetriNet, cap: int):
    """Breadth-first marking exploration; Lts if |RS| <= cap, else CapExceeded.

    Marking states are rendered `(c1,c2,...)` in canonical place order.
    """
    if cap < 1:
        raise SynthesisError(f"cap must be >= 1, got {cap}")
    initial = net.initial_tuple()
    seen = {initial}
    queue = deque([initial])
    edges = []
    while queue:
        marking = queue.popleft()
        for t in net.transitions:
            if not net.enabled_at(marking, t):
                continue
            target = net.fire(marking, t)
            edges.append((_render_marking(marking), t, _render_marking(target)))
            if target not in seen:
                if len(seen) == cap:
                    return CapExceeded(cap, len(seen) + 1)
                seen.add(target)
                queue.append(target)
    return Lts(net.name, _render_marking(initial), edges, net.transitions)


def _render_marking(marking: tuple[int, ...]) -> str:
    return "(" + ",".join(str(c) for c in marking) + ")"


def _propagate(lts: Lts, net: PetriNet):
    """The unique candidate simulation map, state -> marking tuple.

    Any simulation must send the initial state to M0 and then follow the
    firing rule edge by edge; a disabled transition or a join mismatch on the
    way proves no simulation exists.
    """
    if set(net.transitions) != lts.events:
        raise SynthesisError("net transitions differ from the LTS events")
    phi = {lts.initial: net.initial_tuple()}
    queue = deque([lts.initial])
    while queue:
        state = queue.popleft()
        marking = phi[state]
        for event, target in lts.out_edges(state):
            if not net.enabled_at(marking, event):
                return None, VerifyFailure(
                    f"edge {state} {event} {target}: {event} not enabled "
                    f"at marking {_render_marking(marking)}")
            fired = net.fire(marking, event)
            known = phi.get(target)
            if known is None:
                phi[target] = fired
                queue.append(target)
            elif known != fired:
                return None, VerifyFailure(
                    f"marking of {target} is path-dependent: "
                    f"{_render_marking(known)} vs {_render_marking(fired)}")
    return phi, None


def verify_embedding(lts: Lts, net: PetriNet):
    """Injective simulation map (state -> marking) or a VerifyFailure."""
    phi, failure = _propagate(lts, net)
    if failure is not None:
        return failure
    by_marking: dict[tuple[int, ...], str] = {}
    for state in sorted(phi):
        other = by_marking.get(phi[state])
        if other is not None:
            return VerifyFailure(
                f"not injective: {other} and {state} share marking {_render_marking(phi[state])}")
        by_marking[phi[state]] = state
    return phi


def verify_language_simulation(lts: Lts, net: PetriNet):
    """None when the net language-simulates the LTS, else a VerifyFailure."""
    phi, failure = _propagate(lts, net)
    if failure is not None:
        return failure
    for event in sorted(lts.events):
        for state in sorted(lts.states):
            if lts.successor(state, event) is None and net.enabled_at(phi[state], event):
                return VerifyFailure(
                    f"{event} does not occur at {state} but fires "
                    f"at marking {_render_marking(phi[state])}")
    return None


def verify_realization(lts: Lts, net: PetriNet):
    """None when the reachability graph is isomorphic to the LTS."""
    if set(net.transitions) != lts.events:
        raise SynthesisError("net transitions differ from the LTS events")
    graph = reachability_graph(net, cap=len(lts.states))
    if isinstance(graph, CapExceeded):
        return VerifyFailure(
            f"net reaches more than {len(lts.states)} markings; cannot be isomorphic")
    if lts_isomorphic(lts, graph) is None:
        return VerifyFailure("reachability graph is not isomorphic to the LTS")
    return None


# ---------------------------------------------------------------------------
# Text format.

def parse_net(text: str) -> PetriNet:
    """Parse the net format: `net <name>`, `place <id> <tokens>`,
    `transition <id>`, `arc <a> <b> <weight>`; '#' comments."""
    name = None
    places: dict[str, int] = {}
    transitions: list[str] = []
    arcs: dict[tuple[str, str], int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "net":
            if name is not None:
                raise SynthesisError(f"line {number}: duplicate net header")
            if len(tokens) != 2:
                raise SynthesisError(f"line {number}: expected 'net <name>'")
            name = tokens[1]
        elif keyword == "place":
            if len(tokens) != 3:
                raise SynthesisError(f"line {number}: expected 'place <id> <tokens>'")
            if tokens[1] in places:
                raise SynthesisError(f"line {number}: duplicate place {tokens[1]}")
            places[tokens[1]] = _parse_count(tokens[2], number, minimum=0)
        elif keyword == "transition":
            if len(tokens) != 2:
                raise SynthesisError(f"line {number}: expected 'transition <id>'")
            if tokens[1] in transitions:
                raise SynthesisError(f"line {number}: duplicate transition {tokens[1]}")
            transitions.append(tokens[1])
        elif keyword == "arc":
            if len(tokens) != 4:
                raise SynthesisError(f"line {number}: expected 'arc <a> <b> <weight>'")
            key = (tokens[1], tokens[2])
            if key in arcs:
                raise SynthesisError(f"line {number}: duplicate arc {tokens[1]} {tokens[2]}")
            arcs[key] = _parse_count(tokens[3], number, minimum=1)
        else:
            raise SynthesisError(f"line {number}: unknown keyword {keyword!r}")
    if name is None:
        raise SynthesisError("missing 'net <name>' header")
    for (a, b) in arcs:
        if not ((a in places and b in transitions) or (a in transitions and b in places)):
            raise SynthesisError(f"arc {a} {b} does not pair a place with a transition")
    try:
        return PetriNet(name, places.keys(), transitions, arcs, places)
    except (LtsError, ValueError) as err:
        raise SynthesisError(str(err)) from None


def _parse_count(token: str, number: int, minimum: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise SynthesisError(f"line {number}: not an integer: {token!r}") from None
    if value < minimum:
        raise SynthesisError(f"line {number}: value must be >= {minimum}, got {value}")
    return value


def serialize_net(net: PetriNet) -> str:
    lines = [f"net {net.name}"]
    for place in net.places:
        lines.append(f"place {place} {net.initial_marking[place]}")
    for t in net.transitions:
        lines.append(f"transition {t}")
    place_set = set(net.places)
    consume = sorted(pair for pair in net.flow if pair[0] in place_set)
    produce = sorted(pair for pair in net.flow if pair[0] not in place_set)
    for p, t in consume:
        lines.append(f"arc {p} {t} {net.flow[(p, t)]}")
    for t, p in produce:
        lines.append(f"arc {t} {p} {net.flow[(t, p)]}")
    return "\n".join(lines) + "\n"
