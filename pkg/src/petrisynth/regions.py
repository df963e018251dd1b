"""Regions of an LTS: the abstract counterpart of Petri-net places.

A region assigns every state a nonnegative token count (`sup`) and every
event a consume/produce pair (`con`, `pro`) such that along every edge
s --e--> s' the tokens suffice (con(e) <= sup(s)) and are updated additively
(sup(s') = sup(s) - con(e) + pro(e)).  Because the host LTS is reachable and
deterministic, `sup` is already determined by its value at the initial state
together with `con` and `pro`; `expand_region` performs exactly that
propagation.  Support values are stored explicitly anyway: solvers and
verifiers read sup(s) constantly, so we pay the propagation once.

All counts are arbitrary-precision integers; generated instances and solver
scaling can exceed machine ranges.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .lts import Lts


class RegionError(ValueError):
    """Candidate maps do not form a region of the host LTS."""


class Region:
    """Immutable (sup, con, pro) triple. `eff(e) = pro(e) - con(e)`."""

    __slots__ = ("sup", "con", "pro", "_hash")

    def __init__(self, sup: Mapping[str, int], con: Mapping[str, int], pro: Mapping[str, int]):
        object.__setattr__(self, "sup", dict(sup))
        object.__setattr__(self, "con", dict(con))
        object.__setattr__(self, "pro", dict(pro))
        object.__setattr__(self, "_hash", hash((
            tuple(sorted(self.sup.items())),
            tuple(sorted(self.con.items())),
            tuple(sorted(self.pro.items())))))

    def __setattr__(self, key, value):
        raise AttributeError("Region values are immutable")

    def eff(self, event: str) -> int:
        return self.pro[event] - self.con[event]

    def restricted(self, lts: Lts) -> "Region":
        """Restriction to a sub-LTS: regions survive every removal unchanged."""
        return Region({s: self.sup[s] for s in lts.states},
                      {e: self.con[e] for e in lts.events},
                      {e: self.pro[e] for e in lts.events})

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return self.sup == other.sup and self.con == other.con and self.pro == other.pro

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Region, (self.sup, self.con, self.pro))

    def __repr__(self):
        return f"Region(sup={self.sup!r}, con={self.con!r}, pro={self.pro!r})"


def expand_region(lts: Lts, sup_init: int, con: Mapping[str, int], pro: Mapping[str, int]) -> Region:
    """Propagate sup from the initial state; the unique completion if one exists.

    Raises RegionError when the candidate is inconsistent: a join state is
    reached with two different support values, an edge consumes more than the
    source offers, or a computed support turns negative.
    """
    for label, mapping in (("con", con), ("pro", pro)):
        missing = sorted(lts.events - mapping.keys())
        if missing:
            raise RegionError(f"{label} undefined for events: {' '.join(missing)}")
        for event in lts.events:
            value = mapping[event]
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise RegionError(f"{label}({event}) must be a nonnegative integer, got {value!r}")
    if not isinstance(sup_init, int) or isinstance(sup_init, bool) or sup_init < 0:
        raise RegionError(f"sup at the initial state must be a nonnegative integer, got {sup_init!r}")

    sup = {lts.initial: sup_init}
    # Walk edges in canonical order; a plain worklist suffices because every
    # state is reachable, so each gets a value before its out-edges are read.
    pending = [lts.initial]
    seen = {lts.initial}
    while pending:
        state = pending.pop()
        for event, target in lts.out_edges(state):
            if con[event] > sup[state]:
                raise RegionError(
                    f"con({event})={con[event]} exceeds sup({state})={sup[state]} "
                    f"at edge {state} {event} {target}")
            value = sup[state] - con[event] + pro[event]
            if value < 0:
                raise RegionError(f"negative support {value} at {target}")
            known = sup.get(target)
            if known is None:
                sup[target] = value
            elif known != value:
                raise RegionError(
                    f"inconsistent support at join state {target}: {known} vs {value}")
            if target not in seen:
                seen.add(target)
                pending.append(target)
    return Region(sup, dict(con), dict(pro))


def is_region(lts: Lts, candidate: Region) -> tuple[bool, str | None]:
    """Total check of both region conditions; reports the first violating edge."""
    for label, mapping, keys in (("sup", candidate.sup, lts.states),
                                 ("con", candidate.con, lts.events),
                                 ("pro", candidate.pro, lts.events)):
        missing = sorted(keys - mapping.keys())
        if missing:
            raise RegionError(f"{label} undefined for: {' '.join(missing)}")
    for src, event, dst in lts.edges:
        have = candidate.sup[src]
        need = candidate.con[event]
        if need > have:
            return False, f"{src} {event} {dst}: con({event})={need} > sup({src})={have}"
        expected = have - need + candidate.pro[event]
        if candidate.sup[dst] != expected:
            return False, (f"{src} {event} {dst}: sup({dst})={candidate.sup[dst]} "
                           f"!= {have}-{need}+{candidate.pro[event]}={expected}")
    return True, None


def path_support(region: Region, lts: Lts, path: Iterable[tuple[str, str, str]]) -> int:
    """sup at the end of a path, computed as start support plus summed effects.

    The path must be a connected edge sequence of the LTS; an empty path is
    anchored at the initial state.  The computed value is checked against the
    stored support of the end state.
    """
    path = tuple(path)
    if not path:
        return region.sup[lts.initial]
    previous_dst = None
    total = region.sup[path[0][0]]
    for src, event, dst in path:
        if not lts.has_edge(src, event, dst):
            raise RegionError(f"edge not in the LTS: {src} {event} {dst}")
        if previous_dst is not None and src != previous_dst:
            raise RegionError(f"disconnected path at {src} (previous edge ended in {previous_dst})")
        total += region.pro[event] - region.con[event]
        previous_dst = dst
    if total != region.sup[previous_dst]:
        raise RegionError(
            f"path support {total} disagrees with sup({previous_dst})={region.sup[previous_dst]}")
    return total


def render_region(region: Region, lts: Lts) -> str:
    """One-line human-readable rendering with stable field order."""
    events = " ".join(f"{e}:{region.con[e]}/{region.pro[e]}" for e in sorted(lts.events))
    sups = " ".join(f"{s}={region.sup[s]}" for s in sorted(lts.states))
    return f"region sup(ι)={region.sup[lts.initial]}; {events}; sup: {sups}"
