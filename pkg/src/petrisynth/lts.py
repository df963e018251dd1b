"""Labeled transition systems: data model, text format, language and isomorphism.

An LTS here is always finite, deterministic, initialized and reachable; the
constructor enforces all four, so every `Lts` value in the rest of the package
can rely on them.  Values are immutable after construction and safe to share
across threads and worker processes.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Optional


class LtsError(ValueError):
    """Malformed document or broken structural invariant."""


class Lts:
    """A deterministic reachable transition system with an initial state.

    Edges are stored in canonical order (sorted by source, then event), so
    every traversal that walks ``self.edges`` or ``self.out_edges(s)`` is
    reproducible across runs and processes.
    """

    __slots__ = ("name", "initial", "edges", "states", "events", "_delta", "_out", "_hash")

    def __init__(self, name: str, initial: str, edges: Iterable[tuple[str, str, str]],
                 events: Iterable[str] = ()):
        for token in (name, initial):
            _check_token(token)
        edge_set = set()
        for edge in edges:
            src, event, dst = edge
            _check_token(src), _check_token(event), _check_token(dst)
            edge_set.add((src, event, dst))
        canonical = tuple(sorted(edge_set))

        delta: dict[tuple[str, str], str] = {}
        for src, event, dst in canonical:
            prev = delta.get((src, event))
            if prev is not None and prev != dst:
                raise LtsError(
                    f"determinism violated: {src} {event} {prev} clashes with {src} {event} {dst}")
            delta[(src, event)] = dst

        states = {initial}
        labels = set()
        for src, event, dst in canonical:
            states.add(src)
            states.add(dst)
            labels.add(event)
        event_set = labels | set(events)
        if not labels <= event_set:
            raise LtsError("declared event set does not cover all edge labels")
        overlap = states & event_set
        if overlap:
            raise LtsError(f"state and event namespaces overlap: {sorted(overlap)}")

        out: dict[str, tuple[tuple[str, str], ...]] = {s: () for s in states}
        grouped: dict[str, list[tuple[str, str]]] = {}
        for src, event, dst in canonical:
            grouped.setdefault(src, []).append((event, dst))
        for src, lst in grouped.items():
            out[src] = tuple(lst)  # canonical already: edges were sorted

        object.__setattr__(self, "name", name)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "edges", canonical)
        object.__setattr__(self, "states", frozenset(states))
        object.__setattr__(self, "events", frozenset(event_set))
        object.__setattr__(self, "_delta", delta)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_hash", hash((initial, canonical, tuple(sorted(event_set)))))

        unreachable = sorted(states - self._reachable_from_initial())
        if unreachable:
            raise LtsError(f"unreachable states: {' '.join(unreachable)}")

    def __setattr__(self, key, value):
        raise AttributeError("Lts values are immutable")

    def __eq__(self, other):
        if not isinstance(other, Lts):
            return NotImplemented
        return (self.initial == other.initial and self.edges == other.edges
                and self.events == other.events and self.name == other.name)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"Lts({self.name!r}, states={len(self.states)}, "
                f"events={len(self.events)}, edges={len(self.edges)})")

    def __reduce__(self):
        # default slot pickling would trip the immutability guard
        return (Lts, (self.name, self.initial, self.edges, tuple(sorted(self.events))))

    @property
    def key(self):
        """Structural identity (name ignored); usable as a memo key."""
        return (self.initial, self.edges, tuple(sorted(self.events)))

    def successor(self, state: str, event: str) -> Optional[str]:
        """delta(state, event), or None when undefined."""
        if state not in self.states:
            raise LtsError(f"unknown state: {state}")
        if event not in self.events:
            raise LtsError(f"unknown event: {event}")
        return self._delta.get((state, event))

    def out_edges(self, state: str) -> tuple[tuple[str, str], ...]:
        """Outgoing (event, target) pairs of a state, canonically ordered."""
        if state not in self.states:
            raise LtsError(f"unknown state: {state}")
        return self._out[state]

    def enabled(self, state: str) -> tuple[str, ...]:
        return tuple(event for event, _ in self.out_edges(state))

    def has_edge(self, src: str, event: str, dst: str) -> bool:
        return self._delta.get((src, event)) == dst

    def path_from_initial(self, state: str) -> tuple[tuple[str, str, str], ...]:
        """One shortest edge path from the initial state to `state` (BFS certificate)."""
        if state not in self.states:
            raise LtsError(f"unknown state: {state}")
        parent: dict[str, tuple[str, str, str]] = {}
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            current = queue.popleft()
            if current == state:
                break
            for event, dst in self._out[current]:
                if dst not in seen:
                    seen.add(dst)
                    parent[dst] = (current, event, dst)
                    queue.append(dst)
        path = []
        cursor = state
        while cursor != self.initial:
            edge = parent[cursor]
            path.append(edge)
            cursor = edge[0]
        path.reverse()
        return tuple(path)

    def relabeled(self, state_map: Mapping[str, str], event_map: Mapping[str, str]) -> "Lts":
        """Copy with states and events renamed through the given bijections."""
        edges = [(state_map.get(s, s), event_map.get(e, e), state_map.get(t, t))
                 for s, e, t in self.edges]
        events = [event_map.get(e, e) for e in self.events]
        return Lts(self.name, state_map.get(self.initial, self.initial), edges, events)

    def _reachable_from_initial(self) -> set[str]:
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            current = queue.popleft()
            for _, dst in self._out[current]:
                if dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
        return seen


def _check_token(token) -> None:
    if not isinstance(token, str) or not token or any(c.isspace() for c in token):
        raise LtsError(f"identifiers must be non-empty tokens without whitespace: {token!r}")
    if "#" in token:
        raise LtsError(f"identifiers must not contain '#': {token!r}")


def parse_lts(text: str) -> Lts:
    """Parse the line-oriented LTS format.

    Line 1 is ``lts <name>``, line 2 is ``initial <state>``, every further
    line is one ``<src> <event> <dst>`` edge.  '#' starts a comment, blank
    lines are ignored, states and events are declared by occurrence.
    """
    name = None
    initial = None
    edges = []
    targets: dict[tuple[str, str], str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if name is None:
            if len(tokens) != 2 or tokens[0] != "lts":
                raise LtsError(f"line {lineno}: expected 'lts <name>', got {line!r}")
            name = tokens[1]
        elif initial is None:
            if len(tokens) != 2 or tokens[0] != "initial":
                raise LtsError(f"line {lineno}: expected 'initial <state>', got {line!r}")
            initial = tokens[1]
        else:
            if len(tokens) != 3:
                raise LtsError(f"line {lineno}: expected '<src> <event> <dst>', got {line!r}")
            src, event, dst = tokens
            prev = targets.get((src, event))
            if prev is not None and prev != dst:
                raise LtsError(
                    f"line {lineno}: determinism violated: {src} {event} {prev} "
                    f"clashes with {src} {event} {dst}")
            targets[(src, event)] = dst
            edges.append((src, event, dst))
    if name is None:
        raise LtsError("missing 'lts <name>' header")
    if initial is None:
        raise LtsError("missing initial declaration")
    return Lts(name, initial, edges)


def serialize_lts(lts: Lts) -> str:
    lines = [f"lts {lts.name}", f"initial {lts.initial}"]
    lines.extend(f"{src} {event} {dst}" for src, event, dst in lts.edges)
    return "\n".join(lines) + "\n"


def is_word_in_language(lts: Lts, word: Iterable[str]) -> bool:
    """True iff the event sequence can be run from the initial state."""
    state = lts.initial
    for event in word:
        if event not in lts.events:
            raise LtsError(f"unknown event: {event}")
        state = lts._delta.get((state, event))
        if state is None:
            return False
    return True


def lts_isomorphic(a: Lts, b: Lts) -> Optional[dict[str, str]]:
    """The unique initial-state-preserving isomorphism, or None.

    Determinism plus reachability pin the candidate bijection down completely:
    a synchronized breadth-first walk either builds it or refutes it.
    """
    if len(a.states) != len(b.states) or len(a.edges) != len(b.edges):
        return None
    phi = {a.initial: b.initial}
    reverse = {b.initial: a.initial}
    queue = deque([(a.initial, b.initial)])
    visited = {a.initial}
    while queue:
        sa, sb = queue.popleft()
        out_a = a.out_edges(sa)
        out_b = b.out_edges(sb)
        if tuple(e for e, _ in out_a) != tuple(e for e, _ in out_b):
            return None
        for (event, ta), (_, tb) in zip(out_a, out_b):
            known = phi.get(ta)
            if known is not None:
                if known != tb:
                    return None
            else:
                if tb in reverse:
                    return None
                phi[ta] = tb
                reverse[tb] = ta
            if ta not in visited:
                visited.add(ta)
                queue.append((ta, tb))
    if len(phi) != len(a.states):
        return None
    return phi
