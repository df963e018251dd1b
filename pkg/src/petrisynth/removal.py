"""The three modification operators: edge, event, and state removal.

Each operator takes the removed set literally and fails loudly instead of
silently repairing the result:

* Edge removal requires closure: an edge whose source becomes unreachable
  counts as removed too, so it must be listed, otherwise the removal measure
  |K| would be wrong.
* Event removal must keep every state reachable; kept events keep all their
  edges, so anything stranded means the removal is invalid.
* State removal induces the subgraph on the survivors, which must all stay
  reachable and must not include the initial state among the removed.

Events left without any edge are dropped from the result in all modes; the
removal measure is unaffected.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .lts import Lts

MODES = ("edge", "event", "state")


class RemovalError(ValueError):
    """Invalid removal: unknown components, broken reachability, or closure."""


class RemovalSet:
    """Mode plus the removed components (edge triples or plain ids)."""

    __slots__ = ("mode", "items")

    def __init__(self, mode: str, items: Iterable):
        if mode not in MODES:
            raise RemovalError(f"unknown removal mode: {mode!r}")
        items = set(items)
        if mode == "edge":
            for item in items:
                if not (isinstance(item, tuple) and len(item) == 3):
                    raise RemovalError(f"edge removal items must be (src, event, dst): {item!r}")
        else:
            for item in items:
                if not isinstance(item, str):
                    raise RemovalError(f"{mode} removal items must be ids: {item!r}")
        self.mode = mode
        self.items = frozenset(items)

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        if not isinstance(other, RemovalSet):
            return NotImplemented
        return self.mode == other.mode and self.items == other.items

    def __hash__(self):
        return hash((self.mode, self.items))

    def sorted_items(self) -> list:
        return sorted(self.items)

    def __repr__(self):
        return f"RemovalSet({self.mode}, {self.sorted_items()})"


def apply_removal(lts: Lts, removal: RemovalSet) -> Lts:
    if removal.mode == "edge":
        return apply_edge_removal(lts, removal.items)
    if removal.mode == "event":
        return apply_event_removal(lts, removal.items)
    return apply_state_removal(lts, removal.items)


def _reachable(initial: str, edges) -> set[str]:
    out: dict[str, list[tuple[str, str]]] = {}
    for src, event, dst in edges:
        out.setdefault(src, []).append((event, dst))
    seen = {initial}
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        for _, dst in out.get(state, ()):
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    return seen


def _fmt_edges(edges) -> str:
    return "; ".join(f"{s} {e} {t}" for s, e, t in sorted(edges))


def apply_edge_removal(lts: Lts, removed: Iterable[tuple[str, str, str]]) -> Lts:
    """Drop exactly the listed edges; unlisted edges must stay reachable."""
    removed = set(removed)
    unknown = removed - set(lts.edges)
    if unknown:
        raise RemovalError(f"not edges of {lts.name}: {_fmt_edges(unknown)}")
    surviving = [edge for edge in lts.edges if edge not in removed]
    reachable = _reachable(lts.initial, surviving)
    stranded = [edge for edge in surviving if edge[0] not in reachable]
    if stranded:
        raise RemovalError(
            "closure violated; these edges are stranded and must be listed too: "
            + _fmt_edges(stranded))
    return Lts(lts.name, lts.initial, surviving)


def apply_event_removal(lts: Lts, removed: Iterable[str]) -> Lts:
    """Drop every edge of the removed events; every state must stay reachable."""
    removed = set(removed)
    unknown = removed - lts.events
    if unknown:
        raise RemovalError(f"not events of {lts.name}: {' '.join(sorted(unknown))}")
    surviving = [edge for edge in lts.edges if edge[1] not in removed]
    reachable = _reachable(lts.initial, surviving)
    stranded = lts.states - reachable
    if stranded:
        raise RemovalError(
            "removal breaks reachability; stranded states: " + " ".join(sorted(stranded)))
    return Lts(lts.name, lts.initial, surviving)


def apply_state_removal(lts: Lts, removed: Iterable[str]) -> Lts:
    """Induced sub-LTS on the survivors, which must all remain reachable."""
    removed = set(removed)
    unknown = removed - lts.states
    if unknown:
        raise RemovalError(f"not states of {lts.name}: {' '.join(sorted(unknown))}")
    if lts.initial in removed:
        raise RemovalError(f"cannot remove the initial state {lts.initial}")
    survivors = lts.states - removed
    induced = [edge for edge in lts.edges if edge[0] in survivors and edge[2] in survivors]
    reachable = _reachable(lts.initial, induced)
    stranded = survivors - reachable
    if stranded:
        raise RemovalError(
            "unreachable survivors (add them to the removal or abort): "
            + " ".join(sorted(stranded)))
    return Lts(lts.name, lts.initial, induced)


def induced_edges_removed(lts: Lts, modified: Lts) -> tuple[tuple[str, str, str], ...]:
    """The edge set K that presents a modification as an edge removal."""
    kept = set(modified.edges)
    return tuple(edge for edge in lts.edges if edge not in kept)


# ---------------------------------------------------------------------------
# Text format: `remove edge <s> <e> <s'>` / `remove event <e>` / `remove state <s>`.

def parse_removal(text: str) -> RemovalSet:
    mode = None
    items: list = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "remove" or len(tokens) < 2:
            raise RemovalError(f"line {number}: expected 'remove <mode> ...'")
        kind = tokens[1]
        if kind not in MODES:
            raise RemovalError(f"line {number}: unknown removal mode {kind!r}")
        if mode is None:
            mode = kind
        elif mode != kind:
            raise RemovalError(f"line {number}: mixed removal modes ({mode} then {kind})")
        if kind == "edge":
            if len(tokens) != 5:
                raise RemovalError(f"line {number}: expected 'remove edge <src> <event> <dst>'")
            item = (tokens[2], tokens[3], tokens[4])
        else:
            if len(tokens) != 3:
                raise RemovalError(f"line {number}: expected 'remove {kind} <id>'")
            item = tokens[2]
        if item in items:
            raise RemovalError(f"line {number}: duplicate removal item")
        items.append(item)
    if mode is None:
        raise RemovalError("empty removal: no 'remove' lines found")
    return RemovalSet(mode, items)


def serialize_removal(removal: RemovalSet) -> str:
    lines = []
    for item in removal.sorted_items():
        if removal.mode == "edge":
            lines.append(f"remove edge {item[0]} {item[1]} {item[2]}")
        else:
            lines.append(f"remove {removal.mode} {item}")
    return "\n".join(lines) + "\n" if lines else ""
