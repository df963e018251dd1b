"""Separation atoms and their solution by exact rational feasibility.

Two states s != s' form a states separation atom (SSA); an event e together
with a state where e does not occur forms an event/state separation atom
(ESSA).  A region solves an SSA when its supports differ and an ESSA when
con(e) exceeds the support.  An LTS has the SSP (resp. ESSP) when every SSA
(resp. ESSA) is solvable; SSP corresponds to embeddability into a net's
reachability graph, ESSP to language simulation, and both together to
realization up to isomorphism.

solve_atom turns one atom into a linear feasibility problem: unknowns are
sup(initial) and con/pro per event, supports of the remaining states are
affine expressions along a breadth-first spanning tree, chords contribute
equalities, every edge contributes con(e) <= sup(source), and the atom adds
its defining inequality with slack 1.  A rational solution scaled by the
least common denominator is an integer region; infeasibility of every branch
proves the atom unsolvable, exactly (no floating point in the decision path).
"""

from __future__ import annotations

import multiprocessing
from collections import deque
from functools import lru_cache
from math import lcm

from .lts import Lts
from .regions import Region, expand_region, render_region
from .simplex import feasible_point

PROPERTIES = ("ssp", "essp", "both")

# Atoms dispatched to LP workers per round; constant (not tied to the job
# count) so the region pool evolves identically for every --jobs value.
_CHUNK = 32


class SeparationError(ValueError):
    """Malformed atom or unknown property name."""


def _check_property(prop: str) -> None:
    if prop not in PROPERTIES:
        raise SeparationError(f"unknown property: {prop!r} (expected ssp, essp or both)")


def check_atom(lts: Lts, atom) -> None:
    """Raise SeparationError unless `atom` is a separation atom of the LTS."""
    if not (isinstance(atom, tuple) and len(atom) == 3):
        raise SeparationError(f"malformed atom: {atom!r}")
    kind, first, second = atom
    if kind == "ssa":
        for state in (first, second):
            if state not in lts.states:
                raise SeparationError(f"unknown state in atom: {state}")
        if first == second:
            raise SeparationError(f"states separation atom needs two distinct states: {first}")
    elif kind == "essa":
        if first not in lts.events:
            raise SeparationError(f"unknown event in atom: {first}")
        if second not in lts.states:
            raise SeparationError(f"unknown state in atom: {second}")
        if lts.successor(second, first) is not None:
            raise SeparationError(f"{first} occurs at {second}: not an event/state atom")
    else:
        raise SeparationError(f"unknown atom kind: {kind!r}")


def enumerate_atoms(lts: Lts, prop: str) -> list[tuple[str, str, str]]:
    """All atoms of the property, canonically ordered (SSAs first, each sorted)."""
    _check_property(prop)
    atoms: list[tuple[str, str, str]] = []
    states = sorted(lts.states)
    if prop in ("ssp", "both"):
        for i, s in enumerate(states):
            for t in states[i + 1:]:
                atoms.append(("ssa", s, t))
    if prop in ("essp", "both"):
        for event in sorted(lts.events):
            for s in states:
                if lts.successor(s, event) is None:
                    atoms.append(("essa", event, s))
    return atoms


def region_solves(region: Region, atom) -> bool:
    kind, first, second = atom
    if kind == "ssa":
        return region.sup[first] != region.sup[second]
    return region.con[first] > region.sup[second]


# ---------------------------------------------------------------------------
# The LP backend.

def _accumulate(row: dict[int, int], other: dict[int, int], sign: int) -> None:
    for var, coeff in other.items():
        merged = row.get(var, 0) + sign * coeff
        if merged:
            row[var] = merged
        else:
            del row[var]


@lru_cache(maxsize=512)
def _context(lts: Lts):
    """Shared constraint system of an LTS; the atom adds one more row.

    Variables: 0 is sup(initial), then con/pro per event in sorted order.
    Support of every state is an affine expression in these, derived along a
    breadth-first spanning tree; each chord then forces the usual update
    equation as an equality between two expressions.
    """
    events = sorted(lts.events)
    con_var = {event: 1 + 2 * i for i, event in enumerate(events)}
    pro_var = {event: 2 + 2 * i for i, event in enumerate(events)}
    num_vars = 1 + 2 * len(events)

    expr: dict[str, dict[int, int]] = {lts.initial: {0: 1}}
    chords = []
    edge_rows = []
    queue = deque([lts.initial])
    while queue:
        state = queue.popleft()
        source = expr[state]
        for event, target in lts.out_edges(state):
            row = dict(source)
            _accumulate(row, {con_var[event]: 1}, -1)
            edge_rows.append((row, ">=", 0))  # con(e) <= sup(state)
            reached = dict(source)
            _accumulate(reached, {con_var[event]: 1}, -1)
            _accumulate(reached, {pro_var[event]: 1}, 1)
            known = expr.get(target)
            if known is None:
                expr[target] = reached
                queue.append(target)
            else:
                _accumulate(reached, known, -1)
                if reached:
                    chords.append((reached, "==", 0))
    # sup >= 0 is already implied wherever an edge leaves the state
    sinks = [(expr[s], ">=", 0) for s in sorted(lts.states) if not lts.out_edges(s)]
    base = chords + edge_rows + sinks
    return num_vars, con_var, pro_var, expr, base


def solve_atom(lts: Lts, atom) -> Region | None:
    """A region solving the atom, or None when provably none exists."""
    check_atom(lts, atom)
    num_vars, con_var, pro_var, expr, base = _context(lts)
    kind, first, second = atom
    branches = []
    if kind == "essa":
        row = {con_var[first]: 1}
        _accumulate(row, expr[second], -1)
        branches.append(row)  # con(e) >= sup(s) + 1
    else:
        low, high = sorted((first, second))
        for a, b in ((low, high), (high, low)):
            row = dict(expr[a])
            _accumulate(row, expr[b], -1)
            branches.append(row)  # sup(a) >= sup(b) + 1

    for row in branches:
        point = feasible_point(num_vars, base + [(row, ">=", 1)])
        if point is None:
            continue
        scale = lcm(*(int(value.denominator) for value in point)) if point else 1
        values = [int(value * scale) for value in point]
        con = {event: values[var] for event, var in con_var.items()}
        pro = {event: values[var] for event, var in pro_var.items()}
        return expand_region(lts, values[0], con, pro)
    return None


# ---------------------------------------------------------------------------
# Seed regions: cheap families worth trying before any LP runs.

def _saturate(lts: Lts, con: dict[str, int], pro: dict[str, int]) -> Region | None:
    """Complete (con, pro) to a region with the least initial support, if any.

    Relative supports follow from the effects alone; the candidate dies when
    some cycle has a nonzero effect sum (detected as a chord mismatch).
    """
    eff = {event: pro[event] - con[event] for event in lts.events}
    value = {lts.initial: 0}
    queue = deque([lts.initial])
    while queue:
        state = queue.popleft()
        for event, target in lts.out_edges(state):
            reached = value[state] + eff[event]
            known = value.get(target)
            if known is None:
                value[target] = reached
                queue.append(target)
            elif known != reached:
                return None
    shift = max(0, *(-v for v in value.values()),
                *(con[event] - value[state] for state, event, _ in lts.edges))
    return Region({state: v + shift for state, v in value.items()}, con, pro)


def seed_regions(lts: Lts) -> list[Region]:
    """Deterministic candidate pool: one-event counters both ways, plus a
    region consuming one token on exactly the events leaving the initial
    state (solves every ESSA on those events at once when it validates)."""
    seeds = []
    zero = {event: 0 for event in lts.events}
    if lts.edges:
        initial_con = dict(zero)
        for event in lts.enabled(lts.initial):
            initial_con[event] = 1
        candidate = _saturate(lts, initial_con, dict(zero))
        if candidate is not None:
            seeds.append(candidate)
    for event in sorted(lts.events):
        for flavor in ("con", "pro"):
            con, pro = dict(zero), dict(zero)
            (con if flavor == "con" else pro)[event] = 1
            candidate = _saturate(lts, con, pro)
            if candidate is not None and candidate not in seeds:
                seeds.append(candidate)
    return seeds


# ---------------------------------------------------------------------------
# Property checking.

_WORKER_LTS: Lts | None = None


def _solve_for_worker(atom):
    return solve_atom(_WORKER_LTS, atom)


def _first_hit(pool: list[Region], atom) -> Region | None:
    for region in pool:
        if region_solves(region, atom):
            return region
    return None


def scan_atoms(lts: Lts, atoms, jobs: int = 1):
    """Solve atoms against a growing region pool.

    Returns (assigned, pool, unsolvable): a region per solvable atom, the
    pool in discovery order, and the unsolvable atoms in input order.  The
    chunk merge re-checks the pool before accepting a freshly solved region,
    so the outcome is identical for every job count (workers only ever cost
    duplicate LP runs, never change a decision or a region).
    """
    atoms = list(atoms)
    pool = seed_regions(lts)
    assigned: dict[tuple, Region] = {}
    unsolvable: list[tuple] = []

    workers = None
    global _WORKER_LTS
    try:
        if jobs > 1 and len(atoms) > 1:
            _WORKER_LTS = lts  # inherited on fork; no payload pickling
            workers = multiprocessing.get_context("fork").Pool(jobs)
        for start in range(0, len(atoms), _CHUNK):
            chunk = atoms[start:start + _CHUNK]
            fresh = []
            for atom in chunk:
                hit = _first_hit(pool, atom)
                if hit is not None:
                    assigned[atom] = hit
                else:
                    fresh.append(atom)
            if not fresh:
                continue
            if workers is not None:
                solved = workers.map(_solve_for_worker, fresh)
            else:
                solved = [solve_atom(lts, atom) for atom in fresh]
            for atom, region in zip(fresh, solved):
                if region is None:
                    unsolvable.append(atom)
                    continue
                hit = _first_hit(pool, atom)
                if hit is not None:
                    assigned[atom] = hit
                else:
                    pool.append(region)
                    assigned[atom] = region
    finally:
        if workers is not None:
            workers.close()
            workers.join()
        _WORKER_LTS = None
    return assigned, pool, unsolvable


class FailureReport:
    """Negative decision: the complete list of unsolvable atoms."""

    __slots__ = ("lts", "property", "atoms")

    def __init__(self, lts: Lts, prop: str, atoms):
        self.lts = lts
        self.property = prop
        self.atoms = tuple(atoms)

    def render(self) -> str:
        lines = []
        for kind, first, second in self.atoms:
            lines.append(f"unsolvable {kind} {first} {second}")
        return "\n".join(lines)

    def __repr__(self):
        return f"FailureReport({self.property}, {len(self.atoms)} atoms)"


class Witness:
    """Positive decision: regions plus, per atom, the index of a solver."""

    __slots__ = ("lts", "property", "regions", "cover")

    def __init__(self, lts: Lts, prop: str, regions, cover):
        self.lts = lts
        self.property = prop
        self.regions = tuple(regions)
        self.cover = dict(cover)

    def render(self) -> str:
        return "\n".join(render_region(region, self.lts) for region in self.regions)

    def __repr__(self):
        return (f"Witness({self.property}, {len(self.regions)} regions, "
                f"{len(self.cover)} atoms)")


def _combination(regions: list[Region], lts: Lts) -> Region | None:
    """Conic combination dominating each member lexicographically.

    Scaling a region or adding two preserves both region axioms, and with a
    factor exceeding every accumulated support the sign of the new member's
    sup difference survives, so the result solves every SSA any member
    solves.  (Not true for ESSAs: a member with a deeply negative margin can
    drown an earlier positive one.)
    """
    acc = None
    for region in regions:
        if acc is None:
            acc = region
            continue
        factor = 1 + max(acc.sup.values())
        acc = Region(
            {s: factor * region.sup[s] + acc.sup[s] for s in acc.sup},
            {e: factor * region.con[e] + acc.con[e] for e in acc.con},
            {e: factor * region.pro[e] + acc.pro[e] for e in acc.pro})
    return acc


def _shrink(lts: Lts, atoms, pool):
    """Greedy set cover of the atoms by the region pool."""
    candidates = list(pool)
    ssa_atoms = [atom for atom in atoms if atom[0] == "ssa"]
    if ssa_atoms:
        members = []
        for region in candidates:
            if any(region_solves(region, atom) for atom in ssa_atoms):
                members.append(region)
        combined = _combination(members, lts)
        if combined is not None and combined not in candidates:
            candidates.append(combined)

    solves = [frozenset(atom for atom in atoms if region_solves(region, atom))
              for region in candidates]
    uncovered = set(atoms)
    chosen: list[Region] = []
    chosen_sets: list[frozenset] = []
    while uncovered:
        best = max(range(len(candidates)), key=lambda i: len(solves[i] & uncovered))
        gain = solves[best] & uncovered
        if not gain:
            raise SeparationError("internal: pool stopped covering resolved atoms")
        chosen.append(candidates[best])
        chosen_sets.append(solves[best])
        uncovered -= gain
    cover = {}
    for atom in atoms:
        for index, covered in enumerate(chosen_sets):
            if atom in covered:
                cover[atom] = index
                break
    return chosen, cover


def assemble_witness(lts: Lts, prop: str, atoms, assigned) -> Witness:
    """Witness from a complete atom -> region assignment, first-use order."""
    regions: list[Region] = []
    index_of: dict[Region, int] = {}
    cover = {}
    for atom in atoms:
        region = assigned[atom]
        index = index_of.get(region)
        if index is None:
            index = len(regions)
            regions.append(region)
            index_of[region] = index
        cover[atom] = index
    return Witness(lts, prop, regions, cover)


def check_property(lts: Lts, prop: str, *, jobs: int = 1, shrink: bool = False):
    """Decide SSP/ESSP/both; Witness on success, FailureReport otherwise."""
    _check_property(prop)
    atoms = enumerate_atoms(lts, prop)
    assigned, pool, unsolvable = scan_atoms(lts, atoms, jobs=jobs)
    if unsolvable:
        return FailureReport(lts, prop, unsolvable)
    if shrink:
        regions, cover = _shrink(lts, atoms, pool)
        return Witness(lts, prop, regions, cover)
    return assemble_witness(lts, prop, atoms, assigned)
