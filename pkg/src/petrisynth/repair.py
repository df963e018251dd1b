"""Exact minimum-removal repair, plus a greedy upper-bound heuristic.

min_removal runs iterative deepening over removal-set size: all valid
candidates of size k are tried before any of size k+1, so the first success
is optimal.  The search is exponential by design; the underlying decision
problems are NP-complete, and the honest budget is O((|S|+|E|)^k) checks.

Per-candidate work stays small through an incremental recheck: a removal
child only needs its *suspect* atoms solved, namely the atoms that were
already unsolvable in the root plus the event/state atoms freshly created by
removed edges.  Every other atom of the child is an atom of the root that
some root region solves, and root regions remain regions of every removal
child (children only lose edges), so those atoms stay solved.  Candidate
checks are memoized by the child's structural key, since different removal
sets can produce identical children.
"""

from __future__ import annotations

import multiprocessing
from itertools import combinations

from .lts import Lts
from .removal import MODES, RemovalError, RemovalSet, apply_removal
from .separation import (Witness, assemble_witness, check_property, enumerate_atoms,
                         region_solves, scan_atoms, solve_atom)

RELATIONS = ("embedding", "language", "realization")

# which separation property certifies which implementation relation
CHECK_OF = {"embedding": "ssp", "language": "essp", "realization": "both"}

_CANDIDATE_CHUNK = 16


class RepairError(ValueError):
    """Bad arguments, or a heuristic run that cannot make progress."""


class NoneWithinBudget:
    """Exhaustive negative answer: no valid removal of size <= k_max works."""

    __slots__ = ("mode", "property", "k_max")

    def __init__(self, mode: str, prop: str, k_max: int):
        self.mode = mode
        self.property = prop
        self.k_max = k_max

    def render(self) -> str:
        return f"no {self.mode} removal within budget k_max={self.k_max} for {self.property}"

    def __repr__(self):
        return f"NoneWithinBudget({self.mode}, {self.property}, k_max={self.k_max})"


class RepairResult:
    __slots__ = ("mode", "property", "removed", "repaired", "witness", "k")

    def __init__(self, mode: str, prop: str, removed: RemovalSet, repaired: Lts,
                 witness: Witness):
        self.mode = mode
        self.property = prop
        self.removed = removed
        self.repaired = repaired
        self.witness = witness
        self.k = len(removed)

    def render(self) -> str:
        lines = []
        for item in self.removed.sorted_items():
            if self.removed.mode == "edge":
                lines.append(f"remove edge {item[0]} {item[1]} {item[2]}")
            else:
                lines.append(f"remove {self.removed.mode} {item}")
        lines.append(f"k={self.k}")
        lines.append(f"property={self.property}")
        lines.append(f"mode={self.mode}")
        witness_text = self.witness.render()
        if witness_text:
            lines.append(witness_text)
        return "\n".join(lines)

    def __repr__(self):
        return f"RepairResult({self.mode}, {self.property}, k={self.k})"


def _validate(lts: Lts, mode: str, prop: str) -> str:
    if mode not in MODES:
        raise RepairError(f"unknown removal mode: {mode!r}")
    if prop not in RELATIONS:
        raise RepairError(f"unknown implementation relation: {prop!r}")
    return CHECK_OF[prop]


def _components(lts: Lts, mode: str) -> list:
    if mode == "edge":
        return list(lts.edges)
    if mode == "event":
        return sorted(lts.events)
    return sorted(lts.states - {lts.initial})


def _hot_scores(components: list, mode: str, failed) -> dict:
    """How often a removable component appears in a currently-unsolvable atom."""
    states = set()
    events = set()
    for kind, first, second in failed:
        if kind == "ssa":
            states.update((first, second))
        else:
            events.add(first)
            states.add(second)
    score = {}
    for component in components:
        if mode == "edge":
            src, event, dst = component
            score[component] = int(src in states) + int(dst in states) + int(event in events)
        elif mode == "event":
            score[component] = int(component in events)
        else:
            score[component] = int(component in states)
    return score


def _child_of(lts: Lts, mode: str, candidate) -> Lts | None:
    try:
        return apply_removal(lts, RemovalSet(mode, candidate))
    except RemovalError:
        return None


def _suspect_failures(root: Lts, child: Lts, failed, pool, check_prop: str,
                      stop_early: bool) -> int:
    """Count the child's unsolvable atoms (all of them live among the suspects)."""
    suspects = []
    for atom in failed:
        kind, first, second = atom
        if kind == "ssa":
            if first in child.states and second in child.states:
                suspects.append(atom)
        elif first in child.events and second in child.states:
            suspects.append(atom)
    if check_prop != "ssp":
        child_edges = set(child.edges)
        for src, event, dst in root.edges:
            if (src, event, dst) not in child_edges and src in child.states \
                    and event in child.events:
                suspects.append(("essa", event, src))
    count = 0
    local = []
    for atom in suspects:
        if any(region_solves(region, atom) for region in pool) \
                or any(region_solves(region, atom) for region in local):
            continue
        region = solve_atom(child, atom)
        if region is None:
            count += 1
            if stop_early:
                return count
        else:
            local.append(region)
    return count


# Worker-side context, inherited by forked processes (set before Pool creation).
_SEARCH: tuple | None = None


def _worker_passes(candidate):
    root, mode, check_prop, failed, pool = _SEARCH
    child = _child_of(root, mode, candidate)
    if child is None:
        return None
    return _suspect_failures(root, child, failed, pool, check_prop, stop_early=True) == 0


def _worker_count(candidate):
    root, mode, check_prop, failed, pool = _SEARCH
    child = _child_of(root, mode, candidate)
    if child is None:
        return None
    return _suspect_failures(root, child, failed, pool, check_prop, stop_early=False)


def _finish(lts: Lts, mode: str, prop: str, check_prop: str, candidate,
            jobs: int) -> RepairResult:
    removal = RemovalSet(mode, candidate)
    repaired = apply_removal(lts, removal)
    witness = check_property(repaired, check_prop, jobs=jobs)
    if not isinstance(witness, Witness):
        raise RepairError("internal: incremental check accepted a child that "
                          "fails the full property check")
    return RepairResult(mode, prop, removal, repaired, witness)


def min_removal(lts: Lts, mode: str, prop: str, k_max: int, jobs: int = 1):
    """Smallest valid removal of the given mode within k_max, or NoneWithinBudget.

    Candidates of equal size are tried with components of unsolvable atoms
    first (a pure reordering at fixed depth, so optimality is unaffected);
    the result is the first success in that deterministic order regardless
    of worker completion order.
    """
    check_prop = _validate(lts, mode, prop)
    if k_max < 0:
        raise RepairError(f"k_max must be >= 0, got {k_max}")
    atoms = enumerate_atoms(lts, check_prop)
    assigned, pool, failed = scan_atoms(lts, atoms, jobs=jobs)
    if not failed:
        witness = assemble_witness(lts, check_prop, atoms, assigned)
        return RepairResult(mode, prop, RemovalSet(mode, ()), lts, witness)

    components = _components(lts, mode)
    score = _hot_scores(components, mode, failed)
    memo: dict[tuple, bool] = {}
    workers = None
    global _SEARCH
    try:
        if jobs > 1:
            _SEARCH = (lts, mode, check_prop, failed, pool)
            workers = multiprocessing.get_context("fork").Pool(jobs)
        for k in range(1, k_max + 1):
            candidates = sorted(combinations(components, k),
                                key=lambda cand: -sum(score[c] for c in cand))
            for start in range(0, len(candidates), _CANDIDATE_CHUNK):
                batch = candidates[start:start + _CANDIDATE_CHUNK]
                entries = []  # (candidate, verdict | None), verdict None = needs work
                pending = []
                for candidate in batch:
                    child = _child_of(lts, mode, candidate)
                    if child is None:
                        continue
                    key = child.key
                    if key in memo:
                        entries.append((candidate, memo[key]))
                    else:
                        entries.append((candidate, None))
                        pending.append((candidate, child, key))
                if pending:
                    if workers is not None:
                        outcomes = workers.map(_worker_passes,
                                               [cand for cand, _, _ in pending])
                    else:
                        outcomes = [
                            _suspect_failures(lts, child, failed, pool, check_prop,
                                              stop_early=True) == 0
                            for _, child, _ in pending]
                    verdicts = {}
                    for (candidate, _, key), outcome in zip(pending, outcomes):
                        memo[key] = bool(outcome)
                        verdicts[candidate] = bool(outcome)
                    entries = [(cand, verdicts[cand] if known is None else known)
                               for cand, known in entries]
                for candidate, passed in entries:
                    if passed:
                        return _finish(lts, mode, prop, check_prop, candidate, jobs)
        return NoneWithinBudget(mode, prop, k_max)
    finally:
        if workers is not None:
            workers.close()
            workers.join()
        _SEARCH = None


def greedy_upper_bound(lts: Lts, mode: str, prop: str, jobs: int = 1) -> RepairResult:
    """Anytime heuristic: repeatedly remove the single component that lowers
    the number of unsolvable atoms the most (ties to the canonical first).
    No quality guarantee exists for any such heuristic; raises RepairError
    when no valid step improves anything."""
    check_prop = _validate(lts, mode, prop)
    atoms = enumerate_atoms(lts, check_prop)
    assigned, pool, failed = scan_atoms(lts, atoms, jobs=jobs)
    if not failed:
        witness = assemble_witness(lts, check_prop, atoms, assigned)
        return RepairResult(mode, prop, RemovalSet(mode, ()), lts, witness)

    available = _components(lts, mode)
    chosen: list = []
    best_count = len(failed)
    workers = None
    global _SEARCH
    try:
        if jobs > 1:
            _SEARCH = (lts, mode, check_prop, failed, pool)
            workers = multiprocessing.get_context("fork").Pool(jobs)
        while True:
            candidates = [tuple(chosen) + (component,) for component in available]
            if workers is not None:
                counts = []
                for start in range(0, len(candidates), _CANDIDATE_CHUNK):
                    counts.extend(workers.map(_worker_count,
                                              candidates[start:start + _CANDIDATE_CHUNK]))
            else:
                counts = [_worker_count_local(lts, mode, check_prop, failed, pool, cand)
                          for cand in candidates]
            step = None  # (count, index)
            for index, count in enumerate(counts):
                if count is not None and (step is None or count < step[0]):
                    step = (count, index)
            if step is None:
                raise RepairError("greedy dead end: no valid single removal remains")
            if step[0] >= best_count:
                raise RepairError("greedy stalled: no single removal reduces "
                                  "the number of unsolvable atoms")
            best_count = step[0]
            component = available.pop(step[1])
            chosen.append(component)
            if best_count == 0:
                return _finish(lts, mode, prop, check_prop, tuple(chosen), jobs)
    finally:
        if workers is not None:
            workers.close()
            workers.join()
        _SEARCH = None


def _worker_count_local(root, mode, check_prop, failed, pool, candidate):
    child = _child_of(root, mode, candidate)
    if child is None:
        return None
    return _suspect_failures(root, child, failed, pool, check_prop, stop_early=False)
