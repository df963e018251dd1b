"""Hitting-set reduction machinery: generators, solution mappings, oracle.

Each family builds an LTS from a hitting-set instance (universe X_0..X_{n-1},
subsets M_0..M_{m-1}, budget lambda) such that the LTS can be repaired with
at most kappa = lambda removals of the family's mode if and only if the
instance has a hitting set of size at most lambda.  The mappings between
hitting sets and removal sets are implemented in both directions, and a
brute-force hitting-set solver serves as the independent oracle.

Gadget naming sticks to the source construction (t/d/f states, u/v/w
connector events, k chain delimiters, the shared alphabet a), so failures
can be read against the drawings: path gadgets T spell out a subset's
elements, cycle gadgets D pin their effects, and fork gadgets F hold the
removable component for element X_i.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .lts import Lts
from .removal import RemovalSet

FAMILIES = ("edge-lang-real", "edge-emb", "event", "state-lang-real", "state-emb")

FAMILY_MODE = {
    "edge-lang-real": "edge",
    "edge-emb": "edge",
    "event": "event",
    "state-lang-real": "state",
    "state-emb": "state",
}

# the implementation relation each family's equivalence is stated for
FAMILY_RELATION = {
    "edge-lang-real": "language",
    "edge-emb": "embedding",
    "event": "realization",
    "state-lang-real": "language",
    "state-emb": "embedding",
}


class ReductionError(ValueError):
    """Malformed instance, unknown family, or a failed mapping check."""


class NoHittingSet(ReductionError):
    """Some required subset is empty: nothing can hit it."""


class HittingSetInstance:
    """Universe, subsets (stored with ascending universe indices), budget."""

    __slots__ = ("universe", "sets", "lam", "_index")

    def __init__(self, universe: Sequence[str], sets: Iterable[Iterable[str]], lam: int):
        universe = tuple(universe)
        if len(set(universe)) != len(universe):
            raise ReductionError("universe elements must be distinct")
        index = {element: i for i, element in enumerate(universe)}
        normalized = []
        for subset in sets:
            subset = tuple(subset)
            unknown = [x for x in subset if x not in index]
            if unknown:
                raise ReductionError(f"set mentions elements outside the universe: {unknown}")
            if len(set(subset)) != len(subset):
                raise ReductionError(f"duplicate element inside a set: {subset}")
            normalized.append(tuple(sorted(subset, key=index.__getitem__)))
        if not isinstance(lam, int) or isinstance(lam, bool) or lam < 0:
            raise ReductionError(f"lambda must be a nonnegative integer, got {lam!r}")
        self.universe = universe
        self.sets = tuple(normalized)
        self.lam = lam
        self._index = index

    def index_of(self, element: str) -> int:
        return self._index[element]

    def is_hitting_set(self, z: Iterable[str]) -> bool:
        z = set(z)
        return all(z & set(subset) for subset in self.sets)

    def __eq__(self, other):
        if not isinstance(other, HittingSetInstance):
            return NotImplemented
        return (self.universe == other.universe and self.sets == other.sets
                and self.lam == other.lam)

    def __hash__(self):
        return hash((self.universe, self.sets, self.lam))

    def __repr__(self):
        return (f"HittingSetInstance(n={len(self.universe)}, m={len(self.sets)}, "
                f"lambda={self.lam})")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ReductionError(f"unknown reduction family: {family!r}")


def brute_force_min_hitting_set(instance: HittingSetInstance) -> tuple[tuple[str, ...], int]:
    """Minimum hitting set by subset enumeration; ties to the canonical first.

    Oracle only: guarded at 20 universe elements.
    """
    if len(instance.universe) > 20:
        raise ReductionError("brute force is guarded at 20 universe elements")
    if any(not subset for subset in instance.sets):
        raise NoHittingSet("an empty set cannot be hit")
    targets = [set(subset) for subset in instance.sets]
    for size in range(len(instance.universe) + 1):
        for z in combinations(instance.universe, size):
            chosen = set(z)
            if all(chosen & target for target in targets):
                return z, size
    raise AssertionError("the full universe hits every nonempty set")


def _normal_form(instance: HittingSetInstance) -> None:
    n = len(instance.universe)
    if instance.lam > n:
        raise ReductionError(f"normal form violated: lambda={instance.lam} > |universe|={n}")
    for subset in instance.sets:
        if len(subset) < 2:
            raise ReductionError(f"normal form violated: set {subset} has fewer than 2 elements")
        if len(subset) > n:
            raise ReductionError(f"normal form violated: set {subset} larger than the universe")


def generate_instance(instance: HittingSetInstance, family: str) -> tuple[Lts, int]:
    """The family's LTS plus the removal budget kappa (= lambda)."""
    _check_family(family)
    _normal_form(instance)
    kappa = instance.lam
    if family in ("edge-lang-real", "state-lang-real"):
        lts = _build_lang_real(instance)
    elif family in ("edge-emb", "state-emb"):
        lts = _build_emb(instance)
    else:
        lts = _build_event(instance)
    return lts, kappa


def _guard_names(instance: HittingSetInstance, states, events) -> None:
    generated = set(states) | set(events)
    clashes = generated & set(instance.universe)
    if clashes:
        raise ReductionError(
            "universe elements collide with generated gadget names: "
            + " ".join(sorted(clashes)))


def _build_lang_real(instance: HittingSetInstance) -> Lts:
    """Paths spell each subset twice over (kappa+1) copies; forks F_i offer
    X_i in parallel with every a_l, so only the X_i edge is droppable."""
    kappa = instance.lam
    edges = []
    states = ["iota"]
    events = []
    for i, subset in enumerate(instance.sets):
        m_i = len(subset)
        for j in range(kappa + 1):
            chain = [f"t_{i}_{j}_{k}" for k in range(m_i + 2)]
            states.extend(chain)
            for k, element in enumerate(subset):
                edges.append((chain[k], element, chain[k + 1]))
            edges.append((chain[m_i], subset[0], chain[m_i + 1]))
            events.append(f"u_{i}_{j}")
            edges.append(("iota", f"u_{i}_{j}", chain[0]))
    alphabet = [f"a_{l}" for l in range(kappa + 1)]
    events.extend(alphabet)
    for i, element in enumerate(instance.universe):
        fork = (f"f_{i}_0", f"f_{i}_1")
        states.extend(fork)
        edges.append((fork[0], element, fork[1]))
        for letter in alphabet:
            edges.append((fork[0], letter, fork[1]))
        events.append(f"v_{i}")
        edges.append(("iota", f"v_{i}", fork[0]))
    _guard_names(instance, states, events)
    return Lts("hs-lang-real", "iota", edges)


def _build_emb(instance: HittingSetInstance) -> Lts:
    """Paths prefixed by k_i, a-cycles closed by k_i, forks {a, X_i}."""
    kappa = instance.lam
    edges = []
    states = ["iota"]
    events = ["a"]
    for i, subset in enumerate(instance.sets):
        m_i = len(subset)
        events.append(f"k_{i}")
        for j in range(kappa + 1):
            chain = [f"t_{i}_{j}_{k}" for k in range(m_i + 2)]
            states.extend(chain)
            edges.append((chain[0], f"k_{i}", chain[1]))
            for k, element in enumerate(subset):
                edges.append((chain[k + 1], element, chain[k + 2]))
            events.append(f"u_{i}_{j}")
            edges.append(("iota", f"u_{i}_{j}", chain[0]))
            cycle = [f"d_{i}_{j}_{k}" for k in range(m_i + 1)]
            states.extend(cycle)
            for k in range(m_i):
                edges.append((cycle[k], "a", cycle[k + 1]))
            edges.append((cycle[m_i], f"k_{i}", cycle[0]))
            events.append(f"v_{i}_{j}")
            edges.append(("iota", f"v_{i}_{j}", cycle[0]))
    for i, element in enumerate(instance.universe):
        fork = (f"f_{i}_0", f"f_{i}_1")
        states.extend(fork)
        edges.append((fork[0], element, fork[1]))
        edges.append((fork[0], "a", fork[1]))
        events.append(f"w_{i}")
        edges.append(("iota", f"w_{i}", fork[0]))
    _guard_names(instance, states, events)
    return Lts("hs-emb", "iota", edges)


def _build_event(instance: HittingSetInstance) -> Lts:
    """One k_i-delimited path and one pure cycle per subset; every gadget
    state hangs off the initial state by its own connector, so removing any
    X or k event never breaks reachability."""
    edges = []
    states = ["iota"]
    events = []
    for i, subset in enumerate(instance.sets):
        m_i = len(subset)
        events.append(f"k_{i}")
        chain = [f"t_{i}_{k}" for k in range(m_i + 3)]
        states.extend(chain)
        edges.append((chain[0], f"k_{i}", chain[1]))
        for k, element in enumerate(subset):
            edges.append((chain[k + 1], element, chain[k + 2]))
        edges.append((chain[m_i + 1], f"k_{i}", chain[m_i + 2]))
        for j in range(m_i + 3):
            events.append(f"u_{i}_{j}")
            edges.append(("iota", f"u_{i}_{j}", chain[j]))
        cycle = [f"d_{i}_{k}" for k in range(m_i)]
        states.extend(cycle)
        for k, element in enumerate(subset):
            edges.append((cycle[k], element, cycle[(k + 1) % m_i]))
        for j in range(m_i):
            events.append(f"v_{i}_{j}")
            edges.append(("iota", f"v_{i}_{j}", cycle[j]))
    _guard_names(instance, states, events)
    return Lts("hs-event", "iota", edges)


def removal_from_hitting_set(instance: HittingSetInstance, z: Iterable[str],
                             family: str) -> RemovalSet:
    """The forward solution mapping: a hitting set of size <= lambda becomes
    a removal set of the family's mode and the same size."""
    _check_family(family)
    z = set(z)
    unknown = z - set(instance.universe)
    if unknown:
        raise ReductionError(f"not universe elements: {' '.join(sorted(unknown))}")
    if not instance.is_hitting_set(z):
        raise ReductionError("given set does not hit every subset")
    if len(z) > instance.lam:
        raise ReductionError(f"hitting set larger than the budget lambda={instance.lam}")
    mode = FAMILY_MODE[family]
    if mode == "edge":
        items = [(f"f_{instance.index_of(x)}_0", x, f"f_{instance.index_of(x)}_1") for x in z]
    elif mode == "event":
        items = list(z)
    else:
        items = [f"f_{instance.index_of(x)}_1" for x in z]
    return RemovalSet(mode, items)


def hitting_set_from_removal(instance: HittingSetInstance, removed: RemovalSet,
                             family: str) -> tuple[str, ...]:
    """The backward solution mapping, applied literally and then verified.

    A valid property-restoring removal must disable one fork gadget per
    subset element it stands for; reading those elements off yields a
    hitting set no larger than the removal.  Verification failing on a valid
    input signals a construction bug, so it raises instead of returning.
    """
    _check_family(family)
    mode = FAMILY_MODE[family]
    if removed.mode != mode:
        raise ReductionError(f"{family} expects {mode} removals, got {removed.mode}")
    index = {f"f_{i}_1": element for i, element in enumerate(instance.universe)}
    z = set()
    if mode == "edge":
        forks = {(f"f_{i}_0", element, f"f_{i}_1"): element
                 for i, element in enumerate(instance.universe)}
        if family == "edge-emb":
            for i, element in enumerate(instance.universe):
                forks[(f"f_{i}_0", "a", f"f_{i}_1")] = element
        for item in removed.items:
            element = forks.get(item)
            if element is not None:
                z.add(element)
    elif mode == "event":
        z = set(instance.universe) & removed.items
    else:
        for item in removed.items:
            element = index.get(item)
            if element is not None:
                z.add(element)
    if len(z) > len(removed):
        raise ReductionError("mapped set larger than the removal")
    if not instance.is_hitting_set(z):
        raise ReductionError(
            "mapped set is not a hitting set; the removal does not restore "
            "the property or the normalization gap is real")
    return tuple(sorted(z, key=instance.index_of))


# ---------------------------------------------------------------------------
# Text format: `universe X0 X1 ...`, `set X0 X1`, `lambda <int>`.

def parse_hitting_set(text: str) -> HittingSetInstance:
    universe = None
    sets = []
    lam = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "universe":
            if universe is not None:
                raise ReductionError(f"line {number}: duplicate universe line")
            universe = tokens[1:]
        elif keyword == "set":
            # a bare `set` line is the empty set; hs answers NoHittingSet then
            sets.append(tokens[1:])
        elif keyword == "lambda":
            if lam is not None:
                raise ReductionError(f"line {number}: duplicate lambda line")
            if len(tokens) != 2:
                raise ReductionError(f"line {number}: expected 'lambda <int>'")
            try:
                lam = int(tokens[1])
            except ValueError:
                raise ReductionError(f"line {number}: not an integer: {tokens[1]!r}") from None
        else:
            raise ReductionError(f"line {number}: unknown keyword {keyword!r}")
    if universe is None:
        raise ReductionError("missing 'universe' line")
    if lam is None:
        raise ReductionError("missing 'lambda' line")
    try:
        return HittingSetInstance(universe, sets, lam)
    except ReductionError as err:
        raise ReductionError(str(err)) from None


def serialize_hitting_set(instance: HittingSetInstance) -> str:
    lines = ["universe " + " ".join(instance.universe)]
    for subset in instance.sets:
        lines.append(" ".join(("set",) + subset))
    lines.append(f"lambda {instance.lam}")
    return "\n".join(lines) + "\n"
