"""Independent brute-force oracles the solver is tested against.

The region oracle enumerates every (sup(initial), con, pro) combination with
entries bounded by a small constant and keeps the ones that expand into valid
regions.  On tiny systems this is exhaustive enough to cross-check both the
separation solver and hand-derived example values without sharing any code
with the production path.
"""

from functools import lru_cache
from itertools import product

from petrisynth import Lts, Region, RegionError, expand_region
from petrisynth.separation import region_solves


@lru_cache(maxsize=256)
def bounded_regions(lts: Lts, bound: int) -> tuple[Region, ...]:
    events = sorted(lts.events)
    if len(events) > 3:
        raise ValueError("oracle enumeration is guarded at 3 events")
    found = []
    values = range(bound + 1)
    for sup_init in values:
        for con in product(values, repeat=len(events)):
            for pro in product(values, repeat=len(events)):
                try:
                    region = expand_region(lts, sup_init,
                                           dict(zip(events, con)),
                                           dict(zip(events, pro)))
                except RegionError:
                    continue
                found.append(region)
    return tuple(found)


def oracle_solves(lts: Lts, atom, bound: int = 3) -> bool:
    return any(region_solves(region, atom) for region in bounded_regions(lts, bound))


def brute_force_min_removals(lts, mode, check, max_k):
    """All minimum property-restoring removals up to max_k, by exhaustion.

    Returns (k, list of RemovalSet) or (None, []) if nothing within budget
    works.  Used to cross-check min_removal on small inputs only.
    """
    from itertools import combinations

    from petrisynth import RemovalError, RemovalSet, Witness, apply_removal, check_property

    if mode == "edge":
        parts = list(lts.edges)
    elif mode == "event":
        parts = sorted(lts.events)
    else:
        parts = sorted(lts.states - {lts.initial})
    for k in range(max_k + 1):
        winners = []
        for chosen in combinations(parts, k):
            try:
                child = apply_removal(lts, RemovalSet(mode, chosen))
            except RemovalError:
                continue
            if isinstance(check_property(child, check), Witness):
                winners.append(RemovalSet(mode, chosen))
        if winners:
            return k, winners
    return None, []
