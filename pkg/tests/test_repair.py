import pytest

from petrisynth import (
    NoneWithinBudget,
    RepairError,
    RepairResult,
    Witness,
    apply_removal,
    check_property,
    greedy_upper_bound,
    min_removal,
)

from oracles import brute_force_min_removals


def test_already_good_needs_no_removal(demo):
    result = min_removal(demo, "state", "embedding", 2)
    assert isinstance(result, RepairResult)
    assert result.k == 0
    assert result.removed.items == frozenset()
    assert result.repaired.key == demo.key


@pytest.mark.parametrize("mode,prop", [
    ("state", "language"),
    ("event", "realization"),
    ("edge", "language"),
])
def test_single_removal_fixes_demo(demo, mode, prop):
    result = min_removal(demo, mode, prop, 2)
    assert isinstance(result, RepairResult)
    assert result.k == 1
    # the repaired system must genuinely satisfy the certifying property
    check = {"embedding": "ssp", "language": "essp", "realization": "both"}[prop]
    again = check_property(result.repaired, check)
    assert isinstance(again, Witness)
    # and applying the removal to the original reproduces the repaired LTS
    assert apply_removal(demo, result.removed).key == result.repaired.key


def test_matches_exhaustive_search(demo):
    for mode, prop, check in (("state", "language", "essp"),
                              ("event", "realization", "both")):
        result = min_removal(demo, mode, prop, 2)
        k, winners = brute_force_min_removals(demo, mode, check, 2)
        assert result.k == k
        assert result.removed in winners


def test_none_within_budget(demo):
    result = min_removal(demo, "state", "language", 0)
    assert isinstance(result, NoneWithinBudget)
    assert result.k_max == 0
    assert result.render() == "no state removal within budget k_max=0 for language"


def test_budget_zero_on_good_input(demo_no_a):
    result = min_removal(demo_no_a, "edge", "realization", 0)
    assert isinstance(result, RepairResult)
    assert result.k == 0


def test_result_render_shape(demo):
    result = min_removal(demo, "event", "realization", 1)
    lines = result.render().splitlines()
    assert lines[0] == "remove event a"
    assert lines[1] == "k=1"
    assert lines[2] == "property=realization"
    assert lines[3] == "mode=event"
    assert all(line.startswith("region ") for line in lines[4:])
    assert len(lines) > 4


def test_witness_regions_belong_to_repaired(demo):
    from petrisynth import is_region
    result = min_removal(demo, "state", "language", 1)
    for region in result.witness.regions:
        ok, violation = is_region(result.repaired, region)
        assert ok, violation


def test_greedy_agrees_on_easy_instances(demo):
    for mode, prop in (("state", "language"), ("event", "realization"),
                       ("edge", "language")):
        exact = min_removal(demo, mode, prop, 2)
        greedy = greedy_upper_bound(demo, mode, prop)
        assert greedy.k >= exact.k
        assert greedy.k == 1


def test_greedy_on_satisfied_input(demo_no_a):
    result = greedy_upper_bound(demo_no_a, "state", "realization")
    assert result.k == 0


def test_jobs_do_not_change_results(demo):
    for jobs in (1, 3):
        a = min_removal(demo, "event", "realization", 2, jobs=jobs)
        assert a.render() == min_removal(demo, "event", "realization", 2).render()
        g = greedy_upper_bound(demo, "state", "language", jobs=jobs)
        assert g.render() == greedy_upper_bound(demo, "state", "language").render()


def test_bad_arguments_rejected(demo):
    with pytest.raises(RepairError, match="unknown removal mode"):
        min_removal(demo, "vertex", "language", 1)
    with pytest.raises(RepairError, match="unknown implementation relation"):
        min_removal(demo, "state", "weak-bisimulation", 1)
    with pytest.raises(RepairError, match="k_max"):
        min_removal(demo, "state", "language", -1)


def test_deep_conflict_needs_two_removals():
    # two independent copies of the unsolvable pattern: one removal cannot
    # fix both, two can
    from petrisynth import Lts
    edges = []
    for tag in ("L", "R"):
        edges += [
            (f"{tag}s0", f"{tag}x", f"{tag}s1"),
            (f"{tag}s1", f"{tag}y", f"{tag}s2"),
            (f"{tag}s2", f"{tag}x", f"{tag}s3"),
            (f"{tag}s3", f"{tag}a", f"{tag}t1"),
            (f"{tag}s3", f"{tag}x", f"{tag}t1"),
            (f"{tag}s3", f"{tag}y", f"{tag}t1"),
        ]
    edges += [("root", "gl", "Ls0"), ("root", "gr", "Rs0")]
    twin = Lts("twin", "root", edges)
    assert isinstance(min_removal(twin, "edge", "language", 1), NoneWithinBudget)
    result = min_removal(twin, "edge", "language", 2)
    assert isinstance(result, RepairResult)
    assert result.k == 2


@pytest.mark.slow
def test_greedy_matches_optimum_on_generated_benchmark():
    # minutes-scale: greedy edge search over a generated 69-state benchmark
    # whose known minimum hitting set (hence minimum repair) has size 2
    from petrisynth import HittingSetInstance, check_property, generate_instance

    instance = HittingSetInstance(
        ["X0", "X1", "X2", "X3"],
        [("X0", "X1"), ("X1", "X2"), ("X2", "X3"), ("X0", "X3"), ("X0", "X2")],
        2,
    )
    lts, kappa = generate_instance(instance, "edge-lang-real")
    assert kappa == 2
    result = greedy_upper_bound(lts, "edge", "language")
    assert isinstance(result, RepairResult)
    assert result.k == 2
    repaired = apply_removal(lts, result.removed)
    assert isinstance(check_property(repaired, "essp"), Witness)
