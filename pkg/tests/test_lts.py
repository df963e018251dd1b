import pickle

import pytest

from petrisynth import Lts, LtsError, is_word_in_language, lts_isomorphic, parse_lts, serialize_lts

from conftest import DEMO_TEXT


def test_parse_demo(demo):
    assert demo.name == "demo"
    assert demo.initial == "bot"
    assert len(demo.states) == 9
    assert sorted(demo.events) == ["a", "u", "v", "w", "x", "y"]
    assert len(demo.edges) == 10
    assert demo.successor("s0", "x") == "s1"
    assert demo.successor("s1", "x") is None
    assert demo.enabled("t0") == ("a", "x")


def test_round_trip(demo):
    assert parse_lts(serialize_lts(demo)) == demo


def test_comments_and_blank_lines():
    text = "# heading\nlts t\n\ninitial s\n# body\ns a s\n"
    lts = parse_lts(text)
    assert lts.edges == (("s", "a", "s"),)


def test_single_state_no_edges():
    lts = Lts("empty", "s0", [])
    assert lts.states == frozenset({"s0"})
    assert lts.events == frozenset()
    assert parse_lts(serialize_lts(lts)) == lts


def test_determinism_rejected():
    with pytest.raises(LtsError, match="determinism"):
        Lts("t", "s", [("s", "a", "p"), ("s", "a", "q")])


def test_unreachable_rejected():
    with pytest.raises(LtsError, match="unreachable"):
        Lts("t", "s", [("s", "a", "s"), ("p", "a", "p")])


def test_state_event_namespace_collision_rejected():
    with pytest.raises(LtsError, match="namespaces overlap"):
        Lts("t", "s", [("s", "s", "p")])


def test_repeated_edge_collapses():
    lts = Lts("t", "s", [("s", "a", "p"), ("s", "a", "p")])
    assert lts.edges == (("s", "a", "p"),)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(LtsError, match="line 1"):
        parse_lts("initial s\n")
    with pytest.raises(LtsError, match="line 3"):
        parse_lts("lts t\ninitial s\ns a\n")


def test_path_from_initial(demo):
    path = demo.path_from_initial("s2")
    assert path[0][0] == "bot"
    assert path[-1][2] == "s2"
    labels = [e for _, e, _ in path]
    assert labels == ["u", "x", "y"]


def test_language(demo):
    assert is_word_in_language(demo, [])
    assert is_word_in_language(demo, ["u", "x", "y", "x"])
    assert not is_word_in_language(demo, ["u", "y"])
    assert not is_word_in_language(demo, ["x"])


def test_isomorphism_modulo_renaming(demo):
    renamed = demo.relabeled({s: f"n_{s}" for s in demo.states}, {})
    phi = lts_isomorphic(demo, renamed)
    assert phi is not None
    assert phi["bot"] == "n_bot"
    assert lts_isomorphic(demo, parse_lts("lts o\ninitial s\ns u p\n")) is None


def test_equality_includes_name(demo):
    other = parse_lts(DEMO_TEXT.replace("lts demo", "lts other"))
    assert other != demo
    assert other.key == demo.key


def test_pickle_round_trip(demo):
    clone = pickle.loads(pickle.dumps(demo))
    assert clone == demo
    assert clone.successor("bot", "u") == "s0"
