import json
import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from energy_kleene import efun, vsem
from energy_kleene.automaton import (
    AutomatonError,
    EnergyAutomaton,
    NoAcceptingState,
    buchi_behavior,
    decide_buchi,
    decide_reach,
    finite_behavior,
    load,
    load_path,
    loads,
    to_document,
    to_dot,
)
from energy_kleene.generators import AutomatonConfig, random_automaton

from .conftest import DATA, GOLDEN


def test_load_running(running):
    assert running.n == 3 and running.k == 1
    assert running.state_names[0] == "s2"
    assert [running.state_names[i] for i in range(3) if running.alpha[i]] == ["s1"]
    assert len(running.transitions) == 5


def test_parallel_edges_join(running, labels):
    s1, s2 = running.state_names.index("s1"), running.state_names.index("s2")
    assert efun.equals(running.matrix[s1, s2], labels["f2"])


def test_accepting_last_is_reordered(running):
    a = load_path(str(DATA / "accepting_last.json"))
    assert a.state_names[0] == "s2"
    assert finite_behavior(a) == finite_behavior(running)
    assert buchi_behavior(a) == buchi_behavior(running)


@pytest.mark.parametrize("name", ["invalid_slope.json", "invalid_state.json"])
def test_invalid_documents(name):
    with pytest.raises(AutomatonError):
        load_path(str(DATA / name))


def test_invalid_slope_names_the_edge():
    with pytest.raises(AutomatonError, match=r"s1 -> s2"):
        load_path(str(DATA / "invalid_slope.json"))


@pytest.mark.parametrize(
    "patch",
    [
        {"initial": []},
        {"states": ["s1", "s1", "s2"]},
        {"accepting": ["nowhere"]},
    ],
)
def test_structural_errors(patch):
    doc = json.loads((DATA / "running.json").read_text())
    doc.update(patch)
    with pytest.raises(AutomatonError):
        load(doc)


def test_number_and_flag_types():
    doc = json.loads((DATA / "decreasing.json").read_text())
    doc["transitions"][0]["function"]["pieces"][0]["value"] = 0.5
    with pytest.raises(AutomatonError):
        load(doc)
    doc = json.loads((DATA / "decreasing.json").read_text())
    doc["transitions"][0]["function"]["pieces"][0]["start_included"] = "false"
    with pytest.raises(AutomatonError):
        load(doc)
    with pytest.raises(AutomatonError):
        loads("{not json")


def test_document_round_trip(running):
    again = load(to_document(running))
    assert again.state_names == running.state_names
    assert to_document(again) == to_document(running)


def test_running_behaviours(running):
    golden = (GOLDEN / "running_behavior.txt").read_text().splitlines()
    assert f"finite: {efun.render(finite_behavior(running))}" == golden[0]
    assert f"buchi: {vsem.render(buchi_behavior(running))}" == golden[1]


@pytest.mark.parametrize(
    "x0, want", [(0, False), (1, False), (F(9, 8), True), (F(3, 2), True), (2, True), (5, True)]
)
def test_running_decisions(running, x0, want):
    assert decide_reach(running, x0) is want
    assert decide_buchi(running, x0) is want


def test_decreasing_loop():
    a = load_path(str(DATA / "decreasing.json"))
    assert decide_reach(a, 3) and not decide_buchi(a, 3)


def test_no_accepting_state():
    a = load_path(str(DATA / "no_accepting.json"))
    assert finite_behavior(a).is_bottom
    with pytest.warns(NoAcceptingState):
        assert buchi_behavior(a) == vsem.NEVER
    assert not decide_buchi(a, 10)


def test_single_accepting_initial_state():
    a = load_path(str(DATA / "single_accepting.json"))
    assert efun.equals(finite_behavior(a), efun.identity())
    assert buchi_behavior(a) == vsem.NEVER


def test_dot(running):
    dot = to_dot(running)
    assert dot == (GOLDEN / "running.dot").read_text().rstrip("\n") + "\n"
    assert dot.count("doublecircle") == 1
    edges = [l for l in dot.splitlines() if "->" in l and "__start" not in l]
    assert len(edges) == 5


def test_dot_omits_bottom_edges():
    dot = to_dot(load_path(str(DATA / "no_accepting.json")))
    assert "doublecircle" not in dot
    assert '"q" -> "p"' not in dot


@given(st.integers(0, 2**32 - 1), st.randoms(use_true_random=False))
def test_state_order_does_not_matter(seed, shuffler):
    a = random_automaton(random.Random(seed), AutomatonConfig(max_states=3))
    doc = to_document(a)
    shuffler.shuffle(doc["states"])
    shuffler.shuffle(doc["transitions"])
    b = load(doc)
    assert efun.equals(finite_behavior(a), finite_behavior(b))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert buchi_behavior(a) == buchi_behavior(b)


@given(st.integers(0, 2**32 - 1))
def test_decisions_are_monotone(seed):
    a = random_automaton(random.Random(seed), AutomatonConfig(max_states=3))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fb, bb = finite_behavior(a), buchi_behavior(a)
    xs = [F(i, 2) for i in range(13)]
    reach = [decide_reach(a, x, fb) for x in xs]
    buchi = [decide_buchi(a, x, bb) for x in xs]
    assert reach == sorted(reach) and buchi == sorted(buchi)
    # an accepting lasso is in particular a run reaching an accepting state
    assert all(r or not b for r, b in zip(reach, buchi))


def test_loop_automaton():
    a = load_path(str(DATA / "loop.json"))
    assert buchi_behavior(a) == vsem.from_(2)
    assert decide_reach(a, 0) and not decide_buchi(a, F(3, 2))
