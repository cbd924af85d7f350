"""Simulator: scenario schema, channels, presets, invariants, determinism."""

import dataclasses
import random

import pytest

from btlab.checkers import Status, run_checker
from btlab.history import EventKind
from btlab.netsim import (ChannelKind, ChannelModel, OracleSpec, ProcessSpec,
                          Scenario, ScenarioError, evaluate_run, preset,
                          preset_names, run_scenario, scenario_from_dict)

EXPECTED_PRESET_VERDICTS = {
    "figure-3": {"sc": "PASS", "ec": "PASS"},
    "figure-4": {"sc": "FAIL", "ec": "PASS", "strong-prefix": "FAIL"},
    "figure-5": {"sc": "FAIL", "ec": "FAIL", "eventual-prefix": "FAIL"},
    "figure-6": {"update-agreement": "PASS", "lrc": "PASS"},
    "fork-strong-violation": {"strong-prefix": "FAIL", "sc": "FAIL", "ec": "PASS"},
    "update-drop": {"update-agreement": "FAIL", "lrc": "FAIL", "ec": "FAIL"},
    "bitcoin-like": {"sc": "FAIL", "ec": "PASS"},
    "consortium-like": {"sc": "PASS", "ec": "PASS"},
}


# -- channel model ------------------------------------------------------------


def test_synchronous_delay_respects_delta():
    rng = random.Random(0)
    ch = ChannelModel(kind=ChannelKind.SYNCHRONOUS, delta=4)
    delays = [ch.delay("a", "b", t, rng) for t in range(200)]
    assert all(1 <= d <= 4 for d in delays)
    assert len(set(delays)) > 1


def test_asynchronous_delay_is_bounded_only_by_the_cap():
    rng = random.Random(0)
    ch = ChannelModel(kind=ChannelKind.ASYNCHRONOUS, delta=2, async_max_delay=25)
    delays = [ch.delay("a", "b", t, rng) for t in range(300)]
    assert all(1 <= d <= 25 for d in delays)
    assert max(delays) > 2                     # really not delta-bounded


def test_weakly_synchronous_delay_tightens_after_tau():
    rng = random.Random(1)
    ch = ChannelModel(kind=ChannelKind.WEAKLY_SYNCHRONOUS, delta=2, tau=50,
                      async_max_delay=40)
    before = [ch.delay("a", "b", t, rng) for t in range(40)]
    after = [ch.delay("a", "b", t, rng) for t in range(50, 90)]
    assert all(1 <= d <= (50 - t) + 2 for t, d in zip(range(40), before))
    assert all(1 <= d <= 2 for d in after)


def test_delay_overrides_match_first_rule():
    rng = random.Random(0)
    ch = ChannelModel(delta=9, delays=[
        {"from": "a", "to": "a", "delay": 3},
        {"from": "a", "delay": 5},
    ])
    assert ch.delay("a", "a", 0, rng) == 3
    assert ch.delay("a", "b", 0, rng) == 5
    assert 1 <= ch.delay("b", "a", 0, rng) <= 9


def test_drop_rules_match_block_sender_and_destination():
    ch = ChannelModel(drops=[{"block": "x", "to": "p2"}, {"from": "evil"}])
    assert ch.dropped("x", "p0", "p2")
    assert ch.dropped("x", "p1", "p2")
    assert not ch.dropped("x", "p0", "p1")
    assert not ch.dropped("y", "p0", "p2")
    assert ch.dropped("anything", "evil", "p0")


# -- scenario schema ----------------------------------------------------------------


def valid_doc():
    return {
        "version": 1,
        "name": "t",
        "processes": [{"id": "p0", "block_interval": 5, "read_interval": 5}],
        "channel": {"kind": "synchronous", "delta": 2},
        "oracle": {"capacity": None, "seed": 0},
        "duration": 20,
    }


def test_minimal_scenario_parses_with_defaults():
    sc = scenario_from_dict(valid_doc())
    assert sc.name == "t" and sc.duration == 20
    assert sc.stabilization_suffix == 3 and sc.declared_complete is True


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.update(version=2), "version"),
    (lambda d: d.update(name=""), "name"),
    (lambda d: d.update(processes=[]), "processes"),
    (lambda d: d.update(processes=[{"id": "a"}, {"id": "a"}]), "duplicate"),
    (lambda d: d["processes"][0].update(behavior="evil"), "behavior"),
    (lambda d: d["processes"][0].update(merit=0.0), "merit"),
    (lambda d: d["channel"].update(kind="postal"), "kind"),
    (lambda d: d["channel"].update(delta=0), "delta"),
    (lambda d: d["oracle"].update(capacity=0), "capacity"),
    (lambda d: d.update(stabilization_suffix=0), "stabilization_suffix"),
    (lambda d: d.update(expected_verdicts={"sc": "MAYBE"}), "PASS|FAIL"),
    (lambda d: d.update(duration=-1), "duration"),
])
def test_schema_violations_raise_scenario_errors(mutate, fragment):
    doc = valid_doc()
    mutate(doc)
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(doc)
    assert fragment.split("|")[0].lower() in str(err.value).lower()


def test_scenario_round_trips_through_its_dict_form():
    for name in preset_names():
        sc = preset(name)
        back = scenario_from_dict(sc.to_dict())
        assert run_scenario(back).history.to_jsonl() == \
            run_scenario(sc).history.to_jsonl()


# -- golden presets --------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(EXPECTED_PRESET_VERDICTS))
def test_preset_verdicts_match_their_stated_expectations(name):
    sc = preset(name)
    assert sc.expected_verdicts == EXPECTED_PRESET_VERDICTS[name]
    report = evaluate_run(run_scenario(sc))
    assert report["ok"], report["verdicts"]


def test_unknown_preset_is_a_scenario_error():
    with pytest.raises(ScenarioError):
        preset("no-such-thing")


def test_scripted_figure_replays_are_fixed_event_sequences():
    for name, lines in [("figure-3", 16), ("figure-4", 17),
                        ("figure-5", 18), ("figure-6", 7)]:
        run = run_scenario(preset(name))
        assert len(run.history.to_jsonl().splitlines()) == lines


def test_fork_preset_witness_is_a_two_read_pair():
    run = run_scenario(preset("fork-strong-violation"))
    v = run_checker("strong-prefix", run.history, run.scenario.window())
    assert v.status == Status.FAIL
    assert len(v.witness) == 2
    a, b = (run.history.event(i) for i in v.witness)
    assert {a.process, b.process} == {"p0", "p1"}
    # the construction: each replica holds genesis plus the other's block
    chains = {tuple(e.returned) for e in (a, b)}
    assert chains == {("b0", "p0-1"), ("b0", "p1-1")}


def test_update_drop_preset_fails_on_the_missing_receiver():
    run = run_scenario(preset("update-drop"))
    v = run_checker("update-agreement", run.history, run.scenario.window())
    assert v.status == Status.FAIL
    assert v.detail.startswith("R3") and "p2" in v.detail


# -- fault-removal flips ---------------------------------------------------------------------


def test_capacity_one_removes_the_fork_violation():
    sc = preset("fork-strong-violation")
    fixed = dataclasses.replace(sc, oracle=OracleSpec(capacity=1, seed=sc.oracle.seed),
                                expected_verdicts={})
    run = run_scenario(fixed)
    assert run_checker("strong-prefix", run.history,
                       fixed.window()).status == Status.PASS


def test_removing_the_drop_heals_update_agreement_and_ec():
    sc = preset("update-drop")
    fixed = dataclasses.replace(
        sc, channel=dataclasses.replace(sc.channel, drops=[]),
        expected_verdicts={})
    run = run_scenario(fixed)
    for crit in ("update-agreement", "lrc", "ec"):
        assert run_checker(crit, run.history, fixed.window()).status == Status.PASS


# -- simulator invariants ---------------------------------------------------------------------


def small_scenario(seed, capacity=None, n=3, drops=(), duration=40,
                   byzantine=(), duplication=False):
    procs = []
    for i in range(n):
        procs.append(ProcessSpec(
            f"p{i}", merit=1.0,
            behavior="byzantine" if f"p{i}" in byzantine else "correct",
            block_interval=8, append_offset=8 + i,
            read_interval=9, read_offset=2))
    return Scenario(
        name=f"small-{seed}", processes=procs,
        channel=ChannelModel(kind=ChannelKind.SYNCHRONOUS, delta=2,
                             drops=list(drops), duplication=duplication),
        oracle=OracleSpec(capacity=capacity, seed=seed),
        seed=seed, duration=duration, stabilization_suffix=1)


def test_single_process_run_grows_one_chain_and_passes_ec():
    sc = Scenario(
        name="solo",
        processes=[ProcessSpec("p0", block_interval=10, read_interval=10,
                               read_offset=5)],
        channel=ChannelModel(delta=1),
        seed=1, duration=35, stabilization_suffix=1)
    run = run_scenario(sc)
    chain = run.ledgers["p0"].read()
    assert 1 < len(chain) <= 4                    # three append slots
    assert run_checker("ec", run.history, sc.window()).status == Status.PASS
    assert run_checker("strong-prefix", run.history, sc.window()).status == \
        Status.PASS


def test_fork_width_never_exceeds_oracle_capacity():
    rng = random.Random(6)
    for _ in range(15):
        k = rng.choice([1, 2, 3])
        run = run_scenario(small_scenario(rng.randrange(10**6), capacity=k))
        for led in run.ledgers.values():
            assert led.tree.max_fork_count() <= k
        for block_id in run.ledgers["p0"].tree._blocks:
            assert run.oracle.consumed_count(block_id) <= k


def test_capacity_one_runs_always_satisfy_strong_prefix():
    rng = random.Random(13)
    for _ in range(10):
        sc = small_scenario(rng.randrange(10**6), capacity=1)
        run = run_scenario(sc)
        assert run_checker("strong-prefix", run.history,
                           sc.window()).status == Status.PASS


def test_every_read_returns_a_chain_of_integrated_blocks():
    run = run_scenario(small_scenario(21))
    for read in run.history.reads():
        chain = read.response.returned
        assert chain[0] == "b0"
        tree = run.ledgers[read.process].tree
        for block_id in chain[1:]:
            assert block_id in tree


def test_relayed_forwarding_heals_a_dropped_direct_link():
    # every direct copy from p0 to p2 is lost; p1's echo still delivers
    sc = small_scenario(3, drops=({"from": "p0", "to": "p2"},))
    run = run_scenario(sc)
    received_at_p2 = {e.args[1] for e in run.history.events
                      if e.kind is EventKind.RECEIVE and e.process == "p2"}
    made_by_p0 = {b.id for b in run.ledgers["p0"].tree.blocks()
                  if b.id.startswith("p0-")}
    assert made_by_p0 and made_by_p0 <= received_at_p2
    assert run.dropped > 0


def test_byzantine_processes_leave_only_append_invocations_in_the_trace():
    sc = small_scenario(9, byzantine=("p2",))
    run = run_scenario(sc)
    byz_events = [e for e in run.history.events if e.process == "p2"]
    assert byz_events                              # its appends are visible
    assert {e.op for e in byz_events} == {"append"}
    assert {e.kind for e in byz_events} == {EventKind.INVOCATION}
    full_byz_ops = {e.op for e in run.full_history.events if e.process == "p2"}
    assert "send" in full_byz_ops                  # it did broadcast underneath


def test_duplication_repeats_receives_but_never_updates():
    run = run_scenario(small_scenario(2, duplication=True))
    receives = {}
    updates = {}
    for e in run.history.events:
        key = (e.process, e.args[1] if len(e.args) > 1 else None)
        if e.kind is EventKind.RECEIVE:
            receives[key] = receives.get(key, 0) + 1
        if e.kind is EventKind.UPDATE:
            updates[key] = updates.get(key, 0) + 1
    assert all(n == 1 for n in updates.values())
    assert any(n > 1 for n in receives.values())


def test_messages_past_duration_are_counted_undelivered():
    sc = small_scenario(4, duration=9)          # append at 8(+i), delivery at 10+
    run = run_scenario(sc)
    assert run.undelivered > 0


def test_equal_seeds_give_byte_identical_traces():
    for name in preset_names():
        sc = preset(name)
        a = run_scenario(sc)
        b = run_scenario(sc)
        assert a.history.to_jsonl() == b.history.to_jsonl()
        assert a.full_history.to_jsonl() == b.full_history.to_jsonl()


def test_evaluate_run_reports_mismatches_without_hiding_actuals():
    sc = preset("figure-3")
    twisted = dataclasses.replace(sc, expected_verdicts={"sc": "FAIL"})
    report = evaluate_run(run_scenario(twisted))
    assert not report["ok"]
    row = report["verdicts"]["sc"]
    assert row["expected"] == "FAIL" and row["actual"] == "PASS"
