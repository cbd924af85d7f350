"""Property campaigns: seeded random schedules and exhaustive enumerations.

Each campaign returns a CampaignResult whose `violations` list carries the
offending seed (or interleaving) so a failure is reproducible from the CLI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from .blocktree import Block, BlockTree
from .checkers import Status, check_ec, check_sc
from .netsim import (ChannelKind, ChannelModel, OracleSpec, ProcessSpec,
                     Scenario, preset, run_scenario)
from .oracle import Merit, OracleState, frugal_oracle, prodigal_oracle
from .refinement import RefinedLedger
from .shm import (CrashSchedule, RegisterSpace, cas_via_consume_steps,
                  consume_via_snapshot_steps, interleavings, run_consensus,
                  run_interleaving)


@dataclass
class CampaignResult:
    name: str
    runs: int
    violations: List[Tuple[Any, str]] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# -- replicated append schedules (shared oracle, per-process trees) ---------------


@dataclass
class ScheduleRecord:
    """What a random replica schedule did: the successful appends in order."""

    successes: List[Tuple[str, str, str]] = field(default_factory=list)  # (caller, block, parent)
    max_fork: int = 0
    rejected: int = 0


def run_replica_schedule(k: Optional[int], seed: int, n_procs: int = 3,
                         steps: int = 40, grant_probability: float = 1.0,
                         ) -> Tuple[ScheduleRecord, BlockTree]:
    """Seeded interleaving of appends and single-message propagations.

    Each process keeps a local replica; append targets the local leaf, so
    stale views contend for the same parent and fork it, capped by k.
    """
    rng = random.Random(seed)
    names = [f"p{i}" for i in range(n_procs)]
    oracle = OracleState({p: Merit(grant_probability) for p in names},
                         capacity=k, seed=seed)
    ledgers = {p: RefinedLedger(oracle=oracle, tree=BlockTree()) for p in names}
    in_flight: List[Tuple[str, Block]] = []     # (destination, block)
    record = ScheduleRecord()
    made = {p: 0 for p in names}

    def propagate(slot: int):
        dest, block = in_flight.pop(slot)
        led = ledgers[dest]
        if block.id not in led.tree and block.parent_id in led.tree:
            led.integrate(block)

    for _ in range(steps):
        if in_flight and rng.random() < 0.4:
            propagate(rng.randrange(len(in_flight)))
            continue
        caller = rng.choice(names)
        made[caller] += 1
        res = ledgers[caller].refined_append(Block(id=f"{caller}-{made[caller]}"), caller)
        if res:
            record.successes.append((caller, res.block.id, res.block.parent_id))
            for dest in names:
                if dest != caller:
                    in_flight.append((dest, res.block))
        else:
            record.rejected += 1
    while in_flight:
        propagate(0)

    global_tree = BlockTree()
    for _, block_id, parent_id in record.successes:
        if parent_id in global_tree:
            global_tree.insert(Block(id=block_id, parent_id=parent_id))
    record.max_fork = global_tree.max_fork_count()
    return record, global_tree


def kfork_campaign(k: int, runs: int = 200, seed: int = 0) -> CampaignResult:
    """Fork width never exceeds the oracle capacity, and reaches it."""
    out = CampaignResult(name=f"kfork(k={k})", runs=runs)
    hit_equality = 0
    for i in range(runs):
        run_seed = seed * 100003 + i
        record, tree = run_replica_schedule(k, run_seed)
        if record.max_fork > k:
            out.violations.append((run_seed, f"fork width {record.max_fork} > k={k}"))
        if record.max_fork == k:
            hit_equality += 1
    out.stats = {"k": k, "equality_hits": hit_equality}
    if hit_equality == 0:
        out.violations.append((seed, f"no schedule ever forked exactly {k} ways"))
    return out


def containment_campaign(runs: int = 100, seed: int = 0) -> CampaignResult:
    """A capacity-k success schedule replays verbatim on any looser oracle.

    The purged schedule (successful appends only, in order) is re-driven
    against capacity k' >= k and against the unbounded oracle; every replayed
    append must succeed against the same parent and rebuild the same tree.
    """
    out = CampaignResult(name="containment", runs=runs)
    replays = 0
    for i in range(runs):
        run_seed = seed * 99991 + i
        k = 1 + (i % 3)
        record, tree = run_replica_schedule(k, run_seed)
        for k2 in [kk for kk in (k, k + 1, 3, None) if kk is None or kk >= k]:
            ok, why = _replay_successes(record, k2, run_seed)
            replays += 1
            if not ok:
                out.violations.append(
                    (run_seed, f"k={k} schedule not reproduced at k'={k2}: {why}"))
    out.stats = {"replays": replays}
    return out


def _replay_successes(record: ScheduleRecord, capacity: Optional[int],
                      seed: int) -> Tuple[bool, str]:
    callers = sorted({c for c, _, _ in record.successes}) or ["p0"]
    oracle = OracleState({c: Merit(1.0) for c in callers}, capacity=capacity,
                         seed=seed + 1)
    tree = BlockTree()
    for caller, block_id, parent_id in record.successes:
        stamped = None
        for _ in range(10**6):
            stamped = oracle.get_token(parent_id, Block(id=block_id), caller)
            if stamped is not None:
                break
        if stamped is None:
            return False, f"no grant for {block_id}"
        consumed = oracle.consume_token(stamped)
        if stamped not in consumed:
            return False, f"append of {block_id} under {parent_id} rejected"
        if stamped.parent_id != parent_id:
            return False, f"{block_id} re-parented"
        tree.insert(Block(id=block_id, parent_id=parent_id))
    original = sorted((b, p) for _, b, p in record.successes)
    replayed = sorted((b.id, b.parent_id) for b in tree.blocks() if b.parent_id)
    return (original == replayed,
            "" if original == replayed else "tree mismatch")


# -- hierarchy corpus: strong implies eventual ---------------------------------------


def _random_scenario(seed: int) -> Scenario:
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    procs = [f"p{i}" for i in range(n)]
    capacity = rng.choice([None, None, 1, 2])
    interval = rng.choice([8, 10, 12])
    self_d = rng.randint(1, 2)
    cross_d = rng.randint(1, 4)
    appenders = max(1, rng.randint(1, n) if capacity is None else 1)
    drops = []
    if rng.random() < 0.2:
        drops = [{"block": f"p0-1", "to": procs[-1]}]
    specs = []
    for idx, p in enumerate(procs):
        specs.append(ProcessSpec(
            p, merit=1.0,
            block_interval=interval if idx < appenders else None,
            append_offset=interval,
            read_interval=rng.choice([5, 7, interval]),
            read_offset=rng.randint(0, 4)))
    return Scenario(
        name=f"random-{seed}",
        processes=specs,
        channel=ChannelModel(kind=ChannelKind.SYNCHRONOUS, delta=max(self_d, cross_d),
                             delays=[{"from": a, "to": b,
                                      "delay": self_d if a == b else cross_d}
                                     for a in procs for b in procs],
                             drops=drops),
        oracle=OracleSpec(capacity=capacity, seed=seed),
        seed=seed, duration=rng.choice([40, 50, 60]),
        declared_complete=rng.random() < 0.5,
        stabilization_suffix=rng.choice([1, 2, 3]))


def hierarchy_corpus(count: int, seed: int = 0):
    """Yield (label, history, window) pairs: figures first, then random runs."""
    for name in ("figure-3", "figure-4", "figure-5", "figure-6"):
        sc = preset(name)
        yield name, run_scenario(sc).history, sc.window()
    for name in ("bitcoin-like", "consortium-like", "fork-strong-violation",
                 "update-drop"):
        sc = preset(name)
        yield name, run_scenario(sc).history, sc.window()
    for i in range(max(0, count - 8)):
        sc = _random_scenario(seed * 7919 + i)
        yield sc.name, run_scenario(sc).history, sc.window()


def hierarchy_campaign(runs: int = 1000, seed: int = 0) -> CampaignResult:
    """No history may satisfy the strong criterion yet fail the eventual one,
    and at least one must hold eventually while failing strongly."""
    out = CampaignResult(name="hierarchy", runs=runs)
    counts = {"sc": {}, "ec": {}}
    strict_witness = 0
    for label, history, window in hierarchy_corpus(runs, seed):
        sc = check_sc(history, window)
        ec = check_ec(history, window)
        counts["sc"][sc.status] = counts["sc"].get(sc.status, 0) + 1
        counts["ec"][ec.status] = counts["ec"].get(ec.status, 0) + 1
        if sc.status == Status.PASS and ec.status == Status.FAIL:
            out.violations.append((label, "sc PASS but ec FAIL"))
        if ec.status == Status.PASS and sc.status == Status.FAIL:
            strict_witness += 1
    counts["ec_pass_sc_fail"] = strict_witness
    out.stats = counts
    if strict_witness == 0:
        out.violations.append((seed, "no history separated the two criteria"))
    return out


# -- consensus on the capacity-1 oracle ------------------------------------------------


def consensus_campaign(runs: int = 200, seed: int = 0, n: int = 4,
                       max_faults: int = 1,
                       grant_probability: float = 0.5) -> CampaignResult:
    """Agreement/termination/integrity/validity across seeded crash schedules."""
    out = CampaignResult(name="consensus", runs=runs)
    crashed_runs = 0
    exhausted_total = 0
    for i in range(runs):
        run_seed = seed * 104729 + i
        rng = random.Random(run_seed)
        crash = CrashSchedule()
        if rng.random() < 0.6:
            victim = f"p{rng.randrange(n)}"
            crash = CrashSchedule(victims=((victim, rng.randint(1, 12)),))
            crashed_runs += 1
        outcome = run_consensus(n, run_seed, crash,
                                grant_probability=grant_probability)
        exhausted_total += len(outcome.exhausted)
        decided = list(outcome.decided.values())
        if len({b.id for b in decided}) > 1:                    # agreement
            out.violations.append((run_seed, f"two decisions: {sorted(b.id for b in decided)}"))
            continue
        expected_deciders = {f"p{j}" for j in range(n)} - set(outcome.crashed) \
            - set(outcome.exhausted)
        if set(outcome.decided) != expected_deciders:           # termination
            out.violations.append((run_seed, "a live proposer never decided"))
            continue
        for proposer, block in outcome.decided.items():         # validity
            if not block.id.startswith("v-p"):
                out.violations.append((run_seed, f"decided foreign value {block.id}"))
                break
    out.stats = {"crash_schedules": crashed_runs, "exhausted": exhausted_total}
    return out


# -- exhaustive equivalence labs ---------------------------------------------------------


def cas_equivalence_suite() -> CampaignResult:
    """Token consumption implements compare&swap: every interleaving of up to
    three concurrent swappers returns exactly what atomic cas returns, in
    linearization (consume) order, and exactly one swap from empty wins."""
    out = CampaignResult(name="cas-equivalence", runs=0)
    for n_callers in (1, 2, 3):
        for order in interleavings([2] * n_callers):
            out.runs += 1
            oracle = prodigal_oracle({f"c{i}": Merit(1.0) for i in range(n_callers)},
                                     seed=0)
            # every caller holds a granted token for the same parent
            stamped = {}
            for i in range(n_callers):
                s = oracle.get_token("b0", Block(id=f"x{i}"), f"c{i}")
                assert s is not None
                stamped[i] = s
            oracle.capacity = 1                     # the contended register
            returns: Dict[str, Any] = {}
            consume_order: List[int] = []
            steps = []
            for i in range(n_callers):
                # the consume (first step) is the linearization point; log it
                first, second = cas_via_consume_steps(oracle, stamped[i],
                                                      returns, f"c{i}")

                def consume_step(first=first, who=i):
                    consume_order.append(who)
                    first()
                steps.append([consume_step, second])
            run_interleaving(order, steps)

            reference = RegisterSpace({"reg": frozenset()})
            expected = {}
            for who in consume_order:
                expected[f"c{who}"] = reference.cas(
                    "reg", frozenset(), frozenset({stamped[who]}))
            if expected != returns:
                out.violations.append((tuple(order), f"{returns} != {expected}"))
            winners = [k for k, v in returns.items() if v == frozenset()]
            if len(winners) != 1:
                out.violations.append((tuple(order), f"winners: {winners}"))
    return out


def snapshot_equivalence_suite() -> CampaignResult:
    """Update-then-scan implements unbounded consume: in every interleaving of
    two concurrent calls the scan returns exactly the tokens already
    published, which is what the unbounded oracle's consumed set holds at
    that step; each caller sees at least its own token and the union is both."""
    out = CampaignResult(name="snapshot-equivalence", runs=0)
    writers = ["w0", "w1"]
    for order in interleavings([2, 2]):
        out.runs += 1
        space = RegisterSpace()
        oracle = prodigal_oracle({w: Merit(1.0) for w in writers}, seed=0)
        stamped = {i: oracle.get_token("b0", Block(id=f"y{i}"), w)
                   for i, w in enumerate(writers)}
        returns: Dict[str, Any] = {}
        mirror: Dict[str, Any] = {}
        steps = []
        for i, w in enumerate(writers):
            raw = consume_via_snapshot_steps(
                space, "b0", w, writers, stamped[i], returns, w)
            update_raw, scan_raw = raw

            def update_step(update_raw=update_raw, i=i):
                update_raw()
                oracle.consume_token(stamped[i])     # oracle add in lockstep

            def scan_step(scan_raw=scan_raw, w=w):
                scan_raw()
                mirror[w] = oracle.consumed_view("b0")
            steps.append([update_step, scan_step])
        run_interleaving(order, steps)

        for i, w in enumerate(writers):
            got = returns[w]
            oracle_view = frozenset(mirror[w])
            if frozenset(got) != oracle_view:
                out.violations.append(
                    (tuple(order), f"{w} saw {got}, oracle had {oracle_view}"))
            if stamped[i] not in got:
                out.violations.append((tuple(order), f"{w} missed its own token"))
        union = frozenset().union(*[frozenset(returns[w]) for w in writers])
        if union != frozenset(stamped.values()):
            out.violations.append((tuple(order), f"union {union} incomplete"))
    return out


# -- oracle tape statistics ----------------------------------------------------------------


def tape_statistics(seed: int = 2026, pops: int = 10_000,
                    p: float = 0.5) -> Dict[str, Any]:
    oracle = prodigal_oracle({"miner": Merit(p)}, seed=seed)
    tape = oracle.tapes["miner"]
    grants = sum(1 for _ in range(pops) if tape.pop())
    mean = pops * p
    sigma = (pops * p * (1 - p)) ** 0.5
    return {
        "seed": seed, "pops": pops, "p": p, "grants": grants,
        "low": mean - 3 * sigma, "high": mean + 3 * sigma,
        "ok": abs(grants - mean) <= 3 * sigma,
    }


CAMPAIGNS: Dict[str, Callable[..., CampaignResult]] = {
    "shm": lambda runs, seed: consensus_campaign(runs=runs, seed=seed),
    "hierarchy": lambda runs, seed: hierarchy_campaign(runs=runs, seed=seed),
    "kfork": lambda runs, seed: _kfork_all(runs, seed),
    "containment": lambda runs, seed: containment_campaign(runs=runs, seed=seed),
    "cas": lambda runs, seed: cas_equivalence_suite(),
    "snapshot": lambda runs, seed: snapshot_equivalence_suite(),
}


def _kfork_all(runs: int, seed: int) -> CampaignResult:
    merged = CampaignResult(name="kfork", runs=0)
    for k in (1, 2, 3):
        r = kfork_campaign(k, runs=runs, seed=seed)
        merged.runs += r.runs
        merged.violations.extend(r.violations)
        merged.stats[f"k={k}"] = r.stats
    return merged
