"""Consistency criteria over histories, with three-valued verdicts.

Safety criteria (block validity, local monotonic read, strong prefix, the
prior-receive clause of update agreement) FAIL with a witness the moment a
finite history refutes them. Eventual criteria can never be refuted by a
finite prefix alone, so they report PASS when the trailing window is clean,
INCONCLUSIVE when a violation persists into the window, and FAIL only when
the history is declared complete (nothing more will ever come, i.e. the
depicted tail is forever).

The trailing window holds the last `stabilization_suffix` completed reads of
each process. Window reads are evidence, not references: an eventuality is
judged for reads that still have a future inside the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from .blocktree import length_score, mcps, prefix_comparable
from .history import Event, EventKind, History, Operation, returned_chain

ScoreFn = Callable[[Tuple[str, ...]], int]


class Status:
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Verdict:
    criterion: str
    status: str
    witness: Tuple[int, ...] = ()          # event ids pinning a violation
    detail: str = ""
    parts: Dict[str, "Verdict"] = field(default_factory=dict)

    def __str__(self):
        tail = f" witness={list(self.witness)}" if self.witness else ""
        note = f" ({self.detail})" if self.detail else ""
        return f"{self.criterion}: {self.status}{tail}{note}"


@dataclass(frozen=True)
class EventualityWindow:
    """How many trailing reads per process must already agree."""

    stabilization_suffix: int = 3

    def __post_init__(self):
        if self.stabilization_suffix < 1:
            raise ValueError("stabilization_suffix must be >= 1")


DEFAULT_WINDOW = EventualityWindow()


def _split_window(h: History, window: EventualityWindow):
    """(reference reads, window read set) by per-process trailing suffix."""
    in_window: Set[int] = set()
    for p in h.processes:
        per = h.reads_of(p)
        for op in per[-window.stabilization_suffix:]:
            in_window.add(op.response.event_id)
    refs = [r for r in h.reads() if r.response.event_id not in in_window]
    return refs, in_window


# -- block validity -------------------------------------------------------


def check_block_validity(h: History, genesis_id: str = "b0") -> Verdict:
    """Every block a read returns must have been appended beforehand."""
    appends: Dict[str, List[Event]] = {}
    for e in h.events:
        if e.op == "append" and e.kind is EventKind.INVOCATION and e.args:
            appends.setdefault(str(e.args[0]), []).append(e)
    for read in h.reads():
        rsp = read.response
        for block_id in returned_chain(read):
            if block_id == genesis_id:
                continue
            ok = any(
                inv.logical_time < rsp.logical_time
                or (inv.process == rsp.process and h.seq(inv) < h.seq(rsp))
                for inv in appends.get(block_id, [])
            )
            if not ok:
                return Verdict(
                    "block-validity", Status.FAIL, (rsp.event_id,),
                    f"read returned {block_id!r} with no prior append")
    return Verdict("block-validity", Status.PASS)


# -- local monotonic read -----------------------------------------------------


def check_local_monotonic_read(h: History, score: ScoreFn = length_score) -> Verdict:
    """Per process, read scores never decrease."""
    for p in h.processes:
        per = h.reads_of(p)
        for earlier, later in zip(per, per[1:]):
            if score(returned_chain(later)) < score(returned_chain(earlier)):
                return Verdict(
                    "local-monotonic-read", Status.FAIL,
                    (earlier.response.event_id, later.response.event_id),
                    f"score fell at {p}: "
                    f"{score(returned_chain(earlier))} -> {score(returned_chain(later))}")
    return Verdict("local-monotonic-read", Status.PASS)


# -- strong prefix ---------------------------------------------------------------


def check_strong_prefix(h: History) -> Verdict:
    """Any two returned chains, whoever read them, must be prefix-comparable."""
    reads = h.reads()
    for i, a in enumerate(reads):
        for b in reads[i + 1:]:
            ca, cb = returned_chain(a), returned_chain(b)
            if not ca or not cb:
                continue
            if not prefix_comparable(ca, cb):
                return Verdict(
                    "strong-prefix", Status.FAIL,
                    (a.response.event_id, b.response.event_id),
                    f"{'/'.join(ca)} vs {'/'.join(cb)}")
    return Verdict("strong-prefix", Status.PASS)


# -- ever growing tree -------------------------------------------------------------


def check_ever_growing_tree(h: History, window: EventualityWindow = DEFAULT_WINDOW,
                            score: ScoreFn = length_score) -> Verdict:
    """Only finitely many later reads may score <= a read's score.

    A finite history can never refute this, so the verdict is PASS or
    INCONCLUSIVE: inconclusive iff a low read persists into the window.
    """
    refs, in_window = _split_window(h, window)
    for r in refs:
        s = score(returned_chain(r))
        for later in h.reads():
            if later is r or later.response.event_id not in in_window:
                continue
            if not h.po(r.response, later.invocation):
                continue
            if score(returned_chain(later)) <= s:
                return Verdict(
                    "ever-growing-tree", Status.INCONCLUSIVE,
                    (r.response.event_id, later.response.event_id),
                    f"window read score {score(returned_chain(later))} <= {s}")
    return Verdict("ever-growing-tree", Status.PASS)


# -- eventual prefix ----------------------------------------------------------------


def check_eventual_prefix(h: History, window: EventualityWindow = DEFAULT_WINDOW,
                          score: ScoreFn = length_score) -> Verdict:
    """For each reference read, later reads eventually agree up to its score.

    A violating pair inside the trailing window means the divergence has not
    healed by the end of the trace: INCONCLUSIVE, or FAIL when the history is
    declared complete (the tail persists forever).
    """
    refs, in_window = _split_window(h, window)
    for r in refs:
        s = score(returned_chain(r))
        tail = [o for o in h.reads_after(r) if o.response.event_id in in_window]
        for i, a in enumerate(tail):
            for b in tail[i + 1:]:
                ca, cb = returned_chain(a), returned_chain(b)
                if not ca or not cb:
                    continue
                if mcps(ca, cb, score) < s:
                    status = Status.FAIL if h.complete else Status.INCONCLUSIVE
                    return Verdict(
                        "eventual-prefix", status,
                        (r.response.event_id, a.response.event_id, b.response.event_id),
                        f"window reads agree only below score {s}")
    return Verdict("eventual-prefix", Status.PASS)


# -- update agreement ----------------------------------------------------------------


def _comm_events(h: History, op: str) -> List[Event]:
    kind = EventKind(op)
    return [e for e in h.events if e.kind is kind and len(e.args) >= 2]


def _block_owner(h: History) -> Dict[str, str]:
    """Originator of each block: process of its earliest send/update."""
    owner: Dict[str, str] = {}
    for e in h.events:
        if e.kind in (EventKind.SEND, EventKind.UPDATE) and len(e.args) >= 2:
            owner.setdefault(str(e.args[1]), e.process)
    return owner


def check_update_agreement(h: History) -> Verdict:
    """R1: own updates are broadcast. R2: foreign updates follow a local
    receive. R3: an updated block is eventually received everywhere."""
    sends = _comm_events(h, "send")
    receives = _comm_events(h, "receive")
    updates = _comm_events(h, "update")
    owner = _block_owner(h)

    def has(events: List[Event], process: Optional[str], parent: str, block: str):
        return [e for e in events
                if (process is None or e.process == process)
                and str(e.args[0]) == parent and str(e.args[1]) == block]

    for u in updates:                                              # R2 (safety) first
        parent, block = str(u.args[0]), str(u.args[1])
        if owner.get(block) == u.process:
            continue
        prior = [e for e in has(receives, u.process, parent, block)
                 if h.seq(e) < h.seq(u)]
        if not prior:
            return Verdict("update-agreement", Status.FAIL, (u.event_id,),
                           f"R2: {u.process} updated {block!r} without a "
                           "prior local receive")
    for u in updates:                                              # R1 (eventual)
        parent, block = str(u.args[0]), str(u.args[1])
        if owner.get(block) != u.process:
            continue
        if not has(sends, u.process, parent, block):
            status = Status.FAIL if h.complete else Status.INCONCLUSIVE
            return Verdict("update-agreement", status, (u.event_id,),
                           f"R1: {u.process} updated own block {block!r} "
                           "without ever broadcasting it")
    for u in updates:                                              # R3 (eventual)
        parent, block = str(u.args[0]), str(u.args[1])
        missing = [p for p in sorted(h.correct)
                   if not has(receives, p, parent, block)]
        if missing:
            status = Status.FAIL if h.complete else Status.INCONCLUSIVE
            return Verdict("update-agreement", status, (u.event_id,),
                           f"R3: {block!r} was updated but never received at "
                           f"{', '.join(missing)}")
    return Verdict("update-agreement", Status.PASS)


# -- reliable broadcast (validity + agreement) ------------------------------------------


def check_lrc(h: History) -> Verdict:
    """Broadcast contract: a sender delivers to itself, and a message
    received anywhere correct is received everywhere correct."""
    receives = _comm_events(h, "receive")
    got: Set[Tuple[str, str, str]] = {
        (e.process, str(e.args[0]), str(e.args[1])) for e in receives}
    for e in _comm_events(h, "send"):
        if e.process not in h.correct:
            continue
        if (e.process, str(e.args[0]), str(e.args[1])) not in got:
            status = Status.FAIL if h.complete else Status.INCONCLUSIVE
            return Verdict("lrc", status, (e.event_id,),
                           f"validity: {e.process} never delivered its own "
                           f"broadcast of {e.args[1]!r}")
    for e in receives:
        if e.process not in h.correct:
            continue
        parent, block = str(e.args[0]), str(e.args[1])
        missing = [p for p in sorted(h.correct) if (p, parent, block) not in got]
        if missing:
            status = Status.FAIL if h.complete else Status.INCONCLUSIVE
            return Verdict("lrc", status, (e.event_id,),
                           f"agreement: {block!r} reached {e.process} but not "
                           f"{', '.join(missing)}")
    return Verdict("lrc", Status.PASS)


# -- composite criteria --------------------------------------------------------------------


def _conjunction(name: str, parts: List[Verdict]) -> Verdict:
    by_name = {v.criterion: v for v in parts}
    for v in parts:
        if v.status == Status.FAIL:
            return Verdict(name, Status.FAIL, v.witness,
                           f"{v.criterion} failed: {v.detail}", by_name)
    for v in parts:
        if v.status == Status.INCONCLUSIVE:
            return Verdict(name, Status.INCONCLUSIVE, v.witness,
                           f"{v.criterion} inconclusive: {v.detail}", by_name)
    return Verdict(name, Status.PASS, (), "", by_name)


def check_sc(h: History, window: EventualityWindow = DEFAULT_WINDOW,
             score: ScoreFn = length_score) -> Verdict:
    """Strong consistency: validity + monotonic reads + strong prefix +
    ever growing tree."""
    return _conjunction("sc", [
        check_block_validity(h),
        check_local_monotonic_read(h, score),
        check_strong_prefix(h),
        check_ever_growing_tree(h, window, score),
    ])


def check_ec(h: History, window: EventualityWindow = DEFAULT_WINDOW,
             score: ScoreFn = length_score) -> Verdict:
    """Eventual consistency: validity + monotonic reads + ever growing tree +
    eventual prefix."""
    return _conjunction("ec", [
        check_block_validity(h),
        check_local_monotonic_read(h, score),
        check_ever_growing_tree(h, window, score),
        check_eventual_prefix(h, window, score),
    ])


CHECKERS: Dict[str, Callable[..., Verdict]] = {
    "block-validity": lambda h, window, score: check_block_validity(h),
    "local-monotonic-read": lambda h, window, score: check_local_monotonic_read(h, score),
    "strong-prefix": lambda h, window, score: check_strong_prefix(h),
    "ever-growing-tree": check_ever_growing_tree,
    "eventual-prefix": check_eventual_prefix,
    "update-agreement": lambda h, window, score: check_update_agreement(h),
    "lrc": lambda h, window, score: check_lrc(h),
    "sc": check_sc,
    "ec": check_ec,
}


def run_checker(name: str, h: History, window: EventualityWindow = DEFAULT_WINDOW,
                score: ScoreFn = length_score) -> Verdict:
    try:
        fn = CHECKERS[name]
    except KeyError:
        raise KeyError(f"unknown criterion {name!r}; choose from "
                       f"{', '.join(sorted(CHECKERS))}")
    return fn(h, window, score)
