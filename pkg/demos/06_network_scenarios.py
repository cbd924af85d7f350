"""Deterministic network scenarios: simulate, judge, and heal a violation.

A scenario describes processes (merit, schedules, faults), a channel
(synchrony, delays, drops), and an oracle. Running it yields a recorded
history plus verdicts for the declared criteria. Everything is seeded:
the same scenario file always produces byte-identical traces.

The CLI wraps the same calls:  btlab run figure-4 --out traces/
"""

import dataclasses

from btlab import OracleSpec, evaluate_run, preset, preset_names, run_scenario


def show(run, report):
    print(f"  dropped={run.dropped} undelivered={run.undelivered}")
    for crit, row in report["verdicts"].items():
        mark = "ok" if row["ok"] else "MISMATCH"
        print(f"  {crit:16s} {row['actual']:12s} expected={row['expected']:12s} [{mark}]")


print("built-in scenarios:", ", ".join(preset_names()), "\n")

# Two miners race under an unbounded oracle and read each other's fork
# before their own block arrives back: the strong criterion breaks.
fork = preset("fork-strong-violation")
run = run_scenario(fork)
print("fork-strong-violation:")
report = evaluate_run(run)
show(run, report)
for read in run.history.reads():
    print(f"  {read.process} read {read.response.returned}")

# The same world under a capacity-1 oracle cannot fork at all.
healed = dataclasses.replace(
    fork, name="fork-healed",
    oracle=OracleSpec(capacity=1, seed=fork.oracle.seed),
    expected_verdicts={"strong-prefix": "PASS"})
print("\nsame scenario, frugal capacity-1 oracle:")
run = run_scenario(healed)
show(run, evaluate_run(run))

# Larger worlds: a proof-of-work-flavoured mesh forks transiently (eventual
# consistency only), a permissioned one stays strongly consistent.
for name in ("bitcoin-like", "consortium-like"):
    sc = preset(name)
    run = run_scenario(sc)
    print(f"\n{name}: {sc.description}")
    show(run, evaluate_run(run))

# Traces replay byte-for-byte: run twice, compare the serialized histories.
again = run_scenario(preset("consortium-like"))
first = run_scenario(preset("consortium-like"))
print("\nbyte-identical replay:",
      again.history.to_jsonl() == first.history.to_jsonl())
