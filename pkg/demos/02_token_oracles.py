"""Token oracles: who may append, and how many may succeed per parent.

Appending is gated by tokens. Each holder has a deterministic merit tape
(seeded hashes compared against its merit), so grants are reproducible.
A frugal oracle caps successful consumptions per parent block at k; the
prodigal oracle never refuses. The cap is what bounds forking.
"""

from btlab import Block, Merit, frugal_oracle, prodigal_oracle

miners = {"alice": Merit(1.0), "bob": Merit(1.0), "carol": Merit(0.5)}

frugal = frugal_oracle(miners, k=1, seed=42)

# Both alice and bob win tokens for genesis...
alice_block = frugal.get_token("b0", Block("a1"), "alice")
bob_block = frugal.get_token("b0", Block("b1"), "bob")
print("alice stamped:", alice_block)
print("bob stamped:  ", bob_block)

# ...but with k=1 only the first consumption under parent b0 succeeds.
after_alice = frugal.consume_token(alice_block)
after_bob = frugal.consume_token(bob_block)
print("consumed after alice:", sorted(b.id for b in after_alice))
print("consumed after bob:  ", sorted(b.id for b in after_bob),
      "(bob rejected: capacity 1 already used)")

# Rejection does not burn bob's chances: he can re-arm under the new leaf
# and try again one level down.
retry = frugal.get_token(alice_block.id, Block("b2"), "bob")
print("bob re-granted under", alice_block.id, "->",
      sorted(b.id for b in frugal.consume_token(retry)))

# The prodigal oracle accepts every genuine token: forks are unbounded.
prodigal = prodigal_oracle(miners, seed=42)
for holder, bid in (("alice", "p1"), ("bob", "p2"), ("carol", "p3")):
    stamped = prodigal.get_token("b0", Block(bid), holder)
    if stamped is not None:
        prodigal.consume_token(stamped)
print("prodigal consumed under b0:",
      sorted(b.id for b in prodigal.consumed_view("b0")))

# Merit draws are deterministic per (seed, holder, index): replaying the
# same tape yields the same grant pattern.
replay = prodigal_oracle(miners, seed=42)
tape_a = [replay.tapes["carol"].pop() for _ in range(10)]
replay2 = prodigal_oracle(miners, seed=42)
tape_b = [replay2.tapes["carol"].pop() for _ in range(10)]
print("carol's first 10 draws:", tape_a, "replay identical:", tape_a == tape_b)
