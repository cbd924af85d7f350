"""Block tree abstract data type.

A block tree is a rooted in-tree of blocks. Appending never removes anything:
a valid block is attached as a child of the leaf of the currently selected
chain, and a read returns that selected chain (genesis included). Which chain
is "selected" is the job of a pluggable selection policy: a chain chooser, a
monotone score, and a validity predicate.

The default policy is longest-chain with a deterministic lexicographic
tiebreak and score = chain length (genesis counts).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

GENESIS_ID = "b0"

# A blockchain is a root-to-leaf path, genesis first.
Blockchain = Tuple["Block", ...]


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


@dataclass(frozen=True)
class Block:
    """An immutable block. parent_id is None only for genesis.

    token_tag names the oracle token that validated this block, when an
    oracle is in play; plain trees leave it None.
    """

    id: str
    parent_id: Optional[str] = None
    payload: str = ""
    token_tag: Optional[str] = None

    def is_genesis(self) -> bool:
        return self.parent_id is None


def genesis_block(block_id: str = GENESIS_ID) -> Block:
    return Block(id=block_id, parent_id=None)


def chain_ids(chain: Blockchain) -> Tuple[str, ...]:
    return tuple(b.id for b in chain)


def is_prefix(shorter: Tuple, longer: Tuple) -> bool:
    """True iff `shorter` is an initial segment of `longer` (or equal)."""
    return len(shorter) <= len(longer) and tuple(longer[: len(shorter)]) == tuple(shorter)


def prefix_comparable(a: Tuple, b: Tuple) -> bool:
    return is_prefix(a, b) or is_prefix(b, a)


def common_prefix(a: Tuple, b: Tuple) -> Tuple:
    out = []
    for x, y in zip(a, b):
        if x != y:
            break
        out.append(x)
    return tuple(out)


def length_score(chain: Tuple) -> int:
    """Default monotone score: number of blocks, genesis included."""
    return len(chain)


def mcps(a: Tuple, b: Tuple, score: Callable[[Tuple], int] = length_score) -> int:
    """Score of the maximal common prefix of two chains.

    Both chains must share a genesis; chains of unrelated objects are not
    comparable.
    """
    if not a or not b or a[0] != b[0]:
        raise DomainError("mcps: chains do not share a genesis block")
    return score(common_prefix(a, b))


@dataclass
class SelectionPolicy:
    """Chain selection for a block tree.

    chain_chooser may be None, in which case the highest-scoring root-to-leaf
    chain wins and ties break by the lexicographically largest id sequence.
    validity guards append(); the default accepts a fresh block whose claimed
    parent (if any) is the selected leaf.
    """

    score: Callable[[Blockchain], int] = length_score
    chain_chooser: Optional[Callable[["BlockTree"], Blockchain]] = None
    validity: Optional[Callable[["BlockTree", Block], bool]] = None

    def choose(self, tree: "BlockTree") -> Blockchain:
        if self.chain_chooser is not None:
            return self.chain_chooser(tree)
        return max(tree.leaf_chains(), key=lambda c: (self.score(c), chain_ids(c)))

    def is_valid(self, tree: "BlockTree", block: Block) -> bool:
        if self.validity is not None:
            return self.validity(tree, block)
        return default_validity(tree, block, self)


def default_validity(tree: "BlockTree", block: Block, policy: "SelectionPolicy") -> bool:
    if block.id in tree:
        return False
    if block.parent_id is None:
        return True
    return block.parent_id == policy.choose(tree)[-1].id


class BlockTree:
    """Rooted tree of blocks with append/read semantics.

    append() attaches at the selected leaf (the transition never rewrites
    history, it only grows the tree); read() returns the selected chain.
    insert() is the raw structural operation used when the parent is already
    bound (e.g. applying a replicated update).
    """

    def __init__(self, genesis: Optional[Block] = None):
        g = genesis if genesis is not None else genesis_block()
        if not g.is_genesis():
            raise DomainError("genesis block must have no parent")
        self.genesis_id = g.id
        self._blocks: Dict[str, Block] = {g.id: g}
        self._children: Dict[str, List[str]] = {g.id: []}

    # -- structure -----------------------------------------------------

    def __contains__(self, block_id: str) -> bool:
        return block_id in self._blocks

    def __len__(self) -> int:
        return len(self._blocks)

    def block(self, block_id: str) -> Block:
        return self._blocks[block_id]

    def blocks(self) -> List[Block]:
        return [self._blocks[i] for i in sorted(self._blocks)]

    def children(self, block_id: str) -> List[str]:
        return list(self._children.get(block_id, []))

    def fork_count(self, block_id: str) -> int:
        """Number of children of a block: the width of the fork at it."""
        return len(self._children.get(block_id, []))

    def max_fork_count(self) -> int:
        return max(len(v) for v in self._children.values())

    def leaves(self) -> List[str]:
        return sorted(i for i, kids in self._children.items() if not kids)

    def chain_to(self, block_id: str) -> Blockchain:
        """Root-to-block path."""
        out = []
        cur: Optional[str] = block_id
        while cur is not None:
            b = self._blocks[cur]
            out.append(b)
            cur = b.parent_id
        return tuple(reversed(out))

    def leaf_chains(self) -> List[Blockchain]:
        return [self.chain_to(leaf) for leaf in self.leaves()]

    def insert(self, block: Block) -> None:
        """Attach a block under its bound parent. Parent must exist, id fresh."""
        if block.id in self._blocks:
            raise DomainError(f"duplicate block id {block.id!r}")
        if block.parent_id is None:
            raise DomainError("cannot insert a second genesis")
        if block.parent_id not in self._blocks:
            raise DomainError(f"unknown parent {block.parent_id!r}")
        self._blocks[block.id] = block
        self._children[block.id] = []
        self._children[block.parent_id].append(block.id)

    # -- ADT operations -------------------------------------------------

    def append(self, candidate: Block, policy: SelectionPolicy) -> bool:
        """Attach `candidate` after the selected chain if it is valid.

        Returns True iff the tree changed. The stored block's parent is the
        selected leaf.
        """
        if not policy.is_valid(self, candidate):
            return False
        leaf = policy.choose(self)[-1]
        self.insert(replace(candidate, parent_id=leaf.id))
        return True

    def read(self, policy: SelectionPolicy) -> Blockchain:
        """The selected chain, genesis first. Genesis-only trees read as (g,)."""
        return policy.choose(self)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        """Canonical JSON snapshot: sorted ids, explicit parent links."""
        doc = {
            "genesis": self.genesis_id,
            "blocks": [
                {
                    "id": b.id,
                    "parent": b.parent_id,
                    "payload": b.payload,
                    "token_tag": b.token_tag,
                }
                for b in self.blocks()
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BlockTree":
        doc = json.loads(text)
        by_id = {d["id"]: d for d in doc["blocks"]}
        g = by_id[doc["genesis"]]
        tree = cls(Block(id=g["id"], parent_id=None, payload=g.get("payload", ""),
                         token_tag=g.get("token_tag")))
        # parents before children
        pending = [d for d in doc["blocks"] if d["id"] != doc["genesis"]]
        while pending:
            progressed = False
            rest = []
            for d in pending:
                if d["parent"] in tree:
                    tree.insert(Block(id=d["id"], parent_id=d["parent"],
                                      payload=d.get("payload", ""),
                                      token_tag=d.get("token_tag")))
                    progressed = True
                else:
                    rest.append(d)
            if not progressed:
                raise DomainError("snapshot is not a tree rooted at genesis")
            pending = rest
        return tree
