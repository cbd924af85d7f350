"""Token oracles.

An oracle hands out the right to append. Each registered holder owns an
infinite pseudorandom tape of cells; popping the tape either grants a token
(with the holder's merit probability) or comes up blank. A granted token is
bound to one parent block and can be consumed at most once. The oracle caps
how many blocks may ever be consumed per parent: capacity k for the frugal
oracle, unbounded for the prodigal one (which is just k = infinity).

Tapes are lazily materialized: cell contents are a pure function of
(oracle seed, holder, cell index), so equal seeds replay identical grant
sequences on any platform.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional

from .blocktree import Block


class ConfigError(ValueError):
    """Oracle misconfiguration (e.g. an unregistered caller)."""


@dataclass(frozen=True)
class Merit:
    """A holder's standing: the probability that a tape cell grants a token."""

    grant_probability: float

    def __post_init__(self):
        if not (0.0 < self.grant_probability <= 1.0):
            raise ConfigError("grant_probability must be in (0, 1]")


@dataclass(frozen=True)
class Token:
    tag: str
    parent_id: str
    bearer: str
    nonce: int


def _cell(seed: int, holder: str, index: int) -> float:
    h = hashlib.sha256(f"{seed}:{holder}:{index}".encode()).digest()
    return int.from_bytes(h[:8], "big") / 2**64


@dataclass
class Tape:
    """One holder's grant tape. pop() advances the cursor by one cell."""

    seed: int
    holder: str
    merit: Merit
    cursor: int = 0

    def peek(self, index: int) -> bool:
        return _cell(self.seed, self.holder, index) < self.merit.grant_probability

    def pop(self) -> bool:
        granted = self.peek(self.cursor)
        self.cursor += 1
        return granted


class OracleState:
    """Frugal capacity-k oracle; capacity=None is the prodigal oracle.

    get_token pops the caller's tape; on a grant it returns the candidate
    stamped with a fresh token bound to `parent_id` (the stamped block is
    thereby valid). consume_token spends a stamped block's token: if the token
    is genuine, unconsumed, and the parent still has room, the block joins the
    parent's consumed set. It always returns the current consumed set for the
    parent, so a loser learns who won. A capacity rejection does not burn the
    token.
    """

    def __init__(self, merits: Dict[str, Merit], capacity: Optional[int] = None,
                 seed: int = 0):
        if capacity is not None and capacity < 1:
            raise ConfigError("capacity must be >= 1 or None for unbounded")
        self.capacity = capacity
        self.seed = seed
        self.tapes: Dict[str, Tape] = {
            holder: Tape(seed=seed, holder=holder, merit=merit)
            for holder, merit in merits.items()
        }
        self.issued: Dict[str, Token] = {}
        self.consumed_tags: set = set()
        self._consumed: Dict[str, List[Block]] = {}
        self._nonce = 0

    # -- introspection ---------------------------------------------------

    def consumed_view(self, parent_id: str) -> FrozenSet[Block]:
        return frozenset(self._consumed.get(parent_id, []))

    def consumed_count(self, parent_id: str) -> int:
        return len(self._consumed.get(parent_id, []))

    def is_consumed_block(self, block: Block) -> bool:
        """True iff this exact stamped block sits in its parent's consumed set."""
        if block.token_tag is None or block.parent_id is None:
            return False
        return block in self._consumed.get(block.parent_id, [])

    # -- operations --------------------------------------------------------

    def get_token(self, parent_id: str, candidate: Block, caller: str) -> Optional[Block]:
        """Pop the caller's tape; return the stamped candidate on a grant."""
        tape = self.tapes.get(caller)
        if tape is None:
            raise ConfigError(f"unregistered caller {caller!r}")
        if not tape.pop():
            return None
        self._nonce += 1
        token = Token(tag=f"tkn{self._nonce}", parent_id=parent_id,
                      bearer=caller, nonce=self._nonce)
        self.issued[token.tag] = token
        return replace(candidate, parent_id=parent_id, token_tag=token.tag)

    def consume_token(self, stamped: Block) -> FrozenSet[Block]:
        token = self.issued.get(stamped.token_tag) if stamped.token_tag else None
        genuine = (
            token is not None
            and token.tag not in self.consumed_tags
            and token.parent_id == stamped.parent_id
        )
        if genuine:
            bucket = self._consumed.setdefault(stamped.parent_id, [])
            if self.capacity is None or len(bucket) < self.capacity:
                bucket.append(stamped)
                self.consumed_tags.add(token.tag)
        return self.consumed_view(stamped.parent_id)


def frugal_oracle(merits: Dict[str, Merit], k: int, seed: int = 0) -> OracleState:
    return OracleState(merits, capacity=k, seed=seed)


def prodigal_oracle(merits: Dict[str, Merit], seed: int = 0) -> OracleState:
    return OracleState(merits, capacity=None, seed=seed)
