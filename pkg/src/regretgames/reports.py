"""Machine-readable solver reports and strategy tables.

Every value that may be ``INF`` is written as the string ``"inf"``; tuples
(compound memory states) become arrays.  :func:`SolveReport.from_json`
inverts :meth:`SolveReport.to_json` exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .arena import Player
from .extnat import INF
from .strategy import FiniteMemoryStrategy, MemorylessStrategy


def encode_value(v):
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, tuple):
        return [encode_value(x) for x in v]
    return v


def decode_value(v):
    if v == "inf":
        return INF
    if isinstance(v, list):
        return tuple(decode_value(x) for x in v)
    return v


def _sort_key(v) -> str:
    return json.dumps(encode_value(v), sort_keys=True)


def strategy_to_json(strategy) -> dict:
    """Memory alphabet, initial memory and transition tables (reachable entries only)."""
    if isinstance(strategy, MemorylessStrategy):
        return {
            "kind": "memoryless",
            "player": int(strategy.player),
            "moves": [{"position": p, "move": strategy.choices[p]} for p in sorted(strategy.choices)],
        }
    moves = sorted(strategy.moves.items(), key=lambda kv: (_sort_key(kv[0][0]), kv[0][1]))
    updates = sorted(strategy.updates.items(), key=lambda kv: (_sort_key(kv[0][0]), kv[0][1], kv[0][2]))
    return {
        "kind": "finite-memory",
        "player": int(strategy.player),
        "description": strategy.description,
        "initial": encode_value(strategy.initial),
        "memory": sorted((encode_value(m) for m in strategy.memory_alphabet), key=lambda m: json.dumps(m, sort_keys=True)),
        "moves": [{"memory": encode_value(m), "position": p, "move": t} for (m, p), t in moves],
        "updates": [
            {"memory": encode_value(m), "position": p, "successor": t, "next": encode_value(n)}
            for (m, p, t), n in updates
        ],
    }


def strategy_from_json(doc: dict):
    player = Player(doc["player"])
    if doc["kind"] == "memoryless":
        return MemorylessStrategy(player, {m["position"]: m["move"] for m in doc["moves"]})
    moves = {(decode_value(m["memory"]), m["position"]): m["move"] for m in doc["moves"]}
    updates = {
        (decode_value(u["memory"]), u["position"], u["successor"]): decode_value(u["next"]) for u in doc["updates"]
    }
    return FiniteMemoryStrategy(player, decode_value(doc["initial"]), moves, updates, doc.get("description", ""))


@dataclass(frozen=True)
class SolveReport:
    """What a CLI command prints: command echo, arena digest and results."""

    command: str
    args: dict
    digest: Optional[str]
    results: dict = field(default_factory=dict)
    diagnostics: tuple = ()
    exit_code: int = 0

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "version": 1,
            "command": self.command,
            "args": self.args,
            "arena_digest": self.digest,
            "results": _encode_tree(self.results),
            "exit_code": self.exit_code,
        }
        if self.diagnostics:
            out["diagnostics"] = list(self.diagnostics)
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "SolveReport":
        return cls(
            doc["command"],
            doc["args"],
            doc["arena_digest"],
            _decode_tree(doc["results"]),
            tuple(doc.get("diagnostics", ())),
            doc.get("exit_code", 0),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def _encode_tree(v):
    if isinstance(v, dict):
        return {k: _encode_tree(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_encode_tree(x) for x in v]
    return encode_value(v)


def _decode_tree(v):
    # results keep JSON shapes (lists stay lists); only "inf" is mapped back
    if isinstance(v, dict):
        return {k: _decode_tree(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_decode_tree(x) for x in v]
    return INF if v == "inf" else v
