"""JSON documents for arenas and penalty matrices.

Arena document (version 1)::

    {
      "version": 1,
      "name": "optional label",
      "initial": "A",
      "positions": [
        {"id": "A", "owner": 1},
        {"id": "T", "owner": 2, "target1": true, "weight1": 3}
      ],
      "edges": [{"from": "A", "to": "T", "w1": 3}]
    }

Target flags and edge weights default to ``false`` / ``0``.  A target
weight (``weight1`` / ``weight2``) on a position fills in that player's
weight on every edge entering it that leaves the weight out, and must agree
with the ones that do not.  Unknown fields are errors.

Matrix document (version 1)::

    {"version": 1, "rows": ["A1", "B1"], "cols": ["A2", "B2"],
     "cells": [[[2, 1], [3, 4]], [[1, 2], [4, 3]]]}

Parsing never raises on bad input: it returns a list of
:class:`Diagnostic` objects locating each problem by JSON field path (and
by line and column for syntax errors).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Optional, Union

from .arena import Arena, Edge, Player, Position, validate
from .matrix_irm import MatrixGame

VERSION = 1

_ARENA_FIELDS = {"version", "name", "initial", "positions", "edges"}
_POSITION_FIELDS = {"id", "owner", "target1", "target2", "weight1", "weight2"}
_EDGE_FIELDS = {"from", "to", "w1", "w2"}
_MATRIX_FIELDS = {"version", "name", "rows", "cols", "cells"}


@dataclass(frozen=True)
class Diagnostic:
    where: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None

    def __str__(self):
        loc = self.where
        if self.line is not None:
            loc = f"line {self.line}, column {self.column}"
        return f"{loc}: {self.message}"

    def to_json(self) -> dict:
        out = {"where": self.where, "message": self.message}
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        return out


class DocumentError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _load(text: str) -> tuple[Any, list[Diagnostic]]:
    try:
        return json.loads(text), []
    except json.JSONDecodeError as exc:
        return None, [Diagnostic("document", f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)]


def _is_nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def _unknown(obj: dict, allowed: set, where: str, diags: list):
    for k in sorted(obj):
        if k not in allowed:
            diags.append(Diagnostic(f"{where}.{k}" if where else k, "unknown field"))


def _version(doc: dict, diags: list):
    if "version" not in doc:
        diags.append(Diagnostic("version", "missing field"))
    elif doc["version"] != VERSION:
        diags.append(Diagnostic("version", f"unsupported version {doc['version']!r} (expected {VERSION})"))


def parse_arena(text: str) -> tuple[Optional[Arena], list[Diagnostic]]:
    """Parse an arena document; returns ``(arena, [])`` or ``(None, diagnostics)``."""
    doc, diags = _load(text)
    if diags:
        return None, diags
    if not isinstance(doc, dict):
        return None, [Diagnostic("document", "top level must be an object")]
    _unknown(doc, _ARENA_FIELDS, "", diags)
    _version(doc, diags)
    name = doc.get("name", "")
    if not isinstance(name, str):
        diags.append(Diagnostic("name", "must be a string"))
        name = ""
    initial = doc.get("initial")
    if not isinstance(initial, str):
        diags.append(Diagnostic("initial", "missing or not a string"))
    raw_pos = doc.get("positions")
    if not isinstance(raw_pos, list):
        diags.append(Diagnostic("positions", "missing or not an array"))
        raw_pos = []
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        diags.append(Diagnostic("edges", "must be an array"))
        raw_edges = []

    positions = []
    tweights: dict[tuple[str, int], int] = {}
    for k, p in enumerate(raw_pos):
        where = f"positions[{k}]"
        if not isinstance(p, dict):
            diags.append(Diagnostic(where, "must be an object"))
            continue
        _unknown(p, _POSITION_FIELDS, where, diags)
        pid = p.get("id")
        if not isinstance(pid, str) or not pid:
            diags.append(Diagnostic(f"{where}.id", "missing or not a nonempty string"))
            continue
        owner = p.get("owner")
        if owner not in (1, 2) or isinstance(owner, bool):
            diags.append(Diagnostic(f"{where}.owner", "owner must be 1 or 2"))
            continue
        flags = []
        for i in (1, 2):
            f = p.get(f"target{i}", False)
            if not isinstance(f, bool):
                diags.append(Diagnostic(f"{where}.target{i}", "must be true or false"))
                f = False
            flags.append(f)
            if f"weight{i}" in p:
                w = p[f"weight{i}"]
                if not _is_nat(w):
                    diags.append(Diagnostic(f"{where}.weight{i}", "must be a nonnegative integer"))
                elif not flags[-1]:
                    diags.append(Diagnostic(f"{where}.weight{i}", f"target weight on a position that is not a target of player {i}"))
                else:
                    tweights[(pid, i)] = w
        positions.append(Position(pid, Player(owner), flags[0], flags[1]))

    edges = []
    for k, e in enumerate(raw_edges):
        where = f"edges[{k}]"
        if not isinstance(e, dict):
            diags.append(Diagnostic(where, "must be an object"))
            continue
        _unknown(e, _EDGE_FIELDS, where, diags)
        src, dst = e.get("from"), e.get("to")
        if not isinstance(src, str) or not isinstance(dst, str):
            diags.append(Diagnostic(where, "fields 'from' and 'to' must be strings"))
            continue
        ws = []
        for i in (1, 2):
            key = f"w{i}"
            tw = tweights.get((dst, i))
            if key in e:
                w = e[key]
                if not _is_nat(w):
                    diags.append(Diagnostic(f"{where}.{key}", "must be a nonnegative integer"))
                    w = 0
                elif tw is not None and w != tw:
                    diags.append(Diagnostic(f"{where}.{key}", f"weight {w} differs from target weight {tw} of {dst!r}"))
            else:
                w = tw if tw is not None else 0
            ws.append(w)
        edges.append(Edge(src, dst, ws[0], ws[1]))

    if diags:
        return None, diags
    arena = Arena(tuple(positions), initial, tuple(edges), name)
    for v in validate(arena):
        diags.append(Diagnostic("arena", v))
    return (None, diags) if diags else (arena, [])


def load_arena(text: str) -> Arena:
    arena, diags = parse_arena(text)
    if diags:
        raise DocumentError(diags)
    return arena


def arena_to_doc(arena: Arena) -> dict:
    """Canonical document: positions and edges sorted by id, defaults omitted."""
    positions = []
    for p in sorted(arena.positions, key=lambda p: p.id):
        d: dict = {"id": p.id, "owner": int(p.owner)}
        if p.target1:
            d["target1"] = True
        if p.target2:
            d["target2"] = True
        positions.append(d)
    edges = []
    for e in sorted(arena.edges, key=lambda e: (e.src, e.dst)):
        d = {"from": e.src, "to": e.dst}
        if e.w1:
            d["w1"] = e.w1
        if e.w2:
            d["w2"] = e.w2
        edges.append(d)
    doc = {"version": VERSION, "initial": arena.initial, "positions": positions, "edges": edges}
    if arena.name:
        doc["name"] = arena.name
    return doc


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def arena_to_text(arena: Arena) -> str:
    return dumps(arena_to_doc(arena))


def arena_digest(arena: Arena) -> str:
    """Content hash of the canonical document (the name is ignored)."""
    doc = arena_to_doc(arena)
    doc.pop("name", None)
    return "sha256:" + hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def parse_matrix(text: str) -> tuple[Optional[MatrixGame], list[Diagnostic]]:
    doc, diags = _load(text)
    if diags:
        return None, diags
    if not isinstance(doc, dict):
        return None, [Diagnostic("document", "top level must be an object")]
    _unknown(doc, _MATRIX_FIELDS, "", diags)
    _version(doc, diags)
    cells = doc.get("cells")
    if not isinstance(cells, list) or not cells:
        diags.append(Diagnostic("cells", "missing or empty"))
        return None, diags
    width = None
    grid = []
    for r, row in enumerate(cells):
        if not isinstance(row, list) or not row:
            diags.append(Diagnostic(f"cells[{r}]", "must be a nonempty array"))
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            diags.append(Diagnostic(f"cells[{r}]", f"has {len(row)} cells, expected {width}"))
        out_row = []
        for c, pair in enumerate(row):
            if not (isinstance(pair, list) and len(pair) == 2 and all(_is_nat(v) for v in pair)):
                diags.append(Diagnostic(f"cells[{r}][{c}]", "must be a pair of nonnegative integers"))
                continue
            out_row.append(tuple(pair))
        grid.append(out_row)
    names = {}
    for key, n in (("rows", len(cells)), ("cols", width or 0)):
        v = doc.get(key)
        if v is None:
            names[key] = ()
        elif not (isinstance(v, list) and all(isinstance(x, str) for x in v)) or len(v) != n:
            diags.append(Diagnostic(key, f"must be an array of {n} strings"))
        elif len(set(v)) != len(v):
            diags.append(Diagnostic(key, "names must be distinct"))
        else:
            names[key] = tuple(v)
    if diags:
        return None, diags
    return MatrixGame(tuple(tuple(r) for r in grid), names["rows"], names["cols"]), []


def load_matrix(text: str) -> MatrixGame:
    game, diags = parse_matrix(text)
    if diags:
        raise DocumentError(diags)
    return game


def matrix_to_doc(game: MatrixGame) -> dict:
    return {
        "version": VERSION,
        "rows": list(game.row_names),
        "cols": list(game.col_names),
        "cells": [[list(pair) for pair in row] for row in game.cells],
    }


def is_matrix_document(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "cells" in doc


Document = Union[Arena, MatrixGame]
