"""Command-line driver.

Every command except ``gen`` prints one JSON report per input file (an
array when several files are given, in input order).  Exit status:
0 success, 1 input diagnostics, 2 resource limit hit, 3 solver and oracle
disagree.  ``-`` reads the document from standard input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import generate, iterated_positive, iterated_tree, matrix_irm, minmax, oracle, regret_edge, regret_twa
from .arena import Arena, Player, TargetWeightedArena, is_tree, is_twa, outcome, play_utilities
from .docio import (
    Diagnostic,
    arena_digest,
    arena_to_text,
    is_matrix_document,
    matrix_to_doc,
    parse_arena,
    parse_matrix,
)
from .errors import RegretGamesError, ResourceLimitError
from .extnat import INF
from .reports import SolveReport, strategy_to_json

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_RESOURCE, EXIT_DISAGREE = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, diagnostics, results=None):
        self.code = code
        self.diagnostics = [d.to_json() if isinstance(d, Diagnostic) else d for d in diagnostics]
        self.results = results or {}


def _diag(where: str, message: str) -> dict:
    return {"where": where, "message": message}


def _arena(text: str) -> Arena:
    arena, diags = parse_arena(text)
    if diags:
        raise _Fail(EXIT_DIAGNOSTICS, diags)
    return arena


def _ranks(regrets) -> list[dict]:
    return [{"rank": j, "regret1": r1, "regret2": r2} for j, (r1, r2) in enumerate(regrets, 1)]


def _solve_regret(arena: Arena, player: Player):
    if is_twa(arena, player):
        rep = regret_twa.regret(arena, player)
        method = "target-weighted"
    else:
        rep = regret_edge.regret(arena, player)
        method = "edge-weighted"
    return rep, {
        "player": int(player),
        "method": method,
        "regret": rep.regret,
        "winning": rep.winning,
        "product_size": rep.product_size,
        "witness": strategy_to_json(rep.witness),
    }


# ---------------------------------------------------------------------------
# commands (each returns a results dict or raises _Fail)


def cmd_validate(text: str, args: dict) -> dict:
    if is_matrix_document(text):
        game, diags = parse_matrix(text)
        if diags:
            raise _Fail(EXIT_DIAGNOSTICS, diags, {"valid": False, "kind": "matrix"})
        return {"valid": True, "kind": "matrix", "shape": list(game.shape)}
    arena, diags = parse_arena(text)
    if diags:
        raise _Fail(EXIT_DIAGNOSTICS, diags, {"valid": False, "kind": "arena"})
    return {
        "valid": True,
        "kind": "arena",
        "positions": len(arena.ids),
        "edges": len(arena.edges),
        "max_weight": arena.max_weight(),
        "target_weighted": {"1": is_twa(arena, Player.P1), "2": is_twa(arena, Player.P2)},
        "tree": is_tree(arena),
        "strictly_positive": not iterated_positive.positivity_violations(arena),
    }


def cmd_minmax(text: str, args: dict) -> dict:
    arena = _arena(text)
    player = Player(args["player"])
    if not is_twa(arena, player):
        raise _Fail(EXIT_DIAGNOSTICS, [_diag("arena", f"min-max values need a target-weighted arena for player {int(player)}")])
    sol = minmax.solve(TargetWeightedArena.from_arena(arena, (player,)), player)
    return {
        "player": int(player),
        "value": sol.value,
        "winning": sol.value != INF,
        "witness": strategy_to_json(sol.strategy(player)),
    }


def cmd_regret(text: str, args: dict) -> dict:
    return _solve_regret(_arena(text), Player(args["player"]))[1]


def _outcome_result(arena: Arena, w1, w2) -> dict:
    play = outcome(arena, w1, w2)
    return {"play": list(play.positions), "lasso": play.loop_start, "penalty": list(play_utilities(arena, play))}


def cmd_iterated(text: str, args: dict) -> dict:
    arena = _arena(text)
    if is_tree(arena):
        rep = iterated_tree.iterated_regret(arena, args.get("max_rank"))
        return {
            "kind": "tree",
            "ranks": _ranks(rep.regrets),
            "star": rep.star,
            "final": list(rep.final),
            "survivors": sorted(rep.survivors),
            "outcome": _outcome_result(arena, rep.witnesses[1], rep.witnesses[2]),
            "witnesses": {str(p): strategy_to_json(rep.witnesses[p]) for p in (1, 2)},
            "node_visits": rep.visits,
        }
    bad = iterated_positive.positivity_violations(arena)
    if bad:
        raise _Fail(
            EXIT_DIAGNOSTICS,
            [_diag("arena", "iterated regret needs a tree or a strictly positive arena")]
            + [_diag("arena", v) for v in bad],
        )
    config = iterated_positive.UnfoldConfig(cap=args["cap"], bound=args.get("bound"))
    rep = iterated_positive.iterated_regret(arena, config)
    return {
        "kind": "positive",
        "bound": rep.bound,
        "unfolding_size": len(rep.unfolding),
        "ranks": _ranks(rep.regrets),
        "star": rep.star,
        "final": list(rep.final),
        "outcome": _outcome_result(arena, rep.witnesses[1], rep.witnesses[2]),
        "witnesses": {str(p): strategy_to_json(rep.witnesses[p]) for p in (1, 2)},
    }


def cmd_matrix(text: str, args: dict) -> dict:
    game, diags = parse_matrix(text)
    if diags:
        raise _Fail(EXIT_DIAGNOSTICS, diags)
    it = matrix_irm.iterate(game, args.get("max_rank"))
    rows, cols = game.row_names, game.col_names

    def names(sv):
        return {"1": [rows[i] for i in sorted(sv.rows)], "2": [cols[j] for j in sorted(sv.cols)]}

    return {
        "matrix": matrix_to_doc(game),
        "strategy_regrets": {
            "1": {rows[i]: matrix_irm.strategy_regret(game, 1, i) for i in range(len(rows))},
            "2": {cols[j]: matrix_irm.strategy_regret(game, 2, j) for j in range(len(cols))},
        },
        "ranks": [
            {"rank": j, "regret1": r.regret1, "regret2": r.regret2, "survivors": names(r.survivors)}
            for j, r in enumerate(it.ranks, 1)
        ],
        "star": it.star,
        "survivors": names(it.fixpoint),
    }


def _compare(name: str, solver, reference) -> dict:
    return {"name": name, "solver": solver, "oracle": reference, "agree": solver == reference}


def cmd_check(text: str, args: dict) -> dict:
    arena = _arena(text)
    checks = []
    for p in (Player.P1, Player.P2):
        rep, res = _solve_regret(arena, p)
        checks.append(_compare(f"regret player {int(p)} ({res['method']})", res["regret"], oracle.graph_regret_bruteforce(arena, p)))
        if res["winning"]:
            checks.append(
                _compare(f"witness regret player {int(p)}", oracle.strategy_regret_bruteforce(arena, p, rep.witness), res["regret"])
            )
    if is_tree(arena):
        rep = iterated_tree.iterated_regret(arena)
        brute = oracle.iterated_bruteforce(arena)
        checks.append(_compare("iterated regrets per rank", [list(r) for r in rep.regrets], [list(r) for r in brute.regrets]))
        sets_ok = all(
            oracle.survivors_match_subtree(arena, brute.survivors(j, p), p, rep.alive[j - 1])
            for j in range(1, min(rep.star, brute.star) + 1)
            for p in (Player.P1, Player.P2)
        )
        checks.append(_compare("surviving strategy sets per rank", sets_ok, True))
    elif not iterated_positive.positivity_violations(arena) and args.get("bound") is not None:
        config = iterated_positive.UnfoldConfig(cap=args["cap"], bound=args["bound"])
        rep = iterated_positive.iterated_regret(arena, config)
        brute = oracle.iterated_bruteforce(rep.unfolding.tree)
        checks.append(_compare("iterated regrets per rank (unfolding)", [list(r) for r in rep.regrets], [list(r) for r in brute.regrets]))
    agree = all(c["agree"] for c in checks)
    out = {"agree": agree, "verdict": "agree" if agree else "disagree", "checks": checks}
    if not agree:
        raise _Fail(EXIT_DISAGREE, [_diag("check", "solver and oracle disagree")], out)
    return out


COMMANDS = {
    "validate": cmd_validate,
    "minmax": cmd_minmax,
    "regret": cmd_regret,
    "iterated": cmd_iterated,
    "matrix": cmd_matrix,
    "check": cmd_check,
}


def _digest(command: str, text: str) -> Optional[str]:
    if command == "matrix" or is_matrix_document(text):
        return None
    arena, diags = parse_arena(text)
    return None if diags else arena_digest(arena)


def run(command: str, text: str, args: dict) -> SolveReport:
    """Run one command on one document; never raises on bad input."""
    try:
        results = COMMANDS[command](text, args)
        code, diags = EXIT_OK, ()
    except _Fail as f:
        results, code, diags = f.results, f.code, tuple(f.diagnostics)
    except ResourceLimitError as e:
        results = {"limit": e.limit, "required": e.required}
        code, diags = EXIT_RESOURCE, (_diag("resources", str(e)),)
    except RegretGamesError as e:
        results, code, diags = {}, EXIT_DIAGNOSTICS, tuple(_diag("arena", v) for v in (getattr(e, "violations", None) or [str(e)]))
    return SolveReport(command, args, _digest(command, text), results, diags, code)


def _run_job(job) -> tuple[str, int]:
    command, text, args = job
    rep = run(command, text, args)
    return rep.dumps(), rep.exit_code


# ---------------------------------------------------------------------------
# argument parsing


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regretgames", description="Regret and iterated regret for reachability games.")
    sub = ap.add_subparsers(dest="command", required=True)

    def solver(name, help_text, **extra):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("files", nargs="+", help="input documents ('-' for standard input)")
        p.add_argument("--jobs", type=_positive, default=1, help="solve files in this many processes")
        return p

    solver("validate", "check documents and summarize arenas")
    for name, text in (("minmax", "min-max value of a target-weighted arena"), ("regret", "regret and a witness strategy")):
        solver(name, text).add_argument("--player", type=int, choices=(1, 2), default=1)
    for name, text in (("iterated", "iterated regret (trees and strictly positive arenas)"), ("check", "compare solvers with brute force")):
        p = solver(name, text)
        p.add_argument("--cap", type=_positive, default=iterated_positive.DEFAULT_CAP, help="unfolding node cap")
        p.add_argument("--bound", type=_nonneg, default=None, help="override the unfolding bound")
        if name == "iterated":
            p.add_argument("--max-rank", type=_positive, default=None)
    solver("matrix", "iterated regret on a penalty matrix").add_argument("--max-rank", type=_positive, default=None)

    g = sub.add_parser("gen", help="emit a random arena document")
    g.add_argument("--positions", type=_positive, default=6, help="positions (leaves with --tree)")
    g.add_argument("--max-weight", type=_nonneg, default=3)
    g.add_argument("--seed", type=int, default=0)
    kind = g.add_mutually_exclusive_group()
    kind.add_argument("--tree", action="store_true")
    kind.add_argument("--positive", action="store_true")
    kind.add_argument("--twa", action="store_true", help="target-weighted for both players")
    return ap


def _gen(ns) -> str:
    if ns.tree:
        arena = generate.random_tree(ns.seed, ns.positions, ns.max_weight)
    elif ns.positive:
        arena = generate.random_positive_arena(ns.seed, ns.positions, max(1, ns.max_weight))
    elif ns.twa:
        arena = generate.random_twa(ns.seed, ns.positions, ns.max_weight)
    else:
        arena = generate.random_arena(ns.seed, ns.positions, ns.max_weight)
    return arena_to_text(arena)


def _read(path: str, stdin_text: list) -> str:
    if path == "-":
        if not stdin_text:
            stdin_text.append(sys.stdin.read())
        return stdin_text[0]
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.command == "gen":
        sys.stdout.write(_gen(ns))
        return EXIT_OK
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "files", "jobs")}
    stdin_text: list = []
    jobs, early = [], {}
    for k, path in enumerate(ns.files):
        try:
            jobs.append((ns.command, _read(path, stdin_text), dict(args, source=path)))
        except OSError as e:
            early[k] = SolveReport(ns.command, dict(args, source=path), None, {}, (_diag("input", f"cannot read: {e.strerror}"),), EXIT_DIAGNOSTICS)
            jobs.append(None)
    todo = [j for j in jobs if j is not None]
    if ns.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            done = list(pool.map(_run_job, todo))
    else:
        done = [_run_job(j) for j in todo]
    it = iter(done)
    outputs = [(early[k].dumps(), early[k].exit_code) if j is None else next(it) for k, j in enumerate(jobs)]
    if len(outputs) == 1:
        sys.stdout.write(outputs[0][0])
    else:
        docs = [json.loads(text) for text, _ in outputs]
        sys.stdout.write(json.dumps(docs, sort_keys=True, indent=2) + "\n")
    return max(code for _, code in outputs)


if __name__ == "__main__":
    sys.exit(main())
