"""Pure-Python kernels.  Same signatures and results as ``_ckernels``.

Integers only: ``BIG`` stands for +infinity.  Inputs are sequences of ints
(numpy arrays work too); outputs are numpy arrays so both backends return
the same types.
"""
import numpy as np

BIG = 1 << 62


def attractor(pred_ptr, pred_idx, outdeg, own, base, blocked):
    """Counter-based attractor to ``base`` avoiding ``blocked``.

    Returns ``(rank, updates)``: ``rank[s]`` is the round at which ``s``
    joined the winning set (0 for ``base``) or -1; ``updates`` counts
    insertions plus counter decrements.
    """
    pred_ptr = [int(x) for x in pred_ptr]
    pred_idx = [int(x) for x in pred_idx]
    n = len(outdeg)
    count = [int(x) for x in outdeg]
    own = [bool(x) for x in own]
    blocked = [bool(x) for x in blocked]
    rank = [-1] * n
    frontier = [s for s in range(n) if base[s]]
    for s in frontier:
        rank[s] = 0
    updates = len(frontier)
    j = 0
    while frontier:
        j += 1
        nxt = []
        for s in frontier:
            for k in range(pred_ptr[s], pred_ptr[s + 1]):
                p = pred_idx[k]
                if rank[p] >= 0 or blocked[p]:
                    continue
                count[p] -= 1
                updates += 1
                if own[p] or count[p] == 0:
                    rank[p] = j
                    updates += 1
                    nxt.append(p)
        frontier = nxt
    return np.asarray(rank, dtype=np.int64), updates


def tree_pass(child_ptr, child_idx, owner, leafw1, leafw2, edge_ok):
    """One rank of the dual best-alternative / backward min-max computation.

    Nodes are numbered in preorder (parents before children, root = 0).
    ``edge_ok[c]`` says whether the edge into ``c`` survives; it is updated
    in place with this rank's deletions.  Returns a dict of per-node arrays
    (``best``, ``ba``, ``nu``, ``minmax`` for each player, ``alive`` before
    deletion) plus ``removed`` and ``visits``.
    """
    n = len(owner)
    cp = [int(x) for x in child_ptr]
    ci = [int(x) for x in child_idx]
    own = [int(x) for x in owner]
    leafw = (None, [int(x) for x in leafw1], [int(x) for x in leafw2])
    ok = edge_ok
    visits = 0

    alive = [0] * n
    alive[0] = 1
    for s in range(n):
        if alive[s]:
            visits += 1
            for k in range(cp[s], cp[s + 1]):
                c = ci[k]
                alive[c] = 1 if ok[c] else 0

    out = {"alive": alive}
    for p in (1, 2):
        w = leafw[p]
        best = [BIG] * n
        for s in range(n - 1, -1, -1):
            if not alive[s]:
                continue
            visits += 1
            if cp[s] == cp[s + 1]:
                best[s] = w[s]
            else:
                m = BIG
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and best[c] < m:
                        m = best[c]
                best[s] = m
        ba = [BIG] * n
        for s in range(n):
            if not alive[s]:
                continue
            visits += 1
            b = ba[s]
            if own[s] == p:
                # two smallest alive child values give every "min over the others"
                m1 = m2 = BIG
                arg1 = -1
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        v = best[c]
                        if v < m1:
                            m2 = m1
                            m1 = v
                            arg1 = c
                        elif v < m2:
                            m2 = v
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        alt = m2 if c == arg1 else m1
                        ba[c] = alt if alt < b else b
            else:
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        ba[c] = b
        nu = [BIG] * n
        mm = [BIG] * n
        for s in range(n - 1, -1, -1):
            if not alive[s]:
                continue
            visits += 1
            if cp[s] == cp[s + 1]:
                ws = w[s]
                if ws >= BIG:
                    nu[s] = BIG
                else:
                    nu[s] = ws - (ba[s] if ba[s] < ws else ws)
                mm[s] = nu[s]
            elif own[s] == p:
                m = BIG
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and mm[c] < m:
                        m = mm[c]
                mm[s] = m
            else:
                m = -1
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and mm[c] > m:
                        m = mm[c]
                mm[s] = m
        out[f"best{p}"] = best
        out[f"ba{p}"] = ba
        out[f"nu{p}"] = nu
        out[f"minmax{p}"] = mm

    removed = 0
    root_val = (None, out["minmax1"][0], out["minmax2"][0])
    for s in range(n):
        if not alive[s] or cp[s] == cp[s + 1]:
            continue
        visits += 1
        o = own[s]
        mm = out[f"minmax{o}"]
        for k in range(cp[s], cp[s + 1]):
            c = ci[k]
            if alive[c] and mm[c] > root_val[o]:
                ok[c] = 0
                removed += 1

    res = {k: np.asarray(v, dtype=np.int64) for k, v in out.items()}
    res["removed"] = removed
    res["visits"] = visits
    return res
