import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from regretgames import generate, iterated_tree, kernels
from regretgames.arena import as_graph

pytestmark = pytest.mark.skipif(len(kernels.available()) < 2, reason="compiled backend not built")


def _both(fn):
    out = {}
    for name in kernels.available():
        prev = kernels.use(name)
        try:
            out[name] = fn()
        finally:
            kernels.use(prev)
    return out


@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_attractor_backends_agree(seed, n, mask_seed):
    g = as_graph(generate.random_arena(seed, n, 3))
    rng = np.random.default_rng(mask_seed)
    own = rng.integers(0, 2, n).astype(np.uint8)
    base = rng.integers(0, 2, n).astype(np.uint8)
    blocked = (rng.integers(0, 2, n) & ~base).astype(np.uint8)
    outdeg = np.array([len(s) for s in g.succ], dtype=np.int64)
    ptr, idx = g.pred_csr
    res = _both(lambda: kernels.attractor(ptr, idx, outdeg, own, base, blocked))
    (r0, u0), (r1, u1) = res.values()
    assert r0.tolist() == r1.tolist() and u0 == u1


@given(st.integers(0, 10**6), st.integers(1, 15))
def test_tree_pass_backends_agree(seed, leaves):
    it = iterated_tree.IndexedTree(iterated_tree.as_leaf_tree(generate.random_tree(seed, leaves)))

    def run():
        ok = np.ones(len(it), dtype=np.uint8)
        res = it.run_pass(ok)
        return {k: (np.asarray(v).tolist() if not np.isscalar(v) else v) for k, v in res.items()}, ok.tolist()

    a, b = _both(run).values()
    assert a == b


def test_use_rejects_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use("fortran")
