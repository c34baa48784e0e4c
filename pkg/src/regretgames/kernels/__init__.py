"""Hot loops behind the solvers, in a compiled and a pure-Python flavour.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over transparently.  Both expose ``attractor`` and
``tree_pass`` with identical signatures and results.  ``use("python")``
or ``use("native")`` pins a backend (tests run both);
``REGRETGAMES_KERNELS=python`` in the environment forces the fallback at
import.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BIG = _pykernels.BIG

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["native"] = _ckernels

_active = _pykernels if os.environ.get("REGRETGAMES_KERNELS") == "python" or _ckernels is None else _ckernels


def available() -> list[str]:
    return sorted(_BACKENDS)


def backend() -> str:
    return "native" if _active is _ckernels and _ckernels is not None else "python"


def use(name: str) -> str:
    """Select the backend by name; returns the previously active one."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"kernel backend {name!r} is not available (have {available()})")
    prev = backend()
    _active = _BACKENDS[name]
    return prev


def attractor(pred_ptr, pred_idx, outdeg, own, base, blocked):
    return _active.attractor(pred_ptr, pred_idx, outdeg, own, base, blocked)


def tree_pass(child_ptr, child_idx, owner, leafw1, leafw2, edge_ok):
    return _active.tree_pass(child_ptr, child_idx, owner, leafw1, leafw2, edge_ok)
