"""Natural numbers extended with +infinity.

Values are plain ``int`` or :data:`INF` (``math.inf``).  Python already
orders them correctly and ``n + INF == INF``; the only operation that needs
care is subtraction, where ``INF - INF`` must stay ``INF`` instead of
turning into ``nan``.
"""
from __future__ import annotations

import math
from typing import Iterable, Union

INF = math.inf

ExtNat = Union[int, float]


def is_inf(x: ExtNat) -> bool:
    return x == INF


def sub(a: ExtNat, b: ExtNat) -> ExtNat:
    """``a - b`` with ``INF - x = INF`` for every ``x`` (including ``INF``)."""
    if a == INF:
        return INF
    if b == INF:
        raise ValueError("finite value minus infinity is undefined here")
    return a - b


def monus(a: ExtNat, b: ExtNat) -> ExtNat:
    """``a - min(a, b)``: the reduced weight of a target seen with alternative ``b``."""
    return sub(a, min(a, b))


def emin(values: Iterable[ExtNat]) -> ExtNat:
    """Minimum with ``min(empty) = INF``."""
    return min(values, default=INF)


def emax(values: Iterable[ExtNat]) -> ExtNat:
    return max(values, default=0)


def normalize(x: ExtNat) -> ExtNat:
    """Coerce finite floats back to ``int``; leave ``INF`` alone."""
    if x == INF:
        return INF
    if x < 0:
        raise ValueError(f"negative value {x!r} is not an extended natural")
    return int(x)


def to_json(x: ExtNat) -> Union[int, str]:
    return "inf" if x == INF else int(x)


def from_json(x: Union[int, str]) -> ExtNat:
    if isinstance(x, str):
        if x.lower() in ("inf", "+inf", "infinity"):
            return INF
        raise ValueError(f"not an extended natural: {x!r}")
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"not an extended natural: {x!r}")
    return x


def fmt(x: ExtNat) -> str:
    return "inf" if x == INF else str(int(x))
