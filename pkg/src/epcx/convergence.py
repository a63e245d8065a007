"""Observed convergence orders from refinement studies."""

from __future__ import annotations

import math
from typing import Sequence


def observed_orders(steps: Sequence[float], errors: Sequence[float]) -> list[float]:
    """log(e_k / e_{k+1}) / log(h_k / h_{k+1}) for consecutive refinement pairs.

    A pair where either error is zero yields ``inf`` (the error has reached the
    exact value, so any order is consistent with it).
    """
    if len(steps) != len(errors) or len(steps) < 2:
        raise ValueError("need matching step and error lists of length >= 2")
    out = []
    for (h0, e0), (h1, e1) in zip(zip(steps, errors), zip(steps[1:], errors[1:])):
        if e0 <= 0.0 or e1 <= 0.0:
            out.append(math.inf)
        else:
            out.append(math.log(e0 / e1) / math.log(h0 / h1))
    return out


def decreasing_to_floor(errors: Sequence[float], floor: float) -> bool:
    """True if each error is below its predecessor, or both sit below ``floor``."""
    return all(e1 < e0 or max(e0, e1) <= floor for e0, e1 in zip(errors[:-1], errors[1:]))
