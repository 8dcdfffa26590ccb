"""Size limits and runtime switches shared by all modules."""
from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass
class Limits:
    max_simplices: int = 10_000
    max_lie_dim: int = 8
    # when set, every piecewise operation re-validates face compatibility of its result
    check_compatibility: bool = bool(os.environ.get("PSALGEBROID_CHECK"))


LIMITS = Limits()
