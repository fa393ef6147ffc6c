"""Resource budgets for the expensive operations.

Budgets are plain configuration, not correctness knobs: raising a cap never
changes a computed value, it only admits bigger inputs. Every limit can be
overridden with an MCNL_<NAME> environment variable so the CLI contract
("env var override for budgets") holds without threading flags everywhere.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import ValidationError


@dataclass(frozen=True)
class Budgets:
    # largest n for scalar transforms (Walsh, ANF) on one output
    scalar_n_cap: int = 20
    # elementary-step cap for vector nonlinearity: (2^m - 1) * n * 2^n
    vector_cost_cap: int = 2**32
    # hard cap on m in vector nonlinearity (component count 2^m - 1)
    vector_m_cap: int = 16
    # largest n for circuit truth-table enumeration
    tt_n_cap: int = 20
    # largest code dimension for brute-force minimum distance
    distance_m_cap: int = 26
    # candidate cap for the multiplicative-complexity oracle search
    mc_node_cap: int = 2**28

    @classmethod
    def from_env(cls) -> "Budgets":
        kwargs = {}
        for f in fields(cls):
            raw = os.environ.get("MCNL_" + f.name.upper())
            if raw is not None:
                try:
                    kwargs[f.name] = int(raw)
                except ValueError:
                    raise ValidationError(
                        f"MCNL_{f.name.upper()} must be an integer, got {raw!r}"
                    ) from None
        return cls(**kwargs)


def default_budgets() -> Budgets:
    return Budgets.from_env()
