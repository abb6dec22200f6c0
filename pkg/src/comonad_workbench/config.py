"""Sizes and seeds for the property suites."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    lifting_cases: int = 100
    nat_trans_cases: int = 50
    nat_trans_samples: int = 10
    kelly_cases: int = 100
    adjoint_cases: int = 25
    convolution_cases: int = 50
    factor_cases: int = 50
    tce_cases: int = 25
    transfer_cases: int = 50
    limit_cases: int = 200
    max_coalgebra_dim: int = 3
    max_carrier_dim: int = 3
    max_comodule_dim: int = 4

    @classmethod
    def from_env(cls, **overrides) -> "SuiteConfig":
        """Defaults with ``WB_SEED`` applied, then ``overrides``."""
        seed = int(os.environ.get("WB_SEED", "0"))
        return replace(cls(seed=seed), **overrides)

    def scaled(self, cases: int) -> "SuiteConfig":
        """Every case count set to ``cases`` (quick runs from the CLI report)."""
        return replace(self, lifting_cases=cases, nat_trans_cases=cases, kelly_cases=cases,
                       adjoint_cases=cases, convolution_cases=cases, factor_cases=cases,
                       tce_cases=cases, transfer_cases=cases, limit_cases=4 * cases)
