"""Run configuration shared by the CLI, the corpus runner and the scripts."""
from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class RunConfig:
    kmax: int = 4
    seed: int = 0
    maxdim: int = 20_000  # cap on raw bar-term dimensions
    random_modules: int = 20  # superfluous oracle suite
    calculus_instances: int = 100  # submodule calculus suite
    random_graded: int = 10  # per algebra, forgetful-functor suite
    twist_kmax: int = 3
    bruteforce_dim: int = 5  # largest module dimension handed to subspace enumeration

    def as_dict(self) -> dict:
        return asdict(self)
