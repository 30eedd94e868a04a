"""Run settings shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .towerint import DEFAULT_DIGIT_CAP, DEFAULT_PRIMES


@dataclass
class Settings:
    digit_cap: int = DEFAULT_DIGIT_CAP
    primes: int = DEFAULT_PRIMES
    seed: int = 0
    workers: int = 1
    cache_dir: Path | str | None = None

    def __post_init__(self) -> None:
        if self.digit_cap < 1:
            raise ValueError("digit_cap must be >= 1")
        if self.primes < 1:
            raise ValueError("primes must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
