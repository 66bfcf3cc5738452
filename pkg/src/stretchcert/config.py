"""Tunable knobs for the certification pipeline."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class PipelineConfig:
    entry_floor: int = 1          # minimal entry of the positive block; 2 for the genus formula
    search_bound: int = 6         # |entry| bound for the realization search (numerators when rational)
    e_max: int = 2                # largest excess e in g(x)(x-1)^e
    dense_max_dim: int = 4        # dense integer search up to this size; tridiagonal at every size >= 3
    rational_max_dim: int = 2     # rational search only for small matrices
    max_denominator: int = 6
    max_power: int = 10000        # cap on k in the positivity / integrality searches
    positivize_bits: int = 2      # initial 2^-bits grid for the Cayley parameter
    positivize_retries: int = 12
    precision: int = 12           # decimal digits in reports

    def __post_init__(self):
        from .errors import PreconditionError
        if self.entry_floor < 1:
            raise PreconditionError("entry_floor must be >= 1")
        if self.search_bound < 1:
            raise PreconditionError("search_bound must be >= 1")
        if self.e_max not in (0, 1, 2):
            raise PreconditionError("e_max must be 0, 1 or 2")
        if self.max_power < 1 or self.precision < 1 or self.max_denominator < 1:
            raise PreconditionError("max_power, precision and max_denominator must be positive")

    def to_json(self):
        return asdict(self)
