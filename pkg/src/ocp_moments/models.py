"""Shared parameter and record models."""

from __future__ import annotations

__all__ = [
    "PlasmaParams",
    "MomentRecord",
    "DiskMoment",
    "Basis",
    "FitResult",
    "OutputFormat",
    "RunConfig",
]

from enum import StrEnum
from fractions import Fraction
from pathlib import Path
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .numeric import DecimalValue, render_decimal
from .partitions import DEFAULT_MEMBER_LIMIT, Kind, Partition, staircase


class PlasmaParams(BaseModel):
    """Particle number and (even) coupling of a plasma."""

    N: int = Field(ge=1)
    Gamma: int = Field(ge=2)

    model_config = ConfigDict(frozen=True)

    @field_validator("Gamma")
    @classmethod
    def _even_gamma(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"Gamma must be even, got {value}")
        return value

    @property
    def half_gamma(self) -> int:
        return self.Gamma // 2

    @property
    def kind(self) -> Kind:
        return Kind.of(self.half_gamma)

    @property
    def p(self) -> int:
        return self.Gamma // 4

    @property
    def alpha(self) -> Fraction:
        """Jack parameter of the Vandermonde power."""
        match self.kind:
            case Kind.SYMMETRIC:
                return Fraction(-2, 2 * self.p - 1)
            case Kind.ANTISYMMETRIC:
                return Fraction(-2, 2 * self.p + 1)

    @property
    def two_over_alpha(self) -> int:
        ret = 2 / self.alpha
        assert ret.denominator == 1
        return ret.numerator

    @property
    def eigen_alpha(self) -> Fraction:
        """Parameter at which the recursion eigenvalues are evaluated.

        For the antisymmetric kind this is alpha/(1+alpha).
        """
        match self.kind:
            case Kind.SYMMETRIC:
                return self.alpha
            case Kind.ANTISYMMETRIC:
                return self.alpha / (1 + self.alpha)

    @property
    def K(self) -> int:
        """(N-1) Gamma/2, the largest single-particle degree."""
        return (self.N - 1) * self.half_gamma

    @property
    def top(self) -> Partition:
        return staircase(self.N, self.half_gamma)

    @property
    def label(self) -> str:
        return f"N={self.N} gamma={self.Gamma}"


class MomentRecord(BaseModel):
    """Pair-correlation moment hat I_2n on the sphere."""

    N: int
    Gamma: int
    n: int
    value: Fraction
    decimal: DecimalValue

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @classmethod
    def of(cls, params: PlasmaParams, n: int, value: Fraction) -> Self:
        return cls(
            N=params.N,
            Gamma=params.Gamma,
            n=n,
            value=value,
            decimal=render_decimal(value),
        )


class DiskMoment(MomentRecord):
    """Density moment M_N of the soft disk."""


class Basis(StrEnum):
    INVERSE_POWERS = "inverse-powers"
    DISK_MEAN = "disk-mean"


class FitResult(BaseModel):
    basis: Basis
    anchor_N: int
    coefficients: tuple[float, float, float, float]
    residual: float

    model_config = ConfigDict(frozen=True)


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Validated options of one command-line invocation."""

    command: str
    n_range: list[int] = Field(default_factory=lambda: [2], min_length=1)
    gamma: list[int] = Field(default_factory=lambda: [4], min_length=1)
    n_list: list[int] = Field(default_factory=lambda: [2])
    tolerance: float = Field(default=1e-12, gt=0)
    cache_dir: Path = Path(".ocpm-cache")
    output: OutputFormat = OutputFormat.CSV
    out: Path | None = None
    member_limit: int = Field(default=DEFAULT_MEMBER_LIMIT, gt=0)

    @field_validator("gamma")
    @classmethod
    def _even_gamma(cls, value: list[int]) -> list[int]:
        for g in value:
            if g < 2 or g % 2:
                raise ValueError(f"gamma must be even and >= 2, got {g}")
        return value

    @field_validator("n_range")
    @classmethod
    def _positive_n(cls, value: list[int]) -> list[int]:
        if min(value) < 1:
            raise ValueError("particle numbers must be positive")
        return value

    @field_validator("n_list")
    @classmethod
    def _nonnegative_n(cls, value: list[int]) -> list[int]:
        if value and min(value) < 0:
            raise ValueError("moment orders must be nonnegative")
        return value

    def params(self, gamma: int | None = None) -> list[PlasmaParams]:
        if gamma is None:
            gamma = self.gamma[0]
        return [PlasmaParams(N=N, Gamma=gamma) for N in self.n_range]
