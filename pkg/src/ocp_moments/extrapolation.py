"""Four-point finite-size fits."""

from __future__ import annotations

__all__ = ["WINDOW", "basis_row", "fit4", "windowed_fits", "predict"]

import math
import logging
from fractions import Fraction
from typing import Sequence

from sympy import Matrix, Rational, sqrt

from .error import SingularSystemError
from .models import Basis, FitResult
from .numeric import to_fraction

logger = logging.getLogger(__name__)

WINDOW = 4

type Point = tuple[int, Fraction | int | float | str]


def basis_row(basis: Basis, N: int) -> list:
    match basis:
        case Basis.INVERSE_POWERS:
            return [Rational(1, N**k) for k in range(4)]
        case Basis.DISK_MEAN:
            return [Rational(N), Rational(1), 1 / sqrt(N), Rational(1, N)]
        case _ as unexpected:
            raise ValueError(f"{unexpected=}")


def _float_row(basis: Basis, N: int) -> list[float]:
    match basis:
        case Basis.INVERSE_POWERS:
            return [N ** -k for k in range(4)]
        case Basis.DISK_MEAN:
            return [float(N), 1.0, 1 / math.sqrt(N), 1 / N]
        case _ as unexpected:
            raise ValueError(f"{unexpected=}")


def predict(fit: FitResult, N: int) -> float:
    return math.fsum(a * b for a, b in zip(fit.coefficients, _float_row(fit.basis, N)))


def fit4(points: Sequence[Point], basis: Basis) -> FitResult:
    """Interpolate exactly through four (N, value) points."""
    if len(points) != WINDOW:
        raise ValueError(f"expected {WINDOW} points, got {len(points)}")
    Ns = [N for N, _ in points]
    if len(set(Ns)) != WINDOW or min(Ns) < 1:
        raise ValueError(f"need distinct positive N, got {Ns}")

    values = [to_fraction(v) for _, v in points]
    A = Matrix([basis_row(basis, N) for N in Ns])
    b = Matrix([Rational(v.numerator, v.denominator) for v in values])
    try:
        x = A.LUsolve(b)
    except ValueError as e:
        raise SingularSystemError(f"singular {basis} system for {Ns=}") from e

    coefficients = tuple(float(c.evalf(30)) for c in x)
    fit = FitResult(basis=basis, anchor_N=max(Ns), coefficients=coefficients, residual=0.0)

    residual = max(
        abs(predict(fit, N) - float(v)) / max(1.0, abs(float(v)))
        for N, v in zip(Ns, values)
    )
    return fit.model_copy(update={"residual": residual})


def windowed_fits(points: Sequence[Point], basis: Basis) -> dict[int, FitResult]:
    """One fit per point from the fourth on, over that point and the three before it."""
    ordered = sorted(points, key=lambda p: p[0])
    ret = {}
    for end in range(WINDOW, len(ordered) + 1):
        window = ordered[end - WINDOW : end]
        ret[window[-1][0]] = fit4(window, basis)
    logger.debug("%s: %d windowed fits", basis, len(ret))
    return ret
