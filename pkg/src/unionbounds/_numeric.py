"""Low-level numeric plumbing shared by the bound computations.

Arithmetic runs in two modes: exact ``fractions.Fraction`` whenever the inputs
are rational and the exponents are integers, IEEE doubles otherwise. The
helpers here keep that dispatch in one place so the bound formulas read like
the mathematics.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

Number = Union[int, float, Fraction]


def is_exact(x: Number) -> bool:
    """True for values carried in exact rational arithmetic."""
    return isinstance(x, Rational)


def all_exact(*values: Number) -> bool:
    return all(isinstance(v, Rational) for v in values)


def integral_value(x: Number) -> int | None:
    """Return ``x`` as a plain int when it is integer valued, else None."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return None


def rpow(base: Number, exponent: Number) -> Number:
    """``base ** exponent``, exact when both allow it.

    Integer exponents on rational bases stay rational (negative exponents
    require a non-zero base); everything else falls back to float.
    """
    e = integral_value(exponent)
    if e is not None and isinstance(base, Rational):
        if e >= 0:
            return base**e
        if base != 0:
            return Fraction(base) ** e
    return float(base) ** float(exponent)


def to_float(x: Number) -> float:
    return float(x)


def floor_root(value: Number, degree: int) -> int:
    """Largest integer b >= 0 with b**degree <= value, computed exactly.

    ``value`` must be a non-negative rational.
    """
    if degree < 1:
        raise ValueError("degree must be a positive integer")
    value = Fraction(value)
    if value < 0:
        raise ValueError("floor_root requires a non-negative value")
    if value == 0:
        return 0
    guess = int(float(value) ** (1.0 / degree))
    b = max(guess - 1, 0)
    while (b + 1) ** degree <= value:
        b += 1
    while b > 0 and b**degree > value:
        b -= 1
    return b


def _int_root(n: int, degree: int) -> int | None:
    r = floor_root(n, degree)
    return r if r**degree == n else None


def nth_root_exact(value: Number, degree: int) -> Fraction | None:
    """Exact rational ``degree``-th root of a non-negative rational, if any."""
    value = Fraction(value)
    if degree == 1:
        return value
    if value < 0:
        return None
    num = _int_root(value.numerator, degree)
    if num is None:
        return None
    den = _int_root(value.denominator, degree)
    if den is None:
        return None
    return Fraction(num, den)


def solve_linear(
    matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]
) -> list[Number]:
    """Solve a small dense square linear system.

    Gaussian elimination with partial pivoting. The solve is exact when every
    entry is rational. Raises ValueError on a singular system.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("matrix must be square and match the right-hand side")
    exact = all_exact(*(x for row in matrix for x in row)) and all_exact(*rhs)
    if exact:
        aug = [
            [Fraction(x) for x in row] + [Fraction(b)]
            for row, b in zip(matrix, rhs)
        ]
    else:
        aug = [
            [float(x) for x in row] + [float(b)] for row, b in zip(matrix, rhs)
        ]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[pivot][col] == 0:
            raise ValueError("singular linear system")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        head = aug[col][col]
        for r in range(col + 1, n):
            factor = aug[r][col] / head
            if factor == 0:
                continue
            for c in range(col, n + 1):
                aug[r][c] -= factor * aug[col][c]
    solution: list[Number] = [0] * n
    for r in range(n - 1, -1, -1):
        acc = aug[r][n]
        for c in range(r + 1, n):
            acc -= aug[r][c] * solution[c]
        solution[r] = acc / aug[r][r]
    return solution
