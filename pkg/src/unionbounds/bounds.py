"""Sharp bounds on the sum of a non-negative vector from its power moments.

Given s_k = sum_i i**(a + (k-1)*rho) * r_i for an unknown non-negative vector
r over indices 1..n, the functions here return certified lower and upper
bounds on sum(r). Closed forms cover two and three moments; a general engine
handles arbitrary non-negative feature rows with an explicit sign
certificate.

Arithmetic is exact (``fractions.Fraction``) whenever the moments are
rational and a, rho are integers; otherwise IEEE doubles with relative
tolerances are used. Every function is pure and safe for concurrent use.
"""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ._numeric import (
    Number,
    all_exact,
    floor_root,
    integral_value,
    is_exact,
    nth_root_exact,
    rpow,
    solve_linear,
)

DEFAULT_INEQUALITY_TOLERANCE = 1e-9
DEFAULT_REPRODUCTION_TOLERANCE = 1e-12
INTEGER_SNAP = 1e-9
TOLERANCE_ENV_VAR = "UNION_BOUNDS_TOL"

VARIANTS = ("refined", "a_le_rho", "a_ge_rho", "rho_ge_1_simple")
WINDOW_PATTERNS = ("lower_ell2", "upper_ell2", "lower_ell3", "upper_ell3")


class MomentConsistencyError(ValueError):
    """The supplied moments cannot come from any non-negative vector."""


class CertificateError(ArithmeticError):
    """The sign certificate of a chosen index window failed."""


class InfeasibleIndicesError(ArithmeticError):
    """The moment-matching vector on the chosen window has negative mass."""


class DegenerateBoundWarning(RuntimeWarning):
    """A simplified variant hit its removable 0/0 point and fell back to the
    wide bound."""


def inequality_tolerance(override: float | None = None) -> float:
    """Relative tolerance used by float-mode inequality checks.

    An explicit argument wins; otherwise the UNION_BOUNDS_TOL environment
    variable overrides the default of 1e-9.
    """
    if override is not None:
        return float(override)
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    if raw:
        try:
            return float(raw)
        except ValueError as exc:
            raise ValueError(
                f"invalid {TOLERANCE_ENV_VAR} value: {raw!r}"
            ) from exc
    return DEFAULT_INEQUALITY_TOLERANCE


@dataclass(frozen=True)
class ExponentParams:
    """Exponent family a + (k-1)*rho, k = 1..ell, over support 1..n_support."""

    a: Number
    rho: Number
    ell: int
    n_support: int

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError("a must be positive")
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        if self.n_support < 1:
            raise ValueError("n_support must be at least 1")

    @property
    def is_integral(self) -> bool:
        return (
            integral_value(self.a) is not None
            and integral_value(self.rho) is not None
        )

    @property
    def exponents(self) -> tuple[Number, ...]:
        return tuple(self.a + j * self.rho for j in range(self.ell))


@dataclass(frozen=True)
class MomentVector:
    """The first ell power moments of a hidden non-negative vector."""

    sbar: tuple[Number, ...]
    params: ExponentParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "sbar", tuple(self.sbar))
        if len(self.sbar) != self.params.ell:
            raise ValueError(
                f"expected {self.params.ell} moments, got {len(self.sbar)}"
            )
        for value in self.sbar:
            if value < 0:
                raise ValueError("moments must be non-negative")

    @property
    def exact(self) -> bool:
        return self.params.is_integral and all_exact(*self.sbar)

    @classmethod
    def from_vector(
        cls, r: Sequence[Number], params: ExponentParams
    ) -> "MomentVector":
        """Moments of an explicit non-negative vector over 1..n_support."""
        values = tuple(r)
        if len(values) != params.n_support:
            raise ValueError(
                f"expected {params.n_support} vector entries, got {len(values)}"
            )
        if any(v < 0 for v in values):
            raise ValueError("vector entries must be non-negative")
        sbar = []
        for e in params.exponents:
            total: Number = 0
            for i, v in enumerate(values, start=1):
                if v != 0:
                    total += rpow(i, e) * v
            sbar.append(total)
        return cls(tuple(sbar), params)

    def validate(self, tolerance: float | None = None) -> "MomentVector":
        """Check the moment-cone inequalities any genuine vector satisfies.

        Raises MomentConsistencyError naming the violated inequality.
        """
        tol = inequality_tolerance(tolerance)
        n = self.params.n_support
        step = rpow(n, self.params.rho)
        for k in range(self.params.ell - 1):
            lo, hi = self.sbar[k], self.sbar[k + 1]
            _check_lower(hi, lo, tol, f"s{k + 2} >= s{k + 1}")
            _check_upper(hi, step * lo, tol, f"s{k + 2} <= n**rho * s{k + 1}")
        if self.params.ell >= 3:
            s1, s2, s3 = self.sbar[:3]
            d1 = step * s1 - s2
            d2 = step * s2 - s3
            _check_upper(
                d2,
                rpow(n - 1, self.params.rho) * d1,
                tol,
                "(n**rho*s2 - s3) <= (n-1)**rho * (n**rho*s1 - s2)",
            )
            h1 = s2 - s1
            h2 = s3 - s2
            if h1 > 0:
                _check_lower(
                    h2,
                    rpow(2, self.params.rho) * h1,
                    tol,
                    "(s3 - s2) >= 2**rho * (s2 - s1)",
                )
        return self


@dataclass(frozen=True)
class DeltaDecomposition:
    """Split of delta = (s_hi/s_lo)**(1/rho) into window coordinates.

    theta is the fractional part of delta; theta_refined is the exact-mass
    interpolation weight ((delta**rho - base**rho) / ((base+1)**rho -
    base**rho)), which equals theta when rho = 1. base = floor(delta) after
    integer snapping. A 0/0 input yields the all-zero decomposition.
    """

    delta: Number
    theta: Number
    theta_refined: Number
    base: int


@dataclass(frozen=True)
class GeneralBoundOutcome:
    """Result of the certified general bound on a chosen index window."""

    bound_value: Number
    direction: str
    indices: tuple[int, ...]
    coefficients: tuple[Number, ...]
    sign_certificate: tuple[Number, ...]
    solution: Mapping[int, Number]


def _zero_like(*values: Number) -> Number:
    return Fraction(0) if all_exact(*values) else 0.0


def _check_nonneg(
    value: Number, tol: float, label: str, scale: Number = 1
) -> Number:
    if is_exact(value):
        if value < 0:
            raise MomentConsistencyError(
                f"inconsistent moments: {label} (got {value})"
            )
        return value
    v = float(value)
    if v < -tol * max(1.0, abs(float(scale))):
        raise MomentConsistencyError(f"inconsistent moments: {label} (got {v})")
    return max(v, 0.0)


def _check_lower(value: Number, limit: Number, tol: float, label: str) -> Number:
    """Require value >= limit; clamp float noise up to the limit."""
    if all_exact(value, limit):
        if value < limit:
            raise MomentConsistencyError(
                f"inconsistent moments: {label} ({value} < {limit})"
            )
        return value
    v, lim = float(value), float(limit)
    if v < lim - tol * max(1.0, abs(v), abs(lim)):
        raise MomentConsistencyError(
            f"inconsistent moments: {label} ({v} < {lim})"
        )
    return max(v, lim)


def _check_upper(value: Number, limit: Number, tol: float, label: str) -> Number:
    """Require value <= limit; clamp float noise down to the limit."""
    if all_exact(value, limit):
        if value > limit:
            raise MomentConsistencyError(
                f"inconsistent moments: {label} ({value} > {limit})"
            )
        return value
    v, lim = float(value), float(limit)
    if v > lim + tol * max(1.0, abs(v), abs(lim)):
        raise MomentConsistencyError(
            f"inconsistent moments: {label} ({v} > {lim})"
        )
    return min(v, lim)


def _require_ell(moments: MomentVector, ell: int) -> ExponentParams:
    if moments.params.ell != ell:
        raise ValueError(f"this bound needs exactly {ell} moments")
    return moments.params


_THETA_MAX = 1.0 - 1e-12


def delta_decomposition(
    s_lo: Number, s_hi: Number, rho: Number
) -> DeltaDecomposition:
    """Decompose the moment ratio into integer window and splitting weights.

    Returns delta = (s_hi/s_lo)**(1/rho) with its fractional part theta and
    the refined weight theta_refined. Exact rationals are preserved whenever
    possible: base and theta_refined stay exact for integer rho even when
    delta itself is irrational, because theta_refined only needs delta**rho.
    In floating point, delta within 1e-9 of an integer snaps to it.
    """
    if not rho > 0:
        raise ValueError("rho must be positive")
    if s_lo < 0 or s_hi < 0:
        raise ValueError("moments must be non-negative")
    if s_lo == 0:
        if s_hi != 0:
            raise MomentConsistencyError(
                "inconsistent moments: zero low moment with non-zero high moment"
            )
        zero = _zero_like(s_lo, s_hi)
        return DeltaDecomposition(zero, zero, zero, 0)
    rho_int = integral_value(rho)
    if rho_int is not None and all_exact(s_lo, s_hi):
        ratio = Fraction(s_hi) / Fraction(s_lo)
        base = floor_root(ratio, rho_int)
        refined = (ratio - base**rho_int) / (
            (base + 1) ** rho_int - base**rho_int
        )
        if refined == 0:
            zero = Fraction(0)
            return DeltaDecomposition(Fraction(base), zero, zero, base)
        root = nth_root_exact(ratio, rho_int)
        if root is not None:
            return DeltaDecomposition(root, root - base, refined, base)
        delta = float(ratio) ** (1.0 / rho_int)
        theta = min(max(delta - base, 0.0), _THETA_MAX)
        return DeltaDecomposition(base + theta, theta, refined, base)
    ratio = float(s_hi) / float(s_lo)
    rho_f = float(rho)
    delta = ratio ** (1.0 / rho_f)
    nearest = round(delta)
    if abs(delta - nearest) < INTEGER_SNAP:
        base = int(nearest)
        return DeltaDecomposition(float(base), 0.0, 0.0, base)
    base = int(delta)
    theta = min(max(delta - base, 0.0), _THETA_MAX)
    span = float(base + 1) ** rho_f - float(base) ** rho_f
    refined = (ratio - float(base) ** rho_f) / span
    refined = min(max(refined, 0.0), _THETA_MAX)
    return DeltaDecomposition(delta, theta, refined, base)


def _two_moment_window(
    moments: MomentVector, tol: float
) -> tuple[Number, Number, DeltaDecomposition] | None:
    """Shared validation for the two-moment bounds; None when s1 = 0."""
    params = moments.params
    s1, s2 = moments.sbar
    if s1 == 0:
        _check_upper(s2, _zero_like(s2), tol, "s2 must vanish when s1 does")
        return None
    s2 = _check_lower(s2, s1, tol, "s2 >= s1")
    s2 = _check_upper(
        s2,
        rpow(params.n_support, params.rho) * s1,
        tol,
        "s2 <= n_support**rho * s1",
    )
    return s1, s2, delta_decomposition(s1, s2, params.rho)


def lower_bound_two_moments(
    moments: MomentVector, *, tolerance: float | None = None
) -> Number:
    """Sharp lower bound on sum(r) from the first two power moments.

    The extremal vector sits on the two integers bracketing
    delta = (s2/s1)**(1/rho); theta_refined splits the mass between them, so
    the bound is s1 * (theta_refined / (base+1)**a + (1-theta_refined) /
    base**a). Equality holds exactly when r is supported on {base, base+1}.
    """
    params = _require_ell(moments, 2)
    tol = inequality_tolerance(tolerance)
    prepared = _two_moment_window(moments, tol)
    if prepared is None:
        return _zero_like(*moments.sbar)
    s1, _, dd = prepared
    low = rpow(dd.base, params.a)
    if dd.theta_refined == 0:
        return s1 / low
    high = rpow(dd.base + 1, params.a)
    return s1 * (dd.theta_refined / high + (1 - dd.theta_refined) / low)


def lower_bound_two_moments_simple(
    moments: MomentVector, *, tolerance: float | None = None
) -> Number:
    """Window-free two-moment lower bound.

    s1**((a+rho)/rho) / s2**(a/rho) for rho >= 1; for rho < 1 the same value
    scaled by (1 - theta_refined)/(1 - theta). Never exceeds the refined
    two-moment bound on the same moments.
    """
    params = _require_ell(moments, 2)
    tol = inequality_tolerance(tolerance)
    prepared = _two_moment_window(moments, tol)
    if prepared is None:
        return _zero_like(*moments.sbar)
    s1, s2, dd = prepared
    a_int, rho_int = integral_value(params.a), integral_value(params.rho)
    if a_int is not None and rho_int is not None:
        e_hi: Number = Fraction(a_int + rho_int, rho_int)
        e_lo: Number = Fraction(a_int, rho_int)
    else:
        a_f, rho_f = float(params.a), float(params.rho)
        e_hi = (a_f + rho_f) / rho_f
        e_lo = a_f / rho_f
    core = rpow(s1, e_hi) / rpow(s2, e_lo)
    if params.rho >= 1 or dd.theta == 0:
        return core
    return core * (1 - dd.theta_refined) / (1 - dd.theta)


def upper_bound_two_moments(
    moments: MomentVector, *, tolerance: float | None = None
) -> Number:
    """Sharp upper bound from two power moments, attained on support {1, n}.

    The raw value is returned unclamped; it can exceed one when the moments
    come from a probability setting. n_support = 1 degenerates to s1.
    """
    params = _require_ell(moments, 2)
    del tolerance  # no cone narrower than non-negativity is required here
    s1, s2 = moments.sbar
    n = params.n_support
    if n == 1:
        return s1
    na = rpow(n, params.a)
    nar = rpow(n, params.a + params.rho)
    return ((nar - 1) * s1 - (na - 1) * s2) / (nar - na)


def _require_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def lower_bound_three_moments(
    moments: MomentVector,
    variant: str = "refined",
    *,
    tolerance: float | None = None,
) -> Number:
    """Lower bound on sum(r) from three power moments.

    Works through the residuals d1 = n**rho * s1 - s2 and
    d2 = n**rho * s2 - s3, whose own ratio locates a window next to the top
    index. The "refined" variant is sharp for vectors supported on
    {m-1, m, n}. Simplified variants: "a_le_rho" and "a_ge_rho" drop the
    window rounding on one side, "rho_ge_1_simple" drops the fractional
    split entirely (requires rho >= 1).
    """
    params = _require_ell(moments, 3)
    _require_variant(variant)
    tol = inequality_tolerance(tolerance)
    a, rho, n = params.a, params.rho, params.n_support
    s1, s2, s3 = moments.sbar
    n_rho = rpow(n, rho)
    n_a = rpow(n, a)
    d1 = _check_nonneg(
        n_rho * s1 - s2, tol, "n**rho * s1 - s2 must be non-negative", n_rho * s1
    )
    d2 = _check_nonneg(
        n_rho * s2 - s3, tol, "n**rho * s2 - s3 must be non-negative", n_rho * s2
    )
    if d1 == 0:
        return s1 / n_a  # all mass sits at the top index
    d2 = _check_lower(
        d2, d1, tol, "(n**rho*s2 - s3) >= (n**rho*s1 - s2)"
    )
    d2 = _check_upper(
        d2,
        rpow(n - 1, rho) * d1,
        tol,
        "(n**rho*s2 - s3) <= (n-1)**rho * (n**rho*s1 - s2)",
    )
    dd = delta_decomposition(d1, d2, rho)
    b, tbar = dd.base, dd.theta_refined
    tail = s1 / n_a
    if variant == "refined":
        t1 = (
            d1
            * (1 - tbar)
            * (n_a - rpow(b, a))
            / (n_a * rpow(b, a) * (n_rho - rpow(b, rho)))
        )
        if tbar == 0:
            return t1 + tail
        t2 = (
            d1
            * tbar
            * (n_a - rpow(b + 1, a))
            / (n_a * rpow(b + 1, a) * (n_rho - rpow(b + 1, rho)))
        )
        return t1 + t2 + tail
    delta = dd.delta
    d_rho = d2 / d1  # delta**rho, exact whenever the inputs are
    d_a = d_rho if a == rho else rpow(delta, a)
    if variant == "a_le_rho":
        if not a <= rho:
            raise ValueError("variant 'a_le_rho' requires a <= rho")
        t1 = d1 * (1 - tbar) * (n_a - d_a) / (n_a * rpow(b, a) * (n_rho - d_rho))
        if tbar == 0:
            return t1 + tail
        t2 = (
            d1
            * tbar
            * (n_a - rpow(delta + 1, a))
            / (n_a * rpow(b + 1, a) * (n_rho - rpow(delta + 1, rho)))
        )
        return t1 + t2 + tail
    if variant == "a_ge_rho":
        if not a >= rho:
            raise ValueError("variant 'a_ge_rho' requires a >= rho")
        t1 = (
            d1
            * (1 - tbar)
            * (n_a - rpow(delta - 1, a))
            / (n_a * rpow(b, a) * (n_rho - rpow(delta - 1, rho)))
        )
        if tbar == 0:
            return t1 + tail
        t2 = d1 * tbar * (n_a - d_a) / (n_a * rpow(b + 1, a) * (n_rho - d_rho))
        return t1 + t2 + tail
    if not rho >= 1:
        raise ValueError("variant 'rho_ge_1_simple' requires rho >= 1")
    if a < rho:
        core = d1 * (n_a - d_a) / (n_a * d_a * (n_rho - d_rho))
    else:
        core = (
            d1
            * (n_a - rpow(delta - 1, a))
            / (n_a * d_a * (n_rho - rpow(delta - 1, rho)))
        )
    return core + tail


def upper_bound_three_moments(
    moments: MomentVector,
    variant: str = "refined",
    *,
    tolerance: float | None = None,
) -> Number:
    """Upper bound on sum(r) from three power moments.

    Works through d1 = s2 - s1 and d2 = s3 - s2; their ratio locates a
    window away from index one, and the bound subtracts the certified excess
    from s1. Sharp ("refined") for vectors supported on {1, m-1, m}. The
    simplified variants mirror the lower-bound ones; at the removable 0/0
    point delta = 2 of the a >= rho displays the subtracted term is read as
    zero, the wide value s1 is returned, and DegenerateBoundWarning is
    emitted.
    """
    params = _require_ell(moments, 3)
    _require_variant(variant)
    tol = inequality_tolerance(tolerance)
    a, rho, n = params.a, params.rho, params.n_support
    s1, s2, s3 = moments.sbar
    d1 = _check_nonneg(s2 - s1, tol, "s2 - s1 must be non-negative", s2)
    d2 = _check_nonneg(s3 - s2, tol, "s3 - s2 must be non-negative", s3)
    if d1 == 0:
        return s1
    d2 = _check_lower(
        d2, rpow(2, rho) * d1, tol, "(s3 - s2) >= 2**rho * (s2 - s1)"
    )
    d2 = _check_upper(
        d2, rpow(n, rho) * d1, tol, "(s3 - s2) <= n**rho * (s2 - s1)"
    )
    dd = delta_decomposition(d1, d2, rho)
    b, tbar = dd.base, dd.theta_refined  # b >= 2 after the cone checks
    if variant == "refined":
        ba = rpow(b, a)
        t1 = d1 * (1 - tbar) * (ba - 1) / (ba * (rpow(b, rho) - 1))
        if tbar == 0:
            return s1 - t1
        ca = rpow(b + 1, a)
        t2 = d1 * tbar * (ca - 1) / (ca * (rpow(b + 1, rho) - 1))
        return s1 - t1 - t2
    delta = dd.delta
    d_rho = d2 / d1
    d_a = d_rho if a == rho else rpow(delta, a)
    if variant == "a_le_rho":
        if not a <= rho:
            raise ValueError("variant 'a_le_rho' requires a <= rho")
        t1 = d1 * (1 - tbar) * (d_a - 1) / (rpow(b, a) * (d_rho - 1))
        if tbar == 0:
            return s1 - t1
        t2 = (
            d1
            * tbar
            * (rpow(delta + 1, a) - 1)
            / (rpow(b + 1, a) * (rpow(delta + 1, rho) - 1))
        )
        return s1 - t1 - t2
    if variant == "a_ge_rho":
        if not a >= rho:
            raise ValueError("variant 'a_ge_rho' requires a >= rho")
        num = rpow(delta - 1, a) - 1
        den = rpow(delta - 1, rho) - 1
        if num == 0 and den == 0:
            warnings.warn(
                "removable 0/0 at delta = 2; the subtracted term is zero and "
                "the bound is wide",
                DegenerateBoundWarning,
                stacklevel=2,
            )
            t1 = _zero_like(d1)
        else:
            t1 = d1 * (1 - tbar) * num / (rpow(b, a) * den)
        if tbar == 0:
            return s1 - t1
        t2 = d1 * tbar * (d_a - 1) / (rpow(b + 1, a) * (d_rho - 1))
        return s1 - t1 - t2
    if not rho >= 1:
        raise ValueError("variant 'rho_ge_1_simple' requires rho >= 1")
    if a < rho:
        return s1 - d1 * (d_a - 1) / (d_a * (d_rho - 1))
    num = rpow(delta - 1, a) - 1
    den = rpow(delta - 1, rho) - 1
    if num == 0 and den == 0:
        warnings.warn(
            "removable 0/0 at delta = 2; the bound falls back to s1",
            DegenerateBoundWarning,
            stacklevel=2,
        )
        return s1
    return s1 - d1 * num / (d_a * den)


def holder_lower_bound(alpha1: Number, alphap: Number, p: float) -> float:
    """Lower bound on P(union) from the first and p-th occupancy moments.

    ((E xi)**p / E xi**p) ** (q/p) with 1/p + 1/q = 1. p = 2 recovers the
    classic second-moment bound; larger p never improves on it.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    if alpha1 < 0 or alphap < 0:
        raise ValueError("moments must be non-negative")
    if alpha1 == 0:
        return 0.0
    if alphap == 0:
        raise ValueError("alphap must be positive when alpha1 is")
    p_f = float(p)
    return (float(alpha1) ** p_f / float(alphap)) ** (1.0 / (p_f - 1.0))


def power_feature_matrix(params: ExponentParams) -> tuple[tuple[Number, ...], ...]:
    """Feature rows f[k][i-1] = i**(a + (k-1)*rho), i = 1..n_support."""
    return tuple(
        tuple(rpow(i, e) for i in range(1, params.n_support + 1))
        for e in params.exponents
    )


def general_bound(
    features: Sequence[Sequence[Number]],
    sbar: Sequence[Number],
    indices: Sequence[int],
    direction: str,
    *,
    tolerance: float | None = None,
) -> GeneralBoundOutcome:
    """Certified bound from generalized moments on a chosen index window.

    Solves for coefficients making the chosen feature columns combine to one,
    checks the sign certificate c_i = 1 - sum_j coeff_j * f[j][i-1] over all
    columns (c_i >= 0 certifies a lower bound, c_i <= 0 an upper bound), and
    reads the bound off the unique vector supported on ``indices`` that
    reproduces the moments. Indices are 1-based support positions.
    """
    if direction not in ("lower", "upper"):
        raise ValueError("direction must be 'lower' or 'upper'")
    rows = [tuple(row) for row in features]
    ell = len(rows)
    if ell == 0:
        raise ValueError("at least one feature row is required")
    n = len(rows[0])
    if any(len(row) != n for row in rows):
        raise ValueError("feature rows must all have the same length")
    if any(x < 0 for row in rows for x in row):
        raise ValueError("feature values must be non-negative")
    moments = tuple(sbar)
    if len(moments) != ell:
        raise ValueError("one moment per feature row is required")
    idx = tuple(int(i) for i in indices)
    if len(idx) != ell:
        raise ValueError("one index per feature row is required")
    if any(not 1 <= i <= n for i in idx) or any(
        idx[j] >= idx[j + 1] for j in range(ell - 1)
    ):
        raise ValueError("indices must be strictly increasing and within 1..n")
    exact = all_exact(*moments) and all_exact(*(x for row in rows for x in row))
    tol = 0.0 if exact else inequality_tolerance(tolerance)
    try:
        coeff = solve_linear(
            [[rows[j][i - 1] for j in range(ell)] for i in idx], [1] * ell
        )
    except ValueError as exc:
        raise ValueError(f"singular index system for indices {idx}") from exc
    certificate = []
    for i in range(1, n + 1):
        c = 1 - sum(coeff[j] * rows[j][i - 1] for j in range(ell))
        certificate.append(c)
        if direction == "lower" and c < -tol:
            raise CertificateError(
                f"sign certificate violated at index {i}: c = {c} < 0"
            )
        if direction == "upper" and c > tol:
            raise CertificateError(
                f"sign certificate violated at index {i}: c = {c} > 0"
            )
    masses = solve_linear(
        [[rows[k][i - 1] for i in idx] for k in range(ell)], list(moments)
    )
    mass_scale = max(1.0, abs(float(moments[0])))
    solution: dict[int, Number] = {}
    for i, mass in zip(idx, masses):
        if mass < -tol * mass_scale:
            raise InfeasibleIndicesError(
                f"negative mass {mass} at index {i}; move the window"
            )
        solution[i] = mass if mass > 0 else _zero_like(mass)
    bound = sum(solution.values())
    return GeneralBoundOutcome(
        bound, direction, idx, tuple(coeff), tuple(certificate), solution
    )


def select_index_window(
    delta: DeltaDecomposition | Number, pattern: str, n_support: int
) -> tuple[int, ...]:
    """Index window realizing a closed-form bound.

    ``delta`` is the decomposition (or bare ratio root) driving the window:
    m = 1 + floor(delta), capped to the feasible range; an exactly integer
    delta selects the window just above it.
    """
    if isinstance(delta, DeltaDecomposition):
        base = delta.base
    else:
        d = float(delta)
        if d < 0:
            raise ValueError("delta must be non-negative")
        nearest = round(d)
        base = int(nearest) if abs(d - nearest) < INTEGER_SNAP else int(d)
    n = n_support
    if pattern == "lower_ell2":
        if n < 2:
            raise ValueError("pattern 'lower_ell2' needs n_support >= 2")
        m = min(max(1 + base, 2), n)
        return (m - 1, m)
    if pattern == "upper_ell2":
        if n < 2:
            raise ValueError("pattern 'upper_ell2' needs n_support >= 2")
        return (1, n)
    if pattern == "lower_ell3":
        if n < 3:
            raise ValueError("pattern 'lower_ell3' needs n_support >= 3")
        m = min(max(1 + base, 2), n - 1)
        return (m - 1, m, n)
    if pattern == "upper_ell3":
        if n < 3:
            raise ValueError("pattern 'upper_ell3' needs n_support >= 3")
        m = min(max(1 + base, 3), n)
        return (1, m - 1, m)
    raise ValueError(f"unknown pattern {pattern!r}; expected one of {WINDOW_PATTERNS}")


def exhaustive_index_search(
    features: Sequence[Sequence[Number]],
    sbar: Sequence[Number],
    direction: str,
    *,
    tolerance: float | None = None,
) -> GeneralBoundOutcome | None:
    """Best certified window over all index combinations, or None.

    Brute-force research helper for small supports; the closed-form window
    selectors are the fast path.
    """
    rows = [tuple(row) for row in features]
    if not rows:
        raise ValueError("at least one feature row is required")
    n = len(rows[0])
    best: GeneralBoundOutcome | None = None
    for combo in itertools.combinations(range(1, n + 1), len(rows)):
        try:
            outcome = general_bound(
                rows, sbar, combo, direction, tolerance=tolerance
            )
        except (CertificateError, InfeasibleIndicesError, ValueError):
            continue
        if best is None:
            best = outcome
        elif direction == "lower" and outcome.bound_value > best.bound_value:
            best = outcome
        elif direction == "upper" and outcome.bound_value < best.bound_value:
            best = outcome
    return best
