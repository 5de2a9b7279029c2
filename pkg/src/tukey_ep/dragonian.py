"""Geometry and fitness model of the offset Dragonian dual-reflector antenna.

A Dragonian system pairs a paraboloidal main reflector with a concave
hyperboloidal subreflector.  Fixing the main diameter D, the feed half-cone
angle theta_e, and the feed-axis angle theta_p, the whole geometry follows
from two free parameters: the main offset angle theta_0 and the
inter-focal distance f12 of the hyperboloid.  The zero-cross-polarization
condition determines the subreflector-axis half-angle

    gamma = arccot(2*cot(theta_0/2) - cot(theta_p/2))

from which the feed angle alpha = theta_p/2 - gamma, the hyperboloid tilt
beta = theta_p/2 + gamma, the angular magnification M = tan(beta/2) /
tan(alpha/2), and the eccentricity e = (M+1)/(M-1) all follow.  Lengths
derive from the equivalent focal length F_e = D/(4*tan(theta_e/2)): the
main focal length F = F_e*sin(beta)/sin(alpha), the main-to-sub distance
along the principal ray l_sm, and the feed and subreflector clearances
d_cf and d_cs, whose sign convention switches between front-fed
(theta_p near 180) and side-fed (theta_p near -90) layouts.

All public angles are in degrees; trigonometry is in radians internally.
Compactness is scored as l_sm + (d_cf - d_cf0) + (d_cs - d_cs0) when the
geometry is realizable, clearance margins included, and all three terms
are non-negative; anything else earns a flat penalty so a minimizer
steers back into the feasible region.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FeedSign",
    "DragonianGivens",
    "DragonianVars",
    "DragonianDerived",
    "FitnessConfig",
    "CrossSection",
    "derive_geometry",
    "design_condition_residuals",
    "dragonian_fitness",
    "fitness_grid",
    "resolve_feed_sign",
    "principal_cross_section",
]

# Margins below which a denominator counts as vanished and the geometry
# is flagged invalid instead of producing divergent clearances.
_SIN_ALPHA_TOL = 1e-12
_DENOM_TOL = 1e-9

# Slack on the fitness positivity gates; the known optimum of the classic
# 100-unit design sits exactly on the subreflector-clearance boundary.
GATE_TOL = 1e-9


class FeedSign(enum.Enum):
    """Clearance sign branch: front-fed (+) or side-fed (-)."""

    FRONT = 1.0
    SIDE = -1.0


def resolve_feed_sign(sign: FeedSign | None, theta_p: float) -> FeedSign:
    """Default the sign branch from theta_p: negative feed-axis angles side-fed."""
    if sign is not None:
        return sign
    return FeedSign.SIDE if theta_p < 0.0 else FeedSign.FRONT


@dataclass(frozen=True)
class DragonianGivens:
    """The three fixed design parameters (lengths in any unit, angles in degrees)."""

    diameter: float
    theta_e: float
    theta_p: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.diameter) and self.diameter > 0.0):
            raise ValueError(f"diameter must be > 0, got {self.diameter!r}")
        if not (math.isfinite(self.theta_e) and 0.0 < self.theta_e < 90.0):
            raise ValueError(f"theta_e must lie in (0, 90) degrees, got {self.theta_e!r}")
        if not math.isfinite(self.theta_p):
            raise ValueError(f"theta_p must be finite, got {self.theta_p!r}")


@dataclass(frozen=True)
class DragonianVars:
    """The two optimized parameters: offset angle (degrees) and inter-focal distance.

    Degenerate values (theta_0 = 0, f12 <= 0) are not rejected here; the
    derivation flags them invalid so an optimizer can penalize them.
    """

    theta_0: float
    f12: float


@dataclass(frozen=True)
class DragonianDerived:
    """Every quantity derived from the five defining parameters.

    Angles in degrees.  When ``valid`` is false the numeric fields may be
    NaN; consumers must branch on the flag, not on the values.
    """

    gamma: float
    alpha_feed: float
    beta_tilt: float
    M: float
    e: float
    F_e: float
    F: float
    l_sm: float
    d_cf: float
    d_cs: float
    valid: bool


@dataclass(frozen=True)
class FitnessConfig:
    """Clearance thresholds, penalty level, and sign branch for the fitness."""

    d_cf0: float = 1.0
    d_cs0: float = 1.0
    penalty: float = 1000.0
    feed_sign: FeedSign | None = None

    def __post_init__(self) -> None:
        if self.d_cf0 < 0.0 or self.d_cs0 < 0.0:
            raise ValueError(
                f"clearance thresholds must be >= 0, got ({self.d_cf0!r}, {self.d_cs0!r})"
            )
        if not (math.isfinite(self.penalty) and self.penalty > 0.0):
            raise ValueError(f"penalty must be a positive finite number, got {self.penalty!r}")


def _geometry_arrays(D, theta_e_deg, theta_p_deg, theta0_deg, f12, sign_value):
    """Vectorized core of the derivation; inputs broadcast, angles in degrees."""
    theta_e = np.radians(theta_e_deg)
    theta_p = np.radians(theta_p_deg)
    theta_0 = np.radians(np.asarray(theta0_deg, dtype=float))
    f12 = np.asarray(f12, dtype=float)
    s = sign_value

    with np.errstate(all="ignore"):
        tan_half0 = np.tan(theta_0 / 2.0)
        tan_halfp = np.tan(theta_p / 2.0)
        y = 2.0 / tan_half0 - 1.0 / tan_halfp
        # arccot branch: atan(1/y) in (-90, 90) degrees, 90 at y = 0
        gamma = np.where(y != 0.0, np.arctan(1.0 / np.where(y != 0.0, y, 1.0)), np.pi / 2.0)
        alpha = theta_p / 2.0 - gamma
        beta = theta_p / 2.0 + gamma

        M = np.tan(beta / 2.0) / np.tan(alpha / 2.0)
        e = (M + 1.0) / (M - 1.0)
        F_e = D / (4.0 * np.tan(theta_e / 2.0))
        sin_alpha = np.sin(alpha)
        F = F_e * np.sin(beta) / sin_alpha

        sub_denom = e * np.cos(beta - theta_0) - 1.0
        e_spread = e - 1.0 / e
        l_sm = 2.0 * F / (1.0 + np.cos(theta_0)) - e_spread * f12 / (2.0 * sub_denom)

        rim_term = 2.0 * F * tan_half0 - f12 * np.sin(beta)
        d_cf = s * rim_term - D / 2.0
        clr_denom = e * np.cos(alpha + s * theta_e) + 1.0
        d_cs = (
            -rim_term
            - D / 2.0
            - f12 * e_spread * np.sin(theta_p + s * theta_e) / (2.0 * clr_denom)
        )

        valid = (
            np.isfinite(y)
            & (np.abs(sin_alpha) >= _SIN_ALPHA_TOL)
            & (M > 1.0)
            & (np.abs(alpha) > theta_e)
            & (np.abs(sub_denom) >= _DENOM_TOL)
            & (np.abs(clr_denom) >= _DENOM_TOL)
            & (np.abs(1.0 + np.cos(theta_0)) >= _SIN_ALPHA_TOL)
            & (f12 > 0.0)
            & np.isfinite(l_sm)
            & np.isfinite(d_cf)
            & np.isfinite(d_cs)
        )

    return (
        np.degrees(gamma),
        np.degrees(alpha),
        np.degrees(beta),
        M,
        e,
        F_e,
        F,
        l_sm,
        d_cf,
        d_cs,
        valid,
    )


def derive_geometry(
    givens: DragonianGivens,
    vars: DragonianVars,
    sign: FeedSign,
) -> DragonianDerived:
    """Derive the full geometry for one candidate design.

    Never raises on degenerate candidates; a vanished denominator,
    magnification <= 1, or a blocked aperture (|alpha| <= theta_e) is
    reported through ``valid`` so a fitness penalty can take over.
    """
    fields = _geometry_arrays(
        givens.diameter,
        givens.theta_e,
        givens.theta_p,
        vars.theta_0,
        vars.f12,
        sign.value,
    )
    gamma, alpha, beta, M, e, F_e, F, l_sm, d_cf, d_cs, valid = (np.asarray(f) for f in fields)
    return DragonianDerived(
        gamma=float(gamma),
        alpha_feed=float(alpha),
        beta_tilt=float(beta),
        M=float(M),
        e=float(e),
        F_e=float(F_e),
        F=float(F),
        l_sm=float(l_sm),
        d_cf=float(d_cf),
        d_cs=float(d_cs),
        valid=bool(valid),
    )


def design_condition_residuals(
    derived: DragonianDerived,
    vars: DragonianVars,
) -> tuple[float, float]:
    """Residuals of the two zero-cross-polarization design conditions.

    Both are dimensionless half-angle-tangent identities that the derived
    geometry satisfies by construction:

        r1 = tan(beta/2) - M*tan((theta_p - beta)/2)
        r2 = tan((theta_p - beta)/2) - M*tan((beta - theta_0)/2)
    """
    if not derived.valid:
        raise ValueError("residuals are defined only for valid geometries")
    theta_p = math.radians(derived.alpha_feed + derived.beta_tilt)
    beta = math.radians(derived.beta_tilt)
    theta_0 = math.radians(vars.theta_0)
    r1 = math.tan(beta / 2.0) - derived.M * math.tan((theta_p - beta) / 2.0)
    r2 = math.tan((theta_p - beta) / 2.0) - derived.M * math.tan((beta - theta_0) / 2.0)
    return r1, r2


def dragonian_fitness(
    givens: DragonianGivens,
    vars: DragonianVars,
    fc: FitnessConfig,
) -> float:
    """Compactness score to minimize: l_sm plus both clearance margins.

    Returns ``fc.penalty`` whenever the geometry is invalid or any of
    l_sm, d_cf - d_cf0, d_cs - d_cs0 falls below -GATE_TOL.
    """
    sign = resolve_feed_sign(fc.feed_sign, givens.theta_p)
    derived = derive_geometry(givens, vars, sign)
    if not derived.valid:
        return fc.penalty
    margins = (derived.l_sm, derived.d_cf - fc.d_cf0, derived.d_cs - fc.d_cs0)
    if any(m < -GATE_TOL or not math.isfinite(m) for m in margins):
        return fc.penalty
    return derived.l_sm + margins[1] + margins[2]


def fitness_grid(
    givens: DragonianGivens,
    fc: FitnessConfig,
    theta0: np.ndarray,
    f12: np.ndarray,
) -> np.ndarray:
    """Vectorized fitness over broadcastable (theta_0, f12) arrays."""
    sign = resolve_feed_sign(fc.feed_sign, givens.theta_p)
    fields = _geometry_arrays(
        givens.diameter, givens.theta_e, givens.theta_p, theta0, f12, sign.value
    )
    l_sm, d_cf, d_cs, valid = fields[7], fields[8], fields[9], fields[10]
    with np.errstate(invalid="ignore"):
        fitness = l_sm + (d_cf - fc.d_cf0) + (d_cs - fc.d_cs0)
        feasible = (
            valid
            & (l_sm >= -GATE_TOL)
            & (d_cf - fc.d_cf0 >= -GATE_TOL)
            & (d_cs - fc.d_cs0 >= -GATE_TOL)
            & np.isfinite(fitness)
        )
    return np.where(feasible, fitness, fc.penalty)


@dataclass(frozen=True)
class CrossSection:
    """Principal-plane cross-section of a valid design.

    Coordinates are (x, z) with z along the main reflector axis and the
    paraboloid focus at the origin.  ``main_arc`` and ``sub_arc`` sample
    the two reflector profiles between their rim points.
    """

    focus: tuple[float, float]
    feed: tuple[float, float]
    main_center: tuple[float, float]
    main_rim_low: tuple[float, float]
    main_rim_high: tuple[float, float]
    sub_center: tuple[float, float]
    sub_rim_low: tuple[float, float]
    sub_rim_high: tuple[float, float]
    main_arc: np.ndarray
    sub_arc: np.ndarray

    def named_points(self) -> dict[str, tuple[float, float]]:
        return {
            "focus": self.focus,
            "feed": self.feed,
            "main_center": self.main_center,
            "main_rim_low": self.main_rim_low,
            "main_rim_high": self.main_rim_high,
            "sub_center": self.sub_center,
            "sub_rim_low": self.sub_rim_low,
            "sub_rim_high": self.sub_rim_high,
        }


def principal_cross_section(
    givens: DragonianGivens,
    vars: DragonianVars,
    sign: FeedSign,
    arc_points: int = 65,
) -> CrossSection:
    """Reconstruct the symmetry-plane layout of a valid design.

    The main profile is the focal-chord parabola z = x^2/(4F) - F; a point
    seen from the focus at ray angle theta sits at x = 2F*tan(theta/2).
    The subreflector is the conic r(theta) = (f12/2)(e - 1/e) /
    (e*cos(beta - theta) - 1) about the shared focus, sampled between the
    edge rays through the main rim.  The feed sits at the second
    hyperboloid focus, f12 along the axis tilted by beta.
    """
    derived = derive_geometry(givens, vars, sign)
    if not derived.valid:
        raise ValueError("cross-section is defined only for valid geometries")
    if arc_points < 2:
        raise ValueError(f"arc_points must be >= 2, got {arc_points}")

    F = derived.F
    e = derived.e
    beta = math.radians(derived.beta_tilt)
    theta_0 = math.radians(vars.theta_0)
    f12 = vars.f12
    D = givens.diameter

    def parabola_point(x: float) -> tuple[float, float]:
        return (x, x * x / (4.0 * F) - F)

    def sub_point(theta: float) -> tuple[float, float]:
        r = (f12 / 2.0) * (e - 1.0 / e) / (e * math.cos(beta - theta) - 1.0)
        return (r * math.sin(theta), r * math.cos(theta))

    x_center = 2.0 * F * math.tan(theta_0 / 2.0)
    x_low, x_high = x_center - D / 2.0, x_center + D / 2.0
    xs = np.linspace(x_low, x_high, arc_points)
    main_arc = np.column_stack([xs, xs**2 / (4.0 * F) - F])

    # ray angles from the focus through the rim points
    theta_low = 2.0 * math.atan(x_low / (2.0 * F))
    theta_high = 2.0 * math.atan(x_high / (2.0 * F))
    thetas = np.linspace(theta_low, theta_high, arc_points)
    radii = (f12 / 2.0) * (e - 1.0 / e) / (e * np.cos(beta - thetas) - 1.0)
    sub_arc = np.column_stack([radii * np.sin(thetas), radii * np.cos(thetas)])

    r_center = 2.0 * F / (1.0 + math.cos(theta_0))
    return CrossSection(
        focus=(0.0, 0.0),
        feed=(f12 * math.sin(beta), f12 * math.cos(beta)),
        main_center=(r_center * math.sin(theta_0), r_center * math.cos(theta_0)),
        main_rim_low=parabola_point(x_low),
        main_rim_high=parabola_point(x_high),
        sub_center=sub_point(theta_0),
        sub_rim_low=sub_point(theta_low),
        sub_rim_high=sub_point(theta_high),
        main_arc=main_arc,
        sub_arc=sub_arc,
    )
