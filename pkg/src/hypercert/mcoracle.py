"""Monte-Carlo volume estimation in the hyperboloid model of H^3.

Points live on the sheet {x : <x,x> = 1, x0 >= 1} of Minkowski space with
signature (+,-,-,-), where <x,y> = x0*y0 - x1*y1 - x2*y2 - x3*y3.  Distances
and side-of-plane tests are algebraic in Minkowski products, so membership
predicates need no conformal-factor bookkeeping.

estimate_volume draws uniform (volume-measure) samples inside an envelope
ball and counts predicate hits; it is the ground-truth oracle for every
closed form in hypgeo.  Randomness comes from a counter-based Philox stream
keyed by a 64-bit seed, so results are reproducible regardless of host or
thread count.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hypgeo import DomainError, ball_volume, omega, psi, theta

__all__ = [
    "BASEPOINT",
    "McEstimate",
    "minkowski_dot",
    "assert_on_sheet",
    "hpoint",
    "axis_point",
    "hdist",
    "translate_to",
    "sample_ball",
    "estimate_volume",
    "in_ball",
    "in_halfspace",
    "in_cap",
    "in_lens",
    "in_cone",
    "in_icecream",
]

ON_SHEET_TOL = 1e-10

BASEPOINT = np.array([1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class McEstimate:
    """A Monte-Carlo volume estimate with its binomial standard error."""

    mean: float
    standard_error: float
    samples: int
    seed: int
    zero_hits: bool = False


def minkowski_dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """<u, v> with signature (+,-,-,-); broadcasts over leading axes."""
    return u[..., 0] * v[..., 0] - np.sum(u[..., 1:] * v[..., 1:], axis=-1)


def assert_on_sheet(p: np.ndarray, tol: float = ON_SHEET_TOL) -> None:
    """Reject points whose Minkowski norm strays from 1 or with x0 < 1."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 4:
        raise DomainError(f"hyperboloid points have 4 coordinates, got shape {p.shape}")
    err = np.abs(minkowski_dot(p, p) - 1.0)
    if np.any(err > tol) or np.any(p[..., 0] < 1.0 - tol):
        raise DomainError(f"point off the hyperboloid sheet (max norm error {float(np.max(err)):.3e})")


def hpoint(x1: float, x2: float, x3: float) -> np.ndarray:
    """The sheet point with the given spatial coordinates."""
    s = np.array([0.0, x1, x2, x3])
    s[0] = math.sqrt(1.0 + x1 * x1 + x2 * x2 + x3 * x3)
    return s


def axis_point(t: float) -> np.ndarray:
    """The point at signed distance t from the basepoint along the x1-axis."""
    return np.array([math.cosh(t), math.sinh(t), 0.0, 0.0])


def hdist(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hyperbolic distance arccosh(<p, q>); validates both inputs on-sheet.

    Evaluated as 2 arcsinh(sqrt(-<p - q, p - q>) / 2), which agrees with the
    arccosh form (since -<p-q, p-q> = 2 cosh d - 2 = 4 sinh^2(d/2)) but stays
    exact near coincident points where arccosh loses half its digits.
    """
    assert_on_sheet(p)
    assert_on_sheet(q)
    diff = p - q
    sq = np.sum(diff[..., 1:] ** 2, axis=-1) - diff[..., 0] ** 2
    return 2.0 * np.arcsinh(0.5 * np.sqrt(np.maximum(sq, 0.0)))


def _renormalize(p: np.ndarray) -> np.ndarray:
    p[..., 0] = np.sqrt(1.0 + np.sum(p[..., 1:] ** 2, axis=-1))
    return p


def translate_to(points: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Apply the hyperbolic translation carrying the basepoint to target.

    Uses the Lorentz boost T(x) = x + 2<x,u>v - <x,u+v>/(1+<u,v>) (u+v) with
    u the basepoint and v the target; outputs are renormalized back onto the
    sheet to shed roundoff.
    """
    assert_on_sheet(target)
    u = BASEPOINT
    v = np.asarray(target, dtype=float)
    s = u + v
    g = 1.0 + minkowski_dot(u, v)
    xu = minkowski_dot(points, u)
    xs = minkowski_dot(points, s)
    out = points + 2.0 * xu[..., None] * v - (xs / g)[..., None] * s
    return _renormalize(out)


def _radial_inverse(u: np.ndarray, radius: float) -> np.ndarray:
    # Invert the radial CDF (sinh 2t - 2t) / (sinh 2r - 2r) by bisection;
    # 52 halvings pin t to one ulp of the radius scale.
    target = u * (math.sinh(2.0 * radius) - 2.0 * radius)
    lo = np.zeros_like(u)
    hi = np.full_like(u, radius)
    for _ in range(52):
        mid = 0.5 * (lo + hi)
        below = np.sinh(2.0 * mid) - 2.0 * mid < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def sample_ball(center: np.ndarray, radius: float, count: int, seed: int) -> np.ndarray:
    """count i.i.d. volume-uniform samples in the open ball of the given radius.

    Directions are uniform on the 2-sphere, radii follow the sinh^2 density,
    and the cloud is transported from the basepoint to center.  A fixed seed
    reproduces the identical stream.
    """
    assert_on_sheet(center)
    if not (math.isfinite(radius) and radius > 0.0):
        raise DomainError(f"radius must be positive, got {radius!r}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    direction = rng.normal(size=(count, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    t = _radial_inverse(rng.random(count), radius)
    local = np.empty((count, 4))
    local[:, 0] = np.cosh(t)
    local[:, 1:] = np.sinh(t)[:, None] * direction
    return translate_to(local, center)


def estimate_volume(predicate, center: np.ndarray, radius: float, count: int, seed: int) -> McEstimate:
    """Estimate the volume of {p : predicate(p)} inside the envelope ball.

    The region must be contained in the ball of the given radius about
    center (each predicate documents its natural envelope).  mean is
    B(radius) * hits/count and standard_error the binomial error scaled the
    same way.  Zero hits produce a zero estimate flagged on the result.
    """
    pts = sample_ball(center, radius, count, seed)
    hits = int(np.count_nonzero(predicate(pts)))
    total = ball_volume(radius)
    p_hat = hits / count
    se = total * math.sqrt(p_hat * (1.0 - p_hat) / count)
    if hits == 0:
        warnings.warn("estimate_volume: no hits inside the envelope; estimate is 0", stacklevel=2)
        return McEstimate(0.0, 0.0, count, seed, zero_hits=True)
    return McEstimate(total * p_hat, se, count, seed)


# --- membership predicates ----------------------------------------------------
#
# Each takes points of shape (..., 4) and returns a boolean array of shape
# (...,).  Boundaries are measure zero, so comparisons are exact.


def in_ball(p: np.ndarray, center: np.ndarray, radius: float) -> np.ndarray:
    """Envelope: the ball itself."""
    return hdist(p, center) <= radius


def _cos_angle_at(p: np.ndarray, anchor: np.ndarray, toward: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # cosine of the angle at anchor between the geodesics anchor->p and
    # anchor->toward, by the hyperbolic law of cosines; p == anchor gets
    # cosine 1 (the apex belongs to every cone).  Returns (cos, dist(anchor,p)).
    d_ax = float(hdist(anchor, toward))
    if d_ax <= 0.0:
        raise DomainError("degenerate axis: anchor and toward coincide")
    d_p = hdist(p, anchor)
    d_pt = hdist(p, toward)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_ang = (np.cosh(d_p) * math.cosh(d_ax) - np.cosh(d_pt)) / (np.sinh(d_p) * math.sinh(d_ax))
    cos_ang = np.where(d_p < 1e-14, 1.0, np.clip(cos_ang, -1.0, 1.0))
    return cos_ang, d_p


def in_halfspace(p: np.ndarray, anchor: np.ndarray, toward: np.ndarray, offset: float) -> np.ndarray:
    """Points whose axial coordinate along the anchor->toward geodesic is >= offset.

    The axial coordinate t of p satisfies tanh t = tanh(dist(anchor, p)) * cos(angle),
    the projection formula for a hyperbolic right triangle.
    """
    cos_ang, d_p = _cos_angle_at(p, anchor, toward)
    return np.tanh(d_p) * cos_ang >= math.tanh(offset)


def in_cap(
    p: np.ndarray, center: np.ndarray, toward: np.ndarray, radius: float, w: float
) -> np.ndarray:
    """Solid cap: in the ball and beyond the plane at axial coordinate w.

    Envelope: ball(center, radius).
    """
    return in_ball(p, center, radius) & in_halfspace(p, center, toward, w)


def in_lens(
    p: np.ndarray, c1: np.ndarray, r1: float, c2: np.ndarray, r2: float
) -> np.ndarray:
    """Intersection of two balls.  Envelope: the smaller ball."""
    return in_ball(p, c1, r1) & in_ball(p, c2, r2)


def in_cone(
    p: np.ndarray, apex: np.ndarray, toward: np.ndarray, gen_length: float, angle: float
) -> np.ndarray:
    """Right circular cone: apex angle <= angle, apex-side of the base plane.

    The base plane sits at axial distance psi(gen_length, angle) from the
    apex along the axis through toward.  Envelope: ball(apex, gen_length).
    """
    cos_ang, d_p = _cos_angle_at(p, apex, toward)
    axis_len = psi(gen_length, angle)
    return (cos_ang >= math.cos(angle)) & (np.tanh(d_p) * cos_ang <= math.tanh(axis_len))


def in_icecream(
    p: np.ndarray, apex: np.ndarray, scoop_center: np.ndarray, scoop_radius: float
) -> np.ndarray:
    """Convex hull of an apex point and a ball: the ball, or the tangent cone.

    Requires scoop_radius < dist(apex, scoop_center).  Envelope:
    ball(apex, dist + scoop_radius).
    """
    d = float(hdist(apex, scoop_center))
    if not scoop_radius < d:
        raise DomainError(
            f"ice-cream cone needs scoop_radius < apex distance, got r={scoop_radius}, d={d}"
        )
    return in_ball(p, scoop_center, scoop_radius) | in_cone(
        p, apex, scoop_center, omega(scoop_radius, d), theta(scoop_radius, d)
    )
