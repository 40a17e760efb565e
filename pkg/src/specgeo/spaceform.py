"""Geometry kernel for the three constant-curvature space forms.

Curvature is an exact tag ``delta`` in {-1, 0, +1} selecting hyperbolic
space, the Euclidean plane or the round sphere.  Points live in named
2-D coordinate charts; each curved geometry gets one conformal chart
(for PDE assembly) and one straight-geodesic chart (where geodesics are
straight lines, so geodesic convexity is an ordinary cross-product
test):

=============  ======  ===========================================
kind           delta   remarks
=============  ======  ===========================================
plane            0     conformal and straight at once, factor 1
poincare-disk   -1     conformal, |x| < 1, factor (2/(1-|x|^2))^2
klein-disk      -1     straight-geodesic, |x| < 1
stereographic   +1     conformal, factor (2/(1+|x|^2))^2
gnomonic        +1     straight-geodesic, covers one open hemisphere
=============  ======  ===========================================

All maps go through a closed-form embedding into the standard ambient
model (Minkowski hyperboloid for delta=-1, unit sphere for delta=+1),
so distances, exp/log and radial dilations share one code path and are
chart-independent by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

PLANE = "plane"
POINCARE_DISK = "poincare-disk"
KLEIN_DISK = "klein-disk"
STEREOGRAPHIC = "stereographic"
GNOMONIC = "gnomonic"

_CHART_DELTA = {
    PLANE: 0,
    POINCARE_DISK: -1,
    KLEIN_DISK: -1,
    STEREOGRAPHIC: 1,
    GNOMONIC: 1,
}
CONFORMAL_KINDS = (PLANE, POINCARE_DISK, STEREOGRAPHIC)
STRAIGHT_KINDS = (PLANE, KLEIN_DISK, GNOMONIC)


class GeometryError(ValueError):
    """Invalid chart, curvature or point for the requested operation."""


def check_delta(delta: int) -> int:
    if delta not in (-1, 0, 1):
        raise GeometryError(f"curvature tag must be -1, 0 or +1, got {delta!r}")
    return int(delta)


@dataclass(frozen=True)
class Chart:
    """A named coordinate chart; each kind is valid for exactly one delta."""

    kind: str

    def __post_init__(self):
        if self.kind not in _CHART_DELTA:
            raise GeometryError(f"unknown chart kind {self.kind!r}")

    @property
    def delta(self) -> int:
        return _CHART_DELTA[self.kind]

    @property
    def conformal(self) -> bool:
        return self.kind in CONFORMAL_KINDS

    @property
    def straight(self) -> bool:
        return self.kind in STRAIGHT_KINDS


def conformal_chart(delta: int) -> Chart:
    """The conformal chart of the geometry with curvature ``delta``."""
    check_delta(delta)
    return Chart({0: PLANE, -1: POINCARE_DISK, 1: STEREOGRAPHIC}[delta])


def straight_chart(delta: int) -> Chart:
    """The straight-geodesic chart of the geometry with curvature ``delta``."""
    check_delta(delta)
    return Chart({0: PLANE, -1: KLEIN_DISK, 1: GNOMONIC}[delta])


@dataclass(frozen=True)
class ModelPoint:
    chart: Chart
    x: float
    y: float

    @property
    def coords(self) -> tuple[float, float]:
        return (self.x, self.y)

    @property
    def delta(self) -> int:
        return self.chart.delta


@dataclass(frozen=True)
class TangentVec:
    """Tangent vector at ``base``, components in the chart coordinate frame."""

    base: ModelPoint
    vx: float
    vy: float

    @property
    def components(self) -> tuple[float, float]:
        return (self.vx, self.vy)

    def norm(self) -> float:
        G = metric_tensor(self.base)
        v = np.array([self.vx, self.vy])
        return math.sqrt(max(float(v @ G @ v), 0.0))

    def scaled(self, c: float) -> "TangentVec":
        return TangentVec(self.base, c * self.vx, c * self.vy)


def point(chart: Chart | str, x: float, y: float) -> ModelPoint:
    chart = Chart(chart) if isinstance(chart, str) else chart
    p = ModelPoint(chart, float(x), float(y))
    _check_in_chart(p)
    return p


def _check_in_chart(p: ModelPoint) -> None:
    if not (math.isfinite(p.x) and math.isfinite(p.y)):
        raise GeometryError("non-finite coordinates")
    if p.chart.kind in (POINCARE_DISK, KLEIN_DISK):
        if p.x * p.x + p.y * p.y >= 1.0:
            raise GeometryError(f"{p.chart.kind} point must satisfy |x| < 1")


# ---------------------------------------------------------------------------
# curvature functions and volumes

def s_delta(delta: int, t: float) -> float:
    """The generalized sine: sin t, t or sinh t according to delta."""
    check_delta(delta)
    if delta == 0:
        return t
    return math.sin(t) if delta == 1 else math.sinh(t)


def c_delta(delta: int, t: float) -> float:
    """Derivative of :func:`s_delta`: cos t, 1 or cosh t."""
    check_delta(delta)
    if delta == 0:
        return 1.0
    return math.cos(t) if delta == 1 else math.cosh(t)


def sphere_area(n: int) -> float:
    """Surface area of the unit (n-1)-sphere in R^n."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def ball_volume(delta: int, n: int, r: float) -> float:
    """Volume of the geodesic ball of radius r in the n-dim space form.

    Closed forms for n = 2; numerical quadrature of the area element
    s_delta(t)^(n-1) otherwise.  For delta=1 the radius must satisfy
    r < pi (r = pi is allowed only internally via :func:`total_volume`).
    """
    check_delta(delta)
    if n < 2:
        raise GeometryError("dimension must be >= 2")
    if r <= 0:
        raise GeometryError("radius must be positive")
    if delta == 1 and r >= math.pi:
        raise GeometryError("spherical ball radius must satisfy r < pi")
    return _ball_volume_raw(delta, n, r)


def _ball_volume_raw(delta: int, n: int, r: float) -> float:
    if n == 2:
        if delta == 0:
            return math.pi * r * r
        if delta == -1:
            return 2.0 * math.pi * (math.cosh(r) - 1.0)
        return 2.0 * math.pi * (1.0 - math.cos(r))
    integral, _ = quad(lambda t: s_delta(delta, t) ** (n - 1), 0.0, r)
    return sphere_area(n) * integral


def total_volume(delta: int, n: int) -> float:
    """Total volume of the space form (finite only for delta=1)."""
    if delta != 1:
        return math.inf
    return _ball_volume_raw(1, n, math.pi)


def radius_from_volume(delta: int, n: int, volume: float) -> float:
    """Radius of the geodesic ball with the given volume (bisection)."""
    if volume <= 0:
        raise GeometryError("volume must be positive")
    if delta == 1 and volume >= total_volume(1, n):
        raise GeometryError("volume exceeds the total volume of the sphere")
    lo, hi = 1e-12, 1.0
    if delta == 1:
        hi = math.pi - 1e-12
    else:
        while _ball_volume_raw(delta, n, hi) < volume:
            hi *= 2.0
    from scipy.optimize import brentq

    return brentq(lambda r: _ball_volume_raw(delta, n, r) - volume, lo, hi,
                  xtol=1e-14, rtol=1e-15)


# ---------------------------------------------------------------------------
# embeddings into the ambient models

def _embed(p: ModelPoint) -> np.ndarray:
    """Chart point -> ambient model point (R^2, hyperboloid or sphere)."""
    x, y = p.x, p.y
    kind = p.chart.kind
    if kind == PLANE:
        return np.array([x, y])
    s = x * x + y * y
    if kind == POINCARE_DISK:
        d = 1.0 - s
        return np.array([2.0 * x / d, 2.0 * y / d, (1.0 + s) / d])
    if kind == KLEIN_DISK:
        w = 1.0 / math.sqrt(1.0 - s)
        return np.array([x * w, y * w, w])
    if kind == STEREOGRAPHIC:
        d = 1.0 + s
        return np.array([2.0 * x / d, 2.0 * y / d, (s - 1.0) / d])
    # gnomonic, based at the south pole (0, 0, -1)
    w = 1.0 / math.sqrt(1.0 + s)
    return np.array([x * w, y * w, -w])


def _unembed(kind: str, X: np.ndarray) -> ModelPoint:
    if kind == PLANE:
        return ModelPoint(Chart(PLANE), float(X[0]), float(X[1]))
    if kind == POINCARE_DISK:
        d = 1.0 + X[2]
        return ModelPoint(Chart(kind), float(X[0] / d), float(X[1] / d))
    if kind == KLEIN_DISK:
        return ModelPoint(Chart(kind), float(X[0] / X[2]), float(X[1] / X[2]))
    if kind == STEREOGRAPHIC:
        d = 1.0 - X[2]
        if d <= 0.0:
            raise GeometryError("point is the pole excluded by the stereographic chart")
        return ModelPoint(Chart(kind), float(X[0] / d), float(X[1] / d))
    if X[2] >= 0.0:
        raise GeometryError("point lies outside the hemisphere covered by the gnomonic chart")
    return ModelPoint(Chart(kind), float(-X[0] / X[2]), float(-X[1] / X[2]))


def _jacobian(p: ModelPoint) -> np.ndarray:
    """Differential of the chart-to-ambient map at p (ambient-dim x 2)."""
    x, y = p.x, p.y
    kind = p.chart.kind
    if kind == PLANE:
        return np.eye(2)
    s = x * x + y * y
    if kind == POINCARE_DISK:
        d = 1.0 - s
        a = 2.0 / d
        b = 4.0 / (d * d)
        return np.array([
            [a + b * x * x, b * x * y],
            [b * x * y, a + b * y * y],
            [b * x, b * y],
        ])
    if kind == KLEIN_DISK:
        w = 1.0 / math.sqrt(1.0 - s)
        w3 = w ** 3
        return np.array([
            [w + x * x * w3, x * y * w3],
            [x * y * w3, w + y * y * w3],
            [x * w3, y * w3],
        ])
    if kind == STEREOGRAPHIC:
        d = 1.0 + s
        a = 2.0 / d
        b = 4.0 / (d * d)
        return np.array([
            [a - b * x * x, -b * x * y],
            [-b * x * y, a - b * y * y],
            [b * x, b * y],
        ])
    w = 1.0 / math.sqrt(1.0 + s)
    w3 = w ** 3
    return np.array([
        [w - x * x * w3, -x * y * w3],
        [-x * y * w3, w - y * y * w3],
        [x * w3, y * w3],
    ])


def _ambient_dot(delta: int, U: np.ndarray, V: np.ndarray) -> float:
    if delta == -1:
        return float(U[0] * V[0] + U[1] * V[1] - U[2] * V[2])
    return float(U @ V)


def metric_tensor(p: ModelPoint) -> np.ndarray:
    """Riemannian metric at p in chart coordinates (2x2, SPD)."""
    J = _jacobian(p)
    if p.delta == -1:
        return J.T @ np.diag([1.0, 1.0, -1.0]) @ J
    return J.T @ J


def conformal_factor(delta: int, p: ModelPoint) -> float:
    """Conformal weight phi with metric phi * |dx|^2; conformal charts only."""
    check_delta(delta)
    if p.delta != delta:
        raise GeometryError("point curvature does not match delta")
    if not p.chart.conformal:
        raise GeometryError(f"{p.chart.kind} is not a conformal chart")
    s = p.x * p.x + p.y * p.y
    if p.chart.kind == PLANE:
        return 1.0
    if p.chart.kind == POINCARE_DISK:
        return (2.0 / (1.0 - s)) ** 2
    return (2.0 / (1.0 + s)) ** 2


# ---------------------------------------------------------------------------
# distances, exp/log, conversions, dilations

def geodesic_distance(p: ModelPoint, q: ModelPoint) -> float:
    """Space-form distance between two points of the same chart."""
    if p.chart != q.chart:
        raise GeometryError("points must share a chart; use chart_convert first")
    delta = p.delta
    X, Y = _embed(p), _embed(q)
    if delta == 0:
        return float(np.hypot(X[0] - Y[0], X[1] - Y[1]))
    if delta == -1:
        c = -_ambient_dot(-1, X, Y)
        return math.acosh(max(c, 1.0))
    cross = np.cross(X, Y)
    return math.atan2(float(np.linalg.norm(cross)), float(X @ Y))


def _pullback(p: ModelPoint, V: np.ndarray) -> TangentVec:
    """Ambient tangent vector at p -> chart-frame components."""
    J = _jacobian(p)
    if p.chart.kind == PLANE:
        return TangentVec(p, float(V[0]), float(V[1]))
    c = np.linalg.solve(J.T @ J, J.T @ V)
    return TangentVec(p, float(c[0]), float(c[1]))


def _pushforward(v: TangentVec) -> np.ndarray:
    J = _jacobian(v.base)
    return J @ np.array([v.vx, v.vy])


def exp_map(x: ModelPoint, v: TangentVec) -> ModelPoint:
    """Ride the geodesic from x with initial velocity v for unit time."""
    if v.base.chart != x.chart or v.base.coords != x.coords:
        raise GeometryError("tangent vector is not based at x")
    delta = x.delta
    V = _pushforward(v)
    if delta == 0:
        return ModelPoint(x.chart, x.x + V[0], x.y + V[1])
    X = _embed(x)
    t2 = _ambient_dot(delta, V, V)
    t = math.sqrt(max(t2, 0.0))
    if t == 0.0:
        return x
    if delta == 1 and t >= math.pi:
        raise GeometryError("spherical exp requires |v| < pi")
    U = V / t
    if delta == -1:
        Y = math.cosh(t) * X + math.sinh(t) * U
    else:
        Y = math.cos(t) * X + math.sin(t) * U
    return _unembed(x.chart.kind, Y)


def log_map(x: ModelPoint, y: ModelPoint) -> TangentVec:
    """Inverse of exp at x; requires y not antipodal to x when delta=1."""
    if x.chart != y.chart:
        raise GeometryError("points must share a chart")
    delta = x.delta
    if delta == 0:
        return TangentVec(x, y.x - x.x, y.y - x.y)
    X, Y = _embed(x), _embed(y)
    d = geodesic_distance(x, y)
    if d == 0.0:
        return TangentVec(x, 0.0, 0.0)
    if delta == -1:
        W = Y - math.cosh(d) * X
        sn = math.sinh(d)
    else:
        if math.pi - d < 1e-12:
            raise GeometryError("log map undefined at the antipode")
        W = Y - math.cos(d) * X
        sn = math.sin(d)
    return _pullback(x, (d / sn) * W)


def chart_convert(p: ModelPoint, target: Chart | str) -> ModelPoint:
    """Re-express the same space-form point in another chart of equal delta."""
    target = Chart(target) if isinstance(target, str) else target
    if target.delta != p.delta:
        raise GeometryError(
            f"cannot convert {p.chart.kind} (delta={p.delta}) to {target.kind}"
        )
    if target == p.chart:
        return p
    return _unembed(target.kind, _embed(p))


def dilation(x0: ModelPoint, lam: float, p: ModelPoint) -> ModelPoint:
    """Radial dilation about x0: exp_{x0}(t v) -> exp_{x0}(lam t v)."""
    if not 0.0 < lam <= 1.0:
        raise GeometryError("dilation factor must lie in (0, 1]")
    if lam == 1.0:
        return p
    v = log_map(x0, p)
    return exp_map(x0, v.scaled(lam))


def orthonormal_frame(p: ModelPoint) -> tuple[TangentVec, TangentVec]:
    """Oriented orthonormal tangent frame at p (Gram-Schmidt on chart axes)."""
    G = metric_tensor(p)
    e1 = np.array([1.0 / math.sqrt(G[0, 0]), 0.0])
    f2 = np.array([0.0, 1.0]) - (G[0, 1] / G[0, 0]) * np.array([1.0, 0.0])
    f2 /= math.sqrt(float(f2 @ G @ f2))
    return TangentVec(p, e1[0], e1[1]), TangentVec(p, float(f2[0]), float(f2[1]))


def direction(p: ModelPoint, theta: float) -> TangentVec:
    """Unit tangent vector at p making metric angle theta with the frame."""
    e1, e2 = orthonormal_frame(p)
    c, s = math.cos(theta), math.sin(theta)
    return TangentVec(p, c * e1.vx + s * e2.vx, c * e1.vy + s * e2.vy)


def embed_many(chart: Chart | str, pts: np.ndarray) -> np.ndarray:
    """Vectorized chart-to-ambient embedding of an (N, 2) coordinate array."""
    kind = chart.kind if isinstance(chart, Chart) else chart
    pts = np.asarray(pts, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    if kind == PLANE:
        return pts.copy()
    s = x * x + y * y
    if kind == POINCARE_DISK:
        d = 1.0 - s
        return np.column_stack([2 * x / d, 2 * y / d, (1 + s) / d])
    if kind == KLEIN_DISK:
        w = 1.0 / np.sqrt(1.0 - s)
        return np.column_stack([x * w, y * w, w])
    if kind == STEREOGRAPHIC:
        d = 1.0 + s
        return np.column_stack([2 * x / d, 2 * y / d, (s - 1) / d])
    w = 1.0 / np.sqrt(1.0 + s)
    return np.column_stack([x * w, y * w, -w])


def distances_from(delta: int, X0: np.ndarray, XS: np.ndarray) -> np.ndarray:
    """Geodesic distances from one embedded point to an array of them."""
    if delta == 0:
        return np.hypot(XS[:, 0] - X0[0], XS[:, 1] - X0[1])
    if delta == -1:
        c = X0[2] * XS[:, 2] - XS[:, :2] @ X0[:2]
        return np.arccosh(np.maximum(c, 1.0))
    dots = np.clip(XS @ X0, -1.0, 1.0)
    return np.arccos(dots)


def pairwise_distances(delta: int, XA: np.ndarray, XB: np.ndarray) -> np.ndarray:
    """Geodesic distance matrix between two embedded point arrays."""
    if delta == 0:
        diff = XA[:, None, :] - XB[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])
    if delta == -1:
        c = np.outer(XA[:, 2], XB[:, 2]) - XA[:, :2] @ XB[:, :2].T
        return np.arccosh(np.maximum(c, 1.0))
    return np.arccos(np.clip(XA @ XB.T, -1.0, 1.0))


def chart_radius(delta: int, r: float) -> float:
    """Chart distance from the origin of the straight chart at geodesic distance r."""
    check_delta(delta)
    if delta == 0:
        return r
    if delta == -1:
        return math.tanh(r)
    if r >= math.pi / 2:
        raise GeometryError("gnomonic chart covers r < pi/2 only")
    return math.tan(r)


def geodesic_radius(delta: int, u: float) -> float:
    """Inverse of :func:`chart_radius`."""
    check_delta(delta)
    if delta == 0:
        return u
    return math.atanh(u) if delta == -1 else math.atan(u)
