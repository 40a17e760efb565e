"""Convex bodies in space forms.

A body is a geodesically convex polygon held in the straight-geodesic
chart of its geometry (plane, klein-disk or gnomonic), where geodesic
convexity coincides with Euclidean convexity of the chart coordinates.
Curved boundaries (balls, ellipses) enter as polygonal approximations
whose resolution is a knob of the generators.

The module provides support functions rho sampled on a uniform angular
grid, the sup-log metric d(A, B) = max |ln(rho_A / rho_B)|, Hausdorff
distance on boundary samples, the geodesic in-radius, radial dilations,
and seeded generators of test families.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull

from . import spaceform as sf
from .spaceform import GeometryError, ModelPoint

HEMISPHERE_MARGIN = 1e-3  # delta=1 bodies must keep rho_max < pi/2 - margin


class BodyError(ValueError):
    """Body fails its convexity/interiority/hemisphere invariants."""


@dataclass(frozen=True, eq=False)
class ConvexBody:
    delta: int
    chart: sf.Chart
    vertices: np.ndarray  # (k, 2) chart coords, counter-clockwise
    base: np.ndarray      # (2,) chart coords of the interior base point

    def __post_init__(self):
        object.__setattr__(self, "vertices", np.asarray(self.vertices, dtype=float))
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))

    @property
    def nv(self) -> int:
        return len(self.vertices)

    def base_point(self) -> ModelPoint:
        return ModelPoint(self.chart, float(self.base[0]), float(self.base[1]))

    def vertex_point(self, i: int) -> ModelPoint:
        return ModelPoint(self.chart, float(self.vertices[i, 0]), float(self.vertices[i, 1]))


@dataclass(frozen=True, eq=False)
class SupportFunction:
    """rho sampled at the uniform metric angles theta_j = 2 pi j / m."""

    delta: int
    chart: sf.Chart
    base: np.ndarray
    rho: np.ndarray

    @property
    def m(self) -> int:
        return len(self.rho)

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.m) / self.m


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _polygon_is_ccw_convex(verts: np.ndarray, tol: float) -> bool:
    k = len(verts)
    for i in range(k):
        if _cross(verts[i], verts[(i + 1) % k], verts[(i + 2) % k]) <= tol:
            return False
    return True


def point_in_polygon(verts: np.ndarray, p, strict: bool = True) -> bool:
    """Membership test for a CCW convex chart polygon."""
    k = len(verts)
    tol = 0.0 if not strict else 1e-15
    for i in range(k):
        if _cross(verts[i], verts[(i + 1) % k], p) <= tol:
            return False
    return True


def make_body(delta: int, vertices, base=(0.0, 0.0),
              hemisphere_margin: float = HEMISPHERE_MARGIN) -> ConvexBody:
    """Validate and build a body in the straight-geodesic chart of delta."""
    sf.check_delta(delta)
    chart = sf.straight_chart(delta)
    verts = np.asarray(vertices, dtype=float)
    base = np.asarray(base, dtype=float)
    if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
        raise BodyError("need at least 3 planar vertices")
    if delta == -1 and np.any(np.sum(verts**2, axis=1) >= 1.0):
        raise BodyError("klein-disk vertices must satisfy |x| < 1")
    # orient CCW
    area2 = sum(
        _cross((0.0, 0.0), verts[i], verts[(i + 1) % len(verts)])
        for i in range(len(verts))
    )
    if area2 < 0:
        verts = verts[::-1].copy()
    scale = float(np.max(np.abs(verts))) or 1.0
    if not _polygon_is_ccw_convex(verts, tol=1e-12 * scale * scale):
        raise BodyError("vertex polygon is not strictly convex in chart coordinates")
    if not point_in_polygon(verts, base):
        raise BodyError("base point is not strictly interior")
    body = ConvexBody(delta, chart, verts, base)
    if delta == 1:
        x0 = body.base_point()
        rho_max = max(
            sf.geodesic_distance(x0, body.vertex_point(i)) for i in range(body.nv)
        )
        if rho_max >= math.pi / 2 - hemisphere_margin:
            raise BodyError(
                f"spherical body reaches rho={rho_max:.6f}, too close to the hemisphere"
            )
    return body


def validate(body: ConvexBody) -> ConvexBody:
    return make_body(body.delta, body.vertices, body.base)


# ---------------------------------------------------------------------------
# support function and the sup-log metric

def _ray_polygon_hit(verts: np.ndarray, origin: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Intersection of the chart ray origin + s*direction (s > 0) with the polygon."""
    k = len(verts)
    best = None
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        e = b - a
        denom = direction[0] * (-e[1]) + direction[1] * e[0]
        if abs(denom) < 1e-300:
            continue
        rel = a - origin
        s = (rel[0] * (-e[1]) + rel[1] * e[0]) / denom
        t = (direction[0] * rel[1] - direction[1] * rel[0]) / denom
        if s > 0.0 and -1e-12 <= t <= 1.0 + 1e-12:
            if best is None or s < best:
                best = s
    if best is None:
        raise BodyError("ray does not meet the polygon boundary; base not interior?")
    return origin + best * direction


def boundary_point(body: ConvexBody, theta: float) -> ModelPoint:
    """Boundary intersection of the geodesic ray at metric angle theta from the base."""
    x0 = body.base_point()
    v = sf.direction(x0, theta)
    # geodesics through x0 are straight chart rays in a straight chart
    hit = _ray_polygon_hit(body.vertices, body.base, np.array([v.vx, v.vy]))
    return ModelPoint(body.chart, float(hit[0]), float(hit[1]))


def support_of(body: ConvexBody, m: int = 64) -> SupportFunction:
    """Sample rho at m uniform angles: geodesic distance base -> boundary."""
    if m < 16:
        raise BodyError("support grid needs m >= 16")
    x0 = body.base_point()
    rho = np.empty(m)
    for j in range(m):
        theta = 2.0 * math.pi * j / m
        rho[j] = sf.geodesic_distance(x0, boundary_point(body, theta))
    return SupportFunction(body.delta, body.chart, body.base.copy(), rho)


def body_metric(a: SupportFunction, b: SupportFunction) -> float:
    """d(A, B) = max_j |ln(rho_A(theta_j) / rho_B(theta_j))|."""
    if a.delta != b.delta or a.m != b.m or not np.allclose(a.base, b.base, atol=1e-14):
        raise BodyError("support functions must share curvature, base and grid")
    return float(np.max(np.abs(np.log(a.rho / b.rho))))


def lipschitz_bound(delta: int, r: float, R: float) -> float:
    """Lipschitz constant of rho for bodies with B(r) inside and B(R) outside."""
    if delta == 1:
        return 1.0 / math.tan(r)
    sR, sr = sf.s_delta(delta, R), sf.s_delta(delta, r)
    return sR * math.sqrt(max((sR / sr) ** 2 - 1.0, 0.0))


# ---------------------------------------------------------------------------
# distances between bodies

def _edge_geodesics_embedded(body: ConvexBody):
    """Per-edge unit (co)normals in the ambient model, oriented inward."""
    delta = body.delta
    X = np.array([sf._embed(body.vertex_point(i)) for i in range(body.nv)])
    B = sf._embed(body.base_point())
    normals = []
    for i in range(body.nv):
        a, b = X[i], X[(i + 1) % body.nv]
        if delta == 0:
            e = b - a
            nvec = np.array([-e[1], e[0]])
            nvec /= np.linalg.norm(nvec)
            if (B - a) @ nvec < 0:
                nvec = -nvec
            normals.append((a, b, nvec))
            continue
        n = np.cross(a, b)
        if delta == -1:
            n = np.array([n[0], n[1], -n[2]])
            norm2 = sf._ambient_dot(-1, n, n)
        else:
            norm2 = float(n @ n)
        n = n / math.sqrt(norm2)
        if sf._ambient_dot(delta, B, n) < 0:
            n = -n
        normals.append((a, b, n))
    return X, B, normals


def signed_edge_distances(body: ConvexBody, p: ModelPoint) -> np.ndarray:
    """Signed geodesic distances from p to each full edge geodesic (inside > 0)."""
    delta = body.delta
    P = sf._embed(p)
    _, _, normals = _edge_geodesics_embedded(body)
    out = np.empty(body.nv)
    for i, (_, _, n) in enumerate(normals):
        if delta == 0:
            a = normals[i][0]
            out[i] = float((P - a) @ n)
        elif delta == -1:
            out[i] = math.asinh(sf._ambient_dot(-1, P, n))
        else:
            out[i] = math.asin(max(-1.0, min(1.0, float(P @ n))))
    return out


def distance_to_boundary(body: ConvexBody, p: ModelPoint) -> float:
    """Geodesic distance from an interior point to the boundary."""
    return float(np.min(signed_edge_distances(body, p)))


def point_body_distance(body: ConvexBody, p: ModelPoint, samples: np.ndarray) -> float:
    """Distance from p to the body: 0 inside, else min over boundary samples."""
    pc = np.array([p.x, p.y]) if p.chart == body.chart else None
    if pc is None:
        p = sf.chart_convert(p, body.chart)
        pc = np.array([p.x, p.y])
    if point_in_polygon(body.vertices, pc, strict=False):
        return 0.0
    return min(
        sf.geodesic_distance(p, ModelPoint(body.chart, float(q[0]), float(q[1])))
        for q in samples
    )


def _boundary_samples(body: ConvexBody, m: int) -> np.ndarray:
    """Boundary chart points: m support-grid hits plus the polygon vertices."""
    pts = [np.array(boundary_point(body, 2.0 * math.pi * j / m).coords) for j in range(m)]
    pts.extend(body.vertices)
    return np.array(pts)


def hausdorff_distance(a: ConvexBody, b: ConvexBody, m: int = 256) -> float:
    """Two-sided Hausdorff distance on boundary samples.

    The reported value carries a grid error of at most one boundary
    chord length (the sup over each boundary is scanned at the support
    grid resolution plus the vertices).
    """
    if a.delta != b.delta:
        raise BodyError("bodies must live in the same geometry")
    sa, sb = _boundary_samples(a, m), _boundary_samples(b, m)
    d_ab = max(
        point_body_distance(b, ModelPoint(a.chart, float(q[0]), float(q[1])), sb)
        for q in sa
    )
    d_ba = max(
        point_body_distance(a, ModelPoint(b.chart, float(q[0]), float(q[1])), sa)
        for q in sb
    )
    return max(d_ab, d_ba)


def inradius(body: ConvexBody, grid: int = 24) -> float:
    """Geodesic in-radius: maximize min signed distance to the edge geodesics.

    Coarse chart-grid scan plus Nelder-Mead refinement; the objective is
    exact (closed-form signed distances), only the maximizer is numeric.
    """
    verts = body.vertices

    def neg_f(c):
        if not point_in_polygon(verts, c, strict=False):
            return 1.0
        p = ModelPoint(body.chart, float(c[0]), float(c[1]))
        return -float(np.min(signed_edge_distances(body, p)))

    lo, hi = verts.min(axis=0), verts.max(axis=0)
    xs = np.linspace(lo[0], hi[0], grid)
    ys = np.linspace(lo[1], hi[1], grid)
    best, best_val = body.base.copy(), neg_f(body.base)
    for x in xs:
        for y in ys:
            v = neg_f((x, y))
            if v < best_val:
                best, best_val = np.array([x, y]), v
    res = minimize(neg_f, best, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-13, "maxiter": 4000})
    return -float(res.fun)


# ---------------------------------------------------------------------------
# constructions

def body_volume(body: ConvexBody) -> float:
    """Exact polygon volume: shoelace (delta=0) or angular excess (Gauss-Bonnet)."""
    verts = body.vertices
    k = len(verts)
    if body.delta == 0:
        return 0.5 * abs(sum(
            verts[i, 0] * verts[(i + 1) % k, 1] - verts[(i + 1) % k, 0] * verts[i, 1]
            for i in range(k)
        ))
    angle_sum = 0.0
    for i in range(k):
        p = body.vertex_point(i)
        u = sf.log_map(p, body.vertex_point((i - 1) % k))
        w = sf.log_map(p, body.vertex_point((i + 1) % k))
        G = sf.metric_tensor(p)
        uu = np.array(u.components)
        ww = np.array(w.components)
        cosang = float(uu @ G @ ww) / (u.norm() * w.norm())
        angle_sum += math.acos(max(-1.0, min(1.0, cosang)))
    if body.delta == 1:
        return angle_sum - (k - 2) * math.pi
    return (k - 2) * math.pi - angle_sum


def dilate_body(body: ConvexBody, lam: float) -> ConvexBody:
    """Map the vertices by the radial dilation about the base point.

    For delta=0 this is the exact image; for curved geometries the exact
    image has support lam*rho but is not a geodesic polygon, so the
    vertex-mapped polygon approximates it to polygonalization order.
    Convexity of the result is asserted, not assumed.
    """
    if not 0.0 < lam <= 1.0:
        raise BodyError("dilation factor must lie in (0, 1]")
    if lam == 1.0:
        return body
    x0 = body.base_point()
    new = np.array([
        sf.dilation(x0, lam, body.vertex_point(i)).coords for i in range(body.nv)
    ])
    try:
        return make_body(body.delta, new, body.base)
    except BodyError as exc:
        raise BodyError(f"dilated polygon lost convexity (lam={lam}): {exc}") from exc


def ball_body(delta: int, r: float, center=(0.0, 0.0), nv: int = 96) -> ConvexBody:
    """Polygonal geodesic ball of radius r about a chart point."""
    sf.check_delta(delta)
    if delta == 1 and r >= math.pi / 2 - HEMISPHERE_MARGIN:
        raise BodyError("spherical ball must stay inside the open hemisphere")
    chart = sf.straight_chart(delta)
    c = ModelPoint(chart, float(center[0]), float(center[1]))
    verts = []
    for j in range(nv):
        theta = 2.0 * math.pi * j / nv
        verts.append(sf.exp_map(c, sf.direction(c, theta).scaled(r)).coords)
    return make_body(delta, np.array(verts), center)


def random_body(delta: int, seed: int, nv: int = 16,
                r_min: float = 0.5, r_max: float = 1.0) -> ConvexBody:
    """Convex hull of nv seeded random boundary points with rho in [r_min, r_max]."""
    sf.check_delta(delta)
    if not 0.0 < r_min <= r_max:
        raise BodyError("need 0 < r_min <= r_max")
    if delta == 1 and r_max >= math.pi / 2 - HEMISPHERE_MARGIN:
        raise BodyError("spherical bodies must satisfy r_max < pi/2 - margin")
    if nv < 4:
        raise BodyError("need nv >= 4 candidate points")
    for attempt in range(50):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt, 0x5EED]))
        thetas = np.sort(rng.uniform(0.0, 2.0 * math.pi, nv))
        rhos = rng.uniform(r_min, r_max, nv)
        radii = np.array([sf.chart_radius(delta, r) for r in rhos])
        pts = np.column_stack([radii * np.cos(thetas), radii * np.sin(thetas)])
        try:
            hull = ConvexHull(pts)
            verts = pts[hull.vertices]
            return make_body(delta, verts, (0.0, 0.0))
        except (BodyError, Exception):
            continue
    raise BodyError(f"could not generate a valid body from seed {seed}")


def perturbed_ball(delta: int, r: float, eps: float, mode: str = "ellipse",
                   nv: int = 96) -> ConvexBody:
    """Convex one-parameter deformations of the polygonal ball.

    ``ellipse``: chart ellipse with semi-axes u*(1+eps) and u/(1+eps)
    where u is the chart radius of r (in the plane this preserves the
    continuum area pi r^2).  ``one-bump``: a single smooth radial bump
    of height eps*r; convexity is checked and loss raises.
    """
    if eps < 0:
        raise BodyError("eps must be >= 0")
    if mode not in ("ellipse", "one-bump"):
        raise BodyError(f"unknown perturbation mode {mode!r}")
    thetas = 2.0 * math.pi * np.arange(nv) / nv
    u = sf.chart_radius(delta, r)
    if mode == "ellipse":
        a, b = u * (1.0 + eps), u / (1.0 + eps)
        pts = np.column_stack([a * np.cos(thetas), b * np.sin(thetas)])
    else:
        bump = np.exp(-((thetas - math.pi) ** 2) / (2 * 0.45**2))
        rho = r * (1.0 + eps * bump)
        radii = np.array([sf.chart_radius(delta, x) for x in rho])
        pts = np.column_stack([radii * np.cos(thetas), radii * np.sin(thetas)])
    try:
        return make_body(delta, pts, (0.0, 0.0))
    except BodyError as exc:
        raise BodyError(f"perturbation eps={eps} lost convexity: {exc}") from exc


# ---------------------------------------------------------------------------
# body files

_CHART_FOR_DELTA = {0: "plane", -1: "klein-disk", 1: "gnomonic"}


def body_to_dict(body: ConvexBody) -> dict:
    return {
        "delta": body.delta,
        "chart": body.chart.kind,
        "base": [float(body.base[0]), float(body.base[1])],
        "vertices": [[float(x), float(y)] for x, y in body.vertices],
    }


def body_from_dict(data: dict) -> ConvexBody:
    try:
        delta = data["delta"]
        chart = data["chart"]
        base = data["base"]
        vertices = data["vertices"]
    except (KeyError, TypeError) as exc:
        raise BodyError(f"body file is missing field {exc}") from exc
    if delta not in (-1, 0, 1):
        raise BodyError(f"invalid delta {delta!r}")
    if chart != _CHART_FOR_DELTA[delta]:
        raise BodyError(
            f"chart {chart!r} is not the straight-geodesic chart of delta={delta}"
        )
    return make_body(delta, np.asarray(vertices, dtype=float), np.asarray(base, dtype=float))


def save_body(body: ConvexBody, path) -> None:
    with open(path, "w") as fh:
        json.dump(body_to_dict(body), fh, indent=1)
        fh.write("\n")


def load_body(path) -> ConvexBody:
    with open(path) as fh:
        data = json.load(fh)
    return body_from_dict(data)
