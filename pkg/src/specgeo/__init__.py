"""Spectral geometry of constant-curvature space forms.

Computes Dirichlet eigenvalues of geodesic balls (radial shooting, any
dimension) and of planar/hyperbolic/spherical convex bodies (P1 finite
elements in conformal charts), and verifies the classical sharp spectral
inequalities on them: Faber-Krahn, Payne-Polya-Weinberger and its
gap form, eigenvalue/volume continuity bounds, rearrangement
inequalities, in-radius and gradient bounds, and stability sweeps.
"""

from .spaceform import (
    Chart,
    ModelPoint,
    TangentVec,
    ball_volume,
    c_delta,
    chart_convert,
    conformal_factor,
    dilation,
    exp_map,
    geodesic_distance,
    log_map,
    s_delta,
)
from .convexbody import (
    ConvexBody,
    SupportFunction,
    ball_body,
    body_metric,
    body_volume,
    dilate_body,
    hausdorff_distance,
    inradius,
    load_body,
    perturbed_ball,
    random_body,
    save_body,
    support_of,
)
from .ballspec import (
    BallSpec,
    RadialEigen,
    lambda1_ball,
    lambda1_star,
    lambda2_ball,
    lambda2_star,
    radial_eigenvalue,
    radius_from_lambda1,
    ratio_curve,
)
from .laplace2d import (
    AssembledSystem,
    EigenResult,
    TriMesh,
    assemble,
    convergence_study,
    gradient_field,
    solve_lowest,
    triangulate,
)
from .stability import VerificationReport, SweepPoint

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
