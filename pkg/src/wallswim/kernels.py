"""Wall-bounded Stokes Green kernels.

The flat-wall Green function is the free-space Stokeslet plus the classical
three-image system enforcing no-slip on z = 0.  First-order wall roughness
enters through a correction kernel built from the wall-normal derivative of
the flat Green function, integrated against the height profile.

All formulas are written component-wise on scalar-like quantities so the
same code path serves plain floats, numpy node batches, and Taylor jets.
A uniform height profile reproduces the derivative of the flat kernel with
respect to a rigid wall shift, which pins down sign, orientation, and the
viscosity factor of the correction kernel (see tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ImagePointCoincidence, ZeroSeparation
from .profiles import QuadSpec, WallProfile, converge_quadrature
from .taylor import Jet, jet_stack, sqrt_sc

PI4 = 4.0 * np.pi
PI8 = 8.0 * np.pi

_EYE = np.eye(3)
_SGN = (1.0, 1.0, -1.0)  # column factor (1 - 2*delta_{j3}) of the image terms


@dataclass(frozen=True)
class FluidParams:
    """Newtonian fluid parameters; lengths are dimensionless."""

    mu: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("viscosity mu must be positive")


# ---------------------------------------------------------------------------
# component-level cores (polymorphic over float / ndarray / Jet)
# ---------------------------------------------------------------------------

def _stokeslet_c(d, mu):
    """Free-space Stokeslet at displacement components d = (d0, d1, d2)."""
    rho2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
    rho = sqrt_sc(rho2)
    rho3 = rho * rho2
    return [[(_EYE[i][j] / rho + d[i] * d[j] / rho3) / (PI8 * mu)
             for j in range(3)] for i in range(3)]


def _images_c(dx, dy, zx, zy, mu):
    """Image-system sum at observation height zx, source height zy.

    dx, dy are the horizontal offsets (observation minus source); the image
    displacement is rp = (dx, dy, zx + zy).
    """
    rp = [dx, dy, zx + zy]
    rho2 = rp[0] * rp[0] + rp[1] * rp[1] + rp[2] * rp[2]
    rho = sqrt_sc(rho2)
    rho3 = rho * rho2
    rho5 = rho3 * rho2
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            k1 = -(_EYE[i][j] / rho + rp[i] * rp[j] / rho3) / (PI8 * mu)
            k2 = (zy * zy * _SGN[j] / (PI4 * mu)) * (
                _EYE[i][j] / rho3 - 3 * rp[i] * rp[j] / rho5)
            t3 = rp[2] * _EYE[i][j] / rho3 - 3 * rp[i] * rp[j] * rp[2] / rho5
            if i == 2:
                t3 = t3 - rp[j] / rho3
            if j == 2:
                t3 = t3 + rp[i] / rho3
            k3 = -(zy * _SGN[j] / (PI4 * mu)) * t3
            out[i][j] = k1 + k2 + k3
    return out


def _dz_wall_c(dx, dy, zy, mu):
    """d/dz (first argument) of the flat-wall kernel at a wall point.

    dx, dy are wall-point coordinates minus the source's horizontal
    coordinates; zy is the source height.  Valid only on the wall, where the
    Stokeslet and image distances coincide.
    """
    one = 1.0 + 0.0 * zy  # promotes to the jet/array type of zy
    rho2 = dx * dx + dy * dy + zy * zy
    rho = sqrt_sc(rho2)
    rho3 = rho * rho2
    rho5 = rho3 * rho2
    rho7 = rho5 * rho2
    d = [dx, dy, -zy * one]
    rp = [dx, dy, zy * one]
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            # Stokeslet part, displacement d
            t = -d[2] * _EYE[i][j] / rho3 - 3 * d[i] * d[j] * d[2] / rho5
            if i == 2:
                t = t + d[j] / rho3
            if j == 2:
                t = t + d[i] / rho3
            g = t / (PI8 * mu)
            # first image
            t1 = -rp[2] * _EYE[i][j] / rho3 - 3 * rp[i] * rp[j] * rp[2] / rho5
            if i == 2:
                t1 = t1 + rp[j] / rho3
            if j == 2:
                t1 = t1 + rp[i] / rho3
            k1 = -t1 / (PI8 * mu)
            # source doublet image
            t2 = -3 * rp[2] * _EYE[i][j] / rho5 + 15 * rp[i] * rp[j] * rp[2] / rho7
            if i == 2:
                t2 = t2 - 3 * rp[j] / rho5
            if j == 2:
                t2 = t2 - 3 * rp[i] / rho5
            k2 = (zy * zy * _SGN[j] / (PI4 * mu)) * t2
            # Stokeslet doublet image
            t3 = _EYE[i][j] * (1 / rho3 - 3 * rp[2] * rp[2] / rho5) \
                - 3 * rp[i] * rp[j] / rho5 + 15 * rp[i] * rp[j] * rp[2] * rp[2] / rho7
            if j == 2:
                t3 = t3 - 6 * rp[i] * rp[2] / rho5
            k3 = -(zy * _SGN[j] / (PI4 * mu)) * t3
            out[i][j] = g + k1 + k2 + k3
    return out


def stack33(m):
    """Assemble a 3x3 nested list of scalar-likes into an array or jet."""
    if isinstance(m[0][0], Jet):
        return jet_stack([jet_stack(row) for row in m])
    return np.array(m)


def dz_wall_grid(nodes, x, mu):
    """_dz_wall_c against a batch of wall nodes (Q, 2).

    x is a length-3 sequence of scalar-likes (floats or jets); the result is
    a 3x3 nested list of (Q,)-shaped quantities.
    """
    dx = -1.0 * x[0] + nodes[:, 0]
    dy = -1.0 * x[1] + nodes[:, 1]
    return _dz_wall_c(dx, dy, x[2], mu)


# ---------------------------------------------------------------------------
# public float API
# ---------------------------------------------------------------------------

def stokeslet(r, fluid: FluidParams = FluidParams()) -> np.ndarray:
    """Free-space Stokeslet G(r); homogeneous of degree -1, symmetric."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) < 1e-14:
        raise ZeroSeparation("stokeslet evaluated at zero displacement")
    return stack33(_stokeslet_c([r[0], r[1], r[2]], fluid.mu))


def blake_images(r, r0, fluid: FluidParams = FluidParams()) -> np.ndarray:
    """Image-system part of the flat-wall kernel (no Stokeslet)."""
    r = np.asarray(r, dtype=float)
    r0 = np.asarray(r0, dtype=float)
    if r0[2] <= 0:
        raise ValueError("source must lie above the wall (z > 0)")
    mirror = np.array([r0[0], r0[1], -r0[2]])
    if np.linalg.norm(r - mirror) < 1e-14:
        raise ImagePointCoincidence("evaluation point hits the image point")
    return stack33(_images_c(r[0] - r0[0], r[1] - r0[1], r[2], r0[2], fluid.mu))


def green_flat(r, r0, fluid: FluidParams = FluidParams()) -> np.ndarray:
    """Flat-wall Green kernel: Stokeslet plus images; zero on z = 0."""
    r = np.asarray(r, dtype=float)
    r0 = np.asarray(r0, dtype=float)
    return stokeslet(r - r0, fluid) + blake_images(r, r0, fluid)


def dz_green_wall(s, x0, fluid: FluidParams = FluidParams()) -> np.ndarray:
    """Wall-normal derivative of green_flat in its first argument at z = 0.

    Since the kernel vanishes identically on the wall, this derivative
    carries the whole wall gradient.  Its third row is zero by
    incompressibility.
    """
    s = np.asarray(s, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    if x0[2] <= 0:
        raise ValueError("source must lie above the wall (z > 0)")
    return stack33(_dz_wall_c(s[0] - x0[0], s[1] - x0[1], x0[2], fluid.mu))


def k4_integrand(s, r, rp, fluid: FluidParams = FluidParams()) -> np.ndarray:
    """Density of the roughness correction at wall point s.

    The product orientation transposes the first wall-derivative factor;
    this is the unique choice under which the integrated kernel satisfies
    Green-function reciprocity (and the one the uniform-profile wall-shift
    identity selects).
    """
    da = dz_green_wall(s, r, fluid)
    db = dz_green_wall(s, rp, fluid)
    return fluid.mu * (da.T @ db)


def k4(r, rp, profile: WallProfile, fluid: FluidParams = FluidParams(),
       quad: QuadSpec = QuadSpec()) -> np.ndarray:
    """Roughness correction kernel: -eps * integral of h times k4_integrand.

    Tensor Gauss-Legendre over the profile support with order doubling until
    the relative change drops below quad.tol.
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    if profile.epsilon == 0.0 or not profile.bumps:
        return np.zeros((3, 3))

    def evaluate(order):
        nodes, wh = profile.quad_nodes(order)
        da = np.array(dz_wall_grid(nodes, [r[0], r[1], r[2]], fluid.mu))
        db = np.array(dz_wall_grid(nodes, [rp[0], rp[1], rp[2]], fluid.mu))
        dens = fluid.mu * np.einsum("kiq,kjq->ijq", da, db)
        return -profile.epsilon * dens @ wh

    value, _ = converge_quadrature(evaluate, quad)
    return value


def green_rough(r, rp, profile: WallProfile,
                fluid: FluidParams = FluidParams(),
                quad: QuadSpec = QuadSpec(),
                self_interaction: bool = False) -> np.ndarray:
    """Full first-order kernel near the rough wall.

    With self_interaction=True (coincident arguments) the singular Stokeslet
    is omitted and only the regular image + roughness parts are returned.
    """
    base = blake_images(r, rp, fluid) + k4(r, rp, profile, fluid, quad)
    if self_interaction:
        return base
    return stokeslet(np.asarray(r, float) - np.asarray(rp, float), fluid) + base
