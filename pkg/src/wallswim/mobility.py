"""Single-sphere traction relations and sphere-cluster mobility assembly.

Rigid translations and rotations are eigenfunctions of the single-sphere
velocity-to-traction map with eigenvalues 3*mu*a/2 and 3*mu*a (densities on
the unit sphere), which gives the Stokes drag 6*pi*mu*a and the rotational
torque 8*pi*mu*a^3 in closed form.  The cluster interaction matrix couples
spheres through the wall kernel evaluated at their centers; the grand
resistance system assembles total force and torque for unit rigid motions
and unit arm rates from those couplings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClusterInvalid, SingularSolve
from .kernels import FluidParams, _images_c, _stokeslet_c, dz_wall_grid, stack33
from .profiles import QuadSpec, WallProfile
from .taylor import Jet, jet_stack

LAMBDA_T_FACTOR = 1.5   # lambda_T = 1.5 * mu * a
LAMBDA_R_FACTOR = 3.0   # lambda_R = 3.0 * mu * a


# ---------------------------------------------------------------------------
# single-sphere relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RigidTraction:
    """Traction summary for a rigid surface velocity on one sphere."""

    eigenvalue: float
    total_force: np.ndarray
    total_torque: np.ndarray


def dtn_rigid(kind: str, direction, a: float,
              fluid: FluidParams = FluidParams()) -> RigidTraction:
    """Traction of a unit rigid translation or rotation of a sphere.

    Translation u: density lambda_T u, total force 6 pi mu a u, no torque.
    Rotation about unit e (surface velocity e x a r): density lambda_R times
    the velocity, zero mean, torque 8 pi mu a^3 e from the second moment.
    """
    direction = np.asarray(direction, dtype=float)
    if a <= 0:
        raise ValueError("radius must be positive")
    if kind == "Translation":
        lam = LAMBDA_T_FACTOR * fluid.mu * a
        return RigidTraction(lam, 6 * np.pi * fluid.mu * a * direction,
                             np.zeros(3))
    if kind == "Rotation":
        lam = LAMBDA_R_FACTOR * fluid.mu * a
        return RigidTraction(lam, np.zeros(3),
                             8 * np.pi * fluid.mu * a**3 * direction)
    raise ValueError("kind must be 'Translation' or 'Rotation'")


def sphere_grid(n_theta: int, n_phi: int):
    """Gauss-Legendre (in the polar angle) x uniform product grid on S^2.

    Returns points (Q, 3) and weights (Q,) for the unit-sphere measure.
    """
    t, wt = np.polynomial.legendre.leggauss(n_theta)
    theta = (t + 1) * np.pi / 2          # map to (0, pi)
    wtheta = wt * np.pi / 2 * np.sin(theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    wphi = 2 * np.pi / n_phi
    T, P = np.meshgrid(theta, phi, indexing="ij")
    pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P),
                    np.cos(T)], axis=-1).reshape(-1, 3)
    w = (wtheta[:, None] * wphi * np.ones_like(P)).reshape(-1)
    return pts, w


def single_layer_quadrature(density, a: float,
                            fluid: FluidParams = FluidParams(),
                            n_theta: int = 80, n_phi: int = 160,
                            eval_points=None) -> np.ndarray:
    """Single-layer potential of a constant density over the unit sphere.

    Evaluates integral of G(a (r - s)) c over s for each evaluation point r
    on the sphere.  The grid is rotated so its pole sits at r, which removes
    the integrable singularity in polar coordinates.  Test oracle for the
    traction eigenrelations; the exact value is (2 / (3 mu a)) c.
    """
    c = np.asarray(density, dtype=float)
    if eval_points is None:
        eval_points = np.array([[0.0, 0.0, 1.0],
                                [1.0, 0.0, 0.0],
                                [np.sqrt(1 / 3)] * 3,
                                [0.6, -0.64, np.sqrt(1 - 0.36 - 0.4096)]])
    pts, w = sphere_grid(n_theta, n_phi)
    out = []
    for r in np.asarray(eval_points, dtype=float):
        # rotation taking e_z to r
        ez = np.array([0.0, 0.0, 1.0])
        v = np.cross(ez, r)
        s = np.linalg.norm(v)
        if s < 1e-14:
            R = np.eye(3) if r[2] > 0 else np.diag([1.0, -1.0, -1.0])
        else:
            vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
            R = np.eye(3) + vx + vx @ vx * ((1 - r @ ez) / s**2)
        nodes = pts @ R.T
        d = a * (r[None, :] - nodes)
        rho = np.linalg.norm(d, axis=1)
        G = (np.eye(3)[None] / rho[:, None, None]
             + d[:, :, None] * d[:, None, :] / rho[:, None, None] ** 3) \
            / (8 * np.pi * fluid.mu)
        out.append(np.einsum("q,qij,j->i", w, G, c))
    return np.array(out)


# ---------------------------------------------------------------------------
# cluster and interaction matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereCluster:
    centers: np.ndarray
    radius: float
    fluid: FluidParams = FluidParams()
    profile: WallProfile = WallProfile.flat()
    clearance: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "centers",
                           np.asarray(self.centers, dtype=float))
        n = len(self.centers)
        for i in range(n):
            for j in range(i + 1, n):
                if np.linalg.norm(self.centers[i] - self.centers[j]) <= 2 * self.radius:
                    raise ClusterInvalid("spheres overlap")
        zmin = self.radius + self.clearance * (1.0 + self.profile.epsilon)
        if np.min(self.centers[:, 2]) < zmin:
            raise ClusterInvalid("insufficient wall clearance")


@dataclass(frozen=True)
class InteractionMatrix:
    A: np.ndarray
    A1: np.ndarray | None = None
    A2: np.ndarray | None = None


def _a1_blocks_c(centers_c, a, mu, images=True):
    """Order-a interaction blocks (flat-wall kernel at the centers).

    centers_c is a list of per-sphere [x, y, z] scalar-likes; returns an
    N x N nested list of 3x3 nested lists scaled by -6 pi mu a.
    """
    n = len(centers_c)
    pref = -6 * np.pi * mu * a
    blocks = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            xi, xj = centers_c[i], centers_c[j]
            if i == j:
                if not images:
                    blocks[i][j] = [[0.0 * xi[2]] * 3 for _ in range(3)]
                    continue
                K = _images_c(0.0 * xi[0], 0.0 * xi[1], xi[2], xi[2], mu)
            else:
                d = [xi[k] - xj[k] for k in range(3)]
                K = _stokeslet_c(d, mu)
                if images:
                    Kim = _images_c(d[0], d[1], xi[2], xj[2], mu)
                    K = [[K[r][c] + Kim[r][c] for c in range(3)]
                         for r in range(3)]
            blocks[i][j] = [[pref * K[r][c] for c in range(3)]
                            for r in range(3)]
    return blocks


def _a2_blocks_c(centers_c, a, mu, epsilon, nodes, wh):
    """Roughness interaction blocks from a fixed planar quadrature rule.

    K4(x_i, x_j) = -epsilon * mu * sum_q wh_q D(s_q, x_i)^T D(s_q, x_j);
    wh already contains the profile height at the nodes.
    """
    n = len(centers_c)
    pref = -6 * np.pi * mu * a
    D = [dz_wall_grid(nodes, centers_c[i], mu) for i in range(n)]
    blocks = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            K = [[None] * 3 for _ in range(3)]
            for r in range(3):
                for c in range(3):
                    acc = None
                    for k in range(3):
                        t = D[i][k][r] * D[j][k][c]
                        acc = t if acc is None else acc + t
                    k4 = -epsilon * mu * (acc * wh).sum() if isinstance(acc, Jet) \
                        else -epsilon * mu * float(acc @ wh)
                    K[r][c] = pref * k4
            blocks[i][j] = K
    return blocks


def _assemble_blocks(blocks):
    """N x N grid of 3x3 nested lists -> (3N, 3N) ndarray or Jet."""
    n = len(blocks)
    sample = blocks[0][0][0][0]
    if isinstance(sample, Jet):
        rows = []
        for i in range(n):
            for r in range(3):
                rows.append(jet_stack([blocks[i][j][r][c]
                                       for j in range(n) for c in range(3)]))
        return jet_stack(rows)
    out = np.zeros((3 * n, 3 * n))
    for i in range(n):
        for j in range(n):
            out[3 * i:3 * i + 3, 3 * j:3 * j + 3] = blocks[i][j]
    return out


def assemble_A(cluster: SphereCluster, split: bool = False,
               quad: QuadSpec = QuadSpec()) -> InteractionMatrix:
    """Interaction matrix A = Id + A1 + A2 at the cluster centers.

    Diagonal blocks: Id - 6 pi mu a (images + roughness) at coincident
    arguments; off-diagonal: -6 pi mu a times the full kernel.
    """
    centers_c = [list(map(float, c)) for c in cluster.centers]
    mu, a = cluster.fluid.mu, cluster.radius
    A1 = _assemble_blocks(_a1_blocks_c(centers_c, a, mu))
    prof = cluster.profile
    if prof.epsilon != 0.0 and prof.bumps:
        nodes, wh = prof.quad_nodes(quad.order)
        A2 = _assemble_blocks(_a2_blocks_c(centers_c, a, mu, prof.epsilon,
                                           nodes, wh))
    else:
        A2 = np.zeros_like(A1)
    A = np.eye(len(A1)) + A1 + A2
    if split:
        return InteractionMatrix(A=A, A1=A1, A2=A2)
    return InteractionMatrix(A=A)


# ---------------------------------------------------------------------------
# grand resistance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrandResistance:
    """M (6x6) and the shape-rate matrix N (6xk), torque rows first."""

    M: np.ndarray
    N: np.ndarray


def _cross_c(u, v):
    return [u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]]


def _dot_c(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _grand_mn_c(centers_c, ref_c, shape_dirs_c, frame_rows, a, mu, A):
    """M (6x6) and N (6xk) entries from the assembled interaction matrix.

    frame_rows: three orthonormal 3-vectors (lists of scalar-likes); M's
    columns are (Omega_1..3, v_1..3) in that frame, rows are torques about
    ref_c then forces, projected on the same frame.
    """
    n = len(centers_c)
    pref = 6 * np.pi * mu * a
    rot_torque = 8 * np.pi * mu * a**3

    def column(u_t, direct_rot sign=None):
        raise SyntaxError

    def apply_A(uts):
        flat = [uts[l][r] for l in range(n) for r in range(3)]
        if isinstance(A, Jet):
            vec = jet_stack(flat)
            return jet_matmulvec(A, vec, n)
        out = A @ np.array(flat)
        return [[out[3 * l + r] for r in range(3)] for l in range(n)]

    def jet_matmulvec(Amat, vec, nsph):
        prod = (Amat * vec[None, :]).sum(axis=1)
        return [[prod[3 * l + r] for r in range(3)] for l in range(nsph)]

    def wrench(uts, rot_dir=None):
        c = apply_A(uts)
        force = [0.0, 0.0, 0.0]
        torque = [0.0, 0.0, 0.0]
        for l in range(n):
            arm = [centers_c[l][k] - ref_c[k] for k in range(3)]
            tq = _cross_c(arm, c[l])
            for k in range(3):
                force[k] = force[k] - pref * c[l][k]
                torque[k] = torque[k] - pref * tq[k]
        if rot_dir is not None:
            for k in range(3):
                torque[k] = torque[k] - rot_torque * n * rot_dir[k]
        return torque, force

    cols = []
    for m in range(3):  # rotation columns
        f = frame_rows[m]
        uts = [_cross_c(f, [centers_c[l][k] - ref_c[k] for k in range(3)])
               for l in range(n)]
        cols.append(wrench(uts, rot_dir=f))
    for m in range(3):  # translation columns
        f = frame_rows[m]
        uts = [[f[0], f[1], f[2]] for _ in range(n)]
        cols.append(wrench(uts))
    k = len(shape_dirs_c[0])
    ncols = []
    for q in range(k):
        uts = [shape_dirs_c[l][q] for l in range(n)]
        ncols.append(wrench(uts))
    M = [[_dot_c(frame_rows[i % 3], cols[j][0 if i < 3 else 1])
          for j in range(6)] for i in range(6)]
    # rows: torques (frame projections) then forces
    Mrows = []
    for i in range(3):
        Mrows.append([_dot_c(frame_rows[i], cols[j][0]) for j in range(6)])
    for i in range(3):
        Mrows.append([_dot_c(frame_rows[i], cols[j][1]) for j in range(6)])
    Nrows = []
    for i in range(3):
        Nrows.append([_dot_c(frame_rows[i], ncols[q][0]) for q in range(k)])
    for i in range(3):
        Nrows.append([_dot_c(frame_rows[i], ncols[q][1]) for q in range(k)])
    return Mrows, Nrows


def grand_resistance(cluster: SphereCluster, frame: np.ndarray,
                     shape_dirs: np.ndarray, ref_point,
                     quad: QuadSpec = QuadSpec()) -> GrandResistance:
    """Grand resistance pair (M, N) for a cluster of identical spheres.

    frame: (3, 3) orthonormal rows; shape_dirs: (n_spheres, 3, k) surface
    translation directions per unit arm rate; ref_point: torque reference.
    M maps (Omega, v) in the frame to (torque, force); N maps arm rates.
    """
    ia = assemble_A(cluster, split=False, quad=quad)
    centers_c = [list(map(float, c)) for c in cluster.centers]
    ref_c = list(map(float, ref_point))
    shape_c = [[list(map(float, shape_dirs[l, :, q]))
                for q in range(shape_dirs.shape[2])]
               for l in range(len(centers_c))]
    frame_rows = [list(map(float, frame[i])) for i in range(3)]
    Mrows, Nrows = _grand_mn_c(centers_c, ref_c, shape_c, frame_rows,
                               cluster.radius, cluster.fluid.mu, ia.A)
    M = np.array(Mrows, dtype=float)
    N = np.array(Nrows, dtype=float)
    if np.linalg.cond(M) > 1e12:
        raise SingularSolve("grand resistance matrix is ill-conditioned")
    return GrandResistance(M=M, N=N)
