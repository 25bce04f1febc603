"""Swimmer geometry and kinematics.

The three-sphere swimmer is a collinear cluster (x1, x2, x3) along a unit
axis e1 parameterized by polar/azimuth angles; the four-sphere swimmer is a
regular tetrahedron with an SO(3) orientation charted by a rotation vector.

The propulsion solve uses three matrix blocks: S maps the per-sphere rigid
translations to total force and torque; T expresses those translations in
chart rates; U carries the arm-rate contributions.  The torque row along
the swimmer axis is identically zero in the leading model (every term is a
cross product with e1), so the reduced system drops it and keeps the five
remaining rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateInvalid
from .profiles import WallProfile
from .taylor import Jet, cos_sc, jet_stack, sin_sc, sqrt_sc

DELTA_ANGLE_DEFAULT = 0.1
WALL_CLEARANCE_DEFAULT = 0.5

# fixed unit arm directions of the reference tetrahedron
TETRA_DIRS = np.array([[1.0, 1.0, 1.0],
                       [1.0, -1.0, -1.0],
                       [-1.0, 1.0, -1.0],
                       [-1.0, -1.0, 1.0]]) / np.sqrt(3.0)


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class State3:
    """Three-sphere state (xi1, xi2, theta, phi, xc)."""

    xi1: float
    xi2: float
    theta: float
    phi: float
    xc: tuple

    def to_array(self) -> np.ndarray:
        return np.array([self.xi1, self.xi2, self.theta, self.phi,
                         *self.xc], dtype=float)

    @staticmethod
    def from_array(x) -> "State3":
        x = np.asarray(x, dtype=float)
        return State3(x[0], x[1], x[2], x[3], (x[4], x[5], x[6]))


@dataclass(frozen=True)
class State4:
    """Four-sphere state: arm lengths, center, rotation-vector orientation."""

    xi: tuple      # four arm lengths
    xc: tuple
    rot: tuple     # rotation vector, |rot| < pi

    def to_array(self) -> np.ndarray:
        return np.array([*self.xi, *self.xc, *self.rot], dtype=float)

    @staticmethod
    def from_array(x) -> "State4":
        x = np.asarray(x, dtype=float)
        return State4(tuple(x[0:4]), tuple(x[4:7]), tuple(x[7:10]))


# ---------------------------------------------------------------------------
# frames and centers (generic cores work on floats and jets)
# ---------------------------------------------------------------------------

def _frame_c(theta, phi):
    st, ct = sin_sc(theta), cos_sc(theta)
    sp, cp = sin_sc(phi), cos_sc(phi)
    e1 = [cp * st, sp * st, ct]
    e2 = [cp * ct, sp * ct, -1.0 * st]
    e3 = [-1.0 * sp, cp, 0.0 * sp]
    return e1, e2, e3


def frame3(theta: float, phi: float) -> np.ndarray:
    """Right-handed orthonormal frame (rows e1, e2, e3); e1 is the axis."""
    e1, e2, e3 = _frame_c(float(theta), float(phi))
    return np.array([e1, e2, e3])


def _centers3_c(x):
    """Sphere centers for state components x = (xi1, xi2, th, ph, xc...)."""
    e1, _, _ = _frame_c(x[2], x[3])
    xc = [x[4], x[5], x[6]]
    c1 = [xc[k] - x[0] * e1[k] for k in range(3)]
    c3 = [xc[k] + x[1] * e1[k] for k in range(3)]
    return [c1, xc, c3]


def _rotation_c(w):
    """Rodrigues rotation matrix for rotation vector w (3 scalar-likes)."""
    th2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
    th = sqrt_sc(th2)
    a = sin_sc(th) / th
    b = (1.0 - cos_sc(th)) / th2
    wx = [[0.0 * th, -1.0 * w[2], w[1]],
          [w[2], 0.0 * th, -1.0 * w[0]],
          [-1.0 * w[1], w[0], 0.0 * th]]
    wx2 = [[sum(wx[i][k] * wx[k][j] for k in range(3)) for j in range(3)]
           for i in range(3)]
    return [[(1.0 if i == j else 0.0) + a * wx[i][j] + b * wx2[i][j]
             for j in range(3)] for i in range(3)]


def _so3_left_jacobian_c(w):
    """J(w) with Omega_space = J(w) wdot for R = exp([w]x)."""
    th2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
    th = sqrt_sc(th2)
    b = (1.0 - cos_sc(th)) / th2
    c = (th - sin_sc(th)) / (th2 * th)
    wx = [[0.0 * th, -1.0 * w[2], w[1]],
          [w[2], 0.0 * th, -1.0 * w[0]],
          [-1.0 * w[1], w[0], 0.0 * th]]
    wx2 = [[sum(wx[i][k] * wx[k][j] for k in range(3)) for j in range(3)]
           for i in range(3)]
    return [[(1.0 if i == j else 0.0) + b * wx[i][j] + c * wx2[i][j]
             for j in range(3)] for i in range(3)]


def _centers4_c(x):
    """Centers for 4-sphere state components (xi(4), xc(3), w(3))."""
    R = _rotation_c([x[7], x[8], x[9]])
    out = []
    for i in range(4):
        d = TETRA_DIRS[i]
        rd = [sum(R[r][c] * d[c] for c in range(3)) for r in range(3)]
        out.append([x[4 + r] + x[i] * rd[r] for r in range(3)])
    return out


def centers(state, a: float = 0.0) -> np.ndarray:
    """Sphere centers of either swimmer; validates arm lengths if a > 0."""
    if isinstance(state, State3):
        if a > 0 and (state.xi1 <= 2 * a or state.xi2 <= 2 * a):
            raise StateInvalid("arm length must exceed 2a")
        return np.array(_centers3_c(state.to_array()))
    if isinstance(state, State4):
        if a > 0 and min(state.xi) <= np.sqrt(1.5) * a:
            raise StateInvalid("arm length must exceed sqrt(3/2) a")
        return np.array(_centers4_c(state.to_array()))
    raise TypeError("state must be State3 or State4")


# ---------------------------------------------------------------------------
# propulsion matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KinematicMatrices:
    """S (force/torque rows), T (chart-rate map), U (arm-rate map), and the
    five-row reduction of S with the axis-torque row removed."""

    S: np.ndarray       # (6, 9): rows 1-3 force, rows 4-6 torque (canonical)
    Ttil: np.ndarray    # (9, 5): columns thetadot, phidot, xcdot
    U: np.ndarray       # (9, 2)
    Sred: np.ndarray    # (5, 9): force rows + torque rows projected on e2, e3


def _stu_reduced_c(x, table=None):
    """Reduced S (5x9), T (9x5), U (9x2) as nested lists of scalar-likes."""
    xi1, xi2 = x[0], x[1]
    e1, e2, e3 = _frame_c(x[2], x[3])
    st = sin_sc(x[2])
    zero = 0.0 * x[0]
    S = [[zero] * 9 for _ in range(5)]
    for r in range(3):
        for b in range(3):
            S[r][3 * b + r] = 1.0 + zero
    for c in range(3):
        S[3][c] = xi1 * e3[c]          # e2-torque row
        S[3][6 + c] = -1.0 * xi2 * e3[c]
        S[4][c] = -1.0 * xi1 * e2[c]   # e3-torque row
        S[4][6 + c] = xi2 * e2[c]
    T = [[zero] * 5 for _ in range(9)]
    for c in range(3):
        T[c][0] = -1.0 * xi1 * e2[c]
        T[c][1] = -1.0 * xi1 * st * e3[c]
        T[6 + c][0] = xi2 * e2[c]
        T[6 + c][1] = xi2 * st * e3[c]
    for b in range(3):
        for c in range(3):
            T[3 * b + c][2 + c] = 1.0 + zero
    U = [[zero] * 2 for _ in range(9)]
    for c in range(3):
        U[c][0] = -1.0 * e1[c]
        U[6 + c][1] = e1[c]
    return S, T, U


def matrices_STU(state: State3, a: float = 0.0) -> KinematicMatrices:
    """Assemble the propulsion matrices at a three-sphere state."""
    x = state.to_array()
    if a > 0 and (state.xi1 <= 2 * a or state.xi2 <= 2 * a):
        raise StateInvalid("arm length must exceed 2a")
    Sred, T, U = (np.array(m) for m in _stu_reduced_c(x))
    e1 = frame3(state.theta, state.phi)[0]
    cross = np.array([[0, -e1[2], e1[1]],
                      [e1[2], 0, -e1[0]],
                      [-e1[1], e1[0], 0]])
    S = np.zeros((6, 9))
    S[0:3, 0:3] = S[0:3, 3:6] = S[0:3, 6:9] = np.eye(3)
    S[3:6, 0:3] = -state.xi1 * cross
    S[3:6, 6:9] = state.xi2 * cross
    return KinematicMatrices(S=S, Ttil=T, U=U, Sred=Sred)


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def validate_state(state, a: float, profile: WallProfile = WallProfile.flat(),
                   delta: float = WALL_CLEARANCE_DEFAULT,
                   delta_angle: float = DELTA_ANGLE_DEFAULT) -> AdmissibilityReport:
    """Check arm lengths, wall clearance, angle condition, and overlaps."""
    bad = []
    if isinstance(state, State3):
        if state.xi1 <= 2 * a or state.xi2 <= 2 * a:
            bad.append("ArmTooShort")
        if abs(np.sin(state.theta)) < delta_angle:
            bad.append("AngleDegenerate")
        pts = centers(state)
    elif isinstance(state, State4):
        if min(state.xi) <= np.sqrt(1.5) * a:
            bad.append("ArmTooShort")
        if np.linalg.norm(state.rot) >= np.pi:
            bad.append("OrientationChartInvalid")
        pts = centers(state)
        for i in range(4):
            for j in range(i + 1, 4):
                if np.linalg.norm(pts[i] - pts[j]) <= 2 * a:
                    bad.append("SpheresOverlap")
    else:
        raise TypeError("state must be State3 or State4")
    wall_top = profile.epsilon * profile.sup_height()
    if np.min(pts[:, 2]) < a + delta * (1.0 + wall_top):
        bad.append("WallClearance")
    return AdmissibilityReport(not bad, tuple(dict.fromkeys(bad)))
