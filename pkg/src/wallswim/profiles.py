"""Parametric rough-wall height profiles.

A profile describes the wall surface z = epsilon * h(x, y) through a small
family of smooth, compactly supported bumps whose sup-norm is exactly 1 by
construction: each bump is a scaled mollifier m(rho) = exp(1 - 1/(1 - rho^2))
that attains its amplitude exactly at its center and vanishes identically
(with all derivatives) outside its support disc.  Bump supports are required
to be pairwise disjoint so that sup|h| = max|amplitude| holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import QuadratureNotConverged


@dataclass(frozen=True)
class Bump:
    center: tuple  # (x, y)
    width: float   # support radius
    amplitude: float

    def height(self, s1, s2):
        rho2 = ((np.asarray(s1) - self.center[0]) ** 2
                + (np.asarray(s2) - self.center[1]) ** 2) / self.width**2
        out = np.zeros(np.broadcast_shapes(np.shape(s1), np.shape(s2)))
        inside = rho2 < 1.0
        out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - rho2[inside]))
        return out


def _cosine_height(bump, s1, s2):
    rho2 = ((np.asarray(s1) - bump.center[0]) ** 2
            + (np.asarray(s2) - bump.center[1]) ** 2) / bump.width**2
    out = np.zeros(np.broadcast_shapes(np.shape(s1), np.shape(s2)))
    inside = rho2 < 1.0
    out[inside] = bump.amplitude * np.cos(np.pi * np.sqrt(rho2[inside]) / 2) ** 4
    return out


@dataclass(frozen=True)
class WallProfile:
    """Rough wall z = epsilon * h with sup|h| = 1 and compact support."""

    kind: str                  # GaussianBump | TwoBump | CosineBump | PointPair
    bumps: tuple
    epsilon: float

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.bumps:
            amps = [abs(b.amplitude) for b in self.bumps]
            if abs(max(amps) - 1.0) > 1e-12:
                raise ValueError("largest bump amplitude must be 1 (sup-norm)")
            for i, a in enumerate(self.bumps):
                for b in self.bumps[i + 1:]:
                    gap = np.hypot(a.center[0] - b.center[0],
                                   a.center[1] - b.center[1])
                    if gap < a.width + b.width:
                        raise ValueError("bump supports must be disjoint")

    # -- factories -----------------------------------------------------

    @staticmethod
    def flat() -> "WallProfile":
        return WallProfile("Flat", (), 0.0)

    @staticmethod
    def gaussian_bump(center=(0.0, 0.0), width=1.0, epsilon=0.0) -> "WallProfile":
        return WallProfile("GaussianBump", (Bump(tuple(center), width, 1.0),),
                           epsilon)

    @staticmethod
    def two_bump(centers=((1.2, 2.3), (0.4, 1.1)), widths=(1.0, 0.8),
                 amplitudes=(1.0, -0.8), epsilon=0.0) -> "WallProfile":
        bumps = tuple(Bump(tuple(c), w, a)
                      for c, w, a in zip(centers, widths, amplitudes))
        return WallProfile("TwoBump", bumps, epsilon)

    @staticmethod
    def cosine_bump(center=(0.0, 0.0), width=1.0, epsilon=0.0) -> "WallProfile":
        return WallProfile("CosineBump", (Bump(tuple(center), width, 1.0),),
                           epsilon)

    @staticmethod
    def point_pair(points=((1.0, 0.0), (0.0, 0.0)), width=0.05,
                   amplitudes=(1.0, -1.0), epsilon=0.0) -> "WallProfile":
        bumps = tuple(Bump(tuple(p), width, a)
                      for p, a in zip(points, amplitudes))
        return WallProfile("PointPair", bumps, epsilon)

    # -- evaluation ------------------------------------------------------

    def height(self, s1, s2):
        """h(s1, s2); identically zero outside the bump supports."""
        out = np.zeros(np.broadcast_shapes(np.shape(s1), np.shape(s2)))
        for b in self.bumps:
            if self.kind == "CosineBump":
                out = out + _cosine_height(b, s1, s2)
            else:
                out = out + b.height(s1, s2)
        return out

    @property
    def support_radius(self) -> float:
        """Radius of a disc around the origin covering all bump supports."""
        if not self.bumps:
            return 0.0
        return max(np.hypot(*b.center) + b.width for b in self.bumps)

    def sup_height(self) -> float:
        return 1.0 if self.bumps else 0.0

    # -- quadrature -------------------------------------------------------

    def quad_nodes(self, order: int):
        """Tensor Gauss-Legendre nodes over each bump's support square.

        Returns (nodes (Q, 2), w (Q,)) where w already includes h(node), so
        integrals of h * f reduce to sum(w * f(nodes)).  Nodes with h = 0
        (square corners outside the support disc) are dropped.
        """
        if not self.bumps:
            return np.zeros((0, 2)), np.zeros(0)
        x, wx = leggauss(order)
        all_nodes, all_w = [], []
        for b in self.bumps:
            xs = b.center[0] + b.width * x
            ys = b.center[1] + b.width * x
            s1, s2 = np.meshgrid(xs, ys, indexing="ij")
            ww = np.outer(wx, wx) * b.width**2
            if self.kind == "CosineBump":
                h = _cosine_height(b, s1, s2)
            else:
                h = b.height(s1, s2)
            keep = h != 0.0
            all_nodes.append(np.column_stack([s1[keep], s2[keep]]))
            all_w.append((ww * h)[keep])
        return np.vstack(all_nodes), np.concatenate(all_w)


@dataclass(frozen=True)
class QuadSpec:
    """Controls the planar quadrature used for roughness integrals."""

    order: int = 24          # Gauss-Legendre points per axis per bump
    tol: float = 1e-8        # relative change target under order doubling
    max_order: int = 256

    def doubled(self) -> "QuadSpec":
        return QuadSpec(self.order * 2, self.tol, self.max_order)


def converge_quadrature(evaluate, spec: QuadSpec):
    """Run `evaluate(order)` with order doubling until relative convergence.

    Returns (value, order_used).  Raises QuadratureNotConverged at the cap.
    """
    order = spec.order
    prev = evaluate(order)
    while order * 2 <= spec.max_order:
        order *= 2
        cur = evaluate(order)
        scale = max(np.max(np.abs(cur)), 1e-300)
        if np.max(np.abs(cur - prev)) <= spec.tol * scale:
            return cur, order
        prev = cur
    raise QuadratureNotConverged(
        f"no convergence to {spec.tol} within {spec.max_order} points/axis")
