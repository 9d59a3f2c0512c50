"""Shared fixtures and independent numeric oracles.

The oracles here deliberately avoid the library's evaluation paths: direct
Bernstein sums, three-point circle fits, monotone-chain hulls and central
finite differences, so tests compare two separate routes to each value.
"""

import math

import numpy as np
import pytest

from cagdkit import bezier_curve


def bernstein_point(points, weights, t):
    """Rational Bernstein-sum evaluation, the textbook formula."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == 2:
        pts = np.hstack([pts, np.zeros((len(pts), 1))])
    n = len(pts) - 1
    num = np.zeros(3)
    den = 0.0
    for i in range(n + 1):
        b = math.comb(n, i) * t**i * (1.0 - t) ** (n - i)
        num += weights[i] * b * pts[i]
        den += weights[i] * b
    return num / den


def circle_fit_kappa(p0, p1, p2):
    """Signed curvature of the circumcircle through three planar points."""
    a = np.linalg.norm(p1 - p0)
    b = np.linalg.norm(p2 - p1)
    c = np.linalg.norm(p2 - p0)
    cross = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0])
    return 2.0 * cross / (a * b * c)


def convex_hull_2d(points):
    """Monotone-chain hull; returns vertices in counterclockwise order."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def point_in_hull(p, hull, slack=1e-12):
    """Membership in a counterclockwise hull with absolute slack."""
    if len(hull) == 1:
        return abs(p[0] - hull[0][0]) <= slack and abs(p[1] - hull[0][1]) <= slack
    if len(hull) == 2:
        a, b = np.asarray(hull[0]), np.asarray(hull[1])
        ab = b - a
        t = np.dot(p[:2] - a, ab) / max(np.dot(ab, ab), 1e-300)
        t = min(1.0, max(0.0, t))
        return np.linalg.norm(p[:2] - (a + t * ab)) <= slack
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if cross < -slack * math.hypot(b[0] - a[0], b[1] - a[1]):
            return False
    return True


def central_difference(f, t, h=1e-5):
    return (f(t + h) - f(t - h)) / (2.0 * h)


def random_planar_cubic(rng, span=5.0):
    pts = rng.uniform(-span, span, size=(4, 2))
    return bezier_curve(pts)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
