"""Translations, rotations and the shear map of the Nil model.

Points live in affine coordinates (x, y, z).  A translation carrying the
origin to (x, y, z) acts on a point (a, b, c) as

    (a, b, c) -> (a + x, b + y, c + b*x + z)

which is the row-by-matrix action of the Heisenberg group on itself.  The
z-axis direction is the fibre: translations (0, 0, z) are central.

Rotations about the z-axis are quadratic in model coordinates, but become
linear after conjugating by the volume-preserving shear

    M: (x, y, z) -> (x, y, z - x*y/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

Point = tuple[float, float, float]

ORIGIN: Point = (0.0, 0.0, 0.0)
IDENTITY: Point = (0.0, 0.0, 0.0)


def translate(p: Point, t: Point) -> Point:
    """Apply the translation with parameters t to the point p."""
    a, b, c = p
    x, y, z = t
    return (a + x, b + y, c + b * x + z)


def compose(ta: Point, tb: Point) -> Point:
    """Translation doing ta first, then tb: translate(p, compose(ta, tb))
    == translate(translate(p, ta), tb)."""
    return (ta[0] + tb[0], ta[1] + tb[1], ta[2] + tb[2] + ta[1] * tb[0])


def inverse(t: Point) -> Point:
    x, y, z = t
    return (-x, -y, x * y - z)


def commutator(t1: Point, t2: Point) -> Point:
    """t2^-1 t1^-1 t2 t1, always a fibre translation (0, 0, *)."""
    return (0.0, 0.0, t1[0] * t2[1] - t2[0] * t1[1])


def power(t: Point, n: int) -> Point:
    """Integer power t^n in closed form."""
    x, y, z = t
    # the z drift accumulates a triangular-number shear term
    return (n * x, n * y, n * z + 0.5 * n * (n - 1) * x * y)


def rotate_z(p: Point, omega: float) -> Point:
    """Isometric rotation by omega about the z-axis through the origin.

    Quadratic in (x, y); equal to m_inverse . linear rotation . m_map.
    """
    x, y, z = p
    co, si = math.cos(omega), math.sin(omega)
    xr = x * co - y * si
    yr = x * si + y * co
    zr = z - 0.5 * x * y + 0.5 * xr * yr
    return (xr, yr, zr)


def m_map(p: Point) -> Point:
    """The shear (x, y, z) -> (x, y, z - xy/2); linearizes rotations."""
    x, y, z = p
    return (x, y, z - 0.5 * x * y)


def m_inverse(p: Point) -> Point:
    x, y, z = p
    return (x, y, z + 0.5 * x * y)


def line_reflect_y(p: Point) -> Point:
    """Involutive isometry: half-turn about the y-axis, (x,y,z) -> (-x,y,-z)."""
    x, y, z = p
    return (-x, y, -z)


def conjugated_translation(t: Point):
    """The translation by t seen through the shear M, as an affine map.

    Returns a callable q -> m_map(translate(m_inverse(q), t)).  The result
    is affine in q; the closed form is used directly.
    """
    tx, ty, tz = t
    cz = tz - 0.5 * tx * ty

    def apply(q: Point) -> Point:
        x, y, z = q
        return (x + tx, y + ty, z - 0.5 * ty * x + 0.5 * tx * y + cz)

    return apply


@dataclass(frozen=True)
class Isometry:
    """An orientation-aware Nil isometry as an ordered word of primitives.

    Each step is ("translation", t), ("rotation", omega) or ("reflection",).
    Words are applied left to right and never normalized; composition just
    concatenates.
    """

    steps: tuple = field(default_factory=tuple)

    @staticmethod
    def translation(t: Point) -> "Isometry":
        return Isometry((("translation", tuple(float(v) for v in t)),))

    @staticmethod
    def rotation(omega: float) -> "Isometry":
        # normalize to (-pi, pi]
        w = math.remainder(float(omega), 2.0 * math.pi)
        if w <= -math.pi:
            w += 2.0 * math.pi
        return Isometry((("rotation", w),))

    @staticmethod
    def reflection() -> "Isometry":
        return Isometry((("reflection",),))

    def then(self, other: "Isometry") -> "Isometry":
        return Isometry(self.steps + other.steps)

    def apply(self, p: Point) -> Point:
        q = p
        for step in self.steps:
            if step[0] == "translation":
                q = translate(q, step[1])
            elif step[0] == "rotation":
                q = rotate_z(q, step[1])
            else:
                q = line_reflect_y(q)
        return q
