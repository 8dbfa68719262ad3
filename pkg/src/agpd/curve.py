"""Hermitian and norm-trace curves: affine rational points and line partitions.

The norm-trace curve over F_{q^s} is Tr(y) = N(x) with trace and norm taken
to F_q; s = 2 is the Hermitian curve y^q + y = x^{q+1}.  Only affine points
are listed: the point at infinity never indexes a code coordinate.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .field import Field, field_for_tower

Point = tuple[int, int]


class Ordering(str, Enum):
    LEX = "lex"
    ORBIT = "orbit"


class Axis(str, Enum):
    X_LINE = "x"
    Y_LINE = "y"


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    q: int
    s: int
    field: Field = field(repr=False, compare=False)

    @property
    def kind(self) -> str:
        return "hermitian" if self.s == 2 else "normtrace"

    @property
    def name(self) -> str:
        return f"hermitian:{self.q}" if self.s == 2 else f"normtrace:{self.q}:{self.s}"

    @property
    def l1(self) -> int:
        """Pole order of x at infinity."""
        return self.q ** (self.s - 1)

    @property
    def l2(self) -> int:
        """Pole order of y at infinity."""
        return (self.q**self.s - 1) // (self.q - 1)

    @property
    def genus(self) -> int:
        return (self.l2 - 1) * (self.l1 - 1) // 2

    @property
    def n_affine(self) -> int:
        return self.q ** (2 * self.s - 1)

    def is_on_curve(self, pt: Point) -> bool:
        x, y = pt
        return self.field.trace(y) == self.field.norm(x)

    @cached_property
    def _fibres(self) -> dict[int, list[int]]:
        """trace value -> all y with that trace, canonical order."""
        F = self.field
        out: dict[int, list[int]] = {}
        for y in F.elements():
            out.setdefault(F.trace(y), []).append(y)
        return out

    @cached_property
    def _norm_fibres(self) -> dict[int, list[int]]:
        F = self.field
        out: dict[int, list[int]] = {}
        for x in F.elements():
            out.setdefault(F.norm(x), []).append(x)
        return out

    @cached_property
    def ker_tr(self) -> list[int]:
        return self.field.kernel_sets()[0]

    @cached_property
    def ker_n(self) -> list[int]:
        return self.field.kernel_sets()[1]

    def base_y(self, a: int) -> int:
        """Smallest (canonical order) y with (a, y) on the curve."""
        return self._fibres[self.field.norm(a)][0]

    def base_x(self, b: int) -> int:
        """Smallest (canonical order) x with (x, b) on the curve."""
        return self._norm_fibres[self.field.trace(b)][0]

    def line_points(self, axis: Axis | str, value: int) -> list[Point]:
        """P_a (axis X_LINE, x = a) or Q_b (axis Y_LINE, y = b)."""
        F = self.field
        if Axis(axis) is Axis.X_LINE:
            b = self.base_y(value)
            return [(value, F.add(b, beta)) for beta in self.ker_tr]
        if F.trace(value) == 0:
            return [(0, value)]
        a = self.base_x(value)
        return [(F.mul(alpha, a), value) for alpha in self.ker_n]

    def fmt_point(self, pt: Point) -> str:
        return f"({self.field.fmt(pt[0])}, {self.field.fmt(pt[1])})"

    def parse_point(self, text: str) -> Point:
        m = re.fullmatch(r"\s*\(?\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)?\s*", text)
        if not m:
            raise CurveError(f"cannot parse point {text!r}")
        return self.field.parse(m.group(1)), self.field.parse(m.group(2))

    def to_json(self) -> dict:
        return {"kind": self.kind, "q": self.q, "s": self.s, "field": self.field.to_json()}


def hermitian(q: int) -> CurveSpec:
    return CurveSpec(q, 2, field_for_tower(q, 2))


def normtrace(q: int, s: int) -> CurveSpec:
    if s < 2:
        raise CurveError("norm-trace curves need s >= 2")
    return CurveSpec(q, s, field_for_tower(q, s))


def parse_curve(text: str) -> CurveSpec:
    """``hermitian:q`` or ``normtrace:q:s``."""
    parts = text.strip().lower().split(":")
    try:
        if parts[0] in ("hermitian", "herm", "h") and len(parts) == 2:
            return hermitian(int(parts[1]))
        if parts[0] in ("normtrace", "nt") and len(parts) == 3:
            return normtrace(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise CurveError(str(exc)) from exc
    raise CurveError(f"bad curve descriptor {text!r}")


# -- ordering of kernels and sigma orbits ---------------------------------------


def cyclic_key(F: Field, x: int) -> int:
    """0 first, then zeta^1, ..., zeta^{Q-2}, and 1 written as zeta^{Q-1} last."""
    if x == 0:
        return 0
    e = int(F.log[x])
    return e if e > 0 else F.order - 1


def default_beta_order(curve: CurveSpec) -> list[int]:
    """Enumeration beta_1 = 0, beta_2, ... of ker Tr used to label sigma orbits."""
    return sorted(curve.ker_tr, key=lambda b: cyclic_key(curve.field, b))


def rotate(curve: CurveSpec, pt: Point, eps: int) -> Point:
    """(x, y) -> (eps x, eps^{l2} y), i.e. phi_{0,0,eps} / psi_{0,eps}."""
    F = curve.field
    return F.mul(eps, pt[0]), F.mul(F.pow(eps, curve.l2), pt[1])


def orbit_from(curve: CurveSpec, start: Point) -> list[Point]:
    """Orbit of x -> zeta x, listed from ``start`` onwards."""
    z = curve.field.zeta
    out = [start]
    pt = rotate(curve, start, z)
    while pt != start:
        out.append(pt)
        pt = rotate(curve, pt, z)
    return out


def sigma_orbit_points(curve: CurveSpec, beta_order: list[int] | None = None) -> list[list[Point]]:
    """Hermitian orbits O_1..O_{q+2} of sigma = phi_{0,0,zeta} as point lists.

    O_i is the orbit through (1, b + beta_i), b the smallest y with (1, b) on
    the curve; it is listed from t = 1, i.e. (zeta, zeta^{q+1}(b + beta_i)), to
    t = q^2 - 1, which is the point on x = 1.  O_{q+1} holds (0, beta) for
    beta != 0 in ``beta_order``; O_{q+2} = {(0, 0)}.
    """
    if curve.s != 2:
        raise CurveError("sigma orbits are defined for Hermitian curves")
    F = curve.field
    betas = default_beta_order(curve) if beta_order is None else list(beta_order)
    if sorted(betas) != sorted(curve.ker_tr) or betas[0] != 0:
        raise CurveError("beta_order must enumerate ker(Tr) starting with 0")
    b = curve.base_y(1)
    orbits = []
    for beta in betas:
        start = rotate(curve, (1, F.add(b, beta)), F.zeta)
        orbits.append(orbit_from(curve, start))
    orbits.append([(0, beta) for beta in betas if beta != 0])
    orbits.append([(0, 0)])
    return orbits


# -- point tables --------------------------------------------------------------


@dataclass(frozen=True)
class PointTable:
    curve: CurveSpec
    ordering: Ordering
    points: tuple[Point, ...]
    index_of: dict[Point, int] = field(repr=False, compare=False)
    beta_order: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.points)

    def indices(self, pts) -> list[int]:
        return [self.index_of[p] for p in pts]

    def to_json(self) -> dict:
        return {
            "curve": self.curve.name,
            "ordering": self.ordering.value,
            "points": [self.curve.fmt_point(p) for p in self.points],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def enumerate_points(curve: CurveSpec, ordering: Ordering | str = Ordering.LEX,
                     beta_order: list[int] | None = None) -> PointTable:
    """All q^{2s-1} affine points, built line by line from the P_a partition."""
    ordering = Ordering(ordering)
    F = curve.field
    if ordering is Ordering.LEX:
        pts = [p for a in F.elements() for p in curve.line_points(Axis.X_LINE, a)]
        pts.sort(key=lambda p: (F.order_key(p[0]), F.order_key(p[1])))
    else:
        if curve.s != 2:
            raise CurveError("ORBIT ordering is only defined for Hermitian curves")
        pts = [p for orb in sigma_orbit_points(curve, beta_order) for p in orb]
    if len(pts) != curve.n_affine or len(set(pts)) != len(pts):
        raise CurveError("point enumeration is inconsistent with the curve")
    betas = None if beta_order is None else tuple(beta_order)
    return PointTable(curve, ordering, tuple(pts), {p: i for i, p in enumerate(pts)}, betas)
