"""Curve automorphisms, the coordinate permutations they induce, and orbits.

Two shapes of automorphism are used:

* ``ProjectiveAut`` -- a 3x3 matrix acting on (x:y:z), the general Hermitian
  automorphism through the two points it sends P_00 and P_inf to.
* ``AffineAut`` -- x -> eps x + a, y -> c x + eps^{l2} y + b.  Every map that
  fixes P_inf has this shape: phi_{a,b,eps} on Hermitian curves
  (c = eps a^q) and psi_{beta,eps} on norm-trace curves (a = c = 0).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .curve import (CurveSpec, Point, PointTable, cyclic_key, enumerate_points,
                    orbit_from, sigma_orbit_points)
from .field import Field
from .linalg import same_row_space

INF = None  # the point at infinity in affine-or-infinity results


class AutError(ValueError):
    pass


# -- automorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class AffineAut:
    curve: CurveSpec
    eps: int
    a: int
    c: int
    b: int
    label: str = ""

    def __call__(self, pt: Point) -> Point:
        F = self.curve.field
        x, y = pt
        nx = F.add(F.mul(self.eps, x), self.a)
        ny = F.add(F.add(F.mul(self.c, x), F.mul(F.pow(self.eps, self.curve.l2), y)), self.b)
        return nx, ny

    def then(self, other: "AffineAut") -> "AffineAut":
        """other o self (apply self first)."""
        F = self.curve.field
        e2 = F.pow(other.eps, self.curve.l2)
        eps = F.mul(other.eps, self.eps)
        a = F.add(F.mul(other.eps, self.a), other.a)
        c = F.add(F.mul(other.c, self.eps), F.mul(e2, self.c))
        b = F.add(F.add(F.mul(other.c, self.a), F.mul(e2, self.b)), other.b)
        return AffineAut(self.curve, eps, a, c, b, f"{other.label}*{self.label}")

    def inverse(self) -> "AffineAut":
        F = self.curve.field
        ie = F.inv(self.eps)
        ie2 = F.pow(ie, self.curve.l2)
        a = F.neg(F.mul(ie, self.a))
        c = F.neg(F.mul(F.mul(ie2, self.c), ie))
        # y = ie2 (y' - c x - b), x = ie (x' - a)
        b = F.neg(F.mul(ie2, F.sub(self.b, F.mul(F.mul(self.c, ie), self.a))))
        return AffineAut(self.curve, ie, a, c, b, f"({self.label})^-1")


@dataclass(frozen=True)
class ProjectiveAut:
    curve: CurveSpec
    M: tuple[tuple[int, int, int], ...]
    label: str = ""

    def apply_projective(self, P: Sequence[int]) -> tuple[int, int, int]:
        F = self.curve.field
        out = []
        for row in self.M:
            acc = 0
            for m, v in zip(row, P):
                acc = F.add(acc, F.mul(m, v))
            out.append(acc)
        return normalize(F, out)

    def __call__(self, pt: Point | None) -> Point | None:
        P = (0, 1, 0) if pt is None else (pt[0], pt[1], 1)
        X, Y, Z = self.apply_projective(P)
        return None if Z == 0 else (X, Y)


CurveAut = AffineAut | ProjectiveAut


def normalize(F: Field, P: Sequence[int]) -> tuple[int, int, int]:
    """Scale a projective triple so its last nonzero coordinate is 1."""
    for v in reversed(P):
        if v:
            iv = F.inv(v)
            return tuple(F.mul(iv, c) for c in P)
    raise AutError("zero vector is not a projective point")


def projective_points(curve: CurveSpec) -> list[tuple[int, int, int]]:
    pts = [(x, y, 1) for x, y in enumerate_points(curve).points]
    return pts + [(0, 1, 0)]


def on_curve_projective(curve: CurveSpec, P: Sequence[int]) -> bool:
    """y^q z + y z^q = x^{q+1} (Hermitian curves)."""
    F, q = curve.field, curve.q
    x, y, z = P
    lhs = F.add(F.mul(F.pow(y, q), z), F.mul(y, F.pow(z, q)))
    return lhs == F.pow(x, q + 1)


def hermitian_general_aut(curve: CurveSpec, p1: Sequence[int], p2: Sequence[int], eps: int,
                          check: bool = True) -> ProjectiveAut:
    """Automorphism sending P_00 to p1 = (a:b:e) and P_inf to p2 = (c:d:f)."""
    if curve.s != 2:
        raise AutError("general automorphisms are built for Hermitian curves only")
    F, q = curve.field, curve.q
    if eps == 0:
        raise AutError("eps must be nonzero")
    p1, p2 = normalize(F, p1), normalize(F, p2)
    if p1 == p2:
        raise AutError("the two points must be distinct")
    for P in (p1, p2):
        if not on_curve_projective(curve, P):
            raise AutError(f"{P} is not on the curve")
    a, b, e = p1
    c, d, f = p2
    fr, mul, sub, add = F.frob, F.mul, F.sub, F.add
    xi = add(add(F.neg(mul(fr(c), a)), mul(fr(d), e)), mul(fr(f), b))
    e1 = F.pow(eps, q + 1)
    M = (
        (mul(eps, fr(sub(mul(e, d), mul(b, f)))), mul(mul(e1, xi), c), a),
        (mul(eps, fr(sub(mul(a, d), mul(b, c)))), mul(mul(e1, xi), d), b),
        (mul(eps, fr(sub(mul(e, c), mul(a, f)))), mul(mul(e1, xi), f), e),
    )
    aut = ProjectiveAut(curve, M, f"phi({p1},{p2},{F.fmt(eps)})")
    if check:
        imgs = [aut.apply_projective(P) for P in projective_points(curve)]
        if len(set(imgs)) != len(imgs) or not all(on_curve_projective(curve, P) for P in imgs):
            raise AutError("matrix does not permute the curve's rational points")
    return aut


def hermitian_fix_inf_aut(curve: CurveSpec, a: int, b: int, eps: int = 1) -> AffineAut:
    """phi_{a,b,eps}: x -> eps x + a, y -> eps a^q x + eps^{q+1} y + b."""
    if curve.s != 2:
        raise AutError("phi maps are defined on Hermitian curves")
    F = curve.field
    if eps == 0:
        raise AutError("eps must be nonzero")
    if not curve.is_on_curve((a, b)):
        raise AutError(f"{curve.fmt_point((a, b))} is not on the curve")
    c = F.mul(eps, F.frob(a))
    return AffineAut(curve, eps, a, c, b, f"phi({F.fmt(a)},{F.fmt(b)},{F.fmt(eps)})")


def normtrace_aut(curve: CurveSpec, beta: int, eps: int = 1) -> AffineAut:
    """psi_{beta,eps}: x -> eps x, y -> eps^{(q^s-1)/(q-1)} y + beta."""
    F = curve.field
    if eps == 0:
        raise AutError("eps must be nonzero")
    if F.trace(beta) != 0:
        raise AutError(f"beta={F.fmt(beta)} is not in ker(Tr)")
    return AffineAut(curve, eps, 0, 0, beta, f"psi({F.fmt(beta)},{F.fmt(eps)})")


def all_fix_inf_auts(curve: CurveSpec) -> list[AffineAut]:
    """Gamma: every phi_{a,b,eps}, ordered by (a, b, eps) canonically."""
    F = curve.field
    pts = enumerate_points(curve).points
    return [hermitian_fix_inf_aut(curve, a, b, e) for (a, b) in pts for e in F.elements()[1:]]


def all_normtrace_auts(curve: CurveSpec) -> list[AffineAut]:
    F = curve.field
    return [normtrace_aut(curve, beta, e) for beta in curve.ker_tr for e in F.elements()[1:]]


def additive_order(F: Field, x: int) -> int:
    return 1 if x == 0 else F.p


def multiplicative_order(F: Field, x: int) -> int:
    N = F.order - 1
    e = int(F.log[x])
    return N // np.gcd(N, e)


# -- permutations --------------------------------------------------------------


@dataclass(frozen=True)
class CoordPerm:
    """pi with pi[i] = j meaning P_i is sent to P_j."""

    image: tuple[int, ...]
    ordering: str = ""

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "CoordPerm":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return CoordPerm(tuple(inv), self.ordering)

    def compose(self, other: "CoordPerm") -> "CoordPerm":
        """self o other: apply other first."""
        return CoordPerm(tuple(self.image[j] for j in other.image), self.ordering)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def map_set(self, S) -> set[int]:
        return {self.image[i] for i in S}

    def to_json(self) -> list[int]:
        return list(self.image)


def identity_perm(n: int, ordering: str = "") -> CoordPerm:
    return CoordPerm(tuple(range(n)), ordering)


def induced_permutation(aut: CurveAut, table: PointTable) -> CoordPerm:
    img = []
    for pt in table.points:
        q = aut(pt)
        if q is None:
            raise AutError(f"{aut.label} sends {table.curve.fmt_point(pt)} to infinity")
        try:
            img.append(table.index_of[q])
        except KeyError:
            raise AutError(f"{aut.label} leaves the curve at {table.curve.fmt_point(pt)}") from None
    if len(set(img)) != len(img):
        raise AutError(f"{aut.label} is not injective on the point table")
    return CoordPerm(tuple(img), table.ordering.value)


def projective_permutation(aut: ProjectiveAut, table: PointTable) -> tuple[int, ...]:
    """Permutation of the n affine points plus infinity (index n)."""
    n = len(table)
    out = []
    for pt in list(table.points) + [None]:
        img = aut(pt)
        out.append(n if img is None else table.index_of[img])
    return tuple(out)


def apply_perm(pi: CoordPerm, v) -> np.ndarray:
    """result[pi(i)] = v[i], i.e. result[j] = v[pi^-1(j)]; works on (..., n) arrays."""
    v = np.asarray(v)
    if v.shape[-1] != pi.n:
        raise ValueError(f"vector length {v.shape[-1]} != permutation size {pi.n}")
    out = np.empty_like(v)
    out[..., list(pi.image)] = v
    return out


def is_code_automorphism(pi: CoordPerm, code) -> bool:
    """Row space of G equals row space of G with columns permuted by pi."""
    G = code.G
    return same_row_space(code.field, G, apply_perm(pi, G))


# -- orbits --------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        flat = [i for o in self.orbits for i in o]
        if len(flat) != len(set(flat)):
            raise AutError("orbits overlap")

    def __len__(self):
        return len(self.orbits)

    def orbit_of(self, i: int) -> int:
        for k, o in enumerate(self.orbits):
            if i in o:
                return k
        raise KeyError(i)

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def to_json(self, table: PointTable | None = None) -> dict:
        orbs = [list(o) for o in self.orbits]
        d: dict = {"labels": list(self.labels), "orbits": orbs}
        if table is not None:
            d["points"] = [[table.curve.fmt_point(table.points[i]) for i in o] for o in orbs]
        return d


def cycles(pi: CoordPerm) -> list[list[int]]:
    seen = [False] * pi.n
    out = []
    for i in range(pi.n):
        if seen[i]:
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = pi(j)
        out.append(cyc)
    return out


def sigma_orbits(curve: CurveSpec, table: PointTable, beta_order=None) -> OrbitPartition:
    """Orbits of x -> zeta x: O_1..O_{q+2} on Hermitian curves, psi-orbits otherwise."""
    if curve.s != 2:
        return psi_orbits(curve, table)
    orbs = sigma_orbit_points(curve, beta_order or table.beta_order)
    labels = tuple(f"O_{i + 1}" for i in range(len(orbs)))
    return OrbitPartition(tuple(tuple(table.indices(o)) for o in orbs), labels)


def psi_orbits(curve: CurveSpec, table: PointTable) -> OrbitPartition:
    """Orbits of psi_{0,zeta} on a norm-trace curve, with structural labels.

    Long orbits (q^s - 1 points) start at (zeta, zeta^l) and are labelled by l;
    short orbits {(0, beta zeta^{j l2})} by the smallest exponent they hold;
    then {(0, 0)}.
    """
    F = curve.field
    z = F.zeta
    orbs: list[list[Point]] = []
    labels: list[str] = []
    for y in sorted(curve.line_points("x", z), key=lambda p: cyclic_key(F, p[1])):
        orbs.append(orbit_from(curve, y))
        labels.append(f"long:l={cyclic_key(F, y[1])}")
    seen: set[int] = set()
    for beta in sorted(curve.ker_tr, key=lambda b: cyclic_key(F, b)):
        if beta == 0 or beta in seen:
            continue
        orb = orbit_from(curve, (0, beta))
        seen.update(p[1] for p in orb)
        orbs.append(orb)
        labels.append(f"short:j={min(cyclic_key(F, p[1]) for p in orb)}")
    orbs.append([(0, 0)])
    labels.append("zero")
    return OrbitPartition(tuple(tuple(table.indices(o)) for o in orbs), tuple(labels))


def linear_aut_permutation_count(curve: CurveSpec) -> int:
    """Distinct permutations of all rational points from every (p1, p2, eps)."""
    F = curve.field
    pts = projective_points(curve)
    table = enumerate_points(curve)
    perms = set()
    for p1, p2 in itertools.permutations(pts, 2):
        for eps in F.elements()[1:]:
            aut = hermitian_general_aut(curve, p1, p2, eps, check=False)
            perms.add(projective_permutation(aut, table))
    return len(perms)


def fmt_aut(aut: CurveAut) -> str:
    return aut.label


def perm_dumps(pi: CoordPerm) -> str:
    return json.dumps(pi.to_json())
