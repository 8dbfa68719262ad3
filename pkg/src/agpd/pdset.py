"""PD sets for line bursts and error pairs, Table-1 gamma values, Gordon's bound.

A PD set here is an ordered list of coordinate permutations coming from curve
automorphisms.  Construction always certifies the cover exhaustively: every
support of the declared family must be sent off the information set by some
member, otherwise :class:`PDError` is raised.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .autgroup import (AffineAut, CoordPerm, CurveAut, all_fix_inf_auts, hermitian_fix_inf_aut,
                       induced_permutation, is_code_automorphism, normtrace_aut, sigma_orbits)
from .code import CodeError, CodeSpec, build_code, greedy_information_set, hermitian_info_positions, systematic_form
from .curve import Axis, CurveSpec, Ordering, hermitian

X_BURST = "x-burst"
Y_BURST = "y-burst"
PAIRS = "pairs"
NT_BURST = "nt-burst"


class PDError(ValueError):
    pass


@dataclass(frozen=True)
class Member:
    label: str
    aut: CurveAut | None
    perm: CoordPerm


@dataclass(frozen=True)
class PDSet:
    code: CodeSpec = field(repr=False)
    family: str
    r: int
    members: tuple[Member, ...]
    supports: tuple[tuple[int, ...], ...] = field(repr=False)
    pre_dedup: int = 0

    def __len__(self) -> int:
        return len(self.members)

    @property
    def perms(self) -> list[CoordPerm]:
        return [m.perm for m in self.members]

    def to_json(self) -> dict:
        return {
            "code_ref": {"curve": self.code.curve.name, "gamma": self.code.gamma,
                         "ordering": self.code.table.ordering.value},
            "family": self.family,
            "r": self.r,
            "pre_dedup": self.pre_dedup,
            "members": [{"label": m.label, "perm": m.perm.to_json()} for m in self.members],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def prepare_hermitian(q: int, gamma: int, beta_order=None) -> CodeSpec:
    """ORBIT-ordered Hermitian code in systematic form on its orbit-prefix positions."""
    code = build_code(hermitian(q), gamma, Ordering.ORBIT, beta_order=beta_order)
    return systematic_form(code, hermitian_info_positions(code).info)


def uncovered(code: CodeSpec, perms, supports) -> list[tuple[int, ...]]:
    """Supports that no permutation moves entirely into the check positions."""
    is_check = np.ones(code.n, dtype=bool)
    is_check[list(code.info_set)] = False
    ok = is_check[np.array([p.image for p in perms])]  # (members, n)
    bad = []
    for S in supports:
        if not ok[:, list(S)].all(axis=1).any():
            bad.append(tuple(S))
    return bad


def _pair_cover_failures(code: CodeSpec, perms) -> list[tuple[int, int]]:
    is_check = np.ones(code.n, dtype=bool)
    is_check[list(code.info_set)] = False
    ok = is_check[np.array([p.image for p in perms])].astype(np.int64)
    both = ok.T @ ok
    return [(i, j) for i, j in itertools.combinations(range(code.n), 2) if both[i, j] == 0]


def _assemble(code: CodeSpec, family: str, r: int, auts, supports,
              check_auts: bool = True) -> PDSet:
    if code.info_set is None:
        raise PDError("install an information set (systematic_form) first")
    raw = [Member(a.label, a, induced_permutation(a, code.table)) for a in auts]
    members: list[Member] = []
    seen = set()
    for m in sorted(raw, key=lambda m: not m.perm.is_identity()):
        if m.perm.image not in seen:
            seen.add(m.perm.image)
            members.append(m)
    if check_auts:
        for m in members:
            if not is_code_automorphism(m.perm, code):
                raise PDError(f"{m.label} is not an automorphism of the code")
    perms = [m.perm for m in members]
    if family == PAIRS:
        bad = _pair_cover_failures(code, perms)
    else:
        bad = uncovered(code, perms, supports)
    if bad:
        raise PDError(f"{family}: {len(bad)} supports not covered, e.g. {bad[:3]}")
    return PDSet(code, family, r, tuple(members), tuple(tuple(s) for s in supports), len(raw))


def _points_idx(code: CodeSpec, pts) -> tuple[int, ...]:
    return tuple(code.table.indices(pts))


def _require_hermitian(code: CodeSpec) -> CurveSpec:
    if code.curve.s != 2:
        raise PDError("needs a Hermitian code")
    return code.curve


def x_line_supports(code: CodeSpec) -> list[tuple[int, ...]]:
    F = code.field
    return [_points_idx(code, code.curve.line_points(Axis.X_LINE, a)) for a in F.elements()]


def y_line_supports(code: CodeSpec, nonzero_trace_only: bool = True) -> dict[int, tuple[int, ...]]:
    F, curve = code.field, code.curve
    out = {}
    for b in F.elements():
        if nonzero_trace_only and F.trace(b) == 0:
            continue
        out[b] = _points_idx(code, curve.line_points(Axis.Y_LINE, b))
    return out


def x_burst_auts(curve: CurveSpec) -> list[AffineAut]:
    """phi_{-a, (-a)^{q+1} - b_a}: sends (a, b_a) to (0, 0) and P_a onto x = 0."""
    F = curve.field
    out = []
    for a in F.elements():
        na = F.neg(a)
        b = F.sub(F.pow(na, curve.q + 1), curve.base_y(a))
        out.append(hermitian_fix_inf_aut(curve, na, b))
    return out


def pd_set_x_burst(code: CodeSpec) -> PDSet:
    curve = _require_hermitian(code)
    zero_line = set(_points_idx(code, curve.line_points(Axis.X_LINE, 0)))
    if zero_line & set(code.info_set or ()):
        raise PDError(f"gamma={code.gamma}: points with x = 0 are information positions")
    return _assemble(code, X_BURST, curve.q, x_burst_auts(curve), x_line_supports(code))


def y_burst_targets(code: CodeSpec) -> dict[int, tuple[int, ...]]:
    """beta -> positions of phi_{0,beta}^{-1}(O_q)."""
    curve = code.curve
    F = code.field
    O_q = set(sigma_orbits(curve, code.table).orbits[curve.q - 1])
    out = {}
    for beta in curve.ker_tr:
        inv = hermitian_fix_inf_aut(curve, 0, F.neg(beta))
        out[beta] = tuple(sorted(induced_permutation(inv, code.table).map_set(O_q)))
    return out


def pd_set_y_burst(code: CodeSpec) -> PDSet:
    curve = _require_hermitian(code)
    O_q = set(sigma_orbits(curve, code.table).orbits[curve.q - 1])
    if O_q & set(code.info_set or ()):
        raise PDError(f"gamma={code.gamma}: orbit O_q meets the information set")
    auts = [hermitian_fix_inf_aut(curve, 0, beta) for beta in curve.ker_tr]
    supports = list(y_line_supports(code, nonzero_trace_only=False).values())
    supports += list(y_burst_targets(code).values())
    return _assemble(code, Y_BURST, curve.q**2 - 1, auts, supports)


def two_error_auts(curve: CurveSpec) -> list[AffineAut]:
    F = curve.field
    out = []
    for a in F.elements()[1:]:
        na = F.neg(a)
        base = F.sub(F.pow(na, curve.q + 1), curve.base_y(a))
        out.extend(hermitian_fix_inf_aut(curve, na, F.add(base, beta)) for beta in curve.ker_tr)
    return out


def pd_set_two_errors(code: CodeSpec) -> PDSet:
    curve = _require_hermitian(code)
    return _assemble(code, PAIRS, 2, two_error_auts(curve), [])


def pd_set_full_group(code: CodeSpec, family: str = PAIRS, r: int = 2) -> PDSet:
    """Every phi_{a,b,eps}; a fallback when the smaller sets do not cover."""
    curve = _require_hermitian(code)
    supports = x_line_supports(code) if family == X_BURST else []
    return _assemble(code, family, r, all_fix_inf_auts(curve), supports)


# -- norm-trace ----------------------------------------------------------------


def valid_ells(curve: CurveSpec) -> list[int]:
    F = curve.field
    return [e for e in range(F.order - 1) if curve.is_on_curve((F.zeta, F.z(e)))]


def normtrace_check_lines(curve: CurveSpec, ell: int) -> list[int]:
    """y-values zeta^{ell + j l2}, j = 1..q-1, of the designated check orbit."""
    F = curve.field
    if not curve.is_on_curve((F.zeta, F.z(ell))):
        raise PDError(f"(z, z^{ell}) is not on the curve")
    return [F.z(ell + j * curve.l2) for j in range(1, curve.q)]


def normtrace_check_positions(code: CodeSpec, ell: int) -> tuple[int, ...]:
    curve = code.curve
    pos = []
    for b in normtrace_check_lines(curve, ell):
        pos.extend(_points_idx(code, curve.line_points(Axis.Y_LINE, b)))
    return tuple(sorted(pos))


def prepare_normtrace(curve: CurveSpec, gamma: int, ell: int | None = None) -> tuple[CodeSpec, int]:
    """Code in systematic form with an information set avoiding the check orbit."""
    code = build_code(curve, gamma, Ordering.LEX)
    ell = valid_ells(curve)[0] if ell is None else ell
    bound = curve.q ** (2 * curve.s - 1) - curve.q**curve.s + 1
    if code.k > bound:
        raise PDError(f"k={code.k} exceeds {bound}")
    avoid = set(normtrace_check_positions(code, ell))
    try:
        info = greedy_information_set(code, [i for i in range(code.n) if i not in avoid])
    except CodeError as exc:
        raise PDError(str(exc)) from exc
    return systematic_form(code, info), ell


def pd_set_normtrace(code: CodeSpec, ell: int) -> PDSet:
    curve = code.curve
    bound = curve.q ** (2 * curve.s - 1) - curve.q**curve.s + 1
    if code.k > bound:
        raise PDError(f"k={code.k} exceeds {bound}")
    target = set(normtrace_check_positions(code, ell))
    if target & set(code.info_set or ()):
        raise PDError("information set meets the designated check orbit")
    auts = [normtrace_aut(curve, beta) for beta in curve.ker_tr]
    supports = list(y_line_supports(code).values())
    return _assemble(code, NT_BURST, curve.l2, auts, supports)


# -- gamma admissibility and bounds ---------------------------------------------


@dataclass(frozen=True)
class GammaCandidate:
    gamma: int
    form: str
    params: dict


def gamma_candidates(q: int) -> list[GammaCandidate]:
    """The closed-form list of admissible gamma.

    Every listed gamma leaves O_q, O_{q+1}, O_{q+2} among the checks of the
    orbit-prefix positions; the converse fails (q=3, gamma=4 qualifies too).
    Form A: (i+1)(q^2-1) - q + j with j <= q-2.  Form B: i(q^2-1) + tq + r
    minus the combinations that collide with form A or spill into O_q.
    Both with 0 <= i <= q-2.
    """
    N = q * q - 1
    out: dict[int, GammaCandidate] = {}
    for i in range(q - 1):
        for j in range(q - 1):
            g = (i + 1) * N - q + j
            out.setdefault(g, GammaCandidate(g, "A", {"i": i, "j": j}))
        for t, r in itertools.product(range(q), repeat=2):
            if t * q + r > N - 1:
                continue
            if (i == 0 and t == 0 and r < q - 1) or (t >= 1 and r == q - 2):
                continue
            if i == q - 2 and (t >= 1 or r == q - 1):
                continue
            g = i * N + t * q + r
            out.setdefault(g, GammaCandidate(g, "B", {"i": i, "t": t, "r": r}))
    return [out[g] for g in sorted(out) if 0 < g < q**3]


def gordon_lower_bound(n: int, k: int, r: int) -> int:
    if r > n - k:
        raise ValueError(f"r={r} exceeds n-k={n - k}")
    v = 1
    for i in reversed(range(r)):
        v = -(-(n - i) * v // (n - k - i))
    return v
