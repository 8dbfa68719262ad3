"""Reference comparisons behind ``agpd verify``.

Each check returns a :class:`Check`; suites are lists of checks.  Expected
values are written as zeta exponents (None stands for 0).
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .autgroup import (all_fix_inf_auts, all_normtrace_auts, induced_permutation,
                       is_code_automorphism, linear_aut_permutation_count, normtrace_aut, psi_orbits)
from .code import build_code
from .curve import enumerate_points, hermitian, normtrace, sigma_orbit_points
from .decoder import decode_batch, oracle_min_distance, oracle_nearest_codeword, random_codewords, random_errors
from .field import field_for_tower
from .pdset import gamma_candidates, pd_set_two_errors, prepare_hermitian

KERNELS = {
    (4, 2): ({None, 5, 10, 0}, {0, 3, 6, 9, 12}),
    (5, 2): ({None, 3, 9, 15, 21}, {0, 4, 8, 12, 16, 20}),
    (3, 3): ({None, 1, 3, 9, 13, 14, 16, 22, 26}, set(range(0, 26, 2))),
}

# O_i -> (offset c in (z^t, z^{(q+1)t + c}), exponents b of the Q_b it covers)
HERMITIAN_ORBITS = {
    4: [(1, {1, 6, 11}), (2, {2, 7, 12}), (8, {3, 8, 13}), (4, {4, 9, 14})],
    5: [(1, {1, 7, 13, 19}), (18, {6, 12, 18, 24}), (4, {4, 10, 16, 22}),
        (5, {5, 11, 17, 23}), (20, {2, 8, 14, 20})],
}
Q5_BETA_ORDER = (None, 3, 15, 9, 21)

TABLE1 = {
    3: {2, 3, 5, 6, 8, 9, 13, 14},
    4: (set(range(3, 33)) - {6, 10, 14, 21, 25, 29}) | {41, 42, 43},
    5: (set(range(4, 76)) - {8, 13, 18, 23, 32, 37, 42, 47, 56, 61, 66, 71}) | set(range(91, 95)),
}

# beta exponent -> exponents of the two lines psi_{beta,1}^{-1}(Q_{z^2} u Q_{z^15})
NT33_PREIMAGES = {
    None: {2, 15}, 1: {4, 23}, 3: {18, 24}, 9: {7, 19}, 13: {21, 25},
    14: {10, 17}, 16: {11, 5}, 22: {6, 20}, 26: {12, 8},
}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(name, fn) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


def _exps(F, xs) -> set:
    return {None if x == 0 else int(F.log[x]) for x in xs}


def _elem(F, e):
    return 0 if e is None else F.z(e)


def check_kernels() -> list[Check]:
    out = []
    for (q, s), (tr, nm) in KERNELS.items():
        def run(q=q, s=s, tr=tr, nm=nm):
            F = field_for_tower(q, s)
            ktr, kn = F.kernel_sets()
            got = (_exps(F, ktr), _exps(F, kn))
            want = tuple({None if e is None else e % (F.order - 1) for e in w} for w in (tr, nm))
            return got == want, f"ker Tr={sorted(got[0], key=str)} ker N={sorted(got[1])}"
        out.append(_timed(f"kernels F_{q**s}/F_{q}", run))
    return out


def _orbit_lines(C, orbit) -> set[int]:
    return {int(C.field.log[p[1]]) for p in orbit}


def check_hermitian_orbits(q: int) -> Check:
    def run():
        C = hermitian(q)
        F = C.field
        betas = [_elem(F, e) for e in Q5_BETA_ORDER] if q == 5 else None
        orbs = sigma_orbit_points(C, betas)
        bad = []
        for i, (c, lines) in enumerate(HERMITIAN_ORBITS[q]):
            want = [(F.z(t), F.z((q + 1) * t + c)) for t in range(1, q * q)]
            if orbs[i] != want or _orbit_lines(C, orbs[i]) != {x % (q * q - 1) for x in lines}:
                bad.append(f"O_{i + 1}")
        if {p for p in orbs[q]} != {(0, b) for b in C.ker_tr if b} or orbs[q + 1] != [(0, 0)]:
            bad.append("x=0 orbits")
        return not bad, "mismatch: " + ", ".join(bad) if bad else f"{len(orbs)} orbits"
    return _timed(f"sigma orbits q={q}", run)


def check_psi_orbits() -> list[Check]:
    C = normtrace(3, 3)
    F = C.field

    def counts():
        part = psi_orbits(C, enumerate_points(C))
        sizes = sorted(part.sizes())
        longs = sorted(int(lbl.split("=")[1]) for lbl in part.labels if lbl.startswith("long"))
        shorts = sorted(int(lbl.split("=")[1]) for lbl in part.labels if lbl.startswith("short"))
        ok = (sizes == [1] + [2] * 4 + [26] * 9 and longs == [2, 4, 6, 7, 10, 11, 12, 18, 21]
              and shorts == [1, 3, 9, 13])
        return ok, f"sizes={sizes}"

    def preimages():
        bad = []
        target = [(x, F.z(e)) for e in (2, 15) for x in F.elements() if C.is_on_curve((x, F.z(e)))]
        for be, want in NT33_PREIMAGES.items():
            inv = normtrace_aut(C, _elem(F, be)).inverse()
            got = {int(F.log[inv(p)[1]]) for p in target}
            if got != want:
                bad.append(f"beta={be}: {sorted(got)}")
        return not bad, "; ".join(bad) or "9 identities"

    return [_timed("psi orbit counts on X_{3,3}", counts), _timed("psi preimages on X_{3,3}", preimages)]


def check_table1(qs=(3, 4, 5)) -> list[Check]:
    out = []
    for q in qs:
        def run(q=q):
            got = {c.gamma for c in gamma_candidates(q)}
            return got == TABLE1[q], f"diff={sorted(got ^ TABLE1[q])}"
        out.append(_timed(f"table of gamma q={q}", run))
    return out


def check_dimensions(qs=(3, 4)) -> list[Check]:
    out = []
    for q in qs:
        def run(q=q):
            C = hermitian(q)
            g, n = C.genus, C.n_affine
            bad = [c.gamma for c in gamma_candidates(q)
                   if 2 * g - 2 < c.gamma < n and build_code(C, c.gamma).k != c.gamma + 1 - g]
            return not bad, f"bad gamma={bad}"
        out.append(_timed(f"dimension law q={q}", run))
    return out


def check_automorphisms() -> list[Check]:
    def count():
        n = linear_aut_permutation_count(hermitian(2))
        return n == 216, f"{n} permutations"

    def gamma_group():
        C = hermitian(3)
        auts = all_fix_inf_auts(C)
        bad = []
        for gamma in (5, 13):
            code = build_code(C, gamma)
            bad += [(gamma, a.label) for a in auts
                    if not is_code_automorphism(induced_permutation(a, code.table), code)]
        return len(auts) == 216 and not bad, f"|Gamma|={len(auts)} failures={bad[:3]}"

    def psi_group():
        C = normtrace(2, 3)
        code = build_code(C, 17)
        auts = all_normtrace_auts(C)
        perms = {induced_permutation(a, code.table).image for a in auts}
        bad = [a.label for a in auts if not is_code_automorphism(induced_permutation(a, code.table), code)]
        return len(perms) == 28 and not bad, f"{len(perms)} distinct maps, failures={bad[:3]}"

    return [_timed("general automorphisms q=2", count), _timed("phi maps q=3", gamma_group),
            _timed("psi maps X_{2,3}", psi_group)]


def check_oracles(seed: int = 0, trials: int = 1000) -> list[Check]:
    code = prepare_hermitian(2, 3)
    F = code.field

    def distance():
        d = oracle_min_distance(code)
        return d >= code.n - code.gamma, f"d={d}"

    def agreement():
        S = pd_set_two_errors(code)
        rng = np.random.default_rng(seed)
        C = random_codewords(code, rng, trials)
        E = np.zeros_like(C)
        for row in range(trials):
            w = rng.integers(1, code.t + 1)
            sup = rng.choice(code.n, size=w, replace=False)
            E[row] = random_errors(code, rng, sup, 1)[0]
        Y = F.add(C, E)
        dec, used, _ = decode_batch(code, S, Y)
        bad = sum(1 for r in range(trials)
                  if used[r] < 0 or not np.array_equal(dec[r], oracle_nearest_codeword(code, Y[r])))
        return bad == 0, f"{bad} disagreements in {trials}"

    return [_timed("oracle distance q=2 gamma=3", distance), _timed("oracle agreement q=2 gamma=3", agreement)]


SUITES = {
    "fields": lambda q: check_kernels(),
    "orbits": lambda q: [check_hermitian_orbits(4), check_hermitian_orbits(5)] + check_psi_orbits(),
    "table1": lambda q: check_table1((q,) if q else (3, 4, 5)),
    "dimension": lambda q: check_dimensions((q,) if q else (3, 4)),
    "automorphisms": lambda q: check_automorphisms(),
    "oracles": lambda q: check_oracles(),
}


def run_suite(name: str, q: int | None = None) -> list[Check]:
    if name == "all":
        return [c for s in SUITES.values() for c in s(q)]
    return SUITES[name](q)
