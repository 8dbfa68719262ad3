import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from agpd.autgroup import (AutError, CoordPerm, OrbitPartition, all_fix_inf_auts, all_normtrace_auts,
                           apply_perm, cycles, hermitian_fix_inf_aut, hermitian_general_aut, identity_perm,
                           induced_permutation, is_code_automorphism, normtrace_aut, projective_points,
                           psi_orbits, sigma_orbits)
from agpd.code import build_code
from agpd.curve import Ordering, enumerate_points, hermitian, normtrace

H3 = hermitian(3)
H3_TABLE = enumerate_points(H3, Ordering.ORBIT)
GAMMA = all_fix_inf_auts(H3)
NT = normtrace(2, 3)
NT_TABLE = enumerate_points(NT)
PSI = all_normtrace_auts(NT)


@given(st.integers(0, len(GAMMA) - 1), st.integers(0, len(GAMMA) - 1))
def test_induced_permutation_is_homomorphism(i, j):
    f, g = GAMMA[i], GAMMA[j]
    lhs = induced_permutation(f.then(g), H3_TABLE)
    rhs = induced_permutation(g, H3_TABLE).compose(induced_permutation(f, H3_TABLE))
    assert lhs == rhs


def test_homomorphism_on_200_seeded_pairs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        f, g = (GAMMA[i] for i in rng.integers(0, len(GAMMA), 2))
        lhs = induced_permutation(f.then(g), H3_TABLE)
        assert lhs == induced_permutation(g, H3_TABLE).compose(induced_permutation(f, H3_TABLE))


@given(st.integers(0, len(GAMMA) - 1))
def test_inverse(i):
    f = GAMMA[i]
    assert induced_permutation(f.then(f.inverse()), H3_TABLE).is_identity()
    assert induced_permutation(f, H3_TABLE).inverse() == induced_permutation(f.inverse(), H3_TABLE)


@given(st.integers(0, len(PSI) - 1), st.integers(0, len(PSI) - 1))
def test_psi_compose(i, j):
    f, g = PSI[i], PSI[j]
    lhs = induced_permutation(f.then(g), NT_TABLE)
    assert lhs == induced_permutation(g, NT_TABLE).compose(induced_permutation(f, NT_TABLE))


def test_gamma_has_q3_q2_minus_1_distinct_elements():
    perms = {induced_permutation(a, H3_TABLE).image for a in GAMMA}
    assert len(GAMMA) == len(perms) == 27 * 8


def test_phi_sends_origin_to_its_point():
    F = H3.field
    for (a, b) in H3_TABLE.points[:10]:
        assert hermitian_fix_inf_aut(H3, a, b, F.z(3))((0, 0)) == (a, b)


def test_phi_requires_curve_point():
    with pytest.raises(AutError):
        hermitian_fix_inf_aut(H3, 1, 0)
    with pytest.raises(AutError):
        normtrace_aut(NT, next(b for b in NT.field.elements() if NT.field.trace(b)))


def test_general_aut_maps_origin_and_infinity():
    C = hermitian(2)
    F = C.field
    pts = projective_points(C)
    for p1, p2 in [(pts[3], pts[5]), (pts[-1], pts[0]), (pts[2], pts[-1])]:
        aut = hermitian_general_aut(C, p1, p2, F.z(1))
        assert aut.apply_projective((0, 0, 1)) == p1
        assert aut.apply_projective((0, 1, 0)) == p2


def test_general_aut_rejects_bad_points():
    C = hermitian(2)
    with pytest.raises(AutError):
        hermitian_general_aut(C, (1, 0, 1), (0, 1, 0), 1)
    with pytest.raises(AutError):
        hermitian_general_aut(C, (0, 1, 0), (0, 1, 0), 1)


@pytest.mark.parametrize("gamma", [2, 5, 13])
def test_fix_inf_maps_preserve_codes(gamma):
    code = build_code(H3, gamma, Ordering.ORBIT)
    for a in GAMMA[::7]:
        assert is_code_automorphism(induced_permutation(a, code.table), code)


def test_non_automorphism_detected():
    code = build_code(H3, 5, Ordering.ORBIT)
    swap = list(range(code.n))
    swap[0], swap[5] = swap[5], swap[0]
    assert not is_code_automorphism(CoordPerm(tuple(swap)), code)


def test_apply_perm_semantics():
    pi = CoordPerm((2, 0, 1))
    v = np.array([10, 20, 30])
    assert apply_perm(pi, v).tolist() == [20, 30, 10]
    assert apply_perm(pi.inverse(), apply_perm(pi, v)).tolist() == v.tolist()
    assert identity_perm(3).is_identity()
    assert sorted(len(c) for c in cycles(pi)) == [3]


def test_sigma_orbits_partition():
    part = sigma_orbits(H3, H3_TABLE)
    assert part.sizes() == [8, 8, 8, 2, 1]
    assert sorted(i for o in part.orbits for i in o) == list(range(27))
    sigma = induced_permutation(hermitian_fix_inf_aut(H3, 0, 0, H3.field.zeta), H3_TABLE)
    assert sorted(map(sorted, cycles(sigma))) == sorted(map(sorted, part.orbits))


def test_psi_orbits_x33_and_partition():
    C = normtrace(3, 3)
    table = enumerate_points(C)
    part = psi_orbits(C, table)
    assert sorted(part.sizes()) == [1] + [2] * 4 + [26] * 9
    psi = induced_permutation(normtrace_aut(C, 0, C.field.zeta), table)
    assert sorted(map(sorted, cycles(psi))) == sorted(map(sorted, part.orbits))


def test_overlapping_orbits_rejected():
    with pytest.raises(AutError):
        OrbitPartition(((0, 1), (1, 2)), ("a", "b"))


def test_psi_maps_x23_are_distinct():
    perms = {induced_permutation(a, NT_TABLE).image for a in PSI}
    assert len(perms) == 2 ** 5 - 2 ** 2


def test_identity_perm_lengths():
    pi = identity_perm(4)
    for S in itertools.combinations(range(4), 2):
        assert pi.map_set(S) == set(S)
