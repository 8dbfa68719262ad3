import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from agpd.field import Field, FieldError, field_for_tower, is_irreducible, make_field

TOWERS = [(2, 2), (4, 2), (3, 2), (5, 2), (3, 3), (2, 3), (2, 4)]
FIELDS = {t: field_for_tower(*t) for t in TOWERS}


@st.composite
def field_and_elems(draw, n=3):
    F = FIELDS[draw(st.sampled_from(TOWERS))]
    return F, [draw(st.integers(0, F.order - 1)) for _ in range(n)]


@given(field_and_elems())
def test_ring_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(field_and_elems(1))
def test_inverse(data):
    F, (a,) = data
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            F.inv(a)
    else:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order - 1) == 1


@given(field_and_elems(2))
def test_trace_linear_norm_multiplicative(data):
    F, (a, b) = data
    assert F.trace(F.add(a, b)) == F.add(F.trace(a), F.trace(b))
    assert F.norm(F.mul(a, b)) == F.mul(F.norm(a), F.norm(b))
    sub = set(F.subfield())
    assert F.trace(a) in sub and F.norm(a) in sub
    for c in sub:
        assert F.trace(F.mul(c, a)) == F.mul(c, F.trace(a))


@pytest.mark.parametrize("tower", TOWERS)
def test_kernel_sizes(tower):
    F = FIELDS[tower]
    q, s = tower
    ker_tr, ker_n = F.kernel_sets()
    assert len(ker_tr) == q ** (s - 1)
    assert len(ker_n) == (q**s - 1) // (q - 1)
    assert len(F.subfield()) == q


def test_vectorised_matches_scalar(F16):
    x = np.arange(16)
    y = x[::-1].copy()
    assert [F16.mul(int(a), int(b)) for a, b in zip(x, y)] == list(F16.mul(x, y))
    assert [F16.add(int(a), int(b)) for a, b in zip(x, y)] == list(F16.add(x, y))


def test_primitive_element_relations():
    # z^4 = z + 1 in F_16, z^2 = z - 2 in F_25, z^3 = z - 1 in F_27
    F = field_for_tower(4, 2)
    assert F.z(4) == F.add(F.z(1), 1)
    F = field_for_tower(5, 2)
    assert F.z(2) == F.sub(F.z(1), 2)
    F = field_for_tower(3, 3)
    assert F.z(3) == F.sub(F.z(1), 1)


def test_norm_parity_in_F27(F27):
    for e in range(26):
        assert F27.norm(F27.z(e)) == (1 if e % 2 == 0 else 2)


@pytest.mark.parametrize("tower", TOWERS)
def test_fmt_parse_and_json_roundtrip(tower):
    F = FIELDS[tower]
    for x in F.elements():
        assert F.parse(F.fmt(x)) == x
    G = Field.from_json(F.to_json())
    assert G == F and np.array_equal(G.exp, F.exp)


def test_parse_variants(F16):
    assert F16.parse("ζ^3") == F16.z(3)
    assert F16.parse("z") == F16.z(1)
    assert F16.parse("1") == 1
    with pytest.raises(FieldError):
        F16.parse("w^2")


def test_make_field_rejects_bad_input():
    with pytest.raises(FieldError):
        make_field(4, 2)
    with pytest.raises(FieldError):
        make_field(2, 2, modulus=(1, 0, 1))  # z^2 + 1 = (z + 1)^2
    with pytest.raises(FieldError):
        make_field(2, 3, q=4)
    assert not is_irreducible((0, 0, 1), 3)


def test_custom_modulus_gives_isomorphic_field():
    F = make_field(3, 2, modulus=(2, 2, 1))  # z^2 + 2z + 2
    assert sorted(F.exp.tolist()) == list(range(1, 9))
