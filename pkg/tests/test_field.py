from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfalg.field import GF, QQ, FieldError, FieldSpec, field_make, parse_field_name


def test_gf4_table_by_hand():
    F = GF(4)
    w, w1 = F.parse("w"), F.parse("w+1")
    assert F.mul(w, w) == w1            # w^2 = w + 1 for x^2 + x + 1
    assert F.mul(w, w1) == F.one
    assert F.add(w, w1) == F.one
    assert F.inv(w) == w1
    assert F.format(F.mul(w1, w1)) == "w"


def test_gf8_default_modulus_is_x3_x_1():
    F = GF(8)
    assert F.modulus == (1, 1, 0, 1)
    w = F.parse("w")
    assert F.format(F.pow(w, 3)) == "w+1"
    assert F.pow(w, 7) == F.one


def test_prime_field_and_rationals():
    F = GF(3)
    assert F.mul(2, 2) == 1
    assert F.inv(2) == 2
    assert F.from_int(-1) == 2
    Q = QQ()
    assert Q.parse("3/6") == Fraction(1, 2)
    assert Q.format(Fraction(-2, 4)) == "-1/2"


def test_int_means_integer_in_extension_fields():
    F = GF(4)
    assert F.coerce(2) == 0            # the integer 2, not the code of w
    assert F.coerce("w") != 0
    assert F.coerce(F("w")) == F.parse("w")


def test_field_names_and_errors():
    assert parse_field_name("GF(4)") == FieldSpec("extension", 2, 2, (1, 1, 1))
    assert parse_field_name("F(2^3)").degree == 3
    assert parse_field_name("QQ").kind == "rational"
    with pytest.raises(FieldError):
        parse_field_name("GF(6)")
    with pytest.raises(FieldError):
        field_make(FieldSpec("extension", 2, 2, (1, 0, 1)))      # x^2 + 1 = (x+1)^2
    with pytest.raises(FieldError):
        GF(4).parse("w^")


def test_shared_instances():
    assert GF(4) is field_make(FieldSpec.from_json({"characteristic": 2, "degree": 2}))


FIELDS = [GF(2), GF(3), GF(4), GF(5), GF(8), GF(9), GF(16)]


@st.composite
def field_and_elems(draw, k=3):
    F = draw(st.sampled_from(FIELDS))
    els = F.elements()
    return F, [draw(st.sampled_from(els)) for _ in range(k)]


@given(field_and_elems())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != 0:
        assert F.mul(a, F.inv(a)) == F.one
    assert F.parse(F.format(a)) == a


@given(field_and_elems(k=1))
def test_frobenius_and_order(fe):
    F, (a,) = fe
    assert F.pow(a, F.order) == a
    # Frobenius is additive
    b = F.add(a, F.one)
    assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))


@given(st.sampled_from(FIELDS), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_matmul_matches_scalar_loop(F, n, m, k, data):
    els = F.elements()
    A = np.array([[data.draw(st.sampled_from(els)) for _ in range(m)] for _ in range(n)], dtype=np.int64)
    B = np.array([[data.draw(st.sampled_from(els)) for _ in range(k)] for _ in range(m)], dtype=np.int64)
    C = F.matmul(A, B)
    for i in range(n):
        for j in range(k):
            acc = F.zero
            for t in range(m):
                acc = F.add(acc, F.mul(A[i, t], B[t, j]))
            assert C[i, j] == acc
