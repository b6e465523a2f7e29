import cmath
import json
import math
import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dedesum.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi, root_of_unity

from oracles import cyclotomic_poly_numeric


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("m", [5, 8, 9, 12, 15, 20, 21, 30])
def test_cyclotomic_polynomial_matches_product_over_primitive_roots(m):
    assert cyclotomic_polynomial(m) == cyclotomic_poly_numeric(m)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


@pytest.mark.parametrize("m", range(1, 101))
def test_degree_and_product_over_divisors(m):
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)
    prod = [1]
    for d in range(1, m + 1):
        if m % d == 0:
            prod = _poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (m - 1) + [1]


def test_root_of_unity_examples():
    assert root_of_unity(4, 1).coeffs == (0, 1)
    assert root_of_unity(6, 3) == -1
    # zeta_12^14 = zeta_12^2, already of degree below phi(12) = 4
    assert root_of_unity(12, 14).coeffs == (0, 0, 1, 0)
    assert root_of_unity(12, 14) == root_of_unity(6, 1)


@pytest.mark.parametrize("m", range(1, 25))
def test_root_of_unity_to_the_m_is_one(m):
    for k in range(-m, 2 * m):
        assert root_of_unity(m, k) ** m == 1


def test_products_and_negation():
    z3 = root_of_unity(3, 1)
    assert z3 * z3**2 == 1
    x = Cyclotomic(5, [Fraction(1, 3), 2, 0, -1])
    assert (x + (-x)).is_zero()
    z5 = root_of_unity(5, 1)
    # (1 + z)(1 + z^4) = 2 + z + z^4
    assert (1 + z5) * (1 + z5**4) == 2 + z5 + root_of_unity(5, 4)


def test_conj_examples():
    i = root_of_unity(4, 1)
    assert i.conj() == -i
    assert Cyclotomic.rational(Fraction(3, 7)).conj() == Fraction(3, 7)
    tau3 = root_of_unity(3, 1) - root_of_unity(3, 2)
    assert tau3.conj() == -tau3


def test_embed_examples():
    assert abs(root_of_unity(4, 1).embed() - 1j) <= 1e-15
    assert Cyclotomic.rational(Fraction(1, 2)).embed() == 0.5
    tau3 = root_of_unity(3, 1) - root_of_unity(3, 2)
    assert abs(tau3.embed() - 1j * math.sqrt(3)) <= 1e-12


def test_mixed_orders_compare_in_lcm_field():
    assert root_of_unity(4, 1) ** 2 == root_of_unity(6, 3)
    assert hash(root_of_unity(4, 2)) == hash(Cyclotomic.rational(-1))
    assert hash(root_of_unity(3, 1)) == hash(root_of_unity(6, 2).coerce(12))
    assert {root_of_unity(3, 1), root_of_unity(12, 4)} == {root_of_unity(3, 1)}


def test_order_cap():
    with pytest.raises(ValueError, match="exceeds the cap"):
        root_of_unity(10_007, 1)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        Cyclotomic(5, [1, 2])


def test_json_round_trip():
    x = Cyclotomic(12, [Fraction(-1, 3), 0, 5, Fraction(7, 2)])
    obj = x.to_json()
    assert obj == {"order": 12, "coeffs": ["-1/3", "0/1", "5/1", "7/2"]}
    assert Cyclotomic.from_json(json.loads(json.dumps(obj))) == x


def test_pickle_round_trip():
    x = Cyclotomic(7, [1, Fraction(1, 2), 0, 0, 0, -3])
    assert pickle.loads(pickle.dumps(x)) == x


def test_immutable():
    with pytest.raises(AttributeError):
        root_of_unity(3, 1).order = 4


orders = st.integers(1, 24)


@st.composite
def elements(draw, m=None):
    m = m or draw(orders)
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=7),
            min_size=euler_phi(m),
            max_size=euler_phi(m),
        )
    )
    return Cyclotomic(m, coeffs)


@st.composite
def triples(draw):
    m = draw(orders)
    return draw(elements(m)), draw(elements(m)), draw(elements(m))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_field_axioms(t):
    x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


@settings(max_examples=100, deadline=None)
@given(elements(), elements())
def test_mixed_order_arithmetic_matches_embedding(x, y):
    assert abs((x * y).embed() - x.embed() * y.embed()) <= 1e-9
    assert abs((x + y).embed() - (x.embed() + y.embed())) <= 1e-9


@settings(max_examples=150, deadline=None)
@given(elements())
def test_conj_is_an_involution_matching_complex_conjugation(x):
    assert x.conj().conj() == x
    assert abs(x.conj().embed() - x.embed().conjugate()) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(elements())
def test_coerce_preserves_value(x):
    y = x.coerce(x.order * 3)
    assert y == x
    assert hash(y) == hash(x)
    assert cmath.isclose(y.embed(), x.embed(), abs_tol=1e-12)
