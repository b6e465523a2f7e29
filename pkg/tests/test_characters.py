import math
import random

import pytest

from dedesum.characters import (
    CharacterPair,
    DirichletCharacter,
    InadmissiblePairError,
    conductor,
    enumerate_characters,
    gauss_sum,
    psi_eval,
    unit_group_generators,
)
from dedesum.cyclotomic import Cyclotomic, euler_phi, root_of_unity

from oracles import CHI3, CHI4, CHI5_QUARTIC, discrete_log_generates, gauss_sum_numeric

ALL_CHARS = [chi for q in range(1, 51) for chi in enumerate_characters(q)]
PRIMITIVE = [chi for chi in ALL_CHARS if chi.modulus > 1 and chi.is_primitive()]


def test_generators_examples():
    assert unit_group_generators(3) == ((2, 2),)
    assert unit_group_generators(8) == ((7, 2), (5, 2))
    assert unit_group_generators(9) == ((2, 6),)
    assert discrete_log_generates(2, 9)
    assert unit_group_generators(2) == ()
    assert unit_group_generators(4) == ((3, 2),)


@pytest.mark.parametrize("q", range(1, 101))
def test_generator_orders_multiply_to_phi(q):
    gens = unit_group_generators(q)
    assert math.prod(o for _, o in gens) == euler_phi(q)
    for g, o in gens:
        assert pow(g, o, q) == 1 % q
        assert all(pow(g, k, q) != 1 for k in range(1, o)) or q <= 2


def test_enumeration_counts():
    assert len(enumerate_characters(3, primitive_only=True)) == 1
    assert len(enumerate_characters(4, primitive_only=True)) == 1
    assert len(enumerate_characters(9, primitive_only=True)) == 4
    assert len(enumerate_characters(9)) == 6
    assert enumerate_characters(6, primitive_only=True) == []


def test_conductor_examples():
    assert conductor(DirichletCharacter(3, [0])) == 1
    assert conductor(DirichletCharacter(3, [1])) == 3
    # chi(2) = zeta_6^3 = -1 mod 9 is the quadratic character mod 3 lifted
    lift = DirichletCharacter(9, [3])
    assert lift.order == 2
    assert conductor(lift) == 3


def test_eval_examples():
    chi3 = DirichletCharacter(3, [1])
    assert chi3(2) == -1
    for chi in enumerate_characters(9):
        assert chi(3).is_zero()
    chi5 = DirichletCharacter(5, [1])
    assert chi5(2) == root_of_unity(4, 1)
    assert chi5(4) == -1


def test_eval_matches_explicit_tables():
    chi3, chi4, chi5 = DirichletCharacter(3, [1]), DirichletCharacter(4, [1]), DirichletCharacter(5, [1])
    for n in range(-20, 20):
        assert chi3(n) == CHI3[n % 3]
        assert chi4(n) == CHI4[n % 4]
        assert abs(chi5(n).embed() - CHI5_QUARTIC[n % 5]) <= 1e-15


@pytest.mark.parametrize("chi", ALL_CHARS, ids=lambda c: c.label)
def test_character_invariants(chi):
    q = chi.modulus
    rng = random.Random(chi.label)
    assert chi(1) == 1
    for _ in range(10):
        m, n = rng.randint(-500, 500), rng.randint(-500, 500)
        assert chi(m * n) == chi(m) * chi(n)
    for n in range(q):
        assert chi(n).is_zero() == (math.gcd(n, q) > 1)
    total = sum((chi(n) for n in range(q)), Cyclotomic.zero())
    assert total == (euler_phi(q) if chi.is_principal() else 0)
    assert chi(q - 1) == chi.parity


@pytest.mark.parametrize("chi", PRIMITIVE, ids=lambda c: c.label)
def test_gauss_sum_norms(chi):
    q = chi.modulus
    tau = gauss_sum(chi)
    assert tau * tau.conj() == q
    assert gauss_sum(chi) * gauss_sum(chi.conj()) == chi.parity * q
    assert abs(abs(tau.embed()) ** 2 - q) <= 1e-10


def test_gauss_sum_examples():
    tau3 = gauss_sum(DirichletCharacter(3, [1]))
    assert tau3 == root_of_unity(3, 1) - root_of_unity(3, 2)
    assert abs(tau3.embed() - gauss_sum_numeric(CHI3)) <= 1e-12
    tau4 = gauss_sum(DirichletCharacter(4, [1]))
    assert tau4 == 2 * root_of_unity(4, 1)
    assert abs(gauss_sum(DirichletCharacter(5, [1])).embed() - gauss_sum_numeric(CHI5_QUARTIC)) <= 1e-12


@pytest.mark.parametrize("chi", PRIMITIVE[:40], ids=lambda c: c.label)
def test_character_sum_vanishing(chi):
    # sum_{j mod c} conj(chi)(j) e(alj/c) = 0 for q | c, (a, c) = 1, l nonzero mod c/q
    q = chi.modulus
    for c in range(q, 37, q):
        for a in (1, c - 1):
            if math.gcd(a, c) != 1:
                continue
            for l in range(1, c):
                if l % (c // q) == 0:
                    continue
                s = sum((chi.conj()(j) * root_of_unity(c, a * l * j) for j in range(c)), Cyclotomic.zero())
                assert s.is_zero(), (c, a, l)


def test_labels_and_json():
    chi = DirichletCharacter.from_label("8:1,1")
    assert chi.label == "8:1,1"
    assert chi.to_json() == {"modulus": 8, "label": "8:1,1", "order": 2, "parity": -1, "conductor": 8}
    with pytest.raises(ValueError):
        DirichletCharacter.from_label("8:1")
    with pytest.raises(ValueError):
        DirichletCharacter.from_label("nonsense")


def test_pair_construction_and_psi():
    chi3, chi4 = DirichletCharacter(3, [1]), DirichletCharacter(4, [1])
    pair = CharacterPair(chi3, chi3)
    assert pair.level == 9
    for d in (1, 2, 4, 5, 7, 8, -1):
        assert psi_eval(pair, d) == 1
    assert psi_eval(pair, 3).is_zero()
    # psi(5) = chi3(2) conj(chi4)(1) = -1
    assert psi_eval(CharacterPair(chi3, chi4), 5) == -1
    assert psi_eval(CharacterPair(chi3, chi4), 6).is_zero()


def test_pair_rejections():
    chi3 = DirichletCharacter(3, [1])
    even5 = DirichletCharacter(5, [2])
    with pytest.raises(InadmissiblePairError, match=r"chi1\*chi2\(-1\) = 1"):
        CharacterPair(chi3, even5)
    with pytest.raises(InadmissiblePairError, match="not primitive"):
        CharacterPair(chi3, DirichletCharacter(9, [3]))
    with pytest.raises(InadmissiblePairError, match="q > 1"):
        CharacterPair(DirichletCharacter(1, []), DirichletCharacter(1, []))
