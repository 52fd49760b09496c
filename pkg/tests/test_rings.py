"""Coefficient ring canonicalization and unit arithmetic."""
from fractions import Fraction

import pytest

from hopfdual.errors import NotInvertible
from hopfdual.rings import QQ, ZZ, Zmod, ring_from_descriptor


def test_modulus_must_be_at_least_two():
    with pytest.raises(ValueError):
        Zmod(1)
    with pytest.raises(ValueError):
        Zmod(0)


def test_canonical_residues():
    r = Zmod(6)
    assert r.of(-1) == 5
    assert r.of("13") == 1
    assert r.add(4, 5) == 3
    assert r.neg(2) == 4


def test_rational_canonical_form():
    assert QQ.of("4/6") == Fraction(2, 3)
    assert QQ.show(QQ.of("-4/6")) == "-2/3"
    assert QQ.show(QQ.of(5)) == "5"
    assert QQ.parse("7/2") == Fraction(7, 2)


def test_integer_units():
    assert ZZ.is_unit(-1)
    assert not ZZ.is_unit(2)
    with pytest.raises(NotInvertible):
        ZZ.inv(2)


def test_modular_units_composite():
    r = Zmod(6)
    assert r.is_unit(5)
    assert not r.is_unit(2)
    assert not r.is_unit(3)
    assert r.inv(5) == 5
    assert Zmod(5).inv(2) == 3


def test_ring_equality_and_descriptors():
    assert Zmod(6) == Zmod(6)
    assert Zmod(6) != Zmod(5)
    assert ZZ != QQ
    for ring in (ZZ, QQ, Zmod(7)):
        assert ring_from_descriptor(ring.describe()) == ring


def test_strings_round_trip():
    assert ZZ.parse(ZZ.show(10**30 + 7)) == 10**30 + 7
    assert Zmod(9).parse("16") == 7
