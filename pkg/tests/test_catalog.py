"""Catalog integrity: deterministic listing, validated entries, coverage."""
import pytest

from hopfdual.catalog import get, list_entries
from hopfdual.crossed import CleftData, CrossedProductData
from hopfdual.errors import UnknownEntry
from hopfdual.hopf import HopfData, validate_hopf
from hopfdual.linalg import kron_vec
from hopfdual.rings import QQ, ZZ, Zmod


def test_listing_is_deterministic_and_contains_required_entries():
    names = [name for name, _, _ in list_entries()]
    assert names == [name for name, _, _ in list_entries()]
    for required in ("Z_C2", "gauss", "sweedler4_Q", "sweedler4_Z3",
                     "Zmod6_C2", "swap_smash"):
        assert required in names


def test_get_unknown_raises():
    with pytest.raises(UnknownEntry):
        get("no_such_entry")


def test_z_c2_payload():
    e = get("Z_C2")
    h = e.payload
    assert isinstance(h, HopfData)
    assert h.rank == 2
    assert h.antipode.matrix == ((1, 0), (0, 1))


def test_swap_smash_payload():
    e = get("swap_smash")
    cp = e.payload
    assert isinstance(cp, CrossedProductData)
    assert cp.carrier.rank == 4
    assert not cp.product_algebra.is_commutative()


def test_zmod6_exercises_composite_modulus():
    cp = get("Zmod6_C2").payload
    assert cp.ring == Zmod(6)
    one_g = kron_vec(Zmod(6), (1,), (0, 1))
    assert cp.product_algebra.product(one_g, one_g) == (5, 0)


def test_gauss_cleft_payload():
    cl = get("gauss_cleft").payload
    assert isinstance(cl, CleftData)
    assert cl.validate().ok


def test_every_entry_validates_at_load():
    for name, kind, _ in list_entries():
        e = get(name)
        h = e.hopf_data()
        assert validate_hopf(h).ok, name


def test_catalog_coverage():
    entries = [get(name) for name, _, _ in list_entries()]
    rings = {repr(e.ring) for e in entries}
    assert {"integers", "rationals", "Z/3", "Z/6"} <= rings
    kinds = {e.kind for e in entries}
    assert kinds == {"hopf", "crossed", "cleft"}
    crossed = [e.payload for e in entries if e.kind == "crossed"]
    # trivial and nontrivial cocycles
    from hopfdual.crossed import trivial_cocycle

    trivials = [cp for cp in crossed
                if cp.cocycle.sigma == trivial_cocycle(cp.action).sigma]
    assert trivials and len(trivials) < len(crossed)
    # commutative and noncommutative coefficient algebras
    assert any(cp.action.algebra.is_commutative() for cp in crossed)
    assert any(not cp.action.algebra.is_commutative() for cp in crossed)
    # cocommutative and non-cocommutative Hopf algebras
    hopfs = [e.hopf_data() for e in entries]
    assert any(h.coalgebra.is_cocommutative() for h in hopfs)
    assert any(not h.coalgebra.is_cocommutative() for h in hopfs)
