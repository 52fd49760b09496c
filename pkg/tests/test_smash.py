"""Smash-type algebras and the left/right smash comparison."""
import pytest

from hopfdual.actions import ComoduleAlgebraData, regular_comodule, trivial_action
from hopfdual.catalog import (
    ground_algebra,
    group_algebra,
    product_ring_algebra,
    swap_action_data,
    sweedler_hopf,
)
from hopfdual.crossed import crossed_table, trivial_cocycle
from hopfdual.errors import SideMismatch, ValidationError
from hopfdual.hopf import ConvolutionAlgebra, tensor_algebra
from hopfdual.linalg import LinearMap, kron_vec, tensor_module
from hopfdual.rings import QQ, ZZ, Zmod
from hopfdual.smash import (
    ModuleSide,
    SmashKind,
    SubalgebraU,
    hat_smash,
    hit_action_of_dual,
    left_smash,
    op_hat_smash,
    op_smash,
    right_smash,
    smash_compare,
)


def trivial_comodule(h, algebra):
    ring = algebra.ring
    cols = [kron_vec(ring, algebra.carrier.basis_vector(i), h.algebra.unit)
            for i in range(algebra.rank)]
    coaction = LinearMap.from_columns(
        algebra.carrier, tensor_module(algebra.carrier, h.carrier), cols)
    c = ComoduleAlgebraData(h, algebra, coaction)
    c.validate().require()
    return c


# --- SubalgebraU -------------------------------------------------------------


def test_full_dual_subalgebra():
    u = SubalgebraU.full_dual(group_algebra(ZZ, 2))
    assert u.rank == 2
    assert u.eps_coords == (1, 1)


def test_span_of_counit_is_a_valid_U():
    h = group_algebra(ZZ, 2)
    u = SubalgebraU(h, [(1, 1)], ModuleSide.RIGHT)
    assert u.rank == 1
    assert u.eps_coords == (1,)


def test_non_summand_U_is_rejected():
    h = group_algebra(ZZ, 2)
    with pytest.raises(ValidationError):
        SubalgebraU(h, [(1, 1), (0, 2)], ModuleSide.RIGHT)


def test_side_mismatch_raises():
    h = group_algebra(ZZ, 2)
    u_left = SubalgebraU.full_dual(h, ModuleSide.LEFT)
    with pytest.raises(SideMismatch):
        right_smash(regular_comodule(h), u_left)
    u_right = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
    with pytest.raises(SideMismatch):
        op_smash(regular_comodule(h), u_right)


# --- #(H,B) -------------------------------------------------------------------


def test_hat_smash_with_trivial_coaction_is_convolution():
    h = group_algebra(ZZ, 2)
    a = product_ring_algebra(ZZ, 2)
    B = trivial_comodule(h, a)
    hat = hat_smash(h, B)
    conv = ConvolutionAlgebra(h.coalgebra, a).algebra()
    assert hat.product.mult == conv.mult
    assert hat.product.unit == conv.unit


def test_hat_smash_on_regular_comodule_value():
    # Oracle (hand expansion): for f = [g ↦ g], f ⋆̂ f = 0 over Z[C₂].
    h = group_algebra(ZZ, 2)
    hat = hat_smash(h, regular_comodule(h))
    f = hat.carrier.basis_vector(1 * 2 + 1)  # b-part g, h-part g
    assert hat.product.product(f, f) == (0, 0, 0, 0)
    assert hat.product.validate().ok


def test_op_hat_smash_trivial_coaction_on_cocommutative_is_convolution():
    h = group_algebra(ZZ, 2)
    a = product_ring_algebra(ZZ, 2)
    B = trivial_comodule(h, a)
    ophat = op_hat_smash(h, B)
    conv = ConvolutionAlgebra(h.coalgebra, a).algebra()
    assert ophat.product.mult == conv.mult


def test_op_hat_smash_trivial_coaction_is_coopposite_convolution():
    # With ϱ trivial, (f ⋆̃ g)(h) = Σ f(h₂)g(h₁): convolution over H^cop.
    h4 = sweedler_hopf(QQ)
    a = ground_algebra(QQ)
    B = trivial_comodule(h4, a)
    ophat = op_hat_smash(h4, B)
    from hopfdual.hopf import CoalgebraData, co_opposite_bialgebra

    cop = co_opposite_bialgebra(h4)
    conv = ConvolutionAlgebra(cop.coalgebra, a).algebra()
    assert ophat.product.mult == conv.mult


# --- B#U and B#^opU -------------------------------------------------------------


def test_right_smash_trivial_coaction_is_componentwise():
    h = group_algebra(ZZ, 2)
    a = product_ring_algebra(ZZ, 2)
    B = trivial_comodule(h, a)
    U = SubalgebraU.full_dual(h)
    rs = right_smash(B, U)
    expected = tensor_algebra(a, U.dual_algebra)
    assert rs.product.mult == expected.mult


def test_right_smash_on_regular_comodule_is_rank_four():
    h = group_algebra(ZZ, 2)
    rs = right_smash(regular_comodule(h), SubalgebraU.full_dual(h))
    assert rs.carrier.rank == 4
    assert rs.product.validate().ok


def test_op_smash_trivial_coaction_cocommutative_componentwise():
    h = group_algebra(ZZ, 2)
    a = product_ring_algebra(ZZ, 2)
    B = trivial_comodule(h, a)
    U = SubalgebraU.full_dual(h, ModuleSide.LEFT)
    os_ = op_smash(B, U)
    expected = tensor_algebra(a, U.dual_algebra)
    assert os_.product.mult == expected.mult


def test_restricted_U_right_smash():
    h = group_algebra(ZZ, 2)
    U = SubalgebraU(h, [(1, 1)], ModuleSide.RIGHT)
    rs = right_smash(regular_comodule(h), U)
    assert rs.carrier.rank == 2


# --- A#H ------------------------------------------------------------------------


def test_left_smash_trivial_action_is_tensor():
    h = group_algebra(ZZ, 2)
    a = product_ring_algebra(ZZ, 2)
    ls = left_smash(trivial_action(h, a))
    expected = tensor_algebra(a, h.algebra)
    assert ls.product.mult == expected.mult


def test_left_smash_swap_action_table():
    w = swap_action_data(ZZ)
    ls = left_smash(w)
    assert not ls.product.is_commutative()
    assert ls.product.mult == crossed_table(w, trivial_cocycle(w).sigma)


def test_left_smash_requires_module_action():
    from tests.test_crossed import shift_action_z3

    with pytest.raises(ValidationError):
        left_smash(shift_action_z3())


# --- the comparison -------------------------------------------------------------


def test_hit_action_of_dual_validates():
    for h in (group_algebra(ZZ, 2), sweedler_hopf(QQ)):
        hit_action_of_dual(h)  # raises if the weak-action axioms fail


@pytest.mark.parametrize("make", [
    lambda: group_algebra(ZZ, 2),
    lambda: group_algebra(QQ, 3),
    lambda: sweedler_hopf(QQ),
    lambda: sweedler_hopf(Zmod(3)),
    lambda: group_algebra(Zmod(6), 2),
])
def test_smash_compare(make):
    assert smash_compare(make()).ok
