"""Duality maps, diagrams, certified isomorphisms, coactions, theorem routes."""
import pytest

from hopfdual.actions import regular_comodule, trivial_action
from hopfdual.catalog import (
    ground_algebra,
    group_algebra,
    swap_action_data,
    sweedler_hopf,
    sweedler_module_action,
)
from hopfdual.crossed import (
    build_crossed_product,
    integral_from_crossed,
    smash_product_data,
    validate_cocycle,
)
from hopfdual.duality import (
    CoactionSide,
    DiagramSide,
    FunctionalSpan,
    build_diagram,
    chi_map,
    coaction_preimage_of_U,
    coaction_table,
    compat_check,
    compat_maps,
    duality_iso,
    epsilon_maps,
    final_chain,
    lambda_bar_map,
    lambda_map,
    matrix_iso,
    phi_maps,
    rho_endo,
    rl_check,
    theorem_suite,
)
from hopfdual.errors import CommutativityFailure, NotInvertible
from hopfdual.hopf import endomorphism_algebra, certify_algebra_iso, ensure_hopf
from hopfdual.linalg import LinearMap, determinant, invert_map, kron_vec, map_to_vec, tensor_module
from hopfdual.rings import QQ, ZZ, Zmod
from hopfdual.smash import (
    ModuleSide,
    SubalgebraU,
    op_smash,
    right_smash,
)


def gauss_crossed():
    action = trivial_action(group_algebra(ZZ, 2), ground_algebra(ZZ))
    b = action.bialgebra
    A = action.algebra
    cols = [A.carrier.vector([-1]) if i == j == 1 else A.unit
            for i in range(2) for j in range(2)]
    sigma = LinearMap.from_columns(tensor_module(b.carrier, b.carrier),
                                   A.carrier, cols)
    return build_crossed_product(action, validate_cocycle(action, sigma))


def triv_crossed(ring=ZZ, n=2):
    return smash_product_data(trivial_action(group_algebra(ring, n),
                                             ground_algebra(ring)))


# --- λ and the RL-condition ---------------------------------------------------


def test_lambda_is_invertible_over_Z_for_full_dual():
    h = group_algebra(ZZ, 2)
    lam = lambda_map(h, SubalgebraU.full_dual(h))
    assert ZZ.is_unit(determinant(lam))


def test_lambda_sends_unit_to_identity():
    h = group_algebra(ZZ, 2)
    U = SubalgebraU.full_dual(h)
    lam = lambda_map(h, U)
    one_eps = kron_vec(ZZ, h.algebra.unit, U.eps_coords)
    assert lam.apply(one_eps) == map_to_vec(LinearMap.identity(h.carrier))


@pytest.mark.parametrize("make", [
    lambda: group_algebra(ZZ, 2),
    lambda: group_algebra(ZZ, 3),
    lambda: group_algebra(QQ, 3),
    lambda: sweedler_hopf(QQ),
    lambda: sweedler_hopf(Zmod(3)),
])
def test_lambda_maps_are_unital_algebra_isos(make):
    # Both λ: H#H* ≅ End(H) and λ̄: H#^opH* ≅ End(H)^op, certified.
    h = ensure_hopf(make())
    U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
    lam = lambda_map(h, U)
    smash = right_smash(regular_comodule(h), U)
    end = endomorphism_algebra(h.carrier)
    certify_algebra_iso(smash.product, end, lam, "λ")
    UL = SubalgebraU.full_dual(h, ModuleSide.LEFT)
    lamb = lambda_bar_map(h, UL)
    opsm = op_smash(regular_comodule(h), UL)
    certify_algebra_iso(opsm.product, end.opposite(), lamb, "λ̄")


def test_rl_witness_for_counit_is_trivial():
    h = group_algebra(ZZ, 2)
    U = SubalgebraU.full_dual(h)
    rep = rl_check(h, U, [(1, 1)])  # ε
    assert rep.ok
    # ρ(ε) = id: the witness identity Σ h_j(g_j⇀k) = k↼ε holds
    assert rho_endo(h, (1, 1)) == map_to_vec(LinearMap.identity(h.carrier))


def test_rl_witnesses_exist_for_full_dual_everywhere():
    for make in (lambda: group_algebra(ZZ, 2), lambda: sweedler_hopf(QQ)):
        h = ensure_hopf(make())
        U = SubalgebraU.full_dual(h)
        V = [h.carrier.basis_vector(i) for i in range(h.rank)]
        rep = rl_check(h, U, V)
        assert rep.ok
        # verify each witness satisfies its defining identity
        from hopfdual.duality import _hit

        b = h.bialgebra
        for w in rep.witnesses:
            for t in range(h.rank):
                lhs = b.carrier.zero_vector()
                for h_vec, g_vec in w.pairs:
                    from hopfdual.linalg import vec_add

                    term = b.algebra.product(h_vec, _hit(b, g_vec, t))
                    lhs = vec_add(b.ring, lhs, term)
                rhs = b.carrier.zero_vector()
                for c, (k1, k2) in b.coalgebra.sweedler_basis(t, 2):
                    from hopfdual.linalg import vec_add, vec_scale

                    rhs = vec_add(b.ring, rhs, vec_scale(
                        b.ring, b.ring.mul(c, w.g[k1]),
                        b.carrier.basis_vector(k2)))
                assert lhs == rhs


def test_rl_fails_for_too_small_U():
    # U = span{ε} cannot express the nontrivial right-hit operators.
    h = group_algebra(ZZ, 2)
    U = SubalgebraU(h, [(1, 1)], ModuleSide.RIGHT)
    rep = rl_check(h, U, [(0, 1)])  # g = δ_g
    assert not rep.ok


# --- φ and ε maps ---------------------------------------------------------------


@pytest.mark.parametrize("side", [DiagramSide.RIGHT, DiagramSide.OP])
def test_phi_maps_for_catalog_hopf_algebras(side):
    for make in (lambda: group_algebra(ZZ, 2), lambda: sweedler_hopf(QQ),
                 lambda: sweedler_hopf(Zmod(3))):
        phi_maps(make(), side)  # raises unless inverse + multiplicative


def test_epsilon_round_trip_and_chi_factorization():
    h = group_algebra(ZZ, 2)
    from hopfdual.catalog import product_ring_algebra

    epsilon_maps(h, product_ring_algebra(ZZ, 2), DiagramSide.RIGHT)
    epsilon_maps(h, product_ring_algebra(ZZ, 2), DiagramSide.OP)
    epsilon_maps(sweedler_hopf(QQ), ground_algebra(QQ), DiagramSide.RIGHT)


def test_epsilon_with_ground_coefficients_is_phi():
    # With A = R the ε conjugation reduces to φ₁ on Hom(H,H).
    for side in (DiagramSide.RIGHT, DiagramSide.OP):
        h = group_algebra(ZZ, 2)
        eps, _ = epsilon_maps(h, ground_algebra(ZZ), side)
        phi1, _ = phi_maps(h, side)
        assert eps.matrix == phi1.matrix


def test_chi_sends_unit_to_identity_endomorphism():
    h = group_algebra(ZZ, 2)
    U = SubalgebraU.full_dual(h)
    A = ground_algebra(ZZ)
    chi = chi_map(h, A, U, DiagramSide.RIGHT)
    arg = kron_vec(ZZ, A.unit, kron_vec(ZZ, h.algebra.unit, U.eps_coords))
    end_unit = [0] * 4
    for i in range(2):
        end_unit[(i * 1 + 0) * 2 + i] = 1
    assert chi.apply(arg) == tuple(end_unit)


# --- the diagram ---------------------------------------------------------------


@pytest.mark.parametrize("make,side", [
    (triv_crossed, DiagramSide.RIGHT),
    (triv_crossed, DiagramSide.OP),
    (gauss_crossed, DiagramSide.RIGHT),
    (gauss_crossed, DiagramSide.OP),
    (lambda: smash_product_data(swap_action_data(ZZ)), DiagramSide.RIGHT),
    (lambda: smash_product_data(swap_action_data(ZZ)), DiagramSide.OP),
])
def test_diagram_commutes_and_pi_invertible(make, side):
    cp = make()
    h = ensure_hopf(cp.action.hopf)
    U = SubalgebraU.full_dual(
        h, ModuleSide.RIGHT if side is DiagramSide.RIGHT else ModuleSide.LEFT)
    diag = build_diagram(cp, U, side)
    assert cp.ring.is_unit(determinant(diag.pi))


def test_pi_order_is_resolved_by_commutativity():
    cp = smash_product_data(sweedler_module_action(QQ))
    h = ensure_hopf(cp.action.hopf)
    U = SubalgebraU.full_dual(h)
    build_diagram(cp, U, DiagramSide.RIGHT, pi_order="g_left")
    with pytest.raises(CommutativityFailure):
        build_diagram(cp, U, DiagramSide.RIGHT, pi_order="g_right")


def test_duality_iso_not_invertible_for_proper_U():
    cp = triv_crossed()
    h = ensure_hopf(cp.action.hopf)
    span = FunctionalSpan(h, [(1, 1)])
    chi = chi_map(h, cp.action.algebra, span, DiagramSide.RIGHT)
    with pytest.raises(NotInvertible):
        invert_map(chi)


def test_non_unit_determinant_leg_reports_not_invertible():
    # A rank-2 span of index 2 in H*: χ is square with determinant ±4.
    cp = triv_crossed()
    h = ensure_hopf(cp.action.hopf)
    span = FunctionalSpan(h, [(1, 1), (1, -1)])
    chi = chi_map(h, cp.action.algebra, span, DiagramSide.RIGHT)
    with pytest.raises(NotInvertible) as exc:
        invert_map(chi)
    assert not ZZ.is_unit(exc.value.determinant)


# --- certified duality isomorphisms ----------------------------------------------


@pytest.mark.parametrize("make", [
    triv_crossed,
    gauss_crossed,
    lambda: smash_product_data(swap_action_data(ZZ)),
    lambda: smash_product_data(sweedler_module_action(QQ)),
])
def test_duality_iso_both_sides(make):
    cp = make()
    h = ensure_hopf(cp.action.hopf)
    duality_iso(cp, SubalgebraU.full_dual(h, ModuleSide.RIGHT), DiagramSide.RIGHT)
    duality_iso(cp, SubalgebraU.full_dual(h, ModuleSide.LEFT), DiagramSide.OP)


def test_matrix_iso_families():
    for make, n, expect_rank in ((triv_crossed, 2, 4), (gauss_crossed, 2, 4),
                                 (lambda: triv_crossed(ZZ, 3), 3, 9)):
        res = matrix_iso(make())
        assert res.n == n
        assert res.iso.map.codomain.rank == expect_rank
    res = matrix_iso(smash_product_data(swap_action_data(ZZ)))
    assert res.iso.map.codomain.rank == 8  # M₂ of a rank-2 coefficient algebra


# --- compatibility ----------------------------------------------------------------


def test_full_dual_is_always_compatible():
    cp = gauss_crossed()
    h = ensure_hopf(cp.action.hopf)
    U = SubalgebraU.full_dual(h)
    V = [h.carrier.basis_vector(i) for i in range(h.rank)]
    rep = compat_check(cp, U, V, DiagramSide.RIGHT)
    assert rep.ok


def test_phi_reduces_to_bm_form_for_trivial_cocycle():
    # φ(h⊗a)(h̃) = [S̄(h̃)a]ε(h) when σ is trivial.
    cp = smash_product_data(swap_action_data(ZZ))
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    phi, _ = compat_maps(cp, DiagramSide.RIGHT)
    eps = b.coalgebra.counit_scalar
    for i in range(b.rank):
        for j in range(A.rank):
            col = phi.column(i * A.rank + j)
            for t in range(b.rank):
                acted = cp.action.act(h.twisted_antipode.column(t),
                                      A.carrier.basis_vector(j))
                expected = tuple(ZZ.mul(eps(b.carrier.basis_vector(i)), x)
                                 for x in acted)
                got = tuple(col[p * b.rank + t] for p in range(A.rank))
                assert got == expected


def test_small_V_fails_compatibility_with_witness():
    cp = smash_product_data(swap_action_data(ZZ))
    h = ensure_hopf(cp.action.hopf)
    U = SubalgebraU.full_dual(h)
    rep = compat_check(cp, U, [(1, 1)], DiagramSide.RIGHT)
    assert not rep.ok
    assert not rep.phi_contained
    assert rep.phi_witness is not None


# --- coactions -------------------------------------------------------------------


def test_coactions_trivial_on_group_algebras():
    for ring in (ZZ, Zmod(6)):
        h = group_algebra(ring, 2)
        for side in (CoactionSide.UPSILON, CoactionSide.OMEGA):
            table = coaction_table(h, side)
            assert table.report.ok
            for i in range(h.rank):
                expected = kron_vec(ring, h.algebra.unit,
                                    h.carrier.basis_vector(i))
                assert table.rows[i] == expected


@pytest.mark.parametrize("ring", [QQ, Zmod(3)])
@pytest.mark.parametrize("side", [CoactionSide.UPSILON, CoactionSide.OMEGA])
def test_coaction_conditions_on_sweedler(ring, side):
    table = coaction_table(sweedler_hopf(ring), side)
    assert table.report.ok
    ids = {r.check_id for r in table.report.records}
    tag = "upsilon" if side is CoactionSide.UPSILON else "omega"
    assert {f"{tag}.1a", f"{tag}.1b", f"{tag}.1c", f"{tag}.3", f"{tag}.4"} <= ids


def test_sweedler_upsilon_is_not_trivial():
    h = sweedler_hopf(QQ)
    table = coaction_table(h, CoactionSide.UPSILON)
    trivial = [kron_vec(QQ, h.algebra.unit, h.carrier.basis_vector(i))
               for i in range(4)]
    assert any(table.rows[i] != trivial[i] for i in range(4))


def test_coaction_preimage_of_full_dual_is_everything():
    h = sweedler_hopf(QQ)
    U = SubalgebraU.full_dual(h)
    table = coaction_table(h, CoactionSide.UPSILON)
    V = coaction_preimage_of_U(table, h, U)
    assert len(V) == 4


# --- theorem routes ---------------------------------------------------------------


def test_theorem_suite_on_gauss():
    rep = theorem_suite(gauss_crossed())
    assert rep.ok


def test_theorem_suite_on_cleft_payload():
    cp = gauss_crossed()
    cl = integral_from_crossed(cp)
    rep = theorem_suite(cl)
    assert rep.ok
    assert any(r.check_id == "cleft.duality" for r in rep.records)


def test_final_chain_matches_direct_on_c2_smash():
    for make in (triv_crossed, lambda: smash_product_data(swap_action_data(ZZ))):
        cp = make()
        h = ensure_hopf(cp.action.hopf)
        res = final_chain(cp, SubalgebraU.full_dual(h))
        assert res.report.ok
        assert res.equal_to_direct
