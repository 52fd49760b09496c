"""Suite execution: each suite is a fixed sequence of exact checks over one
catalog entry or parsed instance, producing deterministic report sections."""
from __future__ import annotations

import time
from typing import Optional

from .actions import (
    coinvariants,
    coinvariants_form_subalgebra,
    regular_comodule,
    validate_weak_action,
)
from .catalog import CatalogEntry, ground_algebra
from .crossed import (
    CleftData,
    CrossedProductData,
    cleft_maps,
    crossed_from_integral,
    direct_product_checks,
    integral_from_crossed,
    opposite_crossed,
    trivial_cocycle,
)
from .duality import (
    DiagramSide,
    duality_iso,
    epsilon_maps,
    final_chain,
    lambda_bar_map,
    lambda_map,
    matrix_iso,
    phi_maps,
    rl_check,
    theorem_suite,
)
from .errors import HopfdualError, ValidationError
from .hopf import (
    ConvolutionAlgebra,
    certify_algebra_iso,
    convolution_invert,
    dual_hopf,
    endomorphism_algebra,
    ensure_hopf,
    validate_hopf,
)
from .linalg import LinearMap, invert_map, submodule_membership
from .reporting import Report, ValidationReport
from .smash import (
    ModuleSide,
    SubalgebraU,
    hat_smash,
    left_smash,
    op_hat_smash,
    op_smash,
    right_smash,
    smash_compare,
)

SUITE_ORDER = ("hopf", "crossed", "smash", "duality", "cleft", "opposite")


def applicable_suites(entry: CatalogEntry):
    if entry.kind == "hopf":
        suites = ("hopf", "smash", "duality")
    else:
        suites = SUITE_ORDER
    only = entry.expected.get("only_suites")
    if only:
        suites = tuple(s for s in suites if s in only)
    return suites


def _timed(rep: ValidationReport, check_id: str, statement: str, fn):
    """Run one check body; library errors become failed records."""
    start = time.perf_counter()
    try:
        result = fn()
        passed = True if result is None else bool(result)
        witness = None
    except HopfdualError as exc:
        passed = False
        witness = str(exc)
    rep.add(check_id, statement, passed, witness,
            (time.perf_counter() - start) * 1000.0)


def _crossed_of(entry: CatalogEntry) -> Optional[CrossedProductData]:
    payload = entry.payload
    if isinstance(payload, CrossedProductData):
        return payload
    if isinstance(payload, CleftData):
        return crossed_from_integral(payload).crossed
    return None


def run_hopf_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: hopf suite")
    h = entry.hopf_data()
    rep.extend(validate_hopf(h, f"{entry.name}"))

    def antipode_recomputed():
        from .hopf import compute_antipode

        return compute_antipode(h.bialgebra) == h.antipode

    _timed(rep, "hopf.antipode_recomputed",
           "the stored antipode equals the convolution inverse of the identity",
           antipode_recomputed)

    def twisted_is_inverse():
        return h.twisted_antipode == invert_map(h.antipode)

    _timed(rep, "hopf.twisted_vs_inverse",
           "the twisted antipode equals the matrix inverse of the antipode",
           twisted_is_inverse)
    if h.algebra.is_commutative() or h.coalgebra.is_cocommutative():
        _timed(rep, "hopf.twisted_equals_antipode",
               "S̄ = S for (co)commutative data",
               lambda: h.twisted_antipode == h.antipode)

    def dual_ok():
        d = dual_hopf(h)
        dd = dual_hopf(d)
        return dd == h

    _timed(rep, "hopf.dual", "the dual validates and the double dual is the "
           "original (evaluation identification)", dual_ok)
    return rep


def run_crossed_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: crossed suite")
    cp = _crossed_of(entry)
    if cp is None:
        raise ValidationError("crossed suite needs crossed or cleft data")
    rep.extend(validate_weak_action(cp.action, "weak action"))
    flags = cp.cocycle.flags
    rep.add("crossed.flags", "σ is normal, a cocycle, and twisted-module "
            "compatible", flags.all_true)

    def biconditional():
        unit_ok, assoc_ok = direct_product_checks(cp.action, cp.cocycle.sigma)
        return (unit_ok == flags.normal
                and assoc_ok == (flags.cocycle and flags.twisted_module))

    _timed(rep, "crossed.biconditional", "direct unit/associativity checks "
           "agree with the cocycle flags in both directions", biconditional)

    def inverse_recomputed():
        hh_coalg_conv = ConvolutionAlgebra(
            __tensor_coalg(cp), cp.action.algebra)
        flat = tuple(x for row in cp.cocycle.sigma.matrix for x in row)
        inv = convolution_invert(hh_coalg_conv, flat)
        return inv == tuple(x for row in cp.cocycle.sigma_inv.matrix for x in row)

    _timed(rep, "crossed.sigma_inverse", "σ⁻¹ is the two-sided convolution "
           "inverse of σ", inverse_recomputed)
    rep.extend(cp.comodule.validate("comodule algebra"))

    def coinvariants_ok():
        coin = coinvariants(cp.comodule)
        if not coinvariants_form_subalgebra(cp.comodule, coin):
            return False
        b = cp.action.bialgebra
        ring = cp.ring
        from .linalg import kron_vec

        expected = [kron_vec(ring, cp.action.algebra.carrier.basis_vector(i),
                             b.algebra.unit)
                    for i in range(cp.action.algebra.rank)]
        for v in expected:
            if submodule_membership(ring, list(coin.vectors), v) is None:
                return False
        for v in coin.vectors:
            if submodule_membership(ring, expected, v) is None:
                return False
        return True

    _timed(rep, "crossed.coinvariants", "the coinvariants equal A⊗1 and form "
           "a subalgebra", coinvariants_ok)
    return rep


def __tensor_coalg(cp: CrossedProductData):
    from .hopf import tensor_coalgebra

    b = cp.action.bialgebra
    return tensor_coalgebra(b.coalgebra, b.coalgebra)


def run_smash_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: smash suite")
    h = entry.hopf_data()
    rep.extend(smash_compare(h, "left vs right smash on H⊗H*"))
    _timed(rep, "smash.hat", "#(H,H) constructs and validates",
           lambda: hat_smash(h, regular_comodule(h)) is not None)
    _timed(rep, "smash.op_hat", "#op(H,H) constructs and validates",
           lambda: op_hat_smash(h, regular_comodule(h)) is not None)
    cp = _crossed_of(entry)
    if cp is not None:
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
        UL = SubalgebraU.full_dual(h, ModuleSide.LEFT)
        _timed(rep, "smash.right", "(A#σH)#U constructs and validates",
               lambda: right_smash(cp.comodule, U) is not None)
        _timed(rep, "smash.op", "(A#σH)#opU constructs and validates",
               lambda: op_smash(cp.comodule, UL) is not None)
        if cp.cocycle.sigma == trivial_cocycle(cp.action).sigma:
            def left_matches():
                ls = left_smash(cp.action)
                return (ls.product.mult == cp.product_algebra.mult
                        and ls.product.unit == cp.product_algebra.unit)

            _timed(rep, "smash.left", "A#H equals the trivial-cocycle crossed "
                   "product bit-identically", left_matches)
    return rep


def run_duality_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: duality suite")
    h = entry.hopf_data()
    if entry.u_span is not None:
        U = SubalgebraU(h, entry.u_span, ModuleSide.RIGHT)
        UL = SubalgebraU(h, entry.u_span, ModuleSide.LEFT)
    else:
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
        UL = SubalgebraU.full_dual(h, ModuleSide.LEFT)

    full_u = entry.u_span is None

    def lambda_iso():
        from .hopf import algebra_morphism_witness

        lam = lambda_map(h, U)
        lamb = lambda_bar_map(h, UL)
        end = endomorphism_algebra(h.carrier)
        if full_u:
            certify_algebra_iso(right_smash(regular_comodule(h), U).product,
                                end, lam, "λ")
            certify_algebra_iso(op_smash(regular_comodule(h), UL).product,
                                end.opposite(), lamb, "λ̄")
            return True
        ok = algebra_morphism_witness(
            right_smash(regular_comodule(h), U).product, end, lam) is None
        return ok and algebra_morphism_witness(
            op_smash(regular_comodule(h), UL).product, end.opposite(),
            lamb) is None

    _timed(rep, "duality.lambda",
           "λ and λ̄ are unital algebra morphisms (isomorphisms for U = H*)",
           lambda_iso)
    _timed(rep, "duality.phi", "φ₁/φ₂ and the barred pair are mutually "
           "inverse and multiplicative",
           lambda: phi_maps(h, DiagramSide.RIGHT) and phi_maps(h, DiagramSide.OP)
           and True)
    cp = _crossed_of(entry)
    if cp is None:
        from .actions import trivial_action
        from .crossed import smash_product_data

        cp = smash_product_data(trivial_action(h, ground_algebra(h.ring)))
    A = cp.action.algebra
    _timed(rep, "duality.epsilon", "ε/ε⁻¹ and the barred pair round-trip and "
           "factor χ = ε∘α",
           lambda: epsilon_maps(h, A, DiagramSide.RIGHT)
           and epsilon_maps(h, A, DiagramSide.OP) and True)
    if full_u:
        _timed(rep, "duality.rl", "U = H* satisfies the RL-condition on both "
               "sides",
               lambda: rl_check(h, U, [h.carrier.basis_vector(i)
                                       for i in range(h.rank)]).ok
               and rl_check(h, UL, [h.carrier.basis_vector(i)
                                    for i in range(h.rank)],
                            DiagramSide.OP).ok)

    def suite_run():
        inner = theorem_suite(cp, U=None if full_u else U,
                              V=entry.v_span, run_chain=False)
        rep.extend(inner)
        return inner.ok

    _timed(rep, "duality.theorems", "coaction conditions, compatibility and "
           "both duality isomorphisms hold", suite_run)
    if full_u:
        _timed(rep, "duality.matrix", "the end-to-end matrix-algebra "
               "isomorphism is certified", lambda: matrix_iso(cp) is not None)
    return rep


def run_cleft_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: cleft suite")
    payload = entry.payload
    if isinstance(payload, CleftData):
        cleft = payload
        cp = crossed_from_integral(cleft).crossed
    else:
        cp = payload
        cleft = integral_from_crossed(cp)
    rep.extend(cleft.validate("cleft data"))

    def theta_inv_matches():
        conv = ConvolutionAlgebra(ensure_hopf(cp.action.hopf).coalgebra,
                                  cleft.comodule_algebra.algebra)
        flat = tuple(x for row in cleft.theta.matrix for x in row)
        inv = convolution_invert(conv, flat)
        return inv == tuple(x for row in cleft.theta_inv.matrix for x in row)

    _timed(rep, "cleft.theta_inverse", "θ⁻¹ equals the convolution inverse "
           "of θ", theta_inv_matches)

    def round_trip():
        ext = crossed_from_integral(integral_from_crossed(cp))
        return (ext.crossed.action.action == cp.action.action
                and ext.crossed.cocycle.sigma == cp.cocycle.sigma
                and ext.colinear)

    _timed(rep, "cleft.round_trip", "integral → crossed product recovers the "
           "action and cocycle exactly", round_trip)

    def maps_contained():
        h = ensure_hopf(cp.action.hopf)
        phi, psi = cleft_maps(cleft)
        coin = coinvariants(cleft.comodule_algebra)
        V = [h.carrier.basis_vector(i) for i in range(h.rank)]
        # J(A⊗V) inside Hom(H, A) with A the coinvariant coordinates
        a_rank = coin.rank
        gens = []
        ring = cp.ring
        for k in range(a_rank):
            for v in V:
                out = [ring.zero] * (a_rank * h.rank)
                for t in range(h.rank):
                    if v[t]:
                        out[k * h.rank + t] = v[t]
                gens.append(tuple(out))
        for col in range(phi.domain.rank):
            if submodule_membership(ring, gens, phi.column(col)) is None:
                return False
            if submodule_membership(ring, gens, psi.column(col)) is None:
                return False
        return True

    _timed(rep, "cleft.maps", "the integral compatibility maps land in "
           "J(A⊗V) for V = H*", maps_contained)

    def route_equality():
        h = ensure_hopf(cp.action.hopf)
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
        direct = duality_iso(cp, U, DiagramSide.RIGHT)
        ext = crossed_from_integral(cleft)
        from .linalg import kron

        transport = kron(ext.iso.inverse, LinearMap.identity(U.module))
        b_smash = right_smash(cleft.comodule_algebra, U)
        routed = LinearMap(b_smash.carrier, direct.map.codomain,
                           (direct.map @ transport).matrix)
        certify_algebra_iso(b_smash.product, direct.target, routed,
                            "cleft-route duality")
        # on a crossed-product payload the transport is the identity
        if isinstance(entry.payload, CrossedProductData):
            return routed == direct.map
        return True

    _timed(rep, "cleft.route", "the cleft-route duality isomorphism is "
           "certified and matches the direct route", route_equality)
    return rep


def run_opposite_suite(entry: CatalogEntry) -> ValidationReport:
    rep = ValidationReport(f"{entry.name}: opposite suite")
    cp = _crossed_of(entry)
    if cp is None:
        raise ValidationError("opposite suite needs crossed or cleft data")

    state = {}

    def tau_ok():
        res = opposite_crossed(cp)
        state["res"] = res
        return res.tau.flags.all_true

    _timed(rep, "opposite.tau", "τ = σ⁻¹∘(S̄⊗S̄) validates as an invertible "
           "normal cocycle with the twisted-module property", tau_ok)
    _timed(rep, "opposite.iso", "A#σH ≅ (A^op#τH^op)^op certified as a "
           "comodule-algebra isomorphism",
           lambda: state["res"].colinear if "res" in state else False)

    def chain_ok():
        h = ensure_hopf(cp.action.hopf)
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
        res = final_chain(cp, U)
        state["chain"] = res
        rep.extend(res.report)
        return res.report.ok

    _timed(rep, "opposite.chain", "the four-step chain through the opposite "
           "product composes to a certified duality isomorphism", chain_ok)
    return rep


_RUNNERS = {
    "hopf": run_hopf_suite,
    "crossed": run_crossed_suite,
    "smash": run_smash_suite,
    "duality": run_duality_suite,
    "cleft": run_cleft_suite,
    "opposite": run_opposite_suite,
}


def run_suite(entry: CatalogEntry, suite: str = "all") -> Report:
    """Execute one suite (or every applicable one) over an entry."""
    report = Report()
    allowed = applicable_suites(entry)
    if suite == "all":
        chosen = allowed
    else:
        if suite not in _RUNNERS:
            raise ValidationError(f"unknown suite {suite!r}")
        if suite not in allowed:
            raise ValidationError(
                f"suite {suite!r} is not applicable to entry {entry.name!r}")
        chosen = (suite,)
    for s in chosen:
        report.add_section(_RUNNERS[s](entry))
    return report
