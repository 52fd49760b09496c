"""Duality maps and theorem verifiers.

Two mirrored families are built from a crossed product A#_σH and U ⊆ H*:

* right side (needs the twisted antipode S̄): the pentagon with corners
  (A#_σH)#U, #(H,A#_σH), End_{-A}(H⊗A), A⊗(H#U) and maps α, γ, δ, π, ν, χ;
* op side (needs only S): the same shape with the barred maps and the corner
  End_{A-}(A⊗H), built from the opposite smash products.

One-sided-linear endomorphism spaces are materialized as free modules of
maps out of H: an element of End_{-A}(H⊗A) is determined by its values on
h⊗1 and is stored as a map H → H⊗A (rank(H)²·rank(A) coordinates); linearity
is built into the representation rather than checked.  The duality
isomorphism is constructed as χ⁻¹∘γ, exactly the map the commuting diagram
produces, so its multiplicativity is a theorem-test rather than a search.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .actions import (
    ComoduleAlgebraData,
    WeakActionData,
    regular_act_left,
    regular_act_right,
    regular_comodule,
)
from .catalog import ground_algebra
from .crossed import (
    CleftData,
    CrossedProductData,
    crossed_from_integral,
    opposite_crossed,
)
from .errors import (
    CommutativityFailure,
    DimensionMismatch,
    HypothesisFailed,
    NotInvertible,
    SideMismatch,
    ValidationError,
)
from .hopf import (
    AlgebraData,
    AlgebraIso,
    HopfData,
    HopfLike,
    bialgebra_of,
    certify_algebra_iso,
    endomorphism_algebra,
    ensure_hopf,
    matrix_algebra,
    opposite_hopf,
    tensor_algebra,
)
from .linalg import (
    FreeModule,
    LinearMap,
    determinant,
    dual_module,
    hom_module,
    invert_map,
    kron,
    kron_vec,
    solve_linear,
    submodule_membership,
    tensor_module,
    twist_map,
    vec_add,
    vec_scale,
)
from .reporting import ValidationReport
from .smash import (
    ModuleSide,
    SmashAlgebra,
    SubalgebraU,
    op_smash,
    right_smash,
)


class DiagramSide(Enum):
    RIGHT = "right"
    OP = "op"


class FunctionalSpan:
    """A bare spanning list of functionals on H, with none of the closure
    guarantees of :class:`SubalgebraU`.  Enough for the raw map builders
    (α, χ, λ, ρ) and for negative controls that need an invalid U."""

    def __init__(self, hopf: HopfLike, elements, side: ModuleSide = ModuleSide.RIGHT):
        b = bialgebra_of(hopf)
        ring = b.ring
        self.hopf = hopf
        self.side = side
        self.elements = tuple(tuple(ring.of(x) for x in v) for v in elements)
        self.module = FreeModule(ring, len(self.elements),
                                 tuple(f"v{i}" for i in range(len(self.elements))))

    @property
    def rank(self):
        return len(self.elements)

    def element(self, i: int):
        return self.elements[i]


# ---------------------------------------------------------------------------
# λ, ρ and the RL-condition


def lambda_map(hopf: HopfLike, U: SubalgebraU) -> LinearMap:
    """λ: H#U → End_R(H), h#g ↦ [k ↦ h·(g⇀k)] (right side)."""
    if U.side is not ModuleSide.RIGHT:
        raise SideMismatch("λ needs a right H-module subalgebra U")
    return _lambda_of_side(hopf, U, DiagramSide.RIGHT)


def lambda_bar_map(hopf: HopfLike, U: SubalgebraU) -> LinearMap:
    """λ̄: H#^opU → End_R(H), h#g ↦ [k ↦ (g⇀k)·h] (op side)."""
    if U.side is not ModuleSide.LEFT:
        raise SideMismatch("λ̄ needs a left H-module subalgebra U")
    return _lambda_of_side(hopf, U, DiagramSide.OP)


def _lambda_of_side(hopf: HopfLike, U: SubalgebraU, side: DiagramSide) -> LinearMap:
    b = bialgebra_of(hopf)
    ring = b.ring
    rH = b.rank
    end_mod = hom_module(b.carrier, b.carrier)
    dom = tensor_module(b.carrier, U.module)
    rU = U.rank
    cols = []
    for i in range(rH):
        h_i = b.carrier.basis_vector(i)
        for l in range(rU):
            out = [ring.zero] * end_mod.rank
            for t in range(rH):
                hit = _hit(b, U.element(l), t)
                if side is DiagramSide.RIGHT:
                    val = b.algebra.product(h_i, hit)
                else:
                    val = b.algebra.product(hit, h_i)
                for p, v in enumerate(val):
                    if (v):
                        out[p * rH + t] = ring.add(out[p * rH + t], v)
            cols.append(tuple(out))
    return LinearMap.from_columns(dom, end_mod, cols)


def _hit(b, f_vec, t: int):
    """f⇀k_t = Σ k₁ f(k₂) for a functional f on the bialgebra b."""
    ring = b.ring
    out = [ring.zero] * b.rank
    for c, (k1, k2) in b.coalgebra.sweedler_basis(t, 2):
        s = ring.mul(c, f_vec[k2])
        if (s):
            out[k1] = ring.add(out[k1], s)
    return tuple(out)


def rho_endo(hopf: HopfLike, g_vec) -> tuple:
    """ρ(g) = [k ↦ k↼g = Σ g(k₁)k₂] as an End_R(H) coordinate vector."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH = b.rank
    out = [ring.zero] * (rH * rH)
    for t in range(rH):
        for c, (k1, k2) in b.coalgebra.sweedler_basis(t, 2):
            s = ring.mul(c, g_vec[k1])
            if (s):
                out[k2 * rH + t] = ring.add(out[k2 * rH + t], s)
    return tuple(out)


@dataclass
class RLWitness:
    g: tuple
    pairs: tuple  # ((h_vec, g_vec), ...) with Σ h_j(g_j⇀k) = k↼g (right side)


@dataclass
class RLReport:
    side: DiagramSide
    witnesses: list
    failures: list

    @property
    def ok(self):
        return not self.failures


def rl_check(hopf: HopfLike, U: SubalgebraU, V, side: DiagramSide = DiagramSide.RIGHT) -> RLReport:
    """Solve λ(ξ) = ρ(g) over the H#U coordinate space for each g in V."""
    b = bialgebra_of(hopf)
    ring = b.ring
    lam = _lambda_of_side(hopf, U, side)
    witnesses, failures = [], []
    for g in V:
        g = tuple(ring.of(x) for x in g)
        res = solve_linear(lam, rho_endo(hopf, g))
        if not res.solvable:
            failures.append(g)
            continue
        pairs = []
        rU = U.rank
        for pos, c in enumerate(res.particular):
            if not (c):
                continue
            i, l = divmod(pos, rU)
            pairs.append((vec_scale(ring, c, b.carrier.basis_vector(i)),
                          U.element(l)))
        witnesses.append(RLWitness(g, tuple(pairs)))
    return RLReport(side, witnesses, failures)


# ---------------------------------------------------------------------------
# φ-maps: #(H,H) ↔ End_R(H)


def phi_maps(hopf: HopfLike, side: DiagramSide = DiagramSide.RIGHT):
    """Mutually inverse (φ₁, φ₂) between #(H,H) and End_R(H).

    Right: φ₁(f) = [h ↦ Σ f(h₂)h₁],  φ₂(g) = [k ↦ Σ g(k₂)S̄(k₁)].
    Op:    φ̄₁(f) = [h ↦ Σ h₁f(h₂)],  φ̄₂(g) = [k ↦ Σ S(k₁)g(k₂)].
    """
    h = ensure_hopf(hopf)
    b = h.bialgebra
    ring = b.ring
    rH = b.rank
    end_mod = hom_module(b.carrier, b.carrier)
    anti = h.twisted_antipode if side is DiagramSide.RIGHT else h.antipode

    def phi1_col(fi, fj):
        out = [ring.zero] * end_mod.rank
        for t in range(rH):
            val = b.carrier.zero_vector()
            for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                if t2 != fj:
                    continue
                term = (b.algebra.product(b.carrier.basis_vector(fi),
                                          b.carrier.basis_vector(t1))
                        if side is DiagramSide.RIGHT
                        else b.algebra.product(b.carrier.basis_vector(t1),
                                               b.carrier.basis_vector(fi)))
                val = vec_add(ring, val, vec_scale(ring, c, term))
            for p, v in enumerate(val):
                if (v):
                    out[p * rH + t] = ring.add(out[p * rH + t], v)
        return tuple(out)

    def phi2_col(gi, gj):
        out = [ring.zero] * end_mod.rank
        for t in range(rH):
            val = b.carrier.zero_vector()
            for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                if t2 != gj:
                    continue
                term = (b.algebra.product(b.carrier.basis_vector(gi),
                                          anti.column(t1))
                        if side is DiagramSide.RIGHT
                        else b.algebra.product(anti.column(t1),
                                               b.carrier.basis_vector(gi)))
                val = vec_add(ring, val, vec_scale(ring, c, term))
            for p, v in enumerate(val):
                if (v):
                    out[p * rH + t] = ring.add(out[p * rH + t], v)
        return tuple(out)

    cols1 = [phi1_col(i, j) for i in range(rH) for j in range(rH)]
    cols2 = [phi2_col(i, j) for i in range(rH) for j in range(rH)]
    phi1 = LinearMap.from_columns(end_mod, end_mod, cols1)
    phi2 = LinearMap.from_columns(end_mod, end_mod, cols2)
    ident = LinearMap.identity(end_mod)
    if phi1 @ phi2 != ident or phi2 @ phi1 != ident:
        raise ValidationError("φ₁ and φ₂ are not mutually inverse")
    _assert_phi_multiplicative(h, phi1, side)
    return phi1, phi2


def _assert_phi_multiplicative(h: HopfData, phi1: LinearMap, side: DiagramSide):
    """φ₁ is an algebra morphism #(H,H) → End(H) (resp. into End(H)^op)."""
    from .smash import hat_smash, op_hat_smash

    b = h.bialgebra
    source = (hat_smash(h, regular_comodule(h)) if side is DiagramSide.RIGHT
              else op_hat_smash(h, regular_comodule(h))).product
    end = endomorphism_algebra(b.carrier)
    target = end if side is DiagramSide.RIGHT else end.opposite()
    certify_algebra_iso(source, target, phi1, "φ₁")


# ---------------------------------------------------------------------------
# one-sided endomorphism representations


def end_rep_module(hopf: HopfLike, A: AlgebraData, side: DiagramSide) -> FreeModule:
    b = bialgebra_of(hopf)
    target = (tensor_module(b.carrier, A.carrier) if side is DiagramSide.RIGHT
              else tensor_module(A.carrier, b.carrier))
    return hom_module(b.carrier, target)


def end_rep_algebra(hopf: HopfLike, A: AlgebraData, side: DiagramSide) -> AlgebraData:
    """End_{-A}(H⊗A) (right) or End_{A-}(A⊗H) (op) under composition, on the
    values-at-(h⊗1) (resp. (1⊗h)) representation."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH, rA = b.rank, A.rank
    carrier = end_rep_module(hopf, A, side)
    n = carrier.rank
    cols = []
    for p in range(rH * rA):
        for q in range(rH):
            for r in range(rH * rA):
                for s in range(rH):
                    out = [ring.zero] * n
                    if side is DiagramSide.RIGHT:
                        ph, pa = divmod(p, rA)
                        rh, ra = divmod(r, rA)
                        if q == rh:
                            for t, c in A.basis_product(pa, ra):
                                out[(ph * rA + t) * rH + s] = c
                    else:
                        pa, ph = divmod(p, rH)
                        ra, rh = divmod(r, rH)
                        if q == rh:
                            for t, c in A.basis_product(ra, pa):
                                out[(t * rH + ph) * rH + s] = c
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    unit = [ring.zero] * n
    for i in range(rH):
        for a_idx, a_val in enumerate(A.unit):
            if not (a_val):
                continue
            if side is DiagramSide.RIGHT:
                unit[(i * rA + a_idx) * rH + i] = a_val
            else:
                unit[(a_idx * rH + i) * rH + i] = a_val
    return AlgebraData(carrier, mult, unit)


# ---------------------------------------------------------------------------
# ε-maps: Hom(H, A⊗H) ↔ one-sided endomorphisms


def epsilon_maps(hopf: HopfLike, A: AlgebraData,
                 side: DiagramSide = DiagramSide.RIGHT,
                 U: Optional[SubalgebraU] = None):
    """(ε, ε⁻¹) with both composites the identity, and χ = ε∘α as matrices.

    Right: ε(g)(k⊗1) = Σ τ(g(k₂))·(k₁⊗1),  ε⁻¹(F)(k) = Σ τ(F(k₂⊗1))·(1⊗S̄(k₁)).
    Op:    ε̄(g)(1⊗k) = Σ (1⊗k₁)·g(k₂),    ε̄⁻¹(F)(k) = Σ (1⊗S(k₁))·F(1⊗k₂).
    """
    h = ensure_hopf(hopf)
    b = h.bialgebra
    ring = b.ring
    rH, rA = b.rank, A.rank
    hom_src = hom_module(b.carrier, tensor_module(A.carrier, b.carrier))
    end_mod = end_rep_module(h, A, side)
    ha = tensor_algebra(b.algebra, A) if side is DiagramSide.RIGHT else None
    ah = tensor_algebra(A, b.algebra)
    sw_ah_to_ha = twist_map(A.carrier, b.carrier)  # A⊗H → H⊗A
    sw_ha_to_ah = twist_map(b.carrier, A.carrier)
    anti = h.twisted_antipode if side is DiagramSide.RIGHT else h.antipode

    eps_cols = []
    for gi in range(rA * rH):       # g = [h_gj ↦ (A⊗H) basis gi]
        for gj in range(rH):
            out = [ring.zero] * end_mod.rank
            g_val = tensor_module(A.carrier, b.carrier).basis_vector(gi)
            for t in range(rH):
                if side is DiagramSide.RIGHT:
                    acc = ha.carrier.zero_vector()
                    for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                        if t2 != gj:
                            continue
                        swapped = sw_ah_to_ha.apply(g_val)
                        k_embed = kron_vec(ring, b.carrier.basis_vector(t1), A.unit)
                        acc = vec_add(ring, acc,
                                      vec_scale(ring, c, ha.product(swapped, k_embed)))
                else:
                    acc = ah.carrier.zero_vector()
                    for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                        if t2 != gj:
                            continue
                        k_embed = kron_vec(ring, A.unit, b.carrier.basis_vector(t1))
                        acc = vec_add(ring, acc,
                                      vec_scale(ring, c, ah.product(k_embed, g_val)))
                for p, v in enumerate(acc):
                    if (v):
                        out[p * rH + t] = ring.add(out[p * rH + t], v)
            eps_cols.append(tuple(out))
    eps = LinearMap.from_columns(hom_src, end_mod, eps_cols)

    inv_cols = []
    target = (tensor_module(b.carrier, A.carrier) if side is DiagramSide.RIGHT
              else tensor_module(A.carrier, b.carrier))
    for fi in range(target.rank):   # F = [h_fj ↦ target basis fi]
        for fj in range(rH):
            out = [ring.zero] * hom_src.rank
            f_val = target.basis_vector(fi)
            for t in range(rH):
                acc = ah.carrier.zero_vector()
                for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                    if t2 != fj:
                        continue
                    if side is DiagramSide.RIGHT:
                        swapped = sw_ha_to_ah.apply(f_val)
                        tail = kron_vec(ring, A.unit, anti.column(t1))
                        acc = vec_add(ring, acc,
                                      vec_scale(ring, c, ah.product(swapped, tail)))
                    else:
                        head = kron_vec(ring, A.unit, anti.column(t1))
                        acc = vec_add(ring, acc,
                                      vec_scale(ring, c, ah.product(head, f_val)))
                for p, v in enumerate(acc):
                    if (v):
                        out[p * rH + t] = ring.add(out[p * rH + t], v)
            inv_cols.append(tuple(out))
    eps_inv = LinearMap.from_columns(end_mod, hom_src, inv_cols)

    if eps @ eps_inv != LinearMap.identity(end_mod) or \
            eps_inv @ eps != LinearMap.identity(hom_src):
        raise ValidationError("ε and ε⁻¹ are not mutually inverse")
    if U is None:
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT if side is DiagramSide.RIGHT
                                  else ModuleSide.LEFT)
    if (eps @ alpha_map(h, A, U)) != chi_map(h, A, U, side):
        raise ValidationError("χ ≠ ε∘α")
    return eps, eps_inv


def alpha_map(hopf: HopfLike, A: AlgebraData, U: SubalgebraU) -> LinearMap:
    """α: (A⊗H)⊗U → Hom(H, A⊗H), a⊗h⊗f ↦ [k ↦ (a⊗h)f(k)]."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH, rA, rU = b.rank, A.rank, U.rank
    ah = tensor_module(A.carrier, b.carrier)
    dom = tensor_module(ah, U.module)
    cod = hom_module(b.carrier, ah)
    cols = []
    for p in range(ah.rank):
        for l in range(rU):
            out = [ring.zero] * cod.rank
            f = U.element(l)
            for t in range(rH):
                if (f[t]):
                    out[p * rH + t] = f[t]
            cols.append(tuple(out))
    return LinearMap.from_columns(dom, cod, cols)


def chi_map(hopf: HopfLike, A: AlgebraData, U: SubalgebraU,
            side: DiagramSide = DiagramSide.RIGHT) -> LinearMap:
    """χ(a⊗(h#f)) = [k⊗ã ↦ h(f⇀k)⊗aã] (right) or [ã⊗k ↦ ãa⊗(f⇀k)h] (op),
    on the one-sided representation."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH, rA, rU = b.rank, A.rank, U.rank
    dom = tensor_module(A.carrier, tensor_module(b.carrier, U.module))
    cod = end_rep_module(hopf, A, side)
    cols = []
    for i in range(rA):
        for j in range(rH):
            h_j = b.carrier.basis_vector(j)
            for l in range(rU):
                out = [ring.zero] * cod.rank
                for t in range(rH):
                    hit = _hit(b, U.element(l), t)
                    hpart = (b.algebra.product(h_j, hit)
                             if side is DiagramSide.RIGHT
                             else b.algebra.product(hit, h_j))
                    for p, v in enumerate(hpart):
                        if not (v):
                            continue
                        if side is DiagramSide.RIGHT:
                            pos = (p * rA + i) * rH + t
                        else:
                            pos = (i * rH + p) * rH + t
                        out[pos] = ring.add(out[pos], v)
                cols.append(tuple(out))
    return LinearMap.from_columns(dom, cod, cols)


# ---------------------------------------------------------------------------
# the commuting diagram


@dataclass
class DualityDiagram:
    side: DiagramSide
    smash_source: SmashAlgebra          # (A#_σH)#U  or  (A#_σH)#^opU
    tensor_target: AlgebraData          # A⊗(H#U)    or  A⊗(H#^opU)
    alpha: LinearMap
    gamma: LinearMap
    delta: LinearMap
    pi: LinearMap
    nu: LinearMap
    chi: LinearMap
    pi_order: str = "g_left"


def nu_map(cp: CrossedProductData) -> LinearMap:
    """ν: A#_σH → H⊗A, a#h ↦ Σ h₄ ⊗ [S̄(h₃)a]σ(S̄(h₂)⊗h₁)."""
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH, rA = b.rank, A.rank
    Sb = h.twisted_antipode
    sigma = cp.cocycle.sigma
    cod = tensor_module(b.carrier, A.carrier)
    cols = []
    for i in range(rA):
        a_i = A.carrier.basis_vector(i)
        for j in range(rH):
            out = [ring.zero] * cod.rank
            for c, (h1, h2, h3, h4) in b.coalgebra.sweedler_basis(j, 4):
                acted = cp.action.act(Sb.column(h3), a_i)
                sig = sigma.apply(kron_vec(ring, Sb.column(h2),
                                           b.carrier.basis_vector(h1)))
                apart = A.product(acted, sig)
                for aidx, av in enumerate(apart):
                    if not (av):
                        continue
                    pos = h4 * rA + aidx
                    out[pos] = ring.add(out[pos], ring.mul(c, av))
            cols.append(tuple(out))
    return LinearMap.from_columns(cp.carrier, cod, cols)


def gamma_map(cp: CrossedProductData, U: SubalgebraU,
              side: DiagramSide) -> LinearMap:
    """γ((a#h)#f) on the one-sided representation.

    Right: (k⊗1) ↦ Σ h₄(f⇀k₃) ⊗ [S̄(h₃k₂)a]σ(S̄(h₂k₁)⊗h₁)
    Op:    (1⊗k) ↦ Σ [k₁a]σ(k₂⊗h₁) ⊗ (f⇀k₃)h₂
    """
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH, rA, rU = b.rank, A.rank, U.rank
    sigma = cp.cocycle.sigma
    dom = tensor_module(cp.carrier, U.module)
    cod = end_rep_module(h, A, side)
    Sb = h.twisted_antipode
    cols = []
    for i in range(rA):
        a_i = A.carrier.basis_vector(i)
        for j in range(rH):
            for l in range(rU):
                f = U.element(l)
                out = [ring.zero] * cod.rank
                for t in range(rH):
                    if side is DiagramSide.RIGHT:
                        for ch, (h1, h2, h3, h4) in b.coalgebra.sweedler_basis(j, 4):
                            for ck, (k1, k2, k3, k4) in b.coalgebra.sweedler_basis(t, 4):
                                c = ring.mul(ring.mul(ch, ck), f[k4])
                                if not (c):
                                    continue
                                hpart = b.algebra.product(
                                    b.carrier.basis_vector(h4),
                                    b.carrier.basis_vector(k3))
                                h3k2 = b.algebra.product(
                                    b.carrier.basis_vector(h3),
                                    b.carrier.basis_vector(k2))
                                h2k1 = b.algebra.product(
                                    b.carrier.basis_vector(h2),
                                    b.carrier.basis_vector(k1))
                                acted = cp.action.act(Sb.apply(h3k2), a_i)
                                sig = sigma.apply(kron_vec(
                                    ring, Sb.apply(h2k1),
                                    b.carrier.basis_vector(h1)))
                                apart = A.product(acted, sig)
                                _scatter(out, ring, c, hpart, apart, rA, rH, t,
                                         h_first=True)
                    else:
                        for ch, (h1, h2) in b.coalgebra.sweedler_basis(j, 2):
                            for ck, (k1, k2, k3, k4) in b.coalgebra.sweedler_basis(t, 4):
                                c = ring.mul(ring.mul(ch, ck), f[k4])
                                if not (c):
                                    continue
                                acted = cp.action.act_basis(k1, a_i)
                                sig = sigma.apply(kron_vec(
                                    ring, b.carrier.basis_vector(k2),
                                    b.carrier.basis_vector(h1)))
                                apart = A.product(acted, sig)
                                hpart = b.algebra.product(
                                    b.carrier.basis_vector(k3),
                                    b.carrier.basis_vector(h2))
                                _scatter(out, ring, c, hpart, apart, rA, rH, t,
                                         h_first=False)
                cols.append(tuple(out))
    return LinearMap.from_columns(dom, cod, cols)


def _scatter(out, ring, c, hpart, apart, rA, rH, t, h_first):
    for hp, hv in enumerate(hpart):
        if not (hv):
            continue
        for ap, av in enumerate(apart):
            if not (av):
                continue
            val = ring.mul(c, ring.mul(hv, av))
            pos = ((hp * rA + ap) if h_first else (ap * rH + hp)) * rH + t
            out[pos] = ring.add(out[pos], val)


def delta_map(cp: CrossedProductData, U: SubalgebraU,
              side: DiagramSide) -> LinearMap:
    """δ(a⊗(h#f)) ∈ Hom(H, A#_σH) by direct Sweedler expansion.

    Right: k ↦ Σ σ⁻¹(h₂k₄⊗S̄(h₁k₃))[(h₃k₅)a]σ(h₄k₆⊗S̄(k₂)) # h₅(f⇀k₇)S̄(k₁)
    Op:    k ↦ Σ σ⁻¹(S(k₄)⊗k₅)[S(k₃)a]σ(S(k₂)⊗k₆h₁) # S(k₁)(f⇀k₇)h₂
    """
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH, rA, rU = b.rank, A.rank, U.rank
    sigma, sigma_inv = cp.cocycle.sigma, cp.cocycle.sigma_inv
    Sb, S = h.twisted_antipode, h.antipode
    dom = tensor_module(A.carrier, tensor_module(b.carrier, U.module))
    cod = hom_module(b.carrier, cp.carrier)
    halg = b.algebra
    basis = b.carrier.basis_vector
    cols = []
    for i in range(rA):
        a_i = A.carrier.basis_vector(i)
        for j in range(rH):
            for l in range(rU):
                f = U.element(l)
                out = [ring.zero] * cod.rank
                for t in range(rH):
                    for ck, klegs in b.coalgebra.sweedler_basis(t, 8):
                        k1, k2, k3, k4, k5, k6, k7, k8 = klegs
                        cf = ring.mul(ck, f[k8])
                        if not (cf):
                            continue
                        if side is DiagramSide.RIGHT:
                            for ch, hlegs in b.coalgebra.sweedler_basis(j, 5):
                                h1, h2, h3, h4, h5 = hlegs
                                c = ring.mul(cf, ch)
                                s1 = sigma_inv.apply(kron_vec(
                                    ring, halg.product(basis(h2), basis(k4)),
                                    Sb.apply(halg.product(basis(h1), basis(k3)))))
                                acted = cp.action.act(
                                    halg.product(basis(h3), basis(k5)), a_i)
                                s2 = sigma.apply(kron_vec(
                                    ring, halg.product(basis(h4), basis(k6)),
                                    Sb.column(k2)))
                                apart = A.product(A.product(s1, acted), s2)
                                hpart = halg.product(
                                    halg.product(basis(h5), basis(k7)),
                                    Sb.column(k1))
                                _scatter_hom(out, ring, c, apart, hpart, rH, t)
                        else:
                            for ch, (h1, h2) in b.coalgebra.sweedler_basis(j, 2):
                                c = ring.mul(cf, ch)
                                s1 = sigma_inv.apply(kron_vec(
                                    ring, S.column(k4), basis(k5)))
                                acted = cp.action.act(S.column(k3), a_i)
                                s2 = sigma.apply(kron_vec(
                                    ring, S.column(k2),
                                    halg.product(basis(k6), basis(h1))))
                                apart = A.product(A.product(s1, acted), s2)
                                hpart = halg.product(
                                    halg.product(S.column(k1), basis(k7)),
                                    basis(h2))
                                _scatter_hom(out, ring, c, apart, hpart, rH, t)
                cols.append(tuple(out))
    return LinearMap.from_columns(dom, cod, cols)


def _scatter_hom(out, ring, c, apart, hpart, rH, t):
    # B = A⊗H flattening inside Hom(H, B): position ((a·rH + h)·rH + t)
    for ap, av in enumerate(apart):
        if not (av):
            continue
        for hp, hv in enumerate(hpart):
            if not (hv):
                continue
            pos = (ap * rH + hp) * rH + t
            out[pos] = ring.add(out[pos], ring.mul(c, ring.mul(av, hv)))


def pi_map(cp: CrossedProductData, side: DiagramSide,
           pi_order: str = "g_left") -> LinearMap:
    """π: Hom(H, A#_σH) → one-sided endomorphisms.

    Right: π(g)(k⊗1) = Σ ν( g(k₅)·(σ⁻¹(k₂⊗S̄(k₁))(k₃⇀1)#k₄) ) with the
    displayed product order ambiguous; ``pi_order`` places g(k₅) on the left
    ("g_left", the order under which the diagram commutes) or right.
    Op: π̄(g)(1⊗k) = Σ (1#k₁)·g(k₂).
    """
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH, rA = b.rank, A.rank
    B = cp.product_algebra
    dom = hom_module(b.carrier, cp.carrier)
    cod = end_rep_module(h, A, side)
    basis = b.carrier.basis_vector
    cols = []
    if side is DiagramSide.RIGHT:
        nu = nu_map(cp)
        Sb = h.twisted_antipode
        sigma_inv = cp.cocycle.sigma_inv
        for gi in range(cp.carrier.rank):   # g = [h_gj ↦ B basis gi]
            for gj in range(rH):
                out = [ring.zero] * cod.rank
                g_val = cp.carrier.basis_vector(gi)
                for t in range(rH):
                    acc = cod.zero_vector()
                    total = tensor_module(b.carrier, A.carrier).zero_vector()
                    for c, (k1, k2, k3, k4, k5) in b.coalgebra.sweedler_basis(t, 5):
                        if k5 != gj:
                            continue
                        s = sigma_inv.apply(kron_vec(ring, basis(k2),
                                                     Sb.column(k1)))
                        acted = cp.action.act_basis(k3, A.unit)
                        apart = A.product(s, acted)
                        elem = kron_vec(ring, apart, basis(k4))
                        prod = (B.product(g_val, elem) if pi_order == "g_left"
                                else B.product(elem, g_val))
                        total = vec_add(ring, total,
                                        vec_scale(ring, c, nu.apply(prod)))
                    for p, v in enumerate(total):
                        if (v):
                            out[p * rH + t] = ring.add(out[p * rH + t], v)
                cols.append(tuple(out))
    else:
        for gi in range(cp.carrier.rank):
            for gj in range(rH):
                out = [ring.zero] * cod.rank
                g_val = cp.carrier.basis_vector(gi)
                for t in range(rH):
                    total = cp.carrier.zero_vector()
                    for c, (k1, k2) in b.coalgebra.sweedler_basis(t, 2):
                        if k2 != gj:
                            continue
                        one_k = kron_vec(ring, A.unit, basis(k1))
                        total = vec_add(ring, total,
                                        vec_scale(ring, c,
                                                  B.product(one_k, g_val)))
                    for p, v in enumerate(total):
                        if (v):
                            out[p * rH + t] = ring.add(out[p * rH + t], v)
                cols.append(tuple(out))
    return LinearMap.from_columns(dom, cod, cols)


def build_diagram(cp: CrossedProductData, U: SubalgebraU, side: DiagramSide,
                  pi_order: str = "g_left") -> DualityDiagram:
    """Materialize all five corners and maps; assert π∘α = γ, π∘δ = χ and
    that π is invertible."""
    h = ensure_hopf(cp.action.hopf)
    A = cp.action.algebra
    if side is DiagramSide.RIGHT:
        if U.side is not ModuleSide.RIGHT:
            raise SideMismatch("right diagram needs a right-side U")
        p1 = right_smash(cp.comodule, U)
        h_smash = right_smash(regular_comodule(h), U)
    else:
        if U.side is not ModuleSide.LEFT:
            raise SideMismatch("op diagram needs a left-side U")
        p1 = op_smash(cp.comodule, U)
        h_smash = op_smash(regular_comodule(h), U)
    p4 = tensor_algebra(A, h_smash.product)
    alpha = alpha_map(h, A, U)
    gamma = gamma_map(cp, U, side)
    delta = delta_map(cp, U, side)
    pi = pi_map(cp, side, pi_order)
    nu = nu_map(cp) if side is DiagramSide.RIGHT else LinearMap.identity(cp.carrier)
    chi = chi_map(h, A, U, side)
    lhs1 = pi @ alpha
    if lhs1 != gamma:
        raise CommutativityFailure("π∘α ≠ γ",
                                   witness=_diff_witness(lhs1, gamma, p1.carrier))
    lhs2 = pi @ delta
    if lhs2 != chi:
        raise CommutativityFailure("π∘δ ≠ χ",
                                   witness=_diff_witness(lhs2, chi, p4.carrier))
    det = determinant(pi)
    if not cp.ring.is_unit(det):
        raise NotInvertible("π is not invertible", determinant=det)
    return DualityDiagram(side, p1, p4, alpha, gamma, delta, pi, nu, chi, pi_order)


def _diff_witness(a: LinearMap, b: LinearMap, module: FreeModule):
    for j in range(a.domain.rank):
        if a.column(j) != b.column(j):
            if j < module.rank:
                return module.labels[j]
            return f"column {j}"
    return None


def duality_iso(cp: CrossedProductData, U: SubalgebraU, side: DiagramSide,
                diagram: Optional[DualityDiagram] = None,
                pi_order: str = "g_left") -> AlgebraIso:
    """The certified isomorphism χ⁻¹∘γ: (A#_σH)#U → A⊗(H#U) (resp. op)."""
    if diagram is None:
        diagram = build_diagram(cp, U, side, pi_order)
    chi_inv = invert_map(diagram.chi)
    iso_map = chi_inv @ diagram.gamma
    name = ("(A#σH)#U ≅ A⊗(H#U)" if side is DiagramSide.RIGHT
            else "(A#σH)#opU ≅ A⊗(H#opU)")
    return certify_algebra_iso(diagram.smash_source.product,
                               diagram.tensor_target, iso_map, name)


# ---------------------------------------------------------------------------
# matrix form


@dataclass
class MatrixIsoResult:
    iso: AlgebraIso
    legs: list
    n: int
    matrix_target: AlgebraData


def matrix_iso(cp: CrossedProductData) -> MatrixIsoResult:
    """(A#_σH)#H* ≅ A⊗(H#H*) ≅ A⊗End(H) ≅ A⊗M_n(R) ≅ M_n(A), each leg
    certified; M_n(A) is materialized as M_n(R)⊗A."""
    h = ensure_hopf(cp.action.hopf)
    A = cp.action.algebra
    ring = cp.ring
    n = h.rank
    U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
    diagram = build_diagram(cp, U, DiagramSide.RIGHT)
    leg1 = duality_iso(cp, U, DiagramSide.RIGHT, diagram)
    # A⊗(H#U) → A⊗End(H) via id⊗λ
    lam = lambda_map(h, U)
    det = determinant(lam)
    if not ring.is_unit(det):
        raise NotInvertible("λ is not invertible for this U", determinant=det)
    end_alg = endomorphism_algebra(h.carrier)
    a_end = tensor_algebra(A, end_alg)
    leg2_map = kron(LinearMap.identity(A.carrier), lam)
    leg2_map = LinearMap(leg1.target.carrier, a_end.carrier, leg2_map.matrix)
    leg2 = certify_algebra_iso(leg1.target, a_end, leg2_map, "id⊗λ")
    # A⊗End(H) = A⊗M_n(R) bit-identically
    mat = matrix_algebra(ring, n)
    a_mat = tensor_algebra(A, mat)
    if a_end.mult != a_mat.mult or a_end.unit != a_mat.unit:
        raise ValidationError("End(H) and M_n(R) structure constants differ")
    leg3 = AlgebraIso(a_end, a_mat, LinearMap.identity(a_mat.carrier),
                      LinearMap.identity(a_mat.carrier))
    # A⊗M_n(R) ≅ M_n(R)⊗A via the twist
    mat_a = tensor_algebra(mat, A)
    sw = twist_map(A.carrier, mat.carrier)
    sw = LinearMap(a_mat.carrier, mat_a.carrier, sw.matrix)
    leg4 = certify_algebra_iso(a_mat, mat_a, sw, "A⊗M_n ≅ M_n(A)")
    iso = leg4.compose(leg3.compose(leg2.compose(leg1)))
    if iso.map.codomain.rank != n * n * A.rank:
        raise DimensionMismatch("matrix image has unexpected rank")
    return MatrixIsoResult(iso, [leg1, leg2, leg3, leg4], n, mat_a)


# ---------------------------------------------------------------------------
# compatibility of (V, U)


@dataclass
class CompatReport:
    side: DiagramSide
    phi_contained: bool
    psi_contained: bool
    phi_witness: Optional[str]
    psi_witness: Optional[str]
    rl: RLReport

    @property
    def ok(self):
        return self.phi_contained and self.psi_contained and self.rl.ok


def compat_maps(cp: CrossedProductData, side: DiagramSide):
    """φ, ψ: H⊗A → Hom(H, A) (right side; barred versions on the op side)."""
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH, rA = b.rank, A.rank
    sigma, sigma_inv = cp.cocycle.sigma, cp.cocycle.sigma_inv
    Sb, S = h.twisted_antipode, h.antipode
    basis = b.carrier.basis_vector
    halg = b.algebra
    dom = tensor_module(b.carrier, A.carrier)
    cod = hom_module(b.carrier, A.carrier)
    phi_cols, psi_cols = [], []
    for i in range(rH):
        for j in range(rA):
            a_j = A.carrier.basis_vector(j)
            phi_out = [ring.zero] * cod.rank
            psi_out = [ring.zero] * cod.rank
            for t in range(rH):
                if side is DiagramSide.RIGHT:
                    # φ(h⊗a)(h̃) = Σ [S̄(h̃₂)a]σ(S̄(h̃₁)⊗h)
                    val = A.carrier.zero_vector()
                    for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                        acted = cp.action.act(Sb.column(t2), a_j)
                        sig = sigma.apply(kron_vec(ring, Sb.column(t1), basis(i)))
                        val = vec_add(ring, val,
                                      vec_scale(ring, c, A.product(acted, sig)))
                    _hom_scatter(phi_out, ring, val, rH, t)
                    # ψ(h⊗a)(h̃) = Σ σ⁻¹(h̃₃⊗S̄(h̃₂))[h̃₄a]σ(h̃₅⊗S̄(h̃₁)h)
                    val = A.carrier.zero_vector()
                    for c, legs in b.coalgebra.sweedler_basis(t, 5):
                        t1, t2, t3, t4, t5 = legs
                        s1 = sigma_inv.apply(kron_vec(ring, basis(t3),
                                                      Sb.column(t2)))
                        acted = cp.action.act_basis(t4, a_j)
                        s2 = sigma.apply(kron_vec(
                            ring, basis(t5),
                            halg.product(Sb.column(t1), basis(i))))
                        val = vec_add(ring, val, vec_scale(
                            ring, c, A.product(A.product(s1, acted), s2)))
                    _hom_scatter(psi_out, ring, val, rH, t)
                else:
                    # φ̄(h⊗a)(h̃) = Σ [h̃₁a]σ(h̃₂⊗h)
                    val = A.carrier.zero_vector()
                    for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                        acted = cp.action.act_basis(t1, a_j)
                        sig = sigma.apply(kron_vec(ring, basis(t2), basis(i)))
                        val = vec_add(ring, val,
                                      vec_scale(ring, c, A.product(acted, sig)))
                    _hom_scatter(phi_out, ring, val, rH, t)
                    # ψ̄(h⊗a)(h̃) = Σ σ⁻¹(S(h̃₃)⊗h̃₄)[S(h̃₂)a]σ(S(h̃₁)⊗h̃₅h)
                    val = A.carrier.zero_vector()
                    for c, legs in b.coalgebra.sweedler_basis(t, 5):
                        t1, t2, t3, t4, t5 = legs
                        s1 = sigma_inv.apply(kron_vec(ring, S.column(t3),
                                                      basis(t4)))
                        acted = cp.action.act(S.column(t2), a_j)
                        s2 = sigma.apply(kron_vec(
                            ring, S.column(t1),
                            halg.product(basis(t5), basis(i))))
                        val = vec_add(ring, val, vec_scale(
                            ring, c, A.product(A.product(s1, acted), s2)))
                    _hom_scatter(psi_out, ring, val, rH, t)
            phi_cols.append(tuple(phi_out))
            psi_cols.append(tuple(psi_out))
    phi = LinearMap.from_columns(dom, cod, phi_cols)
    psi = LinearMap.from_columns(dom, cod, psi_cols)
    return phi, psi


def _hom_scatter(out, ring, val, rH, t):
    for p, v in enumerate(val):
        if (v):
            out[p * rH + t] = ring.add(out[p * rH + t], v)


def j_generators(A: AlgebraData, V, rH: int):
    """Generators J(a_k ⊗ v): h ↦ a_k·v(h) of J(A⊗V) ⊆ Hom(H, A)."""
    ring = A.ring
    gens = []
    for k in range(A.rank):
        for v in V:
            out = [ring.zero] * (A.rank * rH)
            for t in range(rH):
                if (v[t]):
                    out[k * rH + t] = v[t]
            gens.append(tuple(out))
    return gens


def compat_check(cp: CrossedProductData, U: SubalgebraU, V,
                 side: DiagramSide = DiagramSide.RIGHT) -> CompatReport:
    """(V,U) compatibility: φ(H⊗A), ψ(H⊗A) ⊆ J(A⊗V) and the RL-condition."""
    h = ensure_hopf(cp.action.hopf)
    b = h.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    phi, psi = compat_maps(cp, side)
    gens = j_generators(A, [tuple(ring.of(x) for x in v) for v in V], b.rank)
    phi_ok, psi_ok = True, True
    phi_wit = psi_wit = None
    for col in range(phi.domain.rank):
        if submodule_membership(ring, gens, phi.column(col)) is None:
            phi_ok = False
            phi_wit = _pair_label(b, A, col)
            break
    for col in range(psi.domain.rank):
        if submodule_membership(ring, gens, psi.column(col)) is None:
            psi_ok = False
            psi_wit = _pair_label(b, A, col)
            break
    rl = rl_check(h, U, V, side)
    return CompatReport(side, phi_ok, psi_ok, phi_wit, psi_wit, rl)


def _pair_label(b, A, col):
    i, j = divmod(col, A.rank)
    return f"({b.carrier.labels[i]},{A.carrier.labels[j]})"


# ---------------------------------------------------------------------------
# the coactions υ and ω on the dual


class CoactionSide(Enum):
    UPSILON = "upsilon"
    OMEGA = "omega"


@dataclass
class CoactionTable:
    side: CoactionSide
    rows: tuple            # per dual basis element: its image in H⊗H*
    map: LinearMap         # H* → H⊗H*
    report: ValidationReport


def coaction_table(hopf: HopfLike, side: CoactionSide) -> CoactionTable:
    """For each basis f of H* solve the characterizing identity for
    Σ f₍₋₁₎⊗f₍₀₎ (unique at finite rank) and verify the structure identities.

    Upsilon: Σ h₃S̄(h₁)f(h₂) = Σ f₍₋₁₎·f₍₀₎(h)
    Omega:   Σ f(h₂)S(h₁)h₃ = Σ f₍₋₁₎·f₍₀₎(h)
    """
    h = ensure_hopf(hopf)
    b = h.bialgebra
    ring = b.ring
    rH = b.rank
    S, Sb = h.antipode, h.twisted_antipode
    basis = b.carrier.basis_vector
    rows = []
    for i in range(rH):
        # L(h_t) = Σ h₃S̄(h₁)f(h₂)  resp.  Σ S(h₁)h₃·f(h₂); the canonical map
        # H⊗H* → End(H) is the identity on our flattenings, so the solution
        # exists and is unique outright.
        vec = [ring.zero] * (rH * rH)
        for t in range(rH):
            acc = b.carrier.zero_vector()
            for c, (h1, h2, h3) in b.coalgebra.sweedler_basis(t, 3):
                if h2 != i:
                    continue
                term = (b.algebra.product(basis(h3), Sb.column(h1))
                        if side is CoactionSide.UPSILON
                        else b.algebra.product(S.column(h1), basis(h3)))
                acc = vec_add(ring, acc, vec_scale(ring, c, term))
            for p, v in enumerate(acc):
                if (v):
                    vec[p * rH + t] = ring.add(vec[p * rH + t], v)
        rows.append(tuple(vec))
    Hd = dual_module(b.carrier)
    cmap = LinearMap.from_columns(Hd, tensor_module(b.carrier, Hd), rows)
    rep = _coaction_checks(h, side, rows, cmap)
    return CoactionTable(side, tuple(rows), cmap, rep)


def _coaction_checks(h: HopfData, side: CoactionSide, rows, cmap) -> ValidationReport:
    from .hopf import ConvolutionAlgebra

    b = h.bialgebra
    ring = b.ring
    rH = b.rank
    rep = ValidationReport(f"coaction table ({side.value})")
    dual_alg = ConvolutionAlgebra(b.coalgebra, ground_algebra(ring)).algebra()
    basis = b.carrier.basis_vector
    S, Sb = h.antipode, h.twisted_antipode
    tag = "upsilon" if side is CoactionSide.UPSILON else "omega"

    def terms(i):
        out = []
        for pos, c in enumerate(rows[i]):
            if (c):
                p, q = divmod(pos, rH)
                out.append((c, p, q))
        return out

    # (1-a)
    ok = True
    wit = None
    for i in range(rH):
        f = Hd_basis(b, i)
        for gidx in range(rH):
            g = Hd_basis(b, gidx)
            lhs = dual_alg.product(f, g)
            rhs = (ring.zero,) * rH
            for c, p, q in terms(i):
                moved = (regular_act_right(h, g, basis(p))
                         if side is CoactionSide.UPSILON
                         else regular_act_left(h, basis(p), g))
                rhs = vec_add(ring, rhs, vec_scale(
                    ring, c, dual_alg.product(moved, Hd_basis(b, q))))
            if lhs != rhs:
                ok, wit = False, f"(f{i},g{gidx})"
                break
        if not ok:
            break
    rep.add(f"{tag}.1a", "f⋆g matches the coaction expansion for all basis pairs",
            ok, wit)

    # (1-b): h↼f = Σ f₍₋₁₎(f₍₀₎⇀h) (upsilon) or Σ (f₍₀₎⇀h)f₍₋₁₎ (omega)
    ok = True
    wit = None
    for i in range(rH):
        f = Hd_basis(b, i)
        for t in range(rH):
            lhs = b.carrier.zero_vector()
            for c, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                lhs = vec_add(ring, lhs,
                              vec_scale(ring, ring.mul(c, f[t1]), basis(t2)))
            rhs = b.carrier.zero_vector()
            for c, p, q in terms(i):
                hit = _hit(b, Hd_basis(b, q), t)
                term = (b.algebra.product(basis(p), hit)
                        if side is CoactionSide.UPSILON
                        else b.algebra.product(hit, basis(p)))
                rhs = vec_add(ring, rhs, vec_scale(ring, c, term))
            if lhs != rhs:
                ok, wit = False, f"(f{i},h{t})"
                break
        if not ok:
            break
    rep.add(f"{tag}.1b", "h↼f matches the coaction expansion on all basis elements",
            ok, wit)

    # (1-c): the defining identity, recomputed
    ok = True
    wit = None
    for i in range(rH):
        for t in range(rH):
            lhs = b.carrier.zero_vector()
            for c, (h1, h2, h3) in b.coalgebra.sweedler_basis(t, 3):
                if h2 != i:
                    continue
                term = (b.algebra.product(basis(h3), Sb.column(h1))
                        if side is CoactionSide.UPSILON
                        else b.algebra.product(S.column(h1), basis(h3)))
                lhs = vec_add(ring, lhs, vec_scale(ring, c, term))
            rhs = b.carrier.zero_vector()
            for c, p, q in terms(i):
                rhs = vec_add(ring, rhs,
                              vec_scale(ring, ring.mul(c, Hd_basis(b, q)[t]),
                                        basis(p)))
            if lhs != rhs:
                ok, wit = False, f"(f{i},h{t})"
                break
        if not ok:
            break
    rep.add(f"{tag}.1c", "the characterizing identity holds", ok, wit)

    # (3)
    ok = True
    wit = None
    if side is CoactionSide.UPSILON:
        # (f⋆f̃)⋆g = Σ (g·(f̃₍₋₁₎f₍₋₁₎)) ⋆ (f₍₀₎⋆f̃₍₀₎)
        for i in range(rH):
            for j in range(rH):
                for gidx in range(rH):
                    g = Hd_basis(b, gidx)
                    lhs = dual_alg.product(
                        dual_alg.product(Hd_basis(b, i), Hd_basis(b, j)), g)
                    rhs = (ring.zero,) * rH
                    for ci, p1, q1 in terms(i):
                        for cj, p2, q2 in terms(j):
                            c = ring.mul(ci, cj)
                            prod = b.algebra.product(basis(p2), basis(p1))
                            moved = regular_act_right(h, g, prod)
                            inner = dual_alg.product(Hd_basis(b, q1),
                                                     Hd_basis(b, q2))
                            rhs = vec_add(ring, rhs, vec_scale(
                                ring, c, dual_alg.product(moved, inner)))
                    if lhs != rhs:
                        ok, wit = False, f"(f{i},f{j},g{gidx})"
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add(f"{tag}.3", "(f⋆f̃)⋆g matches the double-coaction expansion",
                ok, wit)
    else:
        # ω is an algebra morphism into H⊗H*
        dual_mod = dual_module(b.carrier)
        hd_alg = dual_alg
        hhd = tensor_algebra(b.algebra, hd_alg)
        lhs = cmap @ hd_alg.mult
        rhs = hhd.mult @ kron(cmap, cmap)
        ok = lhs == rhs
        eps_vec = tuple(b.coalgebra.counit.matrix[0])
        unit_ok = cmap.apply(eps_vec) == kron_vec(ring, b.algebra.unit, eps_vec)
        rep.add(f"{tag}.3", "the coaction is an algebra morphism (H^ω is a "
                "left H-comodule algebra)", ok and unit_ok,
                None if ok and unit_ok else "multiplicativity")

    # (4): the right/left H-module formula
    ok = True
    wit = None
    for i in range(rH):
        f = Hd_basis(b, i)
        for t in range(rH):
            hvec = basis(t)
            if side is CoactionSide.UPSILON:
                moved = regular_act_right(h, f, hvec)
            else:
                moved = regular_act_left(h, hvec, f)
            lhs = cmap.apply(moved)
            rhs = (ring.zero,) * (rH * rH)
            for c, (h1, h2, h3) in b.coalgebra.sweedler_basis(t, 3):
                for cc, p, q in terms(i):
                    s = ring.mul(c, cc)
                    if side is CoactionSide.UPSILON:
                        # S̄(h₃)f₍₋₁₎h₁ ⊗ f₍₀₎h₂
                        hpart = b.algebra.product(
                            b.algebra.product(Sb.column(h3), basis(p)), basis(h1))
                        fpart = regular_act_right(h, Hd_basis(b, q), basis(h2))
                    else:
                        # h₁f₍₋₁₎S(h₃) ⊗ h₂f₍₀₎
                        hpart = b.algebra.product(
                            b.algebra.product(basis(h1), basis(p)), S.column(h3))
                        fpart = regular_act_left(h, basis(h2), Hd_basis(b, q))
                    rhs = vec_add(ring, rhs,
                                  vec_scale(ring, s, kron_vec(ring, hpart, fpart)))
            if lhs != rhs:
                ok, wit = False, f"(f{i},h{t})"
                break
        if not ok:
            break
    rep.add(f"{tag}.4", "the module-compatibility formula for the coaction holds",
            ok, wit)
    return rep


def Hd_basis(b, i):
    return tuple(b.ring.one if j == i else b.ring.zero for j in range(b.rank))


def coaction_preimage_of_U(table: CoactionTable, hopf: HopfLike,
                           U: SubalgebraU):
    """V := coaction⁻¹(H ⊗ span(U)) as a canonical list of functionals."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH = b.rank
    gens = [kron_vec(ring, b.carrier.basis_vector(i), u)
            for i in range(rH) for u in U.elements]
    # f with cmap(f) in span(gens): kernel of (quotient ∘ cmap)
    from .linalg import PreparedSolver, canonical_span

    cols = []
    for i in range(rH):
        cols.append(table.map.column(i))
    # stack [cmap | -G] and take the kernel, projecting to the f-part
    m = rH * rH
    rows = []
    for r in range(m):
        row = [cols[i][r] for i in range(rH)]
        row += [ring.neg(g[r]) for g in gens]
        rows.append(row)
    res = PreparedSolver(ring, rows).solve((ring.zero,) * m)
    vs = [v[:rH] for v in res.kernel_basis]
    return list(canonical_span(ring, vs, rH))


# ---------------------------------------------------------------------------
# theorem routes


def coefficient_space_of_action(action: WeakActionData):
    """Cf(A) ⊆ H* for the finite-rank comodule structure induced by a module
    action: the functionals h ↦ coeff_k(h⇀a_j)."""
    b = action.bialgebra
    A = action.algebra
    ring = action.ring
    out = []
    for j in range(A.rank):
        for k in range(A.rank):
            vec = tuple(action.act_basis(i, A.carrier.basis_vector(j))[k]
                        for i in range(b.rank))
            if any(not ring.is_zero(x) for x in vec):
                out.append(vec)
    return out


def bm_route_hypotheses(cp: CrossedProductData, U: SubalgebraU) -> ValidationReport:
    """The trivial-cocycle specialization: V := Cf(A) ∪ S̄*(Cf(A)) satisfies
    the containments and the RL-condition."""
    rep = ValidationReport("Blattner-Montgomery route")
    h = ensure_hopf(cp.action.hopf)
    ring = cp.ring
    cf = coefficient_space_of_action(cp.action)
    sbar_t = [tuple(h.twisted_antipode.matrix[i][j] for i in range(h.rank))
              for j in range(h.rank)]  # columns of S̄ transposed: v ↦ v∘S̄

    def compose_sbar(v):
        return tuple(ring.sum(ring.mul(v[i], h.twisted_antipode.matrix[i][j])
                              for i in range(h.rank)) for j in range(h.rank))

    V = list(cf) + [compose_sbar(v) for v in cf]
    compat = compat_check(cp, U, V, DiagramSide.RIGHT)
    rep.add("bm.phi", "φ(H⊗A) ⊆ J(A⊗V) for V from the coefficient space",
            compat.phi_contained, compat.phi_witness)
    rep.add("bm.psi", "ψ(H⊗A) ⊆ J(A⊗V)", compat.psi_contained, compat.psi_witness)
    rep.add("bm.rl", "(V,U) satisfies the RL-condition", compat.rl.ok)
    return rep


@dataclass
class ChainResult:
    iso: AlgebraIso
    equal_to_direct: bool
    report: ValidationReport


def final_chain(cp: CrossedProductData, U: SubalgebraU,
                direct: Optional[AlgebraIso] = None) -> ChainResult:
    """The four-step route through the opposite crossed product:

    (A#σH)#U ≅ ((A^op#τH^op)#^opU^cop)^op ≅ (A^op⊗(H^op#^opU^cop))^op
             ≅ A⊗(H^op#^opU^cop)^op ≅ A⊗(H#U)

    Steps 1, 3 and 4 are structure-constant identities on fixed carriers; the
    only nontrivial matrix is the op-side duality isomorphism of the opposite
    crossed product, conjugated by the certified comodule-algebra iso.
    """
    rep = ValidationReport("opposite-route chain")
    h = ensure_hopf(cp.action.hopf)
    A = cp.action.algebra
    ring = cp.ring
    opp = opposite_crossed(cp)
    hop = ensure_hopf(opp.crossed.action.hopf)
    u_cop = SubalgebraU(hop, U.elements, ModuleSide.LEFT)

    # step 1 (generic part): B#U and (B^op#^opU^cop)^op have equal tables
    b_op_alg = cp.product_algebra.opposite()
    b_op_com = ComoduleAlgebraData(hop, b_op_alg, cp.comodule.coaction)
    lhs = right_smash(cp.comodule, U)
    rhs = op_smash(b_op_com, u_cop).product.opposite()
    rep.add("chain.step1", "B#U = (B^op#^opU^cop)^op as structure constants",
            lhs.product.mult == rhs.mult and lhs.product.unit == rhs.unit)

    # step 1 (instance part): transport along the certified iso G⁻¹: B^op → A^op#τH^op
    g_inv = opp.iso.inverse  # A#σH → (A^op#τH^op)^op, same matrix B^op → C
    step1 = kron(g_inv, LinearMap.identity(U.module))

    # step 2: the op-side duality isomorphism of the opposite crossed product
    diag_op = build_diagram(opp.crossed, u_cop, DiagramSide.OP)
    step2 = duality_iso(opp.crossed, u_cop, DiagramSide.OP, diag_op)

    # step 3: (A^op ⊗ W)^op = A ⊗ W^op bit-identically
    w_alg = diag_op.tensor_target  # A^op⊗(H^op#^opU^cop)
    h_op_smash = op_smash(regular_comodule(hop), u_cop)
    w_op = tensor_algebra(A, h_op_smash.product.opposite())
    rep.add("chain.step3", "(A^op⊗W)^op = A⊗W^op as structure constants",
            w_alg.opposite().mult == w_op.mult)

    # step 4: (H^op#^opU^cop)^op = H#U bit-identically
    h_smash = right_smash(regular_comodule(h), U)
    rep.add("chain.step4", "(H^op#^opU^cop)^op = H#U as structure constants",
            h_op_smash.product.opposite().mult == h_smash.product.mult
            and h_op_smash.product.opposite().unit == h_smash.product.unit)

    target = tensor_algebra(A, h_smash.product)
    composite = step2.map @ step1
    composite = LinearMap(lhs.carrier, target.carrier, composite.matrix)
    iso = certify_algebra_iso(lhs.product, target, composite, "chain composite")
    if direct is None:
        direct = duality_iso(cp, U, DiagramSide.RIGHT)
    equal = direct.map == iso.map
    rep.add("chain.certified", "the four-step composite is a certified "
            "isomorphism (A#σH)#U ≅ A⊗(H#U)", True)
    rep.add("chain.vs_direct", "the composite equals the direct duality "
            "isomorphism as a matrix", equal)
    return ChainResult(iso, equal, rep)


def theorem_suite(payload, U: Optional[SubalgebraU] = None,
                  V=None, run_chain: bool = True) -> ValidationReport:
    """Run the applicable duality routes on a crossed product or cleft datum.

    Hypothesis checks use V = coaction⁻¹(H⊗U) per side unless an explicit V
    is supplied; a failed hypothesis raises HypothesisFailed.
    """
    rep = ValidationReport("theorem suite")
    cleft_iso = None
    if isinstance(payload, CleftData):
        ext = crossed_from_integral(payload)
        cp = ext.crossed
        cleft_iso = ext.iso
        rep.add("cleft.extraction", "cleft datum converts to a crossed product "
                "with certified comodule-algebra iso", ext.colinear)
    elif isinstance(payload, CrossedProductData):
        cp = payload
    else:
        raise ValidationError(f"unsupported payload: {type(payload).__name__}")

    h = ensure_hopf(cp.action.hopf)
    if U is None:
        U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
    hop = ensure_hopf(opposite_hopf(h))
    u_left = SubalgebraU(h, U.elements, ModuleSide.LEFT)

    # right side: the upsilon coaction supplies V
    ups = coaction_table(h, CoactionSide.UPSILON)
    rep.extend(ups.report)
    V_right = V if V is not None else coaction_preimage_of_U(ups, h, U)
    compat = compat_check(cp, U, V_right, DiagramSide.RIGHT)
    rep.add("right.compat", "(V,U) is compatible on the right side", compat.ok,
            compat.phi_witness or compat.psi_witness)
    if not compat.ok:
        raise HypothesisFailed("right-side compatibility failed",
                               hypothesis="compatibility")
    diag_right = build_diagram(cp, U, DiagramSide.RIGHT)
    direct = duality_iso(cp, U, DiagramSide.RIGHT, diag_right)
    rep.add("right.duality", "(A#σH)#U ≅ A⊗(H#U) certified", True)

    # op side: the omega coaction supplies V
    om = coaction_table(h, CoactionSide.OMEGA)
    rep.extend(om.report)
    V_left = V if V is not None else coaction_preimage_of_U(om, h, u_left)
    compat_op = compat_check(cp, u_left, V_left, DiagramSide.OP)
    rep.add("op.compat", "(V,U) is compatible on the op side", compat_op.ok,
            compat_op.phi_witness or compat_op.psi_witness)
    if not compat_op.ok:
        raise HypothesisFailed("op-side compatibility failed",
                               hypothesis="compatibility")
    diag_op = build_diagram(cp, u_left, DiagramSide.OP)
    duality_iso(cp, u_left, DiagramSide.OP, diag_op)
    rep.add("op.duality", "(A#σH)#^opU ≅ A⊗(H#^opU) certified", True)

    # the trivial-cocycle corollary route
    from .crossed import trivial_cocycle

    if cp.cocycle.sigma == trivial_cocycle(cp.action).sigma:
        rep.extend(bm_route_hypotheses(cp, U))

    # cleft route: the two isomorphisms agree after transporting along ι(a)θ(h)
    if cleft_iso is not None:
        transport = kron(cleft_iso.inverse, LinearMap.identity(U.module))
        b_smash = right_smash(payload.comodule_algebra, U)
        routed = direct.map @ transport
        routed = LinearMap(b_smash.carrier, direct.map.codomain, routed.matrix)
        certify_algebra_iso(b_smash.product, direct.target, routed,
                            "cleft-route duality")
        rep.add("cleft.duality", "B#U ≅ A⊗(H#U) certified via the integral", True)

    if run_chain:
        chain = final_chain(cp, U, direct=direct)
        rep.extend(chain.report)
    return rep
