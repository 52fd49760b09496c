"""The five smash-type algebras over a comodule algebra B and a subalgebra
U of the dual:

* #(H,B)   on Hom(H,B):  (f ⋆̂ g)(h) = Σ f(g(h₂)₍₁₎h₁) · g(h₂)₍₀₎
* B#U      on B⊗U:       (b#f)(b̃#f̃) = Σ b·b̃₍₀₎ # (f·b̃₍₁₎)⋆f̃
* A#H      on A⊗H:       (a#h)(ã#h̃) = Σ a(h₁ã) # h₂h̃
* #^op(H,B) on Hom(H,B): (f ⋆̃ g)(h) = Σ f(h₂)₍₀₎ · g(h₁·f(h₂)₍₁₎)
* B#^opU   on B⊗U:       (b#f)(b̃#f̃) = Σ b₍₀₎·b̃ # (b₍₁₎·f̃)⋆f

U carries the regular H-action of its declared side and all closure data is
witnessed by solved coefficient tables at construction time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .actions import (
    ComoduleAlgebraData,
    WeakActionData,
    regular_act_left,
    regular_act_right,
    regular_comodule,
    validate_weak_action,
)
from .catalog import ground_algebra
from .crossed import crossed_table, trivial_cocycle
from .errors import SideMismatch, ValidationError
from .hopf import (
    AlgebraData,
    ConvolutionAlgebra,
    HopfData,
    HopfLike,
    bialgebra_of,
    dual_hopf,
    ensure_hopf,
)
from .linalg import (
    FreeModule,
    LinearMap,
    dual_module,
    hom_module,
    kron_vec,
    split_coefficient_map,
    tensor_module,
    vec_add,
    vec_scale,
)
from .reporting import ValidationReport


class ModuleSide(Enum):
    RIGHT = "right"
    LEFT = "left"


class SubalgebraU:
    """A spanning list of functionals in H* closed under ⋆ and the regular
    H-action of the declared side, containing ε, spanning a direct summand."""

    def __init__(self, hopf: HopfLike, elements, side: ModuleSide):
        b = bialgebra_of(hopf)
        ring = b.ring
        self.hopf = hopf
        self.side = side
        self.ambient = dual_module(b.carrier)
        self.elements = tuple(tuple(ring.of(x) for x in v) for v in elements)
        for v in self.elements:
            if len(v) != b.rank:
                raise ValidationError("U element has wrong length")
        self._split = split_coefficient_map(ring, self.elements, b.rank)
        if self._split is None:
            raise ValidationError(
                "span(U) is not a direct summand of H* with independent generators")
        self.module = FreeModule(ring, len(self.elements),
                                 tuple(f"u{i}" for i in range(len(self.elements))))
        self.dual_algebra = ConvolutionAlgebra(b.coalgebra,
                                               ground_algebra(ring)).algebra()
        self.eps_coords = self.express(tuple(b.coalgebra.counit.matrix[0]))
        if self.eps_coords is None:
            raise ValidationError("ε_H is not in span(U)")
        self.star_witness = {}
        for i, u in enumerate(self.elements):
            for j, v in enumerate(self.elements):
                coords = self.express(self.dual_algebra.product(u, v))
                if coords is None:
                    raise ValidationError(f"U is not ⋆-closed at (u{i},u{j})")
                self.star_witness[i, j] = coords
        self.action_witness = {}
        for i, u in enumerate(self.elements):
            for j in range(b.rank):
                h = b.carrier.basis_vector(j)
                moved = (regular_act_right(hopf, u, h)
                         if side is ModuleSide.RIGHT
                         else regular_act_left(hopf, h, u))
                coords = self.express(moved)
                if coords is None:
                    raise ValidationError(
                        f"U is not closed under the {side.value} regular action")
                self.action_witness[i, j] = coords

    @property
    def ring(self):
        return self.ambient.ring

    @property
    def rank(self):
        return len(self.elements)

    def element(self, i: int):
        return self.elements[i]

    def express(self, vec):
        """Coordinates of a functional in the U-basis, or None if outside."""
        coords = self._split.apply(vec)
        recon = self.ambient.zero_vector()
        for c, u in zip(coords, self.elements):
            recon = vec_add(self.ring, recon, vec_scale(self.ring, c, u))
        return coords if recon == tuple(vec) else None

    def act_regular(self, i: int, h_vec):
        """u_i moved by the regular action of ``h_vec`` on the declared side."""
        if self.side is ModuleSide.RIGHT:
            return regular_act_right(self.hopf, self.elements[i], h_vec)
        return regular_act_left(self.hopf, h_vec, self.elements[i])

    @classmethod
    def full_dual(cls, hopf: HopfLike, side: ModuleSide = ModuleSide.RIGHT) -> "SubalgebraU":
        b = bialgebra_of(hopf)
        basis = [b.carrier.basis_vector(i) for i in range(b.rank)]
        return cls(hopf, basis, side)


class SmashKind(Enum):
    HAT_HB = "#(H,B)"
    RIGHT_SMASH = "B#U"
    LEFT_SMASH = "A#H"
    OP_HAT_HB = "#op(H,B)"
    OP_SMASH = "B#opU"


@dataclass
class SmashAlgebra:
    kind: SmashKind
    carrier: FreeModule
    product: AlgebraData
    provenance: dict = field(default_factory=dict)


def _validated(kind: SmashKind, alg: AlgebraData, provenance) -> SmashAlgebra:
    alg.validate(kind.value).require()
    return SmashAlgebra(kind, alg.carrier, alg, provenance)


def hat_smash(hopf: HopfLike, B: ComoduleAlgebraData) -> SmashAlgebra:
    """#(H,B) = (Hom_R(H,B), ⋆̂) with unit η_B∘ε_H."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH, rB = b.rank, B.algebra.rank
    carrier = hom_module(b.carrier, B.algebra.carrier)
    coalg = b.coalgebra
    cols = []
    for fi in range(rB):          # f = [h_fj ↦ b_fi]
        for fj in range(rH):
            for gi in range(rB):  # g = [h_gj ↦ b_gi]
                for gj in range(rH):
                    out = [ring.zero] * carrier.rank
                    for t in range(rH):
                        val = B.algebra.carrier.zero_vector()
                        for c, (t1, t2) in coalg.sweedler_basis(t, 2):
                            if t2 != gj:
                                continue
                            for b0, b1, cc in B.coact_sparse(gi):
                                # f(b₍₁₎·h₁) · b₍₀₎
                                coeff_f = b.algebra.mult.matrix[fj][b1 * rH + t1]
                                if not (coeff_f):
                                    continue
                                term = B.algebra.product(
                                    B.algebra.carrier.basis_vector(fi),
                                    B.algebra.carrier.basis_vector(b0))
                                scale = ring.mul(ring.mul(c, cc), coeff_f)
                                val = vec_add(ring, val,
                                              vec_scale(ring, scale, term))
                        for bidx, bv in enumerate(val):
                            if (bv):
                                out[bidx * rH + t] = ring.add(out[bidx * rH + t], bv)
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    unit = [ring.zero] * carrier.rank
    for bidx, bv in enumerate(B.algebra.unit):
        for t in range(rH):
            e = coalg.counit_scalar(b.carrier.basis_vector(t))
            unit[bidx * rH + t] = ring.mul(bv, e)
    alg = AlgebraData(carrier, mult, unit)
    return _validated(SmashKind.HAT_HB, alg, {"H": hopf, "B": B})


def op_hat_smash(hopf: HopfLike, B: ComoduleAlgebraData) -> SmashAlgebra:
    """#^op(H,B) = (Hom_R(H,B), ⋆̃) with the same unit."""
    b = bialgebra_of(hopf)
    ring = b.ring
    rH = b.rank
    carrier = hom_module(b.carrier, B.algebra.carrier)
    coalg = b.coalgebra
    rB = B.algebra.rank
    cols = []
    for fi in range(rB):
        for fj in range(rH):
            for gi in range(rB):
                for gj in range(rH):
                    out = [ring.zero] * carrier.rank
                    for t in range(rH):
                        val = B.algebra.carrier.zero_vector()
                        for c, (t1, t2) in coalg.sweedler_basis(t, 2):
                            if t2 != fj:
                                continue
                            for b0, b1, cc in B.coact_sparse(fi):
                                # f(h₂)₍₀₎ · g(h₁·f(h₂)₍₁₎)
                                coeff_g = b.algebra.mult.matrix[gj][t1 * rH + b1]
                                if not (coeff_g):
                                    continue
                                term = B.algebra.product(
                                    B.algebra.carrier.basis_vector(b0),
                                    B.algebra.carrier.basis_vector(gi))
                                scale = ring.mul(ring.mul(c, cc), coeff_g)
                                val = vec_add(ring, val,
                                              vec_scale(ring, scale, term))
                        for bidx, bv in enumerate(val):
                            if (bv):
                                out[bidx * rH + t] = ring.add(out[bidx * rH + t], bv)
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    hat = hat_smash(hopf, B)  # reuse its unit (η_B∘ε_H)
    alg = AlgebraData(carrier, mult, hat.product.unit)
    return _validated(SmashKind.OP_HAT_HB, alg, {"H": hopf, "B": B})


def right_smash(B: ComoduleAlgebraData, U: SubalgebraU) -> SmashAlgebra:
    """B#U on B⊗U: (b#f)(b̃#f̃) = Σ b·b̃₍₀₎ # (f·b̃₍₁₎)⋆f̃, unit 1_B#ε."""
    if U.side is not ModuleSide.RIGHT:
        raise SideMismatch("right smash needs a right H-module subalgebra U")
    return _coordinate_smash(B, U, SmashKind.RIGHT_SMASH)


def op_smash(B: ComoduleAlgebraData, U: SubalgebraU) -> SmashAlgebra:
    """B#^opU on B⊗U: (b#f)(b̃#f̃) = Σ b₍₀₎·b̃ # (b₍₁₎·f̃)⋆f, unit 1_B#ε."""
    if U.side is not ModuleSide.LEFT:
        raise SideMismatch("opposite smash needs a left H-module subalgebra U")
    return _coordinate_smash(B, U, SmashKind.OP_SMASH)


def _coordinate_smash(B: ComoduleAlgebraData, U: SubalgebraU,
                      kind: SmashKind) -> SmashAlgebra:
    b = bialgebra_of(B.hopf)
    ring = b.ring
    rB, rU = B.algebra.rank, U.rank
    carrier = tensor_module(B.algebra.carrier, U.module)
    dual = U.dual_algebra
    cols = []
    for i in range(rB):
        b_i = B.algebra.carrier.basis_vector(i)
        for l in range(rU):
            for k in range(rB):
                for m in range(rU):
                    out = [ring.zero] * carrier.rank
                    if kind is SmashKind.RIGHT_SMASH:
                        # Σ over ϱ(b̃): b·b̃₍₀₎ ⊗ (f·b̃₍₁₎)⋆f̃
                        for b0, b1, c in B.coact_sparse(k):
                            bpart = B.algebra.product(
                                b_i, B.algebra.carrier.basis_vector(b0))
                            moved = U.act_regular(l, b.carrier.basis_vector(b1))
                            upart = dual.product(moved, U.element(m))
                            _accumulate_smash(out, ring, c, bpart, upart, U, rU)
                    else:
                        # Σ over ϱ(b): b₍₀₎·b̃ ⊗ (b₍₁₎·f̃)⋆f
                        for b0, b1, c in B.coact_sparse(i):
                            bpart = B.algebra.product(
                                B.algebra.carrier.basis_vector(b0),
                                B.algebra.carrier.basis_vector(k))
                            moved = U.act_regular(m, b.carrier.basis_vector(b1))
                            upart = dual.product(moved, U.element(l))
                            _accumulate_smash(out, ring, c, bpart, upart, U, rU)
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    unit = kron_vec(ring, B.algebra.unit, U.eps_coords)
    alg = AlgebraData(carrier, mult, unit)
    return _validated(kind, alg, {"B": B, "U": U})


def _accumulate_smash(out, ring, c, bpart, upart_ambient, U: SubalgebraU, rU):
    coords = U.express(upart_ambient)
    if coords is None:
        raise ValidationError("smash product left the span of U")
    for bidx, bv in enumerate(bpart):
        if not (bv):
            continue
        for uidx, uv in enumerate(coords):
            if not (uv):
                continue
            pos = bidx * rU + uidx
            out[pos] = ring.add(out[pos], ring.mul(ring.mul(c, bv), uv))


def left_smash(action: WeakActionData) -> SmashAlgebra:
    """A#H for a genuine module-algebra action (twisted module with trivial σ);
    bit-identical to the crossed product with trivial cocycle."""
    cocycle = trivial_cocycle(action)
    if not cocycle.flags.twisted_module:
        raise ValidationError("left smash requires a module-algebra action")
    b = action.bialgebra
    A = action.algebra
    ring = action.ring
    rH, rA = b.rank, A.rank
    carrier = tensor_module(A.carrier, b.carrier)
    coalg = b.coalgebra
    cols = []
    for i in range(rA):
        a_i = A.carrier.basis_vector(i)
        for j in range(rH):
            for k in range(rA):
                a_k = A.carrier.basis_vector(k)
                for l in range(rH):
                    out = [ring.zero] * carrier.rank
                    for c, (h1, h2) in coalg.sweedler_basis(j, 2):
                        apart = A.product(a_i, action.act_basis(h1, a_k))
                        for hidx, hc in b.algebra.basis_product(h2, l):
                            cc = ring.mul(c, hc)
                            for aidx, av in enumerate(apart):
                                if not (av):
                                    continue
                                pos = aidx * rH + hidx
                                out[pos] = ring.add(out[pos], ring.mul(cc, av))
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    if mult != crossed_table(action, cocycle.sigma):
        raise ValidationError(
            "left smash disagrees with the trivial-cocycle crossed product")
    alg = AlgebraData(carrier, mult,
                      kron_vec(ring, A.unit, b.algebra.unit))
    return _validated(SmashKind.LEFT_SMASH, alg, {"action": action})


def hit_action_of_dual(h: HopfData) -> WeakActionData:
    """H as a left H*-module algebra under f⇀k = Σ k₁f(k₂)."""
    dual = dual_hopf(ensure_hopf(h))
    b = bialgebra_of(h)
    ring = b.ring
    rH = b.rank
    cols = []
    for l in range(rH):       # f = δ_l
        for j in range(rH):   # k = h_j
            out = [ring.zero] * rH
            for c, (k1, k2) in b.coalgebra.sweedler_basis(j, 2):
                if k2 == l:
                    out[k1] = ring.add(out[k1], c)
            cols.append(tuple(out))
    action = LinearMap.from_columns(tensor_module(dual.carrier, b.carrier),
                                    b.carrier, cols)
    w = WeakActionData(dual.bialgebra, b.algebra, action)
    validate_weak_action(w, "hit action of the dual").require()
    return w


def smash_compare(h: HopfData, report_subject: str = "smash comparison") -> ValidationReport:
    """The two algebra structures on H⊗H*: the left smash for the hit action
    of H* and the right smash for Δ and the right regular action.  At finite
    free rank their structure constants must be equal outright."""
    rep = ValidationReport(report_subject)
    h = ensure_hopf(h)
    left = left_smash(hit_action_of_dual(h))
    U = SubalgebraU.full_dual(h, ModuleSide.RIGHT)
    right = right_smash(regular_comodule(h), U)
    same = (left.product.mult == right.product.mult
            and left.product.unit == right.product.unit)
    rep.add("smash.compare", "left and right smash structure constants on H⊗H* "
            "are identical", same)
    return rep
