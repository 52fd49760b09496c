"""Crossed products A#_σH, cocycle validation, cleft extensions, opposites.

The crossed multiplication is (a#h)(ã#h̃) = Σ a(h₁ã)σ(h₂⊗h̃₁) # h₃h̃₂.  A
normal σ gives the unit 1#1; together with the cocycle and twisted-module
conditions it gives associativity, and both directions of that equivalence
are enforced as cross-checks whenever a product is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .actions import (
    ComoduleAlgebraData,
    Coinvariants,
    WeakActionData,
    coinvariants,
    validate_weak_action,
)
from .errors import (
    AssociativityMismatch,
    CoinvariantEscape,
    NotConvInvertible,
    NotUnital,
    ValidationError,
)
from .hopf import (
    AlgebraData,
    AlgebraIso,
    ConvolutionAlgebra,
    bialgebra_of,
    certify_algebra_iso,
    convolution_invert,
    ensure_hopf,
    expand_sparse,
    opposite_hopf,
    tensor_coalgebra,
)
from .linalg import (
    LinearMap,
    kron,
    kron_vec,
    tensor_module,
    vec_add,
    vec_scale,
)
from .reporting import ValidationReport


@dataclass(frozen=True)
class CocycleFlags:
    normal: bool
    cocycle: bool
    twisted_module: bool

    @property
    def all_true(self) -> bool:
        return self.normal and self.cocycle and self.twisted_module


class CocycleData:
    """σ: H⊗H → A with its two-sided convolution inverse and exact flags."""

    def __init__(self, action: WeakActionData, sigma: LinearMap,
                 sigma_inv: LinearMap, flags: CocycleFlags):
        self.action = action
        self.sigma = sigma
        self.sigma_inv = sigma_inv
        self.flags = flags

    @property
    def ring(self):
        return self.action.ring


def _sigma_basis(sigma: LinearMap, rH: int, rA, ring, i: int, j: int):
    return expand_sparse(sigma.sparse_columns()[i * rH + j], rA, ring)


def cocycle_flags(action: WeakActionData, sigma: LinearMap) -> CocycleFlags:
    """Exact exhaustive evaluation of normality, the cocycle identity on all
    basis triples (h,k,l), and the twisted-module identity on all (h,k,a)."""
    b = action.bialgebra
    A = action.algebra
    ring = action.ring
    rH, rA = b.rank, A.rank
    coalg = b.coalgebra
    eps = coalg.counit_scalar
    one_h = b.algebra.unit

    def sig(u, v):
        return sigma.apply(kron_vec(ring, u, v))

    normal = True
    for i in range(rH):
        h = b.carrier.basis_vector(i)
        want = vec_scale(ring, eps(h), A.unit)
        if sig(h, one_h) != want or sig(one_h, h) != want:
            normal = False
            break

    cocycle_ok = True
    for i in range(rH):
        for j in range(rH):
            for k in range(rH):
                # Σ [h₁σ(k₁⊗l₁)]·σ(h₂⊗k₂l₂)
                lhs = A.carrier.zero_vector()
                for ch, (h1, h2) in coalg.sweedler_basis(i, 2):
                    for ck, (k1, k2) in coalg.sweedler_basis(j, 2):
                        for cl, (l1, l2) in coalg.sweedler_basis(k, 2):
                            c = ring.mul(ring.mul(ch, ck), cl)
                            skl = _sigma_basis(sigma, rH, rA, ring, k1, l1)
                            t1 = action.act_basis(h1, skl)
                            k2l2 = expand_sparse(b.algebra.basis_product(k2, l2),
                                                 rH, ring)
                            t2 = sig(b.carrier.basis_vector(h2), k2l2)
                            lhs = vec_add(ring, lhs,
                                          vec_scale(ring, c, A.product(t1, t2)))
                if lhs != _cocycle_rhs(action, sigma, i, j, k):
                    cocycle_ok = False
                    break
            if not cocycle_ok:
                break
        if not cocycle_ok:
            break

    twisted = True
    for i in range(rH):
        for j in range(rH):
            for t in range(rA):
                a = A.carrier.basis_vector(t)
                lhs = A.carrier.zero_vector()
                rhs = A.carrier.zero_vector()
                for ch, (h1, h2) in coalg.sweedler_basis(i, 2):
                    for ck, (k1, k2) in coalg.sweedler_basis(j, 2):
                        c = ring.mul(ch, ck)
                        t1 = action.act_basis(h1, action.act_basis(k1, a))
                        s12 = _sigma_basis(sigma, rH, rA, ring, h2, k2)
                        lhs = vec_add(ring, lhs,
                                      vec_scale(ring, c, A.product(t1, s12)))
                        s1 = _sigma_basis(sigma, rH, rA, ring, h1, k1)
                        h2k2 = expand_sparse(b.algebra.basis_product(h2, k2), rH, ring)
                        t2 = action.act(h2k2, a)
                        rhs = vec_add(ring, rhs,
                                      vec_scale(ring, c, A.product(s1, t2)))
                if lhs != rhs:
                    twisted = False
                    break
            if not twisted:
                break
        if not twisted:
            break

    return CocycleFlags(normal, cocycle_ok, twisted)


def _cocycle_rhs(action: WeakActionData, sigma: LinearMap, i: int, j: int, k: int):
    b = action.bialgebra
    A = action.algebra
    ring = action.ring
    rH, rA = b.rank, A.rank
    coalg = b.coalgebra
    rhs = A.carrier.zero_vector()
    for ch, (h1, h2) in coalg.sweedler_basis(i, 2):
        for ck, (k1, k2) in coalg.sweedler_basis(j, 2):
            c = ring.mul(ch, ck)
            s1 = _sigma_basis(sigma, rH, rA, ring, h1, k1)
            h2k2 = expand_sparse(b.algebra.basis_product(h2, k2), rH, ring)
            s2 = sigma.apply(kron_vec(ring, h2k2, b.carrier.basis_vector(k)))
            rhs = vec_add(ring, rhs, vec_scale(ring, c, A.product(s1, s2)))
    return rhs


def validate_cocycle(action: WeakActionData, sigma: LinearMap,
                     claimed_inverse: Optional[LinearMap] = None) -> CocycleData:
    """Flags by exact expansion, σ⁻¹ by convolution inversion over H⊗H.

    A supplied inverse is never trusted: it is recomputed and compared.  When
    σ has no convolution inverse the flags are still computed and attached to
    the raised error.
    """
    b = action.bialgebra
    flags = cocycle_flags(action, sigma)
    hh = tensor_coalgebra(b.coalgebra, b.coalgebra)
    conv = ConvolutionAlgebra(hh, action.algebra)
    sigma_flat = tuple(x for row in sigma.matrix for x in row)
    try:
        inv_flat = convolution_invert(conv, sigma_flat)
    except NotConvInvertible as exc:
        exc.flags = flags
        raise
    sigma_inv = LinearMap(sigma.domain, sigma.codomain,
                          [inv_flat[i * sigma.domain.rank:(i + 1) * sigma.domain.rank]
                           for i in range(sigma.codomain.rank)])
    if claimed_inverse is not None and claimed_inverse != sigma_inv:
        raise ValidationError("supplied cocycle inverse disagrees with the "
                              "recomputed convolution inverse")
    return CocycleData(action, sigma, sigma_inv, flags)


def trivial_cocycle(action: WeakActionData) -> CocycleData:
    """σ(h⊗k) = ε(h)ε(k)1_A, its own convolution inverse."""
    b = action.bialgebra
    A = action.algebra
    eps = b.coalgebra.counit
    unit_embed = LinearMap.from_columns(eps.codomain, A.carrier, [A.unit])
    sigma = unit_embed @ kron(eps, eps)
    sigma = LinearMap(tensor_module(b.carrier, b.carrier), A.carrier, sigma.matrix)
    return validate_cocycle(action, sigma)


# ---------------------------------------------------------------------------
# the crossed product


def crossed_table(action: WeakActionData, sigma: LinearMap) -> LinearMap:
    """The (not necessarily associative or unital) product on A⊗H given by
    (a#h)(ã#h̃) = Σ a(h₁ã)σ(h₂⊗h̃₁) # h₃h̃₂."""
    b = action.bialgebra
    A = action.algebra
    ring = action.ring
    rH, rA = b.rank, A.rank
    carrier = tensor_module(A.carrier, b.carrier)
    coalg = b.coalgebra
    rB = carrier.rank
    cols = []
    for i in range(rA):
        a_i = A.carrier.basis_vector(i)
        for j in range(rH):
            for k in range(rA):
                a_k = A.carrier.basis_vector(k)
                for l in range(rH):
                    out = [ring.zero] * rB
                    for ch, (h1, h2, h3) in coalg.sweedler_basis(j, 3):
                        for cl, (l1, l2) in coalg.sweedler_basis(l, 2):
                            c = ring.mul(ch, cl)
                            apart = A.product(
                                A.product(a_i, action.act_basis(h1, a_k)),
                                _sigma_basis(sigma, rH, rA, ring, h2, l1))
                            for hidx, hc in b.algebra.basis_product(h3, l2):
                                cc = ring.mul(c, hc)
                                for aidx, ac in enumerate(apart):
                                    if not (ac):
                                        continue
                                    pos = aidx * rH + hidx
                                    out[pos] = ring.add(out[pos],
                                                        ring.mul(cc, ac))
                    cols.append(tuple(out))
    return LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)


def direct_product_checks(action: WeakActionData, sigma: LinearMap):
    """(unit holds, associativity holds) for the raw crossed table, by
    exhaustive basis checking — independent of the cocycle flags."""
    b = action.bialgebra
    A = action.algebra
    table = crossed_table(action, sigma)
    carrier = table.codomain
    unit = kron_vec(action.ring, A.unit, b.algebra.unit)
    alg = AlgebraData(carrier, table, unit)
    rep = alg.validate("crossed table")
    by_id = {r.check_id: r.passed for r in rep.records}
    return by_id["algebra.unit"], by_id["algebra.assoc"]


class CrossedProductData:
    """A right H-crossed product: validated algebra on A⊗H with coaction id⊗Δ."""

    def __init__(self, action: WeakActionData, cocycle: CocycleData,
                 product_algebra: AlgebraData, comodule: ComoduleAlgebraData):
        self.action = action
        self.cocycle = cocycle
        self.product_algebra = product_algebra
        self.comodule = comodule

    @property
    def hopf(self):
        return self.action.hopf

    @property
    def ring(self):
        return self.action.ring

    @property
    def carrier(self):
        return self.product_algebra.carrier

    def embed_coefficient(self, a_vec):
        """ι(a) = a#1."""
        b = bialgebra_of(self.action.hopf)
        return kron_vec(self.ring, a_vec, b.algebra.unit)


def build_crossed_product(action: WeakActionData, cocycle: CocycleData) -> CrossedProductData:
    """Build A#_σH, enforcing both directions of the unit/associativity
    criterion against the cocycle flags."""
    flags = cocycle.flags
    if not flags.normal:
        raise NotUnital("σ is not normal, so 1#1 is not a unit")
    unit_ok, assoc_ok = direct_product_checks(action, cocycle.sigma)
    if unit_ok != flags.normal:
        raise AssociativityMismatch("unit check disagrees with normality flag")
    if assoc_ok != (flags.cocycle and flags.twisted_module):
        raise AssociativityMismatch(
            "associativity check disagrees with cocycle+twisted-module flags")
    if not assoc_ok:
        raise ValidationError("crossed product is not associative "
                              "(cocycle or twisted-module condition fails)")
    b = action.bialgebra
    A = action.algebra
    table = crossed_table(action, cocycle.sigma)
    carrier = table.codomain
    unit = kron_vec(action.ring, A.unit, b.algebra.unit)
    alg = AlgebraData(carrier, table, unit)
    coaction = kron(LinearMap.identity(A.carrier), b.coalgebra.comult)
    coaction = LinearMap(carrier, tensor_module(carrier, b.carrier), coaction.matrix)
    comodule = ComoduleAlgebraData(action.hopf, alg, coaction)
    comodule.validate().require()
    cp = CrossedProductData(action, cocycle, alg, comodule)
    _check_coinvariants_are_coefficients(cp)
    return cp


def _check_coinvariants_are_coefficients(cp: CrossedProductData):
    """(A#_σH)^{coH} = A⊗1, both inclusions."""
    from .linalg import submodule_membership

    b = bialgebra_of(cp.action.hopf)
    A = cp.action.algebra
    ring = cp.ring
    coin = coinvariants(cp.comodule)
    expected = [kron_vec(ring, A.carrier.basis_vector(i), b.algebra.unit)
                for i in range(A.rank)]
    for v in expected:
        if submodule_membership(ring, list(coin.vectors), v) is None:
            raise ValidationError("A⊗1 not contained in the coinvariants")
    for v in coin.vectors:
        if submodule_membership(ring, expected, v) is None:
            raise ValidationError("coinvariants leak outside A⊗1")


def smash_product_data(action: WeakActionData) -> CrossedProductData:
    """A#H: the crossed product with trivial cocycle."""
    return build_crossed_product(action, trivial_cocycle(action))


# ---------------------------------------------------------------------------
# cleft extensions


class CleftData:
    """A cleft right H-extension: a comodule algebra with an invertible,
    colinear total integral θ: H → B."""

    def __init__(self, comodule_algebra: ComoduleAlgebraData, theta: LinearMap,
                 theta_inv: LinearMap):
        self.comodule_algebra = comodule_algebra
        self.theta = theta
        self.theta_inv = theta_inv

    @property
    def ring(self):
        return self.comodule_algebra.ring

    def validate(self, subject: str = "cleft data") -> ValidationReport:
        rep = ValidationReport(subject)
        B = self.comodule_algebra.algebra
        b = self.comodule_algebra.bialgebra
        colinear = (self.comodule_algebra.coaction @ self.theta) == \
            (kron(self.theta, LinearMap.identity(b.carrier)) @ b.coalgebra.comult)
        rep.add("cleft.colinear", "ϱ∘θ = (θ⊗id)∘Δ", colinear)
        rep.add("cleft.unital", "θ(1_H) = 1_B",
                self.theta.apply(b.algebra.unit) == B.unit)
        conv = ConvolutionAlgebra(b.coalgebra, B)
        t = tuple(x for row in self.theta.matrix for x in row)
        ti = tuple(x for row in self.theta_inv.matrix for x in row)
        two_sided = (conv.convolve(t, ti) == conv.unit_vec
                     and conv.convolve(ti, t) == conv.unit_vec)
        rep.add("cleft.invertible", "θ⋆θ⁻¹ = η∘ε = θ⁻¹⋆θ", two_sided)
        return rep


def integral_from_crossed(cp: CrossedProductData) -> CleftData:
    """θ(h) = 1_A#h with θ⁻¹(h) = Σ σ⁻¹(S(h₂)⊗h₃) #_σ S(h₁)."""
    hopf = ensure_hopf(cp.action.hopf)
    b = hopf.bialgebra
    A = cp.action.algebra
    ring = cp.ring
    rH = b.rank
    S = hopf.antipode
    sigma_inv = cp.cocycle.sigma_inv
    theta_cols = [kron_vec(ring, A.unit, b.carrier.basis_vector(j))
                  for j in range(rH)]
    theta = LinearMap.from_columns(b.carrier, cp.carrier, theta_cols)
    inv_cols = []
    for j in range(rH):
        out = [ring.zero] * cp.carrier.rank
        for c, (h1, h2, h3) in b.coalgebra.sweedler_basis(j, 3):
            apart = sigma_inv.apply(
                kron_vec(ring, S.column(h2), b.carrier.basis_vector(h3)))
            hpart = S.column(h1)
            term = kron_vec(ring, apart, hpart)
            for pos, val in enumerate(term):
                if (val):
                    out[pos] = ring.add(out[pos], ring.mul(c, val))
        inv_cols.append(tuple(out))
    theta_inv = LinearMap.from_columns(b.carrier, cp.carrier, inv_cols)
    cleft = CleftData(cp.comodule, theta, theta_inv)
    cleft.validate().require()
    return cleft


@dataclass
class CleftExtraction:
    crossed: CrossedProductData
    iso: AlgebraIso  # A#_σH → B, a#h ↦ ι(a)·θ(h)
    coinvariants: Coinvariants
    colinear: bool


def crossed_from_integral(cl: CleftData,
                          coinvariant_basis=None) -> CleftExtraction:
    """Extract (action, σ) via ha = Σθ(h₁)aθ⁻¹(h₂), σ(h⊗k) = Σθ(h₁)θ(k₁)θ⁻¹(h₂k₂),
    rebuild A#_σH, and certify B ≅ A#_σH."""
    B_com = cl.comodule_algebra
    B = B_com.algebra
    hopf = ensure_hopf(B_com.hopf)
    b = hopf.bialgebra
    ring = B.ring
    rH = b.rank
    if coinvariant_basis is not None:
        coin_vectors = tuple(tuple(ring.of(x) for x in v) for v in coinvariant_basis)
        computed = coinvariants(B_com)
        from .linalg import submodule_membership

        for v in coin_vectors:
            if submodule_membership(ring, list(computed.vectors), v) is None:
                raise CoinvariantEscape("supplied coinvariant basis is not coinvariant")
        for v in computed.vectors:
            if submodule_membership(ring, list(coin_vectors), v) is None:
                raise CoinvariantEscape("supplied coinvariant basis does not span")
        from .linalg import FreeModule

        module = FreeModule(ring, len(coin_vectors),
                            tuple(f"c{i}" for i in range(len(coin_vectors))))
        coin = Coinvariants(module, LinearMap.from_columns(module, B.carrier,
                                                           list(coin_vectors)),
                            coin_vectors)
    else:
        coin = coinvariants(B_com)

    def express(vec, what):
        coords = coin.express(vec)
        if coords is None:
            raise CoinvariantEscape(f"{what} does not lie in the coinvariants")
        return coords

    rA = coin.rank
    # A' as an abstract algebra on the coinvariant basis
    unit_coords = express(B.unit, "1_B")
    mult_cols = []
    for i in range(rA):
        for j in range(rA):
            prod = B.product(coin.vectors[i], coin.vectors[j])
            mult_cols.append(express(prod, "a·a'"))
    mult = LinearMap.from_columns(tensor_module(coin.module, coin.module),
                                  coin.module, mult_cols)
    A_alg = AlgebraData(coin.module, mult, unit_coords)
    # action ha = Σ θ(h₁) a θ⁻¹(h₂)
    act_cols = []
    for i in range(rH):
        for j in range(rA):
            val = B.carrier.zero_vector()
            for c, (h1, h2) in b.coalgebra.sweedler_basis(i, 2):
                term = B.product_many(cl.theta.column(h1), coin.vectors[j],
                                      cl.theta_inv.column(h2))
                val = vec_add(ring, val, vec_scale(ring, c, term))
            act_cols.append(express(val, "h⇀a"))
    action_map = LinearMap.from_columns(tensor_module(b.carrier, coin.module),
                                        coin.module, act_cols)
    action = WeakActionData(B_com.hopf, A_alg, action_map)
    validate_weak_action(action).require()
    # σ(h⊗k) = Σ θ(h₁)θ(k₁)θ⁻¹(h₂k₂)
    sig_cols = []
    for i in range(rH):
        for j in range(rH):
            val = B.carrier.zero_vector()
            for ci, (h1, h2) in b.coalgebra.sweedler_basis(i, 2):
                for cj, (k1, k2) in b.coalgebra.sweedler_basis(j, 2):
                    c = ring.mul(ci, cj)
                    h2k2 = expand_sparse(b.algebra.basis_product(h2, k2), rH, ring)
                    term = B.product_many(cl.theta.column(h1), cl.theta.column(k1),
                                          cl.theta_inv.apply(h2k2))
                    val = vec_add(ring, val, vec_scale(ring, c, term))
            sig_cols.append(express(val, "σ(h⊗k)"))
    sigma = LinearMap.from_columns(tensor_module(b.carrier, b.carrier),
                                   coin.module, sig_cols)
    cocycle = validate_cocycle(action, sigma)
    if not cocycle.flags.all_true:
        raise ValidationError("extracted cocycle fails its flags")
    crossed = build_crossed_product(action, cocycle)
    # certified iso A#_σH → B, a#h ↦ ι(a)θ(h)
    iso_cols = []
    for i in range(rA):
        for j in range(rH):
            iso_cols.append(B.product(coin.vectors[i], cl.theta.column(j)))
    iso_map = LinearMap.from_columns(crossed.carrier, B.carrier, iso_cols)
    iso = certify_algebra_iso(crossed.product_algebra, B, iso_map,
                              "cleft extension ≅ crossed product")
    colinear = (B_com.coaction @ iso_map) == \
        (kron(iso_map, LinearMap.identity(b.carrier)) @ crossed.comodule.coaction)
    return CleftExtraction(crossed, iso, coin, colinear)


# ---------------------------------------------------------------------------
# the opposite crossed product


@dataclass
class OppositeCrossed:
    crossed: CrossedProductData          # A^op #_τ H^op
    tau: CocycleData
    iso: AlgebraIso                      # (A^op#_τH^op)^op → A#_σH
    opposite_algebra: AlgebraData        # (A^op#_τH^op)^op
    colinear: bool


def opposite_crossed(cp: CrossedProductData) -> OppositeCrossed:
    """Build the H^op-crossed product on A^op with h·a := S̄(h)a and
    τ = σ⁻¹∘(S̄⊗S̄), and certify A#_σH ≅ (A^op#_τH^op)^op."""
    hopf = ensure_hopf(cp.action.hopf)
    hop = opposite_hopf(hopf)
    A = cp.action.algebra
    ring = cp.ring
    Sbar = hopf.twisted_antipode
    a_op = A.opposite()
    action_op_map = cp.action.action @ kron(Sbar, LinearMap.identity(A.carrier))
    action_op = WeakActionData(hop, a_op, LinearMap(
        cp.action.action.domain, A.carrier, action_op_map.matrix))
    validate_weak_action(action_op, "opposite weak action").require()
    tau_map = cp.cocycle.sigma_inv @ kron(Sbar, Sbar)
    tau_map = LinearMap(cp.cocycle.sigma.domain, A.carrier, tau_map.matrix)
    tau = validate_cocycle(action_op, tau_map)
    if not tau.flags.all_true:
        raise ValidationError("τ fails the cocycle flags")
    crossed_op = build_crossed_product(action_op, tau)
    y_alg = crossed_op.product_algebra.opposite()
    # G: (A^op#_τH^op)^op → A#_σH, a⊗h ↦ θ⁻¹(S̄(h))·(a#1)
    cleft = integral_from_crossed(cp)
    b = hopf.bialgebra
    cols = []
    for i in range(A.rank):
        iota = kron_vec(ring, A.carrier.basis_vector(i), b.algebra.unit)
        cache = [cp.product_algebra.product(
            cleft.theta_inv.apply(Sbar.column(j)), iota) for j in range(b.rank)]
        cols.extend(cache)
    g_map = LinearMap.from_columns(y_alg.carrier, cp.carrier, cols)
    iso = certify_algebra_iso(y_alg, cp.product_algebra, g_map,
                              "opposite crossed product")
    colinear = (cp.comodule.coaction @ g_map) == \
        (kron(g_map, LinearMap.identity(b.carrier)) @ crossed_op.comodule.coaction)
    return OppositeCrossed(crossed_op, tau, iso, y_alg, colinear)


# ---------------------------------------------------------------------------
# the two cleft compatibility maps


def cleft_maps(cl: CleftData, coin: Optional[Coinvariants] = None):
    """φ̃, ψ̃: H⊗A → Hom(H, A) by direct expansion:

    φ̃(h⊗a)(h̃) = Σ θ(S̄(h̃₂)) a θ(h₁) θ⁻¹(S̄(h̃₁)h₂)
    ψ̃(h⊗a)(h̃) = Σ θ⁻¹(S̄(h̃₃)) a θ(S̄(h̃₂)h₁) θ⁻¹(h̃₄S̄(h̃₁)h₂)
    """
    B_com = cl.comodule_algebra
    B = B_com.algebra
    hopf = ensure_hopf(B_com.hopf)
    b = hopf.bialgebra
    ring = B.ring
    rH = b.rank
    Sbar = hopf.twisted_antipode
    if coin is None:
        coin = coinvariants(B_com)
    rA = coin.rank

    def express(vec):
        coords = coin.express(vec)
        if coords is None:
            raise CoinvariantEscape("cleft map value escapes the coinvariants")
        return coords

    from .linalg import FreeModule, hom_module

    hom = hom_module(b.carrier, coin.module)
    dom = tensor_module(b.carrier, coin.module)

    def hmul(*vecs):
        out = b.algebra.unit
        for v in vecs:
            out = b.algebra.product(out, v)
        return out

    phi_cols = []
    psi_cols = []
    for i in range(rH):
        hi = i
        for j in range(rA):
            a_vec = coin.vectors[j]
            phi_out = [ring.zero] * (rA * rH)
            psi_out = [ring.zero] * (rA * rH)
            for t in range(rH):
                # φ̃ at h̃ = basis t
                val = B.carrier.zero_vector()
                for ct, (t1, t2) in b.coalgebra.sweedler_basis(t, 2):
                    for ci, (h1, h2) in b.coalgebra.sweedler_basis(hi, 2):
                        c = ring.mul(ct, ci)
                        term = B.product_many(
                            cl.theta.apply(Sbar.column(t2)),
                            a_vec,
                            cl.theta.column(h1),
                            cl.theta_inv.apply(
                                hmul(Sbar.column(t1), b.carrier.basis_vector(h2))))
                        val = vec_add(ring, val, vec_scale(ring, c, term))
                for aidx, av in enumerate(express(val)):
                    if (av):
                        phi_out[aidx * rH + t] = ring.add(phi_out[aidx * rH + t], av)
                # ψ̃ at h̃ = basis t
                val = B.carrier.zero_vector()
                for ct, (t1, t2, t3, t4) in b.coalgebra.sweedler_basis(t, 4):
                    for ci, (h1, h2) in b.coalgebra.sweedler_basis(hi, 2):
                        c = ring.mul(ct, ci)
                        term = B.product_many(
                            cl.theta_inv.apply(Sbar.column(t3)),
                            a_vec,
                            cl.theta.apply(hmul(Sbar.column(t2),
                                                b.carrier.basis_vector(h1))),
                            cl.theta_inv.apply(hmul(b.carrier.basis_vector(t4),
                                                    Sbar.column(t1),
                                                    b.carrier.basis_vector(h2))))
                        val = vec_add(ring, val, vec_scale(ring, c, term))
                for aidx, av in enumerate(express(val)):
                    if (av):
                        psi_out[aidx * rH + t] = ring.add(psi_out[aidx * rH + t], av)
            phi_cols.append(tuple(phi_out))
            psi_cols.append(tuple(psi_out))
    phi = LinearMap.from_columns(dom, hom, phi_cols)
    psi = LinearMap.from_columns(dom, hom, psi_cols)
    return phi, psi
