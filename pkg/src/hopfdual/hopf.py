"""Algebras, coalgebras, bialgebras and Hopf algebras by structure constants.

Everything is finite free rank over an exact ring.  Sweedler expansion is
strictly left-nested: the n-fold comultiplication expands the first tensor
leg of the (n-1)-fold one.  Coassociativity (validated first) makes any other
nesting equal; fixing one makes formula transcription mechanical.
"""
from __future__ import annotations

from typing import Optional, Union

from .errors import (
    DimensionMismatch,
    NotConvInvertible,
    RingMismatch,
    ValidationError,
)
from .linalg import (
    FreeModule,
    LinearMap,
    dual_module,
    hom_module,
    invert_map,
    kron,
    kron_vec,
    map_to_vec,
    solve_linear,
    tensor_module,
    twist_map,
    unit_module,
    vec_to_map,
)
from .reporting import ValidationReport


class AlgebraData:
    """An associative unital algebra: carrier, multiplication map, unit vector."""

    def __init__(self, carrier: FreeModule, mult: LinearMap, unit):
        if mult.domain.rank != carrier.rank ** 2 or mult.codomain.rank != carrier.rank:
            raise DimensionMismatch("multiplication must map carrier⊗carrier to carrier")
        if mult.ring != carrier.ring:
            raise RingMismatch("multiplication ring differs from carrier ring")
        self.carrier = carrier
        self.mult = mult
        self.unit = carrier.vector(unit)

    @property
    def ring(self):
        return self.carrier.ring

    @property
    def rank(self):
        return self.carrier.rank

    def basis_product(self, i: int, j: int):
        """Sparse product of basis elements: list of (k, coefficient)."""
        return self.mult.sparse_columns()[i * self.rank + j]

    def product(self, u, v):
        # canonical elements: truthiness is the exact zero test
        ring = self.ring
        r = self.rank
        out = [ring.zero] * r
        cols = self.mult.sparse_columns()
        mul, add = ring.mul, ring.add
        for i, a in enumerate(u):
            if not a:
                continue
            base = i * r
            for j, b in enumerate(v):
                if not b:
                    continue
                col = cols[base + j]
                if not col:
                    continue
                ab = mul(a, b)
                for t, c in col:
                    out[t] = add(out[t], mul(c, ab))
        return tuple(out)

    def product_many(self, *vectors):
        out = self.unit
        for v in vectors:
            out = self.product(out, v)
        return out

    def is_commutative(self) -> bool:
        r = self.rank
        return all(
            self.basis_product(i, j) == self.basis_product(j, i)
            for i in range(r)
            for j in range(i + 1, r)
        )

    def opposite(self) -> "AlgebraData":
        sw = twist_map(self.carrier, self.carrier)
        return AlgebraData(self.carrier, self.mult @ sw, self.unit)

    def product_items(self, items_u, items_v) -> dict:
        """Sparse product of sparse vectors (lists of (index, coeff))."""
        ring = self.ring
        r = self.rank
        cols = self.mult.sparse_columns()
        mul, add = ring.mul, ring.add
        acc = {}
        for i, a in items_u:
            base = i * r
            for j, b in items_v:
                col = cols[base + j]
                if not col:
                    continue
                ab = mul(a, b)
                for t, c in col:
                    prev = acc.get(t)
                    acc[t] = mul(c, ab) if prev is None else add(prev, mul(c, ab))
        return {t: v for t, v in acc.items() if v}

    def validate(self, subject: str = "algebra") -> ValidationReport:
        rep = ValidationReport(subject)
        r = self.rank
        labels = self.carrier.labels
        # associativity on all basis triples, entirely on the sparse table
        witness = None
        cols = self.mult.sparse_columns()
        for i in range(r):
            for j in range(r):
                ij = cols[i * r + j]
                for k in range(r):
                    lhs = self.product_items(ij, ((k, self.ring.one),))
                    rhs = self.product_items(((i, self.ring.one),), cols[j * r + k])
                    if lhs != rhs:
                        witness = f"({labels[i]},{labels[j]},{labels[k]})"
                        break
                if witness:
                    break
            if witness:
                break
        rep.add("algebra.assoc", "multiplication is associative", witness is None, witness)
        witness = None
        for i in range(r):
            e = self.carrier.basis_vector(i)
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                witness = labels[i]
                break
        rep.add("algebra.unit", "two-sided unit law", witness is None, witness)
        return rep

    def __eq__(self, other):
        if not isinstance(other, AlgebraData):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rank == other.rank
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.rank, self.mult, self.unit))


def expand_sparse(sparse, rank, ring):
    out = [ring.zero] * rank
    for i, c in sparse:
        out[i] = c
    return tuple(out)


class CoalgebraData:
    """A coassociative counital coalgebra; the counit maps into the rank-one module."""

    def __init__(self, carrier: FreeModule, comult: LinearMap, counit: LinearMap):
        if comult.domain.rank != carrier.rank or comult.codomain.rank != carrier.rank ** 2:
            raise DimensionMismatch("comultiplication must map carrier to carrier⊗carrier")
        if counit.domain.rank != carrier.rank or counit.codomain.rank != 1:
            raise DimensionMismatch("counit must map carrier to the ground ring")
        self.carrier = carrier
        self.comult = comult
        self.counit = counit
        self._sw_cache = {}

    @property
    def ring(self):
        return self.carrier.ring

    @property
    def rank(self):
        return self.carrier.rank

    def counit_scalar(self, vec):
        return self.counit.apply(vec)[0]

    def sweedler_basis(self, i: int, legs: int):
        """Left-nested expansion of the basis element i into ``legs`` tensor legs.

        Returns a tuple of (coefficient, index-tuple) with nonzero coefficients.
        """
        key = (i, legs)
        cached = self._sw_cache.get(key)
        if cached is not None:
            return cached
        ring = self.ring
        if legs < 1:
            raise DimensionMismatch("at least one tensor leg required")
        if legs == 1:
            result = ((ring.one, (i,)),)
        else:
            r = self.rank
            cols = self.comult.sparse_columns()
            acc = {}
            for coeff, idx in self.sweedler_basis(i, legs - 1):
                for flat, d in cols[idx[0]]:
                    p, q = divmod(flat, r)
                    new = (p, q) + idx[1:]
                    c = ring.add(acc.get(new, ring.zero), ring.mul(coeff, d))
                    acc[new] = c
            result = tuple(
                (c, idx) for idx, c in sorted(acc.items()) if not ring.is_zero(c)
            )
        self._sw_cache[key] = result
        return result

    def sweedler(self, vec, legs: int):
        ring = self.ring
        acc = {}
        for i, a in enumerate(vec):
            if ring.is_zero(a):
                continue
            for coeff, idx in self.sweedler_basis(i, legs):
                c = ring.add(acc.get(idx, ring.zero), ring.mul(a, coeff))
                acc[idx] = c
        return tuple((c, idx) for idx, c in sorted(acc.items()) if not ring.is_zero(c))

    def is_cocommutative(self) -> bool:
        sw = twist_map(self.carrier, self.carrier)
        return (sw @ self.comult) == self.comult

    def co_opposite(self) -> "CoalgebraData":
        sw = twist_map(self.carrier, self.carrier)
        return CoalgebraData(self.carrier, sw @ self.comult, self.counit)

    def validate(self, subject: str = "coalgebra") -> ValidationReport:
        rep = ValidationReport(subject)
        ident = LinearMap.identity(self.carrier)
        lhs = kron(self.comult, ident) @ self.comult
        rhs = kron(ident, self.comult) @ self.comult
        witness = _first_column_difference(lhs, rhs, self.carrier.labels)
        rep.add("coalgebra.coassoc", "comultiplication is coassociative",
                witness is None, witness)
        left = kron(self.counit, ident) @ self.comult
        right = kron(ident, self.counit) @ self.comult
        w1 = _first_column_difference(left, ident, self.carrier.labels)
        w2 = _first_column_difference(right, ident, self.carrier.labels)
        rep.add("coalgebra.counit", "counit laws hold", w1 is None and w2 is None,
                w1 or w2)
        return rep


def _first_column_difference(a: LinearMap, b: LinearMap, labels) -> Optional[str]:
    if a == b:
        return None
    for j in range(a.domain.rank):
        if a.column(j) != b.column(j):
            return labels[j] if j < len(labels) else f"column {j}"
    return "shape"


class BialgebraData:
    """An algebra and coalgebra on the same carrier, compatibly."""

    def __init__(self, algebra: AlgebraData, coalgebra: CoalgebraData):
        if algebra.carrier.rank != coalgebra.carrier.rank or algebra.ring != coalgebra.ring:
            raise DimensionMismatch("algebra and coalgebra must share a carrier")
        self.algebra = algebra
        self.coalgebra = coalgebra

    @property
    def carrier(self):
        return self.algebra.carrier

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def rank(self):
        return self.algebra.rank

    def unit_map(self) -> LinearMap:
        """The ring embedding R → H, 1 ↦ 1_H."""
        return LinearMap.from_columns(unit_module(self.ring), self.carrier,
                                      [self.algebra.unit])

    def unit_counit_map(self) -> LinearMap:
        """η∘ε as an endo-map of the carrier."""
        return self.unit_map() @ self.coalgebra.counit

    def validate(self, subject: str = "bialgebra") -> ValidationReport:
        rep = ValidationReport(subject)
        rep.extend(self.algebra.validate(subject))
        rep.extend(self.coalgebra.validate(subject))
        H = self.carrier
        ident = LinearMap.identity(H)
        mult, comult = self.algebra.mult, self.coalgebra.comult
        counit = self.coalgebra.counit
        # Δ is an algebra morphism into H⊗H
        mid = kron(kron(ident, twist_map(H, H)), ident)
        mult_hh = kron(mult, mult) @ mid
        lhs = comult @ mult
        rhs = mult_hh @ kron(comult, comult)
        w = _first_pair_difference(lhs, rhs, H.labels)
        rep.add("bialgebra.comult_mult", "comultiplication is multiplicative", w is None, w)
        # ε is an algebra morphism
        lhs2 = counit @ mult
        rhs2 = kron(counit, counit)
        w = _first_pair_difference(lhs2, rhs2, H.labels)
        rep.add("bialgebra.counit_mult", "counit is multiplicative", w is None, w)
        # the unit is grouplike
        one = self.algebra.unit
        ok = self.coalgebra.comult.apply(one) == kron_vec(self.ring, one, one)
        ok = ok and self.ring.is_one(self.coalgebra.counit_scalar(one))
        rep.add("bialgebra.unit_grouplike", "Δ(1)=1⊗1 and ε(1)=1", ok,
                None if ok else "1")
        return rep


def _first_pair_difference(a: LinearMap, b: LinearMap, labels) -> Optional[str]:
    if a == b:
        return None
    n = len(labels)
    for j in range(a.domain.rank):
        if a.column(j) != b.column(j):
            if n and a.domain.rank == n * n:
                return f"({labels[j // n]},{labels[j % n]})"
            return f"column {j}"
    return "shape"


class HopfData:
    """A bialgebra with antipode and (optionally) a twisted antipode.

    The twisted antipode is an antipode for the opposite algebra: it satisfies
    Σ S̄(h₂)h₁ = ε(h)1 = Σ h₂S̄(h₁).
    """

    def __init__(self, bialgebra: BialgebraData, antipode: LinearMap,
                 twisted_antipode: Optional[LinearMap] = None):
        if antipode.domain.rank != bialgebra.rank or antipode.codomain.rank != bialgebra.rank:
            raise DimensionMismatch("antipode must be an endo-map of the carrier")
        self.bialgebra = bialgebra
        self.antipode = antipode
        self.twisted_antipode = twisted_antipode

    @property
    def algebra(self):
        return self.bialgebra.algebra

    @property
    def coalgebra(self):
        return self.bialgebra.coalgebra

    @property
    def carrier(self):
        return self.bialgebra.carrier

    @property
    def ring(self):
        return self.bialgebra.ring

    @property
    def rank(self):
        return self.bialgebra.rank

    def validate(self, subject: str = "hopf") -> ValidationReport:
        rep = self.bialgebra.validate(subject)
        H = self.carrier
        ident = LinearMap.identity(H)
        mult = self.algebra.mult
        comult = self.coalgebra.comult
        eta_eps = self.bialgebra.unit_counit_map()
        S = self.antipode
        lhs = mult @ kron(S, ident) @ comult
        rhs = mult @ kron(ident, S) @ comult
        w = (_first_column_difference(lhs, eta_eps, H.labels)
             or _first_column_difference(rhs, eta_eps, H.labels))
        rep.add("hopf.antipode", "Σ S(h₁)h₂ = ε(h)1 = Σ h₁S(h₂)", w is None, w)
        rep.extend(_anti_morphism_checks(self, S, "hopf.antipode_anti", "antipode"))
        if self.twisted_antipode is not None:
            Sb = self.twisted_antipode
            sw = twist_map(H, H)
            lhs = mult @ kron(Sb, ident) @ sw @ comult
            rhs = mult @ kron(ident, Sb) @ sw @ comult
            w = (_first_column_difference(lhs, eta_eps, H.labels)
                 or _first_column_difference(rhs, eta_eps, H.labels))
            rep.add("hopf.twisted_antipode", "Σ S̄(h₂)h₁ = ε(h)1 = Σ h₂S̄(h₁)",
                    w is None, w)
            rep.extend(_anti_morphism_checks(self, Sb, "hopf.twisted_anti",
                                             "twisted antipode"))
        return rep

    def __eq__(self, other):
        if not isinstance(other, HopfData):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.coalgebra.comult == other.coalgebra.comult
            and self.coalgebra.counit == other.coalgebra.counit
            and self.antipode == other.antipode
            and self.twisted_antipode == other.twisted_antipode
        )


def _anti_morphism_checks(h: HopfData, S: LinearMap, prefix: str, name: str) -> ValidationReport:
    rep = ValidationReport()
    H = h.carrier
    mult, comult = h.algebra.mult, h.coalgebra.comult
    sw = twist_map(H, H)
    alg_anti = (S @ mult) == (mult @ kron(S, S) @ sw)
    unit_ok = S.apply(h.algebra.unit) == h.algebra.unit
    rep.add(f"{prefix}.algebra", f"{name} is an algebra anti-morphism",
            alg_anti and unit_ok)
    coalg_anti = (comult @ S) == (kron(S, S) @ sw @ comult)
    counit_ok = (h.coalgebra.counit @ S) == h.coalgebra.counit
    rep.add(f"{prefix}.coalgebra", f"{name} is a coalgebra anti-morphism",
            coalg_anti and counit_ok)
    return rep


HopfLike = Union[BialgebraData, HopfData]


def bialgebra_of(h: HopfLike) -> BialgebraData:
    return h.bialgebra if isinstance(h, HopfData) else h


def ensure_hopf(h: HopfLike) -> HopfData:
    """Return ``h`` as HopfData, computing (twisted) antipodes if needed."""
    if isinstance(h, HopfData):
        if h.twisted_antipode is None:
            return HopfData(h.bialgebra, h.antipode, compute_twisted_antipode(h.bialgebra))
        return h
    b = h
    return HopfData(b, compute_antipode(b), compute_twisted_antipode(b))


# ---------------------------------------------------------------------------
# convolution


class ConvolutionAlgebra:
    """Hom_R(C, A) under (f⋆g)(c) = Σ f(c₁)g(c₂) with unit η_A∘ε_C."""

    def __init__(self, source: CoalgebraData, target: AlgebraData):
        if source.ring != target.ring:
            raise RingMismatch("convolution of structures over different rings")
        self.source = source
        self.target = target
        self.carrier = hom_module(source.carrier, target.carrier)
        unit_embed = LinearMap.from_columns(unit_module(target.ring), target.carrier,
                                            [target.unit])
        self.unit_vec = map_to_vec(unit_embed @ source.counit)
        self._algebra = None

    @property
    def ring(self):
        return self.source.ring

    def as_map(self, vec) -> LinearMap:
        return vec_to_map(vec, self.source.carrier, self.target.carrier)

    def convolve(self, f_vec, g_vec):
        F, G = self.as_map(f_vec), self.as_map(g_vec)
        comp = self.target.mult @ kron(F, G) @ self.source.comult
        return map_to_vec(comp)

    def algebra(self) -> AlgebraData:
        """The convolution product as an AlgebraData on the hom module."""
        if self._algebra is None:
            ring = self.ring
            rC, rA = self.source.rank, self.target.rank
            cols = []
            for i in range(rA):
                for j in range(rC):
                    for k in range(rA):
                        for l in range(rC):
                            out = [ring.zero] * (rA * rC)
                            prod = self.target.basis_product(i, k)
                            drow = j * rC + l
                            for m in range(rC):
                                s = self.source.comult.matrix[drow][m]
                                if ring.is_zero(s):
                                    continue
                                for t, c in prod:
                                    out[t * rC + m] = ring.add(
                                        out[t * rC + m], ring.mul(s, c))
                            cols.append(tuple(out))
            mult = LinearMap.from_columns(tensor_module(self.carrier, self.carrier),
                                          self.carrier, cols)
            self._algebra = AlgebraData(self.carrier, mult, self.unit_vec)
        return self._algebra


def convolution_invert(conv: ConvolutionAlgebra, f_vec):
    """The two-sided convolution inverse of ``f_vec`` in Hom(C, A).

    Solves f⋆x = η∘ε as a linear system, then verifies x⋆f = η∘ε; a right
    inverse that fails the left check is reported distinctly (a two-sided
    inverse, when it exists, is unique and equals every one-sided one).
    """
    f_vec = tuple(conv.ring.of(x) for x in f_vec)
    n = conv.carrier.rank
    cols = []
    for idx in range(n):
        basis = conv.carrier.basis_vector(idx)
        cols.append(conv.convolve(f_vec, basis))
    lmap = LinearMap.from_columns(conv.carrier, conv.carrier, cols)
    res = solve_linear(lmap, conv.unit_vec)
    if not res.solvable:
        raise NotConvInvertible("f⋆x = η∘ε has no solution", reason="no_right_inverse")
    x = res.particular
    if conv.convolve(x, f_vec) != conv.unit_vec:
        raise NotConvInvertible("right inverse exists but x⋆f ≠ η∘ε",
                                reason="one_sided")
    return x


def compute_antipode(b: HopfLike) -> LinearMap:
    """The antipode as the convolution inverse of the identity in Hom(H, H)."""
    b = bialgebra_of(b)
    conv = ConvolutionAlgebra(b.coalgebra, b.algebra)
    x = convolution_invert(conv, map_to_vec(LinearMap.identity(b.carrier)))
    return conv.as_map(x)


def compute_twisted_antipode(b: HopfLike) -> LinearMap:
    """The antipode of the opposite algebra (same coalgebra), when it exists."""
    b = bialgebra_of(b)
    conv = ConvolutionAlgebra(b.coalgebra, b.algebra.opposite())
    x = convolution_invert(conv, map_to_vec(LinearMap.identity(b.carrier)))
    return conv.as_map(x)


# ---------------------------------------------------------------------------
# duals, opposites, tensor and matrix algebras


def dual_hopf(h: HopfData) -> HopfData:
    """The dual Hopf algebra on H* (finite free rank, so H° = H*)."""
    H = h.carrier
    ring = h.ring
    Hd = dual_module(H)
    r = H.rank
    comult_m = h.coalgebra.comult.matrix
    mult_m = h.algebra.mult.matrix
    # (δ_i ⋆ δ_j)(h_k) = coefficient of h_i⊗h_j in Δ(h_k)
    mult_rows = [[comult_m[i][k] for i in range(r * r)] for k in range(r)]
    mult_d = LinearMap(tensor_module(Hd, Hd), Hd, mult_rows)
    unit_d = tuple(h.coalgebra.counit.matrix[0])
    comult_rows = [[mult_m[k][i] for k in range(r)] for i in range(r * r)]
    comult_d = LinearMap(Hd, tensor_module(Hd, Hd), comult_rows)
    counit_d = LinearMap(Hd, unit_module(ring), [list(h.algebra.unit)])
    antipode_d = LinearMap(Hd, Hd, [[h.antipode.matrix[j][i] for j in range(r)]
                                    for i in range(r)])
    twisted_d = None
    if h.twisted_antipode is not None:
        twisted_d = LinearMap(Hd, Hd, [[h.twisted_antipode.matrix[j][i]
                                        for j in range(r)] for i in range(r)])
    out = HopfData(
        BialgebraData(AlgebraData(Hd, mult_d, unit_d),
                      CoalgebraData(Hd, comult_d, counit_d)),
        antipode_d,
        twisted_d,
    )
    out.validate("dual").require()
    return out


def opposite_bialgebra(b: HopfLike) -> BialgebraData:
    b = bialgebra_of(b)
    return BialgebraData(b.algebra.opposite(), b.coalgebra)


def co_opposite_bialgebra(b: HopfLike) -> BialgebraData:
    b = bialgebra_of(b)
    return BialgebraData(b.algebra, b.coalgebra.co_opposite())


def opposite_hopf(h: HopfData) -> HopfData:
    """H^op as a Hopf algebra: its antipode is the twisted antipode of H."""
    h = ensure_hopf(h)
    return HopfData(opposite_bialgebra(h), h.twisted_antipode, h.antipode)


def tensor_algebra(a: AlgebraData, b: AlgebraData) -> AlgebraData:
    """A ⊗ B with componentwise product (a⊗b)(a'⊗b') = aa'⊗bb'."""
    if a.ring != b.ring:
        raise RingMismatch("tensor algebra over different rings")
    A, B = a.carrier, b.carrier
    ida, idb = LinearMap.identity(A), LinearMap.identity(B)
    mid = kron(kron(ida, twist_map(B, A)), idb)
    mult = kron(a.mult, b.mult) @ mid
    carrier = tensor_module(A, B)
    mult = LinearMap(tensor_module(carrier, carrier), carrier, mult.matrix)
    return AlgebraData(carrier, mult, kron_vec(a.ring, a.unit, b.unit))


def tensor_coalgebra(c: CoalgebraData, d: CoalgebraData) -> CoalgebraData:
    """C ⊗ D with Δ = (id⊗τ⊗id)∘(Δ_C⊗Δ_D) and ε = ε_C⊗ε_D."""
    if c.ring != d.ring:
        raise RingMismatch("tensor coalgebra over different rings")
    C, D = c.carrier, d.carrier
    idc, idd = LinearMap.identity(C), LinearMap.identity(D)
    mid = kron(kron(idc, twist_map(C, D)), idd)
    comult = mid @ kron(c.comult, d.comult)
    carrier = tensor_module(C, D)
    comult = LinearMap(carrier, tensor_module(carrier, carrier), comult.matrix)
    counit = LinearMap(carrier, unit_module(c.ring), kron(c.counit, d.counit).matrix)
    return CoalgebraData(carrier, comult, counit)


def matrix_algebra(ring, n: int) -> AlgebraData:
    """M_n(R) on the matrix units e_ij with e_ij·e_kl = δ_jk·e_il."""
    labels = tuple(f"e[{i},{j}]" for i in range(n) for j in range(n))
    carrier = FreeModule(ring, n * n, labels)
    cols = []
    zero, one = ring.zero, ring.one
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out = [zero] * (n * n)
                    if j == k:
                        out[i * n + l] = one
                    cols.append(tuple(out))
    mult = LinearMap.from_columns(tensor_module(carrier, carrier), carrier, cols)
    unit = tuple(one if (idx // n) == (idx % n) else zero for idx in range(n * n))
    return AlgebraData(carrier, mult, unit)


def endomorphism_algebra(module: FreeModule) -> AlgebraData:
    """End_R(M) under composition, on the Hom(M, M) flattening.

    With the row-major hom flattening this has exactly the structure constants
    of :func:`matrix_algebra`.
    """
    ring = module.ring
    n = module.rank
    base = matrix_algebra(ring, n)
    carrier = hom_module(module, module)
    mult = LinearMap(tensor_module(carrier, carrier), carrier, base.mult.matrix)
    return AlgebraData(carrier, mult, base.unit)


def validate_hopf(h: HopfData, subject: str = "hopf") -> ValidationReport:
    """Every axiom, exact pass/fail, witness basis element on failure."""
    return h.validate(subject)


# ---------------------------------------------------------------------------
# certified isomorphisms


class AlgebraIso:
    """A linear map certified multiplicative, unital and invertible."""

    def __init__(self, source: AlgebraData, target: AlgebraData, map_: LinearMap,
                 inverse: LinearMap):
        self.source = source
        self.target = target
        self.map = map_
        self.inverse = inverse

    def compose(self, earlier: "AlgebraIso") -> "AlgebraIso":
        """self ∘ earlier, staying certified (composites of isos are isos)."""
        if earlier.target is not self.source and earlier.target != self.source:
            raise DimensionMismatch("iso composition mismatch")
        return AlgebraIso(earlier.source, self.target, self.map @ earlier.map,
                          earlier.inverse @ self.inverse)


def algebra_morphism_witness(source: AlgebraData, target: AlgebraData,
                             map_: LinearMap) -> Optional[str]:
    """First basis pair where map(xy) ≠ map(x)map(y), or a unit failure,
    or None when the map is a unital algebra morphism."""
    if map_.domain.rank != source.rank or map_.codomain.rank != target.rank:
        raise DimensionMismatch("map shape does not match the algebras")
    if map_.apply(source.unit) != target.unit:
        return "1"
    r = source.rank
    ring = source.ring
    images = [[(t, v) for t, v in enumerate(map_.column(j)) if v]
              for j in range(r)]
    for i in range(r):
        for j in range(r):
            lhs = map_.apply(expand_sparse(source.basis_product(i, j), r, ring))
            lhs_items = {t: v for t, v in enumerate(lhs) if v}
            rhs = target.product_items(images[i], images[j])
            if lhs_items != rhs:
                return f"({source.carrier.labels[i]},{source.carrier.labels[j]})"
    return None


def certify_algebra_iso(source: AlgebraData, target: AlgebraData,
                        map_: LinearMap, what: str = "iso") -> AlgebraIso:
    """Check map(xy)=map(x)map(y) on all basis pairs, map(1)=1, and invert."""
    witness = algebra_morphism_witness(source, target, map_)
    if witness is not None:
        raise ValidationError(f"{what}: not a unital algebra morphism at {witness}")
    inverse = invert_map(map_)
    return AlgebraIso(source, target, map_, inverse)


def certified_or_none(source, target, map_, what="iso"):
    try:
        return certify_algebra_iso(source, target, map_, what)
    except (ValidationError, DimensionMismatch):
        return None
