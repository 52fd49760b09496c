"""Exact dense linear algebra over Z, Q and Z/n.

Conventions, fixed once for the whole library:

* a :class:`LinearMap` stores its matrix row-major; column ``j`` is the image
  of the ``j``-th domain basis vector;
* tensor indices flatten row-major: ``e_i (x) f_j`` sits at ``i * rank(N) + j``;
* ``Hom(C, A)`` flattens the matrix of a map row-major, i.e. the basis map
  ``c_j -> a_i`` sits at index ``i * rank(C) + j``.

Solving is exact: Smith normal form over Z (with unimodular transforms), the
same machinery on the ``[A | n*I]`` lift for Z/n (composite n included), and
Gaussian elimination with ``Fraction`` arithmetic over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .errors import DimensionMismatch, NotInvertible, RingMismatch
from .rings import Elem, ModularRing, RationalRing, Ring

Vector = tuple
Matrix = tuple


@dataclass(frozen=True)
class FreeModule:
    """A free module of finite rank with labelled basis."""

    ring: Ring
    rank: int
    labels: tuple

    def __post_init__(self):
        if self.rank < 0:
            raise DimensionMismatch("rank must be non-negative")
        if len(self.labels) != self.rank:
            raise DimensionMismatch("label count must equal rank")
        if len(set(self.labels)) != self.rank:
            raise DimensionMismatch("basis labels must be pairwise distinct")

    def basis_vector(self, i: int) -> Vector:
        cache = self.__dict__.get("_basis_cache")
        if cache is None:
            one, zero = self.ring.one, self.ring.zero
            cache = tuple(
                tuple(one if j == i else zero for j in range(self.rank))
                for i in range(self.rank)
            )
            object.__setattr__(self, "_basis_cache", cache)
        if not 0 <= i < self.rank:
            raise DimensionMismatch(f"basis index {i} out of range")
        return cache[i]

    def zero_vector(self) -> Vector:
        return (self.ring.zero,) * self.rank

    def vector(self, entries) -> Vector:
        entries = tuple(self.ring.of(e) for e in entries)
        if len(entries) != self.rank:
            raise DimensionMismatch("vector length must equal rank")
        return entries


def free_module(ring: Ring, labels: Sequence[str]) -> FreeModule:
    return FreeModule(ring, len(labels), tuple(labels))


def unit_module(ring: Ring) -> FreeModule:
    """Rank-one module representing the ground ring itself."""
    return FreeModule(ring, 1, ("1",))


def tensor_module(m: FreeModule, n: FreeModule) -> FreeModule:
    if m.ring != n.ring:
        raise RingMismatch("tensor factors live over different rings")
    labels = tuple(f"{a}⊗{b}" for a in m.labels for b in n.labels)
    return FreeModule(m.ring, m.rank * n.rank, labels)


def dual_module(m: FreeModule) -> FreeModule:
    return FreeModule(m.ring, m.rank, tuple(f"{a}*" for a in m.labels))


def hom_module(dom: FreeModule, cod: FreeModule) -> FreeModule:
    """Hom(dom, cod) as a free module; see the flattening convention above."""
    if dom.ring != cod.ring:
        raise RingMismatch("hom of modules over different rings")
    labels = tuple(f"[{b}←{a}]" for b in cod.labels for a in dom.labels)
    return FreeModule(dom.ring, cod.rank * dom.rank, labels)


# ---------------------------------------------------------------------------
# vectors


def vec_add(ring: Ring, u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("vector length mismatch")
    return tuple(ring.add(a, b) for a, b in zip(u, v))


def vec_sub(ring: Ring, u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("vector length mismatch")
    return tuple(ring.sub(a, b) for a, b in zip(u, v))


def vec_scale(ring: Ring, c: Elem, u: Vector) -> Vector:
    if not c:
        return (ring.zero,) * len(u)
    mul = ring.mul
    return tuple(mul(c, a) if a else a for a in u)


def vec_is_zero(ring: Ring, u: Vector) -> bool:
    return all(ring.is_zero(a) for a in u)


def kron_vec(ring: Ring, u: Vector, v: Vector) -> Vector:
    """Flattened outer product: (u ⊗ v)[i*len(v)+j] = u_i * v_j."""
    out = []
    zero = ring.zero
    mul = ring.mul
    for a in u:
        if not a:
            out.extend([zero] * len(v))
        else:
            out.extend(mul(a, b) if b else zero for b in v)
    return tuple(out)


# ---------------------------------------------------------------------------
# linear maps


class LinearMap:
    """A matrix of ring elements between two free modules."""

    __slots__ = ("domain", "codomain", "matrix", "_cols")

    def __init__(self, domain: FreeModule, codomain: FreeModule, matrix):
        if domain.ring != codomain.ring:
            raise RingMismatch("domain and codomain rings differ")
        ring = domain.ring
        rows = tuple(tuple(ring.of(x) for x in row) for row in matrix)
        if len(rows) != codomain.rank:
            raise DimensionMismatch(
                f"matrix has {len(rows)} rows, codomain rank is {codomain.rank}"
            )
        for row in rows:
            if len(row) != domain.rank:
                raise DimensionMismatch(
                    f"matrix row length {len(row)}, domain rank {domain.rank}"
                )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "_cols", None)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("LinearMap is immutable")

    @staticmethod
    def _raw(domain: FreeModule, codomain: FreeModule, rows) -> "LinearMap":
        """Internal constructor for entries already in canonical form."""
        m = object.__new__(LinearMap)
        object.__setattr__(m, "domain", domain)
        object.__setattr__(m, "codomain", codomain)
        object.__setattr__(m, "matrix", tuple(tuple(r) for r in rows))
        object.__setattr__(m, "_cols", None)
        return m

    @property
    def ring(self) -> Ring:
        return self.domain.ring

    @staticmethod
    def identity(module: FreeModule) -> "LinearMap":
        one, zero = module.ring.one, module.ring.zero
        rows = [
            [one if i == j else zero for j in range(module.rank)]
            for i in range(module.rank)
        ]
        return LinearMap(module, module, rows)

    @staticmethod
    def zero(domain: FreeModule, codomain: FreeModule) -> "LinearMap":
        zero = domain.ring.zero
        rows = [[zero] * domain.rank for _ in range(codomain.rank)]
        return LinearMap(domain, codomain, rows)

    @staticmethod
    def from_columns(domain: FreeModule, codomain: FreeModule, cols) -> "LinearMap":
        cols = list(cols)
        if len(cols) != domain.rank:
            raise DimensionMismatch("column count must equal domain rank")
        rows = [[col[i] for col in cols] for i in range(codomain.rank)]
        return LinearMap(domain, codomain, rows)

    @staticmethod
    def from_function(
        domain: FreeModule, codomain: FreeModule, fn: Callable[[int], Vector]
    ) -> "LinearMap":
        """Build a map from its values on the domain basis."""
        return LinearMap.from_columns(domain, codomain, [fn(j) for j in range(domain.rank)])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.matrix)

    def sparse_columns(self):
        """Per column, the list of (row, coefficient) with nonzero coefficient."""
        if self._cols is None:
            cols = []
            for j in range(self.domain.rank):
                col = [
                    (i, self.matrix[i][j])
                    for i in range(self.codomain.rank)
                    if self.matrix[i][j]
                ]
                cols.append(col)
            object.__setattr__(self, "_cols", tuple(map(tuple, cols)))
        return self._cols

    def apply(self, vec: Vector) -> Vector:
        if len(vec) != self.domain.rank:
            raise DimensionMismatch("vector length must equal domain rank")
        ring = self.ring
        out = [ring.zero] * self.codomain.rank
        cols = self.sparse_columns()
        mul, add = ring.mul, ring.add
        for j, x in enumerate(vec):
            if not x:
                continue
            for i, c in cols[j]:
                out[i] = add(out[i], mul(c, x))
        return tuple(out)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other (apply ``other`` first)."""
        if self.ring != other.ring:
            raise RingMismatch("composition over different rings")
        if other.codomain.rank != self.domain.rank:
            raise DimensionMismatch("composition rank mismatch")
        cols = [self.apply(other.column(j)) for j in range(other.domain.rank)]
        rows = tuple(tuple(col[i] for col in cols)
                     for i in range(self.codomain.rank))
        return LinearMap._raw(other.domain, self.codomain, rows)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._require_same_shape(other)
        ring = self.ring
        rows = [
            [ring.add(a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return LinearMap._raw(self.domain, self.codomain, rows)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._require_same_shape(other)
        ring = self.ring
        rows = [
            [ring.sub(a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return LinearMap._raw(self.domain, self.codomain, rows)

    def scale(self, c: Elem) -> "LinearMap":
        ring = self.ring
        c = ring.of(c)
        rows = [[ring.mul(c, a) for a in row] for row in self.matrix]
        return LinearMap._raw(self.domain, self.codomain, rows)

    def transpose(self) -> "LinearMap":
        """The dual map between the dual modules (matrix transpose)."""
        rows = [
            [self.matrix[i][j] for i in range(self.codomain.rank)]
            for j in range(self.domain.rank)
        ]
        return LinearMap(dual_module(self.codomain), dual_module(self.domain), rows)

    def is_zero(self) -> bool:
        ring = self.ring
        return all(ring.is_zero(x) for row in self.matrix for x in row)

    def _require_same_shape(self, other: "LinearMap"):
        if self.ring != other.ring:
            raise RingMismatch("maps over different rings")
        if (
            self.domain.rank != other.domain.rank
            or self.codomain.rank != other.codomain.rank
        ):
            raise DimensionMismatch("map shapes differ")

    def __eq__(self, other) -> bool:
        # Labels are cosmetic; equality is ring + shape + matrix.
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.domain.rank == other.domain.rank
            and self.codomain.rank == other.codomain.rank
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.domain.rank, self.codomain.rank, self.matrix))

    def __repr__(self):  # pragma: no cover - cosmetic
        return f"LinearMap({self.codomain.rank}x{self.domain.rank} over {self.ring!r})"


def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product f ⊗ g acting on the flattened tensor basis."""
    if f.ring != g.ring:
        raise RingMismatch("kron over different rings")
    ring = f.ring
    dom = tensor_module(f.domain, g.domain)
    cod = tensor_module(f.codomain, g.codomain)
    gm = g.matrix
    rows = []
    for i1 in range(f.codomain.rank):
        frow = f.matrix[i1]
        for i2 in range(g.codomain.rank):
            grow = gm[i2]
            row = []
            for j1 in range(f.domain.rank):
                a = frow[j1]
                if ring.is_zero(a):
                    row.extend([ring.zero] * g.domain.rank)
                else:
                    row.extend(ring.mul(a, b) for b in grow)
            rows.append(row)
    return LinearMap._raw(dom, cod, rows)


def twist_map(m: FreeModule, n: FreeModule) -> LinearMap:
    """The canonical twist M⊗N → N⊗M, e_i⊗f_j ↦ f_j⊗e_i."""
    if m.ring != n.ring:
        raise RingMismatch("twist over different rings")
    ring = m.ring
    dom = tensor_module(m, n)
    cod = tensor_module(n, m)
    rows = [[ring.zero] * dom.rank for _ in range(cod.rank)]
    for i in range(m.rank):
        for j in range(n.rank):
            rows[j * m.rank + i][i * n.rank + j] = ring.one
    return LinearMap(dom, cod, rows)


# spec-facing name for the canonical twist constructor
twist = twist_map


def map_to_vec(f: LinearMap) -> Vector:
    """Flatten a map into the Hom(dom, cod) coordinate vector."""
    return tuple(x for row in f.matrix for x in row)


def vec_to_map(vec: Vector, dom: FreeModule, cod: FreeModule) -> LinearMap:
    """Inverse of :func:`map_to_vec`."""
    if len(vec) != dom.rank * cod.rank:
        raise DimensionMismatch("hom vector length mismatch")
    rows = [vec[i * dom.rank : (i + 1) * dom.rank] for i in range(cod.rank)]
    return LinearMap(dom, cod, rows)


# ---------------------------------------------------------------------------
# Smith normal form over Z


def smith_normal_form(rows):
    """Return (U, D, V) with U·A·V = D, D diagonal, d_i | d_{i+1}, U and V unimodular.

    Exact big-integer arithmetic throughout; no entry-size bound.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    k = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def row_sub(i, j, q):  # row_i -= q * row_j
        if q == 0:
            return
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):  # col_i -= q * col_j
        if q == 0:
            return
        for r in range(m):
            A[r][i] -= q * A[r][j]
        for r in range(k):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(k):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def diagonalize(start: int) -> int:
        t = start
        while t < min(m, k):
            pivot = None
            best = None
            for i in range(t, m):
                for j in range(t, k):
                    a = abs(A[i][j])
                    if a and (best is None or a < best):
                        pivot, best = (i, j), a
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        row_sub(i, t, q)
                        if A[i][t]:
                            swap_rows(i, t)
                            dirty = True
                for j in range(t + 1, k):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        col_sub(j, t, q)
                        if A[t][j]:
                            swap_cols(j, t)
                            dirty = True
                if not dirty:
                    break
            if A[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    rank = diagonalize(0)
    # enforce the divisibility chain d_i | d_{i+1}
    i = 0
    while i + 1 < rank:
        if A[i + 1][i + 1] % A[i][i] != 0:
            col_sub(i, i + 1, -1)  # col_i += col_{i+1}
            diagonalize(i)
            i = max(i - 1, 0)
        else:
            i += 1
    return U, A, V


def hermite_rows(rows):
    """Row Hermite normal form over Z: the canonical basis of the row lattice.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped.  Unique per row lattice.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    if m == 0:
        return []
    k = len(A[0])
    r = 0
    for col in range(k):
        if r == m:
            break
        while True:
            nonzeros = [i for i in range(r, m) if A[i][col]]
            if not nonzeros:
                break
            i0 = min(nonzeros, key=lambda i: abs(A[i][col]))
            A[r], A[i0] = A[i0], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if A[r][col]:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return [row for row in A[:r]]


def canonical_span(ring: Ring, vectors, length: int):
    """A canonical generating tuple for the span of ``vectors``.

    Two inputs with equal span produce identical output: Hermite form over Z,
    reduced row echelon form over Q, and the mod-n reduction of the Hermite
    form of the lifted lattice (span + n·Z^length) over Z/n.
    """
    vectors = [tuple(ring.of(x) for x in v) for v in vectors]
    for v in vectors:
        if len(v) != length:
            raise DimensionMismatch("span vectors of unequal length")
    if isinstance(ring, RationalRing):
        return tuple(tuple(r) for r in _rref_rows(vectors))
    if isinstance(ring, ModularRing):
        n = ring.n
        rows = [list(v) for v in vectors]
        rows += [[n if i == j else 0 for j in range(length)] for i in range(length)]
        reduced = []
        for row in hermite_rows(rows):
            out = tuple(x % n for x in row)
            if any(out):
                reduced.append(out)
        return tuple(reduced)
    return tuple(tuple(r) for r in hermite_rows(vectors))


def _rref_rows(vectors):
    rows = [list(v) for v in vectors if any(x != 0 for x in v)]
    if not rows:
        return []
    k = len(rows[0])
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col] if isinstance(rows[r][col], int) else rows[r][col] ** -1
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return [row for row in rows if any(x != 0 for x in row)]


# ---------------------------------------------------------------------------
# solving


class SolveStatus(Enum):
    UNIQUE = "unique"
    PARAMETRIC = "parametric"
    NO_SOLUTION = "no_solution"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    particular: Optional[Vector]
    kernel_basis: tuple

    @property
    def solvable(self) -> bool:
        return self.status is not SolveStatus.NO_SOLUTION


class PreparedSolver:
    """One factorization of a matrix, reusable for many right-hand sides."""

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = [tuple(ring.of(x) for x in r) for r in rows]
        self.m = len(self.rows)
        self.k = len(self.rows[0]) if self.m else 0
        self._kernel = None
        if isinstance(ring, RationalRing):
            self._prepare_field()
        elif isinstance(ring, ModularRing):
            self._prepare_modular()
        else:
            self._prepare_integer(self.rows, self.k)

    # -- integer / modular path (Smith normal form) --

    def _prepare_integer(self, rows, nvars):
        U, D, V = smith_normal_form(rows)
        self._U, self._D, self._V = U, D, V
        self._nvars = nvars  # solution variables (k, or k for the Z/n lift)

    def _prepare_modular(self):
        n = self.ring.n
        lifted = [list(r) + [n if i == j else 0 for j in range(self.m)]
                  for i, r in enumerate(self.rows)]
        self._prepare_integer(lifted, self.k)

    def _solve_snf(self, rhs):
        U, D = self._U, self._D
        m = len(U)
        cols = len(D[0]) if m else 0
        c = [sum(U[i][j] * rhs[j] for j in range(m)) for i in range(m)]
        r = min(m, cols)
        y = [0] * cols
        for i in range(m):
            d = D[i][i] if i < r else 0
            if d:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
            elif c[i]:
                return None
        V = self._V
        return [sum(V[i][j] * y[j] for j in range(cols)) for i in range(cols)]

    def _snf_kernel_columns(self):
        D, V = self._D, self._V
        m = len(D)
        cols = len(D[0]) if m else len(V)
        r = min(m, cols)
        out = []
        for j in range(cols):
            if j >= r or D[j][j] == 0:
                out.append([V[i][j] for i in range(cols)])
        return out

    # -- rational path (exact Gaussian elimination) --

    def _prepare_field(self):
        ring = self.ring
        R = [list(row) for row in self.rows]
        T = [[ring.one if i == j else ring.zero for j in range(self.m)]
             for i in range(self.m)]
        pivots = []
        r = 0
        for col in range(self.k):
            pivot = next((i for i in range(r, self.m) if R[i][col] != 0), None)
            if pivot is None:
                continue
            R[r], R[pivot] = R[pivot], R[r]
            T[r], T[pivot] = T[pivot], T[r]
            inv = ring.inv(R[r][col])
            R[r] = [ring.mul(inv, a) for a in R[r]]
            T[r] = [ring.mul(inv, a) for a in T[r]]
            for i in range(self.m):
                if i != r and R[i][col] != 0:
                    c = R[i][col]
                    R[i] = [ring.sub(a, ring.mul(c, b)) for a, b in zip(R[i], R[r])]
                    T[i] = [ring.sub(a, ring.mul(c, b)) for a, b in zip(T[i], T[r])]
            pivots.append(col)
            r += 1
            if r == self.m:
                break
        self._R, self._T, self._pivots = R, T, pivots

    # -- public API --

    def kernel(self):
        if self._kernel is not None:
            return self._kernel
        ring = self.ring
        if isinstance(ring, RationalRing):
            pivots = set(self._pivots)
            basis = []
            for col in range(self.k):
                if col in pivots:
                    continue
                vec = [ring.zero] * self.k
                vec[col] = ring.one
                for r, pc in enumerate(self._pivots):
                    vec[pc] = ring.neg(self._R[r][col])
                basis.append(tuple(vec))
        else:
            raw = self._snf_kernel_columns()
            if isinstance(ring, ModularRing):
                basis = [tuple(x % ring.n for x in v[: self.k]) for v in raw]
                basis = [v for v in basis if any(v)]
            else:
                basis = [tuple(v) for v in raw]
        self._kernel = canonical_span(self.ring, basis, self.k)
        return self._kernel

    def solve(self, rhs) -> SolveResult:
        rhs = [self.ring.of(x) for x in rhs]
        if len(rhs) != self.m:
            raise DimensionMismatch("right-hand side length mismatch")
        ring = self.ring
        particular = None
        if isinstance(ring, RationalRing):
            c = [ring.dot(self._T[i], rhs) for i in range(self.m)]
            npiv = len(self._pivots)
            if any(c[i] != 0 for i in range(npiv, self.m)):
                particular = None
            else:
                x = [ring.zero] * self.k
                for r, pc in enumerate(self._pivots):
                    x[pc] = c[r]
                particular = tuple(x)
        else:
            sol = self._solve_snf([int(x) for x in rhs])
            if sol is not None:
                if isinstance(ring, ModularRing):
                    particular = tuple(x % ring.n for x in sol[: self.k])
                else:
                    particular = tuple(sol)
        if particular is None:
            return SolveResult(SolveStatus.NO_SOLUTION, None, ())
        kernel = self.kernel()
        status = SolveStatus.UNIQUE if not kernel else SolveStatus.PARAMETRIC
        return SolveResult(status, particular, kernel)


def solve_linear(m: LinearMap, rhs) -> SolveResult:
    """Exact solution set of m·x = rhs over the map's ring."""
    if len(rhs) != m.codomain.rank:
        raise DimensionMismatch("right-hand side length must equal codomain rank")
    return PreparedSolver(m.ring, m.matrix).solve(rhs)


# ---------------------------------------------------------------------------
# determinants and inversion


def _det_int(rows) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for t in range(n - 1):
        if A[t][t] == 0:
            swap = next((i for i in range(t + 1, n) if A[i][t]), None)
            if swap is None:
                return 0
            A[t], A[swap] = A[swap], A[t]
            sign = -sign
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                A[i][j] = (A[i][j] * A[t][t] - A[i][t] * A[t][j]) // prev
            A[i][t] = 0
        prev = A[t][t]
    return sign * A[n - 1][n - 1]


def determinant(m: LinearMap) -> Elem:
    """Exact determinant of a square map."""
    if m.domain.rank != m.codomain.rank:
        raise DimensionMismatch("determinant of a non-square map")
    ring = m.ring
    if isinstance(ring, RationalRing):
        A = [list(row) for row in m.matrix]
        n = len(A)
        det = ring.one
        for t in range(n):
            pivot = next((i for i in range(t, n) if A[i][t] != 0), None)
            if pivot is None:
                return ring.zero
            if pivot != t:
                A[t], A[pivot] = A[pivot], A[t]
                det = ring.neg(det)
            det = ring.mul(det, A[t][t])
            inv = ring.inv(A[t][t])
            for i in range(t + 1, n):
                if A[i][t] != 0:
                    c = ring.mul(inv, A[i][t])
                    A[i] = [ring.sub(a, ring.mul(c, b)) for a, b in zip(A[i], A[t])]
        return det
    d = _det_int(m.matrix)
    return ring.of(d)


def invert_map(m: LinearMap) -> LinearMap:
    """Exact two-sided inverse; exists iff det(m) is a unit in the ring."""
    if m.domain.rank != m.codomain.rank:
        raise NotInvertible("cannot invert a non-square map")
    ring = m.ring
    det = determinant(m)
    if not ring.is_unit(det):
        raise NotInvertible(
            f"determinant {ring.show(det)} is not a unit in {ring!r}", determinant=det
        )
    n = m.domain.rank
    solver = PreparedSolver(ring, m.matrix)
    cols = []
    for j in range(n):
        rhs = [ring.one if i == j else ring.zero for i in range(n)]
        res = solver.solve(rhs)
        if not res.solvable:  # pragma: no cover - impossible once det is a unit
            raise NotInvertible("no solution while inverting", determinant=det)
        cols.append(res.particular)
    inv = LinearMap.from_columns(m.codomain, m.domain, cols)
    ident = LinearMap.identity(m.domain)
    if inv @ m != ident or m @ inv != LinearMap.identity(m.codomain):
        raise NotInvertible("inverse verification failed", determinant=det)
    return inv


def submodule_membership(ring: Ring, generators, v) -> Optional[Vector]:
    """Coefficients expressing ``v`` in the span of ``generators``, or None.

    Exact over all three rings (reduces to :func:`solve_linear` on the matrix
    whose columns are the generators).
    """
    v = tuple(ring.of(x) for x in v)
    gens = [tuple(ring.of(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != len(v):
            raise DimensionMismatch("generator/vector length mismatch")
    if not gens:
        return () if all(ring.is_zero(x) for x in v) else None
    rows = [[g[i] for g in gens] for i in range(len(v))]
    res = PreparedSolver(ring, rows).solve(v)
    return res.particular if res.solvable else None


def split_coefficient_map(ring: Ring, generators, length: int) -> Optional[LinearMap]:
    """A left inverse of the inclusion span(generators) ↪ R^length, if one exists.

    Returns P with P·G = I (G the generator matrix); existence certifies that
    the span is a direct summand and that the generators are independent.
    """
    g = len(generators)
    gens = [tuple(ring.of(x) for x in v) for v in generators]
    # Row p_j of P satisfies p_j · G = e_j, i.e. G^T · p_j = e_j.
    tsolver = PreparedSolver(ring, [list(gen) for gen in gens])
    prows = []
    for j in range(g):
        rhs = [ring.one if a == j else ring.zero for a in range(g)]
        res = tsolver.solve(rhs)
        if not res.solvable:
            return None
        prows.append(res.particular)
    dom = FreeModule(ring, length, tuple(f"x{i}" for i in range(length)))
    cod = FreeModule(ring, g, tuple(f"u{j}" for j in range(g)))
    return LinearMap(dom, cod, prows)
