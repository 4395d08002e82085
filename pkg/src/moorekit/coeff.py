"""Exact arithmetic for finite-dimensional commutative algebras over Z/p.

An algebra is presented by a rank-3 tensor of structure constants over a
prime field: e_i * e_j = sum_k c[i,j,k] e_k.  All linear algebra (row
reduction, kernels, quotients) is exact field arithmetic; subspaces are
kept in reduced row echelon form so that subspace equality is matrix
equality.  Every value is immutable after construction and every
operation is a pure function.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class StructureError(ValueError):
    """A value violates a structural precondition (parent mismatch, bad shape)."""


class PreconditionError(ValueError):
    """An operation's mathematical hypothesis failed on the given input."""


# ---------------------------------------------------------------------------
# prime fields and exact row reduction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z/p for a small prime p (trial division on construction)."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise StructureError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a = a % self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


def _as_array(data, p: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64) % p
    arr.setflags(write=False)
    return arr


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over Z/p.

    Returns (R, pivots) where R has one row per pivot, pivot entries 1,
    zero rows dropped, rows ordered by pivot column.  This is the
    canonical form used for subspace comparison.
    """
    A = np.array(mat, dtype=np.int64) % p
    if A.ndim == 1:
        A = A.reshape(1, -1)
    m, n = A.shape
    row = 0
    pivots: list[int] = []
    for col in range(n):
        piv = -1
        for r in range(row, m):
            if A[r, col] % p != 0:
                piv = r
                break
        if piv == -1:
            continue
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        A[row] = (A[row] * pow(int(A[row, col]), p - 2, p)) % p
        for r in range(m):
            if r != row and A[r, col] % p != 0:
                A[r] = (A[r] - A[r, col] * A[row]) % p
        pivots.append(col)
        row += 1
        if row == m:
            break
    R = A[:row] % p
    R.setflags(write=False)
    return R, tuple(pivots)


def null_space(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (rref rows) of {x : mat @ x = 0} over Z/p."""
    A = np.array(mat, dtype=np.int64) % p
    if A.size == 0:
        dim = A.shape[1] if A.ndim == 2 else 0
        return rref(np.eye(dim, dtype=np.int64), p)[0]
    R, pivots = rref(A, p)
    n = A.shape[1]
    free = [j for j in range(n) if j not in pivots]
    vecs = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        vecs[t, j] = 1
        for r, c in enumerate(pivots):
            vecs[t, c] = (-R[r, j]) % p
    return rref(vecs, p)[0]


def reduce_against(v: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Residue of v modulo the row space of an rref basis."""
    w = np.array(v, dtype=np.int64) % p
    for r, c in zip(basis, pivots):
        if w[c] % p:
            w = (w - w[c] * r) % p
    return w


def row_space_contains(basis: np.ndarray, pivots: Sequence[int], v: np.ndarray, p: int) -> bool:
    return not reduce_against(v, basis, pivots, p).any()


def intersect_row_spaces(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """rref basis of the intersection of two row spaces."""
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    # pairs (a, b) with a @ U = b @ V span the intersection via a @ U
    stacked = np.vstack([U, (-V) % p]).T % p
    pairs = null_space(stacked, p)
    if pairs.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    vecs = pairs[:, : U.shape[0]] @ U % p
    return rref(vecs, p)[0]


def sum_row_spaces(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    return rref(np.vstack([U, V]), p)[0]


def solve_in_rows(basis: np.ndarray, pivots: Sequence[int], v: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of v in an rref row basis (v must lie in the row space)."""
    if not row_space_contains(basis, pivots, v, p):
        raise StructureError("vector outside subspace")
    return np.array(v, dtype=np.int64)[list(pivots)] % p


# ---------------------------------------------------------------------------
# algebras, elements, morphisms


@dataclass(frozen=True, eq=False)
class Algebra:
    """Commutative algebra over Z/p given by structure constants.

    ``structure[i, j, k]`` is the e_k coefficient of e_i * e_j.  The
    algebra is not required to be unital; ``identity`` is optional
    metadata naming a verified two-sided identity basis element.
    """

    field: PrimeField
    structure: np.ndarray
    basis_names: tuple[str, ...]
    identity: int | None = None
    name: str = ""

    def __post_init__(self):
        dim = len(self.basis_names)
        arr = _as_array(self.structure, self.field.p)
        if arr.shape != (dim, dim, dim):
            raise StructureError(
                f"structure tensor shape {arr.shape} does not match dim {dim}")
        object.__setattr__(self, "structure", arr)
        if self.identity is not None and not (0 <= self.identity < dim):
            raise StructureError("identity index out of range")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def p(self) -> int:
        return self.field.p

    def zero(self) -> Element:
        return Element(self, np.zeros(self.dim, dtype=np.int64))

    def basis_element(self, i: int) -> Element:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return Element(self, v)

    def basis(self) -> list[Element]:
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coeffs) -> Element:
        return Element(self, coeffs)

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.structure) % self.p

    def __repr__(self):
        label = self.name or "Algebra"
        return f"<{label} dim={self.dim} over Z/{self.p}>"


@dataclass(frozen=True, eq=False)
class Element:
    """Coefficient vector in a fixed algebra."""

    parent: Algebra
    coeffs: np.ndarray

    def __post_init__(self):
        arr = _as_array(self.coeffs, self.parent.p)
        if arr.shape != (self.parent.dim,):
            raise StructureError(
                f"coefficient vector length {arr.shape} does not match dim {self.parent.dim}")
        object.__setattr__(self, "coeffs", arr)

    def _check_parent(self, other: Element) -> None:
        if self.parent is not other.parent:
            raise StructureError("elements belong to different algebras")

    def __add__(self, other: Element) -> Element:
        self._check_parent(other)
        return Element(self.parent, (self.coeffs + other.coeffs) % self.parent.p)

    def __sub__(self, other: Element) -> Element:
        self._check_parent(other)
        return Element(self.parent, (self.coeffs - other.coeffs) % self.parent.p)

    def __neg__(self) -> Element:
        return Element(self.parent, (-self.coeffs) % self.parent.p)

    def __mul__(self, other: Element) -> Element:
        self._check_parent(other)
        return Element(self.parent, self.parent.mul_vec(self.coeffs, other.coeffs))

    def scale(self, c: int) -> Element:
        return Element(self.parent, (c * self.coeffs) % self.parent.p)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.parent is other.parent
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((id(self.parent), self.coeffs.tobytes()))

    def __repr__(self):
        return f"Element({list(map(int, self.coeffs))})"


def mul(a: Element, b: Element) -> Element:
    """Product in the ambient algebra; commutative by validated structure."""
    return a * b


@dataclass(frozen=True, eq=False)
class Morphism:
    """Linear map given by a target.dim x source.dim matrix over Z/p."""

    source: Algebra
    target: Algebra
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.p != self.target.p:
            raise StructureError("source and target over different primes")
        arr = _as_array(self.matrix, self.source.p)
        if arr.shape != (self.target.dim, self.source.dim):
            raise StructureError(
                f"matrix shape {arr.shape}, expected {(self.target.dim, self.source.dim)}")
        object.__setattr__(self, "matrix", arr)

    def __call__(self, x: Element) -> Element:
        if x.parent is not self.source:
            raise StructureError("element not in the source algebra")
        return Element(self.target, self.matrix @ x.coeffs % self.source.p)

    def apply_vec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ (np.asarray(v, dtype=np.int64) % self.source.p) % self.source.p

    def compose(self, inner: Morphism) -> Morphism:
        """self after inner."""
        if inner.target is not self.source:
            raise StructureError("morphisms do not compose")
        return Morphism(inner.source, self.target, self.matrix @ inner.matrix % self.source.p)

    def is_multiplicative(self) -> bool:
        """f(e_i e_j) = f(e_i) f(e_j) on all basis pairs."""
        p = self.source.p
        lhs = np.einsum("ijm,km->ijk", self.source.structure, self.matrix) % p
        rhs = np.einsum("ai,bj,abk->ijk", self.matrix, self.matrix,
                        self.target.structure) % p
        return np.array_equal(lhs, rhs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Morphism) and self.source is other.source
                and self.target is other.target
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.matrix.tobytes()))

    @staticmethod
    def identity(A: Algebra) -> Morphism:
        return Morphism(A, A, np.eye(A.dim, dtype=np.int64))

    @staticmethod
    def zero(A: Algebra, B: Algebra) -> Morphism:
        return Morphism(A, B, np.zeros((B.dim, A.dim), dtype=np.int64))


@dataclass(frozen=True, eq=False)
class Ideal:
    """Subspace of an algebra, closed under multiplication, in rref form."""

    parent: Algebra
    basis_matrix: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    def __post_init__(self):
        mat = np.asarray(self.basis_matrix, dtype=np.int64)
        if mat.size == 0:
            mat = np.zeros((0, self.parent.dim), dtype=np.int64)
        else:
            mat = mat.reshape(-1, self.parent.dim)
        R, piv = rref(mat, self.parent.p)
        object.__setattr__(self, "basis_matrix", R)
        object.__setattr__(self, "pivots", piv)

    @property
    def dim(self) -> int:
        return self.basis_matrix.shape[0]

    def contains(self, x: Element | np.ndarray) -> bool:
        v = x.coeffs if isinstance(x, Element) else np.asarray(x)
        return row_space_contains(self.basis_matrix, self.pivots, v, self.parent.p)

    def contains_space(self, other: Ideal | np.ndarray) -> bool:
        rows = other.basis_matrix if isinstance(other, Ideal) else np.asarray(other)
        return all(self.contains(r) for r in rows)

    def basis_elements(self) -> list[Element]:
        return [Element(self.parent, r) for r in self.basis_matrix]

    def coords(self, x: Element | np.ndarray) -> np.ndarray:
        v = x.coeffs if isinstance(x, Element) else np.asarray(x)
        return solve_in_rows(self.basis_matrix, self.pivots, v, self.parent.p)

    def is_mult_closed(self) -> bool:
        """Closed under multiplication by every parent basis element."""
        A = self.parent
        for r in self.basis_matrix:
            for i in range(A.dim):
                prod = np.einsum("j,jk->k", r, A.structure[i]) % A.p
                if not self.contains(prod):
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, Ideal) and self.parent is other.parent
                and np.array_equal(self.basis_matrix, other.basis_matrix))

    def __hash__(self):
        return hash((id(self.parent), self.basis_matrix.tobytes()))

    def __repr__(self):
        return f"<Ideal dim={self.dim} of {self.parent!r}>"


@dataclass(frozen=True, eq=False)
class BilinearMap:
    """Bilinear map left x right -> target: tensor[i, j, k] over Z/p."""

    left: Algebra
    right: Algebra
    target: Algebra
    tensor: np.ndarray

    def __post_init__(self):
        arr = _as_array(self.tensor, self.target.p)
        want = (self.left.dim, self.right.dim, self.target.dim)
        if arr.shape != want:
            raise StructureError(f"tensor shape {arr.shape}, expected {want}")
        object.__setattr__(self, "tensor", arr)

    def __call__(self, x: Element, y: Element) -> Element:
        if x.parent is not self.left or y.parent is not self.right:
            raise StructureError("arguments not in the declared algebras")
        out = np.einsum("i,j,ijk->k", x.coeffs, y.coeffs, self.tensor) % self.target.p
        return Element(self.target, out)

    def apply_vecs(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u % self.target.p, v % self.target.p,
                         self.tensor) % self.target.p

    def __eq__(self, other) -> bool:
        return (isinstance(other, BilinearMap) and self.left is other.left
                and self.right is other.right and self.target is other.target
                and np.array_equal(self.tensor, other.tensor))

    def __hash__(self):
        return hash(self.tensor.tobytes())

    @staticmethod
    def zero(left: Algebra, right: Algebra, target: Algebra) -> BilinearMap:
        return BilinearMap(left, right, target,
                           np.zeros((left.dim, right.dim, target.dim), dtype=np.int64))

    @staticmethod
    def from_multiplication(A: Algebra) -> BilinearMap:
        return BilinearMap(A, A, A, A.structure)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]


def validate_algebra(A: Algebra) -> list[Violation]:
    """Commutativity / associativity / identity violations; empty iff valid."""
    p = A.p
    out: list[Violation] = []
    c = A.structure
    comm = (c - c.transpose(1, 0, 2)) % p
    for i, j in zip(*np.nonzero(comm.any(axis=2))):
        if i <= j:
            out.append(Violation("commutativity", (int(i), int(j))))
    left = np.einsum("ijm,mlk->ijlk", c, c) % p
    right = np.einsum("jlm,imk->ijlk", c, c) % p
    for i, j, l in zip(*np.nonzero(((left - right) % p).any(axis=3))):
        out.append(Violation("associativity", (int(i), int(j), int(l))))
    if A.identity is not None:
        e = A.identity
        eye = np.eye(A.dim, dtype=np.int64)
        if not (np.array_equal(c[e] % p, eye) and np.array_equal(c[:, e] % p, eye)):
            out.append(Violation("identity", (e,)))
    return out


def annihilator(A: Algebra) -> np.ndarray:
    """rref basis of {x : x * A = 0}."""
    # x * e_i = sum_j x_j c[j, i, :]; stack the maps x -> x * e_i
    mats = [A.structure[:, i, :].T for i in range(A.dim)]
    if not mats:
        return np.zeros((0, 0), dtype=np.int64)
    return null_space(np.vstack(mats), A.p)


def square_span(A: Algebra) -> np.ndarray:
    """rref basis of the span of all basis products (the subspace A*A)."""
    rows = A.structure.reshape(A.dim * A.dim, A.dim)
    return rref(rows, A.p)[0]


# ---------------------------------------------------------------------------
# ideals, quotients, kernels, subalgebras


def ideal_closure(A: Algebra, gens: Iterable[Element | np.ndarray]) -> Ideal:
    """Smallest multiplication-closed subspace containing the generators.

    Iterates span U span*(basis of A) to a fixed point; monotone and
    idempotent in the generator set.
    """
    rows = []
    for g in gens:
        rows.append(g.coeffs if isinstance(g, Element) else np.asarray(g, dtype=np.int64))
    if not rows:
        rows = [np.zeros(A.dim, dtype=np.int64)]
    span, piv = rref(np.vstack(rows), A.p)
    while True:
        grown = [span] if span.size else [np.zeros((0, A.dim), dtype=np.int64)]
        for r in span:
            prods = np.einsum("j,ijk->ik", r, A.structure) % A.p
            grown.append(prods)
        new_span, new_piv = rref(np.vstack(grown), A.p)
        if new_span.shape == span.shape and np.array_equal(new_span, span):
            break
        span, piv = new_span, new_piv
    return Ideal(A, span)


def kernel(f: Morphism) -> Ideal:
    """Null space of a multiplicative morphism, returned as an Ideal."""
    ker = null_space(f.matrix, f.source.p)
    ideal = Ideal(f.source, ker)
    if not ideal.is_mult_closed():
        raise PreconditionError("kernel not closed under multiplication: f is not multiplicative")
    return ideal


def image_space(f: Morphism) -> np.ndarray:
    return rref(f.matrix.T, f.source.p)[0]


def quotient(A: Algebra, I: Ideal, name: str = "") -> tuple[Algebra, Morphism]:
    """Quotient algebra on the complement basis plus the projection.

    The coset representatives are the non-pivot coordinates of I's rref
    basis; the projection is verified multiplicative with kernel I.
    """
    if I.parent is not A:
        raise StructureError("ideal of a different algebra")
    if not I.is_mult_closed():
        raise PreconditionError("subspace is not an ideal")
    p = A.p
    keep = [j for j in range(A.dim) if j not in I.pivots]
    qdim = len(keep)
    # projection: reduce mod I, then read the surviving coordinates
    proj = np.zeros((qdim, A.dim), dtype=np.int64)
    for j in range(A.dim):
        v = np.zeros(A.dim, dtype=np.int64)
        v[j] = 1
        w = reduce_against(v, I.basis_matrix, I.pivots, p)
        proj[:, j] = w[keep]
    names = tuple(A.basis_names[j] for j in keep)
    struct = np.zeros((qdim, qdim, qdim), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            struct[a, b] = proj @ (A.structure[i, j] % p) % p
    identity = None
    Q = Algebra(A.field, struct, names, identity, name or (A.name + "/I" if A.name else ""))
    pi = Morphism(A, Q, proj)
    if not pi.is_multiplicative():
        raise PreconditionError("projection failed multiplicativity: subspace not an ideal")
    if kernel(pi) != I:
        raise PreconditionError("projection kernel differs from the ideal")
    return Q, pi


def subalgebra(A: Algebra, span_rows: np.ndarray, name: str = "") -> tuple[Algebra, Morphism]:
    """Algebra structure on a multiplication-closed subspace plus inclusion.

    The chosen basis is the rref basis of the subspace, so two calls on
    equal subspaces produce identical structure constants.
    """
    p = A.p
    rows = np.asarray(span_rows, dtype=np.int64)
    if rows.size == 0:
        rows = np.zeros((0, A.dim), dtype=np.int64)
    R, piv = rref(rows.reshape(-1, A.dim) if A.dim else rows.reshape(0, 0), p)
    r = R.shape[0]
    struct = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(r):
            prod = A.mul_vec(R[a], R[b])
            if not row_space_contains(R, piv, prod, p):
                raise PreconditionError("subspace not closed under multiplication")
            struct[a, b] = solve_in_rows(R, piv, prod, p)
    names = tuple(f"{name or 'v'}{i}" for i in range(r))
    eye = np.eye(r, dtype=np.int64)
    identity = next((i for i in range(r)
                     if np.array_equal(struct[i], eye) and np.array_equal(struct[:, i], eye)),
                    None)
    S = Algebra(A.field, struct, names, identity, name)
    incl = Morphism(S, A, R.T)
    return S, incl


# ---------------------------------------------------------------------------
# semidirect products


def action_violations(action: BilinearMap) -> list[Violation]:
    """Failures of s.(n n') = (s.n) n' and (s s').n = s.(s'.n) on basis triples."""
    S, N = action.left, action.right
    p = N.p
    t = action.tensor
    out: list[Violation] = []
    # s.(n n') vs (s.n) n'
    lhs = np.einsum("nmk,skq->snmq", N.structure, t) % p
    rhs = np.einsum("snk,kmq->snmq", t, N.structure) % p
    for s, n, m in zip(*np.nonzero(((lhs - rhs) % p).any(axis=3))):
        out.append(Violation("module", (int(s), int(n), int(m))))
    # (s s').n vs s.(s'.n)
    lhs2 = np.einsum("stk,knq->stnq", S.structure, t) % p
    rhs2 = np.einsum("tnk,skq->stnq", t, t) % p
    for s, tt, n in zip(*np.nonzero(((lhs2 - rhs2) % p).any(axis=3))):
        out.append(Violation("associative-action", (int(s), int(tt), int(n))))
    return out


def semidirect(action: BilinearMap, name: str = "") -> Algebra:
    """Idealization N x| S: product (n,s)(n',s') = (nn' + s.n' + s'.n, ss').

    The action must make N an S-algebra; the result is re-validated for
    commutativity and associativity.  Basis order is N block then S block.
    """
    if action.right is not action.target:
        raise StructureError("action must map S x N -> N")
    bad = action_violations(action)
    if bad:
        raise PreconditionError(f"action axiom failure, witness {bad[0]}")
    N, S = action.right, action.left
    p = N.p
    dn, ds = N.dim, S.dim
    dim = dn + ds
    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    struct[:dn, :dn, :dn] = N.structure
    # mixed products s.n land in N
    struct[dn:, :dn, :dn] = action.tensor
    struct[:dn, dn:, :dn] = action.tensor.transpose(1, 0, 2)
    struct[dn:, dn:, dn:] = S.structure
    names = tuple(f"n.{b}" for b in N.basis_names) + tuple(f"s.{b}" for b in S.basis_names)
    A = Algebra(N.field, struct, names, None, name)
    bad = validate_algebra(A)
    if bad:
        raise PreconditionError(f"semidirect product not a valid algebra, witness {bad[0]}")
    return A


# ---------------------------------------------------------------------------
# element supply


@dataclass(frozen=True)
class Supply:
    """Test-point configuration: exhaustive below the bound, else sampled."""

    seed: int = 0
    budget: int = 256
    exhaustive_bound: int = 4096


def elements(A: Algebra, supply: Supply = Supply()) -> Iterator[Element]:
    """All p^dim elements when small, else seeded pseudo-random elements."""
    yield from (Element(A, v) for v in vector_supply(A.dim, A.p, supply))


def vector_supply(dim: int, p: int, supply: Supply = Supply()) -> Iterator[np.ndarray]:
    total = p ** dim
    if total <= supply.exhaustive_bound:
        for tup in itertools.product(range(p), repeat=dim):
            yield np.array(tup, dtype=np.int64)
    else:
        rng = random.Random(supply.seed)
        for _ in range(supply.budget):
            yield np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64)


def subspace_elements(parent: Algebra, basis: np.ndarray,
                      supply: Supply = Supply()) -> Iterator[Element]:
    """Elements of a subspace, enumerated through coordinate vectors."""
    r = basis.shape[0]
    if r == 0:
        yield parent.zero()
        return
    for coords in vector_supply(r, parent.p, supply):
        yield Element(parent, coords @ basis % parent.p)


def algebras_equal(A: Algebra, B: Algebra) -> bool:
    """On-the-nose equality of presentations (prime, dim, structure, identity)."""
    return (A.p == B.p and A.dim == B.dim
            and np.array_equal(A.structure, B.structure)
            and A.identity == B.identity)
