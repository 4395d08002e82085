"""Crossed modules, 2-crossed modules and 3-crossed modules with
mechanized axiom verifiers.

Every axiom in scope is multilinear in each slot, so sweeping basis
tuples decides it exactly; reports carry the first failing tuple as a
witness.  Stored actions are the ones the definitions declare (the
base algebra acting on the higher ones); the action of degree-1
elements on degree-2 elements in a 2-crossed module is derived from
the lifting, {y (x) d2 x} = y . x, and likewise one level up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .coeff import (Algebra, BilinearMap, Element, Ideal, Morphism,
                    PreconditionError, Supply, annihilator, action_violations,
                    ideal_closure, image_space, null_space, quotient,
                    row_space_contains, rref, solve_in_rows, square_span,
                    subalgebra, subspace_elements, validate_algebra)
from .report import FAIL, PASS, CheckRecord

LIFTING_KEYS = ("(1)(0)", "(2)(0)", "(2)(1)", "(1,0)(2)", "(2,0)(1)", "(0)(2,1)", "()")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class AxiomEntry:
    name: str
    status: str
    checked: int
    witness: dict | None = None


@dataclass(frozen=True)
class AxiomReport:
    title: str
    entries: tuple[AxiomEntry, ...]

    @property
    def verdict(self) -> str:
        return PASS if all(e.status == PASS for e in self.entries) else FAIL

    def entry(self, name: str) -> AxiomEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def failing(self) -> list[AxiomEntry]:
        return [e for e in self.entries if e.status != PASS]

    def records(self) -> list[CheckRecord]:
        out = [CheckRecord(f"{self.title}/{e.name}", e.status,
                           witnesses=(e.witness,) if e.witness else ())
               for e in self.entries]
        return out


def _witness(tup) -> dict:
    return {f"arg{i}": list(map(int, x.coeffs)) for i, x in enumerate(tup)}


def _sweep(name: str, bases, fun) -> AxiomEntry:
    """Check fun(*tup) over all basis tuples; fun returns (lhs, rhs) pairs."""
    checked = 0
    for tup in itertools.product(*bases):
        checked += 1
        pairs = fun(*tup)
        if isinstance(pairs, tuple):
            pairs = [pairs]
        for lhs, rhs in pairs:
            if lhs != rhs:
                return AxiomEntry(name, FAIL, checked, _witness(tup))
    return AxiomEntry(name, PASS, checked)


def _flag(name: str, ok: bool, detail: dict | None = None) -> AxiomEntry:
    return AxiomEntry(name, PASS if ok else FAIL, 1, None if ok else (detail or {}))


# ---------------------------------------------------------------------------
# crossed modules


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """Boundary C -> R with an R-action on C subject to CM1 and CM2."""

    C: Algebra
    R: Algebra
    boundary: Morphism
    action: BilinearMap  # R (x) C -> C
    name: str = ""

    def __post_init__(self):
        if self.boundary.source is not self.C or self.boundary.target is not self.R:
            raise PreconditionError("boundary must map C to R")
        if (self.action.left is not self.R or self.action.right is not self.C
                or self.action.target is not self.C):
            raise PreconditionError("action must map R (x) C to C")


def verify_cm(m: CrossedModule) -> AxiomReport:
    """CM1, CM2, action laws, plus the two lemmas: the boundary image is
    an ideal of R and acts trivially on the kernel."""
    C, R, bd, act = m.C, m.R, m.boundary, m.action
    entries = [
        _flag("boundary-multiplicative", bd.is_multiplicative()),
        _flag("action-algebra", not action_violations(act)),
        _sweep("CM1", [R.basis(), C.basis()],
               lambda r, c: (bd(act(r, c)), r * bd(c))),
        _sweep("CM2", [C.basis(), C.basis()],
               lambda c, c2: (act(bd(c), c2), c * c2)),
        _flag("image-is-ideal", Ideal(R, image_space(bd)).is_mult_closed()),
    ]
    ker = null_space(bd.matrix, C.p)
    entries.append(_sweep(
        "image-acts-trivially-on-kernel",
        [C.basis(), [Element(C, v) for v in ker]],
        lambda c, k: (act(bd(c), k), C.zero())))
    return AxiomReport(m.name or "crossed-module", tuple(entries))


def ideal_pair(R: Algebra, gens, name: str = "") -> CrossedModule:
    """Inclusion crossed module of the ideal generated by gens in R."""
    ideal = ideal_closure(R, gens)
    C, incl = subalgebra(R, ideal.basis_matrix, name=f"{name or 'I'}")
    # R acts on the ideal by multiplication, written in ideal coordinates
    tensor = np.zeros((R.dim, C.dim, C.dim), dtype=np.int64)
    for r in range(R.dim):
        for c in range(C.dim):
            prod = R.mul_vec(R.basis_element(r).coeffs, incl.matrix[:, c])
            tensor[r, c] = ideal.coords(prod)
    act = BilinearMap(R, C, C, tensor)
    return CrossedModule(C, R, incl, act, name=name or "ideal-pair")


def zero_module_cm(M: Algebra, R: Algebra, action: BilinearMap, name: str = "") -> CrossedModule:
    """Zero boundary M -> R; a crossed module exactly when M has zero
    multiplication."""
    return CrossedModule(M, R, Morphism.zero(M, R), action, name=name or "zero-module")


def multiplication_cm(R: Algebra) -> CrossedModule:
    """The multiplication crossed module mu : R -> M(R).

    M(R) is the solution space of delta(r r') = delta(r) r' over all
    basis pairs, multiplied by composition.  Requires Ann(R) = 0 or
    R^2 = R, verified by rank computation; composition is re-verified
    commutative.
    """
    p = R.p
    d = R.dim
    ann_zero = annihilator(R).shape[0] == 0
    square_full = square_span(R).shape[0] == d
    if not (ann_zero or square_full):
        raise PreconditionError("hypothesis Ann(R) = 0 or R^2 = R fails")
    # delta as a d x d matrix X: X @ (e_i e_j) = (X @ e_i) * e_j
    blocks = []
    eye = np.eye(d, dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = R.structure[i, j]
            right_j = R.structure[:, j, :].T  # x -> x * e_j
            lhs = np.kron(eye, prod.reshape(1, d))
            rhs = np.kron(right_j, eye[i].reshape(1, d))
            blocks.append((lhs - rhs) % p)
    basis_flat = null_space(np.vstack(blocks), p)
    mats = [b.reshape(d, d) for b in basis_flat]
    mdim = len(mats)
    pivots = rref(basis_flat, p)[1]

    def coords(mat: np.ndarray) -> np.ndarray:
        flat = mat.reshape(-1) % p
        if not row_space_contains(basis_flat, pivots, flat, p):
            raise PreconditionError("composition leaves the multiplier space")
        return solve_in_rows(basis_flat, pivots, flat, p)

    struct = np.zeros((mdim, mdim, mdim), dtype=np.int64)
    for a in range(mdim):
        for b in range(mdim):
            struct[a, b] = coords(mats[a] @ mats[b] % p)
    if not np.array_equal(struct, struct.transpose(1, 0, 2)):
        raise PreconditionError(
            "audit finding: multiplier composition is not commutative under the hypothesis")
    MR = Algebra(R.field, struct, tuple(f"m{i}" for i in range(mdim)), None, name="M(R)")
    bad = validate_algebra(MR)
    if bad:
        raise PreconditionError(f"multiplier algebra invalid: {bad[0]}")
    mu = Morphism(R, MR, np.array([coords(R.structure[i].T) for i in range(d)]).T
                  if d else np.zeros((mdim, 0), dtype=np.int64))
    act_tensor = np.zeros((mdim, d, d), dtype=np.int64)
    for a in range(mdim):
        act_tensor[a] = mats[a].T  # delta_a(e_j) is column j
    act = BilinearMap(MR, R, R, act_tensor)
    return CrossedModule(R, MR, mu, act, name="multiplication-cm")


# ---------------------------------------------------------------------------
# 2-crossed modules


@dataclass(frozen=True, eq=False)
class TwoCrossedModule:
    """Complex C2 -> C1 -> C0 with base actions and a Peiffer lifting.

    Only the C0-actions are stored; C1 acts on C2 through the lifting,
    y . x = {y (x) d2 x}.
    """

    C2: Algebra
    C1: Algebra
    C0: Algebra
    d2: Morphism
    d1: Morphism
    act_on_c1: BilinearMap  # C0 (x) C1 -> C1
    act_on_c2: BilinearMap  # C0 (x) C2 -> C2
    lifting: BilinearMap    # C1 (x) C1 -> C2
    name: str = ""

    def act1_on_2(self, y: Element, x: Element) -> Element:
        return self.lifting(y, self.d2(x))


def verify_2cm(t: TwoCrossedModule) -> AxiomReport:
    C2, C1, C0 = t.C2, t.C1, t.C0
    d2, d1, a1, a2, lt = t.d2, t.d1, t.act_on_c1, t.act_on_c2, t.lifting
    entries = [
        _flag("complex", not (d1.matrix @ d2.matrix % C0.p).any()),
        _flag("d2-multiplicative", d2.is_multiplicative()),
        _flag("d1-multiplicative", d1.is_multiplicative()),
        _flag("action-c1-algebra", not action_violations(a1)),
        _flag("action-c2-algebra", not action_violations(a2)),
        _sweep("d2-equivariant", [C0.basis(), C2.basis()],
               lambda z, x: (d2(a2(z, x)), a1(z, d2(x)))),
        _sweep("d1-equivariant", [C0.basis(), C1.basis()],
               lambda z, y: (d1(a1(z, y)), z * d1(y))),
        _sweep("2CM1", [C1.basis(), C1.basis()],
               lambda y0, y1: (d2(lt(y0, y1)), y0 * y1 - a1(d1(y1), y0))),
        _sweep("2CM2", [C2.basis(), C2.basis()],
               lambda x1, x2: (lt(d2(x1), d2(x2)), x1 * x2)),
        _sweep("2CM3", [C1.basis(), C1.basis(), C1.basis()],
               lambda y0, y1, y2: (lt(y0, y1 * y2),
                                   lt(y0 * y1, y2) + a2(d1(y2), lt(y0, y1)))),
        _sweep("2CM4i", [C2.basis(), C1.basis()],
               lambda x, y: (lt(d2(x), y), t.act1_on_2(y, x) - a2(d1(y), x))),
        _sweep("2CM4ii", [C2.basis(), C1.basis()],
               lambda x, y: (lt(y, d2(x)), t.act1_on_2(y, x))),
        _sweep("2CM5", [C0.basis(), C1.basis(), C1.basis()],
               lambda z, y0, y1: [(a2(z, lt(y0, y1)), lt(a1(z, y0), y1)),
                                  (a2(z, lt(y0, y1)), lt(y0, a1(z, y1)))]),
    ]
    return AxiomReport(t.name or "two-crossed-module", tuple(entries))


def crossed_as_2cm(m: CrossedModule, name: str = "") -> TwoCrossedModule:
    """Degenerate 2-crossed module with trivial top term and zero lifting."""
    zero = Algebra(m.C.field, np.zeros((0, 0, 0), dtype=np.int64), (), None, "0")
    return TwoCrossedModule(
        zero, m.C, m.R,
        Morphism.zero(zero, m.C), m.boundary,
        m.action, BilinearMap.zero(m.R, zero, zero),
        BilinearMap.zero(m.C, m.C, zero),
        name=name or f"{m.name}+trivial-top")


def induced_cm(t: TwoCrossedModule) -> CrossedModule:
    """Quotient C1 by the ideal closure of the image of d2; the induced
    boundary and action form a crossed module."""
    C1, C0 = t.C1, t.C0
    p = C1.p
    img = image_space(t.d2)
    I = ideal_closure(C1, [Element(C1, r) for r in img])
    if (t.d1.matrix @ I.basis_matrix.T % p).any():
        raise PreconditionError("d1 does not kill the boundary image ideal")
    for z in range(C0.dim):
        for r in I.basis_matrix:
            moved = t.act_on_c1.apply_vecs(np.eye(C0.dim, dtype=np.int64)[z], r)
            if not I.contains(moved):
                raise PreconditionError(
                    "induced action ill-defined on cosets: 2CM violation upstream")
    Q, pi = quotient(C1, I, name=(t.name or "C1") + "/im")
    bd = Morphism(Q, C0, np.array(
        [t.d1.matrix @ col % p for col in _section_columns(pi, C1)]).T
        if Q.dim else np.zeros((C0.dim, 0), dtype=np.int64))
    act_tensor = np.zeros((C0.dim, Q.dim, Q.dim), dtype=np.int64)
    for z in range(C0.dim):
        for j, col in enumerate(_section_columns(pi, C1)):
            moved = t.act_on_c1.apply_vecs(np.eye(C0.dim, dtype=np.int64)[z], col)
            act_tensor[z, j] = pi.matrix @ moved % p
    return CrossedModule(Q, C0, bd, BilinearMap(C0, Q, Q, act_tensor),
                         name=(t.name or "2cm") + "-induced")


def _section_columns(pi: Morphism, A: Algebra) -> list[np.ndarray]:
    """Coset representatives: preimages of the quotient basis under pi."""
    cols = []
    for q in range(pi.target.dim):
        for j in range(A.dim):
            v = np.zeros(A.dim, dtype=np.int64)
            v[j] = 1
            img = pi.matrix @ v % A.p
            want = np.zeros(pi.target.dim, dtype=np.int64)
            want[q] = 1
            if np.array_equal(img, want):
                cols.append(v)
                break
        else:
            raise PreconditionError("projection has no basis section")
    return cols


# ---------------------------------------------------------------------------
# 3-crossed modules


@dataclass(frozen=True, eq=False)
class ThreeCrossedModule:
    """Complex C3 -> C2 -> C1 -> C0 with six actions and seven liftings.

    Lifting keys: "(1)(0)", "(2)(0)", "(2)(1)" on C2 (x) C2 -> C3;
    "(1,0)(2)", "(2,0)(1)" on C1 (x) C2 -> C3; "(0)(2,1)" on
    C2 (x) C1 -> C3; "()" on C1 (x) C1 -> C2.  The keys "(0)(2)" and
    "(2)(0)" name the same map.
    """

    C3: Algebra
    C2: Algebra
    C1: Algebra
    C0: Algebra
    d3: Morphism
    d2: Morphism
    d1: Morphism
    actions: dict = field(default_factory=dict)   # "01","02","03","12","13","23"
    liftings: dict = field(default_factory=dict)  # LIFTING_KEYS
    name: str = ""

    def action(self, key: str) -> BilinearMap:
        return self.actions[key]

    def lifting(self, key: str) -> BilinearMap:
        if key == "(0)(2)":
            key = "(2)(0)"
        return self.liftings[key]


def verify_3cm(m: ThreeCrossedModule, supply: Supply = Supply()) -> AxiomReport:
    """3CM1 through 3CM16 as printed, the degree-3 crossed module property,
    and the two equivariance tables.

    All axioms but 3CM6 are multilinear per slot and swept on basis
    tuples; 3CM6 is quadratic in each slot, so it runs over the element
    supply of C2 instead.
    """
    C3, C2, C1, C0 = m.C3, m.C2, m.C1, m.C0
    d3, d2, d1 = m.d3, m.d2, m.d1
    a01, a02, a03 = m.action("01"), m.action("02"), m.action("03")
    a12, a13, a23 = m.action("12"), m.action("13"), m.action("23")
    L10, L20, L21 = m.lifting("(1)(0)"), m.lifting("(2)(0)"), m.lifting("(2)(1)")
    L102, L201 = m.lifting("(1,0)(2)"), m.lifting("(2,0)(1)")
    L021, L = m.lifting("(0)(2,1)"), m.lifting("()")

    entries = [
        _flag("complex-d2d3", not (d2.matrix @ d3.matrix % C0.p).any()),
        _flag("complex-d1d2", not (d1.matrix @ d2.matrix % C0.p).any()),
        _flag("d3-multiplicative", d3.is_multiplicative()),
        _flag("d2-multiplicative", d2.is_multiplicative()),
        _flag("d1-multiplicative", d1.is_multiplicative()),
    ]
    for key, act in (("01", a01), ("02", a02), ("03", a03),
                     ("12", a12), ("13", a13), ("23", a23)):
        entries.append(_flag(f"action-{key}-algebra", not action_violations(act)))
    entries += [
        _sweep("d3-crossed-CM1", [C2.basis(), C3.basis()],
               lambda x2, x3: (d3(a23(x2, x3)), x2 * d3(x3))),
        _sweep("d3-crossed-CM2", [C3.basis(), C3.basis()],
               lambda x3, y3: (a23(d3(x3), y3), x3 * y3)),
    ]

    sub = TwoCrossedModule(C3, C2, C1, d3, d2, a12, a13, L21,
                           name="top-segment")
    for e in verify_2cm(sub).entries:
        entries.append(AxiomEntry(f"3CM1/{e.name}", e.status, e.checked, e.witness))

    entries += [
        _sweep("3CM2", [C1.basis(), C1.basis()],
               lambda x1, y1: (d2(L(x1, y1)), a01(d1(y1), x1) - x1 * y1)),
        _sweep("3CM3", [C2.basis(), C2.basis()],
               lambda x2, y2: (L021(x2, d2(y2)), L21(x2, y2) - L10(x2, y2))),
        _sweep("3CM4", [C2.basis(), C2.basis()],
               lambda x2, y2: (d3(L10(x2, y2)), L(d2(x2), d2(y2)) + x2 * y2)),
        _sweep("3CM5", [C1.basis(), C3.basis()],
               lambda x1, y3: (L201(x1, d3(y3)),
                               L021(d3(y3), x1) + L102(x1, d3(y3)) - a03(d1(x1), y3))),
        _sweep("3CM6",
               [list(subspace_elements(C2, np.eye(C2.dim, dtype=np.int64), supply))] * 2,
               lambda x2, y2: (L201(d2(x2), y2),
                               -L20(x2, y2) + a23(x2 * y2, L21(x2, y2)) + L10(x2, y2))),
        _sweep("3CM7", [C3.basis(), C3.basis()],
               lambda x3, y3: (L10(d3(x3), d3(y3)), y3 * x3)),
        _sweep("3CM8", [C3.basis(), C2.basis()],
               lambda y3, x2: (L021(d3(y3), d2(x2)), -a13(d2(x2), y3))),
        _sweep("3CM9", [C2.basis(), C3.basis()],
               lambda x2, y3: (L102(d2(x2), d3(y3)), -L20(x2, d3(y3)))),
        _sweep("3CM10", [C2.basis(), C3.basis()],
               lambda x2, y3: (L201(d2(x2), d3(y3)),
                               a13(d2(x2), y3) - L20(x2, d3(y3)))),
        _sweep("3CM11", [C3.basis(), C1.basis()],
               lambda y3, x1: (L021(d3(y3), x1), -a13(x1, y3))),
        _sweep("3CM12", [C2.basis(), C3.basis()],
               lambda y2, x3: (L10(y2, d3(x3)), -a23(y2, x3))),
        _sweep("3CM13", [C3.basis(), C2.basis()],
               lambda x3, y2: (L10(d3(x3), y2), a23(y2, x3))),
        _sweep("3CM14", [C3.basis(), C2.basis()],
               lambda x3, y2: (L20(d3(x3), y2), C3.zero())),
        _sweep("3CM15", [C1.basis(), C2.basis()],
               lambda x1, y2: (d3(L201(x1, y2)),
                               d3(L102(x1, y2)) + L(x1, d2(y2))
                               - a02(d1(x1), y2) + a12(x1, y2))),
        _sweep("3CM16", [C1.basis(), C2.basis()],
               lambda x1, y2: (d3(L021(y2, x1)), L(x1, d2(y2)) - a12(x1, y2))),
    ]
    entries += _equivariance_entries(m, "table3", C0.basis(), a01, a02, a03)
    entries += _equivariance_entries(m, "table4", C1.basis(), None, a12, a13)
    return AxiomReport(m.name or "three-crossed-module", tuple(entries))


def _equivariance_entries(m: ThreeCrossedModule, title: str, zbasis,
                          act1, act2, act3) -> list[AxiomEntry]:
    """Both equalities of each equivariance-table row, per lifting key.

    For the base-level table act1 is the C0-action on C1; for the
    degree-1 table no action of C1 on itself is declared and the
    multiplication of C1 is used instead.
    """
    C1 = m.C1

    def on1(z, y):
        return act1(z, y) if act1 is not None else z * y

    L10, L20, L21 = m.lifting("(1)(0)"), m.lifting("(2)(0)"), m.lifting("(2)(1)")
    L102, L201 = m.lifting("(1,0)(2)"), m.lifting("(2,0)(1)")
    L021, L = m.lifting("(0)(2,1)"), m.lifting("()")
    rows = [
        ("()", m.C1.basis(), m.C1.basis(),
         lambda z, a, b: [(act2(z, L(a, b)), L(on1(z, a), b)),
                          (act2(z, L(a, b)), L(a, on1(z, b)))]),
        ("(1,0)(2)", m.C1.basis(), m.C2.basis(),
         lambda z, a, b: [(act3(z, L102(a, b)), L102(on1(z, a), b)),
                          (act3(z, L102(a, b)), L102(a, act2(z, b)))]),
        ("(0)(2,1)", m.C2.basis(), m.C1.basis(),
         lambda z, a, b: [(act3(z, L021(a, b)), L021(act2(z, a), b)),
                          (act3(z, L021(a, b)), L021(a, on1(z, b)))]),
        ("(2,0)(1)", m.C1.basis(), m.C2.basis(),
         lambda z, a, b: [(act3(z, L201(a, b)), L201(on1(z, a), b)),
                          (act3(z, L201(a, b)), L201(a, act2(z, b)))]),
        ("(1)(0)", m.C2.basis(), m.C2.basis(),
         lambda z, a, b: [(act3(z, L10(a, b)), L10(act2(z, a), b)),
                          (act3(z, L10(a, b)), L10(a, act2(z, b)))]),
        ("(2)(0)", m.C2.basis(), m.C2.basis(),
         lambda z, a, b: [(act3(z, L20(a, b)), L20(act2(z, a), b)),
                          (act3(z, L20(a, b)), L20(a, act2(z, b)))]),
        ("(2)(1)", m.C2.basis(), m.C2.basis(),
         lambda z, a, b: [(act3(z, L21(a, b)), L21(act2(z, a), b)),
                          (act3(z, L21(a, b)), L21(a, act2(z, b)))]),
    ]
    out = []
    for key, abasis, bbasis, fun in rows:
        out.append(_sweep(f"{title}[{key}]", [zbasis, abasis, bbasis], fun))
    return out


def crossed_as_3cm(m: CrossedModule, name: str = "") -> ThreeCrossedModule:
    """Degenerate 3-crossed module: trivial C3 and C2 over a crossed module."""
    fld = m.C.field
    zero3 = Algebra(fld, np.zeros((0, 0, 0), dtype=np.int64), (), None, "0")
    zero2 = Algebra(fld, np.zeros((0, 0, 0), dtype=np.int64), (), None, "0")
    C1, C0 = m.C, m.R
    actions = {
        "01": m.action, "02": BilinearMap.zero(C0, zero2, zero2),
        "03": BilinearMap.zero(C0, zero3, zero3),
        "12": BilinearMap.zero(C1, zero2, zero2),
        "13": BilinearMap.zero(C1, zero3, zero3),
        "23": BilinearMap.zero(zero2, zero3, zero3),
    }
    liftings = {
        "(1)(0)": BilinearMap.zero(zero2, zero2, zero3),
        "(2)(0)": BilinearMap.zero(zero2, zero2, zero3),
        "(2)(1)": BilinearMap.zero(zero2, zero2, zero3),
        "(1,0)(2)": BilinearMap.zero(C1, zero2, zero3),
        "(2,0)(1)": BilinearMap.zero(C1, zero2, zero3),
        "(0)(2,1)": BilinearMap.zero(zero2, C1, zero3),
        "()": BilinearMap.zero(C1, C1, zero2),
    }
    return ThreeCrossedModule(zero3, zero2, C1, C0,
                              Morphism.zero(zero3, zero2),
                              Morphism.zero(zero2, C1), m.boundary,
                              actions, liftings,
                              name=name or f"{m.name}+trivial-tops")
