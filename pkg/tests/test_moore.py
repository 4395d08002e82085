import numpy as np
import pytest

from moorekit import corpus
from moorekit.coeff import Element, PreconditionError, Supply, elements
from moorekit.moore import (PairingIndex, SurjIndex, c_pairing, in_moore,
                            lemma7_check, moore, moore_basis, normal_form,
                            p_set, pairing_ideal, proj_p, push_face, s_set,
                            s_word_morphism, table1_audit, table1_eval,
                            theorem5_check)
from moorekit.simplicial import constant_simplicial, degenerate_ideal

SMALL = Supply(budget=16, exhaustive_bound=256)

# frozen printed orders
S2 = ["()", "(1)", "(0)", "(1,0)"]
S3 = ["()", "(2)", "(1)", "(2,1)", "(0)", "(2,0)", "(1,0)", "(2,1,0)"]
S4 = ["()", "(3)", "(2)", "(3,2)", "(1)", "(3,1)", "(2,1)", "(3,2,1)",
      "(0)", "(3,0)", "(2,0)", "(3,2,0)", "(1,0)", "(3,1,0)", "(2,1,0)",
      "(3,2,1,0)"]
P3 = ["(1,0)(2)", "(2,0)(1)", "(0)(2,1)", "(2)(0)", "(2)(1)", "(1)(0)"]
P4 = ["(3,2,1)(0)", "(3,2,0)(1)", "(3,1,0)(2)", "(2,1,0)(3)",
      "(3,2)(1,0)", "(3,1)(2,0)", "(3,0)(2,1)",
      "(3,2)(1)", "(3,2)(0)", "(3,1)(2)", "(3,1)(0)", "(3,0)(2)", "(3,0)(1)",
      "(2,1)(3)", "(0)(2,1)", "(2,0)(3)", "(2,0)(1)", "(1,0)(3)", "(1,0)(2)",
      "(3)(2)", "(3)(1)", "(3)(0)", "(2)(1)", "(2)(0)", "(1)(0)"]


def test_s_set_printed_orders():
    assert [str(a) for a in s_set(2)] == S2
    assert [str(a) for a in s_set(3)] == S3
    assert [str(a) for a in s_set(4)] == S4
    for n in range(7):
        assert len(s_set(n)) == 2 ** n


def test_p_set_printed_lists():
    assert [str(q) for q in p_set(2)] == ["(1)(0)"]
    assert [str(q) for q in p_set(3)] == P3
    assert [str(q) for q in p_set(4)] == P4
    for n in (2, 3, 4):
        for q in p_set(n):
            assert not set(q.alpha.entries) & set(q.beta.entries)
    with pytest.raises(ValueError):
        p_set(5)


def test_surj_index_validation():
    from moorekit.coeff import StructureError
    with pytest.raises(StructureError):
        SurjIndex((0, 1), 3)  # not decreasing
    with pytest.raises(StructureError):
        SurjIndex((5,), 3)  # out of range
    with pytest.raises(StructureError):
        PairingIndex(SurjIndex((1,), 3), SurjIndex((1,), 3))  # overlap


def test_normal_form_rewrites():
    assert normal_form([0, 0]) == (0, 1)   # s_0 s_0 = s_1 s_0
    assert normal_form([1, 0]) == (0, 2)   # s_0 s_1 = s_2 s_0
    assert normal_form([0, 1]) == (0, 1)
    assert normal_form([2, 0, 1]) == (0, 1, 4)


def test_push_face_rules():
    assert push_face(0, (0,)) == ((), None)        # d0 s0 = 1
    assert push_face(1, (0,)) == ((), None)        # d1 s0 = 1
    assert push_face(2, (0,)) == ((0,), 1)         # d2 s0 = s0 d1
    assert push_face(0, (1,)) == ((0,), 0)         # d0 s1 = s0 d0
    assert push_face(2, (0, 1)) == ((0,), None)    # d2 s1 s0 = s0
    assert push_face(4, (1, 2)) == ((1, 2), 2)     # d4 s2 s1 = s2 s1 d2


def test_moore_of_constant_and_lengths(built):
    E = constant_simplicial(corpus.dual_numbers(2), 4)
    mc = moore(E)
    assert [s.dim for s in mc.spaces] == [2, 0, 0, 0, 0]
    assert mc.length() == 0

    mc2 = moore(built("ideal-pair"))
    assert [s.dim for s in mc2.spaces] == [2, 1, 0, 0, 0]
    assert mc2.length() == 1

    mc3 = moore(built("cubic-chain"))
    assert mc3.length() == 2
    for n in range(1, 4):
        comp = mc3.boundaries[n - 1].matrix @ mc3.boundaries[n].matrix % 2 \
            if n < 4 and mc3.boundaries[n].matrix.size else None
        if comp is not None:
            assert not comp.any()


def test_proj_p_fixes_normal_and_kills_degenerate(built):
    E = built("cubic-chain")
    mc = moore(E)
    v = mc.spaces[2].basis_elements()[0]
    assert proj_p(E, 2, v) == v
    a = mc.spaces[0].basis_elements()[0]
    assert proj_p(E, 1, E.deg(1, 0)(a)).is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_proj_p_idempotent_and_lands_in_moore(p, built):
    E = built("cubic-chain", p)
    for n in (1, 2, 3):
        for x in elements(E.level(n), SMALL):
            y = proj_p(E, n, x)
            assert proj_p(E, n, y) == y
            assert in_moore(E, n, y)


def test_c_pairing_zero_and_membership(built):
    E = built("cubic-chain")
    pair = p_set(3)[4]  # (2)(1)
    z2 = E.level(2).zero()
    assert c_pairing(E, pair, z2, z2).is_zero()
    v = Element(E.level(2), moore_basis(E, 2)[0])
    val = c_pairing(E, pair, v, v)
    assert in_moore(E, 3, val)


def test_c_pairing_requires_membership(built):
    E = built("cubic-chain")
    pair = p_set(3)[4]
    outside = E.level(2).basis_element(1)  # degenerate coordinate, not in NE_2
    if not in_moore(E, 2, outside):
        with pytest.raises(PreconditionError):
            c_pairing(E, pair, outside, outside)


@pytest.mark.parametrize("p", [2, 3])
def test_c_pairing_printed_closed_forms_n3(p, built):
    # (2)(0): composite equals (s2 x)(s0 y); (1)(0): composite equals
    # s1 x (s0 y - s1 y) + s2(x y), exhaustively over NE_2
    E = built("cubic-chain", p)
    s0, s1, s2 = (E.deg(3, i) for i in range(3))
    ne2 = moore_basis(E, 2)
    A2 = E.level(2)
    supply = [Element(A2, c @ ne2 % p) for c in
              ([i] for i in range(p))]
    pair20 = p_set(3)[3]
    pair10 = p_set(3)[5]
    for x in supply:
        for y in supply:
            got = c_pairing(E, pair20, x, y)
            want = s2(x) * s0(y)
            assert got == want
            got10 = c_pairing(E, pair10, x, y)
            want10 = s1(x) * (s0(y) - s1(y)) + s2(x * y)
            assert got10 == want10


def test_pairing_ideal_examples(built):
    E0 = constant_simplicial(corpus.dual_numbers(2), 4)
    for n in (2, 3, 4):
        assert pairing_ideal(E0, n).dim == 0

    E = built("cubic-chain")
    I2 = pairing_ideal(E, 2)
    from moorekit.coeff import Ideal, intersect_row_spaces
    cap = intersect_row_spaces(moore_basis(E, 2),
                               degenerate_ideal(E, 2).basis_matrix, 2)
    assert Ideal(E.level(2), cap).contains_space(I2.basis_matrix)


def test_theorem5_pass_and_gate(built):
    assert theorem5_check(built("ideal-pair"), 2).status == "pass"
    rec = theorem5_check(built("cubic-chain"), 2)
    assert rec.status == "pass" and rec.detail["dim"] == 1
    gate = theorem5_check(corpus.simplicial_corpus(2)["top-degree-4"], 4)
    assert gate.status == "hypothesis-failed"


def test_table1_row20_and_zero(built):
    E = built("cubic-chain")
    z3 = E.level(3).zero()
    lhs, rhs = table1_eval(E, 20, z3, z3)
    assert lhs.is_zero() and rhs.is_zero()
    # row 20 closed form x3(s2 d3 y3 - y3) at the only available points
    ne3 = moore_basis(E, 3)
    assert ne3.shape[0] == 0  # nothing above length 2 in the corpus
    with pytest.raises(ValueError):
        table1_eval(E, 26, z3, z3)


def test_table1_row4_exhaustive(built):
    # row 4: (2,1,0)(3) with x1 in NE_1, y3 in NE_3
    E = built("cubic-chain")
    ne1 = moore_basis(E, 1)
    y3 = E.level(3).zero()
    for c in range(2):
        for d in range(2):
            x1 = Element(E.level(1), (c * ne1[0] + d * ne1[1]) % 2)
            lhs, rhs = table1_eval(E, 4, x1, y3)
            assert lhs == rhs  # both vanish by bilinearity in y3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_table1_audit_confirms_all_rows(p, built):
    recs = table1_audit(built("cubic-chain", p), SMALL)
    by_status = {r.status for r in recs}
    assert by_status == {"confirmed"}
    assert len([r for r in recs if r.check.startswith("table1[row=")]) == 25


def test_lemma7_pass_and_gate(built):
    recs = lemma7_check(built("cubic-chain"), SMALL)
    assert all(r.status == "pass" for r in recs) and len(recs) == 25
    gate = lemma7_check(corpus.simplicial_corpus(2)["top-degree-4"], SMALL)
    assert gate[0].status == "hypothesis-failed"
    assert "length > 3" in gate[0].detail["reason"]


def test_s_word_morphism_matches_composition(built):
    E = built("ideal-pair")
    m = s_word_morphism(E, 2, (0, 1))  # s_1 s_0
    direct = E.deg(2, 1).compose(E.deg(1, 0))
    assert np.array_equal(m.matrix, direct.matrix)
