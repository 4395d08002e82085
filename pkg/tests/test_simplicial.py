import numpy as np
import pytest

from moorekit import corpus
from moorekit.coeff import Supply, elements, validate_algebra
from moorekit.crossed import verify_2cm, verify_cm
from moorekit.moore import moore, moore_basis, s_set
from moorekit.simplicial import (TruncatedSimplicialAlgebra,
                                 build_from_2crossed, build_from_crossed,
                                 concentrated_simplicial, constant_simplicial,
                                 decompose, degenerate_ideal, truncate,
                                 validate_simplicial)

SMALL = Supply(budget=24, exhaustive_bound=512)


def test_constant_object_is_valid():
    E = constant_simplicial(corpus.dual_numbers(2), 4)
    assert validate_simplicial(E) == []
    mc = moore(E)
    assert [s.dim for s in mc.spaces] == [2, 0, 0, 0, 0]


def test_mutation_breaks_validation(built):
    E = built("cubic-chain")
    faces = dict(E.faces)
    d0, d1 = faces[(2, 0)], faces[(2, 1)]
    assert not np.array_equal(d0.matrix, d1.matrix)
    faces[(2, 0)], faces[(2, 1)] = d1, d0
    mutated = TruncatedSimplicialAlgebra(E.levels, faces, E.degeneracies)
    assert validate_simplicial(mutated) != []


@pytest.mark.parametrize("p", [2, 3])
def test_builders_produce_valid_objects(p, built):
    for name in ("ideal-pair", "zero-module", "sq0-lifting", "cubic-chain"):
        E = built(name, p)
        assert validate_simplicial(E) == []
        for A in E.levels:
            assert validate_algebra(A) == []


def test_truncate_examples(built):
    E = built("ideal-pair")
    same = truncate(E, E.k)
    assert same.levels == E.levels
    bottom = truncate(E, 0)
    assert bottom.k == 0 and bottom.faces == {}
    with pytest.raises(ValueError):
        truncate(E, 9)


def test_truncate_commutes_with_builder():
    cm = corpus.cm_ideal_dual(2)
    full = truncate(build_from_crossed(cm, 4), 2)
    short = build_from_crossed(cm, 2)
    for n in range(3):
        assert np.array_equal(full.level(n).structure, short.level(n).structure)
    for key in short.faces:
        assert np.array_equal(full.faces[key].matrix, short.faces[key].matrix)
    for key in short.degeneracies:
        assert np.array_equal(full.degeneracies[key].matrix,
                              short.degeneracies[key].matrix)


def test_degenerate_ideal_constant_is_everything():
    E = constant_simplicial(corpus.dual_numbers(2), 3)
    for n in (1, 2, 3):
        assert degenerate_ideal(E, n).dim == E.level(n).dim


def test_degenerate_ideal_zero_base():
    E = corpus.simplicial_corpus(2)["top-degree-3"]
    assert E.level(0).dim == 0
    assert degenerate_ideal(E, 1).dim == 0


def test_degeneracy_span_codimension_matches_moore(built):
    # Proposition-1 dimension count: span of degeneracy images has
    # codimension dim NE_n
    from moorekit.coeff import rref
    for name in ("ideal-pair", "cubic-chain", "module-id"):
        E = built(name)
        for n in range(1, 5):
            rows = np.vstack([E.deg(n, i).matrix.T for i in range(n)])
            span_dim = rref(rows, 2)[0].shape[0]
            assert E.level(n).dim - span_dim == moore_basis(E, n).shape[0]


def test_semidirect_dimension_identity(built):
    for name in ("cubic-chain", "module-id"):
        E = built(name)
        for n in range(5):
            total = sum(moore_basis(E, n - a.size).shape[0] for a in s_set(n))
            assert total == E.level(n).dim


def test_decompose_trivial_cases(built):
    E = built("cubic-chain")
    mc = moore(E)
    # normal elements decompose to themselves
    v = mc.spaces[2].basis_elements()[0]
    dec = decompose(E, 2, v)
    assert dec.normal_part == v
    assert all(val.is_zero() for val in dec.components.values())
    # a pure degeneracy image is recovered in the (0) slot
    a = mc.spaces[0].basis_elements()[0]
    img = E.deg(1, 0)(a)
    dec1 = decompose(E, 1, img)
    assert dec1.normal_part.is_zero()
    key = next(k for k in dec1.components if k.entries == (0,))
    assert dec1.components[key] == a


@pytest.mark.parametrize("p", [2, 3])
def test_decompose_reassembles_exhaustively(p, built):
    E = built("cubic-chain", p)
    for n in range(1, 5):
        for x in elements(E.level(n), SMALL):
            dec = decompose(E, n, x)
            assert dec.reassemble(E) == x
            assert all(E.face(n, i)(dec.normal_part).is_zero() for i in range(n))
            for alpha, val in dec.components.items():
                c = n - alpha.size
                assert all(E.face(c, i)(val).is_zero() for i in range(c))


def test_normal_part_of_degenerate_lies_in_cap(built):
    E = built("cubic-chain")
    for n in (2, 3):
        D = degenerate_ideal(E, n)
        for row in D.basis_matrix:
            x = E.level(n).element(row)
            dec = decompose(E, n, x)
            assert D.contains(dec.normal_part)  # normal part stays inside D_n


def test_build_from_crossed_properties():
    cm = corpus.cm_ideal_dual(2)
    E = build_from_crossed(cm, 4)
    assert E.level(1).dim == 3
    mc = moore(E)
    assert mc.length() <= 1
    assert [s.dim for s in mc.spaces] == [2, 1, 0, 0, 0]

    zero_cm = corpus.cm_zero_module(2)
    E2 = build_from_crossed(zero_cm, 2)
    sq = moore(E2).algebras[1]
    assert not sq.structure.any()  # the module block stays square-zero


def test_build_from_crossed_rejects_invalid():
    from moorekit.coeff import PreconditionError
    with pytest.raises(PreconditionError):
        build_from_crossed(corpus.cm_zero_module_bad(2), 2)


def test_build_from_2crossed_degenerations():
    # trivial top level agrees with the crossed-module build
    cm = corpus.cm_ideal_dual(2)
    t = corpus.crossed_as_2cm(cm)
    assert verify_2cm(t).verdict == "pass"
    Ea = build_from_2crossed(t, 3)
    Eb = build_from_crossed(cm, 3)
    for n in range(4):
        assert np.array_equal(Ea.level(n).structure, Eb.level(n).structure)
    for key, mor in Eb.faces.items():
        assert np.array_equal(Ea.faces[key].matrix, mor.matrix)

    # trivial lifting and boundaries: levelwise direct sums (block product)
    t2 = corpus.tcm_module_identity(2)
    E = build_from_2crossed(t2, 2)
    assert moore(E).length() == 2


def test_build_from_2crossed_moore_data(built):
    t = corpus.tcm_cubic_chain(2)
    E = built("cubic-chain")
    mc = moore(E)
    assert [s.dim for s in mc.spaces] == [1, 2, 1, 0, 0]
    assert np.array_equal(mc.boundaries[1].matrix, t.d2.matrix)
    assert np.array_equal(mc.boundaries[0].matrix, t.d1.matrix)


def test_concentrated_objects():
    E4 = concentrated_simplicial(corpus.square_zero(2, 1), 4, 4)
    assert validate_simplicial(E4) == []
    assert moore_basis(E4, 4).shape[0] == 1
    E3 = concentrated_simplicial(corpus.square_zero(2, 1), 3, 4)
    assert validate_simplicial(E3) == []
    mc = moore(E3)
    assert [s.dim for s in mc.spaces] == [0, 0, 0, 1, 0]
