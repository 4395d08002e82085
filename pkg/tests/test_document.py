import json

import numpy as np
import pytest

from moorekit import corpus
from moorekit.crossed import verify_2cm, verify_3cm, verify_cm
from moorekit.document import (DocumentBuilder, DocumentError, corpus_document,
                               load_document)
from moorekit.functors import three_crossed_from_simplicial
from moorekit.lie import verify_lie_3cm
from moorekit.coeff import Supply, algebras_equal
from moorekit.moore import moore
from moorekit.simplicial import validate_simplicial

SMALL = Supply(budget=16, exhaustive_bound=256)


def test_corpus_document_loads_and_validates():
    doc = load_document(corpus_document(2))
    assert "ideal-pair" in doc.crossed_modules
    assert "cubic-chain" in doc.two_crossed_modules
    assert "ideal-pair" in doc.simplicial
    for name, E in doc.simplicial.items():
        assert validate_simplicial(E) == [], name
    for cm in doc.crossed_modules.values():
        assert verify_cm(cm).verdict == "pass"
    for t in doc.two_crossed_modules.values():
        assert verify_2cm(t).verdict == "pass"
    for m in doc.lie_three_crossed.values():
        assert verify_lie_3cm(m, SMALL).verdict == "pass"


def test_document_roundtrip_preserves_structures():
    t = corpus.tcm_cubic_chain(3)
    b = DocumentBuilder()
    b.two_crossed(t, "probe")
    doc = load_document(b.dumps())
    back = doc.two_crossed_modules["probe"]
    assert algebras_equal(back.C1, t.C1)
    assert np.array_equal(back.lifting.tensor, t.lifting.tensor)
    assert np.array_equal(back.d2.matrix, t.d2.matrix)


def test_three_crossed_document_roundtrip(built):
    out = three_crossed_from_simplicial(built("cubic-chain"), supply=SMALL)
    b = DocumentBuilder()
    b.three_crossed(out.structure, "probe")
    doc = load_document(b.dumps())
    back = doc.three_crossed_modules["probe"]
    rep = verify_3cm(back, SMALL)
    assert rep.verdict == "pass"
    for key, bl in out.structure.liftings.items():
        assert np.array_equal(back.liftings[key].tensor, bl.tensor)


def test_simplicial_document_roundtrip(built):
    E = built("ideal-pair")
    b = DocumentBuilder()
    b.simplicial(E, "probe")
    doc = load_document(b.dumps())
    back = doc.simplicial["probe"]
    assert validate_simplicial(back) == []
    assert [s.dim for s in moore(back).spaces] == [2, 1, 0, 0, 0]


def test_load_reduces_mod_p():
    text = json.dumps({"algebras": {"A": {
        "p": 3, "dim": 1, "basis": ["e"], "structure": [[0, 0, 0, 7]]}}})
    doc = load_document(text)
    assert doc.algebras["A"].structure[0, 0, 0] == 1  # 7 mod 3


def test_document_errors_carry_location():
    with pytest.raises(DocumentError):
        load_document("not json")
    with pytest.raises(DocumentError) as err:
        load_document(json.dumps({"algebras": {"A": {"p": 4, "dim": 1,
                                                     "basis": ["e"]}}}))
    assert "algebras.A" in str(err.value)
    with pytest.raises(DocumentError) as err2:
        load_document(json.dumps({
            "algebras": {"A": {"p": 2, "dim": 1, "basis": ["e"]}},
            "morphisms": {"f": {"source": "A", "target": "missing",
                                "matrix": [[1]]}}}))
    assert "missing" in str(err2.value)


def test_lookup_prefers_requested_kind():
    doc = load_document(corpus_document(2))
    kind, _ = doc.lookup("ideal-pair", prefer="crossed")
    assert kind == "crossed"
    kind2, _ = doc.lookup("ideal-pair", prefer="simplicial")
    assert kind2 == "simplicial"
    with pytest.raises(DocumentError):
        doc.lookup("no-such-name")


def test_corpus_document_deterministic():
    assert corpus_document(2) == corpus_document(2)
    assert corpus_document(3) == corpus_document(3)
