"""JSON document format: named algebras, morphisms, simplicial objects,
crossed structures and Lie structures in one file.

Structure tensors are stored as sparse [i, j, k, coeff] triples with
omitted entries zero; matrices are dense row-major target x source.
All integers are reduced mod p on load.  Name resolution failures and
shape problems raise DocumentError with a location path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .coeff import (Algebra, BilinearMap, Morphism, PrimeField,
                    StructureError, Supply)
from .crossed import (LIFTING_KEYS, CrossedModule, ThreeCrossedModule,
                      TwoCrossedModule)
from .lie import LieAlgebra, LieThreeCrossedModule
from .simplicial import TruncatedSimplicialAlgebra

ACTION_KEYS = ("01", "02", "03", "12", "13", "23")


class DocumentError(ValueError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass
class Document:
    config: Supply = dc_field(default_factory=Supply)
    characteristics: tuple[int, ...] = (2,)
    algebras: dict = dc_field(default_factory=dict)
    lie_algebras: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    simplicial: dict = dc_field(default_factory=dict)
    crossed_modules: dict = dc_field(default_factory=dict)
    two_crossed_modules: dict = dc_field(default_factory=dict)
    three_crossed_modules: dict = dc_field(default_factory=dict)
    lie_three_crossed: dict = dc_field(default_factory=dict)

    def lookup(self, name: str, prefer: str | None = None):
        """Resolve a name across all sections; returns (kind, object).

        `prefer` names the section a kind-specific command checks first,
        so one corpus name can carry both a structure and its simplicial
        realization.
        """
        sections = [
            ("algebra", self.algebras), ("lie-algebra", self.lie_algebras),
            ("morphism", self.morphisms), ("simplicial", self.simplicial),
            ("crossed", self.crossed_modules),
            ("two-crossed", self.two_crossed_modules),
            ("three-crossed", self.three_crossed_modules),
            ("lie-three-crossed", self.lie_three_crossed),
        ]
        if prefer is not None:
            sections.sort(key=lambda kv: kv[0] != prefer)
        for kind, table in sections:
            if name in table:
                return kind, table[name]
        raise DocumentError(f"unknown name {name!r}", "lookup")


# ---------------------------------------------------------------------------
# loading


def _dense_tensor(triples, shape, p, loc) -> np.ndarray:
    t = np.zeros(shape, dtype=np.int64)
    for entry in triples:
        if len(entry) != 4:
            raise DocumentError(f"structure entry {entry} is not [i, j, k, coeff]", loc)
        i, j, k, c = (int(v) for v in entry)
        if not (0 <= i < shape[0] and 0 <= j < shape[1] and 0 <= k < shape[2]):
            raise DocumentError(f"index ({i},{j},{k}) outside dim {shape}", loc)
        t[i, j, k] = c % p
    return t


def _load_algebra(name, body, loc) -> Algebra:
    try:
        p = int(body["p"])
        dim = int(body["dim"])
        basis = tuple(str(b) for b in body.get("basis", [f"e{i}" for i in range(dim)]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad algebra header: {exc}", loc)
    if len(basis) != dim:
        raise DocumentError(f"{len(basis)} basis labels for dim {dim}", loc)
    struct = _dense_tensor(body.get("structure", []), (dim, dim, dim), p, loc)
    identity = body.get("identity")
    try:
        return Algebra(PrimeField(p), struct, basis,
                       None if identity is None else int(identity), name=name)
    except StructureError as exc:
        raise DocumentError(str(exc), loc)


def _load_lie_algebra(name, body, loc) -> LieAlgebra:
    try:
        p = int(body["p"])
        dim = int(body["dim"])
        basis = tuple(str(b) for b in body.get("basis", [f"e{i}" for i in range(dim)]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad Lie algebra header: {exc}", loc)
    bracket = _dense_tensor(body.get("bracket", []), (dim, dim, dim), p, loc)
    return LieAlgebra(PrimeField(p), bracket, basis, name=name)


def _resolve(table, name, loc):
    if name not in table:
        raise DocumentError(f"unknown name {name!r}", loc)
    return table[name]


def _load_morphism(body, algebras, loc) -> Morphism:
    src = _resolve(algebras, body["source"], loc)
    tgt = _resolve(algebras, body["target"], loc)
    mat = np.array(body.get("matrix", []), dtype=np.int64)
    if mat.size == 0:
        mat = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    try:
        return Morphism(src, tgt, mat)
    except StructureError as exc:
        raise DocumentError(str(exc), loc)


def _load_bilinear(body, left, right, target, loc) -> BilinearMap:
    triples = body["triples"] if isinstance(body, dict) else body
    tensor = _dense_tensor(triples, (left.dim, right.dim, target.dim), target.p, loc)
    return BilinearMap(left, right, target, tensor)


def load_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}", "document")
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object", "document")
    cfg = raw.get("config", {})
    doc = Document(
        config=Supply(seed=int(cfg.get("seed", 0)),
                      budget=int(cfg.get("budget", 256)),
                      exhaustive_bound=int(cfg.get("exhaustive_bound", 4096))),
        characteristics=tuple(int(c) for c in cfg.get("characteristics", [2])))

    for name, body in raw.get("algebras", {}).items():
        doc.algebras[name] = _load_algebra(name, body, f"algebras.{name}")
    for name, body in raw.get("lie_algebras", {}).items():
        doc.lie_algebras[name] = _load_lie_algebra(name, body, f"lie_algebras.{name}")
    for name, body in raw.get("morphisms", {}).items():
        doc.morphisms[name] = _load_morphism(body, doc.algebras, f"morphisms.{name}")

    for name, body in raw.get("simplicial", {}).items():
        loc = f"simplicial.{name}"
        try:
            k = int(body["k"])
            level_names = body["levels"]
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad simplicial header: {exc}", loc)
        if len(level_names) != k + 1:
            raise DocumentError(f"{len(level_names)} levels for k={k}", loc)
        levels = tuple(_resolve(doc.algebras, nm, loc) for nm in level_names)
        faces = {}
        degs = {}
        for key, mor in body.get("faces", {}).items():
            n, i = (int(v) for v in key.split(","))
            faces[(n, i)] = _load_morphism(mor, doc.algebras, f"{loc}.faces[{key}]")
        for key, mor in body.get("degeneracies", {}).items():
            n, i = (int(v) for v in key.split(","))
            degs[(n, i)] = _load_morphism(mor, doc.algebras, f"{loc}.degeneracies[{key}]")
        try:
            doc.simplicial[name] = TruncatedSimplicialAlgebra(levels, faces, degs, name=name)
        except StructureError as exc:
            raise DocumentError(str(exc), loc)

    for name, body in raw.get("crossed_modules", {}).items():
        loc = f"crossed_modules.{name}"
        C = _resolve(doc.algebras, body["C"], loc)
        R = _resolve(doc.algebras, body["R"], loc)
        bd = _load_morphism({"source": body["C"], "target": body["R"],
                             "matrix": body["boundary"]}, doc.algebras, loc)
        act = _load_bilinear(body["action"], R, C, C, f"{loc}.action")
        doc.crossed_modules[name] = CrossedModule(C, R, bd, act, name=name)

    for name, body in raw.get("two_crossed_modules", {}).items():
        loc = f"two_crossed_modules.{name}"
        C2 = _resolve(doc.algebras, body["C2"], loc)
        C1 = _resolve(doc.algebras, body["C1"], loc)
        C0 = _resolve(doc.algebras, body["C0"], loc)
        d2 = _load_morphism({"source": body["C2"], "target": body["C1"],
                             "matrix": body["d2"]}, doc.algebras, loc)
        d1 = _load_morphism({"source": body["C1"], "target": body["C0"],
                             "matrix": body["d1"]}, doc.algebras, loc)
        doc.two_crossed_modules[name] = TwoCrossedModule(
            C2, C1, C0, d2, d1,
            _load_bilinear(body["action_on_c1"], C0, C1, C1, f"{loc}.action_on_c1"),
            _load_bilinear(body["action_on_c2"], C0, C2, C2, f"{loc}.action_on_c2"),
            _load_bilinear(body["lifting"], C1, C1, C2, f"{loc}.lifting"),
            name=name)

    for name, body in raw.get("three_crossed_modules", {}).items():
        loc = f"three_crossed_modules.{name}"
        algs = {lv: _resolve(doc.algebras, body[lv], loc)
                for lv in ("C3", "C2", "C1", "C0")}
        d3 = _load_morphism({"source": body["C3"], "target": body["C2"],
                             "matrix": body["d3"]}, doc.algebras, loc)
        d2 = _load_morphism({"source": body["C2"], "target": body["C1"],
                             "matrix": body["d2"]}, doc.algebras, loc)
        d1 = _load_morphism({"source": body["C1"], "target": body["C0"],
                             "matrix": body["d1"]}, doc.algebras, loc)
        sig = {"01": ("C0", "C1", "C1"), "02": ("C0", "C2", "C2"),
               "03": ("C0", "C3", "C3"), "12": ("C1", "C2", "C2"),
               "13": ("C1", "C3", "C3"), "23": ("C2", "C3", "C3")}
        actions = {}
        for key in ACTION_KEYS:
            l, r, t = (algs[x] for x in sig[key])
            actions[key] = _load_bilinear(body["actions"][key], l, r, t,
                                          f"{loc}.actions[{key}]")
        lsig = {"(1)(0)": ("C2", "C2", "C3"), "(2)(0)": ("C2", "C2", "C3"),
                "(2)(1)": ("C2", "C2", "C3"), "(1,0)(2)": ("C1", "C2", "C3"),
                "(2,0)(1)": ("C1", "C2", "C3"), "(0)(2,1)": ("C2", "C1", "C3"),
                "()": ("C1", "C1", "C2")}
        liftings = {}
        for key in LIFTING_KEYS:
            l, r, t = (algs[x] for x in lsig[key])
            liftings[key] = _load_bilinear(body["liftings"][key], l, r, t,
                                           f"{loc}.liftings[{key}]")
        doc.three_crossed_modules[name] = ThreeCrossedModule(
            algs["C3"], algs["C2"], algs["C1"], algs["C0"], d3, d2, d1,
            actions, liftings, name=name)

    for name, body in raw.get("lie_three_crossed", {}).items():
        loc = f"lie_three_crossed.{name}"
        algs = {lv: _resolve(doc.lie_algebras, body[lv], loc)
                for lv in ("L3", "L2", "L1", "L0")}
        mor = {}
        for dkey, s, t in (("d3", "L3", "L2"), ("d2", "L2", "L1"), ("d1", "L1", "L0")):
            mat = np.array(body[dkey], dtype=np.int64)
            if mat.size == 0:
                mat = np.zeros((algs[t].dim, algs[s].dim), dtype=np.int64)
            mor[dkey] = Morphism(algs[s], algs[t], mat)
        sig = {"01": ("L0", "L1", "L1"), "02": ("L0", "L2", "L2"),
               "03": ("L0", "L3", "L3"), "12": ("L1", "L2", "L2"),
               "13": ("L1", "L3", "L3"), "23": ("L2", "L3", "L3")}
        actions = {k: _load_bilinear(body["actions"][k], *(algs[x] for x in sig[k]),
                                     f"{loc}.actions[{k}]") for k in ACTION_KEYS}
        lsig = {"(1)(0)": ("L2", "L2", "L3"), "(2)(0)": ("L2", "L2", "L3"),
                "(2)(1)": ("L2", "L2", "L3"), "(1,0)(2)": ("L1", "L2", "L3"),
                "(2,0)(1)": ("L1", "L2", "L3"), "(0)(2,1)": ("L2", "L1", "L3"),
                "()": ("L1", "L1", "L2")}
        liftings = {k: _load_bilinear(body["liftings"][k], *(algs[x] for x in lsig[k]),
                                      f"{loc}.liftings[{k}]") for k in LIFTING_KEYS}
        doc.lie_three_crossed[name] = LieThreeCrossedModule(
            algs["L3"], algs["L2"], algs["L1"], algs["L0"],
            mor["d3"], mor["d2"], mor["d1"], actions, liftings, name=name)
    return doc


# ---------------------------------------------------------------------------
# dumping


def _tensor_triples(t: np.ndarray) -> list:
    out = []
    for i, j, k in zip(*np.nonzero(t)):
        out.append([int(i), int(j), int(k), int(t[i, j, k])])
    return out


def _algebra_body(A: Algebra) -> dict:
    body = {"p": A.p, "dim": A.dim, "basis": list(A.basis_names),
            "structure": _tensor_triples(A.structure)}
    if A.identity is not None:
        body["identity"] = A.identity
    return body


def _lie_body(L: LieAlgebra) -> dict:
    return {"p": L.p, "dim": L.dim, "basis": list(L.basis_names),
            "bracket": _tensor_triples(L.structure)}


def _matrix(m: Morphism) -> list:
    return [[int(v) for v in row] for row in m.matrix]


class DocumentBuilder:
    """Accumulates structures and emits the JSON document body."""

    def __init__(self):
        self.body = {"algebras": {}, "lie_algebras": {}, "morphisms": {},
                     "simplicial": {}, "crossed_modules": {},
                     "two_crossed_modules": {}, "three_crossed_modules": {},
                     "lie_three_crossed": {}}
        self._alg_names: dict[int, str] = {}
        self._keep: list = []  # pin registered objects so ids stay unique

    def algebra(self, A: Algebra, name: str) -> str:
        if id(A) in self._alg_names:
            return self._alg_names[id(A)]
        self.body["algebras"][name] = _algebra_body(A)
        self._alg_names[id(A)] = name
        self._keep.append(A)
        return name

    def lie_algebra(self, L: LieAlgebra, name: str) -> str:
        if id(L) in self._alg_names:
            return self._alg_names[id(L)]
        self.body["lie_algebras"][name] = _lie_body(L)
        self._alg_names[id(L)] = name
        self._keep.append(L)
        return name

    def simplicial(self, E: TruncatedSimplicialAlgebra, name: str) -> None:
        level_names = [self.algebra(A, f"{name}.E{n}") for n, A in enumerate(E.levels)]
        faces = {}
        for (n, i), mor in sorted(E.faces.items()):
            faces[f"{n},{i}"] = {"source": level_names[n], "target": level_names[n - 1],
                                 "matrix": _matrix(mor)}
        degs = {}
        for (n, i), mor in sorted(E.degeneracies.items()):
            degs[f"{n},{i}"] = {"source": level_names[n - 1], "target": level_names[n],
                                "matrix": _matrix(mor)}
        self.body["simplicial"][name] = {"k": E.k, "levels": level_names,
                                         "faces": faces, "degeneracies": degs}

    def crossed(self, m: CrossedModule, name: str) -> None:
        self.body["crossed_modules"][name] = {
            "C": self.algebra(m.C, f"{name}.C"),
            "R": self.algebra(m.R, f"{name}.R"),
            "boundary": _matrix(m.boundary),
            "action": _tensor_triples(m.action.tensor)}

    def two_crossed(self, t: TwoCrossedModule, name: str) -> None:
        self.body["two_crossed_modules"][name] = {
            "C2": self.algebra(t.C2, f"{name}.C2"),
            "C1": self.algebra(t.C1, f"{name}.C1"),
            "C0": self.algebra(t.C0, f"{name}.C0"),
            "d2": _matrix(t.d2), "d1": _matrix(t.d1),
            "action_on_c1": _tensor_triples(t.act_on_c1.tensor),
            "action_on_c2": _tensor_triples(t.act_on_c2.tensor),
            "lifting": _tensor_triples(t.lifting.tensor)}

    def three_crossed(self, m: ThreeCrossedModule, name: str) -> None:
        self.body["three_crossed_modules"][name] = {
            "C3": self.algebra(m.C3, f"{name}.C3"),
            "C2": self.algebra(m.C2, f"{name}.C2"),
            "C1": self.algebra(m.C1, f"{name}.C1"),
            "C0": self.algebra(m.C0, f"{name}.C0"),
            "d3": _matrix(m.d3), "d2": _matrix(m.d2), "d1": _matrix(m.d1),
            "actions": {k: _tensor_triples(m.actions[k].tensor) for k in ACTION_KEYS},
            "liftings": {k: _tensor_triples(m.liftings[k].tensor) for k in LIFTING_KEYS}}

    def lie_three(self, m: LieThreeCrossedModule, name: str) -> None:
        self.body["lie_three_crossed"][name] = {
            "L3": self.lie_algebra(m.L3, f"{name}.L3"),
            "L2": self.lie_algebra(m.L2, f"{name}.L2"),
            "L1": self.lie_algebra(m.L1, f"{name}.L1"),
            "L0": self.lie_algebra(m.L0, f"{name}.L0"),
            "d3": _matrix(m.d3), "d2": _matrix(m.d2), "d1": _matrix(m.d1),
            "actions": {k: _tensor_triples(m.actions[k].tensor) for k in ACTION_KEYS},
            "liftings": {k: _tensor_triples(m.liftings[k].tensor) for k in LIFTING_KEYS}}

    def dumps(self, config: Supply | None = None, characteristics=(2,)) -> str:
        body = {"config": {"seed": (config or Supply()).seed,
                           "budget": (config or Supply()).budget,
                           "exhaustive_bound": (config or Supply()).exhaustive_bound,
                           "characteristics": list(characteristics)}}
        body.update({k: v for k, v in self.body.items() if v})
        return json.dumps(body, sort_keys=True)


def corpus_document(p: int = 2, config: Supply | None = None) -> str:
    """The built-in corpus serialized as a single-line JSON document."""
    from . import corpus as corpus_mod
    b = DocumentBuilder()
    for name, cm in corpus_mod.crossed_corpus(p).items():
        b.crossed(cm, name)
    for name, t in corpus_mod.two_crossed_corpus(p).items():
        b.two_crossed(t, name)
    for name, E in corpus_mod.simplicial_corpus(p).items():
        b.simplicial(E, name)
    for name, L in corpus_mod.lie_corpus(3 if p == 2 else p).items():
        b.lie_algebra(L, name)
    for name, m in corpus_mod.lie_three_corpus(3 if p == 2 else p).items():
        b.lie_three(m, name)
    return b.dumps(config, characteristics=(p,))
