"""JSON documents: one self-contained workspace per file, schema "1".

Top-level keys (all optional except ``schema``)::

    groupoids  name -> groupoid document
    functors   name -> {"source", "target", "objects", "arrows"}
    reps       name -> rep document referencing a groupoid by name
    las        name -> rep document plus "side_bracket" and "fiber_bracket"
    morphisms  name -> {"source", "target", "base", "on_C", "on_E"}; source and
               target name reps or LA-groupoids, base is an inline functor
    xmods      name -> {"g", "h", "partial", "phi"}
    chains     name -> {"phi", "psi"}: an LA-Morita span W → V, W → V′

Rationals are "p/q" or "p" strings; matrices are lists of rows; Lie brackets
are constant tables consts[i][j][k]; omega is keyed "g|h".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .fingroupoid import FinGroupoid, GroupoidFunctor, functor_to_doc, groupoid_from_doc, groupoid_to_doc
from .lagroupoid import LAGroupoid
from .liealg import LieAlg
from .ratkernel import Matrix, Q, fmt_rat, mat
from .vbgroupoid import RepUTH, VBMorphism
from .xmodlinf import XMod

SCHEMA = "1"


class DocError(ValueError):
    """Malformed input: bad JSON, a missing field, a dangling reference or a wrong shape."""


# -- leaves ------------------------------------------------------------------------------

def matrix_to_doc(m: Matrix) -> list:
    return [[fmt_rat(x) for x in row] for row in m]


def matrix_from_doc(rows: Any, shape: tuple[int, int], where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != shape[0] or any(
            not isinstance(r, list) or len(r) != shape[1] for r in rows):
        raise DocError(f"{where}: expected a {shape[0]}x{shape[1]} matrix")
    try:
        return mat(rows, shape)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocError(f"{where}: bad rational entry ({exc})") from None


def consts_to_doc(L: LieAlg) -> list:
    return [[[fmt_rat(x) for x in L.consts[i, j]] for j in range(L.dim)] for i in range(L.dim)]


def consts_from_doc(table: Any, n: int, where: str) -> LieAlg:
    if n == 0 and table == []:
        return LieAlg(np.empty((0, 0, 0), dtype=object))
    ok = (isinstance(table, list) and len(table) == n
          and all(isinstance(r, list) and len(r) == n for r in table)
          and all(isinstance(c, list) and len(c) == n for r in table for c in r))
    if not ok:
        raise DocError(f"{where}: expected an {n}x{n}x{n} constant table")
    c = np.empty((n, n, n), dtype=object)
    try:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c[i, j, k] = Q(table[i][j][k])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocError(f"{where}: bad rational entry ({exc})") from None
    return LieAlg(c)


# -- structures --------------------------------------------------------------------------

def rep_to_doc(R: RepUTH, groupoid_name: str) -> dict:
    G = R.G
    return {
        "groupoid": groupoid_name,
        "C": {x: R.C[x] for x in G.objects},
        "E": {x: R.E[x] for x in G.objects},
        "partial": {x: matrix_to_doc(R.d(x)) for x in G.objects},
        "deltaC": {g: matrix_to_doc(R.deltaC[g]) for g in G.arrow_ids},
        "deltaE": {g: matrix_to_doc(R.deltaE[g]) for g in G.arrow_ids},
        "omega": {f"{g}|{h}": matrix_to_doc(m) for (g, h), m in sorted(R.omega.items())},
    }


def _omega_key(key: str, G: FinGroupoid, where: str) -> tuple[str, str]:
    # arrow ids may themselves contain "|", so try every split point
    for i, ch in enumerate(key):
        if ch == "|" and (key[:i], key[i + 1:]) in G.compose:
            return key[:i], key[i + 1:]
    raise DocError(f"{where}: omega key {key!r} is not a composable pair")


def rep_from_doc(doc: Mapping, G: FinGroupoid, where: str) -> RepUTH:
    try:
        C = {x: int(doc["C"][x]) for x in G.objects}
        E = {x: int(doc["E"][x]) for x in G.objects}
        partial = {x: matrix_from_doc(doc["partial"][x], (E[x], C[x]), f"{where}.partial[{x}]")
                   for x in G.objects}
        dC, dE = {}, {}
        for g in G.arrow_ids:
            s, t = G.src(g), G.tgt(g)
            dC[g] = matrix_from_doc(doc["deltaC"][g], (C[t], C[s]), f"{where}.deltaC[{g}]")
            dE[g] = matrix_from_doc(doc["deltaE"][g], (E[t], E[s]), f"{where}.deltaE[{g}]")
        omega = {}
        for key, rows in doc.get("omega", {}).items():
            g, h = _omega_key(key, G, where)
            omega[(g, h)] = matrix_from_doc(rows, (C[G.tgt(g)], E[G.src(h)]), f"{where}.omega[{key}]")
    except KeyError as exc:
        raise DocError(f"{where}: missing entry {exc}") from None
    return RepUTH(G, C, E, partial, dC, dE, omega)


def la_to_doc(L: LAGroupoid, groupoid_name: str) -> dict:
    G = L.rep.G
    out = rep_to_doc(L.rep, groupoid_name)
    out["side_bracket"] = {x: consts_to_doc(L.side_bracket[x]) for x in G.objects}
    out["fiber_bracket"] = {g: consts_to_doc(L.fiber_bracket[g]) for g in G.arrow_ids}
    return out


def la_from_doc(doc: Mapping, G: FinGroupoid, where: str) -> LAGroupoid:
    R = rep_from_doc(doc, G, where)
    try:
        side = {x: consts_from_doc(doc["side_bracket"][x], R.E[x], f"{where}.side_bracket[{x}]")
                for x in G.objects}
        fiber = {g: consts_from_doc(doc["fiber_bracket"][g], R.dC(g) + R.dE(g), f"{where}.fiber_bracket[{g}]")
                 for g in G.arrow_ids}
    except KeyError as exc:
        raise DocError(f"{where}: missing entry {exc}") from None
    return LAGroupoid(R, side, fiber)


def xmod_to_doc(X: XMod) -> dict:
    return {"g": consts_to_doc(X.g), "h": consts_to_doc(X.h), "partial": matrix_to_doc(X.partial),
            "phi": [matrix_to_doc(m) for m in X.phi]}


def _table_dim(t: Any) -> int:
    return len(t) if isinstance(t, list) else -1


def xmod_from_doc(doc: Mapping, where: str) -> XMod:
    try:
        ng, nh = _table_dim(doc["g"]), _table_dim(doc["h"])
        if ng < 0 or nh < 0:
            raise DocError(f"{where}: g and h must be constant tables")
        g = consts_from_doc(doc["g"], ng, f"{where}.g")
        h = consts_from_doc(doc["h"], nh, f"{where}.h")
        partial = matrix_from_doc(doc["partial"], (nh, ng), f"{where}.partial")
        phi = doc["phi"]
        if not isinstance(phi, list) or len(phi) != nh:
            raise DocError(f"{where}.phi: expected {nh} matrices")
        return XMod(g, h, partial, tuple(matrix_from_doc(m, (ng, ng), f"{where}.phi[{i}]")
                                         for i, m in enumerate(phi)))
    except KeyError as exc:
        raise DocError(f"{where}: missing entry {exc}") from None


def morphism_to_doc(F: VBMorphism, source: str, target: str) -> dict:
    G = F.source.G
    return {"source": source, "target": target, "base": functor_to_doc(F.base),
            "on_C": {x: matrix_to_doc(F.on_C[x]) for x in G.objects},
            "on_E": {x: matrix_to_doc(F.on_E[x]) for x in G.objects}}


# -- the workspace -----------------------------------------------------------------------------

@dataclass
class Workspace:
    groupoids: dict[str, FinGroupoid] = field(default_factory=dict)
    functors: dict[str, GroupoidFunctor] = field(default_factory=dict)
    reps: dict[str, RepUTH] = field(default_factory=dict)
    las: dict[str, LAGroupoid] = field(default_factory=dict)
    morphisms: dict[str, VBMorphism] = field(default_factory=dict)
    xmods: dict[str, XMod] = field(default_factory=dict)
    chains: dict[str, tuple[str, str]] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def rep_of(self, name: str) -> RepUTH:
        if name in self.reps:
            return self.reps[name]
        if name in self.las:
            return self.las[name].rep
        raise DocError(f"no rep or LA-groupoid named {name!r}")

    def name_of_groupoid(self, G: FinGroupoid) -> str:
        for n, H in self.groupoids.items():
            if H is G:
                return n
        raise KeyError("groupoid not registered")

    def name_of_rep(self, R: RepUTH) -> str:
        for n, S in self.reps.items():
            if S is R:
                return n
        for n, L in self.las.items():
            if L.rep is R:
                return n
        raise KeyError("rep not registered")

    def to_doc(self) -> dict:
        out: dict[str, Any] = {"schema": SCHEMA}
        if self.groupoids:
            out["groupoids"] = {n: groupoid_to_doc(G) for n, G in self.groupoids.items()}
        if self.functors:
            out["functors"] = {n: {"source": self.name_of_groupoid(F.source),
                                   "target": self.name_of_groupoid(F.target), **functor_to_doc(F)}
                               for n, F in self.functors.items()}
        if self.reps:
            out["reps"] = {n: rep_to_doc(R, self.name_of_groupoid(R.G)) for n, R in self.reps.items()}
        if self.las:
            out["las"] = {n: la_to_doc(L, self.name_of_groupoid(L.rep.G)) for n, L in self.las.items()}
        if self.morphisms:
            out["morphisms"] = {n: morphism_to_doc(F, self.name_of_rep(F.source), self.name_of_rep(F.target))
                                for n, F in self.morphisms.items()}
        if self.xmods:
            out["xmods"] = {n: xmod_to_doc(X) for n, X in self.xmods.items()}
        if self.chains:
            out["chains"] = {n: {"phi": p, "psi": q} for n, (p, q) in self.chains.items()}
        out.update(self.extra)
        return out


def _section(doc: Mapping, key: str) -> Mapping:
    sec = doc.get(key, {})
    if not isinstance(sec, dict):
        raise DocError(f"{key}: expected an object mapping names to documents")
    return sec


def _functor(doc: Mapping, S: FinGroupoid, T: FinGroupoid, where: str) -> GroupoidFunctor:
    try:
        objs = {x: doc["objects"][x] for x in S.objects}
        arrs = {g: doc["arrows"][g] for g in S.arrow_ids}
    except (KeyError, TypeError) as exc:
        raise DocError(f"{where}: functor misses {exc}") from None
    return GroupoidFunctor(S, T, objs, arrs)


def workspace_from_doc(doc: Any) -> Workspace:
    if not isinstance(doc, dict):
        raise DocError("top level must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise DocError(f'unsupported or missing "schema" (expected "{SCHEMA}")')
    ws = Workspace()
    for n, g in _section(doc, "groupoids").items():
        try:
            ws.groupoids[n] = groupoid_from_doc(g)
        except (KeyError, TypeError, ValueError) as exc:
            raise DocError(f"groupoids.{n}: {exc}") from None

    def groupoid(ref, where):
        if ref not in ws.groupoids:
            raise DocError(f"{where}: unknown groupoid {ref!r}")
        return ws.groupoids[ref]

    for n, f in _section(doc, "functors").items():
        S = groupoid(f.get("source"), f"functors.{n}")
        T = groupoid(f.get("target"), f"functors.{n}")
        ws.functors[n] = _functor(f, S, T, f"functors.{n}")
    for n, r in _section(doc, "reps").items():
        ws.reps[n] = rep_from_doc(r, groupoid(r.get("groupoid"), f"reps.{n}"), f"reps.{n}")
    for n, r in _section(doc, "las").items():
        ws.las[n] = la_from_doc(r, groupoid(r.get("groupoid"), f"las.{n}"), f"las.{n}")
    for n, x in _section(doc, "xmods").items():
        ws.xmods[n] = xmod_from_doc(x, f"xmods.{n}")
    for n, m in _section(doc, "morphisms").items():
        where = f"morphisms.{n}"
        try:
            S, T = ws.rep_of(m["source"]), ws.rep_of(m["target"])
            base = _functor(m["base"], S.G, T.G, where + ".base")
            on_C = {x: matrix_from_doc(m["on_C"][x], (T.C[base.obj(x)], S.C[x]), f"{where}.on_C[{x}]")
                    for x in S.G.objects}
            on_E = {x: matrix_from_doc(m["on_E"][x], (T.E[base.obj(x)], S.E[x]), f"{where}.on_E[{x}]")
                    for x in S.G.objects}
        except KeyError as exc:
            raise DocError(f"{where}: missing or dangling entry {exc}") from None
        ws.morphisms[n] = VBMorphism(S, T, base, on_C, on_E)
    for n, c in _section(doc, "chains").items():
        try:
            p, q = c["phi"], c["psi"]
        except KeyError as exc:
            raise DocError(f"chains.{n}: missing entry {exc}") from None
        for ref in (p, q):
            if ref not in ws.morphisms:
                raise DocError(f"chains.{n}: unknown morphism {ref!r}")
        ws.chains[n] = (p, q)
    return ws


def parse_text(text: str) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return workspace_from_doc(doc)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
