"""Finite groupoids, functors between them, weak equivalences and weak fibre products.

Composition ``gh`` is defined when ``src(g) == tgt(h)``; then ``src(gh) = src(h)``
and ``tgt(gh) = tgt(g)``.  Object and arrow ids are strings and every
enumeration is in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence


@dataclass
class Report:
    """Outcome of a validator: empty ``violations`` means valid."""

    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, rule: str, witness: str) -> None:
        self.violations.append((rule, witness))

    def extend(self, other: "Report", prefix: str = "") -> None:
        self.violations.extend((prefix + r, w) for r, w in other.violations)

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        return [f"{r}: {w}" for r, w in self.violations] or ["valid"]


@dataclass(frozen=True, eq=False)
class FinGroupoid:
    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]  # id -> (src, tgt)
    compose: Mapping[tuple[str, str], str]
    unit: Mapping[str, str]
    inv: Mapping[str, str]

    def src(self, g: str) -> str:
        return self.arrows[g][0]

    def tgt(self, g: str) -> str:
        return self.arrows[g][1]

    def mul(self, g: str, h: str) -> str:
        return self.compose[(g, h)]

    @cached_property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.arrows))

    @cached_property
    def unit_arrows(self) -> frozenset[str]:
        return frozenset(self.unit.values())

    def is_unit(self, g: str) -> bool:
        return g in self.unit_arrows

    @cached_property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        """All composable pairs (g, h), src(g) == tgt(h), in sorted order."""
        into: dict[str, list[str]] = {x: [] for x in self.objects}
        for h in self.arrow_ids:
            into[self.tgt(h)].append(h)
        return tuple((g, h) for g in self.arrow_ids for h in into[self.src(g)])

    def triples(self) -> Iterable[tuple[str, str, str]]:
        into: dict[str, list[str]] = {x: [] for x in self.objects}
        for h in self.arrow_ids:
            into[self.tgt(h)].append(h)
        for g, h in self.pairs:
            for k in into[self.src(h)]:
                yield g, h, k

    @cached_property
    def hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        """(x, y) -> arrows x -> y."""
        out: dict[tuple[str, str], list[str]] = {}
        for g in self.arrow_ids:
            out.setdefault((self.src(g), self.tgt(g)), []).append(g)
        return {k: tuple(v) for k, v in out.items()}

    def arrows_between(self, x: str, y: str) -> tuple[str, ...]:
        return self.hom.get((x, y), ())

    @cached_property
    def components(self) -> tuple[tuple[str, ...], ...]:
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.arrow_ids:
            a, b = find(self.src(g)), find(self.tgt(g))
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[str, list[str]] = {}
        for x in self.objects:
            groups.setdefault(find(x), []).append(x)
        return tuple(tuple(v) for _, v in sorted(groups.items()))


def make_groupoid(objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                  compose: Mapping[tuple[str, str], str], unit: Mapping[str, str],
                  inv: Mapping[str, str]) -> FinGroupoid:
    return FinGroupoid(tuple(sorted(objects)), dict(sorted(arrows.items())), dict(compose),
                       dict(unit), dict(inv))


def validate_groupoid(G: FinGroupoid) -> Report:
    rep = Report()
    objs = set(G.objects)
    if len(objs) != len(G.objects):
        rep.fail("objects", "duplicate object ids")
    for g, (s, t) in G.arrows.items():
        if s not in objs or t not in objs:
            rep.fail("arrow endpoints", g)
    if not rep.ok:
        return rep
    for x in G.objects:
        u = G.unit.get(x)
        if u not in G.arrows or G.arrows[u] != (x, x):
            rep.fail("unit", x)
    if not rep.ok:
        return rep
    expected = set(G.pairs)
    for pair, gh in G.compose.items():
        if pair not in expected:
            rep.fail("compose domain", f"{pair} is not composable")
        elif gh not in G.arrows:
            rep.fail("compose range", f"{pair} -> {gh}")
    for pair in G.pairs:
        if pair not in G.compose:
            rep.fail("compose total", f"{pair} missing")
    if not rep.ok:
        return rep
    for g, h in G.pairs:
        gh = G.mul(g, h)
        if G.src(gh) != G.src(h) or G.tgt(gh) != G.tgt(g):
            rep.fail("src/tgt of composite", f"({g},{h})")
    for g in G.arrow_ids:
        if G.mul(g, G.unit[G.src(g)]) != g or G.mul(G.unit[G.tgt(g)], g) != g:
            rep.fail("unit law", g)
    if not rep.ok:
        return rep
    for g, h, k in G.triples():
        if G.mul(G.mul(g, h), k) != G.mul(g, G.mul(h, k)):
            rep.fail("associativity", f"({g},{h},{k})")
    for g in G.arrow_ids:
        gi = G.inv.get(g)
        if gi not in G.arrows or G.arrows[gi] != (G.tgt(g), G.src(g)):
            rep.fail("inverse", g)
            continue
        if G.mul(g, gi) != G.unit[G.tgt(g)] or G.mul(gi, g) != G.unit[G.src(g)]:
            rep.fail("inverse", g)
    return rep


# -- generators ----------------------------------------------------------------

def pair_groupoid(objects: Iterable[str]) -> FinGroupoid:
    """One arrow ``y<x`` from x to y for every ordered pair."""
    objs = sorted(objects)
    aid = {(x, y): f"{y}<{x}" for x in objs for y in objs}
    arrows = {a: xy for xy, a in aid.items()}
    compose = {(aid[(y, z)], aid[(x, y)]): aid[(x, z)] for x in objs for y in objs for z in objs}
    return make_groupoid(objs, arrows, compose, {x: aid[(x, x)] for x in objs},
                         {a: aid[(y, x)] for (x, y), a in aid.items()})


def discrete_groupoid(objects: Iterable[str]) -> FinGroupoid:
    objs = sorted(objects)
    return make_groupoid(objs, {f"1{x}": (x, x) for x in objs},
                         {(f"1{x}", f"1{x}"): f"1{x}" for x in objs},
                         {x: f"1{x}" for x in objs}, {f"1{x}": f"1{x}" for x in objs})


def point_groupoid() -> FinGroupoid:
    return make_groupoid(["*"], {"1": ("*", "*")}, {("1", "1"): "1"}, {"*": "1"}, {"1": "1"})


@dataclass(frozen=True)
class Group:
    elements: tuple[str, ...]
    table: Mapping[tuple[str, str], str]
    identity: str

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return next(b for b in self.elements if self.table[(a, b)] == self.identity)


def make_group(elements: Sequence[str], table: Mapping[tuple[str, str], str]) -> Group:
    els = tuple(elements)
    for a, b in product(els, els):
        if table.get((a, b)) not in els:
            raise ValueError(f"group table undefined or not closed at ({a},{b})")
    ident = [e for e in els if all(table[(e, a)] == a and table[(a, e)] == a for a in els)]
    if len(ident) != 1:
        raise ValueError("group table has no identity")
    e = ident[0]
    for a in els:
        if not any(table[(a, b)] == e and table[(b, a)] == e for b in els):
            raise ValueError(f"element {a} has no inverse")
    for a, b, c in product(els, els, els):
        if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
            raise ValueError(f"group table not associative at ({a},{b},{c})")
    return Group(els, dict(table), e)


def cyclic_group(n: int) -> Group:
    els = [f"r{i}" for i in range(n)]
    return make_group(els, {(f"r{i}", f"r{j}"): f"r{(i + j) % n}" for i in range(n) for j in range(n)})


def group_from_permutations(gens: Sequence[Sequence[int]]) -> Group:
    """Group generated by permutations of range(n), elements named by their images."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    name = {p: "p" + "".join(map(str, p)) for p in seen}
    table = {(name[a], name[b]): name[tuple(a[i] for i in b)] for a in seen for b in seen}
    return make_group(sorted(name.values()), table)


def group_as_groupoid(group: Group) -> FinGroupoid:
    els = group.elements
    return make_groupoid(["*"], {a: ("*", "*") for a in els},
                         {(a, b): group.mul(a, b) for a in els for b in els},
                         {"*": group.identity}, {a: group.inv(a) for a in els})


def action_groupoid(group: Group, points: Iterable[str],
                    act: Callable[[str, str], str] | Mapping[tuple[str, str], str]) -> FinGroupoid:
    """Arrow ``a.x`` goes from x to a·x; (b, a·x)(a, x) = (ba, x)."""
    pts = sorted(points)
    f = act if callable(act) else (lambda a, x: act[(a, x)])
    for x in pts:
        if f(group.identity, x) != x:
            raise ValueError("identity does not act trivially")
        for a, b in product(group.elements, group.elements):
            if f(group.mul(a, b), x) != f(a, f(b, x)):
                raise ValueError("not an action")
    aid = {(a, x): f"{a}.{x}" for a in group.elements for x in pts}
    arrows = {aid[(a, x)]: (x, f(a, x)) for a in group.elements for x in pts}
    compose = {(aid[(b, f(a, x))], aid[(a, x)]): aid[(group.mul(b, a), x)]
               for a in group.elements for b in group.elements for x in pts}
    return make_groupoid(pts, arrows, compose, {x: aid[(group.identity, x)] for x in pts},
                         {aid[(a, x)]: aid[(group.inv(a), f(a, x))] for a in group.elements for x in pts})


def cech_groupoid(cover: Mapping[str, str]) -> FinGroupoid:
    """Objects are the points u of the cover; one arrow ``v<u`` whenever u and v lie over the same point."""
    pts = sorted(cover)
    aid = {(u, v): f"{v}<{u}" for u in pts for v in pts if cover[u] == cover[v]}
    arrows = {a: uv for uv, a in aid.items()}
    compose = {(aid[(v, w)], aid[(u, v)]): aid[(u, w)]
               for (u, v) in aid for w in pts if (v, w) in aid}
    return make_groupoid(pts, arrows, compose, {u: aid[(u, u)] for u in pts},
                         {a: aid[(v, u)] for (u, v), a in aid.items()})


def disjoint_union(G: FinGroupoid, H: FinGroupoid) -> FinGroupoid:
    """Objects and arrows tagged with prefixes ``0:`` and ``1:``."""
    def tag(i, s):
        return f"{i}:{s}"
    objects, arrows, compose, unit, inv = [], {}, {}, {}, {}
    for i, K in enumerate((G, H)):
        objects += [tag(i, x) for x in K.objects]
        arrows.update({tag(i, g): (tag(i, s), tag(i, t)) for g, (s, t) in K.arrows.items()})
        compose.update({(tag(i, g), tag(i, h)): tag(i, gh) for (g, h), gh in K.compose.items()})
        unit.update({tag(i, x): tag(i, u) for x, u in K.unit.items()})
        inv.update({tag(i, g): tag(i, gi) for g, gi in K.inv.items()})
    return make_groupoid(objects, arrows, compose, unit, inv)


def product_groupoid(G: FinGroupoid, H: FinGroupoid) -> FinGroupoid:
    """Objects (x, y) named ``x|y``; arrows (g, h) named ``g|h``."""
    def pid(a, b):
        return f"{a}|{b}"
    objects = [pid(x, y) for x in G.objects for y in H.objects]
    arrows = {pid(g, h): (pid(G.src(g), H.src(h)), pid(G.tgt(g), H.tgt(h)))
              for g in G.arrow_ids for h in H.arrow_ids}
    compose = {(pid(g1, h1), pid(g2, h2)): pid(G.mul(g1, g2), H.mul(h1, h2))
               for g1, g2 in G.pairs for h1, h2 in H.pairs}
    unit = {pid(x, y): pid(G.unit[x], H.unit[y]) for x in G.objects for y in H.objects}
    inv = {pid(g, h): pid(G.inv[g], H.inv[h]) for g in G.arrow_ids for h in H.arrow_ids}
    return make_groupoid(objects, arrows, compose, unit, inv)


def product_projection(G: FinGroupoid, H: FinGroupoid, P: FinGroupoid) -> GroupoidFunctor:
    """The projection G × H → G for P = product_groupoid(G, H)."""
    return GroupoidFunctor(P, G, {f"{x}|{y}": x for x in G.objects for y in H.objects},
                           {f"{g}|{h}": g for g in G.arrow_ids for h in H.arrow_ids})


# -- functors ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupoidFunctor:
    source: FinGroupoid
    target: FinGroupoid
    on_objects: Mapping[str, str]
    on_arrows: Mapping[str, str]

    def __call__(self, g: str) -> str:
        return self.on_arrows[g]

    def obj(self, x: str) -> str:
        return self.on_objects[x]


def validate_functor(F: GroupoidFunctor) -> Report:
    G, H = F.source, F.target
    rep = Report()
    hobjs = set(H.objects)
    for x in G.objects:
        if F.on_objects.get(x) not in hobjs:
            rep.fail("object map", x)
    for g in G.arrow_ids:
        if F.on_arrows.get(g) not in H.arrows:
            rep.fail("arrow map", g)
    if not rep.ok:
        return rep
    for g in G.arrow_ids:
        h = F(g)
        if H.src(h) != F.obj(G.src(g)) or H.tgt(h) != F.obj(G.tgt(g)):
            rep.fail("src/tgt", g)
    for x in G.objects:
        if F(G.unit[x]) != H.unit[F.obj(x)]:
            rep.fail("units", x)
    if not rep.ok:
        return rep
    for g, h in G.pairs:
        if F(G.mul(g, h)) != H.mul(F(g), F(h)):
            rep.fail("composition", f"({g},{h})")
    return rep


def identity_functor(G: FinGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, {x: x for x in G.objects}, {g: g for g in G.arrow_ids})


def compose_functors(F2: GroupoidFunctor, F1: GroupoidFunctor) -> GroupoidFunctor:
    """F2 after F1."""
    return GroupoidFunctor(F1.source, F2.target,
                           {x: F2.obj(F1.obj(x)) for x in F1.source.objects},
                           {g: F2(F1(g)) for g in F1.source.arrow_ids})


def functor_to_point(G: FinGroupoid, P: FinGroupoid | None = None) -> GroupoidFunctor:
    P = P or point_groupoid()
    (pt,) = P.objects
    return GroupoidFunctor(G, P, {x: pt for x in G.objects}, {g: P.unit[pt] for g in G.arrow_ids})


def is_weak_equivalence(F: GroupoidFunctor) -> tuple[bool, Report]:
    """Essentially surjective and fully faithful."""
    G, H = F.source, F.target
    rep = Report()
    image = {F.obj(x) for x in G.objects}
    for y in H.objects:
        if not any(H.arrows_between(z, y) for z in image):
            rep.fail("essential surjectivity", y)
    for x in G.objects:
        for y in G.objects:
            mapped = [F(g) for g in G.arrows_between(x, y)]
            target = H.arrows_between(F.obj(x), F.obj(y))
            if len(set(mapped)) != len(mapped):
                rep.fail("faithful", f"{x}->{y}")
            if set(mapped) != set(target):
                rep.fail("full", f"{x}->{y}")
    return rep.ok, rep


@dataclass(frozen=True)
class SurjectivityProfile:
    on_objects: bool
    on_arrows: bool
    on_pairs: bool

    @property
    def all(self) -> bool:
        return self.on_objects and self.on_arrows and self.on_pairs


def surjectivity_profile(F: GroupoidFunctor) -> SurjectivityProfile:
    G, H = F.source, F.target
    objs = {F.obj(x) for x in G.objects} == set(H.objects)
    arrs = {F(g) for g in G.arrow_ids} == set(H.arrow_ids)
    pairs = {(F(g), F(h)) for g, h in G.pairs} == set(H.pairs)
    return SurjectivityProfile(objs, arrs, pairs)


@dataclass(frozen=True, eq=False)
class WeakFibreProduct:
    groupoid: FinGroupoid
    proj: GroupoidFunctor    # to the first factor
    proj2: GroupoidFunctor   # to the second factor
    obj_of: Mapping[str, tuple[str, str, str]]
    arrow_of: Mapping[str, tuple[str, str, str]]  # (g, h, g') with h the middle of the source


def weak_fibre_product(F: GroupoidFunctor, F2: GroupoidFunctor) -> WeakFibreProduct:
    """Objects (x, h, x') with h: F(x) -> F2(x'); an arrow (g, g') between
    (x, h, x') and (y, k, y') exists when F2(g') h = k F(g)."""
    G, G2, H = F.source, F2.source, F.target
    if F2.target is not H:
        raise ValueError("functors must share a codomain")
    objs: dict[tuple[str, str, str], str] = {}
    for x in G.objects:
        for x2 in G2.objects:
            for h in H.arrows_between(F.obj(x), F2.obj(x2)):
                objs[(x, h, x2)] = f"({x},{h},{x2})"

    def moved(g, h, g2):
        return H.mul(H.mul(F2(g2), h), H.inv[F(g)])

    arrows_t: dict[tuple[str, str, str], str] = {}
    arrows: dict[str, tuple[str, str]] = {}
    for (x, h, x2), oid in objs.items():
        for g in G.arrow_ids:
            if G.src(g) != x:
                continue
            for g2 in G2.arrow_ids:
                if G2.src(g2) != x2:
                    continue
                aid = f"[{g},{h},{g2}]"
                arrows_t[(g, h, g2)] = aid
                arrows[aid] = (oid, objs[(G.tgt(g), moved(g, h, g2), G2.tgt(g2))])
    compose = {}
    for (g1, h1, k1), a1 in arrows_t.items():
        k = moved(g1, h1, k1)
        for g2 in G.arrow_ids:
            if G.src(g2) != G.tgt(g1):
                continue
            for k2 in G2.arrow_ids:
                if G2.src(k2) != G2.tgt(k1):
                    continue
                compose[(arrows_t[(g2, k, k2)], a1)] = arrows_t[(G.mul(g2, g1), h1, G2.mul(k2, k1))]
    unit = {oid: arrows_t[(G.unit[x], h, G2.unit[x2])] for (x, h, x2), oid in objs.items()}
    inv = {a: arrows_t[(G.inv[g], moved(g, h, g2), G2.inv[g2])] for (g, h, g2), a in arrows_t.items()}
    W = make_groupoid(objs.values(), arrows, compose, unit, inv)
    obj_of = {oid: t for t, oid in objs.items()}
    arrow_of = {a: t for t, a in arrows_t.items()}
    p1 = GroupoidFunctor(W, G, {o: t[0] for o, t in obj_of.items()}, {a: t[0] for a, t in arrow_of.items()})
    p2 = GroupoidFunctor(W, G2, {o: t[2] for o, t in obj_of.items()}, {a: t[2] for a, t in arrow_of.items()})
    return WeakFibreProduct(W, p1, p2, obj_of, arrow_of)


# -- serialization -------------------------------------------------------------

def groupoid_to_doc(G: FinGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "arrows": [{"id": g, "src": G.src(g), "tgt": G.tgt(g)} for g in G.arrow_ids],
        "compose": [[g, h, G.mul(g, h)] for g, h in G.pairs],
        "units": {x: G.unit[x] for x in G.objects},
        "inv": {g: G.inv[g] for g in G.arrow_ids},
    }


def groupoid_from_doc(doc: Mapping) -> FinGroupoid:
    arrows = {a["id"]: (a["src"], a["tgt"]) for a in doc["arrows"]}
    if len(arrows) != len(doc["arrows"]):
        raise ValueError("duplicate arrow ids")
    compose = {}
    for g, h, gh in doc["compose"]:
        if (g, h) in compose:
            raise ValueError(f"pair ({g},{h}) listed twice")
        compose[(g, h)] = gh
    return make_groupoid(doc["objects"], arrows, compose, doc["units"], doc["inv"])


def functor_to_doc(F: GroupoidFunctor) -> dict:
    return {"objects": dict(F.on_objects), "arrows": dict(F.on_arrows)}
