"""Command-line front end.

Exit codes: 0 success, 1 a validator rejected an object, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable, Sequence

from .docs import (
    DocError,
    Workspace,
    consts_to_doc,
    dumps,
    matrix_to_doc,
    parse_text,
    xmod_to_doc,
)
from .fingroupoid import (
    Report,
    cech_groupoid,
    group_as_groupoid,
    pair_groupoid,
    validate_functor,
    validate_groupoid,
    weak_fibre_product,
)
from .generators import (
    action_on_letters,
    group_reps,
    group_from_permutations,
    involutions,
    klein4,
    morita_span,
    random_rep,
    s3,
    z2,
    z2_action_la,
    z3,
    base_families,
)
from .lagroupoid import (
    LAError,
    LAGroupoid,
    H_lie_algebras,
    crossed_module,
    la_morita_zigzag,
    la_morphism_violations,
    validate_la,
)
from .liealg import abelian
from .moritavb import is_vb_morita, morita_H_iso, vb_weak_fibre_product
from .ratkernel import equal, fmt_rat, zeros
from .sections import build_complex, cohomology, sections_report
from .vbgroupoid import (
    RepUTH,
    check_induced_groupoid,
    direct_sum,
    honest_rep,
    is_regular,
    projection_to_summand,
    type0_rep,
    type1_pullback,
    validate_rep,
    validate_vb_morphism,
)
from .xmodlinf import XMod, flatten_zigzag, linf_violations, validate_xmod


class ValidationFailure(Exception):
    """A loaded object failed its validator; carries the report to print."""

    def __init__(self, report: dict):
        super().__init__(report.get("error", "validation failed"))
        self.report = report


# -- validation ----------------------------------------------------------------------------

def _violations(rep: Report) -> list[str]:
    return [f"{rule}: {witness}" for rule, witness in rep.violations]


def _object_reports(ws: Workspace, full: bool) -> list[dict]:
    out = []

    def add(kind: str, name: str, rep: Report):
        out.append({"kind": kind, "name": name, "ok": rep.ok, "violations": _violations(rep)})

    for n, G in ws.groupoids.items():
        add("groupoid", n, validate_groupoid(G))
    for n, F in ws.functors.items():
        add("functor", n, validate_functor(F))
    for n, R in ws.reps.items():
        rep = validate_rep(R)
        if full:
            rep.extend(check_induced_groupoid(R), "induced groupoid: ")
        add("rep", n, rep)
    for n, L in ws.las.items():
        rep = validate_rep(L.rep)
        if rep.ok:
            rep.extend(validate_la(L))
        add("la", n, rep)
    for n, F in ws.morphisms.items():
        rep = validate_vb_morphism(F)
        src, tgt = _la_of(ws, F.source), _la_of(ws, F.target)
        if rep.ok and src is not None and tgt is not None:
            for v in la_morphism_violations(F, src, tgt):
                rep.fail("fiber maps respect brackets", v)
        add("morphism", n, rep)
    for n, X in ws.xmods.items():
        add("xmod", n, validate_xmod(X))
    return out


def _la_of(ws: Workspace, R: RepUTH) -> LAGroupoid | None:
    return next((L for L in ws.las.values() if L.rep is R), None)


def _require(ws: Workspace, kind: str, name: str) -> None:
    """Validate one object (and what it references) before use."""
    reports = [r for r in _object_reports(_sub_workspace(ws, kind, name), False)]
    bad = [r for r in reports if not r["ok"]]
    if bad:
        r = bad[0]
        raise ValidationFailure({"ok": False, "error": f"{r['kind']} {r['name']} is invalid",
                                 "violations": r["violations"]})


def _sub_workspace(ws: Workspace, kind: str, name: str) -> Workspace:
    sub = Workspace()
    table = getattr(ws, kind)
    if name not in table:
        raise DocError(f"no {kind[:-1]} named {name!r}")
    getattr(sub, kind)[name] = table[name]
    if kind == "morphisms":
        F = table[name]
        for R in (F.source, F.target):
            n = ws.name_of_rep(R)
            if n in ws.las:
                sub.las[n] = ws.las[n]
            else:
                sub.reps[n] = ws.reps[n]
    return sub


# -- commands --------------------------------------------------------------------------------

def cmd_validate(ws: Workspace, args) -> dict:
    objs = _object_reports(ws, args.check_level == "full")
    if args.name:
        objs = [o for o in objs if o["name"] in args.name]
        if not objs:
            raise DocError(f"no object named {args.name[0]!r}")
    report = {"command": "validate", "ok": all(o["ok"] for o in objs), "objects": objs}
    if not report["ok"]:
        raise ValidationFailure(report)
    return report


def _one_name(args, what: str) -> str:
    if not args.name or len(args.name) != 1:
        raise DocError(f"--name must give exactly one {what}")
    return args.name[0]


def _rep_named(ws: Workspace, name: str) -> RepUTH:
    if name in ws.reps:
        _require(ws, "reps", name)
        return ws.reps[name]
    if name in ws.las:
        _require(ws, "las", name)
        return ws.las[name].rep
    raise DocError(f"no rep or LA-groupoid named {name!r}")


def cmd_sections(ws: Workspace, args) -> dict:
    name = _one_name(args, "rep")
    R = _rep_named(ws, name)
    K = build_complex(R)
    return {"command": "sections", "rep": name, "regularity": str(is_regular(R)),
            "dim_core_sections": K.deg0_dim, "dim_Gamma_mult": K.deg1.dim,
            "delta": matrix_to_doc(K.complex.d),
            "Gamma_mult_basis": [[fmt_rat(x) for x in K.layout.encode(s)]
                                 for s in K.deg1.basis_sections()]}


def cmd_cohomology(ws: Workspace, args) -> dict:
    name = _one_name(args, "rep")
    R = _rep_named(ws, name)
    K = build_complex(R)
    return {"command": "cohomology", "rep": name, **sections_report(K, cohomology(K))}


def _xmod_report(X: XMod) -> dict:
    rep = validate_xmod(X)
    out = {"valid": rep.ok, "violations": _violations(rep), "dim_g": X.g.dim, "dim_h": X.h.dim,
           **xmod_to_doc(X)}
    if rep.ok:
        H = H_lie_algebras(X)
        out.update({"dim_H0": H.H0.dim, "dim_H1": H.H1.dim, "H1_bracket": consts_to_doc(H.H1)})
    return out


def cmd_xmod(ws: Workspace, args) -> dict:
    name = _one_name(args, "LA-groupoid or crossed module")
    if name in ws.xmods:
        out = {"command": "xmod", "xmod": name, **_xmod_report(ws.xmods[name])}
    elif name in ws.las:
        _require(ws, "las", name)
        out = {"command": "xmod", "la": name, **_xmod_report(crossed_module(ws.las[name]))}
    else:
        raise DocError(f"no LA-groupoid or crossed module named {name!r}")
    if not out["valid"]:
        raise ValidationFailure(out)
    return out


def cmd_morita(ws: Workspace, args) -> dict:
    name = _one_name(args, "morphism")
    _require(ws, "morphisms", name)
    F = ws.morphisms[name]
    ok, rep = is_vb_morita(F)
    out: dict[str, Any] = {"command": "morita", "morphism": name, "vb_morita": ok}
    if ok:
        h0, h1 = morita_H_iso(F)
        out.update({"H0_iso": matrix_to_doc(h0), "H1_iso": matrix_to_doc(h1)})
    else:
        out["reasons"] = _violations(rep)
    return out


def cmd_zigzag(ws: Workspace, args) -> dict:
    name = _one_name(args, "chain")
    if name not in ws.chains:
        raise DocError(f"no chain named {name!r}")
    p, q = ws.chains[name]
    for m in (p, q):
        _require(ws, "morphisms", m)
    Phi, Psi = ws.morphisms[p], ws.morphisms[q]
    LW, LV, LV2 = (_la_of(ws, R) for R in (Phi.source, Phi.target, Psi.target))
    if LW is None or LV is None or LV2 is None or Psi.source is not Phi.source:
        raise DocError(f"chain {name}: both maps must start at the same LA-groupoid and end at LA-groupoids")
    try:
        res = la_morita_zigzag(Phi, Psi, LW, LV, LV2)
    except LAError as exc:
        raise ValidationFailure({"command": "zigzag", "ok": False, "error": str(exc)}) from None
    F = flatten_zigzag(res.zigzag)
    fh0, fh1 = F.h_maps()
    return {"command": "zigzag", "chain": name,
            "H0_iso": matrix_to_doc(res.h0), "H1_iso": matrix_to_doc(res.h1),
            "H1_bracket_source": consts_to_doc(res.H_source.H1),
            "H1_bracket_target": consts_to_doc(res.H_target.H1),
            "linf": {"f_g": matrix_to_doc(F.f_g), "f_h": matrix_to_doc(F.f_h),
                     "f2": [[[fmt_rat(x) for x in F.f2[:, i, j]] for j in range(F.f2.shape[2])]
                            for i in range(F.f2.shape[1])]},
            "linf_violations": linf_violations(F),
            "flattened_matches": equal(fh0, res.h0) and equal(fh1, res.h1)}


def cmd_wfp(ws: Workspace, args) -> dict:
    if not args.name or len(args.name) != 2:
        raise DocError("wfp needs --name twice: the first and second leg")
    a, b = args.name
    out = Workspace()
    if a in ws.functors and b in ws.functors:
        for n in (a, b):
            _require(ws, "functors", n)
        F, F2 = ws.functors[a], ws.functors[b]
        w = weak_fibre_product(F, F2)
        for G in (F.source, F2.source, F.target):
            out.groupoids[ws.name_of_groupoid(G)] = G
        out.groupoids["P"] = w.groupoid
        out.functors.update({"proj": w.proj, "proj2": w.proj2})
        checks = [validate_groupoid(w.groupoid), validate_functor(w.proj), validate_functor(w.proj2)]
    elif a in ws.morphisms and b in ws.morphisms:
        for n in (a, b):
            _require(ws, "morphisms", n)
        F, F2 = ws.morphisms[a], ws.morphisms[b]
        w = vb_weak_fibre_product(F, F2)
        for R in (F.source, F2.source, F.target):
            out.groupoids[ws.name_of_groupoid(R.G)] = R.G
            out.reps[ws.name_of_rep(R)] = R
        out.groupoids["P"] = w.rep.G
        out.reps["P"] = w.rep
        out.morphisms.update({"proj": w.proj, "proj2": w.proj2})
        checks = [validate_rep(w.rep), validate_vb_morphism(w.proj), validate_vb_morphism(w.proj2)]
    else:
        raise DocError("wfp legs must both be functors or both be morphisms")
    doc = out.to_doc()
    if not all(c.ok for c in checks):
        raise ValidationFailure({"command": "wfp", "ok": False,
                                 "violations": [l for c in checks for l in _violations(c)]})
    return doc


# -- named generators -------------------------------------------------------------------------

def _group(name: str):
    table = {"Z2": z2, "Z3": z3, "S3": s3, "V4": klein4}
    if name not in table:
        raise DocError(f"unknown group {name!r} (choose from {', '.join(table)})")
    return table[name]()


def _rep_of(group, kind: str):
    reps = dict(group_reps(group))
    if kind not in reps or not reps[kind]:
        raise DocError(f"unknown representation {kind!r} (choose from trivial, sign, permutation)")
    return reps[kind]


def _int(params: dict, key: str, default: int) -> int:
    try:
        return int(params.get(key, default))
    except ValueError:
        raise DocError(f"parameter {key} must be an integer") from None


def gen_group_as_groupoid(p, rng) -> Workspace:
    return Workspace(groupoids={"G": group_as_groupoid(_group(p.get("group", "Z2")))})


def gen_pair(p, rng) -> Workspace:
    return Workspace(groupoids={"G": pair_groupoid([f"x{i}" for i in range(_int(p, "n", 2))])})


def gen_action(p, rng) -> Workspace:
    name = p.get("group", "Z2")
    grp = group_from_permutations([[1, 0, 2]]) if name == "Z2" else _group(name)
    return Workspace(groupoids={"G": action_on_letters(grp, ["a", "b", "c"])})


def gen_cech(p, rng) -> Workspace:
    spec = p.get("cover", "u:m,v:m,w:n")
    try:
        cover = dict(item.split(":") for item in spec.split(","))
    except ValueError:
        raise DocError("cover must look like u:m,v:m,w:n") from None
    return Workspace(groupoids={"G": cech_groupoid(cover)})


def gen_rep_of_group(p, rng) -> Workspace:
    grp = _group(p.get("group", "Z2"))
    G = group_as_groupoid(grp)
    rho = _rep_of(grp, p.get("rep", "permutation"))
    d = rho[grp.identity].shape[0]
    return Workspace(groupoids={"G": G}, reps={"R": honest_rep(G, {"*": d}, rho)})


def gen_type1(p, rng) -> Workspace:
    G = pair_groupoid([f"x{i}" for i in range(_int(p, "n", 2))])
    r = _int(p, "rank", 1)
    return Workspace(groupoids={"G": G}, reps={"R": type1_pullback(G, {x: r for x in G.objects})})


def gen_type0(p, rng) -> Workspace:
    grp = _group(p.get("group", "Z2"))
    G = group_as_groupoid(grp)
    rC, rE = _rep_of(grp, p.get("C", "sign")), _rep_of(grp, p.get("E", "permutation"))
    R = type0_rep(G, {"*": rC[grp.identity].shape[0]}, {"*": rE[grp.identity].shape[0]}, rC, rE)
    return Workspace(groupoids={"G": G}, reps={"R": R})


def gen_two_vector_space(p, rng) -> Workspace:
    small = [B for B in base_families() if len(B.G.objects) <= 3]
    R = random_rep(rng, rng.choice(small))
    K = build_complex(R)
    ws = Workspace(groupoids={"G": R.G}, reps={"R": R})
    ws.extra["two_vector_space"] = {
        "rep": "R", "dim_objects": K.deg1.dim, "dim_morphisms": K.deg0_dim + K.deg1.dim,
        "delta": matrix_to_doc(K.complex.d)}
    return ws


def gen_direct_sum(p, rng) -> Workspace:
    grp = _group(p.get("group", "Z2"))
    G = group_as_groupoid(grp)
    rho = _rep_of(grp, p.get("E", "sign"))
    R0 = honest_rep(G, {"*": rho[grp.identity].shape[0]}, rho)
    R1 = type1_pullback(G, {"*": _int(p, "rank", 1)})
    S = direct_sum(R0, R1)
    return Workspace(groupoids={"G": G}, reps={"R0": R0, "R1": R1, "S": S},
                     morphisms={"proj": projection_to_summand(S, R0, R1, 0)})


def gen_la_group_action(p, rng) -> Workspace:
    table = {"sl2": 0, "heis": 1, "aff": 3, "ab2": 4}
    key = p.get("lie", "sl2")
    if key not in table:
        raise DocError(f"unknown Lie algebra {key!r} (choose from {', '.join(table)})")
    _, L, th = involutions()[table[key]]
    points = p.get("points", "point")
    if points not in ("point", "free", "mixed"):
        raise DocError("points must be point, free or mixed")
    E = XMod(abelian(0), L, zeros(L.dim, 0), tuple(zeros(0, 0) for _ in range(L.dim)))
    V = z2_action_la(E, (zeros(0, 0), th), points)
    ws = Workspace(groupoids={"G": V.rep.G}, las={"V": V})
    if _int(p, "zigzag", 1):
        S = morita_span(rng, V)
        ws.groupoids["GW"] = S.W.rep.G
        ws.las.update({"W": S.W, "V2": S.V2})
        ws.morphisms.update({"Phi": S.phi, "Psi": S.psi})
        ws.chains["Z"] = ("Phi", "Psi")
    return ws


GENERATORS: dict[str, Callable[[dict, random.Random], Workspace]] = {
    "group_as_groupoid": gen_group_as_groupoid,
    "pair": gen_pair,
    "action": gen_action,
    "cech": gen_cech,
    "rep-of-group": gen_rep_of_group,
    "type1": gen_type1,
    "type0": gen_type0,
    "two-vector-space": gen_two_vector_space,
    "direct-sum": gen_direct_sum,
    "la-from-group-action-on-lie-algebra-bundle": gen_la_group_action,
}


def cmd_gen(args) -> dict:
    if args.example not in GENERATORS:
        raise DocError(f"unknown generator {args.example!r} (choose from {', '.join(GENERATORS)})")
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise DocError(f"parameter {item!r} must look like key=value")
        k, v = item.split("=", 1)
        params[k] = v
    return GENERATORS[args.example](params, random.Random(args.seed)).to_doc()


# -- entry point -----------------------------------------------------------------------------

COMMANDS = {
    "validate": cmd_validate,
    "sections": cmd_sections,
    "cohomology": cmd_cohomology,
    "xmod": cmd_xmod,
    "morita": cmd_morita,
    "zigzag": cmd_zigzag,
    "wfp": cmd_wfp,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vbgroupoids", description="Exact computations with split VB- and LA-groupoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--check-level", choices=("fast", "full"), default="fast")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--input", required=True, help="workspace document (JSON), or - for stdin")
        sp.add_argument("--name", action="append", help="object to act on (wfp takes it twice)")
    sp = sub.add_parser("gen", parents=[common])
    sp.add_argument("example", help="one of: " + ", ".join(GENERATORS))
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    return ap


def render(report: Any, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    lines = []
    for k, v in report.items():
        lines.append(f"{k}: {v if isinstance(v, (str, int, bool)) else json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None, stdin=None) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", ""
    try:
        if args.command == "gen":
            return 0, render(cmd_gen(args), args.format), ""
        if args.input == "-":
            text = (stdin or sys.stdin).read()
        else:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise DocError(f"cannot read {args.input}: {exc.strerror}") from None
        ws = parse_text(text)
        return 0, render(COMMANDS[args.command](ws, args), args.format), ""
    except DocError as exc:
        return 2, "", f"error: {exc}\n"
    except ValidationFailure as exc:
        return 1, render(exc.report, args.format), ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
