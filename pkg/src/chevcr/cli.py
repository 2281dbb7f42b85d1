"""Command-line front end.

    chevcr roots --type E7 --format csv
    chevcr weyl perm --word "e,b,c,a,b" --restrict 1..42
    chevcr weyl orbits --words q1,q2
    chevcr centralizer --group E7 --words q1,q2 --radical 1..42
    chevcr separability --words q1,q2
    chevcr gitcheck noncr --a 1 --field gf4
    chevcr gitcheck infinite-classes
    chevcr gitcheck climit --element "q1 * e40(a^2) * e41(a^2)"
    chevcr modrep decompose --group D14-perm7 --field gf8
    chevcr verify-paper

Colour in text output is enabled by CHEVCR_COLOR=1 and suppressed by NO_COLOR.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__, e7
from .centralizer import centralizer_description, separability_report
from .chevalley import MixedElement, UnipotentElement
from .coeffring import field_by_name, parse_poly, specialize
from .crgit import (brute_force_conjugacy, c_lambda, infinite_classes_obstruction,
                    ru_conjugacy_decision, specialize_tuple)
from .modrep import decompose, permutation_module
from .parabolic import Cocharacter, ParabolicDecomposition
from .rootsys import (E7_SIGMA_BANDS, LabelMismatch, datum_by_type, generate_root_system,
                      load_root_table, validate_labeling)
from .verify import verify_paper
from .weyl import WeylWord, group_closure, orbits, word_to_permutation

PRESETS = {"q1": e7.Q1, "q2": e7.Q2}


def parse_labels(text: str) -> List[int]:
    """``"1..42"`` or ``"36,38,40..42"``"""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return sorted(set(out))


def parse_word(text: str) -> WeylWord:
    text = text.strip()
    if text in PRESETS:
        return PRESETS[text]
    return WeylWord.parse(text)


def parse_words(text: str) -> List[WeylWord]:
    if any(t.strip() not in PRESETS for t in text.split(",")):
        # a single comma-separated word rather than a list of presets
        return [parse_word(text)]
    return [PRESETS[t.strip()] for t in text.split(",")]


_FACTOR = re.compile(r"e(\d+)\((.*)\)$")


def _split_top(text: str) -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_element(text: str, ctx: ParabolicDecomposition) -> MixedElement:
    """A product like ``q1 * e40(a^2) * e41(1)``; Weyl factors are presets or
    bracketed words such as ``[e b c a b]``."""
    result = MixedElement(WeylWord(), context=ctx)
    for piece in _split_top(text):
        m = _FACTOR.match(piece)
        if m:
            x = MixedElement(WeylWord(), UnipotentElement(ctx, {int(m.group(1)): parse_poly(m.group(2))}))
        else:
            word = piece.strip("[]")
            x = MixedElement(parse_word(word.replace(" ", ",") if piece.startswith("[") else word), context=ctx)
        result = result * x
    return result


def _colour(status: str) -> str:
    if os.environ.get("NO_COLOR") or os.environ.get("CHEVCR_COLOR") != "1":
        return status
    code = "32" if status == "PASS" else "31"
    return f"\033[{code}m{status}\033[0m"


def _emit(obj, fmt: str, text: Optional[str] = None) -> None:
    if fmt == "json" or text is None:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text)


# --------------------------------------------------------------------------
# commands

def cmd_roots(args) -> int:
    if args.type.upper() == "E7":
        system = e7.system()
    else:
        system = generate_root_system(datum_by_type(args.type))
    names = system.datum.simple_root_names
    rows = [(x, system.root(x).coords) for x in system.positive_labels]
    if args.format == "json":
        _emit({"type": args.type, "rank": system.rank, "simple_roots": list(names),
               "roots": [{"label": x, "coords": list(c)} for x, c in rows]}, "json")
    elif args.format == "csv":
        order = ["sigma", "alpha", "beta", "gamma", "delta", "epsilon", "eta"] if args.type.upper() == "E7" else list(names)
        idx = [system.datum.index(n) for n in order]
        print("label," + ",".join(order))
        for x, c in rows:
            print(f"{x}," + ",".join(str(c[i]) for i in idx))
    else:
        for x, c in rows:
            print(f"{x:3d}  {' '.join(str(v) for v in c)}")
    if args.validate:
        try:
            rep = validate_labeling(generate_root_system(system.datum),
                                    load_root_table(args.table), bands=E7_SIGMA_BANDS)
            print(str(rep), file=sys.stderr)
        except LabelMismatch as exc:
            print(f"INVALID: {exc}", file=sys.stderr)
            return 1
    return 0


def cmd_weyl(args) -> int:
    S = e7.system()
    if args.action == "perm":
        p = word_to_permutation(parse_word(args.word), S)
        domain = parse_labels(args.restrict) if args.restrict else S.positive_labels
        cyc = p.cycle_string(domain)
        _emit({"word": str(parse_word(args.word)), "cycles": cyc, "order": p.order()}, args.format, cyc or "()")
        return 0
    words = parse_words(args.words)
    perms = [word_to_permutation(w, S) for w in words]
    domain = parse_labels(args.domain)
    part = orbits(perms, domain)
    grp = group_closure({f"w{i + 1}": p for i, p in enumerate(perms)})
    text = "\n".join(f"O_{o[0]}: {list(o)}" for o in part.orbits) + f"\ngroup order: {grp.order}"
    _emit({"orbits": [list(o) for o in part.orbits], "sizes": part.sizes(), "group_order": grp.order},
          args.format, text)
    return 0


def _desc_for(args):
    ctx = e7.context()
    radical = parse_labels(args.radical)
    if radical != ctx.radical_labels:
        raise SystemExit(f"only the radical {ctx.radical_labels[0]}..{ctx.radical_labels[-1]} of P_lambda is supported")
    return centralizer_description(parse_words(args.words), ctx), ctx


def cmd_centralizer(args) -> int:
    desc, _ = _desc_for(args)
    forms = desc.coefficient_forms
    obj = {"free_params": desc.free_params,
           "derived_relations": desc.derived_relations,
           "forms": {str(k): str(v) for k, v in forms.items()},
           "orbits": [list(o) for o in desc.orbits.orbits]}
    text = "free parameters: " + ", ".join(desc.free_params) + "\n"
    text += "".join(f"  {r}\n" for r in desc.derived_relations)
    text += "\n".join(f"e{k}: {v}" for k, v in forms.items())
    _emit(obj, "json" if args.report == "json" else args.format, text)
    return 0


def cmd_separability(args) -> int:
    desc, ctx = _desc_for(args)
    rep = separability_report(parse_words(args.words), ctx, desc)
    obj = rep.to_json()
    text = (f"dim Lie C = {rep.dim_lie_C}, dim c = {rep.dim_inf_c}: "
            f"{'separable' if rep.separable else 'NOT separable'}")
    if rep.witness:
        text += f"\nwitness: {obj['witness_text']}"
    _emit(obj, args.format, text)
    return 0


def cmd_gitcheck(args) -> int:
    ctx = e7.context()
    desc = centralizer_description([e7.Q1, e7.Q2], ctx)
    if args.action == "noncr":
        F = field_by_name(args.field)
        a_val = F(int(args.a, 0))
        t0 = time.perf_counter()
        sym_a = parse_poly("a")
        hs = e7.conjugated_generators(sym_a, ctx)
        ks = e7.k_generators(ctx)
        verdict = ru_conjugacy_decision(hs, ks, e7.WEIGHT_TWO, desc, source_offset=e7.v(sym_a, ctx),
                                        orbit_names=e7.orbit_names())
        symbolic_here = verdict.holds_at({"a": a_val}, F)
        brute = brute_force_conjugacy(specialize_tuple(hs, {"a": a_val}, F), ks, e7.WEIGHT_TWO, F)
        obj = {"a": str(a_val), "field": f"GF({F.order})",
               "conjugate": brute.conjugate,
               "symbolic": verdict.to_json(), "symbolic_at_a": symbolic_here,
               "search_space": brute.search_space}
        if brute.conjugator is not None:
            obj["witness"] = brute.conjugator.to_json()
        obj["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 1)
        text = f"a = {a_val} over GF({F.order}): {'conjugate' if brute.conjugate else 'NOT conjugate'}"
        if not verdict.conjugate:
            text += f"\ncertificate: {verdict.certificate.get('violated_relation')} fails, value {verdict.certificate.get('relation_value')}"
        _emit(obj, args.format, text)
        return 0 if brute.conjugate == symbolic_here else 1
    if args.action == "infinite-classes":
        res = infinite_classes_obstruction(desc, e7.WEIGHT_TWO, list(e7.CURVES[args.curve]))
        _emit(res.to_json(), args.format, f"forced relation: {res.relation} = 0")
        return 0 if res.routes_agree else 1
    x = parse_element(args.element, ctx)
    y = c_lambda(x, ctx)
    _emit({"element": str(x), "c_lambda": str(y)}, args.format, str(y))
    return 0


def cmd_modrep(args) -> int:
    if args.group != "D14-perm7":
        raise SystemExit("only the preset D14-perm7 is available")
    S = e7.system()
    perms = {n: word_to_permutation(w, S).restrict(range(1, 8)) for n, w in e7.WORDS.items()}
    F = field_by_name(args.field)
    dec = decompose(permutation_module(perms, F), seed=args.seed)
    obj = dec.to_json()
    text = (f"GF({F.order}): dims {dec.dims}, irreducible {[s.irreducible for s in dec.summands]}, "
            f"completely reducible: {dec.all_irreducible}")
    _emit(obj, args.format, text)
    return 0


def cmd_verify(args) -> int:
    report = verify_paper(args.field, Path(args.table) if args.table else None)
    if args.format == "json":
        print(json.dumps(report.to_json(timings=args.timings), indent=2))
    else:
        for c in report.checks:
            print(f"[{_colour(c.status)}] {c.id}: {c.description}")
        print(f"{report.passed} passed, {report.failed} failed")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chevcr", description="Characteristic-2 Chevalley group computations")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=["json", "text"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="list positive roots")
    r.add_argument("--type", default="E7")
    r.add_argument("--format", choices=["json", "csv", "text"], default="text")
    r.add_argument("--validate", action="store_true", help="validate the label table (E7)")
    r.add_argument("--table", default=None)
    r.set_defaults(func=cmd_roots)

    w = sub.add_parser("weyl", help="Weyl word permutations and orbits")
    wsub = w.add_subparsers(dest="action", required=True)
    wp = wsub.add_parser("perm")
    wp.add_argument("--word", required=True)
    wp.add_argument("--restrict", default=None)
    wo = wsub.add_parser("orbits")
    wo.add_argument("--words", default="q1,q2")
    wo.add_argument("--domain", default="1..42")
    for sp in (wp, wo):
        sp.add_argument("--format", choices=["json", "text"], default="text")
    w.set_defaults(func=cmd_weyl)

    for name, fn in (("centralizer", cmd_centralizer), ("separability", cmd_separability)):
        c = sub.add_parser(name)
        c.add_argument("--group", default="E7", choices=["E7"])
        c.add_argument("--words", default="q1,q2")
        c.add_argument("--radical", default="1..42")
        c.add_argument("--report", choices=["json", "text"], default=None)
        c.add_argument("--format", choices=["json", "text"], default="text")
        c.set_defaults(func=fn)

    g = sub.add_parser("gitcheck", help="conjugacy obstructions in P_lambda")
    gsub = g.add_subparsers(dest="action", required=True)
    gn = gsub.add_parser("noncr")
    gn.add_argument("--a", default="1", help="integer code of a in the field")
    gn.add_argument("--field", default="gf2")
    gi = gsub.add_parser("infinite-classes")
    gi.add_argument("--curve", type=int, default=1, choices=sorted(e7.CURVES))
    gc = gsub.add_parser("climit")
    gc.add_argument("--element", required=True)
    for sp in (gn, gi, gc):
        sp.add_argument("--format", choices=["json", "text"], default="json")
    g.set_defaults(func=cmd_gitcheck)

    m = sub.add_parser("modrep")
    msub = m.add_subparsers(dest="action", required=True)
    md = msub.add_parser("decompose")
    md.add_argument("--group", default="D14-perm7")
    md.add_argument("--field", default="gf8")
    md.add_argument("--seed", type=int, default=0)
    md.add_argument("--format", choices=["json", "text"], default="json")
    m.set_defaults(func=cmd_modrep)

    v = sub.add_parser("verify-paper", help="run every check of the E7 example")
    v.add_argument("--field", default="gf4", help="field for the exhaustive conjugacy search")
    v.add_argument("--table", default=None, help="alternative root table (CSV)")
    v.add_argument("--timings", action="store_true", help="append per-check timings (JSON only)")
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
