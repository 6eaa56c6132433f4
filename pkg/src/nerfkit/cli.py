"""Command-line front end.

Exit codes: 0 pass / success, 1 verdict false, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .cat_nerve import CategoryError, FinCategory, is_one_nerve, nerve
from .equivalence import is_outer_k_equivalence
from .homotopy import HomotopyError, check_abelian, homotopy_group, resolve_base
from .nerf_validator import is_n_groupoid, is_n_nerf, is_strict_nerf
from .presheaf import FinPresheaf, PresheafError, TooLarge, fmt_index, validate
from .strict_ncat import StrictError, StrictNCategory, multi_nerve, validate_strict
from .truncation import TruncationError, pi0_labels, truncation_report, truncation_tower
from .weak2 import (Weak2Category, Weak2Error, double_nerve, extract_weak2, strictify,
                    validate_weak2, weak2_from_strict)

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path, *kinds):
    obj = io.load(path)
    ok = {"presheaf": FinPresheaf, "category": FinCategory, "strict": StrictNCategory,
          "weak2": Weak2Category}
    if kinds and not any(isinstance(obj, ok[k]) for k in kinds if k in ok):
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document")
    return obj


def _emit(args, text: str, doc: dict | None = None, structure=None) -> None:
    print(text)
    if args.out:
        if structure is not None:
            io.save(structure, args.out)
        elif doc is not None:
            Path(args.out).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    elif args.json and doc is not None:
        print(json.dumps(doc, sort_keys=True))


def _report(report: str, **fields) -> dict:
    return {**fields, "kind": "report", "report": report}


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    obj = _load(args.file)
    how = args.as_
    if how == "category":
        if not isinstance(obj, FinCategory):
            raise InputError("--as category needs a category document")
        rep = obj.validate()
        return _verdict(args, "category", rep.ok, rep.to_json())
    if how == "strict":
        if not isinstance(obj, StrictNCategory):
            raise InputError("--as strict needs a strict document")
        rep = validate_strict(obj)
        return _verdict(args, "strict", rep.ok, rep.to_json())
    if how == "weak2":
        if isinstance(obj, StrictNCategory):
            obj = weak2_from_strict(obj)
        if not isinstance(obj, Weak2Category):
            raise InputError("--as weak2 needs a weak2 (or strict 2) document")
        rep = validate_weak2(obj)
        return _verdict(args, "weak2", rep.ok, rep.to_json())
    if not isinstance(obj, FinPresheaf):
        raise InputError(f"--as {how} needs a presheaf document")
    if how == "presheaf":
        rep = validate(obj)
        return _verdict(args, "presheaf", rep.ok, rep.to_json())
    rep = validate(obj)
    if not rep.ok:
        return _verdict(args, "presheaf", False, rep.to_json())
    if how == "one-nerve":
        if obj.n != 1:
            raise InputError("--as one-nerve needs an arity-1 presheaf")
        r = is_one_nerve(obj)
        return _verdict(args, "one-nerve", r.ok, r.to_json())
    if how in ("n-nerf", "n-nerve"):
        r = is_n_nerf(obj)
        return _verdict(args, "n-nerf", r.ok, r.to_json())
    if how == "strict-nerf":
        r = is_strict_nerf(obj)
        return _verdict(args, "strict-nerf", r.ok, r.to_json())
    if how == "groupoid":
        r = is_n_groupoid(obj)
        return _verdict(args, "n-groupoid", r.ok, r.to_json())
    if how == "truncatable":
        k = obj.n if args.times is None else args.times
        r = truncation_report(obj, k)
        return _verdict(args, f"{k}-truncatable", r.ok, r.to_json())
    raise InputError(f"unknown --as {how}")


def _verdict(args, what: str, ok: bool, detail: dict) -> int:
    text = f"{what}: {'PASS' if ok else 'FAIL'}"
    if not ok:
        text += "\n" + json.dumps(detail, sort_keys=True)
    _emit(args, text, _report("validate", check=what, ok=ok, detail=detail))
    return EXIT_OK if ok else EXIT_FALSE


def cmd_nerve(args) -> int:
    C = _load(args.file, "category")
    phi = nerve(C, args.bound)
    _emit(args, _sizes_text(phi), structure=phi)
    return EXIT_OK


def cmd_multinerve(args) -> int:
    C = _load(args.file, "strict", "category")
    if isinstance(C, FinCategory):
        from .strict_ncat import strict_from_category
        C = strict_from_category(C)
    phi = multi_nerve(C, args.bound)
    _emit(args, _sizes_text(phi), structure=phi)
    return EXIT_OK


def cmd_doublenerve(args) -> int:
    C = _load(args.file, "weak2", "strict")
    if isinstance(C, StrictNCategory):
        C = weak2_from_strict(C)
    phi = double_nerve(C, args.bound)
    _emit(args, _sizes_text(phi), structure=phi)
    return EXIT_OK


def cmd_extract2(args) -> int:
    phi = _load(args.file, "presheaf")
    E = extract_weak2(phi, order=args.order)
    rep = validate_weak2(E)
    text = (f"weak 2-category: {E.n0} objects, {E.n1} 1-cells, {E.n2} 2-cells; "
            f"axioms {'PASS' if rep.ok else 'FAIL ' + str(rep.axiom)}")
    _emit(args, text, structure=E)
    return EXIT_OK if rep.ok else EXIT_FALSE


def cmd_strictify(args) -> int:
    phi = _load(args.file, "presheaf")
    st = strictify(phi, order=args.order)
    strict = is_strict_nerf(st.S)
    a = is_outer_k_equivalence(st.alpha, 2)
    b = is_outer_k_equivalence(st.beta, 2)
    doc = _report("strictify", S_strict_nerf=strict.ok, alpha=a.to_json(), beta=b.to_json(),
                  alpha_bijective=st.alpha.is_levelwise_bijective(),
                  beta_bijective=st.beta.is_levelwise_bijective())
    text = "\n".join([f"S strict nerf: {strict.ok}",
                      f"alpha outer 2-equivalence: {a.verdict}",
                      f"beta outer 2-equivalence: {b.verdict}"])
    _emit(args, text, doc)
    return EXIT_OK if (strict.ok and a.verdict and b.verdict) else EXIT_FALSE


def cmd_truncate(args) -> int:
    phi = _load(args.file, "presheaf")
    k = 1 if args.times is None else args.times
    tw = truncation_tower(phi, k)
    out = tw.levels[-1]
    _emit(args, _sizes_text(out), structure=out)
    return EXIT_OK


def cmd_pi0(args) -> int:
    phi = _load(args.file, "presheaf")
    labels = pi0_labels(phi)
    _emit(args, f"pi_0: {len(labels)} classes: {' '.join(labels)}",
          _report("pi0", size=len(labels), classes=labels))
    return EXIT_OK


def cmd_pi(args) -> int:
    phi = _load(args.file, "presheaf")
    if args.i is None:
        raise InputError("pi needs --i")
    base = args.base if args.base is not None else "0"
    try:
        cell, level = resolve_base(phi, args.i, base)
    except HomotopyError as exc:
        raise InputError(str(exc)) from None
    G = homotopy_group(phi, args.i, cell, level)
    ok = G.check_group()
    doc = _report("pi", group=G.to_json(), group_axioms=ok, abelian=check_abelian(G, args.i))
    text = (f"pi_{args.i}(base {base}): order {G.order}, "
            f"{'abelian' if G.is_abelian() else 'non-abelian'}; elements {' '.join(G.labels)}")
    _emit(args, text, doc)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_equiv(args) -> int:
    A = _load(args.source, "presheaf")
    B = _load(args.target, "presheaf")
    raw = io.load(args.morphism)
    if not isinstance(raw, dict) or raw.get("kind") != "morphism":
        raise InputError(f"{args.morphism}: expected a morphism document")
    F = io.morphism_from_json(raw, A, B)
    k = F.n if args.k is None else args.k
    rep = is_outer_k_equivalence(F, k, audit=(k == F.n))
    lines = [f"outer {k}-equivalence: {rep.verdict} ({rep.failures} failures)"]
    for w in rep.witnesses[:8]:
        lines.append("  witness " + json.dumps(w, sort_keys=True))
    _emit(args, "\n".join(lines), _report("equiv", equivalence=rep.to_json()))
    return EXIT_OK if rep.verdict else EXIT_FALSE


def cmd_report(args) -> int:
    phi = _load(args.file, "presheaf")
    doc = _report("summary", name=phi.name, n=phi.n, region=phi.region.to_json(),
                  sizes={fmt_index(M): phi.sizes[M] for M in phi.region.indices()})
    doc["valid"] = validate(phi).ok
    if doc["valid"] and phi.n >= 1:
        nn = is_n_nerf(phi)
        doc["n_nerf"] = nn.ok
        doc["strict_nerf"] = is_strict_nerf(phi).ok
        if nn.ok:
            doc["pi0"] = pi0_labels(phi)
            doc["n_groupoid"] = is_n_groupoid(phi).ok
    text = "\n".join(f"{k}: {v}" for k, v in doc.items() if k not in ("kind", "report", "sizes"))
    _emit(args, _sizes_text(phi) + "\n" + text, doc)
    return EXIT_OK


def cmd_fixture(args) -> int:
    from .fixtures import FILE_FIXTURES, file_fixture

    names = sorted(FILE_FIXTURES) if args.name == "all" else [args.name]
    if len(names) > 1 and not args.out:
        raise InputError("fixture all needs --out DIR")
    for name in names:
        try:
            obj = file_fixture(name, args.bound)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        parts = ([(f"{name}_source", obj[0]), (f"{name}_target", obj[1]),
                  (f"{name}_morphism", obj[2])] if isinstance(obj, tuple) else [(name, obj)])
        for part, item in parts:
            if not args.out:
                sys.stdout.write(io.dumps(item))
                continue
            out = Path(args.out)
            if len(parts) > 1 or len(names) > 1 or out.is_dir():
                out.mkdir(parents=True, exist_ok=True)
                out = out / f"{part}.json"
            io.save(item, out)
            print(f"wrote {part} to {out}")
    return EXIT_OK


def _sizes_text(phi: FinPresheaf) -> str:
    parts = [f"({fmt_index(M)}):{phi.sizes[M]}" for M in phi.region.indices()]
    return f"presheaf {phi.name or ''} arity {phi.n}, region {phi.region.to_json()}: " + \
        " ".join(parts)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nerfkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="degree bound (default: NERVE_BOUND or 4)")
    common.add_argument("--out", default=None, help="write the result document here")
    common.add_argument("--json", action="store_true", help="also print the JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a structure file")
    s.add_argument("file")
    s.add_argument("--as", dest="as_", required=True,
                   choices=["presheaf", "one-nerve", "n-nerf", "n-nerve", "strict-nerf", "groupoid",
                            "truncatable", "category", "strict", "weak2"])
    s.add_argument("--times", type=int, default=None)
    s.set_defaults(func=cmd_validate)

    for name, fn, hl in (("nerve", cmd_nerve, "nerve of a category"),
                         ("multinerve", cmd_multinerve, "multi-nerve of a strict n-category"),
                         ("doublenerve", cmd_doublenerve, "double nerve of a weak 2-category"),
                         ("pi0", cmd_pi0, "pi_0 of an n-nerf"),
                         ("report", cmd_report, "summary of a presheaf")):
        s = sub.add_parser(name, parents=[common], help=hl)
        s.add_argument("file")
        s.set_defaults(func=fn)

    for name, fn, hl in (("extract2", cmd_extract2, "weak 2-category of a 2-nerf"),
                         ("strictify", cmd_strictify, "strict 2-nerf and comparison maps")):
        s = sub.add_parser(name, parents=[common], help=hl)
        s.add_argument("file")
        s.add_argument("--order", choices=["min", "max"], default="min")
        s.set_defaults(func=fn)

    s = sub.add_parser("truncate", parents=[common], help="iterated truncation")
    s.add_argument("file")
    s.add_argument("--times", type=int, default=None)
    s.set_defaults(func=cmd_truncate)

    s = sub.add_parser("pi", parents=[common], help="homotopy group")
    s.add_argument("file")
    s.add_argument("--i", type=int, default=None)
    s.add_argument("--base", default=None)
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("equiv", parents=[common], help="outer k-equivalence of a morphism")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("morphism")
    s.add_argument("--k", type=int, default=None)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("fixture", parents=[common], help="write a shipped fixture")
    s.add_argument("name", help="fixture name, or 'all' (with --out DIR)")
    s.set_defaults(func=cmd_fixture)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_INPUT
    try:
        return args.func(args)
    except (io.FormatError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CategoryError, StrictError, Weak2Error, TruncationError, HomotopyError,
            PresheafError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
