"""Command-line interface (``sclat``).

Every subcommand reads the JSON formats of :mod:`sclat.io`, validates its
inputs before writing anything, and prints either a short human summary or
(with ``--json``) one JSON document on stdout.  Exit status is 0 on
success, 2 when a bounded search could not settle the question, and 1 on
any error, in which case a JSON error object goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from . import io as sio
from .asc import (
    AscBase, apply_asc_signature, asc_embed_check, check_asc_axioms, default_cap, enumerate_asc_signatures, prime_asc,
)
from .axioms import check_axioms
from .canon import canonical_form, is_isomorphic
from .embedding import embed_check
from .enumeration import enumerate_bases
from .errors import ArgumentError, SclatError
from .linear import LinearSet, asc_of_set, represent, represent_asc
from .logic.search import DEFAULT_CAP, decide_exists, decide_theory, sat_qf, theory_equal
from .logic.semantics import eval_term, evaluate
from .logic.syntax import free_vars, parse_formula, parse_term, render
from .order import Element
from .scaled import ScaledBase, generated_substructure, prime_substructure
from .signatures import apply_signature, enumerate_signatures, tower_decompose
from .splitting import check_catenarity, splitting_extension

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


# ---- helpers ------------------------------------------------------------------------


def _scaled(b) -> ScaledBase:
    return b.base if isinstance(b, AscBase) else b


def _load(path: str):
    return sio.load_base(path)


def _element(base: ScaledBase, text: str) -> Element:
    """``p,q`` names the join of the points; ``0`` and ``1`` are the bounds."""
    text = text.strip()
    names = [t.strip() for t in text.split(",") if t.strip()]
    if text in ("0", "") and "0" not in base.poset.index:
        return base.zero
    if text == "1" and "1" not in base.poset.index:
        return base.one
    return base.element(*names)


def _assignments(base: ScaledBase, items: list[str]) -> dict[str, Element]:
    out = {}
    for item in items:
        if "=" not in item:
            raise ArgumentError(f"assignment {item!r} should look like x=p,q")
        var, _, value = item.partition("=")
        out[var.strip()] = _element(base, value)
    return out


def _k_cap(text: str | None) -> set[int] | None:
    if text is None:
        return None
    try:
        return {int(t) for t in text.split(",") if t.strip()}
    except ValueError:
        raise ArgumentError(f"--k-cap expects integers separated by commas, got {text!r}") from None


def _write(path: str | Path, doc: dict) -> str:
    sio.write_json(path, doc)
    return str(path)


# ---- subcommands ---------------------------------------------------------------------
# Each returns (document, exit status, human text).


def cmd_validate(args):
    b = _load(args.lattice)
    sb = _scaled(b)
    doc = {
        "valid": True,
        "points": sb.poset.n,
        "d": sb.d,
        "elements": len(sb.poset.all_masks),
        "asc": isinstance(b, AscBase),
    }
    text = f"valid: {sb.poset.n} irreducibles, {doc['elements']} elements, d = {sb.d}"
    return doc, EXIT_OK, text


def cmd_axioms(args):
    b = _load(args.lattice)
    rep = check_axioms(_scaled(b), mode=args.mode, samples=args.samples, seed=args.seed)
    doc = rep.to_json()
    lines = [f"{v.name:<6} {'pass' if v.passed else 'FAIL'}  ({v.checked} checked)" for v in rep.verdicts.values()]
    if args.catenarity:
        cat = check_catenarity(_scaled(b))
        doc["catenarity"] = cat.to_json()
        lines.append(f"catenary: {cat.ok}")
    if isinstance(b, AscBase):
        arep = check_asc_axioms(b)
        doc["asc"] = arep.to_json()
        lines += [f"{v.name:<8} {'pass' if v.passed else 'FAIL'}" for v in arep.verdicts.values()]
    lines.append(f"classification: {rep.classification}")
    ok = rep.ok and (not isinstance(b, AscBase) or doc["asc"]["ok"])
    return doc, EXIT_OK if ok else EXIT_UNKNOWN, "\n".join(lines)


def _dim_json(v) -> int | None:
    return None if v == float("-inf") else int(v)


def cmd_dim(args):
    sb = _scaled(_load(args.lattice))
    a = _element(sb, args.element)
    doc = {
        "element": a.key(),
        "dim": _dim_json(a.dim),
        "scdim": _dim_json(a.scdim),
        "components": {str(k): a.c(k).key() for k in range(sb.d + 1)},
    }
    text = "\n".join(
        [f"dim = {a.dim}", f"scdim = {a.scdim}"] + [f"C{k} = {a.c(k)!r}" for k in range(sb.d + 1)]
    )
    return doc, EXIT_OK, text


def cmd_eval(args):
    b = _load(args.lattice)
    sb = _scaled(b)
    env = _assignments(sb, args.assign)
    if args.term:
        value = eval_term(b, env, parse_term(args.term))
        return {"value": value.key()}, EXIT_OK, repr(value)
    f = parse_formula(args.formula)
    missing = free_vars(f) - set(env)
    if missing:
        raise ArgumentError(f"no value given for {', '.join(sorted(missing))}")
    value = evaluate(b, env, f)
    return {"formula": render(f), "value": value}, EXIT_OK, str(value).lower()


def cmd_signatures(args):
    b = _load(args.lattice)
    if isinstance(b, AscBase):
        cap = _k_cap(args.k_cap) or default_cap(b)
        sigs = enumerate_asc_signatures(b, cap)
    else:
        sigs = enumerate_signatures(b)
    docs = [s.to_json() for s in sigs]
    return {"count": len(docs), "signatures": docs}, EXIT_OK, "\n".join(repr(s) for s in sigs) or "(none)"


def cmd_extend(args):
    b = _load(args.lattice)
    sb = _scaled(b)
    doc = sio.read_json(args.signature)
    if isinstance(b, AscBase):
        ext = apply_asc_signature(b, sio.asc_signature_from_json(sb, doc))
        new, emb = ext.base, ext.embedding
    else:
        ext = apply_signature(sb, sio.signature_from_json(sb, doc))
        new, emb = ext.base, ext.embedding
    out = {"lattice": sio.base_to_json(new), "x1": ext.x1.key(), "x2": ext.x2.key()}
    if args.output:
        _write(args.output, sio.base_to_json(new))
    if args.embedding:
        _write(args.embedding, sio.embedding_to_json(emb))
    text = f"extended base: {_scaled(new)!r}\nx1 = {ext.x1!r}, x2 = {ext.x2!r}"
    return out, EXIT_OK, text


def cmd_tower(args):
    sb = _scaled(_load(args.lattice))
    gens = [_element(sb, g) for g in args.generators]
    steps = tower_decompose(generated_substructure(sb, gens))
    docs = [
        {"signature": s.signature.to_json(), "x1": s.x1.key(), "x2": s.x2.key(), "points": s.base.poset.n}
        for s in steps
    ]
    lines = [f"{i + 1}. {s.signature!r}  x1 = {s.x1!r}, x2 = {s.x2!r}" for i, s in enumerate(steps)]
    if args.trace:
        for s in steps:
            print(json.dumps({"trace": "tower-step", "lattice": sio.base_to_json(s.base)}), file=sys.stderr)
    return {"steps": docs}, EXIT_OK, "\n".join(lines) or "(already complete)"


def cmd_split(args):
    sb = _scaled(_load(args.lattice))
    a, b1, b2 = (_element(sb, t) for t in (args.a, args.b1, args.b2))
    res = splitting_extension(sb, a, b1, b2)
    doc = {
        "lattice": sio.base_to_json(res.base),
        "a1": res.a1.key(),
        "a2": res.a2.key(),
        "steps": [s.to_json() for s in res.steps],
    }
    if args.output:
        _write(args.output, sio.base_to_json(res.base))
    if args.embedding:
        _write(args.embedding, sio.embedding_to_json(res.embedding))
    if args.trace:
        for s in res.steps:
            print(json.dumps({"trace": "signature", "signature": s.to_json()}), file=sys.stderr)
    text = f"a1 = {res.a1!r}\na2 = {res.a2!r}\n{len(res.steps)} primitive extensions"
    return doc, EXIT_OK, text


def _emit_representation(args, base, rep, extra=None):
    doc = sio.map_to_json(base, rep.ambient, rep.points)
    if extra:
        doc.update(extra)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        _write(out / "X.sls.json", sio.sls_to_json(rep.X))
        _write(out / "phi.map.json", doc)
    if args.trace:
        for t in rep.trace:
            print(json.dumps({"trace": "represent", **t}, default=str), file=sys.stderr)
    lines = [f"ambient Q^{rep.ambient}"] + [f"{x} -> {rep.points[x].to_json()['varieties']}" for x in sorted(rep.points)]
    return doc, EXIT_OK, "\n".join(lines)


def cmd_represent(args):
    sb = _scaled(_load(args.lattice))
    return _emit_representation(args, sb, represent(sb))


def cmd_represent_asc(args):
    b = _load(args.lattice)
    if not isinstance(b, AscBase):
        b = AscBase(b, {})
    return _emit_representation(args, b, represent_asc(b, args.N), {"N": args.N})


def cmd_validate_embedding(args):
    folder = Path(args.folder)
    base, images = sio.map_from_json(sio.read_json(folder / "phi.map.json"))
    X = sio.sls_from_json(sio.read_json(folder / "X.sls.json"))
    sb = _scaled(base)
    ambient = {s.ambient for s in images.values()} | {X.ambient}
    if len(ambient) != 1:
        raise ArgumentError("images and X live in different ambient spaces")

    def phi(a: Element) -> LinearSet:
        out = LinearSet(X.ambient)
        for x in a.points:
            out = out | images[x]
        return out

    top_ok = phi(sb.one) == X
    if isinstance(base, AscBase):
        doc_map = sio.read_json(folder / "phi.map.json")
        verdict = asc_embed_check(base, phi, asc_of_set, doc_map.get("N"))
    else:
        verdict = embed_check(sb, phi, target_top=X)
    doc = verdict.to_json()
    doc["image_of_top_is_X"] = top_ok
    ok = verdict.is_embedding and top_ok
    text = "embedding verified" if ok else "NOT an embedding:\n" + "\n".join(doc.get("failures", []))
    return doc, EXIT_OK if ok else EXIT_UNKNOWN, text


def cmd_prime(args):
    b = _load(args.lattice)
    if isinstance(b, AscBase):
        _, pb = prime_asc(b)
    else:
        pb = prime_substructure(b).base
    if args.output:
        _write(args.output, sio.base_to_json(pb))
    return sio.base_to_json(pb), EXIT_OK, repr(pb)


def cmd_canon(args):
    b = _load(args.lattice)
    h = canonical_form(b).hex()
    return {"canonical_form": h}, EXIT_OK, h


def cmd_iso(args):
    b1, b2 = _load(args.first), _load(args.second)
    same = is_isomorphic(b1, b2)
    return {"isomorphic": same}, EXIT_OK, str(same).lower()


def cmd_enumerate(args):
    cap = _k_cap(args.k_cap)
    docs = [sio.base_to_json(b) for b in enumerate_bases(args.d, args.max_irr, args.asc, cap or ())]
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(docs):
            _write(out / f"base{i:05d}.json", doc)
    return {"count": len(docs), "bases": docs}, EXIT_OK, f"{len(docs)} bases"


def _outcome(out):
    doc = out.to_json()
    status = EXIT_OK if out.decided else EXIT_UNKNOWN
    text = f"{out.verdict}{'' if out.exhaustive else ' (bound-capped)'}"
    if out.witness is not None:
        assignment = ", ".join(f"{v} -> {a!r}" for v, a in out.witness.assignment.items())
        text += f"\nwitness: {_scaled(out.witness.base)!r}\nassignment: {assignment or '(none)'}"
    text += "".join(f"\nnote: {n}" for n in out.notes)
    return doc, status, text


def cmd_sat(args):
    f = parse_formula(args.formula)
    out = sat_qf(
        f, args.d, bound_override=args.max_irr, asc=args.asc, max_bases=args.max_bases, k_cap=_k_cap(args.k_cap)
    )
    return _outcome(out)


def _theory_d(args) -> int | None:
    if args.d is not None:
        return args.d
    if args.theory:
        t = args.theory.strip()
        if t.startswith("T") and t[1:].isdigit():
            return int(t[1:])
        if t != "Td":
            raise ArgumentError(f"unknown theory {args.theory!r}; use T<d> or --d")
    return None


def cmd_decide(args):
    f = parse_formula(args.formula)
    d = _theory_d(args)
    cap = args.max_irr if args.max_irr is not None else DEFAULT_CAP
    if args.prime:
        prime = _load(args.prime)
        if args.asc and not isinstance(prime, AscBase):
            raise ArgumentError("--asc needs a prime file with an 'asc' object")
        out = decide_exists(prime, f, d, cap=cap, max_bases=args.max_bases, k_cap=_k_cap(args.k_cap))
    else:
        if d is None:
            raise ArgumentError("give --d (or --theory T<d>) when no --prime is supplied")
        out = decide_theory(f, d, cap=cap, asc=args.asc, max_bases=args.max_bases, k_cap=_k_cap(args.k_cap))
    return _outcome(out)


def cmd_theory_eq(args):
    b1, b2 = _load(args.first), _load(args.second)
    same = theory_equal(b1, b2, asc_mode=args.asc)
    return {"equal": same}, EXIT_OK, str(same).lower()


# ---- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document on stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for every sampled check")
    common.add_argument("--trace", action="store_true", help="dump intermediate steps to stderr")

    parser = argparse.ArgumentParser(prog="sclat", description="Finite scaled lattices: checks, constructions and decisions.")
    parser.add_argument("--version", action="version", version=f"sclat {__version__} (format {sio.FORMAT})")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "parse and validate a lattice file")
    p.add_argument("lattice")

    p = add("axioms", cmd_axioms, "check the axioms on a lattice file")
    p.add_argument("lattice")
    p.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    p.add_argument("--samples", type=int, default=96)
    p.add_argument("--catenarity", action="store_true", help="also test catenarity")

    p = add("dim", cmd_dim, "dimension data of an element")
    p.add_argument("lattice")
    p.add_argument("element", help="comma-separated point names, or 0 / 1")

    p = add("eval", cmd_eval, "evaluate a formula or term")
    p.add_argument("lattice")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--term")
    p.add_argument("--assign", action="append", default=[], metavar="x=p,q")

    p = add("signatures", cmd_signatures, "list the signatures of a base")
    p.add_argument("lattice")
    p.add_argument("--k-cap", help="ASC count values, e.g. 0,1,2")

    p = add("extend", cmd_extend, "apply a signature")
    p.add_argument("lattice")
    p.add_argument("signature", help="signature file")
    p.add_argument("-o", "--output", help="write the extended lattice here")
    p.add_argument("--embedding", help="write the inclusion map here")

    p = add("tower", cmd_tower, "primitive tower from a generated sublattice up to the base")
    p.add_argument("lattice")
    p.add_argument("--generators", action="append", default=[], metavar="p,q")

    p = add("split", cmd_split, "splitting extension for a, b1, b2")
    p.add_argument("lattice")
    p.add_argument("--a", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--embedding")

    p = add("represent", cmd_represent, "embed into special linear sets")
    p.add_argument("lattice")
    p.add_argument("-o", "--output", help="folder for X.sls.json and phi.map.json")

    p = add("represent-asc", cmd_represent_asc, "ASC representation with finite point sets")
    p.add_argument("lattice")
    p.add_argument("--N", type=int, default=1, help="points for each atom of count 0")
    p.add_argument("-o", "--output")

    p = add("validate-embedding", cmd_validate_embedding, "re-check a representation folder")
    p.add_argument("folder")

    p = add("prime", cmd_prime, "prime substructure")
    p.add_argument("lattice")
    p.add_argument("-o", "--output")

    p = add("canon", cmd_canon, "canonical form as hex")
    p.add_argument("lattice")

    p = add("iso", cmd_iso, "isomorphism test")
    p.add_argument("first")
    p.add_argument("second")

    p = add("enumerate", cmd_enumerate, "all bases up to isomorphism")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-irr", type=int, required=True)
    p.add_argument("--asc", action="store_true")
    p.add_argument("--k-cap")
    p.add_argument("-o", "--output", help="folder for one file per base")

    p = add("sat", cmd_sat, "satisfiability of a quantifier-free formula")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--max-irr", type=int, help=f"size bound (default min(mu, {DEFAULT_CAP}))")
    p.add_argument("--max-bases", type=int, help="stop after this many candidate bases")
    p.add_argument("--asc", action="store_true")
    p.add_argument("--k-cap", help="atom counts to try, e.g. 0,1,2 (raises the default ceiling)")

    p = add("decide", cmd_decide, "decide a sentence over a prime model")
    p.add_argument("--theory", help="T<d>, e.g. T1")
    p.add_argument("--d", type=int)
    p.add_argument("--formula", required=True)
    p.add_argument("--prime", help="lattice file generated by the empty set")
    p.add_argument("--asc", action="store_true")
    p.add_argument("--max-irr", type=int)
    p.add_argument("--max-bases", type=int)
    p.add_argument("--k-cap", help="atom counts to try, e.g. 0,1,2 (raises the default ceiling)")

    p = add("theory-eq", cmd_theory_eq, "equality of the completions fixed by two bases")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--asc", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors, which here means "undecided"
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        doc, status, text = args.fn(args)
    except SclatError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=sys.stderr)
        return EXIT_ERROR
    except AssertionError as exc:
        print(json.dumps({"error": "internal-invariant", "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(sio.dumps(doc), end="")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
