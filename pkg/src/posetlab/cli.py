"""posetlab command line.

Exit codes: 0 pass (or analysis done), 1 fail with witness, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import omega as om
from . import structure as st
from .certificate import FAIL
from .errors import ContainmentViolated, PosetLabError
from .generators import random_order
from .io import InputError, digest, format_report, load_json, poset_from_doc, to_dot
from .ordinal import add, compare, limit_part, natural_sum, parse
from .poset import bits, linear_extensions
from .recognition import (is_interval_order, is_semiorder, is_threshold, pred_quasiorder,
                          psi_representation, succ_quasiorder)
from .symdyn import (PRESETS, WordSystem, factor_poset, factors, generate,
                     minimal_type_window_check, recurrence_profile)

ANALYZE_CHECKS = ["semiorder", "interval", "threshold", "levels", "extensions", "autonomous",
                  "antichain-rank", "spectrum", "konig", "uniformity", "h-minimal", "psi"]
OMEGA_CHECKS = ["strict-order", "minimal-type", "jonsson", "purity", "sandwich", "uniformity",
                "spectrum"]
WORD_CHECKS = ["generate", "factors", "recurrence", "minimal-type"]


def _cert_items(cert):
    items = [("route", cert.route)]
    if cert.window is not None:
        items.append(("window", cert.window))
    items.append(("witness", cert.witness))
    if cert.notes:
        items.append(("notes", list(cert.notes)))
    return items, cert.verdict_text


# -- analyze ----------------------------------------------------------------------
def _analyze(P, args):
    c = args.check
    if c == "interval":
        return _cert_items(is_interval_order(P))
    if c == "semiorder":
        return _cert_items(is_semiorder(P))
    if c == "threshold":
        ok = is_threshold(P)
        pred, succ = pred_quasiorder(P), succ_quasiorder(P)
        diff = sorted(set(pred.pairs()) ^ set(succ.pairs()))
        return [("pred_total", pred.is_total()), ("succ_total", succ.is_total()),
                ("pred_succ_difference", diff[:20])], "pass" if ok else "fail"
    if c == "levels":
        prof = st.levels(P)
        return [("heights", prof.heights), ("levels", prof.levels), ("height", prof.height)], "done"
    if c == "extensions":
        ext = linear_extensions(P, args.cap)
        first = []
        for i, perm in enumerate(ext):
            if i >= args.limit:
                break
            first.append(perm)
        return [("count", ext.count), ("truncated", ext.truncated), ("first", first)], "done"
    if c == "autonomous":
        mods = st.autonomous_subsets(P, proper_only=True, mode=args.mode)
        return [("mode", args.mode), ("proper_modules", [sorted(m) for m in mods])], "done"
    if c == "antichain-rank":
        return [("rank", st.antichain_rank(P))], "done"
    if c == "spectrum":
        rep = st.spectrum_finite(P, args.cap)
        return [("min_type", str(rep.min_type)), ("extension_count", rep.extension_count),
                ("truncated", rep.truncated), ("single_type", rep.single_type)], "done"
    if c == "konig":
        ch = st.konig_chain(P)
        return [("chain", ch), ("length", len(ch))], "done"
    if c == "uniformity":
        return _uniformity_items(P, args)
    if c == "h-minimal":
        return _cert_items(st.h_minimal_check(P, _boundary(P, args)))
    if c == "psi":
        rep = psi_representation(P)
        ok = rep.reconstruct() == P and rep.check_conditions()
        return [("K", rep.K), ("h", rep.h), ("psi", [list(bits(s)) for s in rep.psi]),
                ("order_reversing", rep.order_reversing)], "pass" if ok else "fail"
    raise InputError(f"unknown check {c}")


def _boundary(P, args):
    if args.boundary is not None:
        return args.boundary
    return max(1, st.levels(P).height // 2)


def _uniformity_items(P, args):
    b = _boundary(P, args)
    w = st.uniformity(P, b)
    return [("boundary", b), ("kind", w.kind), ("phi", list(w.phi)), ("weak_phi", list(w.weak_phi))], \
        "fail" if w.kind == "none" else "pass"


# -- presentations ------------------------------------------------------------------
def _tail(text):
    kind, _, rest = text.partition(":")
    try:
        if kind == "const":
            return ("const", int(rest))
        if kind == "affine":
            s, t = rest.split(",")
            return ("affine", int(s), int(t))
    except ValueError:
        pass
    raise InputError(f"tail must be const:c or affine:s,t, got {text!r}")


def _pairs(text):
    out = []
    for chunk in filter(None, (text or "").split(";")):
        a, b = chunk.split(",")
        out.append((int(a), int(b)))
    return out


def _presentation_check(pres, args):
    c = args.check
    N = args.window
    if c == "spectrum":
        if not isinstance(pres, st.LayeredPresentation):
            raise InputError("spectrum needs a Layered document")
        return [("min_type", str(st.min_extension_type(pres)))], "done"
    if isinstance(pres, st.LayeredPresentation):
        raise InputError(f"{c} needs a poset presentation, not a Layered document")
    if c == "strict-order":
        return _cert_items(om.strict_order_check(pres, N))
    if c == "minimal-type":
        return _cert_items(om.minimal_type_certify(pres, N))
    if c == "jonsson":
        return _cert_items(om.jonsson_countable_check(pres, N))
    if c == "purity":
        return _cert_items(om.purity_certify(pres, N))
    if c == "sandwich":
        try:
            return _cert_items(om.sandwich_check(pres, N))
        except ContainmentViolated as e:
            return [("witness", {"pair": list(e.pair), "reason": str(e)})], FAIL
    if c == "uniformity":
        return _uniformity_items(om.truncate(pres, N), args)
    raise InputError(f"unknown check {c}")


# -- words ---------------------------------------------------------------------------
def _word_system(args):
    if args.preset:
        return PRESETS[args.preset]
    if args.system:
        doc, _ = load_json(args.system)
        return WordSystem.from_doc(doc)
    if args.literal is not None:
        prefix, sep, repeat = args.literal.partition(":")
        if not sep:
            raise InputError("literal is PREFIX:REPEAT")
        return WordSystem.from_literal(prefix, repeat)
    raise InputError("need --preset, --system or --literal")


def _word_check(word, args):
    c = args.check
    if c == "generate":
        return [("length", len(word)), ("word", word)], "done"
    if c == "factors":
        fs = sorted(factors(word, args.maxlen), key=lambda w: (len(w), w))
        return [("count", len(fs)), ("factors", fs)], "done"
    if c == "recurrence":
        prof = recurrence_profile(word, args.maxlen)
        R = {l: ("unbounded" if r is None else r) for l, r in prof.R.items()}
        return [("R", R), ("samples", prof.samples)], "done"
    if c == "minimal-type":
        fp = factor_poset(factors(word, args.maxlen), word)
        return _cert_items(minimal_type_window_check(fp))
    raise InputError(f"unknown check {c}")


# -- parser ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="posetlab", description="finite and omega-presented poset checks")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["report", "dot"], default="report")
        sp.add_argument("--timings", action="store_true", help="add elapsed time (breaks byte identity)")

    a = sub.add_parser("analyze", help="checks on a finite poset")
    a.add_argument("file", nargs="?")
    a.add_argument("--random", type=int, metavar="N")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--check", choices=ANALYZE_CHECKS, default="levels")
    a.add_argument("--cap", type=int, default=10**6)
    a.add_argument("--limit", type=int, default=10)
    a.add_argument("--mode", choices=["fast", "exhaustive"], default="fast")
    a.add_argument("--boundary", type=int)
    common(a)

    j = sub.add_parser("jaco", help="Jaco complement presentations")
    j.add_argument("--prefix", default="")
    j.add_argument("--tail", default="const:1")
    j.add_argument("--extra", default="", help="sandwich extra pairs i,j;k,l")
    j.add_argument("--window", type=int, default=200)
    j.add_argument("--check", choices=OMEGA_CHECKS[:-1], default="minimal-type")
    j.add_argument("--boundary", type=int)
    common(j)

    o = sub.add_parser("omega", help="presentation document checks")
    o.add_argument("file")
    o.add_argument("--window", type=int, default=200)
    o.add_argument("--check", choices=OMEGA_CHECKS, default="minimal-type")
    o.add_argument("--boundary", type=int)
    common(o)

    w = sub.add_parser("word", help="substitution words and factor posets")
    w.add_argument("--preset", choices=sorted(PRESETS))
    w.add_argument("--system")
    w.add_argument("--literal", metavar="PREFIX:REPEAT")
    w.add_argument("--length", type=int, default=10000)
    w.add_argument("--maxlen", type=int, default=12)
    w.add_argument("--check", choices=WORD_CHECKS, default="minimal-type")
    w.add_argument("--export", metavar="PATH")
    common(w)

    r = sub.add_parser("ord", help="ordinal arithmetic in Cantor normal form")
    r.add_argument("op", choices=["compare", "add", "natsum", "limitpart"])
    r.add_argument("a")
    r.add_argument("b", nargs="?")
    r.add_argument("--format", choices=["bare", "report"], default="bare")
    return p


def _run(args, out) -> int:
    t0 = time.perf_counter()
    if args.cmd == "ord":
        return _run_ord(args, out)
    if args.cmd == "analyze":
        if args.random is not None:
            P = random_order(args.random, random.Random(args.seed))
            dig = digest(f"random:{args.random}:{args.seed}".encode())
        elif args.file:
            doc, raw = load_json(args.file)
            P = poset_from_doc(doc)
            dig = digest(raw)
        else:
            raise InputError("need a poset file or --random N")
        if args.format == "dot":
            out.write(to_dot(P))
            return 0
        items, verdict = _analyze(P, args)
        head = [("command", "analyze"), ("check", args.check), ("input", dig), ("n", P.n)]
    elif args.cmd in ("jaco", "omega"):
        if args.cmd == "jaco":
            prefix = [int(x) for x in args.prefix.split(",") if x.strip()]
            pres = om.JacoComplement(om.JacoRule(tuple(prefix), _tail(args.tail)))
            extra = _pairs(args.extra)
            if extra:
                pres = om.Sandwich(pres, extra)
            dig = digest(json.dumps(pres.to_doc(), sort_keys=True).encode())
        else:
            doc, raw = load_json(args.file)
            pres = om.presentation_from_doc(doc)
            dig = digest(raw)
        if args.format == "dot":
            if isinstance(pres, st.LayeredPresentation):
                raise InputError("no DOT form for a Layered document")
            out.write(to_dot(om.truncate(pres, args.window)))
            return 0
        items, verdict = _presentation_check(pres, args)
        head = [("command", args.cmd), ("check", args.check), ("input", dig)]
        if args.cmd == "jaco" or not isinstance(pres, st.LayeredPresentation):
            head.append(("window", args.window))
            items = [kv for kv in items if kv[0] != "window"]
    else:
        system = _word_system(args)
        word = generate(system, args.length)
        dig = digest(json.dumps(system.to_doc(), sort_keys=True).encode() + f":{args.length}".encode())
        if args.export or args.format == "dot":
            fp = factor_poset(factors(word, args.maxlen), word)
            if args.export:
                doc = fp.poset.to_dict()
                doc["labels"] = list(fp.words)
                with open(args.export, "w") as fh:
                    json.dump(doc, fh, separators=(",", ":"))
            if args.format == "dot":
                out.write(to_dot(fp.poset, list(fp.words), name="Factors"))
                return 0
        items, verdict = _word_check(word, args)
        head = [("command", "word"), ("check", args.check), ("input", dig),
                ("length", args.length), ("maxlen", args.maxlen)]
    tail = [("elapsed_ms", round((time.perf_counter() - t0) * 1000, 1))] if args.timings else []
    out.write(format_report(head + items + tail + [("verdict", verdict)]))
    return 1 if verdict == FAIL else 0


def _run_ord(args, out) -> int:
    a = parse(args.a)
    if args.op == "limitpart":
        lim, r = limit_part(a)
        value = f"{lim} {r}"
        items = [("limit", str(lim)), ("remainder", r)]
    else:
        if args.b is None:
            raise InputError(f"{args.op} needs two ordinals")
        b = parse(args.b)
        if args.op == "compare":
            value = {-1: "lt", 0: "eq", 1: "gt"}[compare(a, b)]
        elif args.op == "add":
            value = str(add(a, b))
        else:
            value = str(natural_sum(a, b))
        items = [("value", value)]
    if args.format == "report":
        out.write(format_report([("command", "ord"), ("op", args.op), ("args", [args.a, args.b])]
                                + items + [("verdict", "done")]))
    else:
        out.write(value + "\n")
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args, out)
    except (PosetLabError, OSError, KeyError, ValueError) as e:
        err.write(f"posetlab: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
