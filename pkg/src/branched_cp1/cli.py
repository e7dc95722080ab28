"""Command-line front end (``bps``).

Exit codes: 0 success, 1 I/O or parse error, 2 validation failure,
3 unsupported surgery, 4 numeric-certificate failure.  Every command ends
with a machine block of ``key=value`` lines between ``---BEGIN REPORT---``
and ``---END REPORT---``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .decomposition import Sign, canonical_key, classify_k2_detail, enumerate_k2, validate
from .decomposition.io import GraphFormatError, dump, dumps, load
from .surgery import SurgeryRejected, UnsupportedSurgery, SurgeryError
from .surgery.script import ScriptSyntaxError, parse_script, run_step

OK, IO_ERROR, INVALID, UNSUPPORTED, NUMERIC = 0, 1, 2, 3, 4

BEGIN, END = "---BEGIN REPORT---", "---END REPORT---"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("inf" if v > 0 else "-inf")
    return str(v)


def emit_report(fields: Dict[str, object], out=None) -> None:
    out = out or sys.stdout
    print(BEGIN, file=out)
    for k, v in fields.items():
        print(f"{k}={_fmt(v)}", file=out)
    print(END, file=out)


def parse_report(text: str) -> Dict[str, str]:
    """Read back the last machine block of some output."""
    start = text.rindex(BEGIN) + len(BEGIN)
    body = text[start : text.index(END, start)]
    return dict(line.split("=", 1) for line in body.strip().splitlines() if "=" in line)


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for validation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(IO_ERROR)


def _load_graph(path):
    try:
        return load(path)
    except (OSError, GraphFormatError, json.JSONDecodeError, UnicodeDecodeError) as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return None


def _graph_fields(g, rep) -> Dict[str, object]:
    f: Dict[str, object] = {
        "valid": rep.valid,
        "violations": ",".join(rep.rule_ids) or "none",
        "ord": g.ord,
        "k_plus": g.k_sign(Sign.POS),
        "k_minus": g.k_sign(Sign.NEG),
    }
    for cid in sorted(rep.euler_classes):
        f[f"eu.{cid}"] = rep.euler_classes[cid]
    f["nesting_ambiguous"] = rep.nesting_ambiguous
    if rep.valid and g.ord == 2:
        f["classification"] = classify_k2_detail(g).label.value
    return f


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    g = _load_graph(args.file)
    if g is None:
        return IO_ERROR
    rep = validate(g)
    print(f"{args.file}: {'valid' if rep.valid else 'INVALID'}")
    for rule, msg in rep.violations:
        print(f"  {rule}: {msg}")
    fields = _graph_fields(g, rep)
    if "classification" in fields:
        print(f"  classification: {fields['classification']}")
    emit_report(fields)
    return OK if rep.valid else INVALID


def cmd_enumerate(args) -> int:
    graphs = enumerate_k2(args.genus, args.max_components, args.max_curves)
    counts: Dict[str, int] = {}
    out = Path(args.out) if args.out else None
    try:
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            label = classify_k2_detail(g).label.value
            counts[label] = counts.get(label, 0) + 1
            if out is not None:
                dump(g, out / f"graph_{i:03d}.json")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return IO_ERROR
    print(f"count={len(graphs)}")
    fields: Dict[str, object] = {"count": len(graphs)}
    for label in sorted(counts):
        fields[f"count.{label}"] = counts[label]
    emit_report(fields)
    return OK


def cmd_apply(args) -> int:
    g = _load_graph(args.graph)
    if g is None:
        return IO_ERROR
    try:
        steps = parse_script(Path(args.script).read_text(encoding="utf-8"))
    except (OSError, ScriptSyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return IO_ERROR
    rep = validate(g)
    if not rep.valid:
        print(f"input graph is invalid: {', '.join(rep.rule_ids)}")
        emit_report({"step": 0, "valid": False, "violations": ",".join(rep.rule_ids)})
        return INVALID
    start = canonical_key(g)
    for n, st in enumerate(steps, 1):
        try:
            res = run_step(g, st)
        except SurgeryRejected as e:
            print(f"step {n} ({st.text}): rejected: {e}")
            ids = ",".join(e.report.rule_ids) if e.report is not None else "none"
            emit_report({"step": n, "valid": False, "violations": ids})
            return INVALID
        except (UnsupportedSurgery, SurgeryError) as e:
            print(f"step {n} ({st.text}): unsupported: {e}")
            emit_report({"step": n, "valid": False, "unsupported": True})
            return UNSUPPORTED
        g = res.graph
        rep = validate(g)
        print(f"# step {n}: {st.text}  [{res.status}] delta {res.describe_delta()}")
        print(dumps(g))
        if not rep.valid:
            emit_report({"step": n, "valid": False, "violations": ",".join(rep.rule_ids)})
            return INVALID
    fields = {"steps": len(steps), "valid": True, "same_as_input": canonical_key(g) == start}
    fields.update({k: v for k, v in _graph_fields(g, rep).items() if k not in ("valid", "violations")})
    emit_report(fields)
    return OK


# ---------------------------------------------------------------------------
# demos


def _demo_nonisobub(args, out: Path) -> int:
    from .devmap import dump_arc, scenario_nonisobub

    theta = 0.2 if args.theta is None else args.theta
    kw = {"theta": theta, "word_ball": 2 if args.word_ball is None else args.word_ball}
    if args.tol is not None:
        kw["tol"] = args.tol
    rep = scenario_nonisobub(**kw)
    fields: Dict[str, object] = {"lambda": rep.lam, "eta_length": rep.eta_length}
    for tag, sa in (("plus", rep.plus), ("minus", rep.minus), ("zero", rep.zero)):
        c = sa.certificate
        print(f"alpha[{sa.theta:+.3f}]: injective={_fmt(c.injective)} status={c.status} basis={c.basis} orientation={sa.orientation:+d}")
        fields[f"{tag}.theta"] = sa.theta
        fields[f"{tag}.injective"] = c.injective
        fields[f"{tag}.status"] = c.status
        fields[f"{tag}.orientation"] = sa.orientation
        if c.witness is not None:
            fields[f"{tag}.witness"] = f"{c.witness[0]}:{c.witness[1]}:{c.witness[2]}"
        dump_arc(sa.arc, out / f"nonisobub_{tag}.txt")
    emit_report(fields)
    good = rep.plus.certificate.status == "certified" and rep.minus.certificate.status == "certified"
    good = good and not rep.zero.certificate.injective and rep.plus.orientation == -rep.minus.orientation != 0
    return OK if good else NUMERIC


def _demo_systole(args, out: Path) -> int:
    from .fuchsian import BOLZA_SYSTOLE, standard_genus2, systole_search

    rep = standard_genus2()
    L = 6 if args.word_ball is None else args.word_ball
    tol = 1e-6 if args.tol is None else args.tol
    fields: Dict[str, object] = {}
    res = None
    for n in range(1, L + 1):
        res = systole_search(rep, n)
        print(f"L={n}: systole<={res.length!r} word={res.word.format(rep.names)} classes={res.classes}")
        fields[f"systole.L{n}"] = res.length
    fields.update({"systole": res.length, "word": "".join(res.word.format(rep.names).split()),
                   "reference": BOLZA_SYSTOLE, "trivial_words": res.trivial_words,
                   "non_loxodromic": res.non_loxodromic})
    emit_report(fields)
    good = res.non_loxodromic == 0 and abs(res.length - BOLZA_SYSTOLE) < tol
    return OK if good else NUMERIC


def _demo_index(args, out: Path) -> int:
    from .devmap import Bubbled, Grafted, Uniformizing, develop_geodesic_arc, dump_arc, index_of_real_curve, winding_curve
    from .fuchsian import standard_genus2
    from .moebius import IDENTITY, ProjectivePoint

    rep = standard_genus2()
    wb = 2 if args.word_ball is None else args.word_ball
    kw = {} if args.tol is None else {"tol": args.tol}
    gr = Grafted(rep, rep.word("a1"))
    fp = gr.axis()[0]
    results = {}
    for side in (1, -1):
        curve = gr.annulus_boundary(side)
        results[f"graft_boundary{'+' if side > 0 else '-'}"] = (index_of_real_curve(curve, gr.holonomy, fp, **kw), 0)
        dump_arc(curve, out / f"index_graft_{'plus' if side > 0 else 'minus'}.txt", rep.names)
    bub = Bubbled(Uniformizing(rep), develop_geodesic_arc(rep, 1j, 0.0, 0.5), wb)
    rc = bub.real_curve()
    results["bubble_boundary"] = (index_of_real_curve(rc, IDENTITY, ProjectivePoint(1, 0), **kw), 1)
    dump_arc(rc, out / "index_bubble.txt")
    wc, h = winding_curve(3)
    results["winding3"] = (index_of_real_curve(wc, h, ProjectivePoint(1, 0), **kw), 3)
    dump_arc(wc, out / "index_winding3.txt")
    fields: Dict[str, object] = {}
    for k, (got, want) in results.items():
        print(f"{k}: index={got} expected={want}")
        fields[f"index.{k}"] = got
    emit_report(fields)
    return OK if all(g == w for g, w in results.values()) else NUMERIC


def _demo_safety(args, out: Path) -> int:
    from .bmconfig import chain_check, safe_move_bound, safety_constants
    from .fuchsian import evaluate_word, standard_genus2

    rep = standard_genus2()
    wb = 6 if args.word_ball is None else args.word_ball
    x, y = 1j, 0.3 + 1.4j
    c = safety_constants(rep, x, y, wb)
    L = 0.99 * c.A
    ok, worst = chain_check(rep, x, y, c, L)
    av = safety_constants(rep, x, evaluate_word(rep, rep.word("a1"))(x), wb)
    op = safety_constants(rep, x, 0.3 - 1.4j, wb)
    print(f"sys={c.sys!r} K={c.K!r} A={c.A!r} (upper-bound estimates, word ball {wb})")
    print(f"single-move bound {safe_move_bound(None, c)!r}, double-move bound {safe_move_bound(None, c, 2)!r}")
    print(f"chain at L={L!r}: min distance {worst!r} >= K - 2L = {c.K - 2 * L!r}: {_fmt(ok)}")
    print(f"avatars: K={av.K!r}; opposite half-planes: K={_fmt(op.K)}")
    emit_report({"sys": c.sys, "K": c.K, "A": c.A, "chain_L": L, "chain_min": worst, "chain_ok": ok,
                 "avatars_K": av.K, "opposite_K": op.K})
    good = ok and av.K == 0 and math.isinf(op.K)
    return OK if good else NUMERIC


DEMOS = {"nonisobub": _demo_nonisobub, "systole": _demo_systole, "index": _demo_index, "safety": _demo_safety}


def cmd_demo(args) -> int:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        return DEMOS[args.name](args, out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return IO_ERROR
    except ValueError as e:  # bad parameters, e.g. |theta| too large
        print(f"error: {e}", file=sys.stderr)
        return IO_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bps", description="Branched projective structures: decompositions, surgeries, numeric certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("validate", help="validate a decomposition graph file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)
    e = sub.add_parser("enumerate", help="enumerate ord-2 decomposition graphs")
    e.add_argument("--genus", type=int, default=2)
    e.add_argument("--max-components", type=int, default=4)
    e.add_argument("--max-curves", type=int, default=4)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_enumerate)
    a = sub.add_parser("apply", help="run a surgery script on a graph")
    a.add_argument("graph")
    a.add_argument("script")
    a.set_defaults(func=cmd_apply)
    d = sub.add_parser("demo", help="numeric demos")
    d.add_argument("name", choices=sorted(DEMOS))
    d.add_argument("--theta", type=float, default=None)
    d.add_argument("--word-ball", type=int, default=None)
    d.add_argument("--tol", type=float, default=None)
    d.add_argument("--out", default="bps-demo", help="directory for arc dumps")
    d.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
