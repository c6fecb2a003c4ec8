"""Command-line front end: ``pi-residual <command> [file] [options]``.

Every command prints one JSON document on stdout with the envelope
``{"schema", "command", "status", "payload", "diagnostics"}``; diagnostics
also go to stderr. Exit status is 0 on success, 1 on user errors (syntax,
invalid proofs, non-coinitial inputs) and 2 when a cofinality check fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render
from .concurrency import check_concurrent, frontier
from .diamond import check_process_pairs, check_universe, DiamondReport
from .errors import CofinalityViolation, PiError
from .residuation import compute_braiding, residual
from .semantics import enumerate_transitions, parse_proof
from .surface import parse
from .traces import check_causal_equiv, composite_braiding, enumerate_traces, parse_trace


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_program(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise _Exit(1, f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def cmd_parse(args):
    ctx, p = _read_program(args.file)
    return render.process_json(ctx, p)


def cmd_step(args):
    ctx, p = _read_program(args.file)
    ts = enumerate_transitions(ctx, p, args.fuel)
    return {"fuel": args.fuel, "source": render.process_json(ctx, p),
            "transitions": [render.transition_json(t, i) for i, t in enumerate(ts)]}


def _pair(args):
    ctx, p = _read_program(args.file)
    return parse_proof(ctx, p, args.t), parse_proof(ctx, p, args.u)


def cmd_concur(args):
    t, u = _pair(args)
    w = check_concurrent(t, u)
    if w is None:
        return {"concurrent": False, "result": "not-concurrent", "frontier": frontier(t, u)}
    return {"concurrent": True, "witness": render.witness_json(w),
            "classification": render.classification_json(w)}


def cmd_residual(args):
    t, u = _pair(args)
    w = check_concurrent(t, u)
    if w is None:
        raise _Exit(1, "transitions are not concurrent: " + "; ".join(frontier(t, u)))
    ut, tu = residual(u, t, w), residual(t, u, w)
    g = compute_braiding(t, u, w)
    if args.dot:
        return render.square_dot(t, u, ut, tu, g)
    return {"witness": render.witness_json(w), "classification": render.classification_json(w),
            "uAfterT": render.transition_json(ut), "tAfterU": render.transition_json(tu),
            "braiding": render.braiding_json(g)}


def cmd_diamond(args):
    if args.file is not None:
        ctx, p = _read_program(args.file)
        report = DiamondReport()
        check_process_pairs(ctx, p, args.fuel, report)
        scope = {"process": render.process_json(ctx, p)}
    else:
        report = check_universe(args.max_size, args.max_gamma, args.fuel)
        scope = {"maxSize": args.max_size, "maxGamma": args.max_gamma}
    return {**scope, "fuel": args.fuel, **report.as_json()}


def cmd_traces(args):
    ctx, p = _read_program(args.file)
    trs = enumerate_traces(ctx, p, args.depth, args.fuel)
    return {"depth": args.depth, "fuel": args.fuel, "count": len(trs),
            "traces": [render.trace_json(tr) for tr in trs]}


def cmd_equiv(args):
    ctx, p = _read_program(args.file)
    tr1, tr2 = parse_trace(ctx, p, args.trace1), parse_trace(ctx, p, args.trace2)
    alpha = check_causal_equiv(tr1, tr2, args.budget)
    braids = composite_braiding(alpha) if alpha is not None else []
    if args.dot:
        return render.equivalence_dot(tr1, tr2, braids)
    out = {"related": alpha is not None, "budget": args.budget}
    if alpha is not None:
        out["proof"] = render.equivalence_json(alpha)
        out["compositeBraiding"] = [render.braiding_json(g) for g in braids]
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pi-residual",
                                 description="Proved transitions, residuals and causal equivalence "
                                             "for the de Bruijn pi-calculus.")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, fn, help, file_required=True):
        sp = sub.add_parser(name, help=help)
        if file_required:
            sp.add_argument("file", help="program file, or - for stdin")
        else:
            sp.add_argument("file", nargs="?", help="program file, or - for stdin")
        sp.set_defaults(fn=fn)
        return sp

    command("parse", cmd_parse, "parse a program and print both notations")
    sp = command("step", cmd_step, "list the transitions of a program")
    sp.add_argument("--fuel", type=int, default=1, help="replication unfoldings (default 1)")
    for name, fn, help in (("concur", cmd_concur, "check two transitions for concurrency"),
                           ("residual", cmd_residual, "residuals of two concurrent transitions")):
        sp = command(name, fn, help)
        sp.add_argument("--t", required=True, help="first transition as a proof term")
        sp.add_argument("--u", required=True, help="second transition as a proof term")
        if name == "residual":
            sp.add_argument("--dot", action="store_true", help="emit the square as a DOT digraph")
    sp = command("diamond", cmd_diamond, "check cofinality of residuals exhaustively",
                 file_required=False)
    sp.add_argument("--max-size", type=int, default=5)
    sp.add_argument("--max-gamma", type=int, default=2)
    sp.add_argument("--fuel", type=int, default=1)
    sp = command("traces", cmd_traces, "enumerate traces up to a depth")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--fuel", type=int, default=1)
    sp = command("equiv", cmd_equiv, "decide causal equivalence of two traces")
    sp.add_argument("--trace1", required=True, help="';'-separated proof terms")
    sp.add_argument("--trace2", required=True, help="';'-separated proof terms")
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--dot", action="store_true", help="emit the traces and braids as DOT")
    return ap


def _emit(command: str, status: str, payload, diagnostics: list[str]):
    doc = {"schema": render.SCHEMA, "command": command, "status": status,
           "payload": payload, "diagnostics": diagnostics}
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("fuel", "depth", "budget", "max_size", "max_gamma"):
        if getattr(args, name, 0) < 0:
            print(f"error: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 1
    try:
        payload = args.fn(args)
    except CofinalityViolation as e:
        code, msg = 2, f"cofinality violation: {e}"
    except _Exit as e:
        code, msg = e.code, str(e)
    except PiError as e:
        code, msg = 1, f"{type(e).__name__}: {e}"
    else:
        if isinstance(payload, str):
            sys.stdout.write(payload)
            return 0
        _emit(args.command, "ok", payload, [])
        if args.command == "diamond" and payload["failures"]:
            print(f"{payload['failures']} diamond failures", file=sys.stderr)
            return 2
        return 0
    print(f"error: {msg}", file=sys.stderr)
    _emit(args.command, "error", {}, [msg])
    return code


if __name__ == "__main__":
    sys.exit(main())
