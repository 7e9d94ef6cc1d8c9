"""Command-line front end: ``ixcalc <command> MODEL [options]``.

Every invocation prints one JSON report on stdout and exits with 0 (pass),
1 (fail) or 2 (error).  Output files are written only once the whole command
has succeeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import documents as docs
from .core import Relation
from .errors import ContractViolation, IxError, MissingWitness, NotCovered
from .fixpoint import cover, interior
from .istruct import angelic_product, dual, factorize, localize, seq, tensor
from .laws import run_laws, run_model_laws
from .modelfile import ModelFile, load_model, print_model
from .programs import ServerProgram, execute, execute_across, synth_client, synth_server
from .simulation import KINDS, check_sim, greatest_sim
from .topology import (
    SelfSimulation,
    check_continuous_map,
    check_formal_point,
    check_localized,
    saturation_preorder,
)

PASS, FAIL, ERROR = "pass", "fail", "error"
EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 2}


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    status: str = PASS
    result: Any = None
    diagnostics: list[str] = field(default_factory=list)
    outputs: dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "result": self.result,
            "diagnostics": self.diagnostics,
        }

    def render(self) -> str:
        return docs.dumps(self.to_json())


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _model_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("model", metavar="FILE", help="model file")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="ixcalc", description="Interaction structures: covers, programs, simulations.")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--max-size", type=int, default=None, help="cap on enumerated commands per state")
    sub = top.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("cover")
    _model_arg(p)
    p.add_argument("--istruct", required=True)
    p.add_argument("--subset", required=True)
    p.add_argument("--preorder")

    p = sub.add_parser("interior")
    _model_arg(p)
    p.add_argument("--istruct", required=True)
    p.add_argument("--subset", required=True)

    p = sub.add_parser("sim")
    _model_arg(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--from", dest="high", required=True)
    p.add_argument("--to", dest="low", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--cert")

    p = sub.add_parser("sim-greatest")
    _model_arg(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--from", dest="high", required=True)
    p.add_argument("--to", dest="low", required=True)

    p = sub.add_parser("synth")
    ss = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = ss.add_parser("client")
    _model_arg(q)
    q.add_argument("--istruct", required=True)
    q.add_argument("--start", required=True)
    q.add_argument("--goal", required=True)
    q.add_argument("--out")
    q = ss.add_parser("server")
    _model_arg(q)
    q.add_argument("--istruct", required=True)
    q.add_argument("--maintain", required=True)
    q.add_argument("--out")

    p = sub.add_parser("exec")
    _model_arg(p)
    p.add_argument("--istruct", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--client", required=True)
    p.add_argument("--server", required=True)
    p.add_argument("--trace")

    p = sub.add_parser("exec-across")
    _model_arg(p)
    p.add_argument("--cert", required=True)
    p.add_argument("--start-high", required=True)
    p.add_argument("--start-low", required=True)
    p.add_argument("--client", required=True)
    p.add_argument("--server", required=True)

    p = sub.add_parser("algebra")
    p.add_argument("op", choices=("dual", "seq", "tensor", "oplus", "factorize", "localize"))
    _model_arg(p)
    p.add_argument("--istruct", help="operand of dual, factorize, localize")
    p.add_argument("--left", help="first operand of seq, tensor, oplus")
    p.add_argument("--right", help="second operand of seq, tensor, oplus")
    p.add_argument("--start", help="initial state for localize")
    p.add_argument("--name", help="name of the result in the printed model")
    p.add_argument("--out")

    p = sub.add_parser("topology")
    p.add_argument("check", choices=("saturation", "localized", "point", "continuous"))
    _model_arg(p)
    p.add_argument("--istruct")
    p.add_argument("--preorder", help="preorder name (default: saturation preorder)")
    p.add_argument("--strict", action="store_true", help="one-step form of localization")
    p.add_argument("--subset", help="candidate point")
    p.add_argument("--from", dest="high")
    p.add_argument("--to", dest="low")
    p.add_argument("--relation")
    p.add_argument("--preorder-high")
    p.add_argument("--preorder-low")

    p = sub.add_parser("laws")
    p.add_argument("model", metavar="FILE", nargs="?")
    p.add_argument("--random", action="store_true")
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--max-states", type=int, default=5)
    p.add_argument("--seed", dest="laws_seed", type=int, default=None)
    return top


# -- helpers -------------------------------------------------------------------


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.cmd} needs " + ", ".join("--" + m for m in missing))


def _homogeneous(model: ModelFile, name: str):
    w = model.get("istructs", name)
    w.require_homogeneous(f"istruct {name!r}")
    return w


def _preorder(model: ModelFile, w, name: str | None) -> SelfSimulation:
    if name is None:
        return saturation_preorder(w)
    rel = model.get("preorders", name)
    return SelfSimulation(w, rel)


def _verdict_json(v) -> dict:
    out: dict[str, Any] = {"ok": v.ok}
    if not v.ok:
        out["condition"] = v.condition
        out["detail"] = v.detail
    return out


# -- commands ------------------------------------------------------------------


def _cmd_cover(args, model: ModelFile, rep: Report) -> None:
    w = _homogeneous(model, args.istruct)
    u = model.get("subsets", args.subset)
    pre = None if args.preorder is None else model.get("preorders", args.preorder)
    res = cover(w, u, pre)
    st = w.source.states
    rep.result = {
        "subset": list(res.subset.names()),
        "stages": {st[s]: res.stage[s] for s in res.subset},
        "witnesses": {st[s]: w.table[s][res.witness[s]].name for s in res.subset if res.witness[s] is not None},
        "rounds": res.rounds,
    }


def _cmd_interior(args, model: ModelFile, rep: Report) -> None:
    w = _homogeneous(model, args.istruct)
    res = interior(w, model.get("subsets", args.subset))
    srv = ServerProgram(res.subset, res.choice)
    rep.result = {
        "subset": list(res.subset.names()),
        "choice": docs.server_to_json(w, srv)["choice"],
        "rounds": res.rounds,
    }


def _cmd_sim(args, model: ModelFile, rep: Report) -> None:
    wh = model.get("istructs", args.high)
    wl = model.get("istructs", args.low)
    r = model.get("relations", args.relation)
    res = check_sim(wh, wl, r, args.kind)
    if not res:
        rep.status = FAIL
        rep.result = {
            "holds": False,
            "counterexample": {
                "high": wh.source.states[res.high_state],
                "low": wl.source.states[res.low_state],
                "command": wh.table[res.high_state][res.high_command].name,
            },
        }
        rep.diagnostics.append(f"no low-level match for {res.describe(wh, wl)}")
        return
    doc = docs.cert_to_json(res)
    rep.result = {"holds": True, "witnesses": len(res.witnesses)}
    if args.cert:
        rep.outputs[args.cert] = docs.dumps(doc)
        rep.result["certificate"] = args.cert
    else:
        rep.result["certificate"] = doc


def _cmd_sim_greatest(args, model: ModelFile, rep: Report) -> None:
    wh = model.get("istructs", args.high)
    wl = model.get("istructs", args.low)
    g = greatest_sim(wh, wl, args.kind)
    rep.result = {"relation": [list(p) for p in g.named_pairs()], "size": len(g)}


def _cmd_synth(args, model: ModelFile, rep: Report) -> None:
    w = _homogeneous(model, args.istruct)
    if args.what == "client":
        try:
            p = synth_client(w, _state(w, args.start), model.get("subsets", args.goal))
        except NotCovered as e:
            rep.status = FAIL
            rep.result = {"client": None}
            rep.diagnostics.append(str(e))
            return
        doc = docs.client_to_json(w, p)
    else:
        srv = synth_server(w, model.get("subsets", args.maintain))
        doc = docs.server_to_json(w, srv)
        if srv.warning:
            rep.diagnostics.append(srv.warning)
    key = args.what
    if args.out:
        rep.outputs[args.out] = docs.dumps(doc)
        rep.result = {key: args.out}
    else:
        rep.result = {key: doc}


def _state(w, name: str) -> int:
    if name not in w.source:
        raise UsageError(f"state {name!r} is not in space {w.source.name!r}")
    return w.source.index(name)


def _cmd_exec(args, model: ModelFile, rep: Report) -> None:
    w = _homogeneous(model, args.istruct)
    s = _state(w, args.start)
    p = docs.client_from_json(w, _read_json(args.client))
    srv = docs.server_from_json(w, _read_json(args.server))
    try:
        final, trace = execute(w, s, p, srv)
    except ContractViolation as e:
        rep.status = FAIL
        rep.diagnostics.append(str(e))
        return
    rep.result = {"final": w.source.states[final], "trace": docs.trace_records(w, trace)}
    if args.trace:
        rep.outputs[args.trace] = docs.trace_jsonl(w, trace)


def _cmd_exec_across(args, model: ModelFile, rep: Report) -> None:
    cert = docs.cert_from_json(model, _read_json(args.cert))
    wh, wl = cert.high, cert.low
    sh, sl = _state(wh, args.start_high), _state(wl, args.start_low)
    p = docs.client_from_json(wh, _read_json(args.client))
    srv = docs.server_from_json(wl, _read_json(args.server))
    try:
        (fh, fl), high, low = execute_across(cert, sh, sl, p, srv)
    except (ContractViolation, MissingWitness) as e:
        rep.status = FAIL
        rep.diagnostics.append(str(e))
        return
    rep.result = {
        "final": [wh.source.states[fh], wl.source.states[fl]],
        "high_trace": docs.trace_records(wh, high),
        "low_trace": docs.trace_records(wl, low),
    }


def _cmd_algebra(args, model: ModelFile, rep: Report) -> None:
    op, cap = args.op, args.max_size
    if op in ("dual", "factorize", "localize"):
        _need(args, "istruct")
        w = model.get("istructs", args.istruct)
    else:
        _need(args, "left", "right")
        w1, w2 = model.get("istructs", args.left), model.get("istructs", args.right)
    name = args.name
    if op == "factorize":
        f = factorize(w)
        rep.result = {
            "mid": list(f.mid.states),
            "issue": {w.source.states[s]: [[lbl, f.mid.states[n]] for lbl, n in row] for s, row in enumerate(f.issue.transitions)},
            "perform": {f.mid.states[m]: [[lbl, w.target.states[n]] for lbl, n in row] for m, row in enumerate(f.perform.transitions)},
        }
        return
    extra: dict[str, Relation] = {}
    if op == "dual":
        out = dual(w, cap)
    elif op == "seq":
        out = seq(w1, w2, cap)
    elif op == "tensor":
        out = tensor(w1, w2)
    elif op == "oplus":
        out = angelic_product(w1, w2)
    else:
        _need(args, "start")
        w.require_homogeneous("localize")
        out, ss = localize(w, _state(w, args.start), cap)
        extra["leq"] = ss.leq
    name = name or "result"
    m = ModelFile.collect(istructs={name: out}, preorders=extra)
    text = print_model(m)
    rep.result = {
        "states": len(out.source),
        "commands": sum(len(r) for r in out.table),
        "model": text if not args.out else args.out,
    }
    if args.out:
        rep.outputs[args.out] = text


def _cmd_topology(args, model: ModelFile, rep: Report) -> None:
    check = args.check
    if check == "continuous":
        _need(args, "high", "low", "relation")
        wh, wl = _homogeneous(model, args.high), _homogeneous(model, args.low)
        r = model.get("relations", args.relation)
        v = check_continuous_map(r, _preorder(model, wh, args.preorder_high), _preorder(model, wl, args.preorder_low))
        rep.result = _verdict_json(v)
    else:
        _need(args, "istruct")
        w = _homogeneous(model, args.istruct)
        ss = _preorder(model, w, args.preorder)
        if check == "saturation":
            rep.result = {"preorder": [list(p) for p in ss.leq.named_pairs()], "certified": ss.certified}
            v = None
        elif check == "localized":
            v = check_localized(ss, args.strict)
            rep.result = _verdict_json(v)
        else:
            _need(args, "subset")
            v = check_formal_point(ss, model.get("subsets", args.subset))
            rep.result = _verdict_json(v)
        if check != "saturation" and not ss.certified:
            rep.diagnostics.append("preorder is not certified as a self-simulation")
    if rep.result.get("ok") is False:
        rep.status = FAIL
        msg = f"{rep.result['condition']} condition fails"
        if rep.result["detail"]:
            msg += f": {rep.result['detail']}"
        rep.diagnostics.append(msg)


def _cmd_laws(args, rep: Report, seed: int) -> None:
    if args.random == (args.model is not None):
        raise UsageError("laws needs either FILE or --random")
    if args.iterations < 0:
        raise UsageError("--iterations must be non-negative")
    if args.random:
        if args.max_states < 1:
            raise UsageError("--max-states must be at least 1")
        res = run_laws(seed, args.iterations, args.max_states)
    else:
        res = run_model_laws(load_model(args.model), seed)
    rep.result = res.to_json()
    if not res.ok:
        rep.status = FAIL


_HANDLERS = {
    "cover": _cmd_cover,
    "interior": _cmd_interior,
    "sim": _cmd_sim,
    "sim-greatest": _cmd_sim_greatest,
    "synth": _cmd_synth,
    "exec": _cmd_exec,
    "exec-across": _cmd_exec_across,
    "algebra": _cmd_algebra,
    "topology": _cmd_topology,
}


def run(argv: list[str]) -> Report:
    """Execute one command; never raises, never writes files."""
    rep = Report(list(argv))
    try:
        args = build_parser().parse_args(argv)
        if args.cmd == "laws":
            seed = args.laws_seed if args.laws_seed is not None else args.seed
            _cmd_laws(args, rep, seed)
        else:
            _HANDLERS[args.cmd](args, load_model(args.model), rep)
    except (UsageError, IxError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return Report(list(argv), ERROR, None, [str(msg)])
    return rep


def _write_outputs(outputs: dict[str, str]) -> None:
    for path, text in outputs.items():
        Path(path).write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    rep = run(argv)
    if rep.outputs:
        try:
            _write_outputs(rep.outputs)
        except OSError as e:
            rep = Report(rep.command, ERROR, None, [f"cannot write output: {e}"])
    sys.stdout.write(rep.render())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
