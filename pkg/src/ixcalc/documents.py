"""JSON documents for clients, servers, certificates and traces.

All names are written as strings; trees are preorder with explicit response
labels.  ``dumps`` fixes key order and separators so identical values always
give identical bytes.
"""

from __future__ import annotations

import json
from types import MappingProxyType
from typing import Any

from .errors import ModelError
from .istruct import InteractionStructure
from .modelfile import ModelFile
from .programs import EXIT, Call, ClientProgram, Exit, Node, ServerProgram, Trace
from .simulation import KINDS, SimCert, Witness, verify_cert
from .core import Relation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def tree_to_json(w: InteractionStructure, state: int, node: Node) -> Any:
    if isinstance(node, Exit):
        return "exit"
    c = w.table[state][node.command]
    return {
        "call": c.name,
        "on": [[d, tree_to_json(w, n, b)] for d, n, b in zip(c.responses, c.next, node.branches)],
    }


def tree_from_json(w: InteractionStructure, state: int, obj: Any) -> Node:
    if obj == "exit":
        return EXIT
    if not isinstance(obj, dict) or set(obj) != {"call", "on"}:
        raise ModelError(f"program node must be \"exit\" or {{call, on}}, got {obj!r}")
    try:
        a = w.command_index(state, obj["call"])
    except KeyError as e:
        raise ModelError(str(e.args[0])) from None
    c = w.table[state][a]
    given = {}
    for item in obj["on"]:
        if not (isinstance(item, list) and len(item) == 2):
            raise ModelError(f"branch must be [response, node], got {item!r}")
        given[item[0]] = item[1]
    if set(given) != set(c.responses):
        raise ModelError(
            f"branches of {c.name!r} at {w.source.states[state]!r} must cover exactly "
            f"{list(c.responses)}, got {list(given)}"
        )
    return Call(a, tuple(tree_from_json(w, n, given[d]) for d, n in zip(c.responses, c.next)))


def client_to_json(w: InteractionStructure, p: ClientProgram) -> dict:
    return {"istruct": w.name, "root": w.source.states[p.root], "tree": tree_to_json(w, p.root, p.tree)}


def client_from_json(w: InteractionStructure, obj: dict) -> ClientProgram:
    try:
        root = w.source.index(obj["root"])
    except (KeyError, TypeError):
        raise ModelError("client document needs a known \"root\" state") from None
    return ClientProgram(root, tree_from_json(w, root, obj.get("tree")))


def server_to_json(w: InteractionStructure, srv: ServerProgram) -> dict:
    st = w.source.states
    choice = [
        [st[s], w.table[s][a].name, w.table[s][a].responses[d]]
        for (s, a), d in sorted(srv.choice.items())
    ]
    return {"istruct": w.name, "invariant": list(srv.inv.names()), "choice": choice, "warning": srv.warning}


def server_from_json(w: InteractionStructure, obj: dict) -> ServerProgram:
    try:
        inv = w.source.subset(obj["invariant"])
        choice = {}
        for s, a, d in obj["choice"]:
            si = w.source.index(s)
            ai = w.command_index(si, a)
            choice[(si, ai)] = w.response_index(si, ai, d)
    except (KeyError, TypeError, ValueError) as e:
        raise ModelError(f"bad server document: {e}") from None
    return ServerProgram(inv, MappingProxyType(choice), obj.get("warning"))


def cert_to_json(cert: SimCert) -> dict:
    wh, wl = cert.high, cert.low
    wits = []
    for (sh, sl, ah), wit in sorted(cert.witnesses.items()):
        c = wh.table[sh][ah]
        exits = []
        for path, dh in sorted(wit.exits.items()):
            labels, s = [], sl
            node = wit.program
            for d in path:
                lc = wl.table[s][node.command]
                labels.append(lc.responses[d])
                s, node = lc.next[d], node.branches[d]
            exits.append([labels, c.responses[dh]])
        wits.append(
            {
                "high": wh.source.states[sh],
                "low": wl.source.states[sl],
                "command": c.name,
                "program": tree_to_json(wl, sl, wit.program),
                "exits": exits,
            }
        )
    return {
        "kind": cert.kind,
        "from": wh.name,
        "to": wl.name,
        "relation": [list(p) for p in cert.relation.named_pairs()],
        "witnesses": wits,
    }


def cert_from_json(model: ModelFile, obj: dict) -> SimCert:
    """Rebuild and re-verify a certificate against the structures in ``model``."""
    try:
        kind = obj["kind"]
        wh = model.get("istructs", obj["from"])
        wl = model.get("istructs", obj["to"])
        if kind not in KINDS:
            raise ModelError(f"unknown simulation kind {kind!r}")
        rel = Relation.from_pairs(wh.source, wl.source, [tuple(p) for p in obj["relation"]])
        wits = {}
        for item in obj["witnesses"]:
            sh = wh.source.index(item["high"])
            sl = wl.source.index(item["low"])
            ah = wh.command_index(sh, item["command"])
            prog = tree_from_json(wl, sl, item["program"])
            exits = {}
            for labels, dlabel in item["exits"]:
                path, s, node = [], sl, prog
                for lab in labels:
                    if not isinstance(node, Call):
                        raise ModelError(f"exit path {labels} runs past an exit")
                    d = wl.response_index(s, node.command, lab)
                    path.append(d)
                    s, node = wl.table[s][node.command].next[d], node.branches[d]
                exits[tuple(path)] = wh.response_index(sh, ah, dlabel)
            wits[(sh, sl, ah)] = Witness(prog, MappingProxyType(exits))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ModelError):
            raise
        raise ModelError(f"bad certificate document: {e}") from None
    cert = SimCert(kind, wh, wl, rel, MappingProxyType(wits))
    problem = verify_cert(cert)
    if problem:
        raise ModelError(f"certificate does not verify: {problem}")
    return cert


def trace_records(w: InteractionStructure, trace: Trace) -> list[dict]:
    st = w.source.states
    out = []
    for step in trace.steps:
        c = w.table[step.state][step.command]
        out.append(
            {
                "state": st[step.state],
                "command": c.name,
                "response": c.responses[step.response],
                "next": w.target.states[step.next],
            }
        )
    out.append({"final": w.target.states[trace.final]})
    return out


def trace_jsonl(w: InteractionStructure, trace: Trace) -> str:
    return "".join(
        json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in trace_records(w, trace)
    )
