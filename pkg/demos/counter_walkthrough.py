"""A three-state counter, start to finish.

The counter moves s0 -> s1 -> s2 by the command ``inc``.  We ask which states
can reach s2, synthesize a client that gets there, a server that keeps the
counter alive, and run one against the other.

Run with ``python3 demos/counter_walkthrough.py``.
"""

from __future__ import annotations

from ixcalc import fixtures as F
from ixcalc.fixpoint import cover, interior
from ixcalc.programs import client_exits, execute, synth_client, synth_server
from ixcalc.topology import check_formal_point, check_localized, identity_preorder, saturation_preorder


def main() -> None:
    w = F.count3()
    S = w.source
    goal = S.subset(["s2"])

    res = cover(w, goal)
    print(f"states that can force a visit to {goal}: {res.subset}")
    for s in res.subset:
        print(f"  {S.states[s]} needs {res.stage[s]} step(s)")

    client = synth_client(w, "s0", goal)
    print(f"client from s0 exits at: {[S.states[e] for _, e in client_exits(w, 's0', client)]}")

    inv = interior(w, S.full())
    print(f"invariant the server can maintain: {inv.subset}")
    server = synth_server(w, S.full())

    final, trace = execute(w, "s0", client, server)
    for step in trace.steps:
        c = w.table[step.state][step.command]
        print(f"  {S.states[step.state]} --{c.name}/{c.responses[step.response]}--> {S.states[step.next]}")
    print(f"run ended in {S.states[final]}")

    # a server promising to stay below s2 cannot keep that promise
    doomed = synth_server(w, S.subset(["s0", "s1"]))
    print(f"server for {{s0,s1}}: invariant {doomed.inv}, warning: {doomed.warning}")

    sat = saturation_preorder(w)
    print(f"saturation preorder: {sat.leq.named_pairs()}")
    print(f"localized under saturation: {bool(check_localized(sat))}")
    v = check_localized(identity_preorder(w))
    print(f"localized under equality: {bool(v)} (fails at {v.detail})")
    print(f"whole space is a point: {bool(check_formal_point(sat, S.full()))}")


if __name__ == "__main__":
    main()
