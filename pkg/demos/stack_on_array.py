"""A bounded stack implemented on an array with a counter.

The high-level interface is a stack of bits (capacity two).  The low-level
interface offers two writable cells and a counter that can be incremented
and decremented.  A push writes the cell (unless it already holds the bit)
and increments; a pop decrements, and the bit it answers is read off the
representation.  A push usually needs two array commands, so the
representation is not a linear simulation.  It is a general one, and the
certificate tells the stack client how to drive the array.

Run with ``python3 demos/stack_on_array.py``.
"""

from __future__ import annotations

from ixcalc import fixtures as F
from ixcalc.documents import cert_to_json, dumps
from ixcalc.programs import EXIT, Call, execute_across, synth_server
from ixcalc.simulation import check_sim, greatest_sim


def main() -> None:
    stack, array = F.stack(), F.array()
    rep = F.stack_array_relation()
    print(f"representation relates {len(rep)} (stack, array) pairs")

    cx = check_sim(stack, array, rep, "linear")
    print(f"one array command per stack command? no: {cx.describe(stack, array)}")

    cert = check_sim(stack, array, rep, "general")
    print(f"general simulation certified with {len(cert.witnesses)} witnesses")
    wit = cert.witnesses[(0, 0, stack.command_index("[]", "push1"))]
    doc = cert_to_json(cert)
    first = next(x for x in doc["witnesses"] if x["high"] == "[]" and x["command"] == "push1")
    print(f"push1 on [] over c0:00 becomes:\n{dumps(first['program'])}", end="")
    print(f"tree with {len(wit.exits)} exit(s)")

    print(f"representation inside the greatest simulation: {rep <= greatest_sim(stack, array, 'general')}")

    # push 1, push 0, pop, pop
    p1 = stack.command_index("[]", "push1")
    p0 = stack.command_index("[1]", "push0")
    pop10 = stack.command_index("[10]", "pop")
    pop1 = stack.command_index("[1]", "pop")
    program = Call(p1, (Call(p0, (Call(pop10, (Call(pop1, (EXIT,)),)),)),))
    server = synth_server(array, array.source.full())
    (fh, fl), high, low = execute_across(cert, "[]", "c0:00", program, server)

    hs, ls = stack.source.states, array.source.states
    print("stack view:")
    for step in high.steps:
        c = stack.table[step.state][step.command]
        print(f"  {hs[step.state]:5} {c.name:6} -> {c.responses[step.response]:3} {hs[step.next]}")
    print("array view:")
    for step in low.steps:
        c = array.table[step.state][step.command]
        print(f"  {ls[step.state]:6} {c.name:9} -> {c.responses[step.response]:3} {ls[step.next]}")
    print(f"ended in stack {hs[fh]} over array {ls[fl]}")


if __name__ == "__main__":
    main()
