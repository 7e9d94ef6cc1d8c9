"""Finite interaction structures: covers, interiors, client and server
programs, simulations and the topology they induce."""

from __future__ import annotations

from .core import (
    Relation,
    StateSpace,
    Subset,
    TransitionStructure,
    angelic_update,
    compose,
    converse,
    demonic_update,
    identity,
    post_divide,
    pre_divide,
    rtc,
)
from .errors import (
    ContractViolation,
    IxError,
    MalformedProgram,
    MissingWitness,
    ModelError,
    NotCovered,
    NotHomogeneous,
    SizeCapExceeded,
    SpaceMismatch,
)
from .fixpoint import CoverResult, InteriorResult, cover, interior, pos
from .istruct import (
    Command,
    InteractionStructure,
    angelic_product,
    dual,
    factorize,
    from_transition,
    intersection_all,
    localize,
    one_step,
    seq,
    skip,
    tensor,
    union_all,
)
from .modelfile import ModelFile, load_model, parse_model, print_model
from .programs import (
    EXIT,
    Call,
    ClientProgram,
    Exit,
    ServerProgram,
    Trace,
    client_exits,
    execute,
    execute_across,
    synth_client,
    synth_server,
    verify_client,
    verify_server,
)
from .simulation import (
    SimCert,
    SimCounterexample,
    check_sim,
    greatest_sim,
    kleisli_compose,
    saturate,
    sim_compare,
    verify_cert,
)
from .topology import (
    SelfSimulation,
    Verdict,
    bin_down,
    check_continuous_map,
    check_formal_point,
    check_localized,
    continuity_conditions,
    down_closure,
    saturation_preorder,
    up_closure,
)

__version__ = "0.1.0"

__all__ = [
    "angelic_product",
    "angelic_update",
    "bin_down",
    "Call",
    "check_continuous_map",
    "check_formal_point",
    "check_localized",
    "check_sim",
    "client_exits",
    "ClientProgram",
    "Command",
    "compose",
    "continuity_conditions",
    "ContractViolation",
    "converse",
    "cover",
    "CoverResult",
    "demonic_update",
    "down_closure",
    "dual",
    "execute",
    "execute_across",
    "EXIT",
    "Exit",
    "factorize",
    "from_transition",
    "greatest_sim",
    "identity",
    "InteractionStructure",
    "interior",
    "InteriorResult",
    "intersection_all",
    "IxError",
    "kleisli_compose",
    "load_model",
    "localize",
    "MalformedProgram",
    "MissingWitness",
    "ModelError",
    "ModelFile",
    "NotCovered",
    "NotHomogeneous",
    "one_step",
    "parse_model",
    "pos",
    "post_divide",
    "pre_divide",
    "print_model",
    "Relation",
    "rtc",
    "saturate",
    "saturation_preorder",
    "SelfSimulation",
    "seq",
    "ServerProgram",
    "sim_compare",
    "SimCert",
    "SimCounterexample",
    "SizeCapExceeded",
    "skip",
    "SpaceMismatch",
    "StateSpace",
    "Subset",
    "synth_client",
    "synth_server",
    "tensor",
    "Trace",
    "TransitionStructure",
    "union_all",
    "up_closure",
    "Verdict",
    "verify_cert",
    "verify_client",
    "verify_server",
]
