"""Executable semantics for the de Bruijn pi-calculus: proved transitions,
concurrency, residuals with braidings, and causal equivalence of traces."""

from .syntax import (NIL, TAU, Action, BoundOutput, Choice, Input, InputPrefix, Nil, Output,
                     OutputPrefix, Par, Process, Replicate, Restrict, Tau, check_action,
                     check_process, enumerate_processes, magnitude)
from .renaming import (Renaming, apply_to_name, compose, identity, lift, lift_n, pop, push,
                       rename_action, rename_process, renamings_equal, swap)
from .surface import parse, print_action, print_de_bruijn, print_named
from .semantics import (Transition, enumerate_transitions, parse_proof, rename_transition,
                        serialize_proof, validate_transition)
from .concurrency import ConcurrentActions, Shape, BraidKind, Witness, check_concurrent, classify_actions
from .residuation import (BoundBraid, Braiding, apply_braiding, compute_braiding,
                          rename_bound_braid, residual, residual_bound_braid_after_transition,
                          residual_braiding_after_transition, residual_transition_after_bound_braid,
                          residual_transition_after_braiding, reverse)
from .traces import (CausalEquivalence, Trace, apply_composite_braiding, check_causal_equiv,
                     composite_braiding, enumerate_traces, rename_trace, residual_braiding_after_trace,
                     residual_trace_after_braiding, transpose)

__version__ = "0.1.0"
