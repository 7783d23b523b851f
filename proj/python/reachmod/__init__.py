"""Maximal reachability submodules of linear systems over polynomial rings."""

from ._core import (
    Polynomial,
    Ring,
    StateSubmodule,
    SystemFile,
    SystemPair,
    curly_m,
    is_ab_invariant,
    load_system,
    max_reachability,
    module_equal,
    parse_polynomial,
    parse_system,
    pencil_kernel,
    reachable_module,
    run_cli,
    state_submodule,
    verify_certificate,
)

__all__ = [
    "Polynomial",
    "Ring",
    "StateSubmodule",
    "SystemFile",
    "SystemPair",
    "curly_m",
    "is_ab_invariant",
    "load_system",
    "max_reachability",
    "module_equal",
    "parse_polynomial",
    "parse_system",
    "pencil_kernel",
    "reachable_module",
    "run_cli",
    "state_submodule",
    "verify_certificate",
]
