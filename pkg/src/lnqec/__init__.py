"""Quantum error correction from classical codes with phase-error-only ancillas."""

from .codes import ClassicalCode, catalog_get, from_parity_check, is_mds, min_distance
from .scheme import (
    PauliErrorVector,
    Scheme,
    SyndromeTable,
    build_binary,
    build_quaternary,
    build_scheme,
    build_syndrome_table,
    decode,
    dualize,
    ea_parameters,
    propagate_closed_form,
    run_cycle,
    singleton_slack,
    trace_syndrome,
)

__all__ = [
    "ClassicalCode",
    "PauliErrorVector",
    "Scheme",
    "SyndromeTable",
    "build_binary",
    "build_quaternary",
    "build_scheme",
    "build_syndrome_table",
    "catalog_get",
    "decode",
    "dualize",
    "ea_parameters",
    "from_parity_check",
    "is_mds",
    "min_distance",
    "propagate_closed_form",
    "run_cycle",
    "singleton_slack",
    "trace_syndrome",
]
