"""Quantum modal logic toolkit.

Thin re-export of the compiled core.  Formulas and sequents are parsed
from text; models travel as JSON strings in the same format the `qml`
command-line tool reads and writes.
"""

from ._core import (
    Formula,
    MalformedInput,
    NotAdmissible,
    NotDerivable,
    OutsideUniverse,
    ParseError,
    Sequent,
    Structure,
    admissible_closure,
    check_derivation,
    closed_sets,
    collapse,
    decide,
    dump_model,
    enumerate_formula,
    enumerate_structures,
    eval,
    find_failing_world,
    fmp_bound,
    holds_at,
    holds_in,
    load_model,
    ortho_closure,
    ortho_complement,
    parse,
    parse_sequent,
    prove,
    refute,
    render,
    sat_set,
    saturate,
    to_dot,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
