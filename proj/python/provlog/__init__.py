"""Semiring provenance for Datalog programs."""

from ._provlog import (
    Database,
    Program,
    ProvlogError,
    Semiring,
    check_counterexample,
    circuit,
    entailed,
    load_table_semiring,
    necessary_facts,
    provenance,
    run_matrix,
    semiring,
    trees,
    usable_facts,
)

SEMANTICS = ("at", "nrt", "mdt", "hmdt", "am", "sam")


def load(program_text, facts_text, semiring_id="nat"):
    """Parse a program and an annotated database in one go."""
    return Program.parse(program_text), Database.parse(facts_text, semiring(semiring_id))


__all__ = [
    "Database",
    "Program",
    "ProvlogError",
    "SEMANTICS",
    "Semiring",
    "check_counterexample",
    "circuit",
    "entailed",
    "load",
    "load_table_semiring",
    "necessary_facts",
    "provenance",
    "run_matrix",
    "semiring",
    "trees",
    "usable_facts",
]
