"""Conformance engine for decentralized-identity functional requirements."""

from ._dicheck import (
    canonical_model,
    check,
    coverage,
    derived_facts,
    grade,
    lint,
    passes_grade8,
    prove,
    run_cli,
    scenarios,
    simulate,
    validate_model,
    violations,
)

__all__ = [
    "canonical_model",
    "check",
    "coverage",
    "derived_facts",
    "grade",
    "lint",
    "passes_grade8",
    "prove",
    "run_cli",
    "scenarios",
    "simulate",
    "validate_model",
    "violations",
]
