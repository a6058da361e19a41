"""Theorem-level checks over the manifold catalog."""

from .checks import (
    FAIL,
    PASS,
    UNSUPPORTED,
    CatalogRun,
    CounterexampleReport,
    QuotientSpec,
    TheoremReport,
    check_features,
    check_reznikov,
    check_theorem1,
    counterexample_demo,
    run_catalog,
    run_entry,
)

__all__ = [
    "FAIL", "PASS", "UNSUPPORTED", "CatalogRun", "CounterexampleReport", "QuotientSpec",
    "TheoremReport", "check_features", "check_reznikov", "check_theorem1",
    "counterexample_demo", "run_catalog", "run_entry",
]
