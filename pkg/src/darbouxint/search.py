"""Exhaustive search for invariant hypersurfaces over small prime fields."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

from .algebra import FieldSpec, is_irreducible, monic_candidates
from .darboux import form_invariant
from .errors import BadArguments, BudgetExceeded
from .exterior import DiffForm, d

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    max_degree: int
    field: FieldSpec
    max_candidates: int = 100_000

    def candidate_count(self, n: int) -> int:
        return self.field.characteristic ** comb(n + self.max_degree, n)


@dataclass
class SearchResult:
    invariants: list
    skipped_zero_differential: int
    skipped_reducible: int
    examined: int


def search_invariants(omega: DiffForm, budget: SearchBudget) -> SearchResult:
    if budget.field.characteristic == 0:
        raise BadArguments("invariant search runs over prime fields only")
    if omega.field != budget.field:
        raise BadArguments("budget field differs from the form's field")
    if budget.max_degree < 1:
        raise BadArguments("max_degree must be at least 1")
    n = omega.nvars
    count = budget.candidate_count(n)
    if count > budget.max_candidates:
        raise BudgetExceeded(f"{count} candidates exceed the cap of {budget.max_candidates}")
    found = []
    zero_diff = reducible = examined = 0
    for F in monic_candidates(omega.field, omega.vars, budget.max_degree):
        examined += 1
        if d(F).is_zero():
            zero_diff += 1
            continue
        if is_irreducible(F) is not True:
            reducible += 1
            continue
        if form_invariant(omega, F).verified:
            found.append(F)
    log.debug("search: %d examined, %d invariant", examined, len(found))
    return SearchResult(found, zero_diff, reducible, examined)


def enumerate_invariants(omega: DiffForm, budget: SearchBudget):
    """Monic irreducible invariants of degree <= ``budget.max_degree``, in a fixed order."""
    return search_invariants(omega, budget).invariants
