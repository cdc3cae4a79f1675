"""
Exception hierarchy for the stability laboratory
Library code raises these; the tools layer turns them into result dictionaries
"""
from typing import List, Optional


class BresseLabError(Exception):
    """Base class for every error the laboratory raises on purpose"""

    exit_code = 1


class ScenarioError(BresseLabError):
    """Scenario failed validation; carries one message per broken invariant"""

    exit_code = 2

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid scenario")


class UsageError(BresseLabError):
    """Bad command-line usage or request outside what the tool supports"""

    exit_code = 2


class FrequencyCapError(UsageError):
    """Requested frequency band exceeds what the mesh resolves"""

    def __init__(self, requested: float, cap: float, suggested_elements: int):
        self.requested = requested
        self.cap = cap
        self.suggested_elements = suggested_elements
        super().__init__(
            f"lambda_max={requested:.6g} exceeds the resolved-frequency cap {cap:.6g}; "
            f"use at least n_elements={suggested_elements}"
        )


class NumericalError(BresseLabError):
    """A numerical step failed (factorization, eigensolver, constraint check)"""

    exit_code = 1


class ResonanceError(NumericalError):
    """i*lambda sits on (or numerically next to) the spectrum of the generator"""

    def __init__(self, lam: float, detail: Optional[str] = None):
        self.lam = lam
        message = f"resonance at lambda={lam:.12g}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InsufficientDataError(NumericalError):
    """Not enough samples (or decades, or positive energies) for a fit"""
