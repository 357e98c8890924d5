"""Shared record type for brute-force verification sweeps."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification sweep: what was checked, over how many
    cases, how many falsifications (zero unless something is wrong), and
    the extremal statistics that show how much room the bound has."""

    lemma: str
    parameters: dict
    cases_tested: int
    falsifications: int
    max_ratio: float
    extremal: dict

    def to_record(self) -> dict:
        return {
            "lemma": self.lemma,
            "parameters": self.parameters,
            "cases_tested": self.cases_tested,
            "falsifications": self.falsifications,
            "max_ratio": self.max_ratio,
            "extremal": self.extremal,
        }
