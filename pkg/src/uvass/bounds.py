"""Exact big-integer evaluation of the run-length and truncation bounds.

All values are exact integers; they get astronomically large even for tiny
inputs, so reports carry decimal digit counts and callers only ever compare
against them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Vass, norm

__all__ = [
    "rackoff_run_bound",
    "short_run_effect_bound",
    "decrement_bound",
    "truncation_threshold",
    "BoundReport",
    "bounds_report",
]


def _check_params(m: int, dim: int, states: int) -> None:
    if dim < 1:
        raise ValueError("dimension must be at least 1 (dim-0 models are finite automata)")
    if states < 1:
        raise ValueError("state count must be at least 1")
    if m < 0:
        raise ValueError("norm must be non-negative")


def rackoff_run_bound(m: int, dim: int, states: int) -> int:
    """Rackoff bound: a nonempty language has an accepting run of this length.

    Closed form (2n^2(M+1)^2)^((4d)^(d-1)) for norm M, dimension d >= 1 and
    n >= 1 states.
    """
    _check_params(m, dim, states)
    return (2 * states**2 * (m + 1) ** 2) ** ((4 * dim) ** (dim - 1))


def short_run_effect_bound(m: int, dim: int, states: int) -> int:
    """Counter-effect bound of short self-product runs: M * A(M, 2d, 2n^2)."""
    _check_params(m, dim, states)
    return m * rackoff_run_bound(m, 2 * dim, 2 * states**2)


def decrement_bound(m: int, dim: int, states: int) -> int:
    """Largest in-run counter decrement of a universal system: M * (B+1)^d."""
    return m * (short_run_effect_bound(m, dim, states) + 1) ** dim


def truncation_threshold(m: int, dim: int, states: int) -> int:
    """Profile cap at which the finite abstraction is exact for universality.

    Composed route: M * (M * base + 1)^d with
    base = (4n^4(M+1)^2)^((8d)^(2d-1)).
    """
    _check_params(m, dim, states)
    base = (4 * states**4 * (m + 1) ** 2) ** ((8 * dim) ** (2 * dim - 1))
    return m * (m * base + 1) ** dim


def _truncation_threshold_direct(m: int, dim: int, states: int) -> int:
    # Independent single-expression evaluation, kept for cross-checking.
    _check_params(m, dim, states)
    return m * (m * (4 * states**4 * (m + 1) ** 2) ** ((8 * dim) ** (2 * dim - 1)) + 1) ** dim


@dataclass(frozen=True)
class BoundReport:
    """All four bounds for one model, plus their decimal lengths."""

    norm: int
    dim: int
    states: int
    run_bound: int
    effect_bound: int
    decrement_bound: int
    truncation_threshold: int

    @property
    def digit_counts(self) -> dict[str, int]:
        return {
            "run_bound": len(str(self.run_bound)),
            "effect_bound": len(str(self.effect_bound)),
            "decrement_bound": len(str(self.decrement_bound)),
            "truncation_threshold": len(str(self.truncation_threshold)),
        }


def bounds_report(v: Vass) -> BoundReport:
    """Evaluate every bound for a model of dimension >= 1."""
    if v.dim < 1:
        raise ValueError("bounds are defined for dimension >= 1 only")
    m, d, n = norm(v), v.dim, len(v.states)
    return BoundReport(
        norm=m,
        dim=d,
        states=n,
        run_bound=rackoff_run_bound(m, d, n),
        effect_bound=short_run_effect_bound(m, d, n),
        decrement_bound=decrement_bound(m, d, n),
        truncation_threshold=truncation_threshold(m, d, n),
    )
