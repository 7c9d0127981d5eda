"""Core data model for vector addition systems with states (VASS).

A VASS couples a finite control with ``dim`` integer counters; every
transition adds an effect vector and a run must keep all counters
non-negative.  Finite automata are the dim-0 case, which lets the
finite-automaton machinery and the counter machinery share one model.
Values are immutable after construction and safe to share between
concurrent analyses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

__all__ = [
    "EPS_TOKEN",
    "NAME_RE",
    "ModelError",
    "Transition",
    "Configuration",
    "Vass",
    "Word",
    "Run",
    "norm",
    "check_word",
    "fire",
]

# Tokens for state and symbol names.  "eps" is reserved for the empty label.
NAME_RE = re.compile(r"\A[A-Za-z0-9_*]+\Z")
EPS_TOKEN = "eps"

Word = tuple[str, ...]
Run = tuple[int, ...]


class ModelError(ValueError):
    """A structural invariant of the model is violated."""


def _check_name(kind: str, name: object) -> None:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise ModelError(f"bad {kind} name {name!r}: need a token over [A-Za-z0-9_*]")


@dataclass(frozen=True)
class Transition:
    """A labelled edge with a counter effect; label ``None`` encodes epsilon."""

    src: str
    label: Optional[str]
    effect: tuple[int, ...]
    dst: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "effect", tuple(int(e) for e in self.effect))


@dataclass(frozen=True)
class Configuration:
    """A control state together with non-negative counter values."""

    state: str
    counters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counters", tuple(int(c) for c in self.counters))
        if any(c < 0 for c in self.counters):
            raise ModelError(
                f"negative counter in configuration {self.state}{self.counters}"
            )

    def dominates(self, other: "Configuration") -> bool:
        """Componentwise >= with equal state."""
        return self.state == other.state and all(
            a >= b for a, b in zip(self.counters, other.counters)
        )


@dataclass(frozen=True)
class Vass:
    """A VASS (Sigma, d, Q, q0, delta, F) with declaration-order identity.

    The order of ``states``, ``alphabet`` and ``transitions`` is significant:
    algorithms use dense indices assigned by declaration order and the
    position of a transition in ``transitions`` is its TransitionId.  The
    ``finals`` tuple is canonicalised to state declaration order.
    """

    dim: int
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    finals: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", tuple(self.finals))
        object.__setattr__(
            self,
            "transitions",
            tuple(
                t if isinstance(t, Transition) else Transition(*t)
                for t in self.transitions
            ),
        )
        self._validate()
        order = {q: i for i, q in enumerate(self.states)}
        object.__setattr__(
            self, "finals", tuple(sorted(self.finals, key=order.__getitem__))
        )

    def _validate(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ModelError(f"dimension must be a non-negative integer, got {self.dim!r}")
        for s in self.alphabet:
            _check_name("symbol", s)
            if s == EPS_TOKEN:
                raise ModelError(f"{EPS_TOKEN!r} is reserved and cannot be a symbol")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ModelError("duplicate symbol in alphabet")
        if not self.states:
            raise ModelError("at least one state is required")
        for q in self.states:
            _check_name("state", q)
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state name")
        state_set = set(self.states)
        if self.initial not in state_set:
            raise ModelError(f"initial state {self.initial!r} not declared")
        if len(set(self.finals)) != len(self.finals):
            raise ModelError("duplicate final state")
        for q in self.finals:
            if q not in state_set:
                raise ModelError(f"final state {q!r} not declared")
        symbols = set(self.alphabet)
        for i, t in enumerate(self.transitions):
            if t.src not in state_set or t.dst not in state_set:
                raise ModelError(f"transition {i} uses an undeclared state")
            if t.label is not None and t.label not in symbols:
                raise ModelError(f"transition {i} label {t.label!r} not in alphabet")
            if len(t.effect) != self.dim:
                raise ModelError(
                    f"transition {i}: effect arity {len(t.effect)}, expected {self.dim}"
                )

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def final_set(self) -> frozenset[str]:
        return frozenset(self.finals)

    @cached_property
    def outgoing(self) -> dict[str, tuple[int, ...]]:
        """TransitionIds grouped by source state, in TransitionId order."""
        out: dict[str, list[int]] = {q: [] for q in self.states}
        for i, t in enumerate(self.transitions):
            out[t.src].append(i)
        return {q: tuple(ids) for q, ids in out.items()}

    @cached_property
    def incoming(self) -> dict[str, tuple[int, ...]]:
        """TransitionIds grouped by destination state, in TransitionId order."""
        inc: dict[str, list[int]] = {q: [] for q in self.states}
        for i, t in enumerate(self.transitions):
            inc[t.dst].append(i)
        return {q: tuple(ids) for q, ids in inc.items()}

    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, (0,) * self.dim)

    def is_final(self, state: str) -> bool:
        return state in self.final_set


def norm(v: Vass) -> int:
    """Maximal absolute value over all transition-effect entries (0 if none)."""
    return max((abs(e) for t in v.transitions for e in t.effect), default=0)


def check_word(v: Vass, word: Iterable[str]) -> Word:
    """Validate that every symbol of ``word`` belongs to the alphabet."""
    w = tuple(word)
    symbols = set(v.alphabet)
    for a in w:
        if a not in symbols:
            raise ModelError(f"symbol {a!r} not in alphabet")
    return w


def fire(v: Vass, config: Configuration, tid: int) -> Optional[Configuration]:
    """Apply one transition; ``None`` when it is not state- or counter-enabled."""
    t = v.transitions[tid]
    if t.src != config.state:
        return None
    counters = tuple(c + e for c, e in zip(config.counters, t.effect))
    if any(c < 0 for c in counters):
        return None
    return Configuration(t.dst, counters)
