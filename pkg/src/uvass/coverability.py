"""Exact control-state coverability for VASS.

Verdicts come from the classic backward saturation over upward-closed sets
(always terminating by well-quasi-ordering); witness runs come from forward
breadth-first search with domination pruning under a node cap.  Emptiness and
word membership are thin wrappers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .model import Configuration, Run, Transition, Vass, Word, check_word

__all__ = [
    "UpwardBasis",
    "backward_coverable",
    "EmptinessResult",
    "emptiness",
    "membership",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 10**6


class UpwardBasis:
    """Finite antichain of minimal configurations denoting an upward closure."""

    def __init__(self, configs: Iterable[Configuration] = ()):
        self._min: dict[str, list[tuple[int, ...]]] = {}
        for c in configs:
            self.add(c)

    def add(self, config: Configuration) -> bool:
        """Insert, keeping minimality; returns False when already covered."""
        bucket = self._min.setdefault(config.state, [])
        u = config.counters
        for existing in bucket:
            if all(a <= b for a, b in zip(existing, u)):
                return False
        bucket[:] = [x for x in bucket if not all(a <= b for a, b in zip(u, x))]
        bucket.append(u)
        return True

    def covers(self, config: Configuration) -> bool:
        """Is ``config`` in the upward closure?"""
        for u in self._min.get(config.state, ()):
            if all(a <= b for a, b in zip(u, config.counters)):
                return True
        return False

    def is_minimal(self, config: Configuration) -> bool:
        return config.counters in self._min.get(config.state, ())

    def __iter__(self):
        for state, bucket in self._min.items():
            for u in bucket:
                yield Configuration(state, u)

    def __len__(self) -> int:
        return sum(len(b) for b in self._min.values())


def backward_coverable(
    v: Vass,
    targets: UpwardBasis | Iterable[Configuration],
    start: Configuration,
) -> bool:
    """Can some configuration in the upward closure of ``targets`` be reached?

    Saturates the predecessor basis: the minimal predecessor of q(u) under a
    transition with effect e is p(max(u - e, 0)) componentwise, which is the
    least counter vector that both fires the transition and lands at >= u.
    """
    basis = targets if isinstance(targets, UpwardBasis) else UpwardBasis(targets)
    if basis.covers(start):
        return True
    work = deque(basis)
    while work:
        config = work.popleft()
        if not basis.is_minimal(config):
            continue  # superseded by a smaller element since it was queued
        for tid in v.incoming[config.state]:
            t = v.transitions[tid]
            pred = Configuration(
                t.src,
                tuple(max(c - e, 0) for c, e in zip(config.counters, t.effect)),
            )
            if basis.add(pred):
                if pred.state == start.state and all(
                    a <= b for a, b in zip(pred.counters, start.counters)
                ):
                    return True
                work.append(pred)
    return basis.covers(start)


@dataclass(frozen=True)
class EmptinessResult:
    """Language-emptiness verdict with an optional shortest witness run."""

    nonempty: bool
    witness: Optional[Run]
    witness_omitted: bool
    nodes: int

    @property
    def empty(self) -> bool:
        return not self.nonempty


def _forward_witness(
    v: Vass, node_cap: int
) -> tuple[Optional[Run], int, bool]:
    """Shortest accepting run by BFS with domination pruning.

    A freshly generated configuration dominated by an already seen same-state
    configuration is discarded: anything it can cover, the dominating one
    covers with a run that is no longer.  Ties follow TransitionId order, so
    the witness is canonical.
    """
    start = v.initial_configuration()
    if v.is_final(start.state):
        return (), 1, False
    seen: dict[str, list[tuple[int, ...]]] = {start.state: [start.counters]}
    # entries: (configuration, parent index, transition id)
    nodes: list[tuple[Configuration, int, int]] = [(start, -1, -1)]
    frontier = deque([0])
    explored = 1

    def run_to(index: int) -> Run:
        steps: list[int] = []
        while index >= 0:
            _, parent, tid = nodes[index]
            if tid >= 0:
                steps.append(tid)
            index = parent
        return tuple(reversed(steps))

    while frontier:
        node_index = frontier.popleft()
        config = nodes[node_index][0]
        for tid in v.outgoing[config.state]:
            t = v.transitions[tid]
            counters = tuple(c + e for c, e in zip(config.counters, t.effect))
            if any(c < 0 for c in counters):
                continue
            bucket = seen.setdefault(t.dst, [])
            if any(all(a <= b for a, b in zip(counters, x)) for x in bucket):
                continue
            bucket[:] = [x for x in bucket if not all(a <= b for a, b in zip(x, counters))]
            bucket.append(counters)
            nodes.append((Configuration(t.dst, counters), node_index, tid))
            explored += 1
            if v.is_final(t.dst):
                return run_to(len(nodes) - 1), explored, False
            if explored > node_cap:
                return None, explored, True
            frontier.append(len(nodes) - 1)
    return None, explored, False


def emptiness(v: Vass, node_cap: int = DEFAULT_NODE_CAP) -> EmptinessResult:
    """Decide language emptiness; on nonempty, search for a shortest witness.

    The verdict always comes from backward coverability.  If the witness
    search trips the node cap the verdict stands with the witness omitted.
    """
    targets = [Configuration(f, (0,) * v.dim) for f in v.finals]
    if not targets:
        return EmptinessResult(False, None, False, 0)
    if not backward_coverable(v, targets, v.initial_configuration()):
        return EmptinessResult(False, None, False, 0)
    witness, nodes, capped = _forward_witness(v, node_cap)
    return EmptinessResult(True, witness, capped, nodes)


def _word_product(
    v: Vass, word: Word, start: Configuration
) -> tuple[Vass, Configuration, list[Configuration]]:
    """Product with the (|word|+1)-state line automaton tracking the position."""
    n = len(word)
    names = [f"n{i}_w{pos}" for pos in range(n + 1) for i in range(len(v.states))]

    def name_of(state: str, pos: int) -> str:
        return f"n{v.state_index[state]}_w{pos}"

    transitions = []
    for pos in range(n + 1):
        for t in v.transitions:
            if t.label is None:
                transitions.append(Transition(name_of(t.src, pos), None, t.effect,
                                              name_of(t.dst, pos)))
            elif pos < n and t.label == word[pos]:
                transitions.append(Transition(name_of(t.src, pos), None, t.effect,
                                              name_of(t.dst, pos + 1)))
    finals = [name_of(f, n) for f in v.finals]
    product = Vass(v.dim, (), tuple(names), name_of(start.state, 0), tuple(finals),
                   tuple(transitions))
    p_start = Configuration(name_of(start.state, 0), start.counters)
    p_targets = [Configuration(f, (0,) * v.dim) for f in finals]
    return product, p_start, p_targets


def membership(v: Vass, word: Word, start: Optional[Configuration] = None) -> bool:
    """Exact word membership via coverability on the line-automaton product."""
    word = check_word(v, word)
    if start is None:
        start = v.initial_configuration()
    if not v.finals:
        return False
    product, p_start, p_targets = _word_product(v, word, start)
    return backward_coverable(product, p_targets, p_start)
