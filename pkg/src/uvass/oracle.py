"""Ground-truth run semantics and brute-force oracles.

``count_accepting_runs`` enumerates accepting runs of a single word exactly.
Epsilon segments are explored as domination-free paths: once a configuration
componentwise-dominates an earlier same-state configuration of the segment,
the branch is cut and resolved exactly.  If the pumped family of the detected
cycle still reaches acceptance on the remaining suffix the word has
infinitely many accepting runs (UNBOUNDED, by language monotonicity);
otherwise the branch contributes nothing.  The cut makes the search finite
(Dickson's lemma plus finite branching), so the oracle is exact-or-UNBOUNDED
with no tuning needed; an optional epsilon budget is still honoured and trips
as an explicit error.
"""

from __future__ import annotations

from itertools import product as iter_product
from typing import Iterator, Optional, Union

from .coverability import membership
from .model import (
    Configuration,
    ModelError,
    Run,
    Transition,
    Vass,
    Word,
    check_word,
)

__all__ = [
    "UNBOUNDED",
    "RunCount",
    "EpsBudgetError",
    "InvalidRun",
    "apply_run",
    "run_word",
    "count_accepting_runs",
    "iter_accepting_runs",
    "distinct_run_pair",
    "brute_universal_up_to",
    "brute_unambiguous_up_to",
    "words_up_to",
]


class _UnboundedCount:
    """Marker for 'infinitely many accepting runs'."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = _UnboundedCount()
RunCount = Union[int, _UnboundedCount]


class EpsBudgetError(RuntimeError):
    """The epsilon-segment budget tripped before the search was exhausted."""


class UnboundedRunsError(Exception):
    """A pumpable epsilon cycle with an accepting continuation was found:
    the word has infinitely many accepting runs."""


class InvalidRun(ValueError):
    """A run is not applicable: broken state chain or counter underflow."""

    def __init__(self, step: int, message: str, coordinate: Optional[int] = None):
        super().__init__(f"step {step}: {message}")
        self.step = step
        self.coordinate = coordinate


def apply_run(v: Vass, start: Configuration, run: Run) -> Configuration:
    """Apply a transition sequence, checking chaining and non-negativity."""
    state = start.state
    counters = list(start.counters)
    for j, tid in enumerate(run, start=1):
        t = v.transitions[tid]
        if t.src != state:
            raise InvalidRun(j, f"transition {tid} leaves {t.src!r}, run is at {state!r}")
        for i, e in enumerate(t.effect):
            counters[i] += e
            if counters[i] < 0:
                raise InvalidRun(j, f"counter {i} drops below zero", coordinate=i)
        state = t.dst
    return Configuration(state, tuple(counters))


def run_word(v: Vass, run: Run) -> Word:
    """The word a run reads: its label projection with epsilons dropped."""
    return tuple(t.label for t in (v.transitions[tid] for tid in run)
                 if t.label is not None)


def _project(v: Vass, keep: tuple[int, ...]) -> Vass:
    """Drop every counter coordinate not listed in ``keep``."""
    transitions = tuple(
        Transition(t.src, t.label, tuple(t.effect[i] for i in keep), t.dst)
        for t in v.transitions
    )
    return Vass(len(keep), v.alphabet, v.states, v.initial, v.finals, transitions)


class _RunSearch:
    """Depth-first enumeration of accepting runs of one word, in lexicographic
    TransitionId order (a run that is a prefix of another comes first)."""

    def __init__(self, v: Vass, word: Word, start: Configuration,
                 eps_budget: Optional[int], max_dominations: int):
        self.v = v
        self.word = word
        self.start = start
        self.eps_budget = eps_budget
        self.max_dominations = max_dominations
        self._pump_cache: dict[tuple, bool] = {}

    def runs(self) -> Iterator[Run]:
        segment = [self.start]
        yield from self._explore(self.start, 0, segment, 0, [])

    def _explore(self, config: Configuration, pos: int,
                 segment: list[Configuration], dominations: int,
                 prefix: list[int]) -> Iterator[Run]:
        v = self.v
        if pos == len(self.word) and v.is_final(config.state):
            yield tuple(prefix)
        for tid in v.outgoing[config.state]:
            t = v.transitions[tid]
            if t.label is None:
                counters = tuple(c + e for c, e in zip(config.counters, t.effect))
                if any(c < 0 for c in counters):
                    continue
                succ = Configuration(t.dst, counters)
                dominated = next(
                    (old for old in segment if succ.dominates(old)), None
                )
                used = dominations
                if dominated is not None:
                    used += 1
                    if used > self.max_dominations:
                        # In the exact search (max_dominations 0) the cut is
                        # resolved: pump-to-acceptance means infinitude.  The
                        # relaxed searches only fish for witness runs and may
                        # prune silently.
                        if self.max_dominations == 0 and \
                                self._pump_reaches_acceptance(dominated, succ, pos):
                            raise UnboundedRunsError()
                        continue
                if self.eps_budget is not None and len(segment) > self.eps_budget:
                    raise EpsBudgetError(
                        f"epsilon segment exceeded budget {self.eps_budget}"
                    )
                segment.append(succ)
                prefix.append(tid)
                yield from self._explore(succ, pos, segment, used, prefix)
                prefix.pop()
                segment.pop()
            elif pos < len(self.word) and t.label == self.word[pos]:
                counters = tuple(c + e for c, e in zip(config.counters, t.effect))
                if any(c < 0 for c in counters):
                    continue
                succ = Configuration(t.dst, counters)
                prefix.append(tid)
                yield from self._explore(succ, pos + 1, [succ], 0, prefix)
                prefix.pop()

    def _pump_reaches_acceptance(self, older: Configuration,
                                 newer: Configuration, pos: int) -> bool:
        """Does any pumping of the cycle older -> newer accept the suffix?

        The pumped family is older + k * effect with effect >= 0.  Strictly
        growing coordinates never block and acceptance only looks at the
        state, so they can be projected away; membership of the suffix in the
        projected system from the projected configuration decides existence
        for some k exactly.
        """
        effect = tuple(b - a for a, b in zip(older.counters, newer.counters))
        keep = tuple(i for i, e in enumerate(effect) if e == 0)
        suffix = self.word[pos:]
        key = (keep, newer.state,
               tuple(newer.counters[i] for i in keep), len(suffix))
        cached = self._pump_cache.get(key)
        if cached is not None:
            return cached
        if len(keep) == self.v.dim:
            result = membership(self.v, suffix, start=newer)
        else:
            projected = _project(self.v, keep)
            start = Configuration(newer.state,
                                  tuple(newer.counters[i] for i in keep))
            result = membership(projected, suffix, start=start)
        self._pump_cache[key] = result
        return result


def iter_accepting_runs(
    v: Vass,
    word: Word,
    start: Optional[Configuration] = None,
    eps_budget: Optional[int] = None,
) -> Iterator[Run]:
    """Yield the accepting runs of ``word`` in lexicographic order.

    Raises ``_UnboundedRuns`` internally through ``count_accepting_runs``;
    callers that need resilience against infinitude should use
    ``count_accepting_runs`` or ``distinct_run_pair`` instead.
    """
    word = check_word(v, word)
    if start is None:
        start = v.initial_configuration()
    yield from _RunSearch(v, word, start, eps_budget, 0).runs()


def count_accepting_runs(
    v: Vass,
    word: Word,
    start: Optional[Configuration] = None,
    eps_budget: Optional[int] = None,
) -> RunCount:
    """Exact number of distinct accepting runs reading ``word`` from ``start``.

    Returns UNBOUNDED when a non-negative-effect epsilon cycle lies on a path
    that extends to an accepting run of the word, in which case the true
    count is infinite.
    """
    try:
        return sum(1 for _ in iter_accepting_runs(v, word, start, eps_budget))
    except _UnboundedRuns:
        return UNBOUNDED


_RELAXATION_LIMIT = 64


def distinct_run_pair(
    v: Vass,
    word: Word,
    start: Optional[Configuration] = None,
    eps_budget: Optional[int] = None,
) -> Optional[tuple[Run, Run]]:
    """First two distinct accepting runs of a word, if it has at least two.

    When the count is UNBOUNDED the domination cut may hide the extra runs,
    so the cut is relaxed step by step until two materialise; each relaxation
    level is still a finite search.
    """
    word = check_word(v, word)
    if start is None:
        start = v.initial_configuration()
    for allowed in range(_RELAXATION_LIMIT + 1):
        found: list[Run] = []
        search = _RunSearch(v, word, start, eps_budget, allowed)
        try:
            for run in search.runs():
                found.append(run)
                if len(found) == 2:
                    return found[0], found[1]
        except _UnboundedRuns:
            continue  # pumpable: relax the cut and retry
        if allowed == 0 and len(found) < 2:
            return None  # exact search was conclusive: fewer than two runs
    raise EpsBudgetError(
        "could not materialise two runs within the relaxation limit"
    )


def words_up_to(alphabet: tuple[str, ...], max_len: int) -> Iterator[Word]:
    """All words of length <= max_len in length-lexicographic order."""
    for length in range(max_len + 1):
        for word in iter_product(alphabet, repeat=length):
            yield word


def brute_universal_up_to(
    v: Vass, max_len: int, eps_budget: Optional[int] = None
) -> Optional[Word]:
    """Length-lexicographically least missing word of length <= max_len."""
    for word in words_up_to(v.alphabet, max_len):
        if count_accepting_runs(v, word, eps_budget=eps_budget) == 0:
            return word
    return None


def brute_unambiguous_up_to(
    v: Vass, max_len: int, eps_budget: Optional[int] = None
) -> Optional[tuple[Word, Run, Run]]:
    """Least word of length <= max_len with two accepting runs, plus the runs."""
    for word in words_up_to(v.alphabet, max_len):
        count = count_accepting_runs(v, word, eps_budget=eps_budget)
        if count is UNBOUNDED or (isinstance(count, int) and count >= 2):
            pair = distinct_run_pair(v, word, eps_budget=eps_budget)
            if pair is None:
                raise AssertionError("count >= 2 but no run pair materialised")
            return word, pair[0], pair[1]
    return None
