"""Bounded exhaustive exploration, trace replay, and the differential harness.

Coverability of a target state and reachability of a target counter pair
are both undecidable in general, so every search here is bounded and the
verdicts are honest about it: exhausted_no_cover is only reported when the
frontier emptied and no successor was ever pruned by a bound, otherwise
the outcome is bounds_hit.  Searches are breadth-first with a visited set
keyed on the full configuration, which makes witnesses minimal in action
count and results deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .models import (
    Configuration,
    MinskyConfig,
    MinskyMachine,
    Prvass,
    minsky_successors,
    successors,
)

COVERED = "covered"
EXHAUSTED_NO_COVER = "exhausted_no_cover"
BOUNDS_HIT = "bounds_hit"


@dataclass(frozen=True)
class Bounds:
    """Pruning limits for a bounded search.

    max_steps bounds the search depth in action firings, max_stack and
    max_counter cap individual configurations, and max_visited is the
    global budget on distinct configurations.  Any successor dropped by a
    limit permanently downgrades a would-be exhaustion claim to bounds_hit.
    """

    max_steps: int = 1_000_000
    max_stack: int = 64
    max_counter: int = 10_000
    max_visited: int = 1_000_000

    def __post_init__(self) -> None:
        for name in ("max_steps", "max_stack", "max_counter", "max_visited"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    def doubled(self) -> "Bounds":
        return Bounds(
            self.max_steps * 2, self.max_stack * 2, self.max_counter * 2, self.max_visited * 2
        )


@dataclass(frozen=True)
class SearchStats:
    visited: int
    frontier_peak: int
    elapsed: float


@dataclass(frozen=True)
class Trace:
    """A replayable witness: a start configuration and the fired steps."""

    start: object
    steps: tuple


@dataclass(frozen=True)
class Verdict:
    outcome: str
    trace: Trace | None
    stats: SearchStats


def _bfs(start, expand, is_target, prune, bounds: Bounds, check, threads: int):
    """Layered BFS core shared by all searches.

    expand(cfg) yields (action, successor) pairs in a deterministic order;
    layers may be expanded by a thread pool, but successors are merged in
    (predecessor, action) order, so results never depend on thread count.
    check, when given, is called on every dequeued configuration.
    """
    t0 = time.perf_counter()
    parents: dict = {start: None}
    layer = [start]
    pruned = False
    frontier_peak = 1
    depth = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while layer:
            for cfg in layer:
                if check is not None:
                    check(cfg)
                if is_target(cfg):
                    steps = []
                    cur = cfg
                    while parents[cur] is not None:
                        prev, action = parents[cur]
                        steps.append((action, cur))
                        cur = prev
                    steps.reverse()
                    stats = SearchStats(len(parents), frontier_peak, time.perf_counter() - t0)
                    return COVERED, Trace(start, tuple(steps)), stats
            if depth == 0 and prune(start):
                # the start configuration itself violates a cap: nothing can
                # be expanded honestly
                pruned = True
                break
            if depth >= bounds.max_steps:
                pruned = True
                break
            if pool is not None:
                expansions = list(pool.map(expand, layer))
            else:
                expansions = [expand(cfg) for cfg in layer]
            next_layer = []
            for cfg, succs in zip(layer, expansions):
                for action, succ in succs:
                    if succ in parents:
                        continue
                    if prune(succ):
                        pruned = True
                        continue
                    if len(parents) >= bounds.max_visited:
                        pruned = True
                        continue
                    parents[succ] = (cfg, action)
                    next_layer.append(succ)
            depth += 1
            frontier_peak = max(frontier_peak, len(next_layer))
            layer = next_layer
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    stats = SearchStats(len(parents), frontier_peak, time.perf_counter() - t0)
    return (BOUNDS_HIT if pruned else EXHAUSTED_NO_COVER), None, stats


def _prvass_expander(sys: Prvass):
    interned: dict = {}

    def expand(cfg):
        out = []
        for action, succ in successors(sys, cfg):
            stack = interned.setdefault(succ.stack, succ.stack)
            if stack is not succ.stack:
                succ = Configuration(succ.state, stack, succ.counter)
            out.append((action, succ))
        return out

    return expand


def bounded_cover(
    sys: Prvass,
    start: Configuration,
    target: str,
    b: Bounds,
    check: Callable | None = None,
    threads: int = 1,
) -> Verdict:
    """Breadth-first coverability: is any configuration with the target state reachable?

    Returns covered with a minimal action-count witness the moment a target
    configuration is dequeued, exhausted_no_cover only when the full
    reachable set within bounds was enumerated without pruning, and
    bounds_hit otherwise.  Identical inputs give identical verdicts and
    traces regardless of the thread count.
    """
    state_set = set(sys.states)
    if target not in state_set:
        raise ValueError(f"target state {target!r} not in the system")
    if start.state not in state_set:
        raise ValueError(f"start state {start.state!r} not in the system")

    def prune(cfg):
        return len(cfg.stack) > b.max_stack or cfg.counter > b.max_counter

    outcome, trace, stats = _bfs(
        start, _prvass_expander(sys), lambda c: c.state == target, prune, b, check, threads
    )
    return Verdict(outcome, trace, stats)


def minsky_bounded_reach(
    m: MinskyMachine, b: Bounds, check: Callable | None = None, threads: int = 1
) -> Verdict:
    """Bounded search for the exact configuration (target, 0, 0) from (source, 0, 0)."""
    start = MinskyConfig(m.source, (0, 0))
    goal = MinskyConfig(m.target, (0, 0))

    def prune(cfg):
        return cfg.counters[0] > b.max_counter or cfg.counters[1] > b.max_counter

    outcome, trace, stats = _bfs(
        start, lambda c: minsky_successors(m, c), lambda c: c == goal, prune, b, check, threads
    )
    return Verdict(outcome, trace, stats)


@dataclass(frozen=True)
class ReachableSet:
    """The configurations discovered by a bounded closure, in discovery order."""

    configs: tuple
    complete: bool
    stats: SearchStats


def reachable_set(
    sys: Prvass | MinskyMachine,
    start,
    b: Bounds,
    check: Callable | None = None,
    threads: int = 1,
) -> ReachableSet:
    """Enumerate every configuration reachable within bounds.

    complete is True only when the closure finished without any pruning
    event, i.e. the returned tuple really is the whole reachable set.
    """
    if isinstance(sys, Prvass):
        expand = _prvass_expander(sys)

        def prune(cfg):
            return len(cfg.stack) > b.max_stack or cfg.counter > b.max_counter

    else:
        def expand(cfg):
            return minsky_successors(sys, cfg)

        def prune(cfg):
            return cfg.counters[0] > b.max_counter or cfg.counters[1] > b.max_counter

    seen = []

    def record(cfg):
        seen.append(cfg)
        if check is not None:
            check(cfg)

    outcome, _, stats = _bfs(start, expand, lambda c: False, prune, b, record, threads)
    return ReachableSet(tuple(seen), outcome == EXHAUSTED_NO_COVER, stats)


def replay_trace(sys: Prvass | MinskyMachine, tr: Trace) -> bool:
    """Whether every step of the trace is reproduced by the successor relation."""
    return replay_failure_index(sys, tr) is None


def replay_failure_index(sys: Prvass | MinskyMachine, tr: Trace) -> int | None:
    """Index of the first step the successor relation cannot reproduce; None if all replay.

    Steps whose action reference is absent (e.g. traces loaded from a file)
    are accepted when any action produces the recorded configuration.
    """
    succ_fn = successors if isinstance(sys, Prvass) else minsky_successors
    cur = tr.start
    for i, (action, cfg) in enumerate(tr.steps):
        candidates = succ_fn(sys, cur)
        if action is None:
            ok = any(c == cfg for _, c in candidates)
        else:
            ok = (action, cfg) in candidates
        if not ok:
            return i
        cur = cfg
    return None


@dataclass(frozen=True)
class DifferentialReport:
    """Verdicts of the two-counter machine and its compiled system, side by side.

    status is agree when both sides are definitive and match, disagree when
    both are definitive and differ (which would be a bug in the
    construction), and inconclusive when either side hit its bounds.
    """

    minsky_verdict: Verdict
    prvass_verdict: Verdict
    status: str
    compiled: object


def differential_check(
    m: MinskyMachine, b_minsky: Bounds, b_prvass: Bounds, threads: int = 1
) -> DifferentialReport:
    """Run both sides of the reduction and compare the verdicts."""
    from .reduction import compile_machine

    compiled = compile_machine(m)
    mv = minsky_bounded_reach(m, b_minsky, threads=threads)
    pv = bounded_cover(
        compiled.system,
        Configuration(compiled.start, (), 0),
        compiled.cover_target,
        b_prvass,
        threads=threads,
    )
    if mv.outcome == BOUNDS_HIT or pv.outcome == BOUNDS_HIT:
        status = "inconclusive"
    elif (mv.outcome == COVERED) == (pv.outcome == COVERED):
        status = "agree"
    else:
        status = "disagree"
    return DifferentialReport(mv, pv, status, compiled)
