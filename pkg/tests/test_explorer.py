import pytest

from prvass.explorer import (
    BOUNDS_HIT,
    Bounds,
    COVERED,
    EXHAUSTED_NO_COVER,
    Trace,
    bounded_cover,
    differential_check,
    minsky_bounded_reach,
    reachable_set,
    replay_failure_index,
    replay_trace,
)
from prvass.models import (
    Action,
    Configuration,
    DEC,
    INC,
    MinskyAction,
    MinskyConfig,
    MinskyMachine,
    Prvass,
    push,
    successors,
)
from prvass.reduction import compile_machine

from conftest import load_machine

GENEROUS = Bounds(1_000_000, 64, 10_000, 1_000_000)


def test_single_push_covers_in_one_step():
    sys = Prvass(("s", "t"), ("a",), (Action("s", (push("a"),), "t"),))
    verdict = bounded_cover(sys, Configuration("s", (), 0), "t", GENEROUS)
    assert verdict.outcome == COVERED
    assert len(verdict.trace.steps) == 1
    assert verdict.trace.steps[0][1] == Configuration("t", ("a",), 0)


def test_blocked_decrement_exhausts():
    sys = Prvass(("s", "t"), ("a",), (Action("s", (DEC,), "t"),))
    verdict = bounded_cover(sys, Configuration("s", (), 0), "t", GENEROUS)
    assert verdict.outcome == EXHAUSTED_NO_COVER
    assert verdict.trace is None


def test_start_equal_target_covers_immediately():
    sys = Prvass(("s",), ("a",), ())
    verdict = bounded_cover(sys, Configuration("s", (), 0), "s", GENEROUS)
    assert verdict.outcome == COVERED
    assert verdict.trace.steps == ()


def test_compiled_inc_dec_covers_target():
    compiled = compile_machine(load_machine("inc-dec"))
    verdict = bounded_cover(
        compiled.system, Configuration(compiled.start, (), 0), compiled.cover_target, GENEROUS
    )
    assert verdict.outcome == COVERED
    assert verdict.trace.steps[-1][1].state == compiled.cover_target
    assert replay_trace(compiled.system, verdict.trace)


def test_unknown_target_is_a_precondition_error():
    sys = Prvass(("s",), ("a",), ())
    with pytest.raises(ValueError):
        bounded_cover(sys, Configuration("s", (), 0), "missing", GENEROUS)


def test_minsky_reach_examples():
    inc_dec = load_machine("inc-dec")
    assert minsky_bounded_reach(inc_dec, GENEROUS).outcome == COVERED
    inc_only = load_machine("inc-only")
    assert minsky_bounded_reach(inc_only, GENEROUS).outcome == EXHAUSTED_NO_COVER
    one_zero = MinskyMachine(("s", "t"), (MinskyAction("s", 0, "zero", "t"),), "s", "t")
    verdict = minsky_bounded_reach(one_zero, GENEROUS)
    assert verdict.outcome == COVERED
    assert len(verdict.trace.steps) == 1


def test_minsky_target_is_the_exact_zero_config():
    # (t, 1, 0) is reachable but (t, 0, 0) is not
    m = load_machine("inc-only")
    verdict = minsky_bounded_reach(m, GENEROUS)
    assert verdict.outcome == EXHAUSTED_NO_COVER
    reach = reachable_set(m, MinskyConfig("s", (0, 0)), GENEROUS)
    assert MinskyConfig("t", (1, 0)) in reach.configs


def test_replay_rejects_perturbed_counter():
    compiled = compile_machine(load_machine("inc-dec"))
    verdict = bounded_cover(
        compiled.system, Configuration(compiled.start, (), 0), compiled.cover_target, GENEROUS
    )
    assert replay_trace(compiled.system, verdict.trace)
    steps = list(verdict.trace.steps)
    action, cfg = steps[5]
    steps[5] = (action, Configuration(cfg.state, cfg.stack, cfg.counter + 1))
    broken = Trace(verdict.trace.start, tuple(steps))
    assert not replay_trace(compiled.system, broken)
    assert replay_failure_index(compiled.system, broken) == 5


def test_empty_trace_replays():
    sys = Prvass(("s",), ("a",), ())
    assert replay_trace(sys, Trace(Configuration("s", (), 0), ()))


def test_depth_bound_downgrades_to_bounds_hit():
    # t is unreachable, but with the frontier still alive at the depth cap
    # the search may not claim exhaustion
    sys = Prvass(("s", "t"), ("a",), (Action("s", (INC,), "s"),))
    hit = bounded_cover(sys, Configuration("s", (), 0), "t", Bounds(2, 64, 100, 1000))
    assert hit.outcome == BOUNDS_HIT


def test_stack_cap_downgrades_to_bounds_hit():
    sys = Prvass(("s", "t"), ("a",), (Action("s", (push("a"),), "s"),))
    verdict = bounded_cover(sys, Configuration("s", (), 0), "t", Bounds(10_000, 8, 100, 10_000))
    assert verdict.outcome == BOUNDS_HIT


def test_visited_budget_downgrades_to_bounds_hit():
    sys = Prvass(("s", "t"), ("a",), (Action("s", (INC,), "s"),))
    verdict = bounded_cover(sys, Configuration("s", (), 0), "t", Bounds(10_000, 8, 10_000, 5))
    assert verdict.outcome == BOUNDS_HIT
    assert verdict.stats.visited == 5


def test_exhaustion_is_stable_under_doubled_bounds():
    m = load_machine("zero-gate-blocked")
    compiled = compile_machine(m)
    start = Configuration(compiled.start, (), 0)
    first = bounded_cover(compiled.system, start, compiled.cover_target, GENEROUS)
    second = bounded_cover(compiled.system, start, compiled.cover_target, GENEROUS.doubled())
    assert first.outcome == EXHAUSTED_NO_COVER
    assert second.outcome == EXHAUSTED_NO_COVER
    assert first.stats.visited == second.stats.visited


def _strip_elapsed(verdict):
    return (verdict.outcome, verdict.trace, verdict.stats.visited, verdict.stats.frontier_peak)


def test_search_is_deterministic_and_thread_independent():
    compiled = compile_machine(load_machine("swap"))
    start = Configuration(compiled.start, (), 0)
    runs = [
        bounded_cover(compiled.system, start, compiled.cover_target, GENEROUS, threads=k)
        for k in (1, 1, 3)
    ]
    assert _strip_elapsed(runs[0]) == _strip_elapsed(runs[1]) == _strip_elapsed(runs[2])


def _naive_fixpoint(sys, start):
    seen = {start}
    while True:
        fresh = {succ for cfg in seen for _, succ in successors(sys, cfg)} - seen
        if not fresh:
            return seen
        seen |= fresh


def test_visited_set_matches_naive_fixpoint():
    for name in ("inc-only", "zero-gate-blocked", "unbalanced"):
        compiled = compile_machine(load_machine(name))
        start = Configuration(compiled.start, (), 0)
        reach = reachable_set(compiled.system, start, GENEROUS)
        assert reach.complete
        fixpoint = _naive_fixpoint(compiled.system, start)
        assert set(reach.configs) == fixpoint
        assert len(reach.configs) == len(fixpoint)


def test_no_reachable_configuration_has_negative_counter():
    compiled = compile_machine(load_machine("inc-dec"))
    reach = reachable_set(compiled.system, Configuration(compiled.start, (), 0), GENEROUS)
    assert all(cfg.counter >= 0 for cfg in reach.configs)


def test_differential_examples():
    agree_covered = differential_check(load_machine("inc-dec"), GENEROUS, GENEROUS)
    assert agree_covered.status == "agree"
    assert agree_covered.minsky_verdict.outcome == COVERED
    agree_negative = differential_check(load_machine("inc-only"), GENEROUS, GENEROUS)
    assert agree_negative.status == "agree"
    assert agree_negative.prvass_verdict.outcome == EXHAUSTED_NO_COVER


def test_differential_large_counters_is_inconclusive():
    # the unary encoding of counter value 20 is 2^20 symbols, far beyond the
    # stack cap: expected and documented, not a failure
    report = differential_check(load_machine("big-counter"), GENEROUS, GENEROUS)
    assert report.minsky_verdict.outcome == COVERED
    assert report.prvass_verdict.outcome == BOUNDS_HIT
    assert report.status == "inconclusive"


def test_bounds_must_be_positive():
    with pytest.raises(ValueError):
        Bounds(0, 1, 1, 1)
    with pytest.raises(ValueError):
        Bounds(1, 1, -3, 1)
