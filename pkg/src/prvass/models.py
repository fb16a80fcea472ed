"""Syntax and small-step semantics for the two machine models.

A stack-and-counter system has a finite control, one non-negative counter
with increment/decrement/reset, and a pushdown stack; transitions carry a
whole sequence of instructions that fires atomically.  A two-counter
machine has two non-negative counters with increment, decrement, and
zero-test.  Both step relations are partial: an instruction that would
drive a counter negative or pop the wrong symbol simply does not fire.
"""

from __future__ import annotations

from dataclasses import dataclass

PUSH = "push"
POP = "pop"
INC_KIND = "inc"
DEC_KIND = "dec"
RESET_KIND = "reset"

INSTRUCTION_KINDS = (PUSH, POP, INC_KIND, DEC_KIND, RESET_KIND)

MINSKY_OPS = ("inc", "dec", "zero")


@dataclass(frozen=True)
class Instruction:
    """One stack or counter instruction; ``symbol`` is set only for push/pop."""

    kind: str
    symbol: str | None = None

    def __str__(self) -> str:
        if self.kind in (PUSH, POP):
            return f"{self.kind}({self.symbol})"
        return self.kind


def push(symbol: str) -> Instruction:
    return Instruction(PUSH, symbol)


def pop(symbol: str) -> Instruction:
    return Instruction(POP, symbol)


INC = Instruction(INC_KIND)
DEC = Instruction(DEC_KIND)
RESET = Instruction(RESET_KIND)


@dataclass(frozen=True)
class Action:
    """A control transition whose instruction body fires atomically."""

    source: str
    body: tuple[Instruction, ...]
    target: str


@dataclass(frozen=True)
class Prvass:
    """A stack-and-counter system: states, stack alphabet, actions.

    Declaration order of states and actions is preserved; it fixes the
    successor order and hence every trace and verdict downstream.
    """

    states: tuple[str, ...]
    stack_alphabet: tuple[str, ...]
    actions: tuple[Action, ...]


@dataclass(frozen=True)
class Configuration:
    """A control state, a stack word (leftmost = bottom), and the counter."""

    state: str
    stack: tuple[str, ...]
    counter: int

    def __post_init__(self) -> None:
        if self.counter < 0:
            raise ValueError(f"negative counter in configuration: {self.counter}")


@dataclass(frozen=True)
class MinskyAction:
    source: str
    counter_index: int
    op: str
    target: str


@dataclass(frozen=True)
class MinskyMachine:
    """A two-counter machine with designated source and target states."""

    states: tuple[str, ...]
    actions: tuple[MinskyAction, ...]
    source: str
    target: str


@dataclass(frozen=True)
class MinskyConfig:
    state: str
    counters: tuple[int, int]

    def __post_init__(self) -> None:
        if self.counters[0] < 0 or self.counters[1] < 0:
            raise ValueError(f"negative counter in configuration: {self.counters}")


StackCounter = tuple[tuple[str, ...], int]


def step_instruction(sc: StackCounter, instr: Instruction) -> StackCounter | None:
    """Apply one instruction to a (stack, counter) pair.

    Returns None when the instruction does not fire: pop with the wrong (or
    no) top symbol, or decrement at counter zero.  The counter is never
    clamped; an undefined step is simply absent.
    """
    stack, counter = sc
    kind = instr.kind
    if kind == PUSH:
        return stack + (instr.symbol,), counter
    if kind == POP:
        if stack and stack[-1] == instr.symbol:
            return stack[:-1], counter
        return None
    if kind == INC_KIND:
        return stack, counter + 1
    if kind == DEC_KIND:
        if counter >= 1:
            return stack, counter - 1
        return None
    if kind == RESET_KIND:
        return stack, 0
    raise ValueError(f"unknown instruction kind: {instr.kind!r}")


def step_sequence(sc: StackCounter, body: tuple[Instruction, ...]) -> StackCounter | None:
    """Fold step_instruction over a body, left to right; None if any step is undefined."""
    cur = sc
    for instr in body:
        cur = step_instruction(cur, instr)
        if cur is None:
            return None
    return cur


def successors(sys: Prvass, cfg: Configuration) -> list[tuple[Action, Configuration]]:
    """All one-action successors of cfg, in action declaration order.

    Intermediate stack/counter values inside an action body are not
    observable; an action either fires completely or not at all.  An empty
    list marks a dead end, which is legal.
    """
    out = []
    for action in sys.actions:
        if action.source != cfg.state:
            continue
        res = step_sequence((cfg.stack, cfg.counter), action.body)
        if res is not None:
            stack, counter = res
            out.append((action, Configuration(action.target, stack, counter)))
    return out


def minsky_successors(m: MinskyMachine, cfg: MinskyConfig) -> list[tuple[MinskyAction, MinskyConfig]]:
    """All firable two-counter steps from cfg, in action declaration order.

    A zero-test fires only when the tested counter is 0; a decrement only
    when it is at least 1.  The untested counter is unchanged.
    """
    out = []
    n0, n1 = cfg.counters
    for action in m.actions:
        if action.source != cfg.state:
            continue
        value = cfg.counters[action.counter_index]
        if action.op == "inc":
            new_value = value + 1
        elif action.op == "dec":
            if value == 0:
                continue
            new_value = value - 1
        elif action.op == "zero":
            if value != 0:
                continue
            new_value = 0
        else:
            raise ValueError(f"unknown counter op: {action.op!r}")
        counters = (new_value, n1) if action.counter_index == 0 else (n0, new_value)
        out.append((action, MinskyConfig(action.target, counters)))
    return out


@dataclass(frozen=True)
class Diagnostic:
    """One well-formedness violation; diagnostics are data, not exceptions."""

    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


def _validate_prvass(sys: Prvass) -> list[Diagnostic]:
    diags = []
    states = set(sys.states)
    alphabet = set(sys.stack_alphabet)
    if len(states) != len(sys.states):
        diags.append(Diagnostic("states", "duplicate state declaration"))
    if len(alphabet) != len(sys.stack_alphabet):
        diags.append(Diagnostic("stack", "duplicate stack symbol declaration"))
    for i, action in enumerate(sys.actions):
        where = f"action[{i}] {action.source} -> {action.target}"
        if action.source not in states:
            diags.append(Diagnostic(where, f"unknown source state {action.source!r}"))
        if action.target not in states:
            diags.append(Diagnostic(where, f"unknown target state {action.target!r}"))
        for j, instr in enumerate(action.body):
            if instr.kind not in INSTRUCTION_KINDS:
                diags.append(Diagnostic(where, f"instruction {j}: unknown kind {instr.kind!r}"))
            elif instr.kind in (PUSH, POP):
                if instr.symbol not in alphabet:
                    diags.append(
                        Diagnostic(where, f"instruction {j}: symbol {instr.symbol!r} not in stack alphabet")
                    )
            elif instr.symbol is not None:
                diags.append(Diagnostic(where, f"instruction {j}: stray symbol on {instr.kind}"))
    return diags


def _validate_minsky(m: MinskyMachine) -> list[Diagnostic]:
    diags = []
    states = set(m.states)
    if len(states) != len(m.states):
        diags.append(Diagnostic("states", "duplicate state declaration"))
    if m.source not in states:
        diags.append(Diagnostic("init", f"unknown initial state {m.source!r}"))
    if m.target not in states:
        diags.append(Diagnostic("final", f"unknown final state {m.target!r}"))
    for i, action in enumerate(m.actions):
        where = f"action[{i}] {action.source} -> {action.target}"
        if action.source not in states:
            diags.append(Diagnostic(where, f"unknown source state {action.source!r}"))
        if action.target not in states:
            diags.append(Diagnostic(where, f"unknown target state {action.target!r}"))
        if action.counter_index not in (0, 1):
            diags.append(Diagnostic(where, f"counter index {action.counter_index!r} not 0 or 1"))
        if action.op not in MINSKY_OPS:
            diags.append(Diagnostic(where, f"unknown counter op {action.op!r}"))
    return diags


def validate(sys: Prvass | MinskyMachine) -> list[Diagnostic]:
    """All invariant violations of a system; empty list iff well-formed."""
    if isinstance(sys, Prvass):
        return _validate_prvass(sys)
    if isinstance(sys, MinskyMachine):
        return _validate_minsky(sys)
    raise TypeError(f"cannot validate {type(sys).__name__}")
