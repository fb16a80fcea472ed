"""Gadget construction and the two-counter-machine-to-stack-system compiler.

The compiled system stores the counter-pair encoding in unary as a block
of a symbols on top of the stack, shaped bot record hash a^n with the
record a word over the six operation symbols.  Each machine action becomes
a forward gadget that weakly applies its operation (the result may fall
short) while appending the operation symbol to the record; once the
machine's final state is reached with encoding 1, a backward phase replays
the record in reverse through backward gadgets that weakly apply the
inverted operations while consuming the record.  Reaching the cover target
then requires both weak phases to connect 1 to 1, which pins the run to
the exact operation semantics.

A gadget's internal wiring is a design choice; only its end-to-end
contract is normative, namely that the set of exit configurations from a
given entry equals the weak-membership predicate of its operation symbol.
gadget_contract_set computes that set exhaustively and is the oracle the
test suite compares against weak_member.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .models import (
    Action,
    Configuration,
    DEC,
    INC,
    MinskyAction,
    MinskyMachine,
    Prvass,
    RESET,
    pop,
    push,
    validate,
)
from .explorer import Bounds, reachable_set
from .relations import ALPHABET, DeltaSymbol, DIV, MULT, minsky_action_to_symbol

BOTTOM = "bot"
MARKER = "hash"
UNARY = "a"

STACK_ALPHABET = (BOTTOM, MARKER, UNARY) + tuple(sym.token for sym in ALPHABET)

FORWARD = "forward"
BACKWARD = "backward"


class InvalidModelError(ValueError):
    """Raised when a machine handed to the compiler fails validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Gadget:
    """A three-state fragment implementing one weak operation on the a-block."""

    entry: str
    exit: str
    internal_states: tuple[str, ...]
    actions: tuple[Action, ...]
    symbol: DeltaSymbol
    direction: str


def build_gadget(sym: DeltaSymbol, direction: str, namer: Callable[[str], str]) -> Gadget:
    """Construct the gadget for one operation symbol.

    The entry loop transfers the a-block into the counter while applying
    the operation's arithmetic, the middle action requires the block to be
    fully consumed (which enforces divisibility side conditions) and pushes
    or pops the record symbol, and the exit loop pays the counter back out
    as a symbols in any amount up to its value before resetting.  That last
    loop is the single source of weakness: the result may undershoot.

    Forward gadgets append the record symbol; backward gadgets consume it
    and run the transposed arithmetic, so a backward multiplication
    consumes a symbols in groups of the factor and a backward division
    produces up to factor-many per consumed symbol.
    """
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"unknown direction: {direction!r}")
    f = sym.factor
    q1, q2, q3 = namer("q1"), namer("q2"), namer("q3")

    consume_one = (pop(UNARY),) + (INC,) * f
    consume_group = (pop(UNARY),) * f + (INC,)
    if sym.kind == MULT:
        loop = consume_one if direction == FORWARD else consume_group
    elif sym.kind == DIV:
        loop = consume_group if direction == FORWARD else consume_one
    else:
        loop = (pop(UNARY),) * f + (INC,) * f

    if direction == FORWARD:
        record = (pop(MARKER), push(sym.token), push(MARKER))
    else:
        record = (pop(MARKER), pop(sym.token), push(MARKER))

    if sym.kind == "test":
        # one middle action per non-zero remainder g, clearing g leftover
        # a symbols while preserving the count in the counter
        middles = tuple(
            Action(q1, (pop(UNARY),) * g + (INC,) * g + record, q2) for g in range(1, f)
        )
    else:
        middles = (Action(q1, record, q2),)

    actions = (
        (Action(q1, loop, q1),)
        + middles
        + (Action(q2, (DEC, push(UNARY)), q2), Action(q2, (RESET,), q3))
    )
    return Gadget(q1, q3, (q2,), actions, sym, direction)


@dataclass(frozen=True)
class NfaTransition:
    source: str
    symbol: DeltaSymbol
    target: str


@dataclass(frozen=True)
class Nfa:
    """A finite automaton over the six operation symbols."""

    states: tuple[str, ...]
    initial: str
    final: str
    transitions: tuple[NfaTransition, ...]


def minsky_to_nfa(m: MinskyMachine) -> Nfa:
    """View a machine as the automaton of its operation-symbol words.

    Same state set, initial and final from the machine's source and target,
    and one transition per action labelled with the symbol the action
    performs on the counter-pair encoding.
    """
    transitions = tuple(
        NfaTransition(a.source, minsky_action_to_symbol(a), a.target) for a in m.actions
    )
    return Nfa(m.states, m.source, m.target, transitions)


def nfa_accepts(nfa: Nfa, word) -> bool:
    """Whether the automaton accepts the given sequence of DeltaSymbols."""
    current = {nfa.initial}
    for sym in word:
        current = {t.target for t in nfa.transitions if t.source in current and t.symbol == sym}
        if not current:
            return False
    return nfa.final in current


@dataclass(frozen=True)
class CompiledSystem:
    """The compiled stack system plus the bookkeeping to read it back.

    start has no incoming actions and cover_target no outgoing ones;
    machine_states_image maps every machine state to its image in the
    compiled control, and bookkeeping maps each glued gadget to the machine
    action it simulates or, for the backward copies, to its symbol.
    """

    system: Prvass
    start: str
    cover_target: str
    machine_states_image: dict
    bookkeeping: dict


def compile_machine(m: MinskyMachine) -> CompiledSystem:
    """Compile a two-counter machine into a stack system with a cover target.

    The compiled system reaches its cover target from (start, empty, 0) iff
    the machine reaches (target, 0, 0) from (source, 0, 0) -- subject, of
    course, to bounded search on both sides.  Structure: an initialization
    action establishes encoding 1; each automaton transition is replaced by
    a fresh forward gadget spliced in with empty-bodied glue actions; an
    equals-one check guards entry to the replay state; one backward gadget
    per operation symbol loops through the replay state; a final action
    fires only on the exact stack bot hash a and empties it.
    """
    diags = validate(m)
    if diags:
        raise InvalidModelError(diags)

    used = set(m.states)

    def fresh(name: str) -> str:
        while name in used:
            name += "'"
        used.add(name)
        return name

    start = fresh("s'")
    replay = fresh("b")
    cover = fresh("t'")

    nfa = minsky_to_nfa(m)
    forward = []
    for i, (tr, origin) in enumerate(zip(nfa.transitions, m.actions)):
        prefix = f"a{i}"
        gadget = build_gadget(
            tr.symbol, FORWARD, lambda role: fresh(f"{prefix}/{tr.symbol.token}/{role}")
        )
        forward.append((tr, gadget, origin))
    backward = []
    for sym in ALPHABET:
        prefix = f"back-{sym.token}"
        gadget = build_gadget(sym, BACKWARD, lambda role: fresh(f"{prefix}/{sym.token}/{role}"))
        backward.append((sym, gadget))

    states = [start]
    states.extend(m.states)
    for _, gadget, _ in forward:
        states.extend((gadget.entry,) + gadget.internal_states + (gadget.exit,))
    states.append(replay)
    for _, gadget in backward:
        states.extend((gadget.entry,) + gadget.internal_states + (gadget.exit,))
    states.append(cover)

    actions = [Action(start, (push(BOTTOM), push(MARKER), push(UNARY)), m.source)]
    for tr, gadget, _ in forward:
        actions.append(Action(tr.source, (), gadget.entry))
        actions.extend(gadget.actions)
        actions.append(Action(gadget.exit, (), tr.target))
    actions.append(
        Action(m.target, (pop(UNARY), pop(MARKER), push(MARKER), push(UNARY)), replay)
    )
    for _, gadget in backward:
        actions.append(Action(replay, (), gadget.entry))
        actions.extend(gadget.actions)
        actions.append(Action(gadget.exit, (), replay))
    actions.append(Action(replay, (pop(UNARY), pop(MARKER), pop(BOTTOM)), cover))

    system = Prvass(tuple(states), STACK_ALPHABET, tuple(actions))
    bookkeeping: dict[Gadget, MinskyAction | DeltaSymbol] = {}
    for _, gadget, origin in forward:
        bookkeeping[gadget] = origin
    for sym, gadget in backward:
        bookkeeping[gadget] = sym
    return CompiledSystem(system, start, cover, {q: q for q in m.states}, bookkeeping)


class GadgetBoundError(RuntimeError):
    """The contract enumeration hit its cap before reaching closure."""


def gadget_contract_set(
    g: Gadget, m: int, record: tuple[str, ...], bound: int
) -> set[tuple[tuple[str, ...], int]]:
    """All (record', n) observable at the gadget exit with counter 0.

    Exhaustively enumerates the configurations reachable from the entry
    with stack bot record hash a^m and counter 0, and collects every exit
    configuration, decomposing its stack back into a record word and an
    a-count.  This is the executable left-hand side of the gadget contract;
    equality with the weak-membership predicate of the gadget's symbol is
    what makes a wiring correct.
    """
    if m < 0:
        raise ValueError(f"entry count must be non-negative, got {m}")
    sys = Prvass(
        (g.entry,) + g.internal_states + (g.exit,), STACK_ALPHABET, g.actions
    )
    start_stack = (BOTTOM,) + tuple(record) + (MARKER,) + (UNARY,) * m
    start = Configuration(g.entry, start_stack, 0)
    bounds = Bounds(
        max_steps=max(bound * 4, 16),
        max_stack=len(start_stack) + bound,
        max_counter=bound,
        max_visited=max(bound * bound, 1024),
    )
    reach = reachable_set(sys, start, bounds)
    if not reach.complete:
        raise GadgetBoundError(
            f"enumeration from {start} exhausted bound {bound} before closure"
        )
    out = set()
    for cfg in reach.configs:
        if cfg.state != g.exit or cfg.counter != 0:
            continue
        stack = cfg.stack
        if not stack or stack[0] != BOTTOM:
            raise GadgetBoundError(f"exit stack lost its bottom symbol: {stack}")
        count = 0
        while count < len(stack) and stack[len(stack) - 1 - count] == UNARY:
            count += 1
        marker_at = len(stack) - 1 - count
        if marker_at < 1 or stack[marker_at] != MARKER:
            raise GadgetBoundError(f"exit stack lost its marker: {stack}")
        out.add((stack[1:marker_at], count))
    return out
