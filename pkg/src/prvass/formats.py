"""Line-oriented file formats for machines, stack systems, and traces.

Both model formats are plain text with '#' comments.  Canonical files
round-trip byte-for-byte through parse and serialize; non-canonical input
(comments, extra blanks) canonicalizes on the first serialize and is
stable from then on.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .models import (
    Action,
    Configuration,
    Instruction,
    MinskyAction,
    MinskyMachine,
    Prvass,
    pop,
    push,
    DEC,
    INC,
    RESET,
)
from .explorer import Trace


class ParseError(ValueError):
    """A syntax error with its position; the message carries both."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class ModelFile:
    """A parsed model file: its kind line plus the declared model.

    init is the optional initial-state declaration a stack-system file may
    carry; machine files keep theirs inside the machine itself.
    """

    kind: str
    machine: MinskyMachine | None = None
    system: Prvass | None = None
    init: str | None = None


_TOKEN = re.compile(r"[^\s:,()#]+$")


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _check_token(token: str, lineno: int, line: str, what: str) -> str:
    if not _TOKEN.match(token):
        raise ParseError(lineno, line.find(token) + 1, f"bad {what} token {token!r}")
    return token


def _key_line(lines, key: str):
    lineno, line = next(lines, (None, None))
    if line is None or not line.strip().startswith(key + ":"):
        raise ParseError(lineno or 0, 1, f"expected a {key!r} line")
    return lineno, line.strip()[len(key) + 1 :].split()


def parse_model_file(text: str) -> ModelFile:
    """Parse either model format, dispatching on the kind line."""
    lines = _significant_lines(text)
    lineno, line = next(lines, (None, None))
    if line is None:
        raise ParseError(1, 1, "empty file: expected a kind line ('minsky' or 'prvass')")
    kind = line.strip()
    if kind == "minsky":
        return ModelFile("minsky", machine=_parse_minsky_body(lines))
    if kind == "prvass":
        system, init = _parse_prvass_body(lines)
        return ModelFile("prvass", system=system, init=init)
    raise ParseError(lineno, 1, f"unknown model kind {kind!r} (expected 'minsky' or 'prvass')")


def _parse_minsky_body(lines) -> MinskyMachine:
    lineno, states = _key_line(lines, "states")
    states = tuple(_check_token(s, lineno, " ".join(states), "state") for s in states)
    lineno, init = _key_line(lines, "init")
    if len(init) != 1:
        raise ParseError(lineno, 1, "expected exactly one initial state")
    lineno, final = _key_line(lines, "final")
    if len(final) != 1:
        raise ParseError(lineno, 1, "expected exactly one final state")
    actions = []
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 4:
            raise ParseError(lineno, 1, f"expected 'source counter op target', got {line.strip()!r}")
        src, idx, op, dst = tokens
        if idx not in ("0", "1"):
            raise ParseError(lineno, line.find(idx) + 1, f"counter index must be 0 or 1, got {idx!r}")
        if op not in ("inc", "dec", "zero"):
            raise ParseError(lineno, line.find(op) + 1, f"op must be inc, dec or zero, got {op!r}")
        actions.append(MinskyAction(src, int(idx), op, dst))
    return MinskyMachine(states, tuple(actions), init[0], final[0])


_ACTION_LINE = re.compile(r"^\s*(\S+)\s+->\s+(\S+)\s+:\s*(.*?)\s*$")
_PUSHPOP = re.compile(r"^(push|pop)\(([^\s:,()#]+)\)$")


def _parse_instruction(token: str, lineno: int, line: str) -> Instruction:
    if token == "inc":
        return INC
    if token == "dec":
        return DEC
    if token == "reset":
        return RESET
    m = _PUSHPOP.match(token)
    if m:
        return push(m.group(2)) if m.group(1) == "push" else pop(m.group(2))
    raise ParseError(lineno, line.find(token) + 1, f"unknown instruction {token!r}")


def _parse_prvass_body(lines) -> tuple[Prvass, str | None]:
    lineno, states = _key_line(lines, "states")
    states = tuple(_check_token(s, lineno, " ".join(states), "state") for s in states)
    lineno, stack = _key_line(lines, "stack")
    stack = tuple(_check_token(s, lineno, " ".join(stack), "stack symbol") for s in stack)
    init = None
    actions = []
    for lineno, line in lines:
        if line.strip().startswith("init:"):
            tokens = line.strip()[5:].split()
            if len(tokens) != 1:
                raise ParseError(lineno, 1, "expected exactly one initial state")
            init = tokens[0]
            continue
        m = _ACTION_LINE.match(line)
        if not m:
            raise ParseError(lineno, 1, f"expected 'source -> target : instructions', got {line.strip()!r}")
        src, dst, rest = m.groups()
        body = []
        if rest:
            for piece in rest.split(","):
                piece = piece.strip()
                if not piece:
                    raise ParseError(lineno, line.find(",") + 1, "empty instruction in list")
                body.append(_parse_instruction(piece, lineno, line))
        actions.append(Action(src, tuple(body), dst))
    return Prvass(states, stack, tuple(actions)), init


def parse_minsky(text: str) -> MinskyMachine:
    mf = parse_model_file(text)
    if mf.kind != "minsky":
        raise ParseError(1, 1, f"expected a minsky file, got kind {mf.kind!r}")
    return mf.machine


def parse_prvass(text: str) -> Prvass:
    mf = parse_model_file(text)
    if mf.kind != "prvass":
        raise ParseError(1, 1, f"expected a prvass file, got kind {mf.kind!r}")
    return mf.system


def serialize_minsky(m: MinskyMachine) -> str:
    lines = [
        "minsky",
        "states: " + " ".join(m.states),
        f"init: {m.source}",
        f"final: {m.target}",
    ]
    for a in m.actions:
        lines.append(f"{a.source} {a.counter_index} {a.op} {a.target}")
    return "\n".join(lines) + "\n"


def serialize_prvass(sys: Prvass, init: str | None = None) -> str:
    lines = [
        "prvass",
        "states: " + " ".join(sys.states),
        "stack: " + " ".join(sys.stack_alphabet),
    ]
    if init is not None:
        lines.append(f"init: {init}")
    for a in sys.actions:
        rendered = ", ".join(str(i) for i in a.body)
        lines.append(f"{a.source} -> {a.target} :" + (f" {rendered}" if rendered else ""))
    return "\n".join(lines) + "\n"


def serialize_model_file(mf: ModelFile) -> str:
    if mf.kind == "minsky":
        return serialize_minsky(mf.machine)
    if mf.kind == "prvass":
        return serialize_prvass(mf.system, mf.init)
    raise ValueError(f"unknown model kind {mf.kind!r}")


def system_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def render_trace(trace: Trace, system_text: str) -> str:
    """Render a stack-system trace: a content-hash header, then one config per line.

    Columns are tab-separated; the stack word is space-joined so multi-
    character symbol names stay unambiguous.
    """
    lines = [f"# sha256: {system_digest(system_text)}"]
    for cfg in (trace.start, *(cfg for _, cfg in trace.steps)):
        lines.append(f"{cfg.state}\t{' '.join(cfg.stack)}\t{cfg.counter}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[str, Trace]:
    """Parse a trace file into its system digest and an action-less Trace."""
    lines = text.split("\n")
    if not lines or not lines[0].startswith("# sha256: "):
        raise ParseError(1, 1, "expected a '# sha256: <hex>' header line")
    digest = lines[0][len("# sha256: ") :].strip()
    configs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError(lineno, 1, "expected 'state<TAB>stack<TAB>counter'")
        state, stack_word, counter = cols
        try:
            value = int(counter)
        except ValueError:
            raise ParseError(lineno, 1, f"counter is not an integer: {counter!r}") from None
        configs.append(Configuration(state, tuple(stack_word.split()), value))
    if not configs:
        raise ParseError(2, 1, "trace has no configurations")
    return digest, Trace(configs[0], tuple((None, c) for c in configs[1:]))
