"""Counter-pair encoding and the six primitive partial functions on naturals.

A counter pair (n0, n1) is packed into the single number 2**n0 * 3**n1.
Counter operations then become multiplication by a factor f in {2, 3},
division by f (defined only on multiples of f), and a divisibility test
(identity on numbers not divisible by f).  Each primitive also comes with
two weak approximations: the forward-weak relation lets the result shrink,
the backward-weak relation lets the argument shrink.  This module supplies
closed-form membership for all of these plus brute-force oracles that
certify, over a bounded rectangle, that composing the exact primitives
equals the intersection of the two weakly-composed approximations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

MULT = "mult"
DIV = "div"
TEST = "test"

_KIND_LETTER = {MULT: "m", DIV: "d", TEST: "t"}
_LETTER_KIND = {v: k for k, v in _KIND_LETTER.items()}


@dataclass(frozen=True)
class DeltaSymbol:
    """One of the six operation symbols: kind in {mult, div, test}, factor in {2, 3}."""

    kind: str
    factor: int

    def __post_init__(self) -> None:
        if self.kind not in _KIND_LETTER:
            raise ValueError(f"unknown relation kind: {self.kind!r}")
        if self.factor not in (2, 3):
            raise ValueError(f"factor must be 2 or 3, got {self.factor!r}")

    @property
    def token(self) -> str:
        return _KIND_LETTER[self.kind] + str(self.factor)

    def __str__(self) -> str:
        return self.token


def parse_delta_token(token: str) -> DeltaSymbol:
    """Parse a two-character token like m2, d3, t2 into a DeltaSymbol."""
    if len(token) == 2 and token[0] in _LETTER_KIND and token[1] in "23":
        return DeltaSymbol(_LETTER_KIND[token[0]], int(token[1]))
    raise ValueError(f"not an operation token: {token!r} (expected one of m2 m3 d2 d3 t2 t3)")


ALPHABET = tuple(
    DeltaSymbol(kind, factor) for kind in (MULT, DIV, TEST) for factor in (2, 3)
)


class WeakMode(Enum):
    EXACT = "exact"
    FORWARD_WEAK = "forward_weak"
    BACKWARD_WEAK = "backward_weak"


@dataclass(frozen=True)
class RelationSpec:
    """A primitive partial function on naturals, named by its DeltaSymbol.

    mult f maps n to f*n; div f maps f*n to n and is undefined off multiples
    of f; test f maps n to n when n is not divisible by f and is undefined
    otherwise.
    """

    symbol: DeltaSymbol

    def apply(self, m: int) -> int | None:
        """The exact image of m, or None where the function is undefined."""
        f = self.symbol.factor
        kind = self.symbol.kind
        if kind == MULT:
            return f * m
        if kind == DIV:
            return m // f if m % f == 0 else None
        return m if m % f != 0 else None

    def left_ceiling(self, n: int) -> int:
        """Largest p with (p, n) in the backward-weak relation; -1 if there is none.

        The backward-weak section {p : exists p~ >= p with apply(p~) = n} is
        downward closed, so it is fully described by this ceiling: it equals
        the largest exact preimage of n.
        """
        f = self.symbol.factor
        kind = self.symbol.kind
        if kind == MULT:
            return n // f if n % f == 0 else -1
        if kind == DIV:
            return f * n
        return n if n % f != 0 else -1


def rel_spec(token_or_symbol: str | DeltaSymbol) -> RelationSpec:
    """Convenience constructor from a token like "m2" or a DeltaSymbol."""
    if isinstance(token_or_symbol, DeltaSymbol):
        return RelationSpec(token_or_symbol)
    return RelationSpec(parse_delta_token(token_or_symbol))


def rel_apply(r: RelationSpec, m: int) -> int | None:
    """Exact application; None where the partial function is undefined."""
    if m < 0:
        raise ValueError(f"relation argument must be non-negative, got {m}")
    return r.apply(m)


def weak_member(r, mode: WeakMode, m: int, n: int) -> bool:
    """Membership of (m, n) in the relation under the given mode.

    exact: apply(m) = n.  forward_weak: apply(m) defined and >= n (the
    result may shrink).  backward_weak: some argument >= m maps exactly to
    n (the argument may shrink); equivalently m <= left_ceiling(n).  Both
    weak memberships are closed forms; the test suite cross-checks them
    against direct search over the shrunk value.
    """
    if m < 0 or n < 0:
        raise ValueError(f"weak membership is over naturals, got ({m}, {n})")
    if mode is WeakMode.EXACT:
        return r.apply(m) == n
    if mode is WeakMode.FORWARD_WEAK:
        v = r.apply(m)
        return v is not None and v >= n
    if mode is WeakMode.BACKWARD_WEAK:
        return m <= r.left_ceiling(n)
    raise ValueError(f"unknown mode: {mode!r}")


class CompositionBoundError(ValueError):
    """The exact forward image escaped the intermediate-value bound."""


def compose_member(rs, mode: WeakMode, m: int, n: int, bound: int) -> bool:
    """Membership of (m, n) in the relational composition of rs, by enumeration.

    Intermediate values are enumerated over [0, bound].  In exact mode the
    composition is a partial function and the fold is checked against the
    bound, raising CompositionBoundError if an exact image escapes it.  For
    the weak modes the bounded search is complete as long as bound covers
    the exact ceiling reachable from the endpoints: forward-weak results
    only shrink below the exact images of smaller arguments, and
    backward-weak chains admit witnesses whose intermediates stay within
    the largest exact preimages of the endpoint, so taking bound at least
    prod(factor of r for r in rs) times max(m, n) loses nothing.  The empty
    composition is the identity.
    """
    if not rs:
        return m == n
    if mode is WeakMode.EXACT:
        value = m
        for r in rs:
            value = r.apply(value)
            if value is None:
                return False
            if value > bound:
                raise CompositionBoundError(
                    f"exact image {value} of {m} escapes intermediate bound {bound}"
                )
        return value == n
    values = {m}
    for r in rs:
        nxt = set()
        for v in range(bound + 1):
            for p in values:
                if weak_member(r, mode, p, v):
                    nxt.add(v)
                    break
        values = nxt
        if not values:
            return False
    return n in values


def is_strictly_monotone(r, domain_bound: int) -> bool:
    """Whether all pairs with first component <= domain_bound order both ways.

    Strict monotonicity: for (m, n) and (m', n') in the relation, m < m'
    holds if and only if n < n'.  True for all six primitives.
    """
    if domain_bound < 2:
        raise ValueError(f"domain bound must be at least 2, got {domain_bound}")
    pairs = []
    for m in range(domain_bound + 1):
        v = r.apply(m)
        if v is not None:
            pairs.append((m, v))
    for (m, n), (m2, n2) in itertools.combinations(pairs, 2):
        if (m < m2) != (n < n2):
            return False
    return True


def _prefix_max(values: list[int]) -> list[int]:
    out = []
    best = -1
    for v in values:
        if v > best:
            best = v
        out.append(best)
    return out


_GROWTH_GUARD = 10**7


def _forward_ceilings(rs, domain_bound: int) -> list[int]:
    """ceil[m] = largest n with (m, n) in the forward-weak composition; -1 if none.

    Right sections of forward-weak compositions are downward closed (a
    smaller result is witnessed by the same chain), so each section is the
    interval [0, ceil[m]].  After the first step the argument itself ranges
    over a downward-closed set, so each later step is a prefix-maximum of
    the exact images.
    """
    ceilings = [r if (r := rs[0].apply(m)) is not None else -1 for m in range(domain_bound + 1)]
    for r in rs[1:]:
        limit = max(ceilings, default=-1)
        if limit > _GROWTH_GUARD:
            raise CompositionBoundError(f"forward ceiling {limit} escapes the growth guard")
        pm = _prefix_max([v if (v := r.apply(p)) is not None else -1 for p in range(limit + 1)])
        ceilings = [pm[c] if c >= 0 else -1 for c in ceilings]
    return ceilings


def _backward_ceilings(rs, domain_bound: int) -> list[int]:
    """ceil[n] = largest m with (m, n) in the backward-weak composition; -1 if none.

    Left sections of backward-weak compositions are downward closed, so the
    composition is computed right to left through prefix-maxima of each
    relation's left_ceiling.
    """
    ceilings = [rs[-1].left_ceiling(n) for n in range(domain_bound + 1)]
    for r in reversed(rs[:-1]):
        limit = max(ceilings, default=-1)
        if limit > _GROWTH_GUARD:
            raise CompositionBoundError(f"backward ceiling {limit} escapes the growth guard")
        pm = _prefix_max([r.left_ceiling(q) for q in range(limit + 1)])
        ceilings = [pm[c] if c >= 0 else -1 for c in ceilings]
    return ceilings


def _exact_values(rs, domain_bound: int) -> list[int | None]:
    out = []
    for m in range(domain_bound + 1):
        value = m
        for r in rs:
            value = r.apply(value)
            if value is None:
                break
        out.append(value)
    return out


@dataclass(frozen=True)
class TwoApproximationsReport:
    """Result of checking exact = forward-weak and backward-weak over a rectangle."""

    sequence: tuple
    domain_bound: int
    holds: bool
    counterexample: tuple[int, int] | None

    def __post_init__(self) -> None:
        if self.holds != (self.counterexample is None):
            raise ValueError("holds must mirror the absence of a counterexample")


def check_two_approximations(rs, domain_bound: int, max_len: int = 4) -> TwoApproximationsReport:
    """Exhaustively compare the exact composition with both weak compositions.

    For every (m, n) with m, n <= domain_bound, checks that (m, n) is in
    the composition of the exact relations iff it is in both the
    forward-weak and the backward-weak compositions.  The comparison is
    exhaustive over the rectangle, not sampled.  The weak sides are
    evaluated through section-ceiling tables (see _forward_ceilings and
    _backward_ceilings), which the test suite cross-validates against the
    enumeration in compose_member.
    """
    rs = tuple(rs)
    if not rs:
        raise ValueError("sequence must be non-empty")
    if len(rs) > max_len:
        raise ValueError(f"sequence length {len(rs)} exceeds the cap {max_len}")
    exact = _exact_values(rs, domain_bound)
    fwd = _forward_ceilings(rs, domain_bound)
    bwd = _backward_ceilings(rs, domain_bound)
    for m in range(domain_bound + 1):
        v = exact[m]
        for n in range(domain_bound + 1):
            in_exact = v == n
            in_both = n <= fwd[m] and m <= bwd[n]
            if in_exact != in_both:
                return TwoApproximationsReport(rs, domain_bound, False, (m, n))
    return TwoApproximationsReport(rs, domain_bound, True, None)


@dataclass(frozen=True)
class MonotonePairsReport:
    """Result of checking the ordering lemma between the two weak compositions.

    For (m, n) in the forward-weak composition and (m', n') in the
    backward-weak composition, n' <= n must force m' <= m, and n' < n must
    force m' < m.  A violation carries the two witnessing pairs.
    """

    sequence: tuple
    domain_bound: int
    holds: bool
    violation: tuple[tuple[int, int], tuple[int, int]] | None


def check_monotone_pairs_lemma(rs, domain_bound: int, max_len: int = 4) -> MonotonePairsReport:
    """Exhaustively check the ordering lemma over the bounded rectangle."""
    rs = tuple(rs)
    if not rs:
        raise ValueError("sequence must be non-empty")
    if len(rs) > max_len:
        raise ValueError(f"sequence length {len(rs)} exceeds the cap {max_len}")
    fwd = _forward_ceilings(rs, domain_bound)
    bwd = _backward_ceilings(rs, domain_bound)
    # min_fwd[n] = least m <= domain_bound with (m, n) in the forward composition
    min_fwd: list[int | None] = [None] * (domain_bound + 1)
    for m in range(domain_bound + 1):
        for n in range(min(fwd[m], domain_bound) + 1):
            if min_fwd[n] is None:
                min_fwd[n] = m
    for n in range(domain_bound + 1):
        if min_fwd[n] is None:
            continue
        for n_back in range(n + 1):
            m_back = min(bwd[n_back], domain_bound)
            if m_back < 0:
                continue
            m_fwd = min_fwd[n]
            if m_back > m_fwd or (n_back < n and m_back >= m_fwd):
                return MonotonePairsReport(rs, domain_bound, False, ((m_fwd, n), (m_back, n_back)))
    return MonotonePairsReport(rs, domain_bound, True, None)


def godel_encode(n0: int, n1: int) -> int:
    """Pack a counter pair into 2**n0 * 3**n1 (arbitrary precision)."""
    if n0 < 0 or n1 < 0:
        raise ValueError(f"counters must be non-negative, got ({n0}, {n1})")
    return 2**n0 * 3**n1


def godel_decode(v: int) -> tuple[int, int] | None:
    """Invert godel_encode; None if v has any prime factor other than 2 and 3."""
    if v < 1:
        raise ValueError(f"encodings are positive, got {v}")
    n0 = 0
    while v % 2 == 0:
        v //= 2
        n0 += 1
    n1 = 0
    while v % 3 == 0:
        v //= 3
        n1 += 1
    return (n0, n1) if v == 1 else None


def minsky_action_to_symbol(a) -> DeltaSymbol:
    """The operation symbol an action performs on the counter-pair encoding.

    Counter 0 lives in the exponent of 2 and counter 1 in the exponent of
    3, so increment is mult, decrement is div, and a zero-test is the
    divisibility test by the counter's prime.
    """
    kind = {"inc": MULT, "dec": DIV, "zero": TEST}[a.op]
    return DeltaSymbol(kind, 2 if a.counter_index == 0 else 3)
