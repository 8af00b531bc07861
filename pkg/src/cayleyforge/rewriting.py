"""Length-reducing string rewriting over small alphabets.

Words are plain Python strings; each character is one generator symbol.
An alphabet is an ordered tuple of distinct single characters, and a
symbol's id is its position in that tuple.  A rule rewrites a factor
(contiguous substring) of a word; a rule schema stands for the whole
family ``prefix . pumped^n . suffix -> rhs`` for ``n >= min_exponent``
with a single pumped symbol.

A schema match always consumes the full run of the pumped symbol at its
position, so each match corresponds to exactly one factor occurrence of
one instance of the family.  Reduction applies the first match in
(position, rule index) order; on a confluent system the final result is
independent of that choice, and the fixed order keeps outputs stable.

All values are immutable; every function is a pure function of its
arguments and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Word",
    "RewriteRule",
    "RuleSchema",
    "RewritingSystem",
    "Match",
    "ReductionStep",
    "LengthReport",
    "IncompleteSystemError",
    "find_matches",
    "first_match",
    "apply_match",
    "describe_match",
    "single_step",
    "reduction_steps",
    "normal_form",
    "is_irreducible",
    "check_length_reducing",
]

# A word over some alphabet; "" is the empty word.
Word = str

EMPTY_DISPLAY = "ε"  # how the empty word is rendered in messages


def show_word(w: Word) -> str:
    return w if w else EMPTY_DISPLAY


class IncompleteSystemError(RuntimeError):
    """An operation that needs a confluence certificate was called on a
    system that does not carry one."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: str
    rhs: str

    def __post_init__(self) -> None:
        if not self.lhs:
            raise ValueError("rule left-hand side must be nonempty")

    def __str__(self) -> str:
        return f"{self.lhs} -> {show_word(self.rhs)}"


@dataclass(frozen=True)
class RuleSchema:
    """One-parameter rule family ``prefix . pumped^n . suffix -> rhs``.

    The exponent of a match is the length of the full pumped run, so the
    run must be delimited unambiguously: the prefix may not end with the
    pumped symbol and the suffix may not start with it.
    """

    prefix: str
    pumped: str
    min_exponent: int
    suffix: str
    rhs: str

    def __post_init__(self) -> None:
        if len(self.pumped) != 1:
            raise ValueError("pumped symbol must be a single character")
        if self.min_exponent < 1:
            raise ValueError("min_exponent must be at least 1")
        if self.prefix.endswith(self.pumped):
            raise ValueError("schema prefix may not end with the pumped symbol")
        if self.suffix.startswith(self.pumped):
            raise ValueError("schema suffix may not start with the pumped symbol")

    def instance(self, exponent: int) -> RewriteRule:
        """The concrete rule at a fixed exponent."""
        if exponent < self.min_exponent:
            raise ValueError(
                f"exponent {exponent} below schema minimum {self.min_exponent}"
            )
        return RewriteRule(
            self.prefix + self.pumped * exponent + self.suffix, self.rhs
        )

    def __str__(self) -> str:
        head = f"{self.prefix}{self.pumped}{{n}}{self.suffix}"
        return f"{head} -> {show_word(self.rhs)} (n >= {self.min_exponent})"


@dataclass(frozen=True)
class RewritingSystem:
    """An ordered alphabet plus finitely many rules and rule schemas.

    ``certified_bound`` is set by :func:`cayleyforge.confluence.certify`
    once local confluence has been checked with schemas instantiated up
    to that exponent; operations that rely on unique normal forms demand
    it.
    """

    alphabet: tuple[str, ...]
    rules: tuple[RewriteRule, ...] = ()
    schemas: tuple[RuleSchema, ...] = ()
    certified_bound: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "schemas", tuple(self.schemas))
        seen: set[str] = set()
        for ch in self.alphabet:
            if len(ch) != 1:
                raise ValueError(f"alphabet symbols are single characters, got {ch!r}")
            if ch in seen:
                raise ValueError(f"duplicate alphabet symbol {ch!r}")
            seen.add(ch)
        for i, rule in enumerate(self.rules):
            self._check_symbols(rule.lhs, f"rule {i} lhs")
            self._check_symbols(rule.rhs, f"rule {i} rhs")
        for j, schema in enumerate(self.schemas):
            self._check_symbols(schema.prefix, f"schema {j} prefix")
            self._check_symbols(schema.pumped, f"schema {j} pumped symbol")
            self._check_symbols(schema.suffix, f"schema {j} suffix")
            self._check_symbols(schema.rhs, f"schema {j} rhs")

    def _check_symbols(self, word: str, where: str) -> None:
        for ch in word:
            if ch not in self.alphabet:
                raise ValueError(
                    f"{where}: symbol {ch!r} is not in the alphabet "
                    f"{{{', '.join(self.alphabet)}}}"
                )

    @property
    def is_certified(self) -> bool:
        return self.certified_bound is not None

    def check_word(self, w: Word) -> None:
        """Raise ValueError if ``w`` uses a symbol outside the alphabet."""
        for ch in w:
            if ch not in self.alphabet:
                raise ValueError(
                    f"symbol {ch!r} is not in the alphabet "
                    f"{{{', '.join(self.alphabet)}}}"
                )

    def rule_count(self) -> int:
        """Number of rules plus schemas (combined index space)."""
        return len(self.rules) + len(self.schemas)

    def label(self, index: int) -> str:
        """Printable form of the rule or schema at a combined index
        (rules first, then schemas)."""
        if index < len(self.rules):
            return str(self.rules[index])
        return str(self.schemas[index - len(self.rules)])


@dataclass(frozen=True)
class Match:
    """One factor occurrence of a rule or schema instance.

    ``rule_index`` counts rules first, then schemas.  ``exponent`` is the
    pumped-run length and is set only for schema matches.
    """

    rule_index: int
    position: int
    matched_length: int
    exponent: int | None = None


def _match_schema(schema: RuleSchema, w: Word, pos: int) -> tuple[int, int] | None:
    """Return (exponent, matched length) for a schema match at ``pos``."""
    if not w.startswith(schema.prefix, pos):
        return None
    run_start = pos + len(schema.prefix)
    run_end = run_start
    while run_end < len(w) and w[run_end] == schema.pumped:
        run_end += 1
    exponent = run_end - run_start
    if exponent < schema.min_exponent:
        return None
    if not w.startswith(schema.suffix, run_end):
        return None
    return exponent, run_end - pos + len(schema.suffix)


def iter_matches(system: RewritingSystem, w: Word) -> Iterator[Match]:
    """Yield every match in ``w`` in (position, rule index) order."""
    system.check_word(w)
    n_rules = len(system.rules)
    for pos in range(len(w)):
        for idx, rule in enumerate(system.rules):
            if w.startswith(rule.lhs, pos):
                yield Match(idx, pos, len(rule.lhs))
        for jdx, schema in enumerate(system.schemas):
            hit = _match_schema(schema, w, pos)
            if hit is not None:
                exponent, length = hit
                yield Match(n_rules + jdx, pos, length, exponent)


def find_matches(system: RewritingSystem, w: Word) -> list[Match]:
    """All matches in ``w``, ordered by position then rule index.

    Schema matches report the full pumped run at their position.
    """
    return list(iter_matches(system, w))


def first_match(system: RewritingSystem, w: Word) -> Match | None:
    return next(iter_matches(system, w), None)


def apply_match(system: RewritingSystem, w: Word, match: Match) -> Word:
    """Rewrite the matched factor of ``w`` with the rule's right side."""
    if match.rule_index < len(system.rules):
        rhs = system.rules[match.rule_index].rhs
    else:
        rhs = system.schemas[match.rule_index - len(system.rules)].rhs
    return w[: match.position] + rhs + w[match.position + match.matched_length :]


def describe_match(system: RewritingSystem, match: Match) -> str:
    text = f"{system.label(match.rule_index)} at position {match.position}"
    if match.exponent is not None:
        text += f" (n={match.exponent})"
    return text


def single_step(system: RewritingSystem, w: Word) -> Word | None:
    """Apply the first match, or return None if ``w`` is irreducible."""
    match = first_match(system, w)
    if match is None:
        return None
    return apply_match(system, w, match)


@dataclass(frozen=True)
class ReductionStep:
    match: Match
    result: Word


def reduction_steps(system: RewritingSystem, w: Word) -> list[ReductionStep]:
    """Rewrite ``w`` to a fixed point, recording each applied match.

    Every step must strictly shorten the word; a step that does not is
    refused so that a non-length-reducing system cannot loop here.
    """
    steps: list[ReductionStep] = []
    current = w
    while True:
        match = first_match(system, current)
        if match is None:
            return steps
        nxt = apply_match(system, current, match)
        if len(nxt) >= len(current):
            raise ValueError(
                f"rule {system.label(match.rule_index)} did not shorten the word; "
                "the system is not length-reducing"
            )
        steps.append(ReductionStep(match, nxt))
        current = nxt


def normal_form(system: RewritingSystem, w: Word) -> Word:
    """The irreducible word reached from ``w`` by first-match reduction."""
    steps = reduction_steps(system, w)
    return steps[-1].result if steps else w


def is_irreducible(system: RewritingSystem, w: Word) -> bool:
    return first_match(system, w) is None


@dataclass(frozen=True)
class LengthReport:
    """Outcome of the length-reducing check over all rules and schemas."""

    passed: bool
    failing: tuple[int, ...]
    checked: int


def check_length_reducing(system: RewritingSystem) -> LengthReport:
    """Verify every rule, and every schema at its minimal exponent,
    strictly shortens the word.  Failing combined indices are listed.
    """
    failing: list[int] = []
    for i, rule in enumerate(system.rules):
        if len(rule.lhs) <= len(rule.rhs):
            failing.append(i)
    for j, schema in enumerate(system.schemas):
        shortest = len(schema.prefix) + schema.min_exponent + len(schema.suffix)
        if shortest <= len(schema.rhs):
            failing.append(len(system.rules) + j)
    return LengthReport(not failing, tuple(failing), system.rule_count())
