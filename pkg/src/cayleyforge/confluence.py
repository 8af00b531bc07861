"""Critical pairs and local confluence for length-reducing systems.

Two rules whose left sides share letters inside one word give a critical
pair: the word can be rewritten in two ways, and the system is locally
confluent exactly when every such pair reduces to a common word.  For a
terminating system that settles confluence outright, so each word then
has a unique normal form.

Rule schemas are handled by instantiating their exponent up to a caller
supplied bound; the resulting certificate is explicitly bounded and the
bound is recorded on the certified system.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .rewriting import (
    IncompleteSystemError,
    RewriteRule,
    RewritingSystem,
    Word,
    check_length_reducing,
    normal_form,
)

DEFAULT_SCHEMA_BOUND = 12


class NotConfluentError(ValueError):
    """Raised by :func:`certify` when a critical pair does not join."""

    def __init__(self, report: ConfluenceReport):
        self.report = report
        first = report.failures[0]
        super().__init__(
            f"system is not locally confluent: source {first.pair.source!r} "
            f"reduces to both {first.left_normal!r} and {first.right_normal!r}"
        )


@dataclass(frozen=True)
class CriticalPair:
    """A word with two one-step descendants that must rejoin.

    ``overlap``: the two left sides share a nonempty proper suffix/prefix.
    ``containment``: one left side occurs inside the other.
    """

    source: Word
    left_result: Word
    right_result: Word
    kind: str  # "overlap" | "containment"


def instantiated_rules(system: RewritingSystem, schema_bound: int) -> list[RewriteRule]:
    """Concrete rules followed by every schema instance up to the bound."""
    for schema in system.schemas:
        if schema_bound < schema.min_exponent:
            raise ValueError(
                f"schema bound {schema_bound} is below the minimal exponent "
                f"{schema.min_exponent} of schema {schema}"
            )
    rules = list(system.rules)
    for schema in system.schemas:
        rules.extend(
            schema.instance(n) for n in range(schema.min_exponent, schema_bound + 1)
        )
    return rules


def critical_pairs(
    system: RewritingSystem, schema_bound: int = DEFAULT_SCHEMA_BOUND
) -> list[CriticalPair]:
    """Enumerate every overlap and containment pair among all rule
    instances.

    For rules ``u -> v`` and ``z -> t``: an overlap takes a nonempty
    proper suffix of ``u`` that is a proper prefix of ``z``, giving the
    source ``p q r`` with descendants ``v r`` and ``p t``; a containment
    finds ``z`` inside ``u``, giving the source ``u`` with descendants
    ``v`` and ``p t q``.  The trivial containment of a rule in itself is
    skipped.  Each overlap of an ordered rule pair at a given shared part
    appears exactly once.
    """
    rules = instantiated_rules(system, schema_bound)
    pairs: list[CriticalPair] = []
    for i, left_rule in enumerate(rules):
        u, v = left_rule.lhs, left_rule.rhs
        for j, right_rule in enumerate(rules):
            z, t = right_rule.lhs, right_rule.rhs
            for qlen in range(1, min(len(u), len(z))):
                q = u[len(u) - qlen :]
                if z.startswith(q):
                    p = u[: len(u) - qlen]
                    r = z[qlen:]
                    pairs.append(CriticalPair(p + q + r, v + r, p + t, "overlap"))
            start = 0
            while True:
                k = u.find(z, start)
                if k < 0:
                    break
                if not (i == j and k == 0 and len(z) == len(u)):
                    pairs.append(
                        CriticalPair(u, v, u[:k] + t + u[k + len(z) :], "containment")
                    )
                start = k + 1
    return pairs


@dataclass(frozen=True)
class PairFailure:
    pair: CriticalPair
    left_normal: Word
    right_normal: Word


@dataclass(frozen=True)
class ConfluenceReport:
    passed: bool
    pair_count: int
    overlap_count: int
    containment_count: int
    schema_bound: int
    failures: tuple[PairFailure, ...]


def check_local_confluence(
    system: RewritingSystem, schema_bound: int = DEFAULT_SCHEMA_BOUND
) -> ConfluenceReport:
    """Reduce both descendants of every critical pair and report any
    pair whose normal forms differ.

    The system must be length-reducing (reduction must terminate).
    """
    length_report = check_length_reducing(system)
    if not length_report.passed:
        bad = ", ".join(system.label(i) for i in length_report.failing)
        raise ValueError(f"system is not length-reducing: {bad}")
    pairs = critical_pairs(system, schema_bound)
    failures = []
    overlaps = 0
    for pair in pairs:
        if pair.kind == "overlap":
            overlaps += 1
        left = normal_form(system, pair.left_result)
        right = normal_form(system, pair.right_result)
        if left != right:
            failures.append(PairFailure(pair, left, right))
    return ConfluenceReport(
        passed=not failures,
        pair_count=len(pairs),
        overlap_count=overlaps,
        containment_count=len(pairs) - overlaps,
        schema_bound=schema_bound,
        failures=tuple(failures),
    )


def certify(
    system: RewritingSystem, schema_bound: int = DEFAULT_SCHEMA_BOUND
) -> RewritingSystem:
    """Return a copy of ``system`` carrying a confluence certificate.

    Raises :class:`NotConfluentError` if some critical pair does not
    join.  For systems with schemas the certificate is bounded: overlaps
    are checked for exponents up to ``schema_bound`` only.
    """
    report = check_local_confluence(system, schema_bound)
    if not report.passed:
        raise NotConfluentError(report)
    return dataclasses.replace(system, certified_bound=schema_bound)


def words_equal(system: RewritingSystem, w1: Word, w2: Word) -> bool:
    """Whether two words represent the same monoid element.

    Demands a certified system: without confluence, equal normal forms
    would not decide equality.
    """
    if not system.is_certified:
        raise IncompleteSystemError(
            "words_equal needs a confluence certificate; call certify() first"
        )
    return normal_form(system, w1) == normal_form(system, w2)
