"""Digraph isomorphism: explicit-map verification and independent search.

Two entry points cover the two directions of trust.  ``verify_explicit_iso``
checks that the structural normal-form bijection between the built-in
systems maps the right-ball arcs onto each other, arc by arc and in both
directions.  ``find_isomorphism`` knows nothing about words: it searches
for any isomorphism between two unlabelled digraphs by iterated
degree-profile partition refinement plus backtracking, and validates any
certificate it returns from scratch.

``separate_left_graphs`` uses both to locate the smallest ball radius at
which the left Cayley graphs of two systems can be told apart.
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from dataclasses import dataclass

from .cayley import (
    CayleyBall,
    UnlabelledDigraph,
    build_ball,
    graph_invariants,
    strip_labels,
)
from .normal_forms import m_to_n
from .presentations import system_m, system_n
from .rewriting import RewritingSystem

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class IsoCertificate:
    """A vertex bijection ``mapping[i] = j`` claimed to preserve arcs
    with multiplicity in both directions."""

    mapping: tuple[int, ...]


def validate_certificate(
    g1: UnlabelledDigraph, g2: UnlabelledDigraph, mapping: tuple[int, ...]
) -> str | None:
    """Check a mapping from scratch; return None if it is a genuine
    isomorphism, otherwise a description of the first defect."""
    if g1.n != g2.n or len(mapping) != g1.n:
        return f"mapping size {len(mapping)} does not match vertex counts"
    if sorted(mapping) != list(range(g2.n)):
        return "mapping is not a bijection"
    image = Counter((mapping[s], mapping[d]) for s, d in g1.arcs)
    target = Counter(g2.arcs)
    if image != target:
        arc = next(iter((image - target) + (target - image)))
        return f"arc multiset mismatch at {arc}"
    return None


@dataclass(frozen=True)
class IsoReport:
    """Outcome of verifying the explicit normal-form bijection on a ball
    pair; ``witness`` carries the first failing arc or vertex."""

    status: str  # "verified" | "counterexample"
    mapping: tuple[int, ...] | None
    witness: tuple[str, str] | None  # (direction, detail)
    arcs_checked: int
    vertices_checked: int

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def _counterexample(direction: str, detail: str, vertices: int) -> IsoReport:
    return IsoReport("counterexample", None, (direction, detail), 0, vertices)


def verify_explicit_iso(ball_m: CayleyBall, ball_n: CayleyBall) -> IsoReport:
    """Check that the normal-form bijection is a graph isomorphism
    between two closed right balls of equal radius.

    Verifies that the word map restricts to a vertex bijection, that the
    image of every ball arc is a ball arc, and that the preimage of
    every ball arc is a ball arc, counting multiplicities.
    """
    for ball in (ball_m, ball_n):
        if ball.side != "right":
            raise ValueError("explicit verification applies to right balls")
        if ball.policy != "closed":
            raise ValueError("explicit verification applies to closed balls")
    if ball_m.radius != ball_n.radius:
        raise ValueError(
            f"radii differ: {ball_m.radius} vs {ball_n.radius}"
        )
    n_vertices = len(ball_m.vertices)
    if n_vertices != len(ball_n.vertices):
        return _counterexample(
            "vertex-map",
            f"vertex counts differ: {n_vertices} vs {len(ball_n.vertices)}",
            n_vertices,
        )
    index_n = ball_n.vertex_index()
    mapping: list[int] = []
    for word in ball_m.vertices:
        image = m_to_n(word)
        if image not in index_n:
            return _counterexample(
                "vertex-map", f"{word!r} maps to {image!r}, not a ball vertex",
                n_vertices,
            )
        mapping.append(index_n[image])
    if len(set(mapping)) != n_vertices:
        return _counterexample("vertex-map", "word map is not injective", n_vertices)

    arcs_m = Counter((s, d) for s, d, _ in ball_m.edges)
    arcs_n = Counter((s, d) for s, d, _ in ball_n.edges)
    arcs_checked = 0

    forward = Counter((mapping[s], mapping[d]) for (s, d) in arcs_m.elements())
    arcs_checked += sum(arcs_m.values())
    for arc, count in sorted(forward.items()):
        if arcs_n[arc] < count:
            return _counterexample("forward", f"image arc {arc} missing", n_vertices)

    inverse = [0] * n_vertices
    for src, dst in enumerate(mapping):
        inverse[dst] = src
    backward = Counter((inverse[s], inverse[d]) for (s, d) in arcs_n.elements())
    arcs_checked += sum(arcs_n.values())
    for arc, count in sorted(backward.items()):
        if arcs_m[arc] < count:
            return _counterexample("backward", f"preimage arc {arc} missing", n_vertices)

    return IsoReport("verified", tuple(mapping), None, arcs_checked, n_vertices)


@dataclass(frozen=True)
class SearchResult:
    """``isomorphic`` with a validated certificate, ``non_isomorphic``,
    or ``budget_exhausted`` when the expansion limit was hit (an
    explicitly indeterminate outcome, never a silent "no")."""

    status: str  # "isomorphic" | "non_isomorphic" | "budget_exhausted"
    certificate: IsoCertificate | None
    expansions: int


def report_json(report: IsoReport | SearchResult) -> str:
    """Serialize a verification report or search result as
    ``{"status", "mapping", "witness"}``."""
    if isinstance(report, IsoReport):
        payload = {
            "status": report.status,
            "mapping": list(report.mapping) if report.mapping is not None else None,
            "witness": list(report.witness) if report.witness is not None else None,
        }
    else:
        mapping = (
            list(report.certificate.mapping)
            if report.certificate is not None
            else None
        )
        payload = {"status": report.status, "mapping": mapping, "witness": None}
    return json.dumps(payload, ensure_ascii=False)


class _BudgetExhausted(Exception):
    pass


def _adjacency(g: UnlabelledDigraph) -> tuple[list[Counter], list[Counter]]:
    out: list[Counter] = [Counter() for _ in range(g.n)]
    inc: list[Counter] = [Counter() for _ in range(g.n)]
    for src, dst in g.arcs:
        out[src][dst] += 1
        inc[dst][src] += 1
    return out, inc


def _refine_colors(
    g1: UnlabelledDigraph, g2: UnlabelledDigraph
) -> tuple[list[int], list[int], bool]:
    """Iterated joint degree-profile refinement of both vertex sets.

    Colors are comparable across the two graphs.  Returns the stable
    colorings and whether their histograms agree (a necessary condition
    for isomorphism).
    """
    out1, in1 = _adjacency(g1)
    out2, in2 = _adjacency(g2)

    def initial(out, inc, n):
        return [
            (sum(inc[v].values()), sum(out[v].values()), out[v][v])
            for v in range(n)
        ]

    raw1 = initial(out1, in1, g1.n)
    raw2 = initial(out2, in2, g2.n)
    palette: dict = {}
    colors1 = [palette.setdefault(c, len(palette)) for c in raw1]
    colors2 = [palette.setdefault(c, len(palette)) for c in raw2]

    while True:
        palette = {}

        def signature(v, colors, out, inc):
            return (
                colors[v],
                tuple(sorted(colors[u] for u in out[v].elements())),
                tuple(sorted(colors[u] for u in inc[v].elements())),
            )

        new1 = [
            palette.setdefault(signature(v, colors1, out1, in1), len(palette))
            for v in range(g1.n)
        ]
        new2 = [
            palette.setdefault(signature(v, colors2, out2, in2), len(palette))
            for v in range(g2.n)
        ]
        if new1 == colors1 and new2 == colors2:
            break
        colors1, colors2 = new1, new2
    return colors1, colors2, Counter(colors1) == Counter(colors2)


def find_isomorphism(
    g1: UnlabelledDigraph, g2: UnlabelledDigraph, budget: int = DEFAULT_BUDGET
) -> SearchResult:
    """Search for any isomorphism between two unlabelled digraphs.

    Backtracking over refinement classes: a vertex may only map to a
    vertex of the same stable color, every tried candidate pair costs
    one expansion, and the search stops indeterminately once ``budget``
    expansions are spent.  A returned certificate has been re-validated
    arc by arc.  Deterministic: the lowest-index certificate is found
    first.
    """
    if g1.n != g2.n or len(g1.arcs) != len(g2.arcs):
        return SearchResult("non_isomorphic", None, 0)
    if g1.n == 0:
        return SearchResult("isomorphic", IsoCertificate(()), 0)
    colors1, colors2, compatible = _refine_colors(g1, g2)
    if not compatible:
        return SearchResult("non_isomorphic", None, 0)

    out1, in1 = _adjacency(g1)
    out2, in2 = _adjacency(g2)
    n = g1.n
    class_size = Counter(colors1)
    candidates_by_color: dict[int, list[int]] = {}
    for v in range(n):
        candidates_by_color.setdefault(colors2[v], []).append(v)

    mapping = [-1] * n
    inverse = [-1] * n
    expansions = 0

    def pick_next() -> int:
        # Prefer vertices touching the mapped region, then small classes.
        best = -1
        best_key = None
        for v in range(n):
            if mapping[v] != -1:
                continue
            touching = any(mapping[u] != -1 for u in out1[v]) or any(
                mapping[u] != -1 for u in in1[v]
            )
            key = (not touching, class_size[colors1[v]], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def consistent(v1: int, v2: int) -> bool:
        if out1[v1][v1] != out2[v2][v2]:
            return False
        for u1, count in out1[v1].items():
            u2 = mapping[u1]
            if u2 != -1 and out2[v2][u2] != count:
                return False
        for u1, count in in1[v1].items():
            u2 = mapping[u1]
            if u2 != -1 and in2[v2][u2] != count:
                return False
        for u2, count in out2[v2].items():
            u1 = inverse[u2]
            if u1 != -1 and out1[v1][u1] != count:
                return False
        for u2, count in in2[v2].items():
            u1 = inverse[u2]
            if u1 != -1 and in1[v1][u1] != count:
                return False
        return True

    def extend(assigned: int) -> bool:
        nonlocal expansions
        if assigned == n:
            return True
        v1 = pick_next()
        for v2 in candidates_by_color.get(colors1[v1], ()):
            if inverse[v2] != -1:
                continue
            expansions += 1
            if expansions > budget:
                raise _BudgetExhausted
            if not consistent(v1, v2):
                continue
            mapping[v1] = v2
            inverse[v2] = v1
            if extend(assigned + 1):
                return True
            mapping[v1] = -1
            inverse[v2] = -1
        return False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))
    try:
        found = extend(0)
    except _BudgetExhausted:
        return SearchResult("budget_exhausted", None, expansions)
    finally:
        sys.setrecursionlimit(old_limit)

    if not found:
        return SearchResult("non_isomorphic", None, expansions)
    certificate = IsoCertificate(tuple(mapping))
    defect = validate_certificate(g1, g2, certificate.mapping)
    if defect is not None:
        raise RuntimeError(f"search produced an invalid certificate: {defect}")
    return SearchResult("isomorphic", certificate, expansions)


@dataclass(frozen=True)
class SeparationReport:
    """Outcome of comparing left balls radius by radius.

    A separation is a statement about the balls themselves: at radius
    ``radius`` the two left balls are non-isomorphic finite digraphs,
    witnessed by ``invariant``.
    """

    separated: bool
    radius: int | None
    invariant: str | None
    max_radius: int
    lines: tuple[str, ...]


def separate_left_graphs(
    max_radius: int,
    system_a: RewritingSystem | None = None,
    system_b: RewritingSystem | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SeparationReport:
    """Find the smallest radius at which the left balls of two systems
    (the two builtins by default) are provably non-isomorphic.

    Fingerprints are compared first; if they tie, the full search
    decides.  A budget-exhausted search leaves the radius undecided and
    is reported as such.
    """
    if max_radius < 1:
        raise ValueError("max_radius must be at least 1")
    sys_a = system_a if system_a is not None else system_m()
    sys_b = system_b if system_b is not None else system_n()
    lines: list[str] = []
    for radius in range(1, max_radius + 1):
        g_a = strip_labels(build_ball(sys_a, "left", radius, "closed"))
        g_b = strip_labels(build_ball(sys_b, "left", radius, "closed"))
        difference = graph_invariants(g_a).first_difference(graph_invariants(g_b))
        if difference is not None:
            lines.append(f"radius {radius}: separated, {difference}s differ")
            return SeparationReport(True, radius, difference, max_radius, tuple(lines))
        result = find_isomorphism(g_a, g_b, budget)
        if result.status == "non_isomorphic":
            invariant = "exhaustive search (no isomorphism exists)"
            lines.append(f"radius {radius}: separated by {invariant}")
            return SeparationReport(True, radius, invariant, max_radius, tuple(lines))
        if result.status == "budget_exhausted":
            lines.append(
                f"radius {radius}: undecided, search budget exhausted after "
                f"{result.expansions} expansions"
            )
        else:
            lines.append(f"radius {radius}: not separated (balls are isomorphic)")
    return SeparationReport(False, None, None, max_radius, tuple(lines))
