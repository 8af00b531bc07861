"""Cayley-graph balls of a complete rewriting system.

Vertices of a ball of radius L are the irreducible words of length at
most L, numbered in shortlex order (vertex 0 is the empty word).  For a
length-reducing complete system the length of a normal form equals its
directed distance from the identity, so this vertex set is exactly the
directed ball of that radius.  Edges follow one generator: ``x -> x.g``
on the right side, ``x -> g.x`` on the left.  A target that reduces
back inside the ball becomes an edge; a target outside is either
dropped (``closed``) or recorded (``with_frontier``).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .normal_forms import enumerate_normal_forms
from .rewriting import (
    IncompleteSystemError,
    RewritingSystem,
    Word,
    is_irreducible,
    normal_form,
    show_word,
)

SIDES = ("right", "left")
POLICIES = ("closed", "with_frontier")


@dataclass(frozen=True)
class CayleyBall:
    side: str
    radius: int
    policy: str
    vertices: tuple[Word, ...]
    edges: tuple[tuple[int, int, str], ...]
    frontier: tuple[tuple[int, str, Word], ...] = ()

    def vertex_index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.vertices)}


@dataclass(frozen=True)
class UnlabelledDigraph:
    """Arc multiset on vertices 0..n-1; loops and parallel arcs allowed."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for src, dst in self.arcs:
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise ValueError(f"arc ({src}, {dst}) out of range for n={self.n}")


def edge_target(system: RewritingSystem, v: Word, g: str, side: str = "right") -> Word:
    """Normal form of ``v.g`` (right) or ``g.v`` (left)."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    if g not in system.alphabet:
        raise ValueError(
            f"generator {g!r} is not in the alphabet {{{', '.join(system.alphabet)}}}"
        )
    if not is_irreducible(system, v):
        raise ValueError(f"vertex word {v!r} is not irreducible")
    return normal_form(system, v + g if side == "right" else g + v)


def build_ball(
    system: RewritingSystem,
    side: str,
    radius: int,
    policy: str = "closed",
    workers: int = 1,
) -> CayleyBall:
    """Construct the ball of the given radius around the identity.

    Needs a certified system.  ``workers`` > 1 computes the per-vertex
    targets in a thread pool; results are collected in vertex order, so
    the ball is identical either way.
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if not system.is_certified:
        raise IncompleteSystemError(
            "build_ball needs a certified system; call certify() first"
        )
    vertices = tuple(enumerate_normal_forms(system, radius))
    index = {w: i for i, w in enumerate(vertices)}

    def targets(v: Word) -> list[Word]:
        if side == "right":
            return [normal_form(system, v + g) for g in system.alphabet]
        return [normal_form(system, g + v) for g in system.alphabet]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(targets, vertices))
    else:
        rows = [targets(v) for v in vertices]

    edges: list[tuple[int, int, str]] = []
    frontier: list[tuple[int, str, Word]] = []
    for src, row in enumerate(rows):
        for g, target in zip(system.alphabet, row):
            if len(target) <= radius:
                edges.append((src, index[target], g))
            elif policy == "with_frontier":
                frontier.append((src, g, target))
    return CayleyBall(side, radius, policy, vertices, tuple(edges), tuple(frontier))


def strip_labels(ball: CayleyBall) -> UnlabelledDigraph:
    """Drop generator labels, keeping arc multiplicities."""
    return UnlabelledDigraph(
        len(ball.vertices), tuple(sorted((s, d) for s, d, _ in ball.edges))
    )


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; a mismatch certifies non-isomorphism."""

    vertex_count: int
    arc_count: int
    degree_pairs: tuple[tuple[int, int], ...]
    neighbor_profiles: tuple[tuple, ...]

    def first_difference(self, other: Fingerprint) -> str | None:
        """Name of the first differing component, or None if equal."""
        if self.vertex_count != other.vertex_count:
            return "vertex count"
        if self.arc_count != other.arc_count:
            return "arc count"
        if self.degree_pairs != other.degree_pairs:
            return "in/out degree-pair multiset"
        if self.neighbor_profiles != other.neighbor_profiles:
            return "two-step degree profile multiset"
        return None


def graph_invariants(g: UnlabelledDigraph) -> Fingerprint:
    """Vertex/arc counts, the degree-pair multiset, and per-vertex
    profiles of the degree pairs seen one step out and one step in."""
    indeg = [0] * g.n
    outdeg = [0] * g.n
    out_nbrs: list[list[int]] = [[] for _ in range(g.n)]
    in_nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for src, dst in g.arcs:
        outdeg[src] += 1
        indeg[dst] += 1
        out_nbrs[src].append(dst)
        in_nbrs[dst].append(src)
    degree = [(indeg[v], outdeg[v]) for v in range(g.n)]
    profiles = [
        (
            degree[v],
            tuple(sorted(degree[u] for u in out_nbrs[v])),
            tuple(sorted(degree[u] for u in in_nbrs[v])),
        )
        for v in range(g.n)
    ]
    return Fingerprint(
        g.n, len(g.arcs), tuple(sorted(degree)), tuple(sorted(profiles))
    )


def export_dot(obj: CayleyBall | UnlabelledDigraph) -> str:
    """Graphviz text; node labels are the vertex words for a ball and
    bare indices for an unlabelled digraph.  Byte-stable per input."""
    lines = ["digraph {"]
    if isinstance(obj, CayleyBall):
        for i, w in enumerate(obj.vertices):
            lines.append(f'  v{i} [label="{show_word(w)}"];')
        for src, dst, g in obj.edges:
            lines.append(f'  v{src} -> v{dst} [label="{g}"];')
        outside: dict[Word, int] = {}
        for src, g, target in obj.frontier:
            if target not in outside:
                outside[target] = len(outside)
                lines.append(
                    f'  f{outside[target]} [label="{target}", style=dashed];'
                )
            lines.append(f'  v{src} -> f{outside[target]} [label="{g}", style=dashed];')
    elif isinstance(obj, UnlabelledDigraph):
        for i in range(obj.n):
            lines.append(f"  {i};")
        for src, dst in obj.arcs:
            lines.append(f"  {src} -> {dst};")
    else:
        raise TypeError(f"cannot export {type(obj).__name__} as DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(obj: CayleyBall | UnlabelledDigraph) -> str:
    if isinstance(obj, CayleyBall):
        payload = {
            "side": obj.side,
            "radius": obj.radius,
            "policy": obj.policy,
            "vertices": list(obj.vertices),
            "edges": [[src, dst, g] for src, dst, g in obj.edges],
            "frontier": [[src, g, target] for src, g, target in obj.frontier],
        }
    elif isinstance(obj, UnlabelledDigraph):
        payload = {"n": obj.n, "arcs": [[src, dst] for src, dst in obj.arcs]}
    else:
        raise TypeError(f"cannot export {type(obj).__name__} as JSON")
    return json.dumps(payload, ensure_ascii=False)


def import_ball_json(text: str) -> CayleyBall:
    """Inverse of :func:`export_json` for balls."""
    payload = json.loads(text)
    try:
        return CayleyBall(
            side=payload["side"],
            radius=payload["radius"],
            policy=payload["policy"],
            vertices=tuple(payload["vertices"]),
            edges=tuple((s, d, g) for s, d, g in payload["edges"]),
            frontier=tuple((s, g, t) for s, g, t in payload["frontier"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed ball JSON: {exc}") from exc
