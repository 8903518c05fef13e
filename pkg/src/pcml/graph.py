"""Finite simple graphs on vertices 1..n and the tree surgery used by the decider.

Vertices are positive integers.  Edges are unordered pairs stored as (i, j)
with i < j.  All operations that return collections order them
deterministically: components are sorted blocks, sorted by least element;
paths are in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotAForest, NotATree, ParseError, SemanticError

Edge = tuple[int, int]

#: canonical-form value reserved for the empty graph
EMPTY_SENTINEL = "{}"


class Graph:
    """Immutable simple graph on vertices 1..n."""

    __slots__ = ("n", "edges", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        norm: set[Edge] = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i},{j}) out of range 1..{n}")
            norm.add((min(i, j), max(i, j)))
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_hash", hash((n, self.edges)))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        es = sorted(self.edges)
        return f"Graph({self.n}, {es})"

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


@dataclass(frozen=True)
class VertexClasses:
    endpoints: tuple[int, ...]
    non_endpoints: tuple[int, ...]
    unnecessary_endpoints: tuple[int, ...]


def connected_components(
    g: Graph, subset: Iterable[int] | None = None
) -> list[tuple[int, ...]]:
    """Partition of `subset` (default: all vertices) into components of the
    induced subgraph.  Blocks are sorted, and listed by least element."""
    verts = set(g.vertices) if subset is None else set(subset)
    for v in verts:
        if not (1 <= v <= g.n):
            raise ValueError(f"vertex {v} out of range")
    seen: set[int] = set()
    blocks: list[tuple[int, ...]] = []
    for start in sorted(verts):
        if start in seen:
            continue
        block = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in g.neighbors(v):
                if w in verts and w not in block:
                    block.add(w)
                    frontier.append(w)
        seen |= block
        blocks.append(tuple(sorted(block)))
    return blocks


def induced_subgraph(
    g: Graph, subset: Iterable[int]
) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph with vertices relabeled to 1..|subset| preserving
    order.  Returns (graph, old->new relabeling map)."""
    verts = sorted(set(subset))
    for v in verts:
        if not (1 <= v <= g.n):
            raise ValueError(f"vertex {v} out of range")
    relabel = {v: k + 1 for k, v in enumerate(verts)}
    edges = [
        (relabel[i], relabel[j])
        for (i, j) in g.edges
        if i in relabel and j in relabel
    ]
    return Graph(len(verts), edges), relabel


def simple_paths(g: Graph, i: int, j: int) -> list[tuple[int, ...]]:
    """All simple paths from i to j, each reported as its interior-vertex
    sequence, in lexicographic order.  Distinct endpoints required."""
    if i == j:
        raise ValueError("path endpoints must be distinct")
    out: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path = {i}

    def walk(v: int) -> None:
        for w in sorted(g.neighbors(v)):
            if w == j:
                out.append(tuple(path))
            elif w not in on_path:
                on_path.add(w)
                path.append(w)
                walk(w)
                path.pop()
                on_path.remove(w)

    walk(i)
    out.sort()
    return out


def classify_vertices(g: Graph) -> VertexClasses:
    """Endpoints are degree-1 vertices; an endpoint is unnecessary when its
    unique neighbor has degree >= 3."""
    endpoints = [v for v in g.vertices if g.degree(v) == 1]
    non_endpoints = [v for v in g.vertices if g.degree(v) != 1]
    unnecessary = [
        v for v in endpoints if g.degree(next(iter(g.neighbors(v)))) >= 3
    ]
    return VertexClasses(tuple(endpoints), tuple(non_endpoints), tuple(unnecessary))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return len(connected_components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and len(g.edges) == g.n - 1


def is_forest(g: Graph) -> bool:
    return len(g.edges) + len(connected_components(g)) == g.n if g.n else True


def t_star(t: Graph) -> Graph:
    """Induced subgraph on the non-endpoints of a tree."""
    if not is_tree(t):
        raise NotATree(f"t_star needs a tree, got {t!r}")
    keep = classify_vertices(t).non_endpoints
    sub, _ = induced_subgraph(t, keep)
    return sub


def t_prime(t: Graph) -> Graph:
    """Iteratively delete unnecessary endpoints, smallest index first, until
    none remain.  The result is independent of deletion order up to
    isomorphism; the fixed rule makes the output itself deterministic."""
    if not is_tree(t):
        raise NotATree(f"t_prime needs a tree, got {t!r}")
    alive = set(t.vertices)

    def degree(v: int) -> int:
        return sum(1 for w in t.neighbors(v) if w in alive)

    while True:
        victim = None
        for v in sorted(alive):
            if degree(v) != 1:
                continue
            nb = next(w for w in t.neighbors(v) if w in alive)
            if degree(nb) >= 3:
                victim = v
                break
        if victim is None:
            break
        alive.remove(victim)
    sub, _ = induced_subgraph(t, alive)
    return sub


def _rooted_code(g: Graph, root: int, parent: int, alive: frozenset[int]) -> str:
    children = sorted(w for w in g.neighbors(root) if w != parent and w in alive)
    codes = sorted(_rooted_code(g, c, root, alive) for c in children)
    return "(" + "".join(codes) + ")"


def _tree_centers(g: Graph, block: tuple[int, ...]) -> list[int]:
    # classic leaf peeling; a tree has one or two centers
    alive = set(block)
    deg = {v: sum(1 for w in g.neighbors(v) if w in alive) for v in alive}
    layer = sorted(v for v in alive if deg[v] <= 1)
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.remove(v)
            for w in g.neighbors(v):
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = sorted(nxt)
    return sorted(alive)


def tree_canonical_form(t: Graph) -> str:
    """Canonical string of a forest; equal strings iff isomorphic.

    Each component is encoded rooted at its center (taking the smaller of the
    two codes when the center is an edge); component codes are sorted.  The
    empty graph gets a fixed sentinel."""
    if t.n == 0:
        return EMPTY_SENTINEL
    if not is_forest(t):
        raise NotAForest(f"canonical form needs a forest, got {t!r}")
    codes = []
    for block in connected_components(t):
        alive = frozenset(block)
        centers = _tree_centers(t, block)
        codes.append(min(_rooted_code(t, c, 0, alive) for c in centers))
    return "|".join(sorted(codes))


def relabel_graph(g: Graph, perm: Mapping[int, int]) -> Graph:
    """Apply a vertex permutation (old -> new, a bijection on 1..n)."""
    if sorted(perm) != list(g.vertices) or sorted(perm.values()) != list(g.vertices):
        raise ValueError("not a permutation of the vertex set")
    return Graph(g.n, [(perm[i], perm[j]) for (i, j) in g.edges])


def parse_graph(text: str) -> Graph:
    """Read the line format: a `vertices N` header, then `edge I J` lines with
    1 <= I < J <= N.  `#` starts a comment; blank lines are skipped."""
    n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        fields = line.split()
        if fields[0] == "vertices":
            if n is not None:
                raise ParseError(lineno, col, "duplicate vertices line")
            if len(fields) != 2 or not fields[1].isdigit():
                raise ParseError(lineno, col, "expected: vertices N")
            n = int(fields[1])
        elif fields[0] == "edge":
            if n is None:
                raise ParseError(lineno, col, "edge before vertices line")
            if len(fields) != 3:
                raise ParseError(lineno, col, "expected: edge I J")
            try:
                i, j = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(lineno, col, "edge endpoints must be integers")
            if i == j:
                raise SemanticError(f"line {lineno}: loop at vertex {i}")
            if not (1 <= i < j <= n):
                raise SemanticError(
                    f"line {lineno}: edge {i} {j} violates 1 <= I < J <= {n}"
                )
            if (i, j) in seen:
                raise SemanticError(f"line {lineno}: duplicate edge {i} {j}")
            seen.add((i, j))
            edges.append((i, j))
        else:
            raise ParseError(lineno, col, f"unknown directive {fields[0]!r}")
    if n is None:
        raise ParseError(1, 1, "missing vertices line")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"vertices {g.n}"]
    lines.extend(f"edge {i} {j}" for i, j in sorted(g.edges))
    return "\n".join(lines) + "\n"
