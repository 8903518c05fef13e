"""Shared builders: a small graph zoo, exhaustive unlabeled-tree enumeration,
a brute-force isomorphism check, and random element generators."""

from __future__ import annotations

from functools import lru_cache

from pcml import (
    CommPoly,
    Graph,
    LiePoly,
    ambient_basis,
    relabel_graph,
    tree_canonical_form,
)

# Unlabeled tree counts for n = 1..8 vertices (sequence 1,1,1,2,3,6,11,23).
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23}


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(n, center=1):
    """Star on n vertices with the given center vertex."""
    edges = [(min(center, v), max(center, v)) for v in range(1, n + 1) if v != center]
    return Graph(n, edges)


def edgeless_graph(n):
    return Graph(n, [])


@lru_cache(maxsize=None)
def trees_with(n):
    """One representative per isomorphism class of trees on n vertices.

    Grows trees by attaching vertex n as a leaf everywhere on every smaller
    tree; every n-vertex tree arises this way since deleting any leaf of it
    leaves a tree on n - 1 vertices."""
    if n == 1:
        return (Graph(1, []),)
    seen = {}
    for t in trees_with(n - 1):
        for v in t.vertices:
            cand = Graph(n, list(t.edges) + [(v, n)])
            seen.setdefault(tree_canonical_form(cand), cand)
    return tuple(seen[code] for code in sorted(seen))


def trees_up_to(max_n, min_n=1):
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(trees_with(n))
    return out


def brute_force_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test with degree pruning; fine for n <= 8."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    if sorted(map(g1.degree, g1.vertices)) != sorted(map(g2.degree, g2.vertices)):
        return False
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(v: int) -> bool:
        if v > g1.n:
            return True
        for w in g2.vertices:
            if w in used or g2.degree(w) != g1.degree(v):
                continue
            if all(g2.has_edge(w, assign[u]) == g1.has_edge(v, u) for u in assign):
                assign[v] = w
                used.add(w)
                if extend(v + 1):
                    return True
                used.remove(w)
                del assign[v]
        return False

    return extend(1)


def random_relabel(g: Graph, rng):
    """A uniformly random relabeling of g and the mapping used."""
    images = list(g.vertices)
    rng.shuffle(images)
    mapping = dict(zip(g.vertices, images))
    return relabel_graph(g, mapping), mapping


def random_multidegree(n, total, rng):
    delta = [0] * n
    for _ in range(total):
        delta[rng.randrange(n)] += 1
    return tuple(delta)


def random_homogeneous(n, delta, rng, span=9):
    """Random integer combination of the free basis words of multidegree delta."""
    terms = {}
    for w in ambient_basis(delta):
        c = rng.randint(-span, span)
        if c:
            terms[w] = c
    return LiePoly(n, terms)


def random_lie(n, rng, max_len=3, terms=3, span=5):
    """Random free element built from arbitrary left-normed words."""
    p = LiePoly.zero(n)
    for _ in range(terms):
        length = rng.randint(1, max_len)
        word = tuple(rng.randint(1, n) for _ in range(length))
        p = p + LiePoly.from_word(n, word, rng.randint(-span, span))
    return p


def random_comm(n, rng, max_deg=2, terms=2, span=4, domain=None):
    """Random commutative polynomial; domain restricts the variables used."""
    pool = list(domain) if domain is not None else list(range(1, n + 1))
    f = CommPoly.zero(n)
    for _ in range(terms):
        exps = [0] * n
        if pool:
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.choice(pool) - 1] += 1
        f = f + CommPoly.monomial(n, tuple(exps), rng.randint(-span, span))
    return f
