"""Annihilators of brackets, centralizers of generators, and witness checkers.

Annihilator: for a non-adjacent pair (x_i, x_j) in one component, the
annihilator of [x_i, x_j] is the monomial ideal generated by the interior
products of the simple paths from x_i to x_j; membership is monomial
divisibility.  Different components give the zero ideal.

Centralizer of x: isolated vertices centralize only themselves, endpoints
add their neighbor, and a vertex of degree >= 2 is centralized by integer
combinations of itself, its neighbors, and elements [x_i, x_j].f with both
ends adjacent to x and f free of x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AdjacentPair, NoNonEndpoint, NotATree, ZeroCoefficient
from .freemetab import CommPoly, Exponents, LiePoly
from .graph import Graph, classify_vertices, is_tree, simple_paths
from .parsing import format_word
from .pcalg import PCAlgebra


@dataclass(frozen=True)
class PathIdeal:
    n: int
    i: int
    j: int
    generators: tuple[Exponents, ...]  # squarefree, deduplicated, ascending

    def is_zero_ideal(self) -> bool:
        return not self.generators


def annihilator_generators(alg: PCAlgebra, i: int, j: int) -> PathIdeal:
    """Interior products of the simple paths i -> j, as a monomial ideal."""
    g = alg.graph
    if not (1 <= i <= g.n and 1 <= j <= g.n) or i == j:
        raise ValueError(f"need two distinct vertices in 1..{g.n}")
    if g.has_edge(i, j):
        raise AdjacentPair(f"[x{i},x{j}] vanishes; its annihilator is everything")
    gens: set[Exponents] = set()
    for interior in simple_paths(g, i, j):
        exps = [0] * g.n
        for v in interior:
            exps[v - 1] = 1
        gens.add(tuple(exps))
    return PathIdeal(g.n, i, j, tuple(sorted(gens)))


def _divides(gen: Exponents, exps: Exponents) -> bool:
    return all(a <= b for a, b in zip(gen, exps))


def in_annihilator(alg: PCAlgebra, i: int, j: int, f: CommPoly) -> bool:
    """f.[x_i, x_j] = 0 iff every monomial of f is divisible by a generator."""
    ideal = annihilator_generators(alg, i, j)
    return all(
        any(_divides(gen, exps) for gen in ideal.generators) for exps in f.terms
    )


@dataclass(frozen=True)
class CentralizerDescription:
    case: str  # isolated | endpoint | general
    target: int
    linear: tuple[int, ...]  # generators admitted in the linear part
    quadratic_pairs: tuple[tuple[int, int], ...]  # bracket seeds [x_i, x_j]
    f_domain: tuple[int, ...]  # variables admitted in the acting polynomials


def centralizer_description(alg: PCAlgebra, x: int) -> CentralizerDescription:
    g = alg.graph
    if not (1 <= x <= g.n):
        raise ValueError(f"vertex {x} out of range 1..{g.n}")
    nbrs = sorted(g.neighbors(x))
    if not nbrs:
        return CentralizerDescription("isolated", x, (x,), (), ())
    f_domain = tuple(v for v in g.vertices if v != x)
    if len(nbrs) == 1:
        return CentralizerDescription(
            "endpoint", x, tuple(sorted((nbrs[0], x))), (), f_domain
        )
    pairs = tuple(
        (nbrs[a], nbrs[b]) for a in range(len(nbrs)) for b in range(a + 1, len(nbrs))
    )
    return CentralizerDescription(
        "general", x, tuple(sorted(nbrs + [x])), pairs, f_domain
    )


def in_centralizer(alg: PCAlgebra, u, v) -> bool:
    """True iff [v, u] = 0 in the algebra."""
    return alg.bracket(v, u).is_zero()


def centralizer_intersection_check(
    alg: PCAlgebra, coefficients, c
) -> tuple[bool, bool]:
    """(membership in the centralizer-in-M' of the combination, membership in
    the intersection of the single-generator centralizers-in-M').

    `coefficients` is a list of (vertex, nonzero integer) pairs."""
    pairs = list(coefficients)
    if not pairs:
        raise ValueError("need at least one (vertex, coefficient) pair")
    seen = set()
    for vertex, alpha in pairs:
        if not (1 <= vertex <= alg.n):
            raise ValueError(f"vertex {vertex} out of range 1..{alg.n}")
        if vertex in seen:
            raise ValueError(f"vertex {vertex} listed twice")
        seen.add(vertex)
        if alpha == 0:
            raise ZeroCoefficient(f"coefficient of x{vertex} must be nonzero")
    cn = alg.normal_form(c)
    if not cn.in_derived():
        return (False, False)
    combo = LiePoly.zero(alg.n)
    for vertex, alpha in pairs:
        combo = combo + alpha * LiePoly.gen(alg.n, vertex)
    lhs = alg.bracket(cn, combo).is_zero()
    rhs = all(
        alg.bracket(cn, LiePoly.gen(alg.n, vertex)).is_zero() for vertex, _ in pairs
    )
    return (lhs, rhs)


# ---------------------------------------------------------------------------
# witness checkers for the two existential formulas


@dataclass(frozen=True)
class Conjunct:
    expr: str
    expected: bool
    got: bool

    def holds(self) -> bool:
        return self.expected == self.got

    def report_line(self) -> str:
        exp = "true" if self.expected else "false"
        got = "true" if self.got else "false"
        return f"CONJUNCT {self.expr} EXPECTED {exp} GOT {got}"


@dataclass(frozen=True)
class WitnessReport:
    kind: str
    assignment: tuple[tuple[str, int], ...]
    conjuncts: tuple[Conjunct, ...]

    def all_hold(self) -> bool:
        return all(c.holds() for c in self.conjuncts)

    def assignment_line(self) -> str:
        return "assignment: " + " ".join(f"{k}=x{v}" for k, v in self.assignment)


def _eq_conjunct(alg: PCAlgebra, word: tuple[int, ...], want_zero: bool) -> Conjunct:
    got_zero = alg.is_zero([(1, _raw_word(word))])
    tag = "=0" if want_zero else "!=0"
    return Conjunct(f"{format_word(word)}{tag}", True, got_zero == want_zero)


def _raw_word(word: tuple[int, ...]):
    from .freemetab import RawBracket, RawGen

    return RawBracket(tuple(RawGen(i) for i in word))


def phi_formula_witness(t: Graph) -> WitnessReport:
    """Verify the canonical witness of the tree-defining formula.

    The non-endpoints z_1 < ... < z_k take themselves as witnesses, with
    u_i, v_i their two smallest neighbors.  Conjuncts: [u_i, v_i] != 0,
    [u_i, v_i, z_i] = 0, [u_i, v_i, z_j] != 0 for i != j, and [z_i, z_j]
    zero or not according to adjacency in the tree."""
    if not is_tree(t):
        raise NotATree("the formula witness is defined over trees")
    zs = classify_vertices(t).non_endpoints
    if not zs:
        raise NoNonEndpoint("every vertex is an endpoint; the formula is empty")
    alg = PCAlgebra(t)
    uv = []
    assignment: list[tuple[str, int]] = []
    for pos, z in enumerate(zs, start=1):
        nbrs = sorted(t.neighbors(z))
        if len(nbrs) < 2:
            raise NoNonEndpoint(f"x{z} has fewer than two neighbors")
        uv.append((nbrs[0], nbrs[1]))
        assignment.append((f"z{pos}", z))
        assignment.append((f"u{pos}", nbrs[0]))
        assignment.append((f"v{pos}", nbrs[1]))
    conjuncts: list[Conjunct] = []
    k = len(zs)
    for i in range(k):
        u, v = uv[i]
        conjuncts.append(_eq_conjunct(alg, (u, v), want_zero=False))
    for i in range(k):
        u, v = uv[i]
        conjuncts.append(_eq_conjunct(alg, (u, v, zs[i]), want_zero=True))
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            u, v = uv[i]
            conjuncts.append(_eq_conjunct(alg, (u, v, zs[j]), want_zero=False))
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = t.has_edge(zs[i], zs[j])
            conjuncts.append(_eq_conjunct(alg, (zs[i], zs[j]), want_zero=adjacent))
    return WitnessReport("formula", tuple(assignment), tuple(conjuncts))


def two_nonendpoint_witness(t: Graph) -> WitnessReport | None:
    """Verify an induced-path quadruple certifying two non-endpoints.

    Picks the lexicographically smallest adjacent pair of non-endpoints
    (z2, z3), then the smallest outside neighbors z1 of z2 and z4 of z3.
    Returns None when the tree has fewer than two non-endpoints."""
    if not is_tree(t):
        raise NotATree("the induced-path witness is defined over trees")
    zs = classify_vertices(t).non_endpoints
    if len(zs) < 2:
        return None
    pair = None
    for a in zs:
        for b in zs:
            if a < b and t.has_edge(a, b):
                pair = (a, b)
                break
        if pair:
            break
    assert pair is not None, "adjacent non-endpoints exist in a tree with two"
    z2, z3 = pair
    z1 = min(v for v in t.neighbors(z2) if v != z3)
    z4 = min(v for v in t.neighbors(z3) if v != z2)
    alg = PCAlgebra(t)
    quad = (z1, z2, z3, z4)
    conjuncts = (
        _eq_conjunct(alg, (z1, z2), want_zero=True),
        _eq_conjunct(alg, (z2, z3), want_zero=True),
        _eq_conjunct(alg, (z3, z4), want_zero=True),
        _eq_conjunct(alg, (z1, z3), want_zero=False),
        _eq_conjunct(alg, (z1, z4), want_zero=False),
        _eq_conjunct(alg, (z2, z4), want_zero=False),
    )
    assignment = tuple((f"z{k}", v) for k, v in enumerate(quad, start=1))
    return WitnessReport("path", assignment, conjuncts)
