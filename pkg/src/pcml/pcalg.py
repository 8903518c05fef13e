"""Partially commutative metabelian Lie rings defined by graphs.

The ring M(X; G) imposes [x_i, x_j] = 0 exactly for edges {x_i, x_j} of G.
A free basis word survives or dies by a component test on the subgraph
induced by its letters: the word vanishes iff its first two letters lie in a
common component, and its first letter may be traded for any vertex of the
same component.  Canonical representatives take the largest such vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidInput,
    InvalidMapSpec,
    NotATree,
    NotInDerivedSubalgebra,
    PhiSearchExhausted,
    SemanticError,
)
from .freemetab import (
    CommPoly,
    Exponents,
    LieLike,
    LiePoly,
    LieWord,
    _is_basis_word,
    free_bracket,
    free_normal_form,
    letters_of,
    module_action,
    multidegrees_up_to,
)
from .graph import Graph, classify_vertices, connected_components, induced_subgraph, is_tree


class PCAlgebra:
    """M(X; G) for a fixed graph, with canonical forms in the free basis."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.n = graph.n
        self._comp_cache: dict[frozenset[int], tuple[frozenset[int], ...]] = {}

    def __repr__(self):
        return f"PCAlgebra({self.graph!r})"

    def _components_on(self, letters: frozenset[int]) -> tuple[frozenset[int], ...]:
        cached = self._comp_cache.get(letters)
        if cached is None:
            cached = tuple(
                frozenset(b) for b in connected_components(self.graph, letters)
            )
            self._comp_cache[letters] = cached
        return cached

    def _component_of(self, v: int, letters: frozenset[int]) -> frozenset[int]:
        for block in self._components_on(letters):
            if v in block:
                return block
        raise ValueError(f"vertex {v} not among letters {sorted(letters)}")

    # canonical forms -------------------------------------------------------

    def monomial_is_zero(self, word: LieWord) -> bool:
        """A length >= 2 basis word is zero iff its first two letters lie in
        one component of the subgraph induced by its letters."""
        if len(word) < 2 or not _is_basis_word(word):
            raise ValueError(f"not a basis word of length >= 2: {word}")
        letters = frozenset(word)
        return word[1] in self._component_of(word[0], letters)

    def canonical_representative(self, word: LieWord) -> LieWord | None:
        """None for a vanishing word; otherwise the class representative,
        whose first letter is the largest vertex reachable from the original
        first letter inside the induced subgraph."""
        if not _is_basis_word(word):
            raise ValueError(f"not a basis word: {word}")
        if len(word) == 1:
            return word
        if self.monomial_is_zero(word):
            return None
        block = self._component_of(word[0], frozenset(word))
        first = max(block)
        rest = sorted(word)
        rest.remove(first)
        rest.remove(word[1])
        return (first, word[1], *rest)

    def normal_form(self, expr: LieLike) -> LiePoly:
        """Free normal form followed by the representative map."""
        p = free_normal_form(self.n, expr)
        acc: dict[LieWord, int] = {}
        for word, coeff in p.terms.items():
            rep = self.canonical_representative(word)
            if rep is None:
                continue
            c = acc.get(rep, 0) + coeff
            if c:
                acc[rep] = c
            else:
                acc.pop(rep, None)
        return LiePoly(self.n, acc)

    def is_zero(self, expr: LieLike) -> bool:
        return self.normal_form(expr).is_zero()

    # arithmetic ------------------------------------------------------------

    def bracket(self, p: LieLike, q: LieLike) -> LiePoly:
        pn = self.normal_form(p)
        qn = self.normal_form(q)
        return self.normal_form(free_bracket(pn, qn))

    def module_action(self, u: LieLike, f: CommPoly) -> LiePoly:
        un = self.normal_form(u)
        if not un.in_derived():
            raise NotInDerivedSubalgebra(
                "module action needs an element of the derived subring"
            )
        return self.normal_form(module_action(un, f))

    # basis enumeration ------------------------------------------------------

    def basis_for_multidegree(self, delta: Exponents) -> tuple[LieWord, ...]:
        """Canonical representatives of multidegree delta, ascending: one per
        component of the induced subgraph on the support, skipping the
        component of the smallest letter."""
        if len(delta) != self.n:
            raise ValueError(f"multidegree over {len(delta)} vertices, need {self.n}")
        support = [i for i, e in enumerate(delta, start=1) if e]
        if not support:
            return ()
        if sum(delta) == 1:
            return ((support[0],),)
        if len(support) == 1:
            return ()
        low = support[0]
        words = []
        for block in self._components_on(frozenset(support)):
            if low in block:
                continue
            first = max(block)
            rest = list(letters_of(delta))
            rest.remove(first)
            rest.remove(low)
            words.append((first, low, *rest))
        return tuple(sorted(words))

    def enumerate_basis(self, k: int) -> list[tuple[Exponents, tuple[LieWord, ...]]]:
        """Basis words with total degree <= k, grouped by multidegree; groups
        ascend by total degree and then the dominance order; empty groups
        are dropped."""
        out = []
        for delta in multidegrees_up_to(self.n, k):
            words = self.basis_for_multidegree(delta)
            if words:
                out.append((delta, words))
        return out


# ---------------------------------------------------------------------------
# graph homomorphisms


@dataclass(frozen=True)
class IdentifyRule:
    component: int  # 1-based position in the source component list
    target: int  # vertex of the target graph
    scalars: tuple[int, ...]  # one per component vertex, ascending order


@dataclass(frozen=True)
class GraphMapSpec:
    kind: str  # projection | simplification | identification | phi
    keep: tuple[int, ...] = ()
    add_edges: tuple[tuple[int, int], ...] = ()
    rules: tuple[IdentifyRule, ...] = ()
    endpoint: int = 0
    sib1: int = 0
    sib2: int = 0
    lam: int = 1
    p: int = 1


@dataclass(frozen=True)
class GraphHom:
    source: PCAlgebra
    target: PCAlgebra
    images: dict[int, LiePoly] = field(repr=False)
    relabel: dict[int, int] | None = None
    warnings: tuple[str, ...] = ()

    def apply(self, p: LieLike) -> LiePoly:
        pn = self.source.normal_form(p)
        acc = LiePoly.zero(self.target.n)
        for word, coeff in pn.terms.items():
            img = self.images[word[0]]
            for letter in word[1:]:
                img = free_bracket(img, self.images[letter])
            acc = acc + coeff * img
        return self.target.normal_form(acc)


def apply_hom(hom: GraphHom, p: LieLike) -> LiePoly:
    return hom.apply(p)


def projection(alg: PCAlgebra, keep) -> GraphHom:
    """Quotient onto the sub-vertex-set: kept generators relabel, others
    map to zero."""
    keep = sorted(set(keep))
    if not keep:
        raise InvalidMapSpec("projection needs a nonempty vertex set")
    for v in keep:
        if not (1 <= v <= alg.n):
            raise InvalidMapSpec(f"projection vertex {v} out of range 1..{alg.n}")
    tgt_graph, relabel = induced_subgraph(alg.graph, keep)
    target = PCAlgebra(tgt_graph)
    images = {
        i: LiePoly.gen(target.n, relabel[i]) if i in relabel else LiePoly.zero(target.n)
        for i in alg.graph.vertices
    }
    return GraphHom(alg, target, images, relabel)


def identical_simplification(alg: PCAlgebra, new_edges) -> GraphHom:
    """Identity on generators into the graph enlarged by the listed edges."""
    norm: list[tuple[int, int]] = []
    seen = set()
    for e in new_edges:
        i, j = e
        if i == j:
            raise InvalidMapSpec(f"loop at vertex {i}")
        i, j = min(i, j), max(i, j)
        if not (1 <= i and j <= alg.n):
            raise InvalidMapSpec(f"edge ({i},{j}) out of range 1..{alg.n}")
        if alg.graph.has_edge(i, j):
            raise InvalidMapSpec(f"edge ({i},{j}) already present")
        if (i, j) in seen:
            raise InvalidMapSpec(f"edge ({i},{j}) listed twice")
        seen.add((i, j))
        norm.append((i, j))
    if not norm:
        raise InvalidMapSpec("simplification needs at least one new edge")
    target = PCAlgebra(Graph(alg.n, list(alg.graph.edges) + norm))
    images = {i: LiePoly.gen(alg.n, i) for i in alg.graph.vertices}
    return GraphHom(alg, target, images, None)


def identification(alg: PCAlgebra, rules) -> GraphHom:
    """Map whole components onto scalar multiples of fixed target vertices.

    Unlisted components persist identically (relabeled order-preserving);
    target indices past the kept block denote fresh isolated vertices."""
    rules = tuple(rules)
    comps = connected_components(alg.graph)
    used: set[int] = set()
    for rule in rules:
        if not (1 <= rule.component <= len(comps)):
            raise InvalidMapSpec(
                f"component {rule.component} out of range 1..{len(comps)}"
            )
        if rule.component in used:
            raise InvalidMapSpec(f"component {rule.component} identified twice")
        used.add(rule.component)
        if len(rule.scalars) != len(comps[rule.component - 1]):
            raise InvalidMapSpec(
                f"component {rule.component} has {len(comps[rule.component - 1])} "
                f"vertices but {len(rule.scalars)} scalars"
            )
        if rule.target < 1:
            raise InvalidMapSpec(f"bad target vertex {rule.target}")
    keep = [v for k, block in enumerate(comps, start=1) if k not in used for v in block]
    kept_graph, relabel = induced_subgraph(alg.graph, keep)
    fresh = max((r.target for r in rules), default=0) - kept_graph.n
    target = PCAlgebra(Graph(kept_graph.n + max(0, fresh), kept_graph.edges))
    images = {}
    warnings: list[str] = []
    for i in keep:
        images[i] = LiePoly.gen(target.n, relabel[i])
    for rule in rules:
        for v, scalar in zip(comps[rule.component - 1], rule.scalars):
            if scalar == 0:
                warnings.append(f"zero scalar collapses x{v}")
            images[v] = scalar * LiePoly.gen(target.n, rule.target)
    return GraphHom(alg, target, images, relabel, tuple(warnings))


def default_phi_config(
    g: Graph,
    endpoint: int | None = None,
    sib1: int | None = None,
    sib2: int | None = None,
) -> tuple[int, int, int]:
    """Fill in unspecified parts of an endpoint-killing configuration: the
    smallest unnecessary endpoint and the two smallest siblings."""
    if endpoint is None:
        unnecessary = classify_vertices(g).unnecessary_endpoints
        if not unnecessary:
            raise InvalidMapSpec("the graph has no unnecessary endpoint")
        endpoint = unnecessary[0]
    if not (1 <= endpoint <= g.n) or g.degree(endpoint) != 1:
        raise InvalidMapSpec(f"x{endpoint} is not an endpoint")
    hub = next(iter(g.neighbors(endpoint)))
    sibs = sorted(g.neighbors(hub) - {endpoint})
    if len(sibs) < 2:
        raise InvalidMapSpec(f"x{endpoint} is not an unnecessary endpoint")
    if sib1 is None:
        sib1 = next(s for s in sibs if s != sib2)
    if sib2 is None:
        sib2 = next(s for s in sibs if s != sib1)
    return endpoint, sib1, sib2


def _phi_parts(alg: PCAlgebra, endpoint: int, sib1: int, sib2: int):
    g = alg.graph
    if not (1 <= endpoint <= g.n):
        raise InvalidMapSpec(f"endpoint {endpoint} out of range 1..{g.n}")
    if g.degree(endpoint) != 1:
        raise InvalidMapSpec(f"x{endpoint} is not an endpoint")
    hub = next(iter(g.neighbors(endpoint)))
    if g.degree(hub) < 3:
        raise InvalidMapSpec(
            f"x{endpoint} is not unnecessary: its neighbor x{hub} has degree "
            f"{g.degree(hub)}"
        )
    sibs = g.neighbors(hub) - {endpoint}
    for s in (sib1, sib2):
        if s not in sibs:
            raise InvalidMapSpec(f"x{s} is not a sibling of x{endpoint} at x{hub}")
    if sib1 == sib2:
        raise InvalidMapSpec("siblings must be distinct")
    tgt_graph, relabel = induced_subgraph(g, set(g.vertices) - {endpoint})
    return PCAlgebra(tgt_graph), relabel


def phi_map(
    alg: PCAlgebra, endpoint: int, sib1: int, sib2: int, lam: int, p: int
) -> GraphHom:
    """Kill an unnecessary endpoint: it maps to lam*p times the second
    sibling plus lam times the first; everything else is fixed."""
    if lam < 1 or p < 1:
        raise InvalidMapSpec("lambda and p must be positive integers")
    target, relabel = _phi_parts(alg, endpoint, sib1, sib2)
    images = {
        i: LiePoly.gen(target.n, relabel[i])
        for i in alg.graph.vertices
        if i != endpoint
    }
    images[endpoint] = (lam * p) * LiePoly.gen(target.n, relabel[sib2]) + lam * (
        LiePoly.gen(target.n, relabel[sib1])
    )
    return GraphHom(alg, target, images, relabel)


def build_hom(alg: PCAlgebra, spec: GraphMapSpec) -> GraphHom:
    if spec.kind == "projection":
        return projection(alg, spec.keep)
    if spec.kind == "simplification":
        return identical_simplification(alg, spec.add_edges)
    if spec.kind == "identification":
        return identification(alg, spec.rules)
    if spec.kind == "phi":
        return phi_map(alg, spec.endpoint, spec.sib1, spec.sib2, spec.lam, spec.p)
    raise InvalidMapSpec(f"unknown map kind {spec.kind!r}")


def parse_map_spec(text: str) -> GraphMapSpec:
    """Read a one-map spec file.

    Lines: `keep I J ...` (projection), `addedge I J` (simplification),
    `identify comp=K target=T scalars=A,B,...`, or
    `phi endpoint=E sib1=A sib2=B lambda=L p=P`.  One kind per file."""
    keep: list[int] = []
    add_edges: list[tuple[int, int]] = []
    rules: list[IdentifyRule] = []
    phi_args: dict[str, int] = {}
    kinds: set[str] = set()

    def kv_fields(fields, lineno) -> dict[str, str]:
        out = {}
        for f in fields:
            if "=" not in f:
                raise SemanticError(f"line {lineno}: expected key=value, got {f!r}")
            k, v = f.split("=", 1)
            out[k] = v
        return out

    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        head = fields[0]
        try:
            if head == "keep":
                kinds.add("projection")
                keep.extend(int(f) for f in fields[1:])
            elif head == "addedge":
                kinds.add("simplification")
                if len(fields) != 3:
                    raise SemanticError(f"line {lineno}: expected addedge I J")
                add_edges.append((int(fields[1]), int(fields[2])))
            elif head == "identify":
                kinds.add("identification")
                kv = kv_fields(fields[1:], lineno)
                rules.append(
                    IdentifyRule(
                        component=int(kv["comp"]),
                        target=int(kv["target"]),
                        scalars=tuple(int(s) for s in kv["scalars"].split(",")),
                    )
                )
            elif head == "phi":
                kinds.add("phi")
                kv = kv_fields(fields[1:], lineno)
                phi_args = {
                    "endpoint": int(kv["endpoint"]),
                    "sib1": int(kv["sib1"]),
                    "sib2": int(kv["sib2"]),
                    "lam": int(kv["lambda"]),
                    "p": int(kv["p"]),
                }
            else:
                raise SemanticError(f"line {lineno}: unknown directive {head!r}")
        except (KeyError, ValueError) as exc:
            raise SemanticError(f"line {lineno}: malformed {head} line ({exc})")
    if len(kinds) != 1:
        raise SemanticError(
            f"a map spec needs exactly one kind of directive, found {sorted(kinds)}"
        )
    kind = kinds.pop()
    if kind == "projection":
        return GraphMapSpec(kind="projection", keep=tuple(keep))
    if kind == "simplification":
        return GraphMapSpec(kind="simplification", add_edges=tuple(add_edges))
    if kind == "identification":
        return GraphMapSpec(kind="identification", rules=tuple(rules))
    return GraphMapSpec(kind="phi", **phi_args)


# ---------------------------------------------------------------------------
# the injective-on-a-finite-set search


def phi_closure(alg: PCAlgebra, gamma) -> list[LiePoly]:
    """The finite set whose nonvanishing certifies injectivity on gamma:
    gamma itself plus all g_i - g_j, g_i + g_j - g_k and [g_i, g_j] - g_k,
    zeros dropped, duplicates removed in construction order."""
    base = [alg.normal_form(g) for g in gamma]
    if any(g.is_zero() for g in base):
        raise InvalidInput("0 has no place in a finite submodel set")
    out: dict[LiePoly, None] = dict.fromkeys(base)
    for gi in base:
        for gj in base:
            out.setdefault(gi - gj, None)
    for gi in base:
        for gj in base:
            for gk in base:
                out.setdefault(gi + gj - gk, None)
                out.setdefault(alg.bracket(gi, gj) - gk, None)
    return [h for h in out if not h.is_zero()]


def find_injective_phi(
    alg: PCAlgebra,
    gamma,
    endpoint: int | None = None,
    sib1: int | None = None,
    sib2: int | None = None,
    max_lambda: int = 64,
    max_p: int = 64,
) -> tuple[int, int]:
    """Smallest (p, then lambda) parameters whose endpoint-killing map sends
    no element of the closure set to zero.  The graph must be a tree; the
    endpoint configuration defaults to the smallest unnecessary endpoint with
    its two smallest siblings."""
    if not is_tree(alg.graph):
        raise NotATree("the injectivity search runs over trees")
    endpoint, sib1, sib2 = default_phi_config(alg.graph, endpoint, sib1, sib2)
    target, relabel = _phi_parts(alg, endpoint, sib1, sib2)
    closure = phi_closure(alg, gamma)
    fixed = {
        i: LiePoly.gen(target.n, relabel[i])
        for i in alg.graph.vertices
        if i != endpoint
    }
    for p in range(1, max_p + 1):
        for lam in range(1, max_lambda + 1):
            images = dict(fixed)
            images[endpoint] = (lam * p) * LiePoly.gen(
                target.n, relabel[sib2]
            ) + lam * LiePoly.gen(target.n, relabel[sib1])
            hom = GraphHom(alg, target, images, relabel)
            if all(not hom.apply(h).is_zero() for h in closure):
                return (lam, p)
    raise PhiSearchExhausted(max_lambda, max_p)
