"""Quotient arithmetic and the four graph-map constructions."""

import random

import pytest

from pcml import (
    Graph,
    GraphMapSpec,
    IdentifyRule,
    InvalidInput,
    InvalidMapSpec,
    LiePoly,
    NotATree,
    NotInDerivedSubalgebra,
    PCAlgebra,
    PhiSearchExhausted,
    SemanticError,
    build_hom,
    default_phi_config,
    find_injective_phi,
    free_normal_form,
    identical_simplification,
    identification,
    parse_comm,
    parse_lie,
    parse_map_spec,
    phi_closure,
    phi_map,
    projection,
)
from helpers import edgeless_graph, path_graph, cycle_graph, star_graph, random_lie

P4 = path_graph(4)
C4 = cycle_graph(4)
# P4 plus a leaf hanging off x2; x1 and x5 are its unnecessary endpoints
CHAIR = Graph(5, [(1, 2), (2, 3), (3, 4), (2, 5)])
# center x2 of degree four; killing x5 leaves a star
STEM = Graph(5, [(1, 2), (2, 3), (2, 4), (2, 5)])


def w(graph, word):
    return LiePoly.from_word(graph.n, word)


# --- canonical forms -------------------------------------------------------


def test_monomial_is_zero_examples():
    alg = PCAlgebra(P4)
    assert alg.monomial_is_zero((2, 1))
    assert alg.monomial_is_zero((3, 1, 2))
    assert alg.monomial_is_zero((4, 2, 3))
    assert not alg.monomial_is_zero((3, 1))
    assert not alg.monomial_is_zero((4, 1))
    assert not alg.monomial_is_zero((4, 1, 2))


def test_monomial_is_zero_rejects_non_basis_input():
    alg = PCAlgebra(P4)
    with pytest.raises(ValueError):
        alg.monomial_is_zero((1,))
    with pytest.raises(ValueError):
        alg.monomial_is_zero((1, 2))  # second letter must be the smallest


def test_canonical_representative_examples():
    alg = PCAlgebra(P4)
    assert alg.canonical_representative((3, 1, 4)) == (4, 1, 3)
    assert alg.canonical_representative((3, 1, 4, 4)) == (4, 1, 3, 4)
    assert alg.canonical_representative((2, 1)) is None
    assert alg.canonical_representative((4, 1)) == (4, 1)
    assert alg.canonical_representative((4, 1, 2)) == (4, 1, 2)
    assert alg.canonical_representative((3,)) == (3,)


def test_canonical_representative_on_cycle():
    alg = PCAlgebra(C4)
    assert alg.canonical_representative((3, 1)) == (3, 1)
    assert alg.canonical_representative((2, 1)) is None
    # letters 1,2,3 induce a path, so the first two letters get connected
    assert alg.canonical_representative((3, 1, 2)) is None


def test_normal_form_anchors():
    alg = PCAlgebra(P4)
    assert alg.normal_form(w(P4, (2, 1))).is_zero()
    assert alg.normal_form(w(P4, (3, 1, 4))) == LiePoly(4, {(4, 1, 3): 1})
    p = w(P4, (3, 1)) + w(P4, (2, 1))
    assert alg.normal_form(p) == LiePoly(4, {(3, 1): 1})
    # the two words are equal in the quotient, so their difference dies
    assert alg.is_zero(w(P4, (3, 1, 4)) - w(P4, (4, 1, 3)))


def test_defining_relations_match_edges():
    for g in (P4, C4, star_graph(4), CHAIR):
        alg = PCAlgebra(g)
        for i in range(1, g.n + 1):
            for j in range(i + 1, g.n + 1):
                vanishes = alg.bracket(LiePoly.gen(g.n, i), LiePoly.gen(g.n, j)).is_zero()
                assert vanishes == g.has_edge(i, j)


def test_edgeless_quotient_is_free():
    g = edgeless_graph(3)
    alg = PCAlgebra(g)
    rng = random.Random(901)
    for _ in range(40):
        p = random_lie(g.n, rng)
        assert alg.normal_form(p) == free_normal_form(g.n, p)


def test_normal_form_idempotent_and_linear():
    rng = random.Random(902)
    for g in (P4, C4, CHAIR):
        alg = PCAlgebra(g)
        for _ in range(30):
            p = random_lie(g.n, rng)
            q = random_lie(g.n, rng)
            c = rng.randint(-4, 4)
            nf = alg.normal_form
            assert nf(nf(p)) == nf(p)
            assert nf(p + q) == nf(p) + nf(q)
            assert nf(c * p) == c * nf(p)


def test_bracket_laws_survive_the_quotient():
    rng = random.Random(903)
    for g in (P4, C4, star_graph(5)):
        alg = PCAlgebra(g)
        for _ in range(15):
            a, b, c, d = (random_lie(g.n, rng, max_len=3) for _ in range(4))
            assert alg.bracket(a, a).is_zero()
            assert (alg.bracket(a, b) + alg.bracket(b, a)).is_zero()
            jac = (
                alg.bracket(alg.bracket(a, b), c)
                + alg.bracket(alg.bracket(b, c), a)
                + alg.bracket(alg.bracket(c, a), b)
            )
            assert alg.is_zero(jac)
            assert alg.bracket(alg.bracket(a, b), alg.bracket(c, d)).is_zero()


def test_module_action_examples():
    alg = PCAlgebra(P4)
    u = w(P4, (4, 1))
    assert alg.module_action(u, parse_comm(4, "x2")) == LiePoly(4, {(4, 1, 2): 1})
    c4 = PCAlgebra(C4)
    v = w(C4, (3, 1))
    assert c4.module_action(v, parse_comm(4, "x2*x4")).is_zero()
    assert c4.module_action(v, parse_comm(4, "x2")).is_zero()
    assert c4.module_action(v, parse_comm(4, "x1")) == LiePoly(4, {(3, 1, 1): 1})


def test_module_action_requires_derived_element():
    alg = PCAlgebra(P4)
    with pytest.raises(NotInDerivedSubalgebra):
        alg.module_action(LiePoly.gen(4, 1), parse_comm(4, "x2"))
    # an element that dies in the quotient acts as zero
    assert alg.module_action(w(P4, (2, 1)), parse_comm(4, "x3")).is_zero()


# --- basis enumeration -----------------------------------------------------


def test_enumerate_basis_on_an_edge():
    alg = PCAlgebra(Graph(2, [(1, 2)]))
    assert alg.enumerate_basis(2) == [((1, 0), ((1,),)), ((0, 1), ((2,),))]


def test_enumerate_basis_edgeless_pair():
    alg = PCAlgebra(edgeless_graph(2))
    assert alg.enumerate_basis(2) == [
        ((1, 0), ((1,),)),
        ((0, 1), ((2,),)),
        ((1, 1), ((2, 1),)),
    ]


def test_basis_for_multidegree_examples():
    alg = PCAlgebra(P4)
    assert alg.basis_for_multidegree((1, 0, 1, 1)) == ((4, 1, 3),)
    assert alg.basis_for_multidegree((1, 1, 0, 0)) == ()
    c4 = PCAlgebra(C4)
    assert c4.basis_for_multidegree((1, 1, 1, 1)) == ()
    assert c4.basis_for_multidegree((1, 0, 1, 0)) == ((3, 1),)
    with pytest.raises(ValueError):
        alg.basis_for_multidegree((1, 0, 0))


def test_basis_words_are_their_own_representatives():
    rng = random.Random(904)
    for g in (P4, C4, CHAIR, star_graph(5)):
        alg = PCAlgebra(g)
        for delta, words in alg.enumerate_basis(4):
            support = [i for i, e in enumerate(delta, start=1) if e]
            if sum(delta) >= 2:
                from pcml import connected_components

                comps = connected_components(g, support)
                low = min(support)
                expected = sum(1 for b in comps if low not in b)
                assert len(words) == expected
            for word in words:
                assert alg.canonical_representative(word) == word
                counts = [0] * g.n
                for letter in word:
                    counts[letter - 1] += 1
                assert tuple(counts) == delta
    del rng


# --- projections -----------------------------------------------------------


def test_projection_kills_dropped_generators():
    alg = PCAlgebra(P4)
    h = projection(alg, [1, 2])
    assert h.target.graph == Graph(2, [(1, 2)])
    assert h.relabel == {1: 1, 2: 2}
    assert h.apply(w(P4, (4, 1))).is_zero()
    assert h.apply(LiePoly.gen(4, 1)) == LiePoly.gen(2, 1)


def test_projection_relabels_kept_vertices():
    alg = PCAlgebra(P4)
    h = projection(alg, [1, 3])
    assert h.target.graph == edgeless_graph(2)
    assert h.apply(w(P4, (3, 1))) == LiePoly(2, {(2, 1): 1})
    h24 = projection(alg, [2, 4])
    assert h24.relabel == {2: 1, 4: 2}
    assert h24.apply(w(P4, (4, 2))) == LiePoly(2, {(2, 1): 1})


def test_projection_rejects_bad_vertex_sets():
    alg = PCAlgebra(P4)
    with pytest.raises(InvalidMapSpec):
        projection(alg, [])
    with pytest.raises(InvalidMapSpec):
        projection(alg, [0, 2])
    with pytest.raises(InvalidMapSpec):
        projection(alg, [1, 5])


# --- identical simplifications ---------------------------------------------


def test_simplification_adds_relations():
    alg = PCAlgebra(P4)
    h = identical_simplification(alg, [(1, 3)])
    assert h.target.graph.has_edge(1, 3)
    assert h.apply(w(P4, (3, 1))).is_zero()
    assert h.apply(w(P4, (4, 1))) == LiePoly(4, {(4, 1): 1})


def test_simplification_normalizes_edge_order():
    alg = PCAlgebra(P4)
    h = identical_simplification(alg, [(3, 1)])
    assert h.target.graph.has_edge(1, 3)


@pytest.mark.parametrize(
    "edges",
    [
        [(2, 2)],
        [(1, 2)],  # already present
        [(1, 3), (3, 1)],
        [],
        [(0, 3)],
        [(1, 9)],
    ],
)
def test_simplification_rejects_bad_edges(edges):
    alg = PCAlgebra(P4)
    with pytest.raises(InvalidMapSpec):
        identical_simplification(alg, edges)


# --- identifications -------------------------------------------------------

TWO_COMP = Graph(5, [(1, 2), (3, 4), (4, 5)])


def test_identification_collapses_a_component():
    alg = PCAlgebra(TWO_COMP)
    h = identification(alg, [IdentifyRule(component=1, target=4, scalars=(2, 3))])
    # kept component relabels to a path on 1..3, target 4 is fresh and isolated
    assert h.target.graph == Graph(4, [(1, 2), (2, 3)])
    assert h.warnings == ()
    assert h.apply(LiePoly.gen(5, 1)) == 2 * LiePoly.gen(4, 4)
    assert h.apply(LiePoly.gen(5, 2)) == 3 * LiePoly.gen(4, 4)
    assert h.apply(LiePoly.gen(5, 4)) == LiePoly.gen(4, 2)
    assert h.apply(w(TWO_COMP, (2, 1))).is_zero()
    assert h.apply(w(TWO_COMP, (3, 1))) == LiePoly(4, {(4, 1): -2})


def test_identification_of_every_component():
    alg = PCAlgebra(TWO_COMP)
    h = identification(
        alg,
        [IdentifyRule(1, 1, (1, 1)), IdentifyRule(2, 2, (1, 1, 1))],
    )
    assert h.target.graph == edgeless_graph(2)
    assert h.apply(w(TWO_COMP, (3, 1))) == LiePoly(2, {(2, 1): 1})


def test_identification_onto_kept_vertex():
    g = Graph(3, [(1, 2)])
    alg = PCAlgebra(g)
    h = identification(alg, [IdentifyRule(2, 1, (5,))])
    assert h.target.graph == Graph(2, [(1, 2)])
    assert h.apply(LiePoly.gen(3, 3)) == 5 * LiePoly.gen(2, 1)
    assert h.apply(w(g, (3, 2))).is_zero()


def test_identification_zero_scalar_warns():
    alg = PCAlgebra(TWO_COMP)
    h = identification(alg, [IdentifyRule(1, 4, (0, 1))])
    assert h.warnings == ("zero scalar collapses x1",)
    assert h.apply(LiePoly.gen(5, 1)).is_zero()


@pytest.mark.parametrize(
    "rules",
    [
        [IdentifyRule(0, 1, (1, 1))],
        [IdentifyRule(3, 1, (1, 1))],
        [IdentifyRule(1, 1, (1, 1)), IdentifyRule(1, 2, (1, 1))],
        [IdentifyRule(1, 1, (1,))],
        [IdentifyRule(1, 0, (1, 1))],
    ],
)
def test_identification_rejects_bad_rules(rules):
    alg = PCAlgebra(TWO_COMP)
    with pytest.raises(InvalidMapSpec):
        identification(alg, rules)


# --- endpoint-killing maps -------------------------------------------------


def test_phi_map_example():
    alg = PCAlgebra(STEM)
    h = phi_map(alg, endpoint=5, sib1=3, sib2=4, lam=2, p=3)
    assert h.target.graph == Graph(4, [(1, 2), (2, 3), (2, 4)])
    assert h.apply(LiePoly.gen(5, 5)) == LiePoly(4, {(4,): 6, (3,): 2})
    assert h.apply(w(STEM, (5, 1))) == LiePoly(4, {(4, 1): 6, (3, 1): 2})
    # the hub relation must be preserved
    assert h.apply(w(STEM, (5, 2))).is_zero()


def test_phi_map_validation():
    alg = PCAlgebra(STEM)
    with pytest.raises(InvalidMapSpec):
        phi_map(alg, 5, 3, 4, 0, 1)
    with pytest.raises(InvalidMapSpec):
        phi_map(alg, 2, 3, 4, 1, 1)  # hub is not an endpoint
    with pytest.raises(InvalidMapSpec):
        phi_map(alg, 5, 2, 4, 1, 1)  # the hub is not a sibling
    with pytest.raises(InvalidMapSpec):
        phi_map(alg, 5, 4, 4, 1, 1)
    p4 = PCAlgebra(P4)
    with pytest.raises(InvalidMapSpec):
        phi_map(p4, 1, 3, 4, 1, 1)  # neighbor of x1 has degree two


def test_default_phi_config():
    assert default_phi_config(CHAIR) == (1, 3, 5)
    assert default_phi_config(CHAIR, endpoint=5, sib2=3) == (5, 1, 3)
    with pytest.raises(InvalidMapSpec):
        default_phi_config(P4)
    with pytest.raises(InvalidMapSpec):
        default_phi_config(CHAIR, endpoint=4)
    with pytest.raises(InvalidMapSpec):
        default_phi_config(CHAIR, endpoint=2)


def test_homs_preserve_brackets_and_sums():
    rng = random.Random(905)
    cases = [
        projection(PCAlgebra(P4), [1, 2, 4]),
        identical_simplification(PCAlgebra(P4), [(1, 4)]),
        identification(PCAlgebra(TWO_COMP), [IdentifyRule(1, 4, (2, 3))]),
        phi_map(PCAlgebra(STEM), 5, 3, 4, 2, 3),
    ]
    for h in cases:
        n = h.source.n
        for _ in range(20):
            p = random_lie(n, rng, max_len=3)
            q = random_lie(n, rng, max_len=3)
            assert h.apply(p + q) == h.target.normal_form(h.apply(p) + h.apply(q))
            assert h.apply(h.source.bracket(p, q)) == h.target.bracket(
                h.apply(p), h.apply(q)
            )


def test_homs_preserve_defining_relations():
    cases = [
        projection(PCAlgebra(P4), [2, 3, 4]),
        identical_simplification(PCAlgebra(C4), [(1, 3)]),
        identification(PCAlgebra(TWO_COMP), [IdentifyRule(2, 3, (1, 2, 3))]),
        phi_map(PCAlgebra(STEM), 5, 4, 3, 1, 2),
    ]
    for h in cases:
        g = h.source.graph
        for i, j in g.edges:
            assert h.apply(w(g, (j, i))).is_zero()


# --- map spec files --------------------------------------------------------


def test_parse_map_spec_projection():
    spec = parse_map_spec("keep 1 2 3\n")
    assert spec == GraphMapSpec(kind="projection", keep=(1, 2, 3))
    spec = parse_map_spec("keep 1 2\nkeep 4\n")
    assert spec.keep == (1, 2, 4)


def test_parse_map_spec_simplification():
    spec = parse_map_spec("addedge 1 3\n# widen\naddedge 2 4\n")
    assert spec == GraphMapSpec(kind="simplification", add_edges=((1, 3), (2, 4)))


def test_parse_map_spec_identification():
    spec = parse_map_spec("identify comp=1 target=4 scalars=2,3\n")
    assert spec.rules == (IdentifyRule(component=1, target=4, scalars=(2, 3)),)


def test_parse_map_spec_phi():
    spec = parse_map_spec("phi endpoint=5 sib1=3 sib2=4 lambda=2 p=3\n")
    assert spec == GraphMapSpec(
        kind="phi", endpoint=5, sib1=3, sib2=4, lam=2, p=3
    )


@pytest.mark.parametrize(
    "text",
    [
        "",
        "keep 1\naddedge 1 2\n",
        "addedge 1\n",
        "identify comp=1 scalars=1\n",
        "frobnicate 1\n",
        "phi endpoint=x sib1=3 sib2=4 lambda=2 p=3\n",
        "identify comp 1\n",
        "keep one two\n",
    ],
)
def test_parse_map_spec_rejects(text):
    with pytest.raises(SemanticError):
        parse_map_spec(text)


def test_build_hom_dispatch():
    alg = PCAlgebra(STEM)
    h = build_hom(alg, parse_map_spec("phi endpoint=5 sib1=3 sib2=4 lambda=2 p=3\n"))
    assert h.apply(LiePoly.gen(5, 5)) == LiePoly(4, {(4,): 6, (3,): 2})
    with pytest.raises(InvalidMapSpec):
        build_hom(alg, GraphMapSpec(kind="weird"))


# --- the injectivity search ------------------------------------------------


def test_phi_closure_contents():
    alg = PCAlgebra(edgeless_graph(2))
    gamma = [LiePoly.gen(2, 1)]
    closure = phi_closure(alg, gamma)
    assert closure == [LiePoly.gen(2, 1), -LiePoly.gen(2, 1)]


def test_phi_closure_properties():
    alg = PCAlgebra(CHAIR)
    gamma = [parse_lie(5, "x1"), parse_lie(5, "x3 + x4"), parse_lie(5, "[x4,x1]")]
    base = [alg.normal_form(g) for g in gamma]
    closure = phi_closure(alg, gamma)
    assert closure[: len(base)] == base
    assert len(set(closure)) == len(closure)
    assert all(not h.is_zero() for h in closure)
    pool = set(closure)
    for gi in base:
        for gj in base:
            d = gi - gj
            assert d.is_zero() or d in pool
            for gk in base:
                s = gi + gj - gk
                assert s.is_zero() or s in pool
                b = alg.bracket(gi, gj) - gk
                assert b.is_zero() or b in pool


def test_phi_closure_rejects_zero():
    alg = PCAlgebra(CHAIR)
    with pytest.raises(InvalidInput):
        phi_closure(alg, [LiePoly.gen(5, 1), w(CHAIR, (2, 1))])


def test_find_injective_phi_trivial_set():
    alg = PCAlgebra(CHAIR)
    assert find_injective_phi(alg, [LiePoly.gen(5, 1)]) == (1, 1)


def test_find_injective_phi_skips_a_degenerate_pair():
    # the endpoint image at lambda = p = 1 is exactly x5 + x3, so this
    # difference forces the search past the first cell
    alg = PCAlgebra(CHAIR)
    gamma = [parse_lie(5, "x1 - x5 - x3")]
    assert find_injective_phi(alg, gamma) == (2, 1)
    with pytest.raises(PhiSearchExhausted) as exc:
        find_injective_phi(alg, gamma, max_lambda=1, max_p=1)
    assert exc.value.max_lambda == 1
    assert exc.value.max_p == 1


def test_find_injective_phi_requires_tree():
    with pytest.raises(NotATree):
        find_injective_phi(PCAlgebra(C4), [LiePoly.gen(4, 1)])


def test_find_injective_phi_separates_the_set():
    rng = random.Random(906)
    alg = PCAlgebra(CHAIR)
    for _ in range(10):
        gamma = []
        while len(gamma) < 3:
            p = alg.normal_form(random_lie(5, rng, max_len=2))
            if not p.is_zero():
                gamma.append(p)
        lam, p = find_injective_phi(alg, gamma)
        h = phi_map(alg, 1, 3, 5, lam, p)
        for x in phi_closure(alg, gamma):
            assert not h.apply(x).is_zero()
        images = [h.apply(x) for x in gamma]
        for i in range(len(gamma)):
            for j in range(i + 1, len(gamma)):
                if gamma[i] != gamma[j]:
                    assert images[i] != images[j]
