"""Independent coordinate model: graded components as integer quotient modules.

For a graph G and a multidegree delta, the component of the quotient ring is
the free abelian group on the degree-delta basis words of the free ring,
modulo the rows obtained by letting monomials act on bracketed edges.  All
reductions are exact integer row operations with deterministic pivoting
(smallest absolute value, then lowest row index), so ranks, bases and
coordinates are reproducible bit for bit.

This module never consults the canonical-form machinery; it exists to check
it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DegreeMismatch
from .freemetab import (
    CommPoly,
    Exponents,
    LiePoly,
    LieWord,
    _word_nf,
    letters_of,
    mdeg,
    module_action,
)
from .graph import Graph

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# exact integer row reduction


def _echelon(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Row echelon form over the integers via unimodular row operations,
    eliminating only within the first ncols columns.  Returns the worked
    matrix (trailing rows have zeros in those columns) and the pivot column
    list.  Pivot choice: smallest absolute value, then lowest row index."""
    rows = [list(r) for r in rows]
    m = len(rows)
    top = 0
    pivots: list[int] = []
    for col in range(ncols):
        while True:
            cand = [i for i in range(top, m) if rows[i][col] != 0]
            if not cand:
                break
            best = min(cand, key=lambda i: (abs(rows[i][col]), i))
            if best != top:
                rows[top], rows[best] = rows[best], rows[top]
            if rows[top][col] < 0:
                rows[top] = [-x for x in rows[top]]
            head = rows[top][col]
            dirty = False
            for i in range(top + 1, m):
                v = rows[i][col]
                if v:
                    q = v // head
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        dirty = True
            if not dirty:
                pivots.append(col)
                top += 1
                break
    return rows, pivots


def hermite_normal_form(
    rows: Sequence[Sequence[int]], ncols: int
) -> tuple[list[tuple[int, ...]], list[int]]:
    """Row-style Hermite form: echelon with positive pivots and the entries
    above each pivot reduced into [0, pivot).  Zero rows are dropped."""
    work, pivots = _echelon(rows, ncols)
    for t, col in enumerate(pivots):
        head = work[t][col]
        for s in range(t):
            q = work[s][col] // head
            if q:
                work[s] = [a - q * b for a, b in zip(work[s], work[t])]
    return [tuple(work[t]) for t in range(len(pivots))], pivots


def kernel_basis(
    rows: Sequence[Sequence[int]], ncols: int
) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {v : sum v_i * rows_i = 0}, Hermite-reduced
    for determinism."""
    m = len(rows)
    aug = [list(r) + [1 if k == i else 0 for k in range(m)] for i, r in enumerate(rows)]
    work, pivots = _echelon(aug, ncols)
    raw = [row[ncols:] for row in work[len(pivots):]]
    if not raw:
        return []
    hnf, _ = hermite_normal_form(raw, m)
    return hnf


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero elementary divisors d1 | d2 | ... of the integer matrix."""
    mat = [list(r) for r in rows]
    divisors: list[int] = []
    r0, c0 = 0, 0
    m, n = len(mat), ncols
    while r0 < m and c0 < n:
        entries = [
            (abs(mat[i][j]), i, j)
            for i in range(r0, m)
            for j in range(c0, n)
            if mat[i][j]
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        mat[r0], mat[pi] = mat[pi], mat[r0]
        for row in mat:
            row[c0], row[pj] = row[pj], row[c0]
        if mat[r0][c0] < 0:
            mat[r0] = [-x for x in mat[r0]]
        clean = True
        for i in range(r0 + 1, m):
            q = mat[i][c0] // mat[r0][c0]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r0])]
            if mat[i][c0]:
                clean = False
        for j in range(c0 + 1, n):
            q = mat[r0][j] // mat[r0][c0]
            if q:
                for row in mat:
                    row[j] -= q * row[c0]
            if mat[r0][j]:
                clean = False
        if not clean:
            continue
        head = mat[r0][c0]
        if head != 1:
            # ensure the pivot divides every remaining entry
            fixed = False
            for i in range(r0 + 1, m):
                for j in range(c0 + 1, n):
                    if mat[i][j] % head:
                        mat[r0] = [a + b for a, b in zip(mat[r0], mat[i])]
                        fixed = True
                        break
                if fixed:
                    break
            if fixed:
                continue
        divisors.append(head)
        r0 += 1
        c0 += 1
    return divisors


def abs_det(rows: Sequence[Sequence[int]]) -> int:
    """|det| of a square integer matrix via unimodular reduction."""
    size = len(rows)
    if size == 0:
        return 1
    if any(len(r) != size for r in rows):
        raise ValueError("matrix is not square")
    work, pivots = _echelon(rows, size)
    if len(pivots) < size:
        return 0
    out = 1
    for t, col in enumerate(pivots):
        out *= work[t][col]
    return abs(out)


# ---------------------------------------------------------------------------
# graded components


def ambient_basis(delta: Exponents) -> tuple[LieWord, ...]:
    """Degree-delta basis words of the free ring, ascending.  For |delta| = 1
    this is the generator; for |delta| >= 2 one word per choice of first
    letter (any support vertex other than the smallest)."""
    total = sum(delta)
    support = [i for i, e in enumerate(delta, start=1) if e]
    if total == 1:
        return ((support[0],),)
    if len(support) == 1:
        return ()
    low = support[0]
    words = []
    for first in support[1:]:
        rest = list(letters_of(delta))
        rest.remove(first)
        rest.remove(low)
        words.append((first, low, *rest))
    return tuple(words)


@dataclass(frozen=True)
class QuotientComponent:
    graph: Graph
    delta: Exponents
    ambient: tuple[LieWord, ...]
    relation_rows: tuple[tuple[int, ...], ...] = field(repr=False)
    hnf_rows: tuple[tuple[int, ...], ...] = field(repr=False)
    pivots: tuple[int, ...]
    basis_cols: tuple[int, ...]
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_cols)

    @property
    def basis_words(self) -> tuple[LieWord, ...]:
        return tuple(self.ambient[c] for c in self.basis_cols)


@lru_cache(maxsize=None)
def build_component(g: Graph, delta: Exponents) -> QuotientComponent:
    """Assemble the degree-delta component of the quotient over g.

    Relation rows are the expansions of [x_j, x_i].m for each edge {i, j}
    and the unique monomial m of complementary multidegree.  The quotient
    must be a free abelian group: unit elementary divisors and unit Hermite
    pivots are both asserted (the second makes the non-pivot columns an
    honest basis with integral back-substitution)."""
    if len(delta) != g.n:
        raise DegreeMismatch(f"multidegree over {len(delta)} vertices, graph has {g.n}")
    if any(e < 0 for e in delta) or sum(delta) == 0:
        raise DegreeMismatch(f"bad multidegree {delta}")
    ambient = ambient_basis(delta)
    index = {w: k for k, w in enumerate(ambient)}
    rows: list[list[int]] = []
    for i, j in sorted(g.edges):
        gamma = list(delta)
        gamma[i - 1] -= 1
        gamma[j - 1] -= 1
        if min(gamma) < 0:
            continue
        word = (j, i) + letters_of(tuple(gamma))
        row = [0] * len(ambient)
        for w, c in _word_nf(word).items():
            row[index[w]] += c
        rows.append(row)
    hnf, pivots = hermite_normal_form(rows, len(ambient))
    divisors = smith_invariants(rows, len(ambient))
    assert all(d == 1 for d in divisors), (
        f"torsion in component {delta} of {g!r}: divisors {divisors}"
    )
    assert all(hnf[t][c] == 1 for t, c in enumerate(pivots)), (
        f"non-unit Hermite pivot in component {delta} of {g!r}"
    )
    basis_cols = tuple(c for c in range(len(ambient)) if c not in set(pivots))
    return QuotientComponent(
        graph=g,
        delta=delta,
        ambient=ambient,
        relation_rows=tuple(tuple(r) for r in rows),
        hnf_rows=tuple(hnf),
        pivots=tuple(pivots),
        basis_cols=basis_cols,
        divisors=tuple(divisors),
    )


def coordinates(qc: QuotientComponent, p: LiePoly) -> tuple[int, ...]:
    """Coordinate vector of p in the component's basis.  p must be
    homogeneous of the component's multidegree (0 always qualifies); it is
    zero in the quotient iff the vector is zero."""
    if p.n != qc.graph.n:
        raise DegreeMismatch(f"element over {p.n} generators, graph has {qc.graph.n}")
    vec = [0] * len(qc.ambient)
    index = {w: k for k, w in enumerate(qc.ambient)}
    for w, c in p.terms.items():
        if mdeg(w, p.n) != qc.delta:
            raise DegreeMismatch(
                f"term of degree {mdeg(w, p.n)} in component {qc.delta}"
            )
        vec[index[w]] += c
    for t, col in enumerate(qc.pivots):
        q = vec[col]  # pivot is 1
        if q:
            vec = [a - q * b for a, b in zip(vec, qc.hnf_rows[t])]
    assert all(vec[c] == 0 for c in qc.pivots)
    return tuple(vec[c] for c in qc.basis_cols)


def shifted_delta(delta: Exponents, gamma: Exponents) -> Exponents:
    return tuple(a + b for a, b in zip(delta, gamma))


def action_matrix(
    qc_source: QuotientComponent, qc_target: QuotientComponent, gamma: Exponents
) -> list[tuple[int, ...]]:
    """Rows are the target coordinates of (basis word).x^gamma for each basis
    word of the source component."""
    if qc_target.delta != shifted_delta(qc_source.delta, gamma):
        raise DegreeMismatch(
            f"target {qc_target.delta} is not source {qc_source.delta} + {gamma}"
        )
    n = qc_source.graph.n
    f = CommPoly.monomial(n, gamma)
    rows = []
    for word in qc_source.basis_words:
        image = module_action(LiePoly(n, {word: 1}), f)
        rows.append(coordinates(qc_target, image))
    return rows


def kernel_of_action(
    qc_source: QuotientComponent, qc_target: QuotientComponent, gamma: Exponents
) -> list[tuple[int, ...]]:
    """Integer kernel basis of c -> c.x^gamma between two components."""
    rows = action_matrix(qc_source, qc_target, gamma)
    return kernel_basis(rows, qc_target.rank)


def kernel_of_bracket_map(
    qc_source: QuotientComponent,
    targets: Sequence[QuotientComponent],
    terms: Sequence[tuple[int, int]],
) -> list[tuple[int, ...]]:
    """Integer kernel basis of c -> [c, v] where v = sum of coeff * x_vertex
    given as (vertex, coeff) pairs; targets[k] must be the component at
    source delta + e_{vertex_k}."""
    if len(targets) != len(terms):
        raise DegreeMismatch("one target component per linear term required")
    n = qc_source.graph.n
    blocks: list[list[int]] = [[] for _ in qc_source.basis_words]
    for qc_t, (vertex, coeff) in zip(targets, terms):
        gamma = [0] * n
        gamma[vertex - 1] = 1
        rows = action_matrix(qc_source, qc_t, tuple(gamma))
        for out_row, row in zip(blocks, rows):
            out_row.extend(coeff * x for x in row)
    width = sum(t.rank for t in targets)
    return kernel_basis(blocks, width)
