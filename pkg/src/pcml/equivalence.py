"""Universal equivalence of tree-defined rings.

Two trees with at least two vertices define universally equivalent rings
exactly when the induced subgraphs on their non-endpoints are isomorphic.
The canonical string of that core is the certificate; the endpoint-pruned
forms are carried along as a cross-check (they agree iff the cores do).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotATree, TooSmall
from .graph import Graph, is_tree, t_prime, t_star, tree_canonical_form


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    star1: str
    star2: str
    prime1: str
    prime2: str


def _validate(t: Graph, which: str) -> None:
    if not is_tree(t):
        raise NotATree(f"{which} is not a tree")
    if t.n < 2:
        raise TooSmall(f"{which} needs at least two vertices")


def decide_universal_equivalence(t1: Graph, t2: Graph) -> EquivalenceVerdict:
    _validate(t1, "first input")
    _validate(t2, "second input")
    star1 = tree_canonical_form(t_star(t1))
    star2 = tree_canonical_form(t_star(t2))
    prime1 = tree_canonical_form(t_prime(t1))
    prime2 = tree_canonical_form(t_prime(t2))
    # the two certificates are equivalent characterizations; they must agree
    assert (star1 == star2) == (prime1 == prime2), "core/pruned certificates disagree"
    return EquivalenceVerdict(star1 == star2, star1, star2, prime1, prime2)


def equivalence_classes(trees: Sequence[Graph]) -> list[tuple[str, list[int]]]:
    """Partition input indices by the core certificate, classes sorted by
    certificate string, members in input order."""
    buckets: dict[str, list[int]] = {}
    for k, t in enumerate(trees):
        _validate(t, f"input {k}")
        cert = tree_canonical_form(t_star(t))
        buckets.setdefault(cert, []).append(k)
    return sorted(buckets.items())
