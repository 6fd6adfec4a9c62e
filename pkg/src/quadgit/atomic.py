"""Atomic graphs, canonical blank-node labels, and graph isomorphism.

An atomic graph is a graph that cannot be split into two nonempty parts
with disjoint blank-node sets; ground statements form singletons, while
statements connected through shared blank nodes always travel together.
All diffing and merging in this package works on sets of canonically
labeled atomic graphs, so two isomorphic atomic graphs compare equal by
their serialized key bytes.

Canonical labeling picks the lexicographically smallest serialization
over candidate blank-node orderings: for up to 8 blanks every permutation
is tried, so the key is the true permutation minimum; beyond that an
iterative signature refinement narrows the candidates to permutations
within same-signature cells. The candidate budget is capped; exceeding it
raises rather than guessing.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Optional

from .errors import CanonicalizationError
from .model import BlankNode, Graph, Term, Triple, serialize_term, triple_line

# 8! candidate assignments; beyond this we refuse instead of burning CPU.
PERMUTATION_CAP = 40_320


@dataclass(frozen=True)
class AtomicGraph:
    """An unsplittable group of triples plus the blank labels they share."""

    triples: frozenset[Triple]
    blanks: frozenset[str]


class CanonicalAtomicGraph:
    """An atomic graph with canonical blank labels.

    Instances compare and hash by ``key``, the byte-sorted serialization
    of the relabeled triples; isomorphic atomic graphs therefore collapse
    when collected into sets.
    """

    __slots__ = ("triples", "key")

    def __init__(self, triples: frozenset[Triple], key: bytes):
        self.triples = triples
        self.key = key

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalAtomicGraph) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"CanonicalAtomicGraph({self.key!r})"

    def nodes(self, include_predicates: bool = False) -> frozenset[Term]:
        """Ground (non-blank) subject and object terms of this atomic graph.

        Blank nodes are excluded: they cannot be identified across graphs,
        so they can never witness an overlap between two change sets.
        """
        found = set()
        for s, p, o in self.triples:
            if not isinstance(s, BlankNode):
                found.add(s)
            if not isinstance(o, BlankNode):
                found.add(o)
            if include_predicates:
                found.add(p)
        return frozenset(found)


def partition(graph: Graph) -> list[AtomicGraph]:
    """Split a graph into its atomic graphs.

    Ground triples become singletons; triples sharing blank nodes (directly
    or transitively) are grouped together. The returned groups are pairwise
    disjoint in triples and in blank labels and their union is the input.
    """
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    ground: list[Triple] = []
    blank_triples: list[tuple[Triple, list[str]]] = []
    for triple in graph:
        s, _, o = triple
        labels = []
        if isinstance(s, BlankNode):
            labels.append(s.label)
        if isinstance(o, BlankNode):
            labels.append(o.label)
        if not labels:
            ground.append(triple)
            continue
        for label in labels:
            parent.setdefault(label, label)
        for label in labels[1:]:
            union(labels[0], label)
        blank_triples.append((triple, labels))

    groups: dict[str, tuple[set[Triple], set[str]]] = {}
    for triple, labels in blank_triples:
        root = find(labels[0])
        triples, blanks = groups.setdefault(root, (set(), set()))
        triples.add(triple)
        blanks.update(labels)

    atoms = [AtomicGraph(frozenset([t]), frozenset()) for t in ground]
    atoms.extend(
        AtomicGraph(frozenset(triples), frozenset(blanks))
        for triples, blanks in groups.values()
    )
    return atoms


def _position_token(term: Term, blank: str, colors: dict[str, int]) -> str:
    if isinstance(term, BlankNode):
        if term.label == blank:
            return "@self"
        return "@b%d" % colors[term.label]
    return serialize_term(term)


def _refine_colors(triples: frozenset[Triple], blanks: list[str]) -> dict[str, int]:
    """Partition blanks into structural equivalence classes by fixpoint refinement."""
    colors = {b: 0 for b in blanks}
    incident = {b: [] for b in blanks}
    for triple in triples:
        s, _, o = triple
        if isinstance(s, BlankNode):
            incident[s.label].append(triple)
        if isinstance(o, BlankNode) and (not isinstance(s, BlankNode) or o.label != s.label):
            incident[o.label].append(triple)
    while True:
        signatures = {}
        for b in blanks:
            features = []
            for s, p, o in incident[b]:
                features.append(
                    (
                        _position_token(s, b, colors),
                        serialize_term(p),
                        _position_token(o, b, colors),
                    )
                )
            signatures[b] = (colors[b], tuple(sorted(features)))
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures.values())))}
        updated = {b: ranking[signatures[b]] for b in blanks}
        if updated == colors:
            return colors
        colors = updated


def _serialize_with_labels(triples: frozenset[Triple], labels: dict[str, str]) -> bytes:
    def swap(term: Term) -> Term:
        if isinstance(term, BlankNode):
            return BlankNode(labels[term.label])
        return term

    lines = sorted(triple_line((swap(s), swap(p), swap(o))) for s, p, o in triples)
    return b"".join(lines)


def canonical_label(atom: AtomicGraph) -> CanonicalAtomicGraph:
    """Relabel an atomic graph canonically; isomorphic inputs map to one key.

    Raises :class:`CanonicalizationError` when the refined blank-node cells
    still admit more than ``PERMUTATION_CAP`` assignments.
    """
    if not atom.blanks:
        (triple,) = atom.triples
        return CanonicalAtomicGraph(atom.triples, triple_line(triple))

    blanks = sorted(atom.blanks)
    if factorial(len(blanks)) <= PERMUTATION_CAP:
        # Small enough for the unconstrained search; cells of one
        # pseudo-class make the product below enumerate all n! orders.
        ordered_cells = [blanks]
    else:
        colors = _refine_colors(atom.triples, blanks)
        cells: dict[int, list[str]] = {}
        for b in blanks:
            cells.setdefault(colors[b], []).append(b)
        ordered_cells = [cells[color] for color in sorted(cells)]
        candidates = 1
        for cell in ordered_cells:
            candidates *= factorial(len(cell))
            if candidates > PERMUTATION_CAP:
                raise CanonicalizationError(
                    f"canonicalization too hard: {len(blanks)} blank nodes leave "
                    f"more than {PERMUTATION_CAP} candidate labelings"
                )

    best: Optional[bytes] = None
    best_order: list[str] = []
    for arrangement in itertools.product(*(itertools.permutations(c) for c in ordered_cells)):
        order = [b for cell in arrangement for b in cell]
        placeholders = {b: "p%d" % i for i, b in enumerate(order)}
        candidate = _serialize_with_labels(atom.triples, placeholders)
        if best is None or candidate < best:
            best = candidate
            best_order = order

    assert best is not None
    prefix = hashlib.sha1(best).hexdigest()[:12]
    final = {b: f"{prefix}n{i}" for i, b in enumerate(best_order)}
    relabeled = frozenset(
        (
            BlankNode(final[s.label]) if isinstance(s, BlankNode) else s,
            p,
            BlankNode(final[o.label]) if isinstance(o, BlankNode) else o,
        )
        for s, p, o in atom.triples
    )
    key = b"".join(sorted(triple_line(t) for t in relabeled))
    return CanonicalAtomicGraph(relabeled, key)


def canonical_partition(graph: Graph) -> frozenset[CanonicalAtomicGraph]:
    """The set of canonically labeled atomic graphs of ``graph``.

    Isomorphic duplicate atomic subgraphs deduplicate: a graph with two
    indistinguishable blank-node islands yields a single representative.
    """
    return frozenset(canonical_label(a) for a in partition(graph))


def union_atoms(atoms: Iterable[CanonicalAtomicGraph]) -> Graph:
    """Union canonical atomic graphs back into one graph.

    Safe because canonical labels embed a content hash: distinct atomic
    graphs never share labels, and isomorphic ones were deduplicated.
    """
    triples: set[Triple] = set()
    for atom in atoms:
        triples |= atom.triples
    return Graph(frozenset(triples))


def canonicalize_graph(graph: Graph) -> Graph:
    """Rewrite all blank labels of a graph to their canonical form."""
    return union_atoms(canonical_partition(graph))


def iso_equal(a: Graph, b: Graph) -> bool:
    """Graph isomorphism under atomic-graph dedup semantics."""
    return {x.key for x in canonical_partition(a)} == {x.key for x in canonical_partition(b)}
