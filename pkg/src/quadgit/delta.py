"""Differences and changesets over canonical atomic partitions.

A delta is a pair of added/removed canonical atomic-graph sets. Only a
delta that validates against a concrete base graph becomes a changeset:
additions must be new, removals must be present, the two sides must not
overlap, and at least one side must be nonempty. Blank-node edits always
surface as remove-one-atomic-graph plus add-another, never as an in-place
change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .atomic import CanonicalAtomicGraph, canonical_partition, union_atoms
from .errors import (
    AddRemoveOverlapError,
    EmptyChangesetError,
    NotDisjointWithBaseError,
    RemovalNotPresentError,
)
from .model import Dataset, Graph

AtomSet = frozenset[CanonicalAtomicGraph]

_EMPTY: AtomSet = frozenset()


@dataclass(frozen=True)
class Delta:
    """Added and removed atomic graphs; may be empty (unlike a changeset)."""

    additions: AtomSet = _EMPTY
    removals: AtomSet = _EMPTY

    def __post_init__(self):
        if self.additions & self.removals:
            raise AddRemoveOverlapError("a delta cannot add and remove the same atomic graph")

    def __bool__(self) -> bool:
        return bool(self.additions or self.removals)

    def invert(self) -> "Delta":
        return Delta(self.removals, self.additions)


class Changeset(Delta):
    """A delta that has been validated against some base graph."""


def diff(base: Graph, target: Graph) -> Delta:
    """Delta turning ``base`` into ``target`` (possibly empty)."""
    p_base = canonical_partition(base)
    p_target = canonical_partition(target)
    return Delta(p_target - p_base, p_base - p_target)


def validate(base: Graph, delta: Delta) -> Changeset:
    """Check the four changeset conditions of ``delta`` against ``base``."""
    p_base = canonical_partition(base)
    if delta.additions & p_base:
        raise NotDisjointWithBaseError("additions overlap the base graph")
    if not delta.removals <= p_base:
        raise RemovalNotPresentError("removals are not all present in the base graph")
    if delta.additions & delta.removals:
        raise AddRemoveOverlapError("additions and removals overlap")
    if not delta.additions and not delta.removals:
        raise EmptyChangesetError("changeset has no effect")
    return Changeset(delta.additions, delta.removals)


def apply_changeset(base: Graph, changeset: Delta) -> Graph:
    """Apply a changeset, validating it first."""
    validated = validate(base, changeset)
    kept = canonical_partition(base) - validated.removals
    return union_atoms(kept | validated.additions)


@dataclass(frozen=True)
class DatasetDelta:
    """Per-graph deltas plus graph lifecycle markers.

    ``graph_added`` names graphs that do not exist in the base dataset and
    are created by this delta; ``graph_removed`` names graphs dropped
    entirely (their delta removes the full content). Entries with an empty
    delta are not allowed.
    """

    entries: dict[str, Delta] = field(default_factory=dict)
    graph_added: frozenset[str] = frozenset()
    graph_removed: frozenset[str] = frozenset()

    def __post_init__(self):
        for name, delta in self.entries.items():
            if not delta and name not in self.graph_added and name not in self.graph_removed:
                raise EmptyChangesetError(f"empty delta entry for graph <{name}>")
        unknown = (self.graph_added | self.graph_removed) - set(self.entries)
        if unknown:
            raise ValueError(f"lifecycle markers without delta entries: {sorted(unknown)}")

    def __bool__(self) -> bool:
        return bool(self.entries)

    def invert(self) -> "DatasetDelta":
        return DatasetDelta(
            {name: delta.invert() for name, delta in self.entries.items()},
            graph_added=self.graph_removed,
            graph_removed=self.graph_added,
        )

    def graphs(self) -> Iterator[str]:
        return iter(self.entries)


def dataset_diff(base: Dataset, target: Dataset) -> DatasetDelta:
    """Lift :func:`diff` to datasets, tracking created and dropped graphs."""
    entries: dict[str, Delta] = {}
    added: set[str] = set()
    removed: set[str] = set()
    for name in set(base.graphs) | set(target.graphs):
        in_base = name in base.graphs
        in_target = name in target.graphs
        delta = diff(base.graph(name), target.graph(name))
        if in_base and not in_target:
            removed.add(name)
            entries[name] = delta
        elif in_target and not in_base:
            added.add(name)
            entries[name] = delta
        elif delta:
            entries[name] = delta
    return DatasetDelta(entries, frozenset(added), frozenset(removed))


def dataset_apply(base: Dataset, dd: DatasetDelta) -> Dataset:
    """Apply every per-graph delta; equals graph-by-graph application."""
    result = base
    for name, delta in dd.entries.items():
        if name in dd.graph_removed:
            apply_changeset(base.graph(name), delta)  # still validated
            result = result.without_graph(name)
            continue
        if delta:
            result = result.with_graph(name, apply_changeset(base.graph(name), delta))
        elif name in dd.graph_added:
            result = result.with_graph(name, Graph())
    return result


# ---------------------------------------------------------------------------
# Textual delta format (CLI `diff` output)
# ---------------------------------------------------------------------------


def _atom_lines(atoms: Iterable[CanonicalAtomicGraph], prefix: str) -> list[str]:
    lines = []
    for atom in sorted(atoms, key=lambda a: a.key):
        for raw in atom.key.decode("utf-8").splitlines():
            lines.append(f"{prefix} {raw}")
    return lines


def format_dataset_delta(dd: DatasetDelta) -> str:
    """Machine-readable delta text: per-graph header, then +/- statement lines."""
    out: list[str] = []
    for name in sorted(dd.entries):
        delta = dd.entries[name]
        header = f"graph <{name}>"
        if name in dd.graph_added:
            header += " (added)"
        elif name in dd.graph_removed:
            header += " (removed)"
        out.append(header)
        out.extend(_atom_lines(delta.removals, "-"))
        out.extend(_atom_lines(delta.additions, "+"))
    return "\n".join(out) + ("\n" if out else "")
