"""Vertices, canonical edges, and uniform hypergraphs.

Vertices are dense integer ids.  Construction vertices carry a two-part
label (layer, index) mapped to ids layer-major so that growing the top
layer never re-indexes existing vertices.  An edge is a strictly
increasing tuple of ids; a hypergraph is an immutable set of such edges
plus the ambient vertex count, iterated in lexicographic order so every
downstream artifact is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator

Edge = tuple[int, ...]

__all__ = [
    "Edge",
    "VertexLabel",
    "Hypergraph",
    "EdgeError",
    "DuplicateVertexError",
    "ArityError",
    "VertexRangeError",
    "LabelRangeError",
    "make_edge",
    "label_to_id",
    "id_to_label",
    "layer_width",
    "supersets",
    "facets",
]


class EdgeError(ValueError):
    """Base class for edge validation failures."""


class DuplicateVertexError(EdgeError):
    """An edge listed the same vertex twice."""


class ArityError(EdgeError):
    """An edge has the wrong number of vertices."""


class VertexRangeError(EdgeError):
    """A vertex id falls outside [0, n)."""


class LabelRangeError(ValueError):
    """A (layer, index) label falls outside the valid grid."""


@dataclass(frozen=True)
class VertexLabel:
    """Doubly-indexed construction vertex: layer (1-based) and index (1-based)."""

    layer: int
    index: int


def layer_width(k: int) -> int:
    """Number of vertices per layer for construction parameter k."""
    return 4 * k - 3


def label_to_id(label: VertexLabel, k: int) -> int:
    """Map a (layer, index) label to its dense id, layer-major.

    id = (layer - 1) * (4k - 3) + (index - 1).  Total on every
    construction vertex set and inverted exactly by :func:`id_to_label`.
    """
    w = layer_width(k)
    if label.layer < 1:
        raise LabelRangeError(f"layer must be >= 1, got {label.layer}")
    if not 1 <= label.index <= w:
        raise LabelRangeError(
            f"index must be in [1, {w}] for k={k}, got {label.index}"
        )
    return (label.layer - 1) * w + (label.index - 1)


def id_to_label(vid: int, k: int) -> VertexLabel:
    """Inverse of :func:`label_to_id`."""
    if vid < 0:
        raise LabelRangeError(f"vertex id must be >= 0, got {vid}")
    w = layer_width(k)
    return VertexLabel(layer=vid // w + 1, index=vid % w + 1)


def make_edge(ids: Iterable[int], r: int | None = None, n: int | None = None) -> Edge:
    """Canonicalize a vertex id sequence into a sorted edge.

    Raises a distinct error for duplicate ids, wrong arity (when ``r``
    is given), and out-of-range ids (when ``n`` is given).
    """
    t = tuple(sorted(ids))
    if len(set(t)) != len(t):
        raise DuplicateVertexError(f"duplicate vertex in edge {t}")
    if r is not None and len(t) != r:
        raise ArityError(f"edge {t} has {len(t)} vertices, expected {r}")
    if t and t[0] < 0:
        raise VertexRangeError(f"negative vertex id in edge {t}")
    if n is not None and t and t[-1] >= n:
        raise VertexRangeError(f"vertex id {t[-1]} out of range for n={n}")
    return t


def supersets(e: Edge, n: int, m: int) -> list[tuple[int, ...]]:
    """All sorted m-vertex tuples over [0, n) containing edge ``e``.

    For m = len(e) + 1 these are the n - r single-vertex extensions, in
    ascending order of the added vertex set.
    """
    r = len(e)
    if m <= r:
        raise ValueError(f"m must exceed the edge arity {r}, got {m}")
    if e and (e[0] < 0 or e[-1] >= n):
        raise VertexRangeError(f"edge {e} out of range for n={n}")
    present = set(e)
    others = [v for v in range(n) if v not in present]
    return [tuple(sorted(e + extra)) for extra in itertools.combinations(others, m - r)]


def facets(t: tuple[int, ...]) -> list[Edge]:
    """The |t| facets of a sorted vertex tuple, dropping position p for p = 0.."""
    return [t[:p] + t[p + 1 :] for p in range(len(t))]


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertex set [0, n), identified with its edge set.

    Immutable after construction.  Membership is O(1); iteration is in
    lexicographic edge order.
    """

    n: int
    r: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        if self.r < 1:
            raise ValueError(f"uniformity must be >= 1, got {self.r}")
        for e in self.edges:
            if len(e) != self.r:
                raise ArityError(f"edge {e} has {len(e)} vertices, expected {self.r}")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise DuplicateVertexError(f"edge {e} is not strictly increasing")
            if e[0] < 0 or e[-1] >= self.n:
                raise VertexRangeError(f"edge {e} out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        """Build a hypergraph, canonicalizing and validating every edge."""
        canon = frozenset(make_edge(e, r=r, n=n) for e in edges)
        return cls(n=n, r=r, edges=canon)

    @classmethod
    def complete(cls, n: int, r: int) -> Hypergraph:
        """The complete r-graph on n vertices."""
        return cls(n=n, r=r, edges=frozenset(itertools.combinations(range(n), r)))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges)

    def __len__(self) -> int:
        return len(self.edges)

    def with_edges(self, extra: Iterable[Iterable[int]]) -> Hypergraph:
        """A new graph with the given edges added."""
        canon = {make_edge(e, r=self.r, n=self.n) for e in extra}
        return Hypergraph(n=self.n, r=self.r, edges=self.edges | canon)

    def without(self, e: Iterable[int]) -> Hypergraph:
        """A new graph with one edge removed."""
        return Hypergraph(n=self.n, r=self.r, edges=self.edges - {make_edge(e)})

    def padded(self, n: int) -> Hypergraph:
        """The same edge set viewed on a larger vertex set (isolated vertices)."""
        if n < self.n:
            raise ValueError(f"cannot shrink vertex set from {self.n} to {n}")
        return Hypergraph(n=n, r=self.r, edges=self.edges)

    def max_edges(self) -> int:
        """Edge count of the complete r-graph on this vertex set."""
        return comb(self.n, self.r)
