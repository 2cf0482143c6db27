"""Extremal slow-percolation instances and their predicted infection sequences.

Three generators compose into initial graphs whose bootstrap process
runs for Theta(n^r) steps:

* :func:`build_base` -- the 3-uniform seed: two vertex-disjoint paths
  plus an apex vertex, wired so exactly one edge is infected per step
  and the process is reversible end for end.
* :func:`glue` -- chains 2k-1 apex-renamed copies of a sequential
  certificate through small bridge gadgets, multiplying the running
  time by 2k-1 (plus 4(k-1) bridge steps) and consuming the apex.
* :func:`lift` -- raises uniformity by one: a fresh apex joins every
  edge and the complete (r+1)-graph on the old vertex set is
  pre-infected, preserving the running time and restoring an apex.

Sequences are generated from closed forms, never by running the
engine, so an engine replay is an independent check of both.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, e as EULER_E

from .core import Edge, Hypergraph, VertexLabel, label_to_id, layer_width, make_edge

__all__ = [
    "SequentialCertificate",
    "CertificateError",
    "Bounds",
    "base_running_time",
    "full_running_time",
    "build_base",
    "predicted_base_edge",
    "glue",
    "lift",
    "build_full",
    "theorem_bounds",
    "k_for_n",
    "witness_for_n",
]


class CertificateError(ValueError):
    """A structurally inconsistent certificate (distinct from a replay failure)."""


@dataclass(frozen=True)
class SequentialCertificate:
    """A graph plus the exact edge-per-step infection sequence it should produce.

    ``sequence[0]`` is the ignition edge (the only sequence edge inside
    the graph); replaying the graph must infect exactly ``sequence[i]``
    at step i.  ``apex`` is the vertex shared by every sequence edge,
    or None for glued (terminal) certificates.
    """

    graph: Hypergraph
    ignition: Edge
    sequence: tuple[Edge, ...]
    r: int
    k: int
    predicted_t: int
    apex: int | None

    def __post_init__(self) -> None:
        g = self.graph
        if g.r != self.r:
            raise CertificateError(f"graph uniformity {g.r} != r = {self.r}")
        if not self.sequence:
            raise CertificateError("empty sequence")
        if self.sequence[0] != self.ignition:
            raise CertificateError("sequence[0] differs from the ignition edge")
        if self.ignition not in g:
            raise CertificateError("ignition edge missing from the graph")
        if len(set(self.sequence)) != len(self.sequence):
            raise CertificateError("sequence edges are not pairwise distinct")
        for i, edge in enumerate(self.sequence):
            make_edge(edge, r=self.r, n=g.n)
            if i >= 1 and edge in g:
                raise CertificateError(f"sequence[{i}] already lies in the graph")
        if self.predicted_t != len(self.sequence) - 1:
            raise CertificateError(
                f"predicted_t = {self.predicted_t} but sequence has "
                f"{len(self.sequence)} edges"
            )
        if self.apex is not None:
            if not 0 <= self.apex < g.n:
                raise CertificateError(f"apex {self.apex} out of range")
            for edge in self.sequence:
                if self.apex not in edge:
                    raise CertificateError(f"apex {self.apex} missing from {edge}")


def base_running_time(k: int) -> int:
    """Predicted steps of the 3-uniform seed: 8k^2 - 12k + 4."""
    return 8 * k * k - 12 * k + 4


def full_running_time(r: int, k: int) -> int:
    """Predicted steps of the full construction: (2k-1)^(r-2) (8k^2-12k+6) - 2."""
    return (2 * k - 1) ** (r - 2) * (8 * k * k - 12 * k + 6) - 2


def _vid(layer: int, index: int, k: int) -> int:
    return label_to_id(VertexLabel(layer=layer, index=index), k)


def _stage_total(s: int, k: int) -> int:
    # steps completed after stage s: sum of 16(k-j)-4 for j = 1..s
    return s * (16 * k - 8 * s - 12)


def predicted_base_edge(k: int, i: int) -> Edge:
    """Closed form for the edge infected at step i when replaying the seed graph.

    The process sweeps the two paths in stages; within stage s the step
    offset selects one of four legs (apex-path fan out, first path
    advance, apex-path fan back, second path retreat).
    """
    t1 = base_running_time(k)
    if not 1 <= i <= t1:
        raise ValueError(f"step index must be in [1, {t1}], got {i}")
    s = 1
    while i > _stage_total(s, k):
        s += 1
    offset = i - _stage_total(s - 1, k)
    q = k - s
    if offset <= 4 * q:
        j1, j2 = 2 * s - 1, 2 * s - 1 + offset
    elif offset <= 8 * q:
        j1, j2 = 6 * s - 4 * k - 1 + offset, 4 * k - 2 * s - 1
    elif offset <= 12 * q - 2:
        j1, j2 = 4 * k - 2 * s - 1, 12 * k - 10 * s - 1 - offset
    else:
        j1, j2 = 16 * k - 14 * s - 3 - offset, 2 * s + 1
    return make_edge((_vid(1, j1, k), _vid(2, j2, k), _vid(3, 1, k)))


def _scaffold_edges(k: int) -> set[Edge]:
    """Initially infected 3-edges inside the two paths (no apex).

    Four families per stage i: a left path vertex fanning over
    consecutive second-path pairs, consecutive first-path pairs meeting
    a fixed right vertex, and the mirrored pair of families two indices
    further in.  Families are pairwise disjoint by construction.
    """
    families: list[list[Edge]] = []
    for i in range(1, k):
        lo, hi = 2 * i - 1, 4 * k - 2 - 2 * i
        families.append(
            [make_edge((_vid(1, lo, k), _vid(2, j, k), _vid(2, j + 1, k)))
             for j in range(lo, hi + 1)]
        )
        families.append(
            [make_edge((_vid(1, j, k), _vid(1, j + 1, k), _vid(2, hi + 1, k)))
             for j in range(lo, hi + 1)]
        )
        families.append(
            [make_edge((_vid(1, hi + 1, k), _vid(2, j, k), _vid(2, j + 1, k)))
             for j in range(lo + 2, hi + 1)]
        )
        families.append(
            [make_edge((_vid(1, j, k), _vid(1, j + 1, k), _vid(2, lo + 2, k)))
             for j in range(lo + 2, hi + 1)]
        )
    flat = [e for fam in families for e in fam]
    out = set(flat)
    assert len(out) == len(flat), "scaffold families must be pairwise disjoint"
    return out


def _apex_strip_edges(k: int) -> set[Edge]:
    """Apex plus each consecutive vertex pair along either path."""
    apex = _vid(3, 1, k)
    out: set[Edge] = set()
    for layer in (1, 2):
        for j in range(1, layer_width(k)):
            out.add(make_edge((_vid(layer, j, k), _vid(layer, j + 1, k), apex)))
    return out


def build_base(k: int) -> SequentialCertificate:
    """The 3-uniform seed certificate on 2(4k-3)+1 vertices, k >= 2.

    Initial edges: the path scaffold, the apex strip, and the ignition
    edge joining the two path heads to the apex.  Predicted running
    time 8k^2 - 12k + 4, one edge per step, all infected edges
    containing the apex.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    n = 2 * layer_width(k) + 1
    apex = _vid(3, 1, k)
    ignition = make_edge((_vid(1, 1, k), _vid(2, 1, k), apex))
    edges = _scaffold_edges(k) | _apex_strip_edges(k) | {ignition}
    t1 = base_running_time(k)
    sequence = (ignition,) + tuple(predicted_base_edge(k, i) for i in range(1, t1 + 1))
    return SequentialCertificate(
        graph=Hypergraph.from_edges(n, 3, edges),
        ignition=ignition,
        sequence=sequence,
        r=3,
        k=k,
        predicted_t=t1,
        apex=apex,
    )


def _strip_apex(edge: Edge, apex: int) -> tuple[int, ...]:
    return tuple(v for v in edge if v != apex)


def _bridge_gadget(
    triple: tuple[int, int, int], tail: tuple[int, ...], r: int
) -> set[Edge]:
    """r-subsets of (three new-layer vertices + a sequence-edge stub),
    excluding those containing both outer new vertices and those
    containing the whole stub."""
    lo, _, hi = triple
    base = tuple(sorted(triple + tail))
    tail_set = set(tail)
    out: set[Edge] = set()
    for e in itertools.combinations(base, r):
        es = set(e)
        if lo in es and hi in es:
            continue
        if tail_set <= es:
            continue
        out.add(e)
    return out


def glue(cert: SequentialCertificate, k: int) -> SequentialCertificate:
    """Chain 2k-1 apex-renamed copies of ``cert`` through bridge gadgets.

    Copy j replaces the apex with the (2j-1)-th vertex of a fresh top
    layer; copies alternate forward/reverse traversal, joined by a
    single bridge edge on each even top-layer vertex.  The result has
    no apex and runs for (2k-1) T + 4(k-1) steps.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k != cert.k:
        raise ValueError(f"layer width is fixed by k={cert.k}; cannot glue with k={k}")
    if cert.apex is None:
        raise CertificateError("certificate has no apex; lift before gluing again")
    if cert.predicted_t < 2:
        raise CertificateError("gluing needs a certificate with at least 2 steps")
    r = cert.r
    w = layer_width(k)
    if cert.graph.n != (r - 1) * w + 1 or cert.apex != (r - 1) * w:
        raise CertificateError(
            f"expected {r - 1} full layers plus a single apex vertex "
            f"(n = {(r - 1) * w + 1}, apex id {(r - 1) * w})"
        )
    apex = cert.apex

    def top(j: int) -> int:
        return _vid(r, j, k)

    first_stub = _strip_apex(cert.ignition, apex)
    last_stub = _strip_apex(cert.sequence[-1], apex)

    edges: set[Edge] = set()
    copies = 2 * k - 1
    for j in range(1, copies + 1):
        a_j = top(2 * j - 1)
        for edge in cert.graph.edges:
            if edge == cert.ignition:
                continue
            edges.add(make_edge(a_j if v == apex else v for v in edge))
    for j in range(1, k):
        edges |= _bridge_gadget(
            (top(4 * j - 3), top(4 * j - 2), top(4 * j - 1)), last_stub, r
        )
        edges |= _bridge_gadget(
            (top(4 * j - 1), top(4 * j), top(4 * j + 1)), first_stub, r
        )
    edges.add(cert.ignition)

    stubs = [_strip_apex(edge, apex) for edge in cert.sequence]
    sequence: list[Edge] = []
    for j in range(1, copies + 1):
        a_j = top(2 * j - 1)
        leg = [make_edge(stub + (a_j,)) for stub in stubs]
        if j % 2 == 0:
            leg.reverse()
        sequence.extend(leg)
        if j < copies:
            stub = last_stub if j % 2 == 1 else first_stub
            sequence.append(make_edge(stub + (top(2 * j),)))

    predicted = copies * cert.predicted_t + 4 * (k - 1)
    return SequentialCertificate(
        graph=Hypergraph.from_edges(r * w, r, edges),
        ignition=cert.ignition,
        sequence=tuple(sequence),
        r=r,
        k=k,
        predicted_t=predicted,
        apex=None,
    )


def lift(cert: SequentialCertificate) -> SequentialCertificate:
    """Raise uniformity by one on a glued certificate.

    A fresh apex joins every existing edge (graph and sequence alike),
    and the complete (r+1)-graph on the old vertex set is added to the
    graph only.  Running time is unchanged.
    """
    if cert.apex is not None:
        raise CertificateError("only glued (apex-free) certificates can be lifted")
    r, k = cert.r, cert.k
    w = layer_width(k)
    if cert.graph.n != r * w:
        raise CertificateError(f"expected {r} full layers (n = {r * w})")
    old_n = cert.graph.n
    apex = old_n
    edges = {e + (apex,) for e in cert.graph.edges}
    edges |= set(itertools.combinations(range(old_n), r + 1))
    sequence = tuple(e + (apex,) for e in cert.sequence)
    return SequentialCertificate(
        graph=Hypergraph.from_edges(old_n + 1, r + 1, edges),
        ignition=cert.ignition + (apex,),
        sequence=sequence,
        r=r + 1,
        k=k,
        predicted_t=cert.predicted_t,
        apex=apex,
    )


def build_full(r: int, k: int) -> SequentialCertificate:
    """The terminal r-uniform construction on r(4k-3) vertices.

    Alternates glue and lift starting from the 3-uniform seed, ending
    with a glue; predicted running time (2k-1)^(r-2) (8k^2-12k+6) - 2.
    """
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    cert = build_base(k)
    for rho in range(3, r + 1):
        cert = glue(cert, k)
        if rho < r:
            cert = lift(cert)
    assert cert.predicted_t == full_running_time(r, k)
    return cert


@dataclass(frozen=True)
class Bounds:
    """Running-time bounds for the maximal process on n vertices.

    ``lower`` is exact (n^r / (2^(r+3) r^r)); ``upper_exact`` is the
    trivial step cap C(n, r); ``upper_analytic`` is the display-only
    float (n e / r)^r; ``k_of_n`` is the construction parameter the
    lower-bound witness uses.
    """

    lower: Fraction
    upper_exact: int
    upper_analytic: float
    k_of_n: int


def k_for_n(r: int, n: int) -> int:
    """Largest k with r(4k-3) <= n of the form floor((n/r + 3)/4), exactly."""
    return (n + 3 * r) // (4 * r)


def theorem_bounds(r: int, n: int) -> Bounds:
    """Exact lower and upper running-time bounds for uniformity r on n vertices.

    Emits a warning (not an error) when n < 2r^2, below which the lower
    bound is not guaranteed.
    """
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    if n < 2 * r * r:
        warnings.warn(
            f"n = {n} is below 2r^2 = {2 * r * r}; the lower bound is not guaranteed",
            stacklevel=2,
        )
    lower = Fraction(n**r, 2 ** (r + 3) * r**r)
    upper_exact = comb(n, r)
    if n >= 2 * r * r and not lower <= upper_exact:
        raise AssertionError("lower bound exceeds the trivial cap")
    return Bounds(
        lower=lower,
        upper_exact=upper_exact,
        upper_analytic=(n * EULER_E / r) ** r,
        k_of_n=k_for_n(r, n),
    )


def witness_for_n(r: int, n: int) -> Hypergraph:
    """An n-vertex initial graph achieving the lower bound of :func:`theorem_bounds`.

    The full construction for k = k_for_n(r, n), padded with isolated
    vertices up to exactly n.
    """
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    if n < 2 * r * r:
        raise ValueError(f"n must be >= 2r^2 = {2 * r * r}, got {n}")
    k = k_for_n(r, n)
    needed = r * layer_width(k)
    if n < needed:
        raise ValueError(f"n = {n} too small for k = {k} (needs {needed} vertices)")
    return build_full(r, k).graph.padded(n)
