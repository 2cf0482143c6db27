"""Deterministic text serialization for graphs, certificates, and traces.

Documents are JSON with a fixed key order, two-space indentation, one
edge per line, and a terminating newline; emitting is byte-identical
across platforms and re-emitting a parsed canonical document
reproduces it exactly.  Traces are line-delimited JSON records, one
infected edge per line after a header carrying r, n, and T.

Parsing is strict: any document violating a graph or certificate
invariant is rejected with a specific error code (``syntax``,
``schema``, ``version``, ``arity``, ``duplicate-vertex``,
``duplicate-edge``, ``id-range``, ``not-canonical``, ``certificate``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, TextIO

from .constructions import CertificateError, SequentialCertificate
from .core import Edge, Hypergraph, VertexLabel
from .engine import RunResult

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "GraphDocument",
    "CertificateDocument",
    "emit_graph",
    "parse_graph",
    "emit_certificate",
    "parse_certificate",
    "emit_trace",
]

FORMAT_VERSION = "1"


class DocumentError(ValueError):
    """A malformed or non-canonical document.

    ``code`` identifies the failure class; ``line`` is set for syntax
    errors.
    """

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{code}: {message}{where}")


@dataclass(frozen=True)
class GraphDocument:
    """Serializable form of a hypergraph, optionally with construction labels."""

    format_version: str
    r: int
    n: int
    k: int | None
    labels: tuple[VertexLabel, ...] | None
    edges: tuple[Edge, ...]

    @classmethod
    def from_hypergraph(
        cls,
        g: Hypergraph,
        k: int | None = None,
        labels: tuple[VertexLabel, ...] | None = None,
    ) -> GraphDocument:
        return cls(
            format_version=FORMAT_VERSION,
            r=g.r,
            n=g.n,
            k=k,
            labels=labels,
            edges=g.sorted_edges,
        )

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph.from_edges(self.n, self.r, self.edges)


@dataclass(frozen=True)
class CertificateDocument:
    """Serializable form of a sequential certificate."""

    format_version: str
    r: int
    n: int
    k: int
    labels: tuple[VertexLabel, ...] | None
    edges: tuple[Edge, ...]
    ignition: Edge
    sequence: tuple[Edge, ...]
    predicted_t: int
    apex: int | None

    @classmethod
    def from_certificate(
        cls,
        cert: SequentialCertificate,
        labels: tuple[VertexLabel, ...] | None = None,
    ) -> CertificateDocument:
        return cls(
            format_version=FORMAT_VERSION,
            r=cert.r,
            n=cert.graph.n,
            k=cert.k,
            labels=labels,
            edges=cert.graph.sorted_edges,
            ignition=cert.ignition,
            sequence=cert.sequence,
            predicted_t=cert.predicted_t,
            apex=cert.apex,
        )

    def to_certificate(self) -> SequentialCertificate:
        return SequentialCertificate(
            graph=Hypergraph.from_edges(self.n, self.r, self.edges),
            ignition=self.ignition,
            sequence=self.sequence,
            r=self.r,
            k=self.k,
            predicted_t=self.predicted_t,
            apex=self.apex,
        )


# ---------------------------------------------------------------------------
# emission


def _render_edge_list(edges: tuple[Edge, ...]) -> list[str]:
    if not edges:
        return ["[]"]
    lines = ["["]
    for i, e in enumerate(edges):
        comma = "," if i + 1 < len(edges) else ""
        lines.append(f"    {json.dumps(list(e))}{comma}")
    lines.append("  ]")
    return lines


def _render_labels(labels: tuple[VertexLabel, ...]) -> list[str]:
    if not labels:
        return ["[]"]
    lines = ["["]
    for i, lab in enumerate(labels):
        comma = "," if i + 1 < len(labels) else ""
        lines.append(f'    {{"layer": {lab.layer}, "index": {lab.index}}}{comma}')
    lines.append("  ]")
    return lines


def _emit_document(fields: list[tuple[str, str, Any]]) -> str:
    """Render (key, kind, value) triples in order; kinds: scalar, edge, edges, labels."""
    out = ["{"]
    rendered: list[list[str]] = []
    for key, kind, value in fields:
        if kind == "scalar":
            body = [json.dumps(value)]
        elif kind == "edge":
            body = [json.dumps(list(value))]
        elif kind == "edges":
            body = _render_edge_list(value)
        elif kind == "labels":
            body = _render_labels(value)
        else:  # pragma: no cover
            raise AssertionError(kind)
        rendered.append([f'  "{key}": {body[0]}'] + body[1:])
    for i, body in enumerate(rendered):
        if i + 1 < len(rendered):
            body = body[:-1] + [body[-1] + ","]
        out.extend(body)
    out.append("}")
    return "\n".join(out) + "\n"


def emit_graph(doc: GraphDocument | Hypergraph) -> str:
    """Canonical text for a graph document (byte-deterministic)."""
    if isinstance(doc, Hypergraph):
        doc = GraphDocument.from_hypergraph(doc)
    fields: list[tuple[str, str, Any]] = [("format_version", "scalar", doc.format_version)]
    fields.append(("r", "scalar", doc.r))
    fields.append(("n", "scalar", doc.n))
    if doc.k is not None:
        fields.append(("k", "scalar", doc.k))
    if doc.labels is not None:
        fields.append(("labels", "labels", doc.labels))
    fields.append(("edges", "edges", doc.edges))
    return _emit_document(fields)


def emit_certificate(doc: CertificateDocument | SequentialCertificate) -> str:
    """Canonical text for a certificate document (byte-deterministic)."""
    if isinstance(doc, SequentialCertificate):
        doc = CertificateDocument.from_certificate(doc)
    fields: list[tuple[str, str, Any]] = [("format_version", "scalar", doc.format_version)]
    fields.append(("r", "scalar", doc.r))
    fields.append(("n", "scalar", doc.n))
    fields.append(("k", "scalar", doc.k))
    if doc.labels is not None:
        fields.append(("labels", "labels", doc.labels))
    fields.append(("edges", "edges", doc.edges))
    fields.append(("ignition", "edge", doc.ignition))
    fields.append(("sequence", "edges", doc.sequence))
    fields.append(("predicted_t", "scalar", doc.predicted_t))
    if doc.apex is not None:
        fields.append(("apex", "scalar", doc.apex))
    return _emit_document(fields)


def emit_trace(result: RunResult, sink: TextIO) -> None:
    """Line-delimited trace: a header record, then one record per infected edge.

    Within a step, edges appear in lexicographic order.
    """
    g = result.final_graph
    header = {"format_version": FORMAT_VERSION, "r": g.r, "n": g.n, "t": result.running_time}
    sink.write(json.dumps(header) + "\n")
    for i, stepset in enumerate(result.trace.steps, start=1):
        for e in sorted(stepset):
            sink.write(json.dumps({"step": i, "edge": list(e)}) + "\n")


# ---------------------------------------------------------------------------
# parsing


def _load_object(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("syntax", exc.msg, line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise DocumentError("schema", "top-level value must be an object")
    return data


def _require_int(data: dict[str, Any], key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError("schema", f"field {key!r} must be an integer")
    return value


def _check_keys(data: dict[str, Any], required: set[str], optional: set[str]) -> None:
    keys = set(data)
    missing = required - keys
    if missing:
        raise DocumentError("schema", f"missing field(s): {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise DocumentError("schema", f"unknown field(s): {sorted(unknown)}")


def _parse_edge(raw: Any, r: int, n: int) -> Edge:
    if not isinstance(raw, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in raw
    ):
        raise DocumentError("schema", f"edge {raw!r} must be a list of integers")
    if len(raw) != r:
        raise DocumentError("arity", f"edge {raw} has {len(raw)} vertices, expected {r}")
    if len(set(raw)) != len(raw):
        raise DocumentError("duplicate-vertex", f"duplicate vertex in edge {raw}")
    if sorted(raw) != raw:
        raise DocumentError("not-canonical", f"edge {raw} is not sorted")
    if raw and (raw[0] < 0 or raw[-1] >= n):
        raise DocumentError("id-range", f"edge {raw} out of range for n={n}")
    return tuple(raw)


def _parse_edge_list(raw: Any, r: int, n: int) -> tuple[Edge, ...]:
    if not isinstance(raw, list):
        raise DocumentError("schema", "field 'edges' must be a list")
    edges: list[Edge] = []
    for item in raw:
        edges.append(_parse_edge(item, r, n))
    for a, b in zip(edges, edges[1:]):
        if a == b:
            raise DocumentError("duplicate-edge", f"edge {list(a)} appears twice")
        if a > b:
            raise DocumentError("not-canonical", "edge list is not lexicographically sorted")
    return tuple(edges)


def _parse_labels(raw: Any, n: int) -> tuple[VertexLabel, ...]:
    if not isinstance(raw, list):
        raise DocumentError("schema", "field 'labels' must be a list")
    if len(raw) != n:
        raise DocumentError("schema", f"labels list must have one entry per vertex ({n})")
    labels: list[VertexLabel] = []
    for item in raw:
        if (
            not isinstance(item, dict)
            or set(item) != {"layer", "index"}
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item.values())
            or item["layer"] < 1
            or item["index"] < 1
        ):
            raise DocumentError("schema", f"label {item!r} must be {{layer, index}} positive ints")
        labels.append(VertexLabel(layer=item["layer"], index=item["index"]))
    return tuple(labels)


def _parse_common(data: dict[str, Any]) -> tuple[str, int, int, int | None]:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError("version", f"unsupported format_version {version!r}")
    r = _require_int(data, "r")
    n = _require_int(data, "n")
    if r < 1 or n < 0:
        raise DocumentError("schema", f"invalid r={r} or n={n}")
    k: int | None = None
    if "k" in data:
        k = _require_int(data, "k")
        if k < 1:
            raise DocumentError("schema", f"invalid k={k}")
    return version, r, n, k


def parse_graph(text: str) -> GraphDocument:
    """Parse and validate a canonical graph document."""
    data = _load_object(text)
    _check_keys(data, required={"format_version", "r", "n", "edges"}, optional={"k", "labels"})
    version, r, n, k = _parse_common(data)
    labels = _parse_labels(data["labels"], n) if "labels" in data else None
    edges = _parse_edge_list(data["edges"], r, n)
    return GraphDocument(format_version=version, r=r, n=n, k=k, labels=labels, edges=edges)


def parse_certificate(text: str) -> CertificateDocument:
    """Parse and validate a canonical certificate document."""
    data = _load_object(text)
    _check_keys(
        data,
        required={"format_version", "r", "n", "k", "edges", "ignition", "sequence", "predicted_t"},
        optional={"labels", "apex"},
    )
    version, r, n, k = _parse_common(data)
    assert k is not None
    labels = _parse_labels(data["labels"], n) if "labels" in data else None
    edges = _parse_edge_list(data["edges"], r, n)
    ignition = _parse_edge(data["ignition"], r, n)
    raw_seq = data["sequence"]
    if not isinstance(raw_seq, list):
        raise DocumentError("schema", "field 'sequence' must be a list")
    sequence = tuple(_parse_edge(item, r, n) for item in raw_seq)
    predicted_t = _require_int(data, "predicted_t")
    apex: int | None = None
    if "apex" in data:
        apex = _require_int(data, "apex")
    doc = CertificateDocument(
        format_version=version,
        r=r,
        n=n,
        k=k,
        labels=labels,
        edges=edges,
        ignition=ignition,
        sequence=sequence,
        predicted_t=predicted_t,
        apex=apex,
    )
    try:
        doc.to_certificate()
    except CertificateError as exc:
        raise DocumentError("certificate", str(exc)) from exc
    return doc
