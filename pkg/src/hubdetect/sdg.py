"""Service dependency graph model: ingestion, validation, summaries.

A service dependency graph (SDG) is an unweighted simple directed graph
whose nodes are service names. Call multiplicity reported by
reconstruction tools is collapsed to a single edge; self-loops are
rejected outright so corpus anomalies surface at ingestion time rather
than silently skewing degree statistics downstream.

Two file formats are supported:

* JSON object: ``{"system": str, "nodes": [str, ...],
  "edges": [[source, target], ...]}``
* edge list: UTF-8 text, one ``source<whitespace>target`` per line,
  ``#`` starts a comment, the system id is the filename stem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import networkx as nx

from .errors import GraphValidationError, ParseError

Edge = tuple[str, str]
NodeKey = tuple[str, str]  # (system_id, node_id) — identity across a corpus


@dataclass(frozen=True)
class Sdg:
    """Immutable directed simple graph of named services.

    Instances are validated on construction and safe to share between
    threads; every analysis in this package treats them as read-only.
    """

    system_id: str
    nodes: frozenset[str]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if not self.system_id:
            raise GraphValidationError("system_id must be a non-empty string")
        if not self.nodes:
            raise GraphValidationError(f"{self.system_id}: graph has no nodes")
        for src, dst in self.edges:
            if src == dst:
                raise GraphValidationError(
                    f"{self.system_id}: self-loop on {src!r}"
                )
            if src not in self.nodes or dst not in self.nodes:
                raise GraphValidationError(
                    f"{self.system_id}: edge ({src!r}, {dst!r}) references an undeclared node"
                )

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sorted_nodes(self) -> list[str]:
        """Nodes in lexicographic order; the canonical iteration order."""
        return sorted(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def in_degree(self, node: str) -> int:
        return sum(1 for _, dst in self.edges if dst == node)

    def out_degree(self, node: str) -> int:
        return sum(1 for src, _ in self.edges if src == node)

    def to_networkx(self) -> "nx.DiGraph":
        g = nx.DiGraph()
        g.add_nodes_from(self.sorted_nodes())
        g.add_edges_from(self.sorted_edges())
        return g

    def to_json(self) -> str:
        doc = {
            "system": self.system_id,
            "nodes": self.sorted_nodes(),
            "edges": [list(e) for e in self.sorted_edges()],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_parts(
        cls, system_id: str, nodes: Iterable[str], edges: Iterable[Edge]
    ) -> "Sdg":
        """Build an Sdg, collapsing duplicate edges (multi-edge tolerant)."""
        return cls(
            system_id=system_id,
            nodes=frozenset(nodes),
            edges=frozenset((str(s), str(t)) for s, t in edges),
        )


@dataclass(frozen=True)
class GraphSummary:
    """Per-graph headline statistics."""

    n_nodes: int
    n_edges: int
    avg_degree: float  # edges / nodes
    max_in_degree: int
    max_out_degree: int
    max_total_degree: int


def summarize(g: Sdg) -> GraphSummary:
    """Node/edge counts, average degree and per-direction degree maxima."""
    indeg = {n: 0 for n in g.nodes}
    outdeg = {n: 0 for n in g.nodes}
    for src, dst in g.edges:
        outdeg[src] += 1
        indeg[dst] += 1
    return GraphSummary(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        avg_degree=g.n_edges / g.n_nodes,
        max_in_degree=max(indeg.values()),
        max_out_degree=max(outdeg.values()),
        max_total_degree=max(indeg[n] + outdeg[n] for n in g.nodes),
    )


@dataclass
class Corpus:
    """Ordered collection of SDGs with unique system ids.

    Node identity across a corpus is the ``(system_id, node_id)`` pair;
    the same service name appearing in two systems counts twice.
    """

    graphs: list[Sdg] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for g in self.graphs:
            if g.system_id in seen:
                raise GraphValidationError(f"duplicate system id {g.system_id!r}")
            seen.add(g.system_id)

    def __iter__(self) -> Iterator[Sdg]:
        return iter(self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def n_nodes(self) -> int:
        return sum(g.n_nodes for g in self.graphs)

    def node_keys(self) -> list[NodeKey]:
        """All (system, node) pairs, in graph order then lexicographic node order."""
        return [(g.system_id, n) for g in self.graphs for n in g.sorted_nodes()]

    def get(self, system_id: str) -> Sdg:
        for g in self.graphs:
            if g.system_id == system_id:
                return g
        raise KeyError(system_id)


def load_sdg(path: str | Path, format: str | None = None) -> Sdg:
    """Load and validate one SDG from a JSON or edge list file.

    ``format`` is ``"json"`` or ``"edgelist"``; when omitted it is
    inferred from the file suffix (``.json`` vs anything else).
    """
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "edgelist"
    if format == "json":
        return _load_json(path)
    if format == "edgelist":
        return _load_edgelist(path)
    raise ParseError(f"unknown SDG format {format!r}")


def _load_json(path: Path) -> Sdg:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    try:
        system = doc["system"]
        nodes = doc["nodes"]
        edges = doc["edges"]
    except KeyError as exc:
        raise ParseError(f"{path}: missing field {exc}") from exc
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise ParseError(f"{path}: 'nodes' must be an array of strings")
    parsed_edges: list[Edge] = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError(f"{path}: edge {e!r} is not a 2-element array")
        parsed_edges.append((str(e[0]), str(e[1])))
    return Sdg.from_parts(str(system), nodes, parsed_edges)


def _load_edgelist(path: Path) -> Sdg:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    nodes: set[str] = set()
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(
                f"{path}:{lineno}: expected 'source target', got {raw!r}"
            )
        src, dst = parts
        nodes.update((src, dst))
        edges.append((src, dst))
    return Sdg.from_parts(path.stem, nodes, edges)


def save_sdg(g: Sdg, path: str | Path) -> None:
    Path(path).write_text(g.to_json(), encoding="utf-8")


def load_corpus(paths: Iterable[str | Path]) -> Corpus:
    """Load a corpus from files; directories are expanded to their SDG files."""
    files: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix in (".json", ".edges", ".edgelist", ".txt")))
        else:
            files.append(p)
    return Corpus([load_sdg(f) for f in files])
