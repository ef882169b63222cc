"""Decision-tree data model, JSON format and structural validation.

The tree that guides a user to a fairness definition is shipped as editable
JSON rather than hard-coded, so it can evolve under version control. The
document shape is::

    {"version": "...", "root": "<node id>",
     "nodes": [{"id", "kind", "prompt", "tooltip", "definition"?,
                "edges": [{"label", "target"}]}]}

Unknown fields anywhere in the document survive a load/dump round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

from ..definitions import Definition
from ..errors import InputError, TreeValidationError

_NODE_KEYS = {"id", "kind", "prompt", "tooltip", "definition", "edges"}
_EDGE_KEYS = {"label", "target"}
_TREE_KEYS = {"version", "root", "nodes"}


class NodeKind(str, Enum):
    DECISION = "decision"
    ACTION = "action"
    DEFINITION = "definition"


@dataclass(frozen=True)
class Edge:
    label: str
    target: str
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    prompt: str
    tooltip: str = ""
    definition: Definition | None = None
    edges: tuple[Edge, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def choices(self) -> list[str]:
        return [e.label for e in self.edges]


@dataclass(frozen=True)
class CompassTree:
    version: str
    root: str
    nodes: dict[str, Node]
    extra: dict = field(default_factory=dict)

    def node(self, node_id: str) -> Node:
        return self.nodes[node_id]

    def definitions(self) -> set[Definition]:
        return {n.definition for n in self.nodes.values() if n.definition is not None}


def validate_structure(tree: CompassTree) -> list[str]:
    """Return every structural violation; an empty list means the tree is valid."""
    problems: list[str] = []
    nodes = tree.nodes

    if tree.root not in nodes:
        problems.append(f"root {tree.root!r} is not a node")

    for node in nodes.values():
        for edge in node.edges:
            if edge.target not in nodes:
                problems.append(
                    f"edge {edge.label!r} of node {node.id!r} targets missing node {edge.target!r}"
                )
        if node.kind is NodeKind.DEFINITION:
            if node.edges:
                problems.append(f"definition node {node.id!r} must not have edges")
            if node.definition is None:
                problems.append(f"definition node {node.id!r} lacks a fairness definition")
        else:
            if node.definition is not None:
                problems.append(
                    f"{node.kind.value} node {node.id!r} must not carry a fairness definition"
                )
        if node.kind is NodeKind.DECISION:
            if len(node.edges) < 2:
                problems.append(
                    f"decision node {node.id!r} needs at least 2 edges, has {len(node.edges)}"
                )
            labels = [e.label for e in node.edges]
            for label in labels:
                if not label:
                    problems.append(f"decision node {node.id!r} has an empty edge label")
            dupes = {l for l in labels if labels.count(l) > 1}
            for label in sorted(dupes):
                problems.append(f"decision node {node.id!r} repeats edge label {label!r}")
        if node.kind is NodeKind.ACTION and len(node.edges) != 1:
            problems.append(
                f"action node {node.id!r} needs exactly 1 edge, has {len(node.edges)}"
            )

    cycle = _find_cycle(tree)
    if cycle:
        problems.append("cycle detected: " + " -> ".join(cycle))

    if tree.root in nodes:
        reachable = _reachable_from(tree, tree.root)
        incoming = {t for n in nodes.values() for t in (e.target for e in n.edges)}
        for node_id in nodes:
            if node_id in reachable:
                continue
            if node_id not in incoming:
                problems.append(
                    f"node {node_id!r} has no incoming edges and is not the root (second root)"
                )
            else:
                problems.append(f"node {node_id!r} is unreachable from the root")

    return problems


def _reachable_from(tree: CompassTree, start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        node = tree.nodes.get(stack.pop())
        if node is None:
            continue
        for edge in node.edges:
            if edge.target in tree.nodes and edge.target not in seen:
                seen.add(edge.target)
                stack.append(edge.target)
    return seen


def _find_cycle(tree: CompassTree) -> list[str] | None:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {node_id: WHITE for node_id in tree.nodes}
    parent: dict[str, str] = {}

    for start in tree.nodes:
        if colour[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        colour[start] = GREY
        while stack:
            node_id, edge_idx = stack[-1]
            node = tree.nodes[node_id]
            targets = [e.target for e in node.edges if e.target in tree.nodes]
            if edge_idx < len(targets):
                stack[-1] = (node_id, edge_idx + 1)
                nxt = targets[edge_idx]
                if colour[nxt] == GREY:
                    cycle = [nxt]
                    cur = node_id
                    while cur != nxt:
                        cycle.append(cur)
                        cur = parent[cur]
                    cycle.append(nxt)
                    cycle.reverse()
                    return cycle
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    parent[nxt] = node_id
                    stack.append((nxt, 0))
            else:
                colour[node_id] = BLACK
                stack.pop()
    return None


def _parse_edge(raw: dict, owner: str, problems: list[str]) -> Edge | None:
    if not isinstance(raw, dict):
        problems.append(f"node {owner!r}: edge entries must be objects")
        return None
    if "target" not in raw:
        problems.append(f"node {owner!r}: edge {raw.get('label')!r} lacks a target")
        return None
    extra = {k: v for k, v in raw.items() if k not in _EDGE_KEYS}
    return Edge(label=str(raw.get("label", "")), target=str(raw["target"]), extra=extra)


def parse_tree(doc: dict) -> CompassTree:
    """Build and validate a tree from a parsed JSON document.

    Raises :class:`TreeValidationError` carrying every violation found, both
    shape problems and structural ones.
    """
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise TreeValidationError(["document root must be a JSON object"])

    nodes: dict[str, Node] = {}
    raw_nodes = doc.get("nodes")
    if not isinstance(raw_nodes, list):
        problems.append("document lacks a 'nodes' list")
        raw_nodes = []
    for raw in raw_nodes:
        if not isinstance(raw, dict) or "id" not in raw:
            problems.append("every node needs an 'id'")
            continue
        node_id = str(raw["id"])
        if node_id in nodes:
            problems.append(f"duplicate node id {node_id!r}")
            continue
        kind_raw = raw.get("kind", "")
        try:
            kind = NodeKind(kind_raw)
        except ValueError:
            problems.append(f"node {node_id!r} has unknown kind {kind_raw!r}")
            continue
        definition = None
        if raw.get("definition") is not None:
            try:
                definition = Definition(raw["definition"])
            except ValueError:
                problems.append(
                    f"node {node_id!r} names unknown definition {raw['definition']!r}"
                )
        edges = []
        for raw_edge in raw.get("edges", []) or []:
            edge = _parse_edge(raw_edge, node_id, problems)
            if edge is not None:
                edges.append(edge)
        extra = {k: v for k, v in raw.items() if k not in _NODE_KEYS}
        nodes[node_id] = Node(
            id=node_id,
            kind=kind,
            prompt=str(raw.get("prompt", "")),
            tooltip=str(raw.get("tooltip", "")),
            definition=definition,
            edges=tuple(edges),
            extra=extra,
        )

    tree = CompassTree(
        version=str(doc.get("version", "")),
        root=str(doc.get("root", "")),
        nodes=nodes,
        extra={k: v for k, v in doc.items() if k not in _TREE_KEYS},
    )
    problems.extend(validate_structure(tree))
    if problems:
        raise TreeValidationError(problems)
    return tree


def load_tree(text: str) -> CompassTree:
    """Parse a tree document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"tree document is not valid JSON: {exc}") from exc
    return parse_tree(doc)


def tree_to_dict(tree: CompassTree) -> dict:
    nodes = []
    for node in tree.nodes.values():
        raw: dict = {
            "id": node.id,
            "kind": node.kind.value,
            "prompt": node.prompt,
            "tooltip": node.tooltip,
        }
        if node.definition is not None:
            raw["definition"] = node.definition.value
        raw["edges"] = [
            {"label": e.label, "target": e.target, **e.extra} for e in node.edges
        ]
        raw.update(node.extra)
        nodes.append(raw)
    doc = {"version": tree.version, "root": tree.root, "nodes": nodes}
    doc.update(tree.extra)
    return doc


def dump_tree(tree: CompassTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def default_tree() -> CompassTree:
    """The built-in selector tree shipped with the package."""
    text = resources.files("fairaudit").joinpath("data/default_tree.json").read_text("utf-8")
    return load_tree(text)
