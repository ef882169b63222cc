"""Traversal sessions over a decision tree, with documented reasoning.

Sessions are immutable values: every operation returns a new session, which
makes undo trivial and lets concurrent sessions share one tree safely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Sequence

from ..definitions import Definition
from ..errors import (
    IncompleteSessionError,
    InputError,
    InvalidChoiceError,
    SessionCompleteError,
    SessionError,
)
from .tree import CompassTree, NodeKind

Clock = Callable[[], str]


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class TrailStep:
    node: str
    answer: str
    rationale: str
    timestamp: str

    def to_dict(self) -> dict:
        return {
            "node": self.node,
            "answer": self.answer,
            "rationale": self.rationale,
            "timestamp": self.timestamp,
        }


@dataclass(frozen=True)
class CompassSession:
    tree: CompassTree
    current: str
    trail: tuple[TrailStep, ...] = ()

    @property
    def complete(self) -> bool:
        return self.tree.nodes[self.current].kind is NodeKind.DEFINITION


@dataclass(frozen=True)
class DecisionRecord:
    """Exportable justification: the full trail plus the recommendation."""

    tree_version: str
    recommendation: Definition
    trail: tuple[TrailStep, ...]
    context: str = ""

    def to_dict(self) -> dict:
        return {
            "tree_version": self.tree_version,
            "recommendation": self.recommendation.value,
            "context": self.context,
            "trail": [step.to_dict() for step in self.trail],
        }


def _advance_through_actions(
    tree: CompassTree, current: str, trail: tuple[TrailStep, ...], clock: Clock
) -> tuple[str, tuple[TrailStep, ...]]:
    # Action nodes need no user input; log them so records show the step.
    node = tree.nodes[current]
    while node.kind is NodeKind.ACTION:
        trail = trail + (TrailStep(node.id, "", "", clock()),)
        current = node.edges[0].target
        node = tree.nodes[current]
    return current, trail


def start_session(tree: CompassTree, *, clock: Clock = _now_iso) -> CompassSession:
    current, trail = _advance_through_actions(tree, tree.root, (), clock)
    return CompassSession(tree=tree, current=current, trail=trail)


def answer(
    session: CompassSession,
    choice: str,
    rationale: str = "",
    *,
    clock: Clock = _now_iso,
) -> CompassSession:
    """Answer the current decision and advance, auto-traversing action nodes."""
    node = session.tree.nodes[session.current]
    if node.kind is NodeKind.DEFINITION:
        raise SessionCompleteError(
            f"session complete: already at definition node {node.id!r}"
        )
    edge = next((e for e in node.edges if e.label == choice), None)
    if edge is None:
        raise InvalidChoiceError(choice, node.choices)
    trail = session.trail + (TrailStep(node.id, choice, rationale, clock()),)
    current, trail = _advance_through_actions(session.tree, edge.target, trail, clock)
    return CompassSession(tree=session.tree, current=current, trail=trail)


def undo(session: CompassSession) -> CompassSession:
    """Remove the last answered decision (and any actions traversed after it)."""
    steps = list(session.trail)
    while steps and session.tree.nodes[steps[-1].node].kind is NodeKind.ACTION:
        steps.pop()
    if not steps:
        raise SessionError("nothing to undo: no decision has been answered")
    last = steps.pop()
    return CompassSession(
        tree=session.tree, current=last.node, trail=tuple(steps)
    )


def replay(tree: CompassTree, trail: Sequence[TrailStep]) -> str:
    """Walk the tree along a trail and return the resulting current node id.

    Raises :class:`InputError` if the trail does not follow valid edges from
    the root.
    """
    current = tree.root
    for step in trail:
        if step.node != current:
            raise InputError(
                f"trail does not replay: expected node {current!r}, trail says {step.node!r}"
            )
        node = tree.nodes[current]
        if node.kind is NodeKind.ACTION:
            if step.answer:
                raise InputError(f"action step {node.id!r} must have an empty answer")
            current = node.edges[0].target
        elif node.kind is NodeKind.DECISION:
            edge = next((e for e in node.edges if e.label == step.answer), None)
            if edge is None:
                raise InputError(
                    f"trail does not replay: {step.answer!r} is not an edge of {node.id!r}"
                )
            current = edge.target
        else:
            raise InputError(f"trail continues past definition node {node.id!r}")
    return current


def export_record(session: CompassSession, context: str = "") -> DecisionRecord:
    node = session.tree.nodes[session.current]
    if node.kind is not NodeKind.DEFINITION:
        raise IncompleteSessionError(
            f"not at a definition: session stands at {node.kind.value} node {node.id!r}"
        )
    return DecisionRecord(
        tree_version=session.tree.version,
        recommendation=node.definition,  # type: ignore[arg-type] - validated tree
        trail=session.trail,
        context=context,
    )


def dumps_record(record: DecisionRecord) -> str:
    """Stable JSON text for a record; loading and dumping again is identical."""
    return json.dumps(record.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def record_from_dict(doc: dict) -> DecisionRecord:
    try:
        trail = tuple(
            TrailStep(
                node=str(s["node"]),
                answer=str(s.get("answer", "")),
                rationale=str(s.get("rationale", "")),
                timestamp=str(s.get("timestamp", "")),
            )
            for s in doc.get("trail", [])
        )
        return DecisionRecord(
            tree_version=str(doc["tree_version"]),
            recommendation=Definition(doc["recommendation"]),
            trail=trail,
            context=str(doc.get("context", "")),
        )
    except (KeyError, ValueError) as exc:
        raise InputError(f"malformed decision record: {exc}") from exc
