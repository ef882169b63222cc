from .session import (
    CompassSession,
    DecisionRecord,
    TrailStep,
    answer,
    dumps_record,
    export_record,
    record_from_dict,
    replay,
    start_session,
    undo,
)
from .tree import (
    CompassTree,
    Edge,
    Node,
    NodeKind,
    default_tree,
    dump_tree,
    load_tree,
    parse_tree,
    tree_to_dict,
    validate_structure,
)

__all__ = [
    "CompassSession",
    "CompassTree",
    "DecisionRecord",
    "Edge",
    "Node",
    "NodeKind",
    "TrailStep",
    "answer",
    "default_tree",
    "dump_tree",
    "dumps_record",
    "export_record",
    "load_tree",
    "parse_tree",
    "record_from_dict",
    "replay",
    "start_session",
    "tree_to_dict",
    "undo",
    "validate_structure",
]
