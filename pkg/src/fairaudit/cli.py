"""Command-line front door: `fairaudit audit`, `fairaudit compass`, `fairaudit serve`.

Exit codes: 0 all requested checks satisfied, 1 fairness violation or aborted
session, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import compass as cp
from .definitions import parse_definition
from .errors import FairauditError, InputError, TreeValidationError
from .ingest import SchemaMapping, parse_dataset
from .report import render_report, render_report_json, run_audit

TREE_ENV_VAR = "FAIRAUDIT_TREE"


def _load_tree(path: str | None) -> cp.CompassTree:
    path = path or os.environ.get(TREE_ENV_VAR)
    if path is None:
        return cp.default_tree()
    return cp.load_tree(Path(path).read_text("utf-8"))


def _cmd_audit(args: argparse.Namespace) -> int:
    mapping = SchemaMapping.from_dict(json.loads(Path(args.schema).read_text("utf-8")))
    favourable = args.favourable if args.favourable is not None else mapping.favourable
    if favourable is None:
        raise InputError(
            "favourable outcome not specified: set --favourable or the schema's 'favourable' field"
        )
    definitions = [parse_definition(name) for name in args.definitions.split(",") if name.strip()]
    if not definitions:
        raise InputError("no definitions requested")

    records = parse_dataset(Path(args.data).read_text("utf-8"), mapping)
    report = run_audit(
        records,
        definitions,
        favourable=favourable,
        tolerance=args.tolerance,
        legitimate=mapping.legitimate or None,
        bins=args.bins,
        min_support=args.min_support,
    )
    text = render_report_json(report) if args.format == "json" else render_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if report.all_satisfied else 1


def _read_answers(path: str) -> list[tuple[str, str]]:
    doc = json.loads(Path(path).read_text("utf-8"))
    if not isinstance(doc, list):
        raise InputError("answers file must hold a JSON list")
    answers: list[tuple[str, str]] = []
    for entry in doc:
        if isinstance(entry, str):
            answers.append((entry, ""))
        elif isinstance(entry, dict) and "label" in entry:
            answers.append((str(entry["label"]), str(entry.get("rationale", ""))))
        else:
            raise InputError(
                "each answer must be a string or an object with 'label' (and optional 'rationale')"
            )
    return answers


def _prompt_interactively(session: cp.CompassSession) -> tuple[str, str]:
    node = session.tree.nodes[session.current]
    print()
    print(node.prompt)
    if node.tooltip:
        print(f"  ({node.tooltip})")
    for i, label in enumerate(node.choices, start=1):
        print(f"  {i}) {label}")
    while True:
        raw = input("choice: ").strip()
        if raw.isdigit() and 1 <= int(raw) <= len(node.choices):
            choice = node.choices[int(raw) - 1]
            break
        if raw in node.choices:
            choice = raw
            break
        print(f"  unknown choice {raw!r}; valid: {', '.join(node.choices)}")
    rationale = input("rationale (optional): ").strip()
    return choice, rationale


def _cmd_compass(args: argparse.Namespace) -> int:
    tree = _load_tree(args.tree)
    session = cp.start_session(tree)
    scripted = _read_answers(args.answers) if args.answers else None
    step = 0
    while not session.complete:
        if scripted is not None:
            if step >= len(scripted):
                print("error: answers exhausted before reaching a definition", file=sys.stderr)
                return 1
            choice, rationale = scripted[step]
            step += 1
        else:
            try:
                choice, rationale = _prompt_interactively(session)
            except (EOFError, KeyboardInterrupt):
                print("\naborted: no record written", file=sys.stderr)
                return 1
        session = cp.answer(session, choice, rationale)

    record = cp.export_record(session, context=args.context)
    Path(args.out).write_text(cp.dumps_record(record), encoding="utf-8")
    print(f"recommendation: {record.recommendation.value}")
    print(f"record written to {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        tree=_load_tree(args.tree),
        session_ttl=args.session_ttl,
        cors_origins=args.cors_origin or ["*"],
        state_path=args.state_path,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairaudit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    audit = sub.add_parser("audit", help="audit a dataset against fairness definitions")
    audit.add_argument("--data", required=True, help="delimited dataset with header row")
    audit.add_argument("--schema", required=True, help="JSON schema-mapping file")
    audit.add_argument(
        "--definitions", required=True, help="comma-separated definition names"
    )
    audit.add_argument("--tolerance", type=float, default=0.01)
    audit.add_argument("--favourable", type=int, choices=(0, 1), default=None)
    audit.add_argument("--format", choices=("text", "json"), default="text")
    audit.add_argument("--bins", type=int, default=10, help="score bins for Calibration")
    audit.add_argument(
        "--min-support", type=int, default=5, help="min records per group per bin/stratum"
    )
    audit.add_argument("--out", default=None, help="write the report here instead of stdout")
    audit.set_defaults(func=_cmd_audit)

    compass = sub.add_parser("compass", help="walk the definition selector")
    compass.add_argument(
        "--tree", default=None, help=f"tree JSON (default: built-in, or ${TREE_ENV_VAR})"
    )
    compass.add_argument(
        "--answers", default=None, help="scripted answers JSON instead of interactive prompts"
    )
    compass.add_argument("--out", required=True, help="where to write the decision record")
    compass.add_argument("--context", default="", help="free-text context stored in the record")
    compass.set_defaults(func=_cmd_compass)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--tree", default=None)
    serve.add_argument("--session-ttl", type=float, default=1800.0)
    serve.add_argument("--cors-origin", action="append", default=None)
    serve.add_argument("--state-path", default=None, help="snapshot sessions to this file")
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TreeValidationError as exc:
        print("error: invalid tree:", file=sys.stderr)
        for violation in exc.violations:
            print(f"  - {violation}", file=sys.stderr)
        return 2
    except FairauditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
