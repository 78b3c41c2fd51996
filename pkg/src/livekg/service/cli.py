"""assist: serve the API or query a loaded graph from the shell."""

from __future__ import annotations

import argparse
import json
import sys

from ..kg import UnknownEntity
from ..storyboard import NoPath, generate_storyboard
from .state import StartupError, load_state


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="assist")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--config", required=True)

    search = sub.add_parser("search", help="rank items for a query")
    search.add_argument("--config", required=True)
    search.add_argument("--q", required=True)
    search.add_argument("--k", type=int, default=10)

    storyboard = sub.add_parser("storyboard", help="emit an item's storyboard")
    storyboard.add_argument("--config", required=True)
    storyboard.add_argument("--item", required=True)

    stats = sub.add_parser("stats", help="print knowledge graph statistics")
    stats.add_argument("--config", required=True)
    return parser


def _dump(data: dict) -> None:
    json.dump(data, sys.stdout, ensure_ascii=False, indent=2)
    sys.stdout.write("\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        state = load_state(args.config)
    except StartupError as exc:
        print(f"assist: {exc}", file=sys.stderr)
        return 2

    if args.command == "serve":
        import uvicorn

        from .app import create_app
        host, port = state.config.host_port
        uvicorn.run(create_app(state), host=host, port=port, log_level="info")
        return 0

    if args.command == "search":
        try:
            ranked = state.engine.search(args.q, args.k)
        except ValueError as exc:
            print(f"assist: {exc}", file=sys.stderr)
            return 2
        _dump({"items": [
            {"id": item_id, "label": state.kg.entity(item_id).label, "score": score}
            for item_id, score in ranked
        ]})
        return 0

    if args.command == "storyboard":
        try:
            board = generate_storyboard(state.kg, args.item)
        except (UnknownEntity, NoPath) as exc:
            print(f"assist: {exc}", file=sys.stderr)
            return 2
        _dump(board.as_dict())
        return 0

    stats = state.kg.stats()
    _dump({
        "entities": {k.value: v for k, v in stats.entities.items()},
        "triples": {k.value: v for k, v in stats.triples.items()},
        "asserted": stats.asserted,
        "derived": stats.derived,
    })
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
