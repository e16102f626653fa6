"""Command line driver.

    wnbuild --seed-fixture demo              # write the toy dataset
    wnbuild run --config demo/config.json    # every stage in order
    wnbuild link --config demo/config.json   # a single stage

Exit codes: 0 success, 1 input/parse error, 2 missing upstream stage,
3 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from wnbuild import fixtures
from wnbuild.config import load_config
from wnbuild.errors import ConfigError, DependencyError, EvaluationError, InputError
from wnbuild.pipeline import STAGE_ORDER, run_all, run_stage

log = logging.getLogger("wnbuild")

# CLI flag -> config key
_OVERRIDES = {
    "wordnet": "wordnet",
    "bilingual": "bilinguals",
    "monolingual": "monolingual",
    "stoplist": "stoplist",
    "precisions": "precisions",
    "confidences": "confidences",
    "gold_links": "gold_links",
    "gold_tags": "gold_tags",
    "out": "out",
    "link_threshold": "link_threshold",
    "distance_threshold": "distance_threshold",
    "combiner": "combiner",
    "exclude_accepted": "exclude_accepted",
    "top_filter": "top_filter",
    "heuristics": "heuristics",
    "merge_threshold": "merge_threshold",
    "max_path": "max_path",
    "max_iters": "max_iters",
}


def _common_options(parser: argparse.ArgumentParser, default=None) -> None:
    g = parser.add_argument_group("run configuration")
    g.add_argument("--config", type=Path, default=default, help="JSON run configuration")
    g.add_argument("--out", type=Path, default=default, help="output directory")
    g.add_argument("--seed-fixture", type=Path, metavar="DIR", default=default,
                   help="write the bundled toy dataset to DIR (and use its config)")
    g.add_argument("--wordnet", default=default)
    g.add_argument("--bilingual", action="append", default=default, help="repeatable")
    g.add_argument("--monolingual", default=default)
    g.add_argument("--stoplist", default=default)
    g.add_argument("--precisions", default=default)
    g.add_argument("--confidences", default=default)
    g.add_argument("--gold-links", default=default)
    g.add_argument("--gold-tags", default=default)
    g.add_argument("--link-threshold", default=default)
    g.add_argument("--distance-threshold", default=default)
    g.add_argument("--combiner", choices=["NOISY_OR", "VOTE_COUNT"], default=default)
    g.add_argument("--exclude-accepted", dest="exclude_accepted", action="store_const", const=True, default=default)
    g.add_argument("--no-exclude-accepted", dest="exclude_accepted", action="store_const", const=False, default=default)
    g.add_argument("--top-filter", default=default, help='e.g. "F2+(F3>9)"')
    g.add_argument("--heuristics", default=default, help="comma-separated genus disambiguation chain")
    g.add_argument("--merge-threshold", default=default)
    g.add_argument("--max-path", type=int, default=default)
    g.add_argument("--max-iters", type=int, default=default)
    g.add_argument("-v", "--verbose", action="store_true", default=default or False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wnbuild", description=__doc__.split("\n")[0])
    _common_options(parser)
    sub = parser.add_subparsers(dest="command", metavar="STAGE")
    for name in (*STAGE_ORDER, "run"):
        p = sub.add_parser(name, help="all stages in order" if name == "run" else f"run the {name} stage")
        _common_options(p, default=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config_path = args.config
        if args.seed_fixture is not None:
            written = fixtures.materialize(args.seed_fixture)
            print(f"toy dataset written to {args.seed_fixture}")
            config_path = config_path or written
        if args.command is None:
            if args.seed_fixture is None:
                build_parser().print_usage(sys.stderr)
                return 3
            return 0
        overrides = {key: getattr(args, flag) for flag, key in _OVERRIDES.items()}
        cfg = load_config(config_path, overrides)
        if args.command == "run":
            report = run_all(cfg)
        else:
            report = run_stage(args.command, cfg)
        if args.command in ("run", "report"):
            print((Path(cfg.out) / "report.txt").read_text(encoding="utf-8"), end="")
        else:
            log.info("%s done: %s", args.command, report)
    except (InputError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DependencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
