"""
Command-line query runner.

    python cli.py run programs/nrev.mk --take 1
    python cli.py run programs/store-demo.mk --stores
    python cli.py fmt programs/nrev.mk

Answers go to stdout, one line each, flushed as they are found. Exit status is
0 on success, 1 on file, parse or program errors and 2 when the timeout expires.
"""
import argparse
import logging
import sys
from typing import List, Optional

import config
from utils.errors import KanrenError, QueryTimeout
from utils.evaluator import Deadline, ProgramEvaluator, effective_count
from utils.parser import parse
from utils.printer import format_answer, format_program, format_query, print_store
from utils.stdlib import SYSTEMS, get_system

logger = logging.getLogger("mukanren.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mukanren", description="Run constraint microKanren programs.")
    parser.add_argument("--debug", action="store_true", help="log at DEBUG level on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="evaluate every run query in a program file")
    run.add_argument("file", help="program file (.mk)")
    counts = run.add_mutually_exclusive_group()
    counts.add_argument("--take", type=int, metavar="N", help="override every query's answer count")
    counts.add_argument("--all", action="store_true", help="take every answer (may not terminate)")
    run.add_argument("--timeout", type=float, default=config.DEFAULT_TIMEOUT, metavar="SECONDS",
                     help="wall-clock budget for the whole program; 0 disables it (default: %(default)s)")
    run.add_argument("--stores", action="store_true", help="print each answer's raw constraint store")
    run.add_argument("--system", choices=sorted(SYSTEMS), default=config.DEFAULT_SYSTEM,
                     help="constraint system (default: %(default)s)")

    fmt = commands.add_parser("fmt", help="print a program in canonical form")
    fmt.add_argument("file", help="program file (.mk)")
    fmt.add_argument("--system", choices=sorted(SYSTEMS), default=config.DEFAULT_SYSTEM)
    return parser


def _error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _read_source(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def cmd_run(args: argparse.Namespace) -> int:
    if args.take is not None and args.take < 0:
        return _error("--take must be non-negative")
    system = get_system(args.system)
    program = parse(_read_source(args.file), system)
    evaluator = ProgramEvaluator(program, system)
    deadline = Deadline(args.timeout if args.timeout and args.timeout > 0 else None)
    many = len(program.queries) > 1

    for query in program.queries:
        if many:
            print(f";; {format_query(query)}")
        count = effective_count(query, args.take, args.all)
        found = 0
        for answer in evaluator.answers(query, count, deadline.tick):
            print(format_answer(answer))
            if args.stores:
                print(print_store(answer.state))
            sys.stdout.flush()
            found += 1
        if found == 0:
            print("no answers")
        logger.debug(f"{format_query(query)}: {found} answer(s)")
    return EXIT_OK


def cmd_fmt(args: argparse.Namespace) -> int:
    program = parse(_read_source(args.file), get_system(args.system))
    sys.stdout.write(format_program(program))
    return EXIT_OK


def cli_main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config.configure_logging(logging.WARNING, debug=args.debug)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), config.RECURSION_LIMIT))

    handler = cmd_run if args.command == "run" else cmd_fmt
    try:
        return handler(args)
    except QueryTimeout as e:
        sys.stdout.flush()
        logger.warning(f"Timeout in {args.file}: {e}")
        print(f"timeout: {e}", file=sys.stderr)
        return EXIT_TIMEOUT
    except OSError as e:
        return _error(f"cannot read {args.file}: {e.strerror or e}")
    except UnicodeDecodeError as e:
        return _error(f"{args.file} is not UTF-8: {e}")
    except KanrenError as e:
        return _error(f"{args.file}:{e}")
    except RecursionError:
        return _error("recursion limit exceeded; raise MUKANREN_RECURSION_LIMIT")


if __name__ == "__main__":
    sys.exit(cli_main())
