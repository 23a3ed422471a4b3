"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 semantic error,
3 total conflict during computation.
"""

from __future__ import annotations

import argparse
import sys

from .dsl import parse_model
from .errors import (
    BeliefError,
    ConstructionError,
    EnumerationLimitError,
    MassError,
    ModelError,
    ModelSemanticError,
    TotalConflictError,
)
from .links import METHODS, build_link
from .mass import combine, vacuous_extend
from .propagation import ChainModel, compare_reports, propagate_chain, report
from . import tables

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_CONFLICT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _precision(text):
    n = int(text)
    if not 0 <= n <= 15:
        raise argparse.ArgumentTypeError("precision must be between 0 and 15")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--precision", type=_precision, default=6, help="decimal places shown (default 6)")
    common.add_argument("--max-enum", type=int, default=12, help="largest frame to tabulate (default 12)")
    common.add_argument("--quiet", action="store_true", help="suppress headings and summaries")

    parser = _Parser(prog="beliefchain", description="Belief-function propagation through rule links.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="parse and validate a model")
    p.add_argument("file")

    p = sub.add_parser("joint", parents=[common], help="joint belief report for one link")
    p.add_argument("file")
    p.add_argument("--link", help="FROM:TO (optional when the model has one link)")
    p.add_argument("--method", choices=METHODS)

    p = sub.add_parser("propagate", parents=[common], help="marginal beliefs along the chain")
    p.add_argument("file")
    p.add_argument("--target", help="report only this variable")
    p.add_argument("--method", choices=METHODS, help="override the method of every link")

    p = sub.add_parser("compare", parents=[common], help="all three link constructions side by side")
    p.add_argument("file")
    p.add_argument("--link", help="FROM:TO (optional when the model has one link)")
    return parser


def _load(path: str, stdin) -> ChainModel:
    if path == "-":
        return parse_model(stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_model(text, path)


def _pick_link(model: ChainModel, text: str | None):
    if text is None:
        if len(model.links) != 1:
            raise UsageError(f"--link FROM:TO is required (model has {len(model.links)} links)")
        return model.links[0]
    if text.count(":") != 1:
        raise UsageError(f"--link expects FROM:TO, got {text!r}")
    a, c = text.split(":")
    try:
        return model.link(a, c)
    except KeyError:
        raise UsageError(f"model has no link {a} -> {c}") from None


def _link_report(model: ChainModel, link, args):
    """Joint of the link, combined with the root belief when the link is first in the chain."""
    if model.link_position(link) == 0:
        extended = vacuous_extend(model.root_belief, link.table.frame)
        joint, k = combine(extended, link.joint)
        return report(joint, conflict=k, max_enum=args.max_enum)
    return report(link.joint, max_enum=args.max_enum)


def _cmd_check(model: ChainModel, args, out):
    if args.quiet:
        return
    names = " -> ".join(v.name for v in model.variables)
    out.write(f"ok: chain {names}\n")
    for v in model.variables:
        out.write(f"  variable {v.name} {{{', '.join(v.values)}}}\n")
    for link in model.links:
        out.write(f"  link {link.antecedent.name} -> {link.consequent.name} ({link.method}, "
                  f"{len(link.joint)} focal elements)\n")
    out.write(f"  belief on {model.variables[0].name}: {len(model.root_belief)} focal elements\n")


def _cmd_joint(model: ChainModel, args, out):
    link = _pick_link(model, args.link)
    if args.method and args.method != link.method:
        link = build_link(link.table, args.method)
        links = tuple(link if lk.table is link.table else lk for lk in model.links)
        model = ChainModel(model.variables, links, model.root_belief)
    rep = _link_report(model, link, args)
    label = f"{link.antecedent.name} -> {link.consequent.name}"
    if args.format == "json":
        out.write(tables.dumps(tables.report_obj(rep, link.method, args.precision)))
    elif args.format == "csv":
        out.write(tables.report_csv([(None, rep)], args.precision))
    else:
        title = None if args.quiet else (
            f"joint on {rep.frame} for link {label} (method {link.method}, "
            f"conflict {tables.fmt(rep.conflict, args.precision)})"
        )
        out.write(tables.report_text(rep, args.precision, title))


def _cmd_propagate(model: ChainModel, args, out):
    if args.method:
        links = tuple(build_link(lk.table, args.method) for lk in model.links)
        model = ChainModel(model.variables, links, model.root_belief)
    names = [v.name for v in model.variables]
    if args.target is not None and args.target not in names:
        raise UsageError(f"unknown target variable {args.target!r}")
    result = propagate_chain(model)
    methods = {names[0]: "root"}
    conflicts = {names[0]: 0.0}
    for link, k in zip(model.links, result.conflicts):
        methods[link.consequent.name] = link.method
        conflicts[link.consequent.name] = k
    selected = [args.target] if args.target else names
    reps = [(n, report(result.marginals[n], conflicts[n], args.max_enum)) for n in selected]

    if args.format == "json":
        out.write(tables.dumps([tables.report_obj(rep, methods[n], args.precision) for n, rep in reps]))
    elif args.format == "csv":
        lead = None if args.target else "variable"
        out.write(tables.report_csv(reps, args.precision, lead))
    else:
        for i, (n, rep) in enumerate(reps):
            if i:
                out.write("\n")
            title = None if args.quiet else (
                f"marginal on {n} (via {methods[n]}, conflict {tables.fmt(rep.conflict, args.precision)})"
            )
            out.write(tables.report_text(rep, args.precision, title))


def _cmd_compare(model: ChainModel, args, out):
    link = _pick_link(model, args.link)
    reps = []
    for meth in METHODS:
        alt = build_link(link.table, meth)
        links = tuple(alt if lk is link else lk for lk in model.links)
        variant = ChainModel(model.variables, links, model.root_belief)
        reps.append(_link_report(variant, alt, args))
    differs = compare_reports(reps)
    if args.format == "json":
        out.write(tables.dumps(tables.compare_obj(METHODS, reps, differs, args.precision)))
    elif args.format == "csv":
        out.write(tables.report_csv(list(zip(METHODS, reps)), args.precision, lead="method"))
    else:
        if not args.quiet:
            out.write(f"# link {link.antecedent.name} -> {link.consequent.name}; '*' marks rows that differ\n")
        out.write(tables.compare_text(METHODS, reps, differs, args.precision))


_COMMANDS = {
    "check": _cmd_check,
    "joint": _cmd_joint,
    "propagate": _cmd_propagate,
    "compare": _cmd_compare,
}


def run_cli(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        model = _load(args.file, stdin)
        _COMMANDS[args.command](model, args, out)
    except UsageError as exc:
        err.write(f"beliefchain: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ModelSemanticError as exc:
        err.write(f"{exc}\n")
        return EXIT_SEMANTIC
    except ModelError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except TotalConflictError as exc:
        err.write(f"beliefchain: total conflict: {exc}\n")
        return EXIT_CONFLICT
    except (ConstructionError, MassError, EnumerationLimitError, BeliefError) as exc:
        err.write(f"beliefchain: error: {exc}\n")
        return EXIT_SEMANTIC
    return EXIT_OK


def main():
    sys.exit(run_cli())
