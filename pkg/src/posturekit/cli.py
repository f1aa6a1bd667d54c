"""Command-line interface.

Exit codes: 0 success; 1 analysis found unpreventable or unprotected
chains and --fail-on-uncovered was set; 2 validation or input errors;
3 usage errors.  Results go to stdout, diagnostics to stderr, and
identical inputs produce identical output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    DEFAULT_THIN_THRESHOLD,
    analyze_model,
    hazard_chains,
    what_if,
)
from .graph import DEFAULT_MAX_DEPTH, build_graph
from .ingest import (
    ModelParseError,
    load_model_file,
    parse_document,
    parse_scenario,
)
from .model import (
    NoMappingError,
    Scenario,
    UnknownIdError,
    hazard_tree,
    resolve_losses,
)
from .report import chain_table, delta_to_dict, full_report, to_dot


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this tool reserves 2
    # for validation errors, so usage problems are rerouted to 3.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="model JSON file")
    common.add_argument(
        "--max-depth", type=int, default=DEFAULT_MAX_DEPTH,
        help="maximum hops per chain (default %(default)s)",
    )
    common.add_argument(
        "--thin-threshold", type=int, default=DEFAULT_THIN_THRESHOLD,
        help="protection count below which coverage is 'thin' "
             "(default %(default)s)",
    )

    parser = _Parser(
        prog="posturekit",
        description="Security posture modeling and attack chain analysis",
    )
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    sub.add_parser("validate", parents=[common],
                   help="check a model file, report findings")

    sub.add_parser("hazards", parents=[common],
                   help="print the hazard tree with resolved losses")

    p = sub.add_parser("chains", parents=[common],
                       help="enumerate attack chains for one hazard")
    p.add_argument("--hazard", required=True, help="hazard id (e.g. H3)")
    p.add_argument("--profile", help="attacker profile id "
                                     "(default: union of all profiles)")
    p.add_argument("--scenario", help="what-if scenario JSON file")

    p = sub.add_parser("analyze", parents=[common],
                       help="analyze every mapped hazard")
    p.add_argument("--profile", help="attacker profile id")
    p.add_argument("--fail-on-uncovered", action="store_true",
                   help="exit 1 if any chain is unpreventable/unprotected")

    p = sub.add_parser("whatif", parents=[common],
                       help="compare baseline vs scenario for one hazard")
    p.add_argument("--hazard", required=True)
    p.add_argument("--profile")
    p.add_argument("--scenario", required=True,
                   help="scenario JSON file")
    p.add_argument("--json", action="store_true",
                   help="emit the delta as JSON instead of text")

    p = sub.add_parser("export-dot", parents=[common],
                       help="export an attack graph as Graphviz DOT")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--hazard", help="one hazard's graph")
    group.add_argument("--merged", action="store_true",
                       help="merged graph across all mapped hazards "
                            "(default)")
    p.add_argument("--profile")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("report", parents=[common],
                       help="full JSON analysis bundle")
    p.add_argument("--profile")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("serve", parents=[common],
                       help="serve the read-only HTTP API")
    p.add_argument("--listen", default="127.0.0.1:8000",
                   help="address:port (default %(default)s)")
    p.add_argument("--cors-origin", action="append", default=None,
                   help="allowed CORS origin (repeatable; default *)")
    return parser


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _load_scenario(path: str | None) -> Scenario | None:
    if path is None:
        return None
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _write(text: str, output: str | None, out) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _cmd_validate(args, out, err) -> int:
    result = parse_document(Path(args.model).read_text(encoding="utf-8"))
    for finding in result.findings:
        stream = err if finding.severity == "error" else out
        subject = f" [{finding.subject}]" if finding.subject else ""
        stream.write(
            f"{finding.severity} {finding.code}{subject}: {finding.message}\n"
        )
    errors = len(result.errors)
    warnings = len(result.warnings)
    out.write(f"{errors} errors, {warnings} warnings\n")
    return 0 if errors == 0 else 2


def _cmd_hazards(args, out, err) -> int:
    model = load_model_file(args.model)
    tree = hazard_tree(model)

    def emit(node, depth: int) -> None:
        hazard = model.hazards_by_id[node.id]
        losses = sorted(resolve_losses(model, node.id))
        loss_text = ", ".join(losses) if losses else "none"
        title = f" {hazard.description}" if hazard.description else ""
        out.write(f"{'  ' * depth}{node.id}{title} (losses: {loss_text})\n")
        for child in node.children:
            emit(child, depth + 1)

    for root in tree.roots:
        emit(root, 0)
    return 0


def _cmd_chains(args, out, err) -> int:
    model = load_model_file(args.model)
    scenario = _load_scenario(args.scenario)
    chains = hazard_chains(
        model, args.hazard, args.profile, scenario, args.max_depth
    )
    out.write(chain_table(chains, model))
    out.write(f"{len(chains)} chains\n")
    return 0


def _cmd_analyze(args, out, err) -> int:
    model = load_model_file(args.model)
    results = analyze_model(
        model, args.profile, None, args.max_depth, args.thin_threshold
    )
    for hazard, chains in results.chains_by_hazard.items():
        out.write(f"== {hazard}: {len(chains)} chains\n")
        out.write(chain_table(list(chains), model))
        out.write("\n")
    summary = results.coverage.summary or {}
    out.write("coverage: " + ", ".join(
        f"{name}={summary.get(name, 0)}" for name in
        ("unpreventable", "unprotected", "thin", "defended")
    ) + "\n")
    out.write("protection ranking:\n")
    for entry in results.ranking.entries:
        out.write(
            f"  {entry.protection}: breaks {entry.chains_broken}, "
            f"weighted {entry.weighted_score}\n"
        )
    cut = ", ".join(results.ranking.greedy_cut) or "none"
    out.write(f"greedy cut: {cut}\n")
    uncovered = summary.get("unpreventable", 0) + summary.get("unprotected", 0)
    if uncovered:
        out.write(
            f"{uncovered} chain(s) need detection "
            f"(unpreventable or unprotected)\n"
        )
        if args.fail_on_uncovered:
            return 1
    return 0


def _cmd_whatif(args, out, err) -> int:
    model = load_model_file(args.model)
    scenario = _load_scenario(args.scenario)
    delta = what_if(
        model, args.hazard, scenario, args.profile,
        args.max_depth, args.thin_threshold,
    )
    if args.json:
        out.write(json.dumps(delta_to_dict(delta), indent=2,
                             ensure_ascii=False) + "\n")
        return 0
    base = delta.baseline.summary or {}
    scen = delta.scenario_result.summary or {}
    out.write(f"hazard {delta.hazard}, "
              f"profile {delta.profile or '(union)'}\n")
    out.write(f"{'class':<13} {'baseline':>8} {'scenario':>8}\n")
    for name in ("unpreventable", "unprotected", "thin", "defended"):
        out.write(
            f"{name:<13} {base.get(name, 0):>8} {scen.get(name, 0):>8}\n"
        )
    out.write(f"new chains: {len(delta.new_chains)}\n")
    for chain in delta.new_chains:
        out.write("  + " + " -> ".join(
            model.display_name(a) for a in chain.assets
        ) + "\n")
    out.write(
        f"removed protection instances: "
        f"{len(delta.removed_protection_instances)}\n"
    )
    for removed in delta.removed_protection_instances:
        out.write(
            f"  - {removed.protection} on hop {removed.hop_index} of "
            f"{removed.entry} -> {removed.target}\n"
        )
    for change in delta.class_changes:
        route = " -> ".join(model.display_name(a) for a in change.chain.assets)
        out.write(
            f"  class change: {route}: "
            f"{change.baseline_class} -> {change.scenario_class}\n"
        )
    return 0


def _cmd_export_dot(args, out, err) -> int:
    model = load_model_file(args.model)
    if args.hazard:
        chains = hazard_chains(model, args.hazard, args.profile,
                               None, args.max_depth)
        graph = build_graph(args.hazard, chains)
    else:
        graph = analyze_model(
            model, args.profile, None, args.max_depth, args.thin_threshold
        ).merged
    _write(to_dot(graph, model, show_protections=True), args.output, out)
    return 0


def _cmd_report(args, out, err) -> int:
    model = load_model_file(args.model)
    results = analyze_model(
        model, args.profile, None, args.max_depth, args.thin_threshold
    )
    _write(full_report(model, results), args.output, out)
    return 0


def _cmd_serve(args, out, err) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise _UsageError(f"--listen expects addr:port, got {args.listen!r}")
    model = load_model_file(args.model)
    app = create_app(
        model,
        max_depth=args.max_depth,
        thin_threshold=args.thin_threshold,
        cors_origins=tuple(args.cors_origin or ("*",)),
    )
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "hazards": _cmd_hazards,
    "chains": _cmd_chains,
    "analyze": _cmd_analyze,
    "whatif": _cmd_whatif,
    "export-dot": _cmd_export_dot,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse argv and dispatch; never raises on malformed input."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 3
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args, out, err)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 3
    except (ModelParseError, UnknownIdError, NoMappingError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
