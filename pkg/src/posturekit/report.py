"""Rendering: DOT graphs, text chain tables, and the JSON report
bundle.

Every renderer is deterministic: identical inputs produce identical
bytes.  The JSON serializers here are the single wire format shared by
the report bundle, the CLI, and the HTTP service.
"""

from __future__ import annotations

import json

from .analysis import (
    AnalysisResults,
    CoverageReport,
    ProtectionRanking,
    WhatIfDelta,
)
from .graph import AttackChain, AttackGraph
from .model import Finding, Model, natural_key

# Fixed color scale for coverage classes (documented in the UI legend).
CLASS_COLORS = {
    "unpreventable": "firebrick",
    "unprotected": "red",
    "thin": "orange",
    "defended": "forestgreen",
}


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(
    graph: AttackGraph,
    model: Model | None = None,
    *,
    show_protections: bool = False,
    highlight: set[str] | frozenset[str] | None = None,
    chain_classes: dict[tuple[str, int], str] | None = None,
    name: str = "attack",
) -> str:
    """Render an attack graph as Graphviz DOT.

    Nodes are labeled with asset display names (ids when no model is
    given); edge labels carry the chain memberships as hazard:number
    markers (1-based), plus protection names when ``show_protections``.
    ``highlight`` assets render bold; with ``chain_classes`` (a map
    from (hazard, chain index) to coverage class) each edge is colored
    by the worst class among its member chains.  An empty graph renders
    as exactly "digraph attack {\\n}\\n".
    """
    highlight = highlight or set()
    lines = [f"digraph {name} {{"]
    for node in graph.nodes:
        label = model.display_name(node) if model else node
        attrs = [f'label="{_dot_escape(label)}"']
        if node in highlight:
            attrs.append("style=bold")
        lines.append(f'  "{_dot_escape(node)}" [{", ".join(attrs)}];')
    for edge in graph.edges:
        markers = ",".join(
            f"{hazard}:{index + 1}" for hazard, index in edge.memberships
        )
        parts = [markers] if markers else []
        if show_protections and edge.protections:
            parts.append(", ".join(
                model.display_name(p) if model else p
                for p in edge.protections
            ))
        # join with the DOT line-break sequence, escaping each part alone
        # so user text cannot smuggle extra label syntax in
        label = "\\n".join(_dot_escape(part) for part in parts)
        attrs = [f'label="{label}"'] if label else []
        if chain_classes:
            classes = [
                chain_classes[m] for m in edge.memberships
                if m in chain_classes
            ]
            if classes:
                worst = min(classes, key=lambda c: _class_order(c))
                attrs.append(f'color="{CLASS_COLORS.get(worst, "black")}"')
        suffix = f' [{", ".join(attrs)}]' if attrs else ""
        lines.append(
            f'  "{_dot_escape(edge.src)}" -> "{_dot_escape(edge.dst)}"{suffix};'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _class_order(name: str) -> int:
    order = {"unpreventable": 0, "unprotected": 1, "thin": 2, "defended": 3}
    return order.get(name, 4)


# ---------------------------------------------------------------------------
# Chain table
# ---------------------------------------------------------------------------


def chain_table(chains: list[AttackChain], model: Model | None = None) -> str:
    """Text table of chains grouped by asset sequence.

    Columns: Itemize | Chain | Protections.  Rows are numbered from 1
    in enumeration order; a group's protections list each hop's guards
    in hop order (duplicates shown once).  An empty input yields just
    the header.
    """

    def show(identifier: str) -> str:
        return model.display_name(identifier) if model else identifier

    groups: dict[tuple[str, ...], list[str]] = {}
    for chain in chains:
        plist = groups.setdefault(chain.assets, [])
        for hop in chain.hops:
            for pid in hop.protections:
                label = show(pid)
                if label not in plist:
                    plist.append(label)

    rows: list[tuple[str, str, list[str]]] = []
    for number, (assets, protections) in enumerate(groups.items(), start=1):
        rows.append((
            str(number),
            " -> ".join(show(a) for a in assets),
            protections or [""],
        ))

    headers = ("Itemize", "Chain", "Protections")
    width0 = max([len(headers[0])] + [len(r[0]) for r in rows])
    width1 = max([len(headers[1])] + [len(r[1]) for r in rows])
    width2 = max([len(headers[2])] + [len(p) for r in rows for p in r[2]])

    def line(a: str, b: str, c: str) -> str:
        return f"{a:<{width0}} | {b:<{width1}} | {c:<{width2}}".rstrip()

    out = [
        line(*headers),
        f"{'-' * width0}-+-{'-' * width1}-+-{'-' * width2}",
    ]
    for number, chain_text, protections in rows:
        first, *rest = protections
        out.append(line(number, chain_text, first))
        for extra in rest:
            out.append(line("", "", extra))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON serializers (shared wire format)
# ---------------------------------------------------------------------------


def chain_to_dict(chain: AttackChain) -> dict:
    return {
        "hazard": chain.hazard,
        "entry": chain.entry,
        "target": chain.target,
        "assets": list(chain.assets),
        "hops": [
            {
                "from": hop.src,
                "to": hop.dst,
                "link": hop.link,
                "protections": list(hop.protections),
            }
            for hop in chain.hops
        ],
        "protection_count": chain.protection_count,
        "score": chain.score,
    }


def coverage_to_dict(report: CoverageReport) -> dict:
    return {
        "thin_threshold": report.thin_threshold,
        "summary": dict(report.summary or {}),
        "entries": [
            {
                "chain": chain_to_dict(entry.chain),
                "protection_count": entry.protection_count,
                "class": entry.coverage_class,
            }
            for entry in report.entries
        ],
        "detection_required": [
            chain_to_dict(chain) for chain in report.detection_required
        ],
    }


def ranking_to_dict(ranking: ProtectionRanking) -> dict:
    return {
        "entries": [
            {
                "protection": entry.protection,
                "chains_broken": entry.chains_broken,
                "weighted_score": entry.weighted_score,
            }
            for entry in ranking.entries
        ],
        "greedy_cut": list(ranking.greedy_cut),
        "uncut_chains": [
            chain_to_dict(chain) for chain in ranking.uncut_chains
        ],
    }


def graph_to_dict(graph: AttackGraph, model: Model | None = None) -> dict:
    nodes = []
    for node in graph.nodes:
        entry: dict = {"id": node}
        if model is not None:
            asset = model.assets_by_id.get(node)
            if asset is not None:
                entry["name"] = asset.display_name
                entry["layer"] = asset.layer
        nodes.append(entry)
    return {
        "hazard": graph.hazard,
        "nodes": nodes,
        "edges": [
            {
                "from": edge.src,
                "to": edge.dst,
                "link": edge.link,
                "protections": list(edge.protections),
                "memberships": [
                    {"hazard": hazard, "chain": index}
                    for hazard, index in edge.memberships
                ],
            }
            for edge in graph.edges
        ],
    }


def finding_to_dict(finding: Finding) -> dict:
    return {
        "severity": finding.severity,
        "code": finding.code,
        "message": finding.message,
        "subject": finding.subject,
    }


def delta_to_dict(delta: WhatIfDelta) -> dict:
    return {
        "hazard": delta.hazard,
        "profile": delta.profile,
        "baseline": coverage_to_dict(delta.baseline),
        "scenario_result": coverage_to_dict(delta.scenario_result),
        "new_chains": [chain_to_dict(chain) for chain in delta.new_chains],
        "removed_protection_instances": [
            {
                "entry": removed.entry,
                "target": removed.target,
                "hop_index": removed.hop_index,
                "link": removed.link,
                "protection": removed.protection,
            }
            for removed in delta.removed_protection_instances
        ],
        "class_changes": [
            {
                "chain": chain_to_dict(change.chain),
                "baseline_class": change.baseline_class,
                "scenario_class": change.scenario_class,
            }
            for change in delta.class_changes
        ],
    }


# ---------------------------------------------------------------------------
# Full report bundle
# ---------------------------------------------------------------------------

SCORING_ASSUMPTIONS = {
    "chain_score": (
        "product of per-hop directed likelihoods; hops without a score "
        "count as 1.0"
    ),
    "hazard_weight": (
        "maximum weight among the hazard's transitively resolved losses; "
        "0 when a hazard resolves to no losses"
    ),
    "loss_weight_default": (
        "losses without an explicit weight get 101 minus their position "
        "in the file (first listed is heaviest), clamped to at least 1"
    ),
}


def full_report(model: Model, results: AnalysisResults) -> str:
    """The machine-readable JSON bundle for one full-model analysis.

    Byte-deterministic for a given (model, results) pair: fixed key
    order, two-space indent, trailing newline.
    """
    counts = {
        "losses": len(model.losses),
        "hazards": len(model.hazards),
        "assets": len(model.assets),
        "links": len(model.links),
        "protections": len(model.protections),
        "profiles": len(model.profiles),
        "mappings": len(model.mappings),
        "edge_scores": len(model.edge_scores),
    }
    doc = {
        "schema_version": "1",
        "metadata": {
            "name": model.metadata.name,
            "version": model.metadata.version,
        },
        "counts": counts,
        "scoring_assumptions": {
            **SCORING_ASSUMPTIONS,
            "thin_threshold": results.coverage.thin_threshold,
        },
        "chains": {
            hazard: [chain_to_dict(chain) for chain in chains]
            for hazard, chains in sorted(
                results.chains_by_hazard.items(),
                key=lambda item: natural_key(item[0]),
            )
        },
        "coverage": coverage_to_dict(results.coverage),
        "ranking": ranking_to_dict(results.ranking),
        "merged_dot": to_dot(results.merged, model, show_protections=True),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
