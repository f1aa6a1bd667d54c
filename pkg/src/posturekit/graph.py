"""Attack chain enumeration and attack graphs.

An attack chain is one complete simple path from an attacker entry
asset to a hazard's target asset.  Enumerating every such path for a
hazard, then attaching the protections guarding each hop, yields the
hazard's attack graph; merging the per-hazard graphs gives the whole
posture picture.

Traversal rules:

* links contribute one arc (a-to-b) or two (bidirectional);
* paths are simple: no asset is visited twice within a chain;
* targets are termini only: a path ends at its first target contact,
  and a target never appears as an intermediate asset;
* when an entry asset is itself a target, that contact is recorded as
  a single zero-hop chain;
* a what-if scenario may add entry assets (compromised) and extra arcs
  (zero-day links, carried on sentinel link ids ``zero-day:<n>``).

Enumeration output is deterministic: chains are ordered by hop count,
then lexicographically by asset sequence, then by link sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .model import (
    Model,
    RESERVED_LINK_PREFIX,
    Scenario,
    check_scenario,
    natural_key,
)

#: Hazard label used for graphs produced by merge_graphs.
MERGED = "merged"

DEFAULT_MAX_DEPTH = 8


def zero_day_link_id(index: int) -> str:
    return f"{RESERVED_LINK_PREFIX}{index}"


# ---------------------------------------------------------------------------
# Chain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hop:
    """One traversal step: attacker moves from ``src`` to ``dst`` over
    ``link``; ``protections`` are the defenses guarding that step."""

    src: str
    dst: str
    link: str
    protections: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "protections", tuple(self.protections))

    @property
    def is_zero_day(self) -> bool:
        return self.link.startswith(RESERVED_LINK_PREFIX)


@dataclass(frozen=True)
class AttackChain:
    """A complete simple path from an entry asset to a target asset.

    ``hops`` is empty exactly when the entry asset is itself the target
    (a zero-hop chain).  ``score`` defaults to 1.0 until likelihood
    scoring fills it.
    """

    hazard: str
    entry: str
    target: str
    hops: tuple[Hop, ...] = ()
    score: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "hops", tuple(self.hops))

    @property
    def assets(self) -> tuple[str, ...]:
        """Asset sequence entry..target; just (entry,) for zero-hop."""
        return (self.entry,) + tuple(h.dst for h in self.hops)

    @property
    def links(self) -> tuple[str, ...]:
        return tuple(h.link for h in self.hops)

    @property
    def is_zero_hop(self) -> bool:
        return not self.hops

    @property
    def protection_count(self) -> int:
        """Total protection attachments across all hops."""
        return sum(len(h.protections) for h in self.hops)

    @property
    def key(self) -> tuple:
        """Identity for matching a chain across analyses (what-if
        deltas): entry, target, and the exact hop route."""
        return (
            self.entry,
            self.target,
            tuple((h.src, h.dst, h.link) for h in self.hops),
        )


# ---------------------------------------------------------------------------
# Traversal graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraversalGraph:
    """Directed adjacency precomputed from links plus scenario
    zero-days: src -> ((dst, link_id), ...), arcs sorted."""

    nodes: tuple[str, ...] = ()
    arcs: dict[str, tuple[tuple[str, str], ...]] = field(default_factory=dict)

    @cached_property
    def arc_count(self) -> int:
        return sum(len(v) for v in self.arcs.values())

    def arcs_from(self, asset: str) -> tuple[tuple[str, str], ...]:
        return self.arcs.get(asset, ())


def traversal_graph(model: Model, scenario: Scenario | None = None) -> TraversalGraph:
    """Build the directed traversal adjacency for a model.

    Bidirectional links contribute two arcs, a-to-b links one.
    Scenario zero-day links are added under sentinel ids; their ids
    never collide with model links (the prefix is reserved).  Raises
    UnknownIdError if the scenario references unknown assets.
    """
    if scenario is not None:
        check_scenario(model, scenario)
    raw: dict[str, list[tuple[str, str]]] = {a.id: [] for a in model.assets}

    def add(a: str, b: str, direction: str, link_id: str) -> None:
        raw[a].append((b, link_id))
        if direction == "bidirectional":
            raw[b].append((a, link_id))

    for link in model.links:
        add(link.a, link.b, link.direction, link.id)
    if scenario is not None:
        for index, zero_day in enumerate(scenario.zero_day_links):
            add(zero_day.a, zero_day.b, zero_day.direction,
                zero_day_link_id(index))

    arcs = {
        src: tuple(sorted(out, key=lambda arc: (natural_key(arc[0]),
                                                natural_key(arc[1]))))
        for src, out in raw.items()
    }
    nodes = tuple(sorted(arcs, key=natural_key))
    return TraversalGraph(nodes, arcs)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_chains(
    model: Model,
    hazard: str,
    profile: str | None = None,
    scenario: Scenario | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> list[AttackChain]:
    """Enumerate every attack chain for one hazard.

    ``profile`` selects the attacker's entry assets; None means the
    union over all profiles (falling back to the scenario's profile
    field when it names one).  Scenario-compromised assets join the
    entry set.  ``max_depth`` bounds the number of hops per chain.

    Raises UnknownIdError / NoMappingError for unknown ids and
    ValueError for a non-positive max_depth.
    """
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    mapping = model.mapping_for(hazard)
    if profile is None and scenario is not None:
        profile = scenario.profile
    entries = set(model.entries_for(profile))
    graph = traversal_graph(model, scenario)
    if scenario is not None:
        entries.update(scenario.compromised)
    targets = set(mapping.targets)

    chains: list[AttackChain] = []
    for entry in sorted(entries, key=natural_key):
        if entry in targets:
            chains.append(AttackChain(hazard, entry, entry))
        path: list[Hop] = []
        visited = {entry}

        def walk(current: str) -> None:
            if len(path) >= max_depth:
                return
            for dst, link in graph.arcs_from(current):
                if dst in visited:
                    continue
                hop = Hop(current, dst, link)
                if dst in targets:
                    chains.append(AttackChain(
                        hazard, entry, dst, tuple(path) + (hop,)
                    ))
                    continue
                visited.add(dst)
                path.append(hop)
                walk(dst)
                path.pop()
                visited.discard(dst)

        walk(entry)

    chains.sort(key=lambda c: (len(c.hops), c.assets, c.links))
    return chains


def attach_protections(
    model: Model,
    chain: AttackChain,
    scenario: Scenario | None = None,
) -> AttackChain:
    """Fill each hop's protections from the model's guard specs.

    A protection guards a hop when one of its guard specs names the
    hop's destination asset and either carries no ``via`` or names the
    hop's source.  Scenario-disabled protections never attach; zero-day
    hops are by definition unguarded.  Zero-hop chains pass through
    unchanged.
    """
    disabled = set(scenario.disabled_protections) if scenario else set()
    hops = tuple(
        replace(hop, protections=())
        if hop.is_zero_day
        else replace(hop, protections=tuple(
            p.id
            for p in model.protections
            if p.id not in disabled and any(
                g.asset == hop.dst and g.via in (None, hop.src)
                for g in p.guards
            )
        ))
        for hop in chain.hops
    )
    return replace(chain, hops=hops)


# ---------------------------------------------------------------------------
# Attack graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphEdge:
    """A directed attack-graph edge; ``memberships`` lists which chains
    use it as (hazard id, chain index) pairs."""

    src: str
    dst: str
    link: str
    protections: tuple[str, ...] = ()
    memberships: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class AttackGraph:
    """Union of a hazard's chains (or "merged" across hazards):
    assets as nodes, hops as directed edges."""

    hazard: str
    nodes: tuple[str, ...] = ()
    edges: tuple[GraphEdge, ...] = ()


def _edge_sort_key(edge: GraphEdge) -> tuple:
    return (natural_key(edge.src), natural_key(edge.dst),
            natural_key(edge.link))


def build_graph(hazard: str, chains: list[AttackChain]) -> AttackGraph:
    """Collapse chains into one attack graph.

    Chain indices in edge memberships are positions in ``chains``, so
    pass chains in enumeration order.  Protections per edge come from
    the hop (identical across chains sharing the hop, since attachment
    is a function of the hop alone).
    """
    nodes: set[str] = set()
    edges: dict[tuple[str, str, str], dict] = {}
    for index, chain in enumerate(chains):
        nodes.update(chain.assets)
        for hop in chain.hops:
            slot = edges.setdefault(
                (hop.src, hop.dst, hop.link),
                {"protections": hop.protections, "members": set()},
            )
            slot["members"].add((chain.hazard, index))
    built = tuple(sorted(
        (GraphEdge(
            src, dst, link,
            protections=slot["protections"],
            memberships=tuple(sorted(
                slot["members"], key=lambda m: (natural_key(m[0]), m[1])
            )),
        ) for (src, dst, link), slot in edges.items()),
        key=_edge_sort_key,
    ))
    return AttackGraph(hazard, tuple(sorted(nodes, key=natural_key)), built)


def merge_graphs(graphs: list[AttackGraph]) -> AttackGraph:
    """Union attack graphs across hazards into one labeled "merged".

    Edge memberships are unioned per (src, dst, link); an empty input
    yields the empty merged graph.
    """
    nodes: set[str] = set()
    edges: dict[tuple[str, str, str], dict] = {}
    for graph in graphs:
        nodes.update(graph.nodes)
        for edge in graph.edges:
            slot = edges.setdefault(
                (edge.src, edge.dst, edge.link),
                {"protections": edge.protections, "members": set()},
            )
            slot["members"].update(edge.memberships)
    built = tuple(sorted(
        (GraphEdge(
            src, dst, link,
            protections=slot["protections"],
            memberships=tuple(sorted(
                slot["members"], key=lambda m: (natural_key(m[0]), m[1])
            )),
        ) for (src, dst, link), slot in edges.items()),
        key=_edge_sort_key,
    ))
    return AttackGraph(MERGED, tuple(sorted(nodes, key=natural_key)), built)


__all__ = [
    "MERGED",
    "DEFAULT_MAX_DEPTH",
    "Hop",
    "AttackChain",
    "TraversalGraph",
    "GraphEdge",
    "AttackGraph",
    "zero_day_link_id",
    "traversal_graph",
    "enumerate_chains",
    "attach_protections",
    "build_graph",
    "merge_graphs",
]
