"""Core domain model for security posture analysis.

A model is a small knowledge graph of a cyber infrastructure: the
unacceptable losses the operator cares about, the hazards that realize
them, the assets and links that make up the infrastructure, the
protections guarding hops between assets, attacker profiles (entry
points), and the mapping from hazards to the critical assets they
target.

All types are frozen dataclasses; a Model canonicalizes itself on
construction (sections sorted by id, default loss weights materialized)
so that equal models compare equal and emission is deterministic.
Validation never raises: ``validate`` returns a report of findings.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

# ---------------------------------------------------------------------------
# Constants and id helpers
# ---------------------------------------------------------------------------

SCHEMA_VERSION = "1"

LAYERS = ("hardware", "software", "data")
LINK_KINDS = ("direct", "vlan", "vxlan", "remote-api", "other")
LINK_DIRECTIONS = ("bidirectional", "a-to-b")
SCORE_DIRECTIONS = ("a-to-b", "b-to-a")

#: Link ids beginning with this prefix are reserved for scenario-injected
#: zero-day links and may not appear in a model file.
RESERVED_LINK_PREFIX = "zero-day:"

_LOSS_ID = re.compile(r"L[1-9]\d*\Z")
_HAZARD_ID = re.compile(r"H\d+(\.\d+)*\Z")
_DIGIT_RUN = re.compile(r"(\d+)")


def natural_key(identifier: str) -> tuple:
    """Sort key comparing digit runs numerically, so H1.3 < H1.10."""
    return tuple(
        int(part) if part.isdigit() else part
        for part in _DIGIT_RUN.split(identifier)
    )


def hazard_parent(hazard_id: str) -> str | None:
    """Parent id of a dotted hazard id (H2.2.1 -> H2.2), None for roots."""
    head, dot, _ = hazard_id.rpartition(".")
    return head if dot else None


class UnknownIdError(ValueError):
    """A referenced id does not exist in the model."""

    code = "E-UNKNOWN-ID"

    def __init__(self, kind: str, identifier: str):
        super().__init__(f"unknown {kind} id: {identifier!r}")
        self.kind = kind
        self.identifier = identifier


class NoMappingError(ValueError):
    """A hazard has no critical-asset mapping, so it cannot be analyzed."""

    code = "E-NO-MAPPING"

    def __init__(self, hazard_id: str):
        super().__init__(f"hazard {hazard_id} has no critical-asset mapping")
        self.hazard_id = hazard_id


# ---------------------------------------------------------------------------
# Entity types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Loss:
    """An unacceptable mission-level outcome (id L1, L2, ...).

    ``weight`` expresses relative severity on a 1..100 scale.  When a
    file omits it, Model construction assigns 101 - position (first
    listed loss is heaviest), clamped to at least 1.
    """

    id: str
    description: str = ""
    weight: int | None = None


@dataclass(frozen=True)
class Hazard:
    """An event that realizes losses, possibly via other hazards.

    ``associated`` holds Loss ids and/or Hazard ids; hazard ids are
    hierarchical (H2.2.1 is a child of H2.2).
    """

    id: str
    description: str = ""
    associated: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "associated", tuple(self.associated))


@dataclass(frozen=True)
class Asset:
    """An entity in the infrastructure, on one of three layers."""

    id: str
    name: str = ""
    layer: str = "software"
    attributes: dict = field(default_factory=dict)
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))

    @property
    def display_name(self) -> str:
        return self.name or self.id


@dataclass(frozen=True)
class Link:
    """A connection between two assets an attacker could traverse."""

    id: str
    a: str
    b: str
    kind: str = "direct"
    direction: str = "bidirectional"
    attributes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GuardSpec:
    """Where a protection applies: entry to ``asset``, optionally only
    along hops arriving from ``via``; via=None guards all inbound hops."""

    asset: str
    via: str | None = None


@dataclass(frozen=True)
class Protection:
    """A defense mechanism (SSH, credentials, firewall, ...)."""

    id: str
    name: str = ""
    description: str = ""
    guards: tuple[GuardSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "guards",
            tuple(
                g if isinstance(g, GuardSpec) else GuardSpec(**g)
                for g in self.guards
            ),
        )

    @property
    def display_name(self) -> str:
        return self.name or self.id


@dataclass(frozen=True)
class AttackerProfile:
    """An attacker archetype: capability tier plus initially
    controlled entry assets."""

    id: str
    name: str = ""
    tier: int = 0
    entry_assets: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entry_assets", tuple(self.entry_assets))


@dataclass(frozen=True)
class CriticalAssetMapping:
    """The assets a hazard targets (attack graph termini)."""

    hazard: str
    targets: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))


@dataclass(frozen=True)
class EdgeScore:
    """Likelihood in (0, 1] of traversing a link in one direction."""

    link: str
    direction: str = "a-to-b"
    likelihood: float = 1.0


@dataclass(frozen=True)
class ZeroDayLink:
    """A hypothetical link injected by a what-if scenario.

    Unlike model links, the direction defaults to a-to-b: a zero day is
    an exploit carrying the attacker from ``a`` to ``b``.
    """

    a: str
    b: str
    direction: str = "a-to-b"


@dataclass(frozen=True)
class Scenario:
    """A what-if overlay: nothing in the model changes; analyses read
    the scenario alongside the model.

    ``profile`` is only a default; an explicit profile argument to an
    analysis wins over it.
    """

    profile: str | None = None
    compromised: tuple[str, ...] = ()
    disabled_protections: tuple[str, ...] = ()
    zero_day_links: tuple[ZeroDayLink, ...] = ()
    score_overrides: tuple[EdgeScore, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "compromised", tuple(self.compromised))
        object.__setattr__(
            self, "disabled_protections", tuple(self.disabled_protections)
        )
        object.__setattr__(
            self,
            "zero_day_links",
            tuple(
                z if isinstance(z, ZeroDayLink) else ZeroDayLink(**z)
                for z in self.zero_day_links
            ),
        )
        object.__setattr__(
            self,
            "score_overrides",
            tuple(
                s if isinstance(s, EdgeScore) else EdgeScore(**s)
                for s in self.score_overrides
            ),
        )

    @property
    def is_empty(self) -> bool:
        return not (
            self.compromised
            or self.disabled_protections
            or self.zero_day_links
            or self.score_overrides
        )


EMPTY_SCENARIO = Scenario()


def check_scenario(model: Model, scenario: Scenario) -> None:
    """Semantic check: every id a scenario references must exist.

    Score overrides may also target the scenario's own zero-day links
    by sentinel id (zero-day:0, zero-day:1, ...).  Raises UnknownIdError
    on the first unknown reference.
    """
    for asset in scenario.compromised:
        if asset not in model.assets_by_id:
            raise UnknownIdError("asset", asset)
    for protection in scenario.disabled_protections:
        if protection not in model.protections_by_id:
            raise UnknownIdError("protection", protection)
    for zero_day in scenario.zero_day_links:
        for end in (zero_day.a, zero_day.b):
            if end not in model.assets_by_id:
                raise UnknownIdError("asset", end)
    sentinels = {
        f"{RESERVED_LINK_PREFIX}{i}"
        for i in range(len(scenario.zero_day_links))
    }
    for score in scenario.score_overrides:
        if score.link not in model.links_by_id and score.link not in sentinels:
            raise UnknownIdError("link", score.link)
    if scenario.profile is not None and scenario.profile not in model.profiles_by_id:
        raise UnknownIdError("profile", scenario.profile)


@dataclass(frozen=True)
class Metadata:
    name: str = ""
    version: str = ""


# ---------------------------------------------------------------------------
# Model
# ---------------------------------------------------------------------------


def _canonical(entries, key):
    return tuple(sorted(entries, key=key))


@dataclass(frozen=True)
class Model:
    """A complete posture model.

    Construction canonicalizes: every section is sorted by natural id
    order and absent loss weights are materialized from the order the
    losses were supplied in (101 - position, clamped to >= 1).  Two
    models with the same content therefore compare equal regardless of
    input order, and emission is deterministic.
    """

    losses: tuple[Loss, ...] = ()
    hazards: tuple[Hazard, ...] = ()
    assets: tuple[Asset, ...] = ()
    links: tuple[Link, ...] = ()
    protections: tuple[Protection, ...] = ()
    profiles: tuple[AttackerProfile, ...] = ()
    mappings: tuple[CriticalAssetMapping, ...] = ()
    edge_scores: tuple[EdgeScore, ...] = ()
    metadata: Metadata = field(default_factory=Metadata)

    def __post_init__(self):
        # Default weight: first listed loss is heaviest (100), each
        # subsequent one step lighter, never below 1.
        losses = [
            loss
            if loss.weight is not None
            else Loss(loss.id, loss.description, max(1, 100 - position))
            for position, loss in enumerate(self.losses)
        ]
        object.__setattr__(
            self, "losses", _canonical(losses, lambda x: natural_key(x.id))
        )
        object.__setattr__(
            self, "hazards",
            _canonical(self.hazards, lambda x: natural_key(x.id)),
        )
        object.__setattr__(
            self, "assets",
            _canonical(self.assets, lambda x: natural_key(x.id)),
        )
        object.__setattr__(
            self, "links",
            _canonical(self.links, lambda x: natural_key(x.id)),
        )
        object.__setattr__(
            self, "protections",
            _canonical(self.protections, lambda x: natural_key(x.id)),
        )
        object.__setattr__(
            self, "profiles",
            _canonical(self.profiles, lambda x: natural_key(x.id)),
        )
        object.__setattr__(
            self, "mappings",
            _canonical(self.mappings, lambda x: natural_key(x.hazard)),
        )
        object.__setattr__(
            self, "edge_scores",
            _canonical(
                self.edge_scores,
                lambda x: (natural_key(x.link), x.direction),
            ),
        )

    # -- index helpers ------------------------------------------------------

    @cached_property
    def losses_by_id(self) -> dict[str, Loss]:
        return {x.id: x for x in self.losses}

    @cached_property
    def hazards_by_id(self) -> dict[str, Hazard]:
        return {x.id: x for x in self.hazards}

    @cached_property
    def assets_by_id(self) -> dict[str, Asset]:
        return {x.id: x for x in self.assets}

    @cached_property
    def links_by_id(self) -> dict[str, Link]:
        return {x.id: x for x in self.links}

    @cached_property
    def protections_by_id(self) -> dict[str, Protection]:
        return {x.id: x for x in self.protections}

    @cached_property
    def profiles_by_id(self) -> dict[str, AttackerProfile]:
        return {x.id: x for x in self.profiles}

    @cached_property
    def mappings_by_hazard(self) -> dict[str, CriticalAssetMapping]:
        return {x.hazard: x for x in self.mappings}

    @cached_property
    def edge_score_map(self) -> dict[tuple[str, str], float]:
        return {(s.link, s.direction): s.likelihood for s in self.edge_scores}

    def mapping_for(self, hazard_id: str) -> CriticalAssetMapping:
        if hazard_id not in self.hazards_by_id:
            raise UnknownIdError("hazard", hazard_id)
        mapping = self.mappings_by_hazard.get(hazard_id)
        if mapping is None:
            raise NoMappingError(hazard_id)
        return mapping

    def entry_union(self) -> tuple[str, ...]:
        """All entry assets across all profiles, sorted; the default
        attacker when no profile is selected."""
        union = {a for p in self.profiles for a in p.entry_assets}
        return tuple(sorted(union, key=natural_key))

    def entries_for(self, profile_id: str | None) -> tuple[str, ...]:
        if profile_id is None:
            return self.entry_union()
        profile = self.profiles_by_id.get(profile_id)
        if profile is None:
            raise UnknownIdError("profile", profile_id)
        return tuple(sorted(set(profile.entry_assets), key=natural_key))

    def display_name(self, identifier: str) -> str:
        asset = self.assets_by_id.get(identifier)
        if asset is not None:
            return asset.display_name
        protection = self.protections_by_id.get(identifier)
        if protection is not None:
            return protection.display_name
        return identifier


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    """One validation diagnostic: severity, stable code, message, and
    the id of the offending entity."""

    severity: str  # "error" | "warning"
    code: str
    message: str
    subject: str = ""


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "findings", tuple(self.findings))

    def __iter__(self) -> Iterator[Finding]:
        return iter(self.findings)

    def __len__(self) -> int:
        return len(self.findings)

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    @property
    def ok(self) -> bool:
        return not self.errors


def _error(code: str, message: str, subject: str = "") -> Finding:
    return Finding("error", code, message, subject)


def _warning(code: str, message: str, subject: str = "") -> Finding:
    return Finding("warning", code, message, subject)


def validate(model: Model) -> ValidationReport:
    """Check every model invariant; returns all findings, never raises.

    An empty report means the model is fully consistent; warnings are
    advisory lints that do not block analysis.
    """
    out: list[Finding] = []
    _check_losses(model, out)
    _check_hazards(model, out)
    _check_assets(model, out)
    _check_links(model, out)
    _check_protections(model, out)
    _check_profiles(model, out)
    _check_mappings(model, out)
    _check_edge_scores(model, out)
    _lint_reachability(model, out)
    return ValidationReport(tuple(out))


def _check_duplicates(items, label: str, out: list[Finding], key=lambda x: x.id):
    seen: set[str] = set()
    for item in items:
        k = key(item)
        if k in seen:
            out.append(_error("E-DUP-ID", f"duplicate {label} id {k!r}", k))
        seen.add(k)


def _check_losses(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.losses, "loss", out)
    for loss in model.losses:
        if not _LOSS_ID.match(loss.id):
            out.append(_error(
                "E-BAD-ID",
                f"loss id {loss.id!r} does not match L<positive int>",
                loss.id,
            ))
        # weights are always materialized by Model construction
        if loss.weight is None or not 1 <= loss.weight <= 100:
            out.append(_error(
                "E-BAD-WEIGHT",
                f"loss {loss.id} weight {loss.weight!r} outside 1..100",
                loss.id,
            ))


def _check_hazards(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.hazards, "hazard", out)
    known = model.hazards_by_id
    for hazard in model.hazards:
        if not _HAZARD_ID.match(hazard.id):
            out.append(_error(
                "E-BAD-ID",
                f"hazard id {hazard.id!r} does not match H<int>(.<int>)*",
                hazard.id,
            ))
            continue
        parent = hazard_parent(hazard.id)
        if parent is not None and parent not in known:
            out.append(_error(
                "E-MISSING-PARENT",
                f"hazard {hazard.id} has no parent {parent!r} in the model",
                hazard.id,
            ))
        for ref in hazard.associated:
            if ref not in model.losses_by_id and ref not in known:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"hazard {hazard.id} references unknown id {ref!r}",
                    hazard.id,
                ))
        if not hazard.associated:
            out.append(_warning(
                "W-EMPTY-ASSOCIATED",
                f"hazard {hazard.id} is associated with no losses or hazards",
                hazard.id,
            ))
    out.extend(_hazard_cycles(model))


def _hazard_cycles(model: Model) -> list[Finding]:
    # Colors: 0 unvisited, 1 on stack, 2 done.  Iterative DFS over the
    # hazard->hazard reference graph; each cycle reported once, at the
    # hazard where it closes.
    known = model.hazards_by_id
    color: dict[str, int] = {h.id: 0 for h in model.hazards}
    findings: list[Finding] = []
    for root in known:
        if color[root]:
            continue
        stack: list[tuple[str, Iterator[str]]] = [(root, iter(known[root].associated))]
        color[root] = 1
        while stack:
            node, refs = stack[-1]
            advanced = False
            for ref in refs:
                if ref not in known:
                    continue
                if color[ref] == 1:
                    findings.append(_error(
                        "E-HAZARD-CYCLE",
                        f"hazard reference cycle through {ref}",
                        ref,
                    ))
                elif color[ref] == 0:
                    color[ref] = 1
                    stack.append((ref, iter(known[ref].associated)))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return findings


def _check_assets(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.assets, "asset", out)
    for asset in model.assets:
        if not asset.id:
            out.append(_error("E-BAD-ID", "asset with empty id", asset.id))
        if asset.layer not in LAYERS:
            out.append(_error(
                "E-BAD-LAYER",
                f"asset {asset.id} layer {asset.layer!r} not one of {LAYERS}",
                asset.id,
            ))


def _check_links(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.links, "link", out)
    for link in model.links:
        if not link.id:
            out.append(_error("E-BAD-ID", "link with empty id", link.id))
        elif link.id.startswith(RESERVED_LINK_PREFIX):
            out.append(_error(
                "E-RESERVED-ID",
                f"link id {link.id!r} uses the reserved prefix "
                f"{RESERVED_LINK_PREFIX!r}",
                link.id,
            ))
        for end in (link.a, link.b):
            if end not in model.assets_by_id:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"link {link.id} endpoint {end!r} is not an asset",
                    link.id,
                ))
        if link.a == link.b:
            out.append(_error(
                "E-SELF-LINK",
                f"link {link.id} connects asset {link.a!r} to itself",
                link.id,
            ))
        if link.direction not in LINK_DIRECTIONS:
            out.append(_error(
                "E-BAD-DIRECTION",
                f"link {link.id} direction {link.direction!r} "
                f"not one of {LINK_DIRECTIONS}",
                link.id,
            ))


def _check_protections(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.protections, "protection", out)
    for protection in model.protections:
        if not protection.guards:
            out.append(_error(
                "E-EMPTY-GUARDS",
                f"protection {protection.id} guards nothing",
                protection.id,
            ))
        seen: set[tuple[str, str | None]] = set()
        for guard in protection.guards:
            pair = (guard.asset, guard.via)
            if pair in seen:
                out.append(_error(
                    "E-DUP-GUARD",
                    f"protection {protection.id} repeats guard {pair}",
                    protection.id,
                ))
            seen.add(pair)
            if guard.asset not in model.assets_by_id:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"protection {protection.id} guards unknown asset "
                    f"{guard.asset!r}",
                    protection.id,
                ))
            if guard.via is not None and guard.via not in model.assets_by_id:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"protection {protection.id} guard via unknown asset "
                    f"{guard.via!r}",
                    protection.id,
                ))


def _check_profiles(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.profiles, "profile", out)
    for profile in model.profiles:
        if profile.tier < 0:
            out.append(_error(
                "E-BAD-TIER",
                f"profile {profile.id} tier {profile.tier} is negative",
                profile.id,
            ))
        if not profile.entry_assets:
            out.append(_error(
                "E-EMPTY-ENTRY",
                f"profile {profile.id} has no entry assets",
                profile.id,
            ))
        for entry in profile.entry_assets:
            if entry not in model.assets_by_id:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"profile {profile.id} entry {entry!r} is not an asset",
                    profile.id,
                ))


def _check_mappings(model: Model, out: list[Finding]) -> None:
    _check_duplicates(model.mappings, "mapping", out, key=lambda m: m.hazard)
    mapped = {m.hazard for m in model.mappings}
    for mapping in model.mappings:
        if mapping.hazard not in model.hazards_by_id:
            out.append(_error(
                "E-DANGLING-REF",
                f"mapping references unknown hazard {mapping.hazard!r}",
                mapping.hazard,
            ))
        if not mapping.targets:
            out.append(_error(
                "E-EMPTY-TARGETS",
                f"mapping for {mapping.hazard} has no target assets",
                mapping.hazard,
            ))
        for target in mapping.targets:
            if target not in model.assets_by_id:
                out.append(_error(
                    "E-DANGLING-REF",
                    f"mapping for {mapping.hazard} targets unknown asset "
                    f"{target!r}",
                    mapping.hazard,
                ))
    for hazard in model.hazards:
        if hazard.id not in mapped:
            out.append(_warning(
                "W-NO-MAPPING",
                f"hazard {hazard.id} has no critical-asset mapping",
                hazard.id,
            ))


def _check_edge_scores(model: Model, out: list[Finding]) -> None:
    seen: set[tuple[str, str]] = set()
    for score in model.edge_scores:
        key = (score.link, score.direction)
        if key in seen:
            out.append(_error(
                "E-DUP-SCORE",
                f"duplicate edge score for {key}",
                score.link,
            ))
        seen.add(key)
        if score.link not in model.links_by_id:
            out.append(_error(
                "E-DANGLING-REF",
                f"edge score references unknown link {score.link!r}",
                score.link,
            ))
        if score.direction not in SCORE_DIRECTIONS:
            out.append(_error(
                "E-BAD-DIRECTION",
                f"edge score for {score.link} direction {score.direction!r} "
                f"not one of {SCORE_DIRECTIONS}",
                score.link,
            ))
        if not 0 < score.likelihood <= 1:
            out.append(_error(
                "E-BAD-LIKELIHOOD",
                f"edge score for {score.link} likelihood {score.likelihood} "
                f"outside (0, 1]",
                score.link,
            ))


def _lint_reachability(model: Model, out: list[Finding]) -> None:
    # Advisory: assets no attacker profile can ever reach.
    if not model.profiles:
        return
    arcs: dict[str, list[str]] = {a.id: [] for a in model.assets}
    for link in model.links:
        if link.a in arcs and link.b in arcs:
            arcs[link.a].append(link.b)
            if link.direction == "bidirectional":
                arcs[link.b].append(link.a)
    reached = {e for e in model.entry_union() if e in arcs}
    queue = deque(reached)
    while queue:
        for nxt in arcs[queue.popleft()]:
            if nxt not in reached:
                reached.add(nxt)
                queue.append(nxt)
    for asset in model.assets:
        if asset.id not in reached:
            out.append(_warning(
                "W-UNREACHABLE-ASSET",
                f"asset {asset.id} is unreachable from every profile's "
                f"entry assets",
                asset.id,
            ))


# ---------------------------------------------------------------------------
# Loss closure and hazard hierarchy
# ---------------------------------------------------------------------------


def resolve_losses(model: Model, hazard_id: str) -> frozenset[str]:
    """Transitive closure of a hazard's associated references down to
    Loss ids.

    Follows hazard->hazard references depth-first; cycles (invalid but
    tolerated here) are simply not re-entered.  Raises UnknownIdError
    for an unknown hazard id.
    """
    if hazard_id not in model.hazards_by_id:
        raise UnknownIdError("hazard", hazard_id)
    losses: set[str] = set()
    seen: set[str] = set()
    stack = [hazard_id]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        for ref in model.hazards_by_id[current].associated:
            if ref in model.losses_by_id:
                losses.add(ref)
            elif ref in model.hazards_by_id:
                stack.append(ref)
    return frozenset(losses)


@dataclass(frozen=True)
class HazardNode:
    id: str
    children: tuple[HazardNode, ...] = ()

    def walk(self) -> Iterator[HazardNode]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class HazardTree:
    roots: tuple[HazardNode, ...] = ()

    def walk(self) -> Iterator[HazardNode]:
        for root in self.roots:
            yield from root.walk()


def hazard_tree(model: Model) -> HazardTree:
    """Arrange hazards into their dotted-id hierarchy.

    Children are sorted by numeric segments (H1.2 before H1.10); a
    hazard whose parent id is missing from the model is treated as a
    root so that the tree is total even on models validate would flag.
    """
    children: dict[str | None, list[str]] = {}
    known = model.hazards_by_id
    for hazard in model.hazards:
        parent = hazard_parent(hazard.id)
        if parent is not None and parent not in known:
            parent = None
        children.setdefault(parent, []).append(hazard.id)

    def build(hazard_id: str) -> HazardNode:
        kids = sorted(children.get(hazard_id, ()), key=natural_key)
        return HazardNode(hazard_id, tuple(build(k) for k in kids))

    roots = sorted(children.get(None, ()), key=natural_key)
    return HazardTree(tuple(build(r) for r in roots))
