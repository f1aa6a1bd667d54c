"""Coverage classification, protection ranking, likelihood scoring,
and what-if scenario deltas.

Coverage classes, per chain:

* ``unpreventable``: zero hops (the attacker starts on the target);
  no protection can sit on a hop that does not exist, so detection is
  the only defense;
* ``unprotected``: hops exist but carry no protection at all;
* ``thin``: fewer total protections than the thin threshold;
* ``defended``: at or above the threshold.

Everything here is pure: a what-if scenario never mutates the model,
it is read alongside it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graph import (
    AttackChain,
    AttackGraph,
    DEFAULT_MAX_DEPTH,
    attach_protections,
    build_graph,
    enumerate_chains,
    merge_graphs,
)
from .model import (
    EdgeScore,
    Model,
    Scenario,
    natural_key,
    resolve_losses,
)

COVERAGE_CLASSES = ("unpreventable", "unprotected", "thin", "defended")

#: Higher is better; unpreventable and unprotected are equally bad but
#: for different reasons (no possible hop guard vs no configured one).
CLASS_RANK = {
    "unpreventable": 0,
    "unprotected": 0,
    "thin": 1,
    "defended": 2,
}

DEFAULT_THIN_THRESHOLD = 2


# ---------------------------------------------------------------------------
# Coverage
# ---------------------------------------------------------------------------


def classify_chain(chain: AttackChain,
                   thin_threshold: int = DEFAULT_THIN_THRESHOLD) -> str:
    if chain.is_zero_hop:
        return "unpreventable"
    count = chain.protection_count
    if count == 0:
        return "unprotected"
    if count < thin_threshold:
        return "thin"
    return "defended"


@dataclass(frozen=True)
class ChainCoverage:
    chain: AttackChain
    protection_count: int
    coverage_class: str


@dataclass(frozen=True)
class CoverageReport:
    """Per-chain classifications plus a class histogram.

    ``detection_required`` lists the chains no protection can or does
    break (unpreventable plus unprotected): prevention has no grip on
    them, so monitoring must pick up the slack.
    """

    entries: tuple[ChainCoverage, ...] = ()
    summary: dict[str, int] | None = None
    detection_required: tuple[AttackChain, ...] = ()
    thin_threshold: int = DEFAULT_THIN_THRESHOLD

    def class_of(self, chain: AttackChain) -> str | None:
        for entry in self.entries:
            if entry.chain.key == chain.key:
                return entry.coverage_class
        return None


def coverage(chains: list[AttackChain],
             thin_threshold: int = DEFAULT_THIN_THRESHOLD) -> CoverageReport:
    """Classify every chain; input order is preserved in the entries."""
    entries = tuple(
        ChainCoverage(c, c.protection_count, classify_chain(c, thin_threshold))
        for c in chains
    )
    summary = {name: 0 for name in COVERAGE_CLASSES}
    for entry in entries:
        summary[entry.coverage_class] += 1
    detection = tuple(
        e.chain for e in entries
        if e.coverage_class in ("unpreventable", "unprotected")
    )
    return CoverageReport(entries, summary, detection, thin_threshold)


# ---------------------------------------------------------------------------
# Protection ranking and greedy cut
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankEntry:
    protection: str
    chains_broken: int
    weighted_score: int


@dataclass(frozen=True)
class ProtectionRanking:
    """Protections ordered by how many chains they break (then by
    weighted hazard severity, then id); ``greedy_cut`` is a small set
    of protections that together break every breakable chain, and
    ``uncut_chains`` are the chains nothing breaks."""

    entries: tuple[RankEntry, ...] = ()
    greedy_cut: tuple[str, ...] = ()
    uncut_chains: tuple[AttackChain, ...] = ()


def hazard_weight(model: Model, hazard_id: str) -> int:
    """Severity of a hazard: the heaviest loss in its closure (0 when
    the closure is empty)."""
    weights = [
        model.losses_by_id[loss].weight or 0
        for loss in resolve_losses(model, hazard_id)
        if loss in model.losses_by_id
    ]
    return max(weights, default=0)


def rank_protections(chains: list[AttackChain], model: Model) -> ProtectionRanking:
    """Rank every model protection by leverage over the given chains.

    chains_broken counts chains with the protection on any hop;
    weighted_score sums those chains' hazard weights.  The greedy cut
    repeatedly takes the protection breaking the most still-unbroken
    chains (ties to the lower id) until only unbreakable chains remain.
    """
    weight_cache: dict[str, int] = {}

    def weight_of(hazard_id: str) -> int:
        if hazard_id not in weight_cache:
            try:
                weight_cache[hazard_id] = hazard_weight(model, hazard_id)
            except Exception:
                weight_cache[hazard_id] = 0
        return weight_cache[hazard_id]

    broken_by: dict[str, list[int]] = {p.id: [] for p in model.protections}
    for index, chain in enumerate(chains):
        hit = {pid for hop in chain.hops for pid in hop.protections}
        for pid in hit:
            if pid in broken_by:
                broken_by[pid].append(index)

    entries = tuple(sorted(
        (RankEntry(
            pid,
            len(indices),
            sum(weight_of(chains[i].hazard) for i in indices),
        ) for pid, indices in broken_by.items()),
        key=lambda e: (-e.chains_broken, -e.weighted_score,
                       natural_key(e.protection)),
    ))

    uncovered = {
        i for i, chain in enumerate(chains) if chain.protection_count > 0
    }
    cut: list[str] = []
    while uncovered:
        gains = {
            pid: len(uncovered.intersection(indices))
            for pid, indices in broken_by.items()
        }
        best_gain = max(gains.values(), default=0)
        if best_gain == 0:
            break
        chosen = min(
            (pid for pid, gain in gains.items() if gain == best_gain),
            key=natural_key,
        )
        cut.append(chosen)
        uncovered.difference_update(broken_by[chosen])

    uncut = tuple(c for c in chains if c.protection_count == 0)
    return ProtectionRanking(entries, tuple(cut), uncut)


# ---------------------------------------------------------------------------
# Likelihood scoring
# ---------------------------------------------------------------------------


def link_orientation(model: Model, scenario: Scenario | None = None) -> dict[str, str]:
    """Map link id -> the asset on its "a" side, for resolving which
    directed likelihood applies to a hop; includes scenario zero-days
    under their sentinel ids."""
    orientation = {link.id: link.a for link in model.links}
    if scenario is not None:
        for index, zero_day in enumerate(scenario.zero_day_links):
            orientation[f"zero-day:{index}"] = zero_day.a
    return orientation


def score_chains(
    chains: list[AttackChain],
    scores: list[EdgeScore] | tuple[EdgeScore, ...],
    overrides: list[EdgeScore] | tuple[EdgeScore, ...] | None = None,
    *,
    model: Model | None = None,
    scenario: Scenario | None = None,
) -> list[AttackChain]:
    """Fill chain scores and return a new list sorted by descending
    likelihood.

    A chain's score is the product of its hops' directed likelihoods;
    hops without a score default to 1.0, so a zero-hop chain scores
    exactly 1.0.  ``overrides`` shadow base scores per (link,
    direction).  Pass ``model`` (and ``scenario`` when zero-days are in
    play) so that hops over bidirectional links resolve to the right
    direction; without it every hop is read as traversing a-to-b.
    The input list is not modified.
    """
    base = {(s.link, s.direction): s.likelihood for s in scores}
    if overrides:
        base.update({(s.link, s.direction): s.likelihood for s in overrides})
    orientation = link_orientation(model, scenario) if model else {}

    def hop_likelihood(hop) -> float:
        a_side = orientation.get(hop.link, hop.src)
        direction = "a-to-b" if hop.src == a_side else "b-to-a"
        return base.get((hop.link, direction), 1.0)

    rescored = [
        replace(chain, score=_product(hop_likelihood(h) for h in chain.hops))
        for chain in chains
    ]
    rescored.sort(key=lambda c: (-c.score, len(c.hops), c.assets, c.links))
    return rescored


def _product(values) -> float:
    result = 1.0
    for value in values:
        result *= value
    return result


def apply_scores(
    chains: list[AttackChain],
    model: Model,
    scenario: Scenario | None = None,
) -> list[AttackChain]:
    """Fill scores like score_chains but preserve the input order
    (enumeration order matters for tables and deltas)."""
    overrides = scenario.score_overrides if scenario else ()
    by_key = {
        c.key: c
        for c in score_chains(
            chains, model.edge_scores, overrides,
            model=model, scenario=scenario,
        )
    }
    return [by_key[c.key] for c in chains]


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def hazard_chains(
    model: Model,
    hazard: str,
    profile: str | None = None,
    scenario: Scenario | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> list[AttackChain]:
    """Enumerate, attach protections, and score one hazard's chains,
    in enumeration order."""
    chains = enumerate_chains(model, hazard, profile, scenario, max_depth)
    chains = [attach_protections(model, c, scenario) for c in chains]
    return apply_scores(chains, model, scenario)


@dataclass(frozen=True)
class AnalysisResults:
    """Full-model analysis over every mapped hazard."""

    chains_by_hazard: dict[str, tuple[AttackChain, ...]]
    coverage: CoverageReport
    ranking: ProtectionRanking
    merged: AttackGraph


def analyze_model(
    model: Model,
    profile: str | None = None,
    scenario: Scenario | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    thin_threshold: int = DEFAULT_THIN_THRESHOLD,
) -> AnalysisResults:
    """Run the whole pipeline across all mapped hazards (in natural
    hazard order) and merge the per-hazard graphs."""
    chains_by_hazard: dict[str, tuple[AttackChain, ...]] = {}
    graphs = []
    everything: list[AttackChain] = []
    for mapping in model.mappings:
        chains = hazard_chains(model, mapping.hazard, profile, scenario,
                               max_depth)
        chains_by_hazard[mapping.hazard] = tuple(chains)
        graphs.append(build_graph(mapping.hazard, chains))
        everything.extend(chains)
    return AnalysisResults(
        chains_by_hazard=chains_by_hazard,
        coverage=coverage(everything, thin_threshold),
        ranking=rank_protections(everything, model),
        merged=merge_graphs(graphs),
    )


# ---------------------------------------------------------------------------
# What-if
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RemovedProtection:
    """One protection instance a scenario stripped from a hop of a
    chain that exists in both baseline and scenario."""

    entry: str
    target: str
    hop_index: int
    link: str
    protection: str


@dataclass(frozen=True)
class ClassChange:
    chain: AttackChain
    baseline_class: str
    scenario_class: str


@dataclass(frozen=True)
class WhatIfDelta:
    """Baseline vs scenario, computed from the same immutable model.

    Chains are matched across the two runs by (entry, target, hop
    route); under the traversal rules a scenario can only add chains,
    never remove them, so every baseline chain has a scenario match.
    """

    hazard: str
    profile: str | None
    baseline: CoverageReport
    scenario_result: CoverageReport
    new_chains: tuple[AttackChain, ...] = ()
    removed_protection_instances: tuple[RemovedProtection, ...] = ()
    class_changes: tuple[ClassChange, ...] = ()


def what_if(
    model: Model,
    hazard: str,
    scenario: Scenario,
    profile: str | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    thin_threshold: int = DEFAULT_THIN_THRESHOLD,
) -> WhatIfDelta:
    """Compare a hazard's baseline analysis against a scenario overlay.

    The explicit ``profile`` wins over the scenario's profile field;
    both runs use the same effective profile so the delta isolates the
    scenario's effect.  An empty scenario yields an identical pair.
    """
    effective = profile if profile is not None else scenario.profile
    base_chains = hazard_chains(model, hazard, effective, None, max_depth)
    scen_chains = hazard_chains(model, hazard, effective, scenario, max_depth)
    base_cov = coverage(base_chains, thin_threshold)
    scen_cov = coverage(scen_chains, thin_threshold)

    base_by_key = {c.key: c for c in base_chains}
    base_class = {
        e.chain.key: e.coverage_class for e in base_cov.entries
    }
    scen_class = {
        e.chain.key: e.coverage_class for e in scen_cov.entries
    }

    new_chains = tuple(c for c in scen_chains if c.key not in base_by_key)
    removed: list[RemovedProtection] = []
    changes: list[ClassChange] = []
    for chain in scen_chains:
        before = base_by_key.get(chain.key)
        if before is None:
            continue
        for index, (old_hop, new_hop) in enumerate(zip(before.hops, chain.hops)):
            for pid in old_hop.protections:
                if pid not in new_hop.protections:
                    removed.append(RemovedProtection(
                        chain.entry, chain.target, index, new_hop.link, pid
                    ))
        if base_class[chain.key] != scen_class[chain.key]:
            changes.append(ClassChange(
                chain, base_class[chain.key], scen_class[chain.key]
            ))

    return WhatIfDelta(
        hazard=hazard,
        profile=effective,
        baseline=base_cov,
        scenario_result=scen_cov,
        new_chains=new_chains,
        removed_protection_instances=tuple(removed),
        class_changes=tuple(changes),
    )
