"""Small builders shared across tests."""

from __future__ import annotations

from posturekit import (
    Asset,
    AttackChain,
    AttackerProfile,
    CriticalAssetMapping,
    EdgeScore,
    GuardSpec,
    Hazard,
    Hop,
    Link,
    Loss,
    Model,
    Protection,
)


def make_model(
    assets=("a", "b", "c"),
    links=(),
    entries=("a",),
    targets=("c",),
    hazard="H1",
    protections=(),
    edge_scores=(),
    profile_id="p0",
    extra_profiles=(),
):
    """Build a minimal valid model.

    links: (id, a, b) or (id, a, b, direction) tuples.
    protections: (id, asset) or (id, asset, via) tuples; one guard each.
    edge_scores: (link, direction, likelihood) tuples.
    """
    link_objs = []
    for spec in links:
        if len(spec) == 3:
            link_id, a, b = spec
            direction = "bidirectional"
        else:
            link_id, a, b, direction = spec
        link_objs.append(Link(link_id, a, b, direction=direction))
    protection_objs = []
    for spec in protections:
        if len(spec) == 2:
            pid, asset = spec
            via = None
        else:
            pid, asset, via = spec
        protection_objs.append(Protection(pid, guards=(GuardSpec(asset, via),)))
    profiles = [AttackerProfile(profile_id, tier=1, entry_assets=tuple(entries))]
    for extra_id, extra_entries in extra_profiles:
        profiles.append(
            AttackerProfile(extra_id, tier=1, entry_assets=tuple(extra_entries))
        )
    return Model(
        losses=(Loss("L1", "generic loss"),),
        hazards=(Hazard(hazard, "generic hazard", ("L1",)),),
        assets=tuple(Asset(a) for a in assets),
        links=tuple(link_objs),
        protections=tuple(protection_objs),
        profiles=tuple(profiles),
        mappings=(CriticalAssetMapping(hazard, tuple(targets)),),
        edge_scores=tuple(
            EdgeScore(link, direction, likelihood)
            for link, direction, likelihood in edge_scores
        ),
    )


def make_chain(hazard, assets_seq, protections_per_hop=None, links=None,
               score=1.0):
    """Build an AttackChain along assets_seq, inventing link ids."""
    assets_seq = tuple(assets_seq)
    hop_count = len(assets_seq) - 1
    if protections_per_hop is None:
        protections_per_hop = [()] * hop_count
    if links is None:
        links = [f"l{i}" for i in range(hop_count)]
    hops = tuple(
        Hop(assets_seq[i], assets_seq[i + 1], links[i],
            tuple(protections_per_hop[i]))
        for i in range(hop_count)
    )
    return AttackChain(hazard, assets_seq[0], assets_seq[-1], hops, score)


def chain_key_counter(chains):
    """Multiset of chain identities for order-insensitive comparison."""
    from collections import Counter

    return Counter(
        (c.entry, c.target, tuple((h.src, h.dst, h.link) for h in c.hops))
        for c in chains
    )
