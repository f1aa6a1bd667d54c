from __future__ import annotations

import pytest

from posturekit import (
    CLASS_RANK,
    COVERAGE_CLASSES,
    EdgeScore,
    Scenario,
    ZeroDayLink,
    analyze_model,
    apply_scores,
    attach_protections,
    classify_chain,
    enumerate_chains,
    coverage,
    hazard_chains,
    hazard_weight,
    rank_protections,
    score_chains,
    what_if,
)

from helpers import make_chain, make_model


# ---------------------------------------------------------------------------
# Coverage classification
# ---------------------------------------------------------------------------


def test_class_boundaries_at_default_threshold():
    zero_hop = make_chain("H1", ("a",))
    bare = make_chain("H1", ("a", "b"))
    thin = make_chain("H1", ("a", "b"), protections_per_hop=(("p1",),))
    solid = make_chain("H1", ("a", "b"),
                       protections_per_hop=(("p1", "p2"),))
    assert classify_chain(zero_hop) == "unpreventable"
    assert classify_chain(bare) == "unprotected"
    assert classify_chain(thin) == "thin"
    assert classify_chain(solid) == "defended"


def test_threshold_is_per_chain_total_not_per_hop():
    spread = make_chain("H1", ("a", "b", "c"),
                        protections_per_hop=(("p1",), ("p2",)))
    assert spread.protection_count == 2
    assert classify_chain(spread) == "defended"
    assert classify_chain(spread, thin_threshold=3) == "thin"


def test_custom_threshold_moves_the_boundary():
    thin = make_chain("H1", ("a", "b"), protections_per_hop=(("p1",),))
    assert classify_chain(thin, thin_threshold=1) == "defended"


def test_coverage_summary_always_has_all_classes():
    report = coverage([])
    assert report.summary == {name: 0 for name in COVERAGE_CLASSES}
    assert report.entries == ()
    assert report.detection_required == ()


def test_coverage_report_contents(triangle):
    chains = hazard_chains(triangle, "H3", "researcher")
    report = coverage(chains)
    assert [e.coverage_class for e in report.entries] == ["thin", "defended"]
    assert report.summary == {
        "unpreventable": 0, "unprotected": 0, "thin": 1, "defended": 1,
    }
    assert report.detection_required == ()
    assert report.class_of(chains[0]) == "thin"


def test_detection_required_collects_the_hopeless():
    chains = [
        make_chain("H1", ("a",)),
        make_chain("H1", ("a", "b")),
        make_chain("H1", ("a", "c"), protections_per_hop=(("p1",),)),
    ]
    report = coverage(chains)
    assert [c.assets for c in report.detection_required] == [
        ("a",), ("a", "b"),
    ]
    assert CLASS_RANK["unpreventable"] == CLASS_RANK["unprotected"] == 0


# ---------------------------------------------------------------------------
# hazard_weight
# ---------------------------------------------------------------------------


def test_hazard_weight_is_heaviest_resolved_loss(sphere):
    assert hazard_weight(sphere, "H3") == 100      # closure holds L1
    assert hazard_weight(sphere, "H5") == 99       # closure holds only L2
    assert hazard_weight(sphere, "H2.1") == 0      # empty closure


# ---------------------------------------------------------------------------
# rank_protections
# ---------------------------------------------------------------------------


def test_ranking_on_the_database_hazard(triangle):
    chains = hazard_chains(triangle, "H3", "researcher")
    ranking = rank_protections(chains, triangle)
    assert [(e.protection, e.chains_broken) for e in ranking.entries] == [
        ("db-auth", 2), ("db-encryption", 1), ("ssh-infrapod", 1),
    ]
    assert ranking.greedy_cut == ("db-auth",)
    assert ranking.uncut_chains == ()


def test_ranking_over_all_routes_to_ops(sphere):
    chains = hazard_chains(sphere, "H1.3")
    ranking = rank_protections(chains, sphere)
    top = ranking.entries[0]
    assert top.protection == "ops-ssh-linux"
    assert top.chains_broken == 5
    assert ranking.greedy_cut == ("ops-ssh-linux",)


def test_uncut_chains_are_the_unbreakable_ones():
    model = make_model(
        assets=("a", "b", "t"),
        links=(("l1", "a", "t"), ("l2", "a", "b"), ("l3", "b", "t")),
        entries=("a",),
        targets=("t",),
        protections=(("guard-t-via-b", "t", "b"),),
    )
    chains = hazard_chains(model, "H1", "p0")
    ranking = rank_protections(chains, model)
    assert [c.assets for c in ranking.uncut_chains] == [("a", "t")]
    assert ranking.greedy_cut == ("guard-t-via-b",)


def test_greedy_tie_breaks_to_lower_id():
    chains = [
        make_chain("H1", ("a", "b"), protections_per_hop=(("p-z", "p-a"),)),
    ]
    model = make_model(
        assets=("a", "b"),
        links=(("l1", "a", "b"),),
        targets=("b",),
        protections=(("p-z", "b"), ("p-a", "b")),
    )
    ranking = rank_protections(chains, model)
    assert ranking.greedy_cut == ("p-a",)


def test_weighted_score_sums_hazard_weights(sphere):
    chains = hazard_chains(sphere, "H1.3")
    ranking = rank_protections(chains, sphere)
    by_id = {e.protection: e for e in ranking.entries}
    assert by_id["ops-ssh-linux"].weighted_score == 5 * 100
    assert by_id["infrapod-fw-vpn"].weighted_score == 100


# ---------------------------------------------------------------------------
# Likelihood scoring
# ---------------------------------------------------------------------------


def test_score_is_product_of_hop_likelihoods():
    chains = [make_chain("H1", ("a", "b", "c"))]
    scores = (EdgeScore("l0", "a-to-b", 0.5), EdgeScore("l1", "a-to-b", 0.25))
    [scored] = score_chains(chains, scores)
    assert scored.score == pytest.approx(0.125)


def test_unscored_hops_default_to_one():
    chains = [make_chain("H1", ("a", "b", "c"))]
    [scored] = score_chains(chains, (EdgeScore("l0", "a-to-b", 0.5),))
    assert scored.score == pytest.approx(0.5)
    [unscored] = score_chains(chains, ())
    assert unscored.score == 1.0


def test_zero_hop_chain_scores_one():
    [scored] = score_chains([make_chain("H1", ("a",))],
                            (EdgeScore("l0", "a-to-b", 0.1),))
    assert scored.score == 1.0


def test_overrides_shadow_base_scores():
    chains = [make_chain("H1", ("a", "b"))]
    base = (EdgeScore("l0", "a-to-b", 0.9),)
    override = (EdgeScore("l0", "a-to-b", 0.1),)
    [scored] = score_chains(chains, base, override)
    assert scored.score == pytest.approx(0.1)


def test_direction_resolves_against_link_orientation():
    model = make_model(
        assets=("a", "b"),
        links=(("l0", "a", "b"),),  # bidirectional
        entries=("b",),
        targets=("a",),
        edge_scores=(("l0", "a-to-b", 0.9), ("l0", "b-to-a", 0.2)),
    )
    backward = [make_chain("H1", ("b", "a"))]  # traverses b -> a
    [with_model] = score_chains(backward, model.edge_scores, model=model)
    assert with_model.score == pytest.approx(0.2)
    # without the model the hop's src is assumed to be the a side
    [without] = score_chains(backward, model.edge_scores)
    assert without.score == pytest.approx(0.9)


def test_score_chains_sorts_descending_and_keeps_input_intact():
    chains = [
        make_chain("H1", ("a", "b"), links=("weak",)),
        make_chain("H1", ("a", "c"), links=("strong",)),
    ]
    scores = (
        EdgeScore("weak", "a-to-b", 0.2),
        EdgeScore("strong", "a-to-b", 0.8),
    )
    ranked = score_chains(chains, scores)
    assert [c.links[0] for c in ranked] == ["strong", "weak"]
    assert [c.score for c in chains] == [1.0, 1.0]  # originals untouched


def test_apply_scores_preserves_enumeration_order():
    model = make_model(
        assets=("a", "b", "t"),
        links=(("l1", "a", "t"), ("l2", "a", "b"), ("l3", "b", "t")),
        entries=("a",),
        targets=("t",),
        edge_scores=(("l1", "a-to-b", 0.1),),
    )
    enumerated = [
        attach_protections(model, c)
        for c in enumerate_chains(model, "H1", "p0")
    ]
    scored = apply_scores(enumerated, model)
    assert [c.assets for c in scored] == [("a", "t"), ("a", "b", "t")]
    assert [c.score for c in scored] == [pytest.approx(0.1), 1.0]
    # hazard_chains performs the same steps end to end
    assert hazard_chains(model, "H1", "p0") == scored


def test_scenario_overrides_reach_zero_day_hops(triangle):
    scenario = Scenario(
        zero_day_links=(ZeroDayLink("nodes", "infrapod-db"),),
        score_overrides=(EdgeScore("zero-day:0", "a-to-b", 0.3),),
    )
    chains = hazard_chains(triangle, "H3", "researcher", scenario)
    zero_day = [c for c in chains if any(h.is_zero_day for h in c.hops)]
    assert zero_day and all(c.score == pytest.approx(0.3) for c in zero_day)


# ---------------------------------------------------------------------------
# analyze_model
# ---------------------------------------------------------------------------


def test_analyze_covers_every_mapped_hazard(sphere):
    results = analyze_model(sphere)
    assert list(results.chains_by_hazard) == ["H1.3", "H3", "H5"]
    assert [len(v) for v in results.chains_by_hazard.values()] == [5, 3, 1]
    assert results.coverage.summary == {
        "unpreventable": 1, "unprotected": 0, "thin": 2, "defended": 6,
    }
    assert results.ranking.greedy_cut == ("ops-ssh-linux", "db-auth")
    assert [c.assets for c in results.ranking.uncut_chains] == [("nodes",)]
    assert len(results.merged.nodes) == 8
    assert results.merged.hazard == "merged"


def test_analyze_with_profile_narrows_entries(sphere):
    results = analyze_model(sphere, profile="outsider")
    h3 = results.chains_by_hazard["H3"]
    assert [c.entry for c in h3] == ["internet"]
    # H5 targets nodes, which the outsider cannot reach at all
    assert results.chains_by_hazard["H5"] == ()


# ---------------------------------------------------------------------------
# what_if
# ---------------------------------------------------------------------------


def test_empty_scenario_changes_nothing(triangle):
    delta = what_if(triangle, "H3", Scenario(), profile="researcher")
    assert delta.baseline == delta.scenario_result
    assert delta.new_chains == ()
    assert delta.removed_protection_instances == ()
    assert delta.class_changes == ()


def test_disabling_the_shared_guard(triangle):
    scenario = Scenario(profile="researcher",
                        disabled_protections=("db-auth",))
    delta = what_if(triangle, "H3", scenario)
    assert delta.profile == "researcher"
    assert delta.new_chains == ()
    removed = {
        (r.entry, r.target, r.hop_index, r.protection)
        for r in delta.removed_protection_instances
    }
    assert removed == {
        ("nodes", "infrapod-db", 0, "db-auth"),
        ("nodes", "infrapod-db", 1, "db-auth"),
    }
    assert [
        (c.chain.assets, c.baseline_class, c.scenario_class)
        for c in delta.class_changes
    ] == [(("nodes", "infrapod-db"), "thin", "unprotected")]
    assert delta.scenario_result.summary == {
        "unpreventable": 0, "unprotected": 1, "thin": 0, "defended": 1,
    }


def test_compromise_opens_new_chains(triangle):
    scenario = Scenario(profile="researcher",
                        compromised=("infrapod-server",))
    delta = what_if(triangle, "H3", scenario)
    # the straight hop, plus the detour back through the nodes
    assert [c.assets for c in delta.new_chains] == [
        ("infrapod-server", "infrapod-db"),
        ("infrapod-server", "nodes", "infrapod-db"),
    ]
    direct, detour = delta.new_chains
    assert direct.hops[0].protections == ("db-auth", "db-encryption")
    assert [h.protections for h in detour.hops] == [(), ("db-auth",)]
    assert delta.removed_protection_instances == ()
    assert delta.class_changes == ()


def test_zero_day_route_demands_detection(sphere):
    scenario = Scenario(zero_day_links=(ZeroDayLink("nodes", "ops"),))
    delta = what_if(sphere, "H1.3", scenario)
    new_zero_day = [c for c in delta.new_chains
                    if any(h.is_zero_day for h in c.hops)]
    assert new_zero_day
    direct = [c for c in new_zero_day if c.assets == ("nodes", "ops")]
    assert len(direct) == 1
    assert direct[0].protection_count == 0
    keys = {c.key for c in delta.scenario_result.detection_required}
    assert direct[0].key in keys


def test_explicit_profile_wins_over_scenario_profile(triangle):
    scenario = Scenario(profile="researcher")
    delta = what_if(triangle, "H3", scenario, profile="researcher")
    assert delta.profile == "researcher"


def test_scenario_chains_superset_of_baseline(sphere):
    scenario = Scenario(
        compromised=("infrapod-server",),
        zero_day_links=(ZeroDayLink("internet", "nodes"),),
    )
    delta = what_if(sphere, "H3", scenario)
    base_keys = {e.chain.key for e in delta.baseline.entries}
    scen_keys = {e.chain.key for e in delta.scenario_result.entries}
    assert base_keys <= scen_keys
    assert len(delta.new_chains) == len(scen_keys - base_keys)
