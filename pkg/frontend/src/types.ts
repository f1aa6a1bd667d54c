/** Payload shapes served by the posturekit HTTP API (v1). */

export type CoverageClass =
  | "unpreventable"
  | "unprotected"
  | "thin"
  | "defended";

/** Fixed color scale for coverage classes, documented in the UI legend. */
export const CLASS_COLORS: Record<CoverageClass, string> = {
  unpreventable: "firebrick",
  unprotected: "red",
  thin: "orange",
  defended: "forestgreen",
};

/** Display order for legends, badges, and summary tables. */
export const CLASS_ORDER: readonly CoverageClass[] = [
  "defended",
  "thin",
  "unprotected",
  "unpreventable",
];

export interface HopDoc {
  from: string;
  to: string;
  link: string;
  protections: string[];
}

export interface ChainDoc {
  hazard: string;
  entry: string;
  target: string;
  assets: string[];
  hops: HopDoc[];
  protection_count: number;
  score: number;
}

export interface CoverageEntryDoc {
  chain: ChainDoc;
  protection_count: number;
  class: CoverageClass;
}

export interface CoverageDoc {
  thin_threshold: number;
  summary: Record<CoverageClass, number>;
  entries: CoverageEntryDoc[];
  detection_required: ChainDoc[];
}

export interface RemovedProtectionDoc {
  entry: string;
  target: string;
  hop_index: number;
  link: string;
  protection: string;
}

export interface ClassChangeDoc {
  chain: ChainDoc;
  baseline_class: CoverageClass;
  scenario_class: CoverageClass;
}

export interface WhatIfDeltaDoc {
  hazard: string;
  profile: string | null;
  baseline: CoverageDoc;
  scenario_result: CoverageDoc;
  new_chains: ChainDoc[];
  removed_protection_instances: RemovedProtectionDoc[];
  class_changes: ClassChangeDoc[];
}

export interface GraphNodeDoc {
  id: string;
  name?: string;
  layer?: string;
}

export interface GraphEdgeDoc {
  from: string;
  to: string;
  link: string;
  protections: string[];
  memberships: { hazard: string; chain: number }[];
  worst_class: CoverageClass | null;
}

export interface MergedGraphDoc {
  hazard: string;
  nodes: GraphNodeDoc[];
  edges: GraphEdgeDoc[];
}

export interface RankingEntryDoc {
  protection: string;
  chains_broken: number;
  weighted_score: number;
}

export interface RankingDoc {
  entries: RankingEntryDoc[];
  greedy_cut: string[];
  uncut_chains: ChainDoc[];
}

export interface ProfileDoc {
  id: string;
  name: string;
  tier: number;
  entry_assets: string[];
}

export interface ModelInfoDoc {
  schema_version: string;
  metadata: { name: string; version: string };
  counts: Record<string, number>;
  profiles: ProfileDoc[];
  mapped_hazards: string[];
  defaults: { max_depth: number; thin_threshold: number };
}

export interface AssetDoc {
  id: string;
  name: string;
  layer: string;
  attributes: Record<string, string>;
  tags: string[];
}

export interface ProtectionDoc {
  id: string;
  name: string;
  description: string;
  guards: { asset: string; via: string | null }[];
}

export interface HazardDoc {
  id: string;
  description: string;
  associated: string[];
  resolved_losses: string[];
  mapped: boolean;
}

/** Scenario overlay drafted in the UI; mirrors the what-if request schema. */

export type ZeroDayDirection = "a-to-b" | "bidirectional";

export interface ZeroDayDraft {
  a: string;
  b: string;
  direction: ZeroDayDirection;
}

export interface ScenarioPayload {
  compromised?: string[];
  disabled_protections?: string[];
  zero_day_links?: ZeroDayDraft[];
}

export interface WhatIfRequest {
  hazard: string;
  profile?: string;
  scenario: ScenarioPayload;
}

export type ViewMode = "graph" | "chains" | "ranking";
