import type {
  ScenarioPayload,
  ViewMode,
  WhatIfDeltaDoc,
  ZeroDayDraft,
  ZeroDayDirection,
} from "./types.js";

/** Ids present in the fetched model; drafts may reference nothing else. */
export interface KnownIds {
  assets: ReadonlySet<string>;
  protections: ReadonlySet<string>;
}

/** Immutable copy of a draft, used to restore state after a failed apply. */
export interface DraftSnapshot {
  compromised: string[];
  disabled: string[];
  zeroDays: ZeroDayDraft[];
}

const DIRECTIONS: readonly ZeroDayDirection[] = ["a-to-b", "bidirectional"];

/**
 * Holds everything the explorer derives its panels from: the current
 * selection, the scenario draft, and the last server delta. The store never
 * computes analysis results; it only accumulates user toggles and validates
 * them against ids the model actually contains.
 */
export class ExplorerStore {
  hazard: string;
  profile: string | null;
  viewMode: ViewMode = "graph";
  lastDelta: WhatIfDeltaDoc | null = null;

  private compromised = new Set<string>();
  private disabled = new Set<string>();
  private zeroDays: ZeroDayDraft[] = [];

  constructor(
    private readonly known: KnownIds,
    hazard: string,
    profile: string | null = null,
  ) {
    this.hazard = hazard;
    this.profile = profile;
  }

  get compromisedAssets(): ReadonlySet<string> {
    return this.compromised;
  }

  get disabledProtections(): ReadonlySet<string> {
    return this.disabled;
  }

  get zeroDayLinks(): readonly ZeroDayDraft[] {
    return this.zeroDays;
  }

  /** Flip an asset in or out of the compromised set; returns the new state. */
  toggleCompromised(assetId: string): boolean {
    if (!this.known.assets.has(assetId)) {
      throw new Error(`unknown asset id: ${assetId}`);
    }
    if (this.compromised.has(assetId)) {
      this.compromised.delete(assetId);
      return false;
    }
    this.compromised.add(assetId);
    return true;
  }

  /** Flip a protection in or out of the disabled set. */
  toggleDisabled(protectionId: string): boolean {
    if (!this.known.protections.has(protectionId)) {
      throw new Error(`unknown protection id: ${protectionId}`);
    }
    if (this.disabled.has(protectionId)) {
      this.disabled.delete(protectionId);
      return false;
    }
    this.disabled.add(protectionId);
    return true;
  }

  addZeroDay(a: string, b: string, direction: ZeroDayDirection): void {
    for (const end of [a, b]) {
      if (!this.known.assets.has(end)) {
        throw new Error(`unknown asset id: ${end}`);
      }
    }
    if (a === b) {
      throw new Error("zero-day link endpoints must differ");
    }
    if (!DIRECTIONS.includes(direction)) {
      throw new Error(`unknown direction: ${direction}`);
    }
    this.zeroDays.push({ a, b, direction });
  }

  removeZeroDay(index: number): void {
    if (index < 0 || index >= this.zeroDays.length) {
      throw new Error(`no zero-day draft at index ${index}`);
    }
    this.zeroDays.splice(index, 1);
  }

  isDraftEmpty(): boolean {
    return (
      this.compromised.size === 0 &&
      this.disabled.size === 0 &&
      this.zeroDays.length === 0
    );
  }

  clearDraft(): void {
    this.compromised.clear();
    this.disabled.clear();
    this.zeroDays = [];
  }

  /**
   * Scenario object for the what-if request body. Ids are sorted so the
   * payload is identical regardless of toggle order; empty sections are
   * omitted entirely.
   */
  scenarioPayload(): ScenarioPayload {
    const payload: ScenarioPayload = {};
    if (this.compromised.size > 0) {
      payload.compromised = Array.from(this.compromised).sort();
    }
    if (this.disabled.size > 0) {
      payload.disabled_protections = Array.from(this.disabled).sort();
    }
    if (this.zeroDays.length > 0) {
      payload.zero_day_links = this.zeroDays.map((z) => ({ ...z }));
    }
    return payload;
  }

  snapshotDraft(): DraftSnapshot {
    return {
      compromised: Array.from(this.compromised),
      disabled: Array.from(this.disabled),
      zeroDays: this.zeroDays.map((z) => ({ ...z })),
    };
  }

  restoreDraft(snapshot: DraftSnapshot): void {
    this.compromised = new Set(snapshot.compromised);
    this.disabled = new Set(snapshot.disabled);
    this.zeroDays = snapshot.zeroDays.map((z) => ({ ...z }));
  }
}
