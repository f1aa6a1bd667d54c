import { ServiceError } from "./api.js";
import type { ExplorerApi } from "./api.js";
import { el } from "./dom.js";
import { LAYOUT_SEED } from "./layout.js";
import { NameIndex } from "./names.js";
import { renderGraph } from "./render/graph.js";
import {
  renderChains,
  renderDelta,
  renderDraft,
  renderEdgeDetail,
  renderRanking,
} from "./render/panels.js";
import { ExplorerStore } from "./state.js";
import type { DraftSnapshot } from "./state.js";
import { WhatIfQueue } from "./queue.js";
import type {
  GraphEdgeDoc,
  HazardDoc,
  MergedGraphDoc,
  ModelInfoDoc,
  ViewMode,
  WhatIfDeltaDoc,
  WhatIfRequest,
  ZeroDayDirection,
} from "./types.js";

export interface ExplorerOptions {
  /** Hazard to open with; defaults to the first mapped hazard. */
  hazard?: string;
  /** Profile to open with; null means all profiles. Defaults to the
   * service's first profile. */
  profile?: string | null;
  /** Seed for the deterministic graph layout. */
  layoutSeed?: number;
}

interface LastGood {
  delta: WhatIfDeltaDoc;
  draft: DraftSnapshot;
}

const VIEW_MODES: readonly ViewMode[] = ["graph", "chains", "ranking"];
const PENDING_STATUS = "applying scenario…";

/**
 * Wires the service client, the scenario draft, and the render functions
 * into one page. All analysis results shown anywhere come from service
 * responses; the only client-side state is the user's draft and view
 * selection.
 */
export class ExplorerApp {
  private readonly seed: number;
  private readonly options: ExplorerOptions;

  private names!: NameIndex;
  private store!: ExplorerStore;
  private queue!: WhatIfQueue;
  private model!: ModelInfoDoc;
  private hazards!: HazardDoc[];

  private graph: MergedGraphDoc | null = null;
  private selectedEdge: GraphEdgeDoc | null = null;
  private lastGood: LastGood | null = null;
  private readonly requestDrafts = new WeakMap<WhatIfRequest, DraftSnapshot>();

  private hazardSelect!: HTMLSelectElement;
  private profileSelect!: HTMLSelectElement;
  private tabButtons!: Map<ViewMode, HTMLButtonElement>;
  private statusEl!: HTMLElement;
  private errorEl!: HTMLElement;
  private graphSection!: HTMLElement;
  private chainsSection!: HTMLElement;
  private rankingSection!: HTMLElement;
  private graphBody!: HTMLElement;
  private chainsBody!: HTMLElement;
  private rankingBody!: HTMLElement;
  private deltaBody!: HTMLElement;
  private edgeBody!: HTMLElement;
  private draftBody!: HTMLElement;
  private zeroDayA!: HTMLSelectElement;
  private zeroDayB!: HTMLSelectElement;
  private zeroDayDirection!: HTMLSelectElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ExplorerApi,
    options: ExplorerOptions = {},
  ) {
    this.options = options;
    this.seed = options.layoutSeed ?? LAYOUT_SEED;
  }

  /** Fetch the model catalog, build the page, and load the baseline. */
  async init(): Promise<void> {
    const [model, assets, protections, hazards] = await Promise.all([
      this.api.fetchModel(),
      this.api.fetchAssets(),
      this.api.fetchProtections(),
      this.api.fetchHazards(),
    ]);
    this.model = model;
    this.hazards = hazards;
    this.names = new NameIndex(assets, protections);

    const mapped = hazards.filter((hazard) => hazard.mapped);
    const hazard = this.options.hazard ?? mapped[0]?.id;
    if (hazard === undefined) {
      this.root.replaceChildren(
        el("div", { class: "render-error" }, [
          "the service reports no hazards with attack mappings to explore",
        ]),
      );
      return;
    }
    const profile =
      this.options.profile !== undefined
        ? this.options.profile
        : (model.profiles[0]?.id ?? null);

    this.store = new ExplorerStore(
      {
        assets: new Set(assets.map((asset) => asset.id)),
        protections: new Set(protections.map((protection) => protection.id)),
      },
      hazard,
      profile,
    );
    this.queue = new WhatIfQueue(
      (request) => this.api.postWhatIf(request),
      (request, delta) => this.handleDelta(request, delta),
      (request, error) => this.handleFailure(request, error),
    );
    this.buildSkeleton(assets.map((asset) => asset.id));
    await this.reload();
  }

  get viewMode(): ViewMode {
    return this.store.viewMode;
  }

  setViewMode(mode: ViewMode): void {
    this.store.viewMode = mode;
    this.applyViewMode();
  }

  /** Switch hazards: the draft is cleared and the baseline refetched. */
  async setHazard(hazardId: string): Promise<void> {
    if (hazardId === this.store.hazard) {
      return;
    }
    this.store.hazard = hazardId;
    this.markSelected(this.hazardSelect, hazardId);
    await this.resetAndReload();
  }

  /** Switch profiles (empty id means all). Clears the draft. */
  async setProfile(profileId: string | null): Promise<void> {
    const profile = profileId === "" ? null : profileId;
    if (profile === this.store.profile) {
      return;
    }
    this.store.profile = profile;
    this.markSelected(this.profileSelect, profile ?? "");
    await this.resetAndReload();
  }

  /** Toggle an asset in or out of the draft's compromised set. */
  toggleCompromised(assetId: string): void {
    this.store.toggleCompromised(assetId);
    this.renderDraftPanels();
    this.submitWhatIf();
  }

  /** Toggle a protection in or out of the draft's disabled set. */
  toggleProtection(protectionId: string): void {
    this.store.toggleDisabled(protectionId);
    this.renderDraftPanels();
    this.submitWhatIf();
  }

  /** Add a hypothetical zero-day link between two assets to the draft. */
  addZeroDay(a: string, b: string, direction: ZeroDayDirection): void {
    try {
      this.store.addZeroDay(a, b, direction);
    } catch (error) {
      this.showError(String(error instanceof Error ? error.message : error));
      return;
    }
    this.renderDraftPanels();
    this.submitWhatIf();
  }

  removeZeroDay(index: number): void {
    this.store.removeZeroDay(index);
    this.renderDraftPanels();
    this.submitWhatIf();
  }

  private async resetAndReload(): Promise<void> {
    this.store.clearDraft();
    this.selectedEdge = null;
    await this.reload();
  }

  /** Refetch profile-scoped views and re-establish the baseline delta. */
  private async reload(): Promise<void> {
    const profile = this.store.profile;
    const [graph, ranking] = await Promise.all([
      this.api.fetchMergedGraph(profile),
      this.api.fetchRanking(profile),
    ]);
    this.graph = graph;
    renderRanking(this.rankingBody, ranking, this.names);
    const delta = await this.api.postWhatIf(this.buildRequest());
    this.handleDelta(null, delta);
  }

  private buildRequest(): WhatIfRequest {
    const request: WhatIfRequest = {
      hazard: this.store.hazard,
      scenario: this.store.scenarioPayload(),
    };
    if (this.store.profile !== null) {
      request.profile = this.store.profile;
    }
    this.requestDrafts.set(request, this.store.snapshotDraft());
    return request;
  }

  private submitWhatIf(): void {
    this.setStatus(PENDING_STATUS);
    this.queue.submit(this.buildRequest());
  }

  /** Apply a what-if response: every result panel re-renders from it. */
  private handleDelta(
    request: WhatIfRequest | null,
    delta: WhatIfDeltaDoc,
  ): void {
    const draft =
      (request !== null ? this.requestDrafts.get(request) : undefined) ??
      this.store.snapshotDraft();
    this.lastGood = { delta, draft };
    this.store.lastDelta = delta;
    renderChains(this.chainsBody, delta.scenario_result, this.names);
    renderDelta(this.deltaBody, delta, this.names);
    this.renderDraftPanels();
    if (!this.queue.superseded) {
      this.setStatus("");
      this.clearError();
    }
  }

  /**
   * A what-if request failed: surface the error and, unless a newer request
   * is about to settle the state, revert the draft to the last draft whose
   * response was applied, so the page never shows a scenario the service
   * did not evaluate.
   */
  private handleFailure(_request: WhatIfRequest, error: unknown): void {
    const message =
      error instanceof ServiceError
        ? `${error.code}: ${error.message}`
        : String(error instanceof Error ? error.message : error);
    this.showError(`what-if request failed (${message}); scenario reverted`);
    if (this.queue.superseded) {
      return;
    }
    if (this.lastGood !== null) {
      this.store.restoreDraft(this.lastGood.draft);
      this.store.lastDelta = this.lastGood.delta;
      renderChains(this.chainsBody, this.lastGood.delta.scenario_result, this.names);
      renderDelta(this.deltaBody, this.lastGood.delta, this.names);
    }
    this.renderDraftPanels();
    this.setStatus("");
  }

  /** Panels that depend on the user's draft and selection, not on responses. */
  private renderDraftPanels(): void {
    if (this.graph !== null) {
      renderGraph(
        this.graphBody,
        this.graph,
        {
          compromised: this.store.compromisedAssets,
          selectedLink: this.selectedEdge?.link ?? null,
        },
        {
          onNodeClick: (assetId) => this.toggleCompromised(assetId),
          onEdgeClick: (edge) => this.selectEdge(edge),
        },
        this.seed,
      );
    }
    renderEdgeDetail(
      this.edgeBody,
      this.selectedEdge,
      this.store.disabledProtections,
      this.names,
      (protectionId) => this.toggleProtection(protectionId),
    );
    renderDraft(
      this.draftBody,
      {
        compromised: this.store.compromisedAssets,
        disabled: this.store.disabledProtections,
        zeroDays: this.store.zeroDayLinks,
      },
      this.names,
      {
        onRemoveCompromised: (assetId) => this.toggleCompromised(assetId),
        onRemoveDisabled: (protectionId) => this.toggleProtection(protectionId),
        onRemoveZeroDay: (index) => this.removeZeroDay(index),
      },
    );
  }

  private selectEdge(edge: GraphEdgeDoc): void {
    this.selectedEdge = edge;
    this.renderDraftPanels();
  }

  private setStatus(text: string): void {
    this.statusEl.textContent = text;
  }

  private showError(message: string): void {
    this.errorEl.textContent = message;
    this.errorEl.removeAttribute("hidden");
  }

  private clearError(): void {
    this.errorEl.textContent = "";
    this.errorEl.setAttribute("hidden", "");
  }

  private markSelected(select: HTMLSelectElement, value: string): void {
    for (const option of Array.from(select.options)) {
      if (option.value === value) {
        option.setAttribute("selected", "");
      } else {
        option.removeAttribute("selected");
      }
    }
    select.value = value;
  }

  private applyViewMode(): void {
    const mode = this.store.viewMode;
    const sections: Record<ViewMode, HTMLElement> = {
      graph: this.graphSection,
      chains: this.chainsSection,
      ranking: this.rankingSection,
    };
    for (const view of VIEW_MODES) {
      const section = sections[view];
      const button = this.tabButtons.get(view)!;
      if (view === mode) {
        section.removeAttribute("hidden");
        button.setAttribute("class", "tab active");
      } else {
        section.setAttribute("hidden", "");
        button.setAttribute("class", "tab");
      }
    }
  }

  private buildSkeleton(assetIds: readonly string[]): void {
    this.hazardSelect = el("select", { class: "hazard-select" });
    for (const hazard of this.hazards.filter((h) => h.mapped)) {
      const attrs: Record<string, string> = { value: hazard.id };
      if (hazard.id === this.store.hazard) {
        attrs.selected = "";
      }
      this.hazardSelect.append(el("option", attrs, [hazard.id]));
    }
    this.hazardSelect.addEventListener("change", () => {
      void this.setHazard(this.hazardSelect.value);
    });

    this.profileSelect = el("select", { class: "profile-select" });
    const allAttrs: Record<string, string> = { value: "" };
    if (this.store.profile === null) {
      allAttrs.selected = "";
    }
    this.profileSelect.append(el("option", allAttrs, ["all profiles"]));
    for (const profile of this.model.profiles) {
      const attrs: Record<string, string> = { value: profile.id };
      if (profile.id === this.store.profile) {
        attrs.selected = "";
      }
      this.profileSelect.append(el("option", attrs, [profile.name]));
    }
    this.profileSelect.addEventListener("change", () => {
      void this.setProfile(this.profileSelect.value);
    });

    this.tabButtons = new Map();
    const tabs = VIEW_MODES.map((mode) => {
      const button = el(
        "button",
        { class: "tab", type: "button", "data-view": mode },
        [mode],
      );
      button.addEventListener("click", () => this.setViewMode(mode));
      this.tabButtons.set(mode, button);
      return button;
    });

    this.statusEl = el("span", { class: "status", role: "status" });
    this.errorEl = el("div", { class: "error-banner", hidden: "" });

    this.graphBody = el("div", { class: "panel-body graph-body" });
    this.chainsBody = el("div", { class: "panel-body chains-body" });
    this.rankingBody = el("div", { class: "panel-body ranking-body" });
    this.deltaBody = el("div", { class: "panel-body delta-body" });
    this.edgeBody = el("div", { class: "panel-body edge-body" });
    this.draftBody = el("div", { class: "panel-body draft-body" });

    this.graphSection = el("section", { class: "view view-graph" }, [
      el("h2", {}, ["attack graph"]),
      this.graphBody,
    ]);
    this.chainsSection = el("section", { class: "view view-chains" }, [
      el("h2", {}, ["chains"]),
      this.chainsBody,
    ]);
    this.rankingSection = el("section", { class: "view view-ranking" }, [
      el("h2", {}, ["protection ranking"]),
      this.rankingBody,
    ]);

    this.zeroDayA = el("select", { class: "zero-day-a" });
    this.zeroDayB = el("select", { class: "zero-day-b" });
    for (const assetId of assetIds) {
      this.zeroDayA.append(el("option", { value: assetId }, [assetId]));
      this.zeroDayB.append(el("option", { value: assetId }, [assetId]));
    }
    this.zeroDayDirection = el("select", { class: "zero-day-direction" }, [
      el("option", { value: "a-to-b" }, ["one way"]),
      el("option", { value: "bidirectional" }, ["both ways"]),
    ]);
    const zeroDayAdd = el(
      "button",
      { class: "zero-day-add", type: "button" },
      ["add zero-day link"],
    );
    zeroDayAdd.addEventListener("click", () => {
      this.addZeroDay(
        this.zeroDayA.value,
        this.zeroDayB.value,
        this.zeroDayDirection.value as ZeroDayDirection,
      );
    });

    const counts = this.model.counts;
    const header = el("header", { class: "toolbar" }, [
      el("h1", {}, [
        `${this.model.metadata.name} v${this.model.metadata.version}`,
      ]),
      el("span", { class: "model-counts" }, [
        `assets: ${counts.assets} · links: ${counts.links} · ` +
          `protections: ${counts.protections} · hazards: ${counts.hazards}`,
      ]),
      el("label", {}, ["hazard ", this.hazardSelect]),
      el("label", {}, ["profile ", this.profileSelect]),
      el("nav", { class: "tabs" }, tabs),
      this.statusEl,
    ]);

    const aside = el("aside", { class: "sidebar" }, [
      el("section", { class: "view view-delta" }, [
        el("h2", {}, ["scenario versus baseline"]),
        this.deltaBody,
      ]),
      el("section", { class: "view view-edge" }, [
        el("h2", {}, ["edge protections"]),
        this.edgeBody,
      ]),
      el("section", { class: "view view-draft" }, [
        el("h2", {}, ["scenario draft"]),
        this.draftBody,
      ]),
      el("section", { class: "view view-zero-day" }, [
        el("h2", {}, ["zero-day link"]),
        el("div", { class: "zero-day-form" }, [
          el("label", {}, ["from ", this.zeroDayA]),
          el("label", {}, ["to ", this.zeroDayB]),
          el("label", {}, ["direction ", this.zeroDayDirection]),
          zeroDayAdd,
        ]),
      ]),
    ]);

    this.root.replaceChildren(
      header,
      this.errorEl,
      el("div", { class: "layout" }, [
        el("main", { class: "views" }, [
          this.graphSection,
          this.chainsSection,
          this.rankingSection,
        ]),
        aside,
      ]),
    );
    this.applyViewMode();
  }
}
