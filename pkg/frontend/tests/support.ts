import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ServiceError } from "../src/api.js";
import type { ExplorerApi } from "../src/api.js";
import type {
  AssetDoc,
  HazardDoc,
  MergedGraphDoc,
  ModelInfoDoc,
  ProtectionDoc,
  RankingDoc,
  WhatIfDeltaDoc,
  WhatIfRequest,
} from "../src/types.js";

const FIXTURES_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

/** Parse a captured service response from tests/fixtures. */
export function loadFixture<T>(name: string): T {
  const path = join(FIXTURES_DIR, `${name}.json`);
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

/**
 * ExplorerApi backed by captured service responses. What-if requests are
 * routed by their exact scenario payload, so a test fails loudly if the app
 * sends anything the capture set does not cover. Responses are cloned per
 * call: repeated identical requests must produce identical renders by
 * determinism, not by object identity.
 */
export class FixtureApi implements ExplorerApi {
  readonly model = loadFixture<ModelInfoDoc>("model");
  readonly assets = loadFixture<AssetDoc[]>("assets");
  readonly protections = loadFixture<ProtectionDoc[]>("protections");
  readonly hazards = loadFixture<HazardDoc[]>("hazards");
  readonly mergedGraph = loadFixture<MergedGraphDoc>("merged_researcher");
  readonly ranking = loadFixture<RankingDoc>("ranking_researcher");

  private readonly whatIfByScenario: Record<string, WhatIfDeltaDoc> = {
    "{}": loadFixture("whatif_h3_empty"),
    '{"disabled_protections":["db-auth"]}': loadFixture(
      "whatif_h3_disable_db_auth",
    ),
    '{"compromised":["infrapod-server"]}': loadFixture(
      "whatif_h3_compromise_server",
    ),
    '{"zero_day_links":[{"a":"bare-metal-nodes","b":"infrapod-db","direction":"a-to-b"}]}':
      loadFixture("whatif_h3_zero_day"),
  };

  /** Every what-if request the app has sent, in order. */
  readonly whatIfRequests: WhatIfRequest[] = [];
  /** When set, the next what-if rejects with this error (then resets). */
  failNextWhatIf: ServiceError | null = null;
  /** When set, every what-if awaits this gate before responding. */
  whatIfGate: (() => Promise<void>) | null = null;

  fetchModel(): Promise<ModelInfoDoc> {
    return Promise.resolve(structuredClone(this.model));
  }

  fetchAssets(): Promise<AssetDoc[]> {
    return Promise.resolve(structuredClone(this.assets));
  }

  fetchProtections(): Promise<ProtectionDoc[]> {
    return Promise.resolve(structuredClone(this.protections));
  }

  fetchHazards(): Promise<HazardDoc[]> {
    return Promise.resolve(structuredClone(this.hazards));
  }

  fetchMergedGraph(profile: string | null): Promise<MergedGraphDoc> {
    this.expectResearcher(profile);
    return Promise.resolve(structuredClone(this.mergedGraph));
  }

  fetchRanking(profile: string | null): Promise<RankingDoc> {
    this.expectResearcher(profile);
    return Promise.resolve(structuredClone(this.ranking));
  }

  async postWhatIf(request: WhatIfRequest): Promise<WhatIfDeltaDoc> {
    this.whatIfRequests.push(structuredClone(request));
    if (this.whatIfGate !== null) {
      await this.whatIfGate();
    }
    if (this.failNextWhatIf !== null) {
      const failure = this.failNextWhatIf;
      this.failNextWhatIf = null;
      throw failure;
    }
    if (request.hazard !== "H3") {
      throw new Error(`no captures for hazard ${request.hazard}`);
    }
    this.expectResearcher(request.profile ?? null);
    const key = JSON.stringify(request.scenario);
    const delta = this.whatIfByScenario[key];
    if (delta === undefined) {
      throw new Error(`no what-if capture for scenario ${key}`);
    }
    return structuredClone(delta);
  }

  private expectResearcher(profile: string | null): void {
    if (profile !== "researcher") {
      throw new Error(`no captures for profile ${String(profile)}`);
    }
  }
}

/** Deferred promise for exercising in-flight request handling. */
export class Deferred<T> {
  readonly promise: Promise<T>;
  resolve!: (value: T) => void;
  reject!: (reason?: unknown) => void;

  constructor() {
    this.promise = new Promise<T>((resolve, reject) => {
      this.resolve = resolve;
      this.reject = reject;
    });
  }
}

/** Let queued microtasks and immediate timers run to completion. */
export async function settle(): Promise<void> {
  for (let i = 0; i < 4; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
