import type {
  AssetDoc,
  HazardDoc,
  MergedGraphDoc,
  ModelInfoDoc,
  ProtectionDoc,
  RankingDoc,
  WhatIfDeltaDoc,
  WhatIfRequest,
} from "./types.js";

/** Error carrying the service's structured error envelope. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

/** The slice of the HTTP API the explorer consumes. */
export interface ExplorerApi {
  fetchModel(): Promise<ModelInfoDoc>;
  fetchAssets(): Promise<AssetDoc[]>;
  fetchProtections(): Promise<ProtectionDoc[]>;
  fetchHazards(): Promise<HazardDoc[]>;
  fetchMergedGraph(profile: string | null): Promise<MergedGraphDoc>;
  fetchRanking(profile: string | null): Promise<RankingDoc>;
  postWhatIf(request: WhatIfRequest): Promise<WhatIfDeltaDoc>;
}

function profileQuery(profile: string | null): string {
  if (profile === null) return "";
  return `?${new URLSearchParams({ profile })}`;
}

/** fetch()-based client for a running posturekit service. */
export class HttpExplorerApi implements ExplorerApi {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(`${this.baseUrl}/api/v1${path}`, init);
    if (!res.ok) {
      let code = "E-HTTP";
      let message = `${res.status} ${res.statusText}`;
      try {
        const body = (await res.json()) as {
          error?: { code?: string; message?: string };
        };
        if (body.error) {
          code = body.error.code ?? code;
          message = body.error.message ?? message;
        }
      } catch {
        // non-JSON error body; keep the status-line message
      }
      throw new ServiceError(res.status, code, message);
    }
    return res.json() as Promise<T>;
  }

  fetchModel(): Promise<ModelInfoDoc> {
    return this.request("/model");
  }

  fetchAssets(): Promise<AssetDoc[]> {
    return this.request("/assets");
  }

  fetchProtections(): Promise<ProtectionDoc[]> {
    return this.request("/protections");
  }

  fetchHazards(): Promise<HazardDoc[]> {
    return this.request("/hazards");
  }

  fetchMergedGraph(profile: string | null): Promise<MergedGraphDoc> {
    return this.request(`/graph/merged${profileQuery(profile)}`);
  }

  fetchRanking(profile: string | null): Promise<RankingDoc> {
    return this.request(`/protections/ranking${profileQuery(profile)}`);
  }

  postWhatIf(request: WhatIfRequest): Promise<WhatIfDeltaDoc> {
    return this.request("/whatif", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }
}
