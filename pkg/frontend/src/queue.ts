import type { WhatIfDeltaDoc, WhatIfRequest } from "./types.js";

export type PostWhatIf = (request: WhatIfRequest) => Promise<WhatIfDeltaDoc>;
export type DeltaHandler = (
  request: WhatIfRequest,
  delta: WhatIfDeltaDoc,
) => void;
export type FailureHandler = (request: WhatIfRequest, error: unknown) => void;

/**
 * Serializes what-if requests: at most one is in flight, toggles that arrive
 * while it runs supersede each other (only the latest draft is sent next),
 * and responses are applied strictly in request order.
 */
export class WhatIfQueue {
  private pending: WhatIfRequest | null = null;
  private draining = false;

  constructor(
    private readonly post: PostWhatIf,
    private readonly onDelta: DeltaHandler,
    private readonly onFailure: FailureHandler,
  ) {}

  /** True while a request is in flight or queued. */
  get busy(): boolean {
    return this.draining;
  }

  /** True when a newer draft is queued behind the in-flight request. */
  get superseded(): boolean {
    return this.pending !== null;
  }

  submit(request: WhatIfRequest): void {
    this.pending = request;
    if (!this.draining) {
      void this.drain();
    }
  }

  private async drain(): Promise<void> {
    this.draining = true;
    try {
      while (this.pending !== null) {
        const request = this.pending;
        this.pending = null;
        try {
          const delta = await this.post(request);
          this.onDelta(request, delta);
        } catch (error) {
          this.onFailure(request, error);
        }
      }
    } finally {
      this.draining = false;
    }
  }
}
