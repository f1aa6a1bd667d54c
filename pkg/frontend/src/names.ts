import type { AssetDoc, ProtectionDoc } from "./types.js";

/**
 * Maps asset and protection ids to the display names the service reports.
 * Ids without a known name (for example zero-day sentinels) display as-is.
 */
export class NameIndex {
  private readonly names = new Map<string, string>();

  constructor(assets: readonly AssetDoc[], protections: readonly ProtectionDoc[]) {
    for (const asset of assets) {
      this.names.set(asset.id, asset.name);
    }
    for (const protection of protections) {
      this.names.set(protection.id, protection.name);
    }
  }

  display(id: string): string {
    return this.names.get(id) ?? id;
  }

  route(assetIds: readonly string[]): string {
    return assetIds.map((id) => this.display(id)).join(" → ");
  }
}
