export { HttpExplorerApi, ServiceError } from "./api.js";
export type { ExplorerApi } from "./api.js";
export { ExplorerApp } from "./app.js";
export type { ExplorerOptions } from "./app.js";
export { LAYOUT_SEED, layoutGraph } from "./layout.js";
export { NameIndex } from "./names.js";
export { WhatIfQueue } from "./queue.js";
export { renderGraph } from "./render/graph.js";
export {
  renderChains,
  renderDelta,
  renderDraft,
  renderEdgeDetail,
  renderRanking,
} from "./render/panels.js";
export { ExplorerStore } from "./state.js";
export type { DraftSnapshot, KnownIds } from "./state.js";
export * from "./types.js";
