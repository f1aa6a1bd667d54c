import type { GraphNodeDoc } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export const LAYOUT_SEED = 42;

/** Deterministic 32-bit PRNG; same seed, same sequence. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Place nodes on a circle in payload order, rotated by a seeded offset.
 * Positions are presentation-only; identical payload and seed always
 * produce identical coordinates.
 */
export function layoutGraph(
  nodes: readonly GraphNodeDoc[],
  width: number,
  height: number,
  seed: number = LAYOUT_SEED,
): Map<string, Point> {
  const positions = new Map<string, Point>();
  const cx = width / 2;
  const cy = height / 2;
  if (nodes.length === 1) {
    positions.set(nodes[0].id, { x: round2(cx), y: round2(cy) });
    return positions;
  }
  const rng = mulberry32(seed);
  const offset = rng() * 2 * Math.PI;
  const radius = Math.min(width, height) / 2 - 60;
  nodes.forEach((node, index) => {
    const angle = offset + (2 * Math.PI * index) / nodes.length;
    positions.set(node.id, {
      x: round2(cx + radius * Math.cos(angle)),
      y: round2(cy + radius * Math.sin(angle)),
    });
  });
  return positions;
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}
