/**
 * Deterministic graph layout.
 *
 * Frozen vertices are pinned evenly on a boundary ring (sorted by id, so
 * the picture is stable across reloads); mutable vertices start at seeded
 * pseudo-random positions and relax under spring/repulsion forces for a
 * fixed number of iterations.  Same input and seed, same picture.
 */

import type { IqpDocument } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  seed: number;
  iterations: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = {
  width: 640,
  height: 480,
  seed: 0x5eed,
  iterations: 120,
};

/** mulberry32: small deterministic PRNG, good enough for initial placement. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layout(
  doc: IqpDocument,
  options: LayoutOptions = DEFAULT_LAYOUT,
): Map<number, Point> {
  const { width, height, seed, iterations } = options;
  const cx = width / 2;
  const cy = height / 2;
  const ring = Math.min(width, height) / 2 - 40;
  const positions = new Map<number, Point>();
  const pinned = new Set<number>();

  const frozen = doc.vertices.filter((v) => v.frozen).map((v) => v.id).sort((a, b) => a - b);
  const mutable = doc.vertices.filter((v) => !v.frozen).map((v) => v.id).sort((a, b) => a - b);

  frozen.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / frozen.length - Math.PI / 2;
    positions.set(id, { x: cx + ring * Math.cos(angle), y: cy + ring * Math.sin(angle) });
    pinned.add(id);
  });

  const rand = mulberry32(seed);
  mutable.forEach((id) => {
    const angle = 2 * Math.PI * rand();
    const radius = ring * 0.4 * Math.sqrt(rand());
    positions.set(id, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  });

  const ids = doc.vertices.map((v) => v.id);
  const springLength = ring * 0.8;
  for (let step = 0; step < iterations; step++) {
    const force = new Map<number, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));
    // pairwise repulsion
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i]!)!;
        const b = positions.get(ids[j]!)!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = (2000 * 1) / d2;
        const d = Math.sqrt(d2);
        force.get(ids[i]!)!.x += (push * dx) / d;
        force.get(ids[i]!)!.y += (push * dy) / d;
        force.get(ids[j]!)!.x -= (push * dx) / d;
        force.get(ids[j]!)!.y -= (push * dy) / d;
      }
    }
    // springs along arrows
    for (const arrow of doc.arrows) {
      const a = positions.get(arrow.tail);
      const b = positions.get(arrow.head);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = 0.02 * (d - springLength);
      force.get(arrow.tail)!.x += (pull * dx) / d;
      force.get(arrow.tail)!.y += (pull * dy) / d;
      force.get(arrow.head)!.x -= (pull * dx) / d;
      force.get(arrow.head)!.y -= (pull * dy) / d;
    }
    // gentle centering, then apply to unpinned vertices only
    const damp = 0.85 ** (1 + step / 20);
    for (const id of ids) {
      if (pinned.has(id)) continue;
      const p = positions.get(id)!;
      const f = force.get(id)!;
      f.x += (cx - p.x) * 0.01;
      f.y += (cy - p.y) * 0.01;
      p.x += f.x * damp;
      p.y += f.y * damp;
      p.x = Math.min(Math.max(p.x, 30), width - 30);
      p.y = Math.min(Math.max(p.y, 30), height - 30);
    }
  }
  return positions;
}
