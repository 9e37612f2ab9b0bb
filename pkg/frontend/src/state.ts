/** View state for the workbench: picked seeds, active artifact view,
 * iso-level fraction, visible clusters, overlap pair, camera pose.
 *
 * The first picked seed is always the image background / null data.
 * Duplicate exact colors are rejected (the server enforces distinctness).
 */

import { rgbEqual } from "./picker";
import type { Rgb, SeedEntry } from "./types";

export type ArtifactView =
  | { kind: "original" }
  | { kind: "segmented" }
  | { kind: "mask"; cluster: number };

export interface PickedSeed {
  x: number;
  y: number;
  color: Rgb;
  label: string;
  isBackground: boolean;
}

export type PickResult =
  | { ok: true; seed: PickedSeed }
  | { ok: false; reason: "duplicate-color" | "outside-image" };

export class ViewState {
  sessionId: string | null = null;
  seeds: PickedSeed[] = [];
  view: ArtifactView = { kind: "original" };
  isoFraction = 0.1;
  appliedIsoFraction = 0.1;
  visibleClusters: Set<number> = new Set();
  overlapPair: [number, number] | null = null;
  camera = { yaw: 0.6, pitch: 0.4, zoom: 1.0 };

  addSeed(x: number, y: number, color: Rgb | null, label?: string): PickResult {
    if (color === null) return { ok: false, reason: "outside-image" };
    if (this.seeds.some((s) => rgbEqual(s.color, color))) {
      return { ok: false, reason: "duplicate-color" };
    }
    const isBackground = this.seeds.length === 0;
    const seed: PickedSeed = {
      x,
      y,
      color,
      label: label ?? (isBackground ? "background/null data" : `class ${this.seeds.length + 1}`),
      isBackground,
    };
    this.seeds.push(seed);
    return { ok: true, seed };
  }

  removeSeed(index: number): void {
    this.seeds.splice(index, 1);
    this.seeds.forEach((s, i) => (s.isBackground = i === 0));
  }

  /** Pipeline needs at least background + one class. */
  canRunPipeline(): boolean {
    return this.seeds.length >= 2;
  }

  paletteDraft(): SeedEntry[] {
    return this.seeds.map((s) => ({ label: s.label, rgb: s.color }));
  }

  /** Slider moves are previews; only "apply" commits the level used for
   * server-side mesh requests. */
  applyIsoFraction(): number {
    this.appliedIsoFraction = this.isoFraction;
    return this.appliedIsoFraction;
  }

  toggleCluster(k: number): void {
    if (this.visibleClusters.has(k)) this.visibleClusters.delete(k);
    else this.visibleClusters.add(k);
  }
}
