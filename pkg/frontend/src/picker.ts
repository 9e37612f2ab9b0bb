/** Seed picking from canvas pixel data.
 *
 * Works on the ImageData shape ({width, height, data}) so it is testable
 * without a DOM. Channels are normalized exactly as v/255 to match the
 * server's raster model.
 */

import type { Rgb } from "./types";

export interface PixelSource {
  width: number;
  height: number;
  data: Uint8ClampedArray; // RGBA, row-major
}

/** Exact color at (x, y), or null when the click lands outside the image. */
export function samplePixel(src: PixelSource, x: number, y: number): Rgb | null {
  if (!Number.isInteger(x) || !Number.isInteger(y)) return null;
  if (x < 0 || y < 0 || x >= src.width || y >= src.height) return null;
  const i = (y * src.width + x) * 4;
  return [src.data[i] / 255, src.data[i + 1] / 255, src.data[i + 2] / 255];
}

/** 3x3 loupe patch around (x, y); out-of-image cells are null. */
export function loupePatch(src: PixelSource, x: number, y: number): (Rgb | null)[][] {
  const patch: (Rgb | null)[][] = [];
  for (let dy = -1; dy <= 1; dy++) {
    const row: (Rgb | null)[] = [];
    for (let dx = -1; dx <= 1; dx++) {
      row.push(samplePixel(src, x + dx, y + dy));
    }
    patch.push(row);
  }
  return patch;
}

export function rgbEqual(a: Rgb, b: Rgb): boolean {
  return a[0] === b[0] && a[1] === b[1] && a[2] === b[2];
}

export function cssColor(rgb: Rgb): string {
  const c = rgb.map((v) => Math.round(v * 255));
  return `rgb(${c[0]}, ${c[1]}, ${c[2]})`;
}
