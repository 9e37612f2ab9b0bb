/** Bar-chart data for the stats panel.
 *
 * Values come verbatim from the stats endpoint: the background bar is its
 * percent of the whole image, thematic bars are percent of foreground.
 * No client-side recomputation of record.
 */

import type { Rgb, StatsDoc } from "./types";

export interface Bar {
  cluster: number; // 1-based
  label: string;
  percent: number;
  color: Rgb;
}

export function barsFromStats(stats: StatsDoc): Bar[] {
  return stats.clusters.map((row) => ({
    cluster: row.index,
    label: row.label,
    percent: row.pct_of_foreground === null ? row.pct_of_image : row.pct_of_foreground,
    color: row.mean_color,
  }));
}

/** Plain-text block in the server report style, from endpoint values only. */
export function textReport(stats: StatsDoc): string {
  const lines = [
    `Total image area= ${stats.image_area} pixels`,
    `Background area= ${stats.background_area} pixels or ` +
      `${stats.clusters[0].pct_of_image.toFixed(2)}% image area (i.e Cluster1/null data)`,
    `Total LULC area= ${stats.foreground_area} pixels or ` +
      `${(100 - stats.clusters[0].pct_of_image).toFixed(2)}% image area.`,
  ];
  for (const row of stats.clusters.slice(1)) {
    lines.push(
      `Cluster${row.index} area= ${row.count} pixels or ` +
        `${(row.pct_of_foreground ?? 0).toFixed(2)}% image area`
    );
  }
  return lines.join("\n");
}
