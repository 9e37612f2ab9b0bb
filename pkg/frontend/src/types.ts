/** Wire types mirrored from the workbench HTTP API. */

export type Rgb = [number, number, number];

export interface SessionMeta {
  id: string;
  width: number;
  height: number;
  pixels: number;
  stages: { classified: boolean };
  n_clusters?: number;
}

export interface ClusterStatsRow {
  index: number; // 1-based, cluster 1 = background
  label: string;
  count: number;
  mean_color: Rgb;
  pct_of_image: number;
  pct_of_foreground: number | null; // null for background
}

export interface StatsDoc {
  image_area: number;
  background_area: number;
  foreground_area: number;
  clusters: ClusterStatsRow[];
}

export interface MeshDoc {
  vertices: Rgb[];
  triangles: [number, number, number][];
  color: Rgb;
  cluster: number;
}

export interface SeedEntry {
  label: string;
  rgb: Rgb;
}

export interface PipelineRequest {
  palette: SeedEntry[];
  refine_means?: boolean;
  bins_per_axis?: number;
  iso_level_fraction?: number;
  sample_n?: number;
  rng_seed?: number;
  surface_mode?: "iso" | "ellipsoid";
}
