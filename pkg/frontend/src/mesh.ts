/** Mesh utilities: typed-array buffers for rendering and voxel occupancy
 * for the monotone iso-level check. Meshes come exclusively from the
 * server; nothing here re-runs marching cubes.
 */

import type { MeshDoc } from "./types";

export interface MeshBuffers {
  positions: Float32Array; // xyz interleaved
  indices: Uint32Array;
  color: [number, number, number];
  cluster: number;
}

export function meshToBuffers(mesh: MeshDoc): MeshBuffers {
  const positions = new Float32Array(mesh.vertices.length * 3);
  mesh.vertices.forEach((v, i) => {
    positions[i * 3] = v[0];
    positions[i * 3 + 1] = v[1];
    positions[i * 3 + 2] = v[2];
  });
  const indices = new Uint32Array(mesh.triangles.length * 3);
  mesh.triangles.forEach((t, i) => {
    indices[i * 3] = t[0];
    indices[i * 3 + 1] = t[1];
    indices[i * 3 + 2] = t[2];
  });
  return { positions, indices, color: mesh.color, cluster: mesh.cluster };
}

/** Set of RGB-cube cells touched by the mesh's vertices, as "i,j,k" keys.
 * Used to observe the monotone-level property: raising the iso level must
 * never grow a surface's occupancy. */
export function voxelOccupancy(mesh: MeshDoc, bins: number): Set<string> {
  const cells = new Set<string>();
  for (const [x, y, z] of mesh.vertices) {
    const i = Math.min(Math.max(Math.floor(x * bins), 0), bins - 1);
    const j = Math.min(Math.max(Math.floor(y * bins), 0), bins - 1);
    const k = Math.min(Math.max(Math.floor(z * bins), 0), bins - 1);
    cells.add(`${i},${j},${k}`);
  }
  return cells;
}

export function isSubset(a: Set<string>, b: Set<string>): boolean {
  for (const key of a) if (!b.has(key)) return false;
  return true;
}

/** Axis-aligned bounding box volume of the mesh, 0 for an empty mesh. */
export function boundingVolume(mesh: MeshDoc): number {
  if (mesh.vertices.length === 0) return 0;
  const lo = [Infinity, Infinity, Infinity];
  const hi = [-Infinity, -Infinity, -Infinity];
  for (const v of mesh.vertices) {
    for (let a = 0; a < 3; a++) {
      lo[a] = Math.min(lo[a], v[a]);
      hi[a] = Math.max(hi[a], v[a]);
    }
  }
  return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
}
