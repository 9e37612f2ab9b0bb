/** Minimal software 3D renderer for the feature-space view.
 *
 * Triangles are flat-shaded, depth-sorted (painter's algorithm), and drawn
 * on a 2D canvas inside an RGB unit-cube wireframe. No GPU dependency, so
 * the bundle is plain ES modules straight out of tsc.
 */

import type { MeshBuffers } from "./mesh";

export interface Camera {
  yaw: number;
  pitch: number;
  zoom: number;
}

interface Projected {
  x: number;
  y: number;
  depth: number;
}

export function projectPoint(
  p: [number, number, number],
  cam: Camera,
  width: number,
  height: number
): Projected {
  // center the unit cube, rotate by yaw (around y) then pitch (around x)
  const cx = p[0] - 0.5;
  const cy = p[1] - 0.5;
  const cz = p[2] - 0.5;
  const cosY = Math.cos(cam.yaw);
  const sinY = Math.sin(cam.yaw);
  const x1 = cx * cosY + cz * sinY;
  const z1 = -cx * sinY + cz * cosY;
  const cosP = Math.cos(cam.pitch);
  const sinP = Math.sin(cam.pitch);
  const y2 = cy * cosP - z1 * sinP;
  const z2 = cy * sinP + z1 * cosP;
  const scale = Math.min(width, height) * 0.55 * cam.zoom;
  return {
    x: width / 2 + x1 * scale,
    y: height / 2 - y2 * scale,
    depth: z2,
  };
}

const CUBE_EDGES: [number, number, number][][] = (() => {
  const corners: [number, number, number][] = [];
  for (const x of [0, 1]) for (const y of [0, 1]) for (const z of [0, 1]) corners.push([x, y, z]);
  const edges: [number, number, number][][] = [];
  for (let i = 0; i < 8; i++) {
    for (let j = i + 1; j < 8; j++) {
      const diff =
        Math.abs(corners[i][0] - corners[j][0]) +
        Math.abs(corners[i][1] - corners[j][1]) +
        Math.abs(corners[i][2] - corners[j][2]);
      if (diff === 1) edges.push([corners[i], corners[j]]);
    }
  }
  return edges;
})();

export function drawScene(
  ctx: CanvasRenderingContext2D,
  meshes: MeshBuffers[],
  cam: Camera,
  width: number,
  height: number
): void {
  ctx.clearRect(0, 0, width, height);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  for (const [a, b] of CUBE_EDGES) {
    const pa = projectPoint(a, cam, width, height);
    const pb = projectPoint(b, cam, width, height);
    ctx.beginPath();
    ctx.moveTo(pa.x, pa.y);
    ctx.lineTo(pb.x, pb.y);
    ctx.stroke();
  }
  for (const [label, corner] of [
    ["R", [1.08, 0, 0]],
    ["G", [0, 1.08, 0]],
    ["B", [0, 0, 1.08]],
  ] as [string, [number, number, number]][]) {
    const p = projectPoint(corner, cam, width, height);
    ctx.fillStyle = "#555";
    ctx.fillText(label, p.x, p.y);
  }

  interface Tri {
    pts: Projected[];
    depth: number;
    shade: string;
  }
  const tris: Tri[] = [];
  for (const mesh of meshes) {
    const proj: Projected[] = [];
    for (let i = 0; i < mesh.positions.length; i += 3) {
      proj.push(
        projectPoint(
          [mesh.positions[i], mesh.positions[i + 1], mesh.positions[i + 2]],
          cam,
          width,
          height
        )
      );
    }
    for (let t = 0; t < mesh.indices.length; t += 3) {
      const a = proj[mesh.indices[t]];
      const b = proj[mesh.indices[t + 1]];
      const c = proj[mesh.indices[t + 2]];
      const depth = (a.depth + b.depth + c.depth) / 3;
      // fake lambert: brighten faces toward the viewer
      const facing = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
      const light = 0.55 + 0.45 * Math.min(1, Math.abs(facing) * 0.02);
      const rgb = mesh.color.map((v) => Math.round(v * 255 * light));
      tris.push({ pts: [a, b, c], depth, shade: `rgba(${rgb[0]}, ${rgb[1]}, ${rgb[2]}, 0.92)` });
    }
  }
  tris.sort((p, q) => p.depth - q.depth);
  for (const tri of tris) {
    ctx.beginPath();
    ctx.moveTo(tri.pts[0].x, tri.pts[0].y);
    ctx.lineTo(tri.pts[1].x, tri.pts[1].y);
    ctx.lineTo(tri.pts[2].x, tri.pts[2].y);
    ctx.closePath();
    ctx.fillStyle = tri.shade;
    ctx.fill();
  }
}
