// Pure scene assembly: project the server-provided 3D layout, mark boundary
// and odd structure, and hit-test edges by nearest segment distance. No DOM
// and no local graph knowledge beyond the view state.

import { Edge, edgeKey, normalizeEdge } from "./api.js";
import { ViewState } from "./state.js";

export interface Camera {
  yaw: number;
  pitch: number;
  zoom: number;
  width: number;
  height: number;
}

export const PICK_THRESHOLD_PX = 8;

const PALETTE = ["#e5b800", "#2e86de", "#27ae60", "#c0392b", "#8e44ad"];

export interface SceneVertex {
  id: number;
  x: number;
  y: number;
  depth: number;
  boundary: boolean;
  fill: string;
}

export interface SceneEdge {
  a: number;
  b: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  depth: number;
  odd: boolean;
  selected: boolean;
  degree: number | null;
  distance: number | null;
}

export interface SceneModel {
  vertices: SceneVertex[];
  edges: SceneEdge[];
  hud: { phi: number; oddCount: number; revision: number; banner: string | null };
}

export function project(p: [number, number, number], cam: Camera): [number, number, number] {
  const [x0, y0, z0] = p;
  const cy = Math.cos(cam.yaw);
  const sy = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch);
  const sp = Math.sin(cam.pitch);
  const x1 = cy * x0 + sy * z0;
  const z1 = -sy * x0 + cy * z0;
  const y2 = cp * y0 - sp * z1;
  const z2 = sp * y0 + cp * z1;
  return [
    cam.width / 2 + cam.zoom * x1,
    cam.height / 2 - cam.zoom * y2,
    z2,
  ];
}

export function buildScene(view: ViewState, cam: Camera): SceneModel {
  const vertices: SceneVertex[] = [];
  const positions = new Map<number, [number, number, number]>();
  if (view.graph) {
    for (const v of view.graph.vertices) {
      const raw = view.layout.get(v) ?? [0, 0, 0];
      const [x, y, depth] = project(raw, cam);
      positions.set(v, [x, y, depth]);
      const color = view.coloringPreview?.get(v);
      vertices.push({
        id: v,
        x,
        y,
        depth,
        boundary: view.boundary.has(v),
        fill: color !== undefined ? PALETTE[color % PALETTE.length] : "#999999",
      });
    }
  }
  const oddInfo = new Map(view.oddEdges.map((o) => [edgeKey(o.edge), o]));
  const selectedKey = view.selection ? edgeKey(view.selection) : null;
  const edges: SceneEdge[] = [];
  if (view.graph) {
    for (const [a, b] of view.graph.edges) {
      const pa = positions.get(a);
      const pb = positions.get(b);
      if (!pa || !pb) continue;
      const key = edgeKey(normalizeEdge(a, b));
      const odd = oddInfo.get(key);
      edges.push({
        a,
        b,
        x1: pa[0],
        y1: pa[1],
        x2: pb[0],
        y2: pb[1],
        depth: (pa[2] + pb[2]) / 2,
        odd: odd !== undefined,
        selected: key === selectedKey,
        degree: odd ? odd.degree : null,
        distance: odd ? odd.distance : null,
      });
    }
  }
  edges.sort((p, q) => p.depth - q.depth);
  return {
    vertices: vertices.sort((p, q) => p.depth - q.depth),
    edges,
    hud: {
      phi: view.phi,
      oddCount: view.oddCount,
      revision: view.revision,
      banner: view.banner,
    },
  };
}

function segmentDistance(px: number, py: number, e: SceneEdge): number {
  const dx = e.x2 - e.x1;
  const dy = e.y2 - e.y1;
  const lengthSq = dx * dx + dy * dy;
  let t = lengthSq === 0 ? 0 : ((px - e.x1) * dx + (py - e.y1) * dy) / lengthSq;
  t = Math.max(0, Math.min(1, t));
  const qx = e.x1 + t * dx;
  const qy = e.y1 + t * dy;
  return Math.hypot(px - qx, py - qy);
}

export function pickEdge(scene: SceneModel, x: number, y: number,
                         threshold: number = PICK_THRESHOLD_PX): Edge | null {
  let best: SceneEdge | null = null;
  let bestDist = threshold;
  for (const e of scene.edges) {
    const d = segmentDistance(x, y, e);
    if (d < bestDist || (best !== null && d === bestDist && e.depth > best.depth)) {
      best = e;
      bestDist = d;
    }
  }
  return best ? normalizeEdge(best.a, best.b) : null;
}

export function edgeTooltip(scene: SceneModel, edge: Edge): string {
  const key = edgeKey(edge);
  const found = scene.edges.find((e) => edgeKey(normalizeEdge(e.a, e.b)) === key);
  if (!found) return "";
  if (found.odd) {
    return `edge ${key}: odd, degree ${found.degree}, distance ${found.distance}`;
  }
  return `edge ${key}`;
}
