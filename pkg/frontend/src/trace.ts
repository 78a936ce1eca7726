// Objective trace model for the live chart. Append-only: undo marks a
// branch point instead of erasing history, so strategies can be compared.

import { TraceEntry } from "./api.js";

export interface TracePoint {
  step: number;
  phi: number;
  odd: number;
  branch: boolean;
}

export function appendServerTrace(existing: TracePoint[], server: TraceEntry[]): TracePoint[] {
  const out = existing.slice();
  const seen = out.length;
  for (const entry of server.slice(seen)) {
    out.push({ step: entry.step, phi: entry.phi, odd: entry.odd, branch: false });
  }
  return out;
}

export function markBranch(points: TracePoint[]): TracePoint[] {
  if (points.length === 0) return points;
  const out = points.slice();
  out[out.length - 1] = { ...out[out.length - 1], branch: true };
  return out;
}

export interface ChartModel {
  width: number;
  height: number;
  phiPath: [number, number][];
  oddPath: [number, number][];
  branches: [number, number][];
}

export function buildChart(points: TracePoint[], width: number, height: number): ChartModel {
  if (points.length === 0) {
    return { width, height, phiPath: [], oddPath: [], branches: [] };
  }
  const maxPhi = Math.max(1, ...points.map((p) => p.phi));
  const maxStep = Math.max(1, points[points.length - 1].step);
  const x = (step: number) => (step / maxStep) * (width - 10) + 5;
  const y = (value: number) => height - 5 - (value / maxPhi) * (height - 10);
  return {
    width,
    height,
    phiPath: points.map((p) => [x(p.step), y(p.phi)] as [number, number]),
    oddPath: points.map((p) => [x(p.step), y(p.odd)] as [number, number]),
    branches: points.filter((p) => p.branch).map((p) => [x(p.step), y(p.phi)] as [number, number]),
  };
}
