// Typed client for the refinement session service. Every response carries a
// revision; mutations send If-Match-Revision so stale writes are rejected.

export type Edge = [number, number];

export interface GraphDoc {
  vertices: number[];
  edges: Edge[];
}

export interface GraphResponse {
  graph: GraphDoc;
  boundary: number[];
  layout: Record<string, [number, number, number]>;
  revision: number;
}

export interface OddEdgeEntry {
  edge: Edge;
  degree: number;
  distance: number;
}

export interface OddEdgesResponse {
  odd: OddEdgeEntry[];
  phi: number;
  odd_count: number;
  revision: number;
}

export interface CutResponse {
  revision: number;
  created: number[];
  parity_delta: Edge[];
}

export interface TraceEntry {
  step: number;
  phi: number;
  odd: number;
}

export interface ColoringResponse {
  status: string;
  revision: number;
  colors?: Record<string, number>;
  boundary_colors?: Record<string, number>;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function parse<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  private async get<T>(path: string): Promise<T> {
    return parse<T>(await fetch(this.url(path)));
  }

  private async post<T>(path: string, body: unknown, revision?: number): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (revision !== undefined) headers["If-Match-Revision"] = String(revision);
    return parse<T>(
      await fetch(this.url(path), {
        method: "POST",
        headers,
        body: JSON.stringify(body),
      }),
    );
  }

  createSession(construction: string, strategy?: string): Promise<{ id: string; revision: number }> {
    return this.post("/sessions", { construction, strategy: strategy ?? null });
  }

  graph(id: string): Promise<GraphResponse> {
    return this.get(`/sessions/${id}/graph`);
  }

  oddEdges(id: string): Promise<OddEdgesResponse> {
    return this.get(`/sessions/${id}/odd-edges`);
  }

  cut(id: string, a: number, b: number, revision?: number): Promise<CutResponse> {
    return this.post(`/sessions/${id}/cut`, { a, b }, revision);
  }

  undo(id: string, revision?: number): Promise<{ revision: number }> {
    return this.post(`/sessions/${id}/undo`, {}, revision);
  }

  annealStep(id: string, n: number, seed: number, revision?: number):
      Promise<{ revision: number; outcome: string; odd_count: number }> {
    return this.post(`/sessions/${id}/anneal-step`, { n, seed }, revision);
  }

  coloring(id: string): Promise<ColoringResponse> {
    return this.get(`/sessions/${id}/coloring`);
  }

  trace(id: string): Promise<{ trace: TraceEntry[]; revision: number }> {
    return this.get(`/sessions/${id}/trace`);
  }

  log(id: string): Promise<{ log: string; revision: number }> {
    return this.get(`/sessions/${id}/log`);
  }
}

export function normalizeEdge(a: number, b: number): Edge {
  return a < b ? [a, b] : [b, a];
}

export function edgeKey(e: Edge): string {
  return `${e[0]}-${e[1]}`;
}

// Canonical serialization mirroring the workbench graph file format, so a
// client-side snapshot can be byte-compared with CLI output.
export function canonicalGraphJson(doc: GraphDoc): string {
  const vertices = [...doc.vertices].sort((x, y) => x - y);
  const edges = doc.edges
    .map(([a, b]) => normalizeEdge(a, b))
    .sort((p, q) => (p[0] - q[0]) || (p[1] - q[1]));
  const edgeText = edges.map(([a, b]) => `[${a},${b}]`).join(",");
  return `{"vertices":[${vertices.join(",")}],"edges":[${edgeText}]}`;
}
