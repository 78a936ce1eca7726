// Session view state and its controller. The controller never mutates graph
// data locally: every cut, undo, and anneal round-trips through the API and
// the state is rebuilt from the server's responses.

import {
  ApiError,
  ColoringResponse,
  CutResponse,
  Edge,
  GraphDoc,
  GraphResponse,
  OddEdgeEntry,
  OddEdgesResponse,
  TraceEntry,
  edgeKey,
  normalizeEdge,
} from "./api.js";
import { TracePoint, appendServerTrace, markBranch } from "./trace.js";

// Structural surface of the client, so component tests can substitute an
// in-memory fake and intercept every transition.
export interface SessionApi {
  createSession(construction: string, strategy?: string): Promise<{ id: string; revision: number }>;
  graph(id: string): Promise<GraphResponse>;
  oddEdges(id: string): Promise<OddEdgesResponse>;
  cut(id: string, a: number, b: number, revision?: number): Promise<CutResponse>;
  undo(id: string, revision?: number): Promise<{ revision: number }>;
  annealStep(id: string, n: number, seed: number, revision?: number):
      Promise<{ revision: number; outcome: string; odd_count: number }>;
  coloring(id: string): Promise<ColoringResponse>;
  trace(id: string): Promise<{ trace: TraceEntry[]; revision: number }>;
  log(id: string): Promise<{ log: string; revision: number }>;
}

export interface ViewState {
  sessionId: string | null;
  revision: number;
  graph: GraphDoc | null;
  boundary: Set<number>;
  layout: Map<number, [number, number, number]>;
  oddEdges: OddEdgeEntry[];
  phi: number;
  oddCount: number;
  selection: Edge | null;
  trace: TracePoint[];
  coloringPreview: Map<number, number> | null;
  banner: string | null;
}

export function emptyState(): ViewState {
  return {
    sessionId: null,
    revision: -1,
    graph: null,
    boundary: new Set(),
    layout: new Map(),
    oddEdges: [],
    phi: 0,
    oddCount: 0,
    selection: null,
    trace: [],
    coloringPreview: null,
    banner: null,
  };
}

export interface ClickVerdict {
  cuttable: boolean;
  reason: string;
}

export class SessionController {
  state: ViewState = emptyState();

  constructor(private readonly api: SessionApi) {}

  async create(construction: string, strategy?: string): Promise<void> {
    const created = await this.api.createSession(construction, strategy);
    this.state = emptyState();
    this.state.sessionId = created.id;
    this.state.revision = created.revision;
    await this.refresh();
  }

  private id(): string {
    if (this.state.sessionId === null) throw new Error("no session loaded");
    return this.state.sessionId;
  }

  async refresh(): Promise<void> {
    const id = this.id();
    try {
      const graph = await this.api.graph(id);
      const odd = await this.api.oddEdges(id);
      this.state.graph = graph.graph;
      this.state.boundary = new Set(graph.boundary);
      this.state.layout = new Map(
        Object.entries(graph.layout).map(([v, pos]) => [Number(v), pos]),
      );
      this.state.oddEdges = odd.odd;
      this.state.phi = odd.phi;
      this.state.oddCount = odd.odd_count;
      this.state.revision = graph.revision;
      const trace = await this.api.trace(id);
      this.state.trace = appendServerTrace(this.state.trace, trace.trace);
      this.state.banner = null;
      if (this.state.oddCount === 0) {
        await this.loadColoringPreview();
      } else {
        this.state.coloringPreview = null;
      }
    } catch (err) {
      this.state.banner = `network failure: ${(err as Error).message}; retry`;
      throw err;
    }
  }

  // Selecting an edge never talks to the server; cutting does.
  clickEdge(a: number, b: number): ClickVerdict {
    const e = normalizeEdge(a, b);
    if (this.state.boundary.has(e[0]) && this.state.boundary.has(e[1])
        && this.isBoundarySurfaceEdge(e)) {
      this.state.selection = null;
      return { cuttable: false, reason: "boundary edge: cuts must keep the boundary intact" };
    }
    this.state.selection = e;
    return { cuttable: true, reason: "" };
  }

  private isBoundarySurfaceEdge(e: Edge): boolean {
    // an edge of the designated boundary surface is never odd and never
    // offered by the server; both endpoints on the boundary is the UI-side
    // approximation used to disable the control up front
    return !this.state.oddEdges.some((o) => edgeKey(o.edge) === edgeKey(e));
  }

  async confirmCut(): Promise<void> {
    if (!this.state.selection) throw new Error("no edge selected");
    const [a, b] = this.state.selection;
    await this.cutEdge(a, b);
  }

  async cutEdge(a: number, b: number): Promise<void> {
    const id = this.id();
    try {
      await this.api.cut(id, a, b, this.state.revision);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state.banner = "session changed elsewhere; refreshed";
        await this.refresh();
        return;
      }
      throw err;
    }
    this.state.selection = null;
    await this.refresh();
  }

  async undo(): Promise<void> {
    const id = this.id();
    await this.api.undo(id, this.state.revision);
    this.state.trace = markBranch(this.state.trace);
    await this.refresh();
  }

  async annealSteps(n: number, seed = 0): Promise<string> {
    const id = this.id();
    const result = await this.api.annealStep(id, n, seed, this.state.revision);
    await this.refresh();
    return result.outcome;
  }

  async exportLog(): Promise<string> {
    const id = this.id();
    const result = await this.api.log(id);
    return result.log;
  }

  async loadColoringPreview(): Promise<void> {
    const id = this.id();
    const coloring: ColoringResponse = await this.api.coloring(id);
    if (coloring.status === "proper" && coloring.colors) {
      this.state.coloringPreview = new Map(
        Object.entries(coloring.colors).map(([v, c]) => [Number(v), c]),
      );
    } else {
      this.state.coloringPreview = null;
    }
  }

  oddEdgeKeys(): Set<string> {
    return new Set(this.state.oddEdges.map((o) => edgeKey(o.edge)));
  }
}
