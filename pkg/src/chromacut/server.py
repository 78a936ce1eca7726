"""HTTP session service exposing the refinement workflow to the companion UI.

Sessions live in memory; per-session mutations are serialized through a
lock, and optimistic concurrency uses monotonically increasing revisions: a
mutation carrying an If-Match-Revision header that does not match the
current revision is rejected with 409.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

import networkx as nx
from fastapi import FastAPI, Header, HTTPException
from pydantic import BaseModel

from . import coloring as coloring_mod
from .constructions import HostComplex, build, cone, self_cobordism
from .curvature import boundary_distances, edge_link
from .refine import RefinementSession

LAYOUT_SEED = 42


@dataclass
class SessionHandle:
    id: str
    session: RefinementSession
    created: float
    modified: float
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def bump(self) -> None:
        self.revision += 1
        self.modified = time.time()


class CreateSession(BaseModel):
    construction: str
    strategy: str | None = None


class CutRequest(BaseModel):
    a: int
    b: int


class AnnealRequest(BaseModel):
    n: int = 100
    seed: int = 0
    # low-temperature slow cooling finishes the benchmark hosts reliably
    t0: float = 0.5
    cooling: float = 0.9995


def create_app() -> FastAPI:
    app = FastAPI(title="chromacut session service")
    store: dict[str, SessionHandle] = {}

    def get_handle(sid: str) -> SessionHandle:
        handle = store.get(sid)
        if handle is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return handle

    def check_revision(handle: SessionHandle, header: str | None) -> None:
        if header is not None and int(header) != handle.revision:
            raise HTTPException(status_code=409,
                                detail=f"stale revision {header}, current {handle.revision}")

    def odd_edges_doc(handle: SessionHandle) -> dict:
        s = handle.session
        odd = sorted(s.odd_set())
        dist = boundary_distances(s.graph, s.boundary)
        obj = s.objective()
        return {
            "odd": [{"edge": list(e), "degree": edge_link(s.graph, e).edge_count(),
                     "distance": max(dist.get(e[0], 0), dist.get(e[1], 0))} for e in odd]
            if s.dimension == 3 else [{"vertex": v, "distance": dist.get(v, 0)} for v in odd],
            "phi": obj.phi,
            "odd_count": obj.odd,
            "revision": handle.revision,
        }

    @app.post("/sessions")
    def create_session(req: CreateSession):
        built = build(req.construction)
        if isinstance(built, HostComplex):
            host = built
        elif req.strategy == "prism":
            host = self_cobordism(built)
        else:
            host = cone(built)
        handle = SessionHandle(uuid.uuid4().hex, RefinementSession(host),
                               time.time(), time.time())
        store[handle.id] = handle
        return {"id": handle.id, "revision": handle.revision}

    @app.get("/sessions/{sid}/graph")
    def get_graph(sid: str):
        handle = get_handle(sid)
        g = handle.session.graph
        nxg = nx.Graph(g.edges())
        nxg.add_nodes_from(g.vertices)
        layout = nx.spring_layout(nxg, dim=3, seed=LAYOUT_SEED)
        return {
            "graph": g.to_doc(),
            "boundary": sorted(handle.session.boundary),
            "layout": {str(v): [float(x) for x in pos] for v, pos in sorted(layout.items())},
            "revision": handle.revision,
        }

    @app.get("/sessions/{sid}/odd-edges")
    def get_odd(sid: str):
        return odd_edges_doc(get_handle(sid))

    @app.post("/sessions/{sid}/cut")
    def post_cut(sid: str, req: CutRequest, if_match_revision: str | None = Header(default=None)):
        handle = get_handle(sid)
        with handle.lock:
            check_revision(handle, if_match_revision)
            before = set(handle.session.odd_set())
            try:
                record = handle.session.edge_cut((req.a, req.b))
            except (KeyError, ValueError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            handle.bump()
            after = set(handle.session.odd_set())
            return {
                "revision": handle.revision,
                "created": list(record.created),
                "parity_delta": sorted([list(e) for e in before ^ after]),
            }

    @app.post("/sessions/{sid}/undo")
    def post_undo(sid: str, if_match_revision: str | None = Header(default=None)):
        handle = get_handle(sid)
        with handle.lock:
            check_revision(handle, if_match_revision)
            try:
                handle.session.undo()
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            handle.bump()
            return {"revision": handle.revision}

    @app.post("/sessions/{sid}/anneal-step")
    def post_anneal(sid: str, req: AnnealRequest,
                    if_match_revision: str | None = Header(default=None)):
        handle = get_handle(sid)
        with handle.lock:
            check_revision(handle, if_match_revision)
            outcome = handle.session.anneal(t0=req.t0, cooling=req.cooling,
                                            steps=req.n, seed=req.seed)
            handle.bump()
            return {"revision": handle.revision, "outcome": outcome.value,
                    "odd_count": len(handle.session.odd_set())}

    @app.get("/sessions/{sid}/coloring")
    def get_coloring(sid: str):
        handle = get_handle(sid)
        s = handle.session
        try:
            result = coloring_mod.propagate_minimal(s.graph, s.dimension)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        doc: dict = {"status": result.status, "revision": handle.revision}
        if result.proper:
            doc["colors"] = {str(v): c for v, c in sorted(result.assignment.items())}
            doc["boundary_colors"] = {str(v): result.assignment[v]
                                      for v in sorted(s.boundary) if v in result.assignment}
        else:
            doc["witness_walk"] = [list(c) for c in result.witness_walk]
        return doc

    @app.get("/sessions/{sid}/trace")
    def get_trace(sid: str):
        handle = get_handle(sid)
        return {"trace": [{"step": s, "phi": p, "odd": o}
                          for s, p, o in handle.session.objective_trace],
                "revision": handle.revision}

    @app.get("/sessions/{sid}/log")
    def get_log(sid: str):
        handle = get_handle(sid)
        return {"log": handle.session.move_log_text(), "revision": handle.revision}

    return app
