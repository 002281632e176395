"""Local HTTP service exposing interactive rewriting sessions.

The browser explorer drives the engine through this API: create a session
from a fixture bundle or uploaded documents, inspect the current graph with
rendering annotations, list redexes, apply a chosen one, undo, and export
the derivation.  Redexes are addressed by index plus the graph digest the
list was computed for; a mismatched digest means the client is stale and
gets a 409.  Each session serializes its mutations behind a lock.
"""

import itertools
import os
import threading
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import fixtures as fixture_data
from .canon import digest
from .errors import HoportError
from .portgraph import PortGraph, node_key
from .rewrite import Derivation, Rule, apply_with_report, enumerate_redexes
from .signature import PSignature


class CreateSessionRequest(BaseModel):
    fixture: Optional[str] = None
    graph: Optional[dict] = None
    rules: list[dict] = []
    signature: Optional[dict] = None


class ApplyRequest(BaseModel):
    index: int
    digest: str


class SessionCreated(BaseModel):
    id: str
    fixture: Optional[str]
    rules: list[str]
    graph: dict


class RedexList(BaseModel):
    digest: str
    redexes: list[dict]


class ApplyResult(BaseModel):
    applied: dict
    diff: dict
    graph: dict


@dataclass
class Session:
    id: str
    graph: PortGraph
    rules: list[Rule]
    fixture: Optional[str]
    derivation: Derivation
    history: list[tuple[PortGraph, Derivation]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _bfs_layers(g: PortGraph) -> dict[str, int]:
    """Breadth-first layer per node, restarted per component at its least id."""
    layers: dict[str, int] = {}
    for start in g.node_ids():
        if start in layers:
            continue
        layers[start] = 0
        queue = deque([start])
        while queue:
            nid = queue.popleft()
            for ref in g.ports(nid):
                other = g.partner(ref)
                if other is not None and other.node not in layers:
                    layers[other.node] = layers[nid] + 1
                    queue.append(other.node)
    return layers


def _graph_payload(session: Session) -> dict:
    g = session.graph
    layers = _bfs_layers(g)
    nodes = []
    for nid in g.node_ids():
        label = g.label(nid)
        nodes.append({
            "id": nid,
            "label": label,
            "class": g.node_class(nid),
            "ports": [p.text for p in g.sig.interface_of(label)],
            "layer": layers[nid],
        })
    return {
        "digest": digest(g),
        "normal_form": not enumerate_redexes(g, session.rules),
        "nodes": nodes,
        "edges": [e.to_pair() for e in g.sorted_edges()],
        "interface": [list(r) for r in g.interface()],
    }


def _redex_summaries(session: Session) -> list[dict]:
    out = []
    for index, redex in enumerate(enumerate_redexes(session.graph,
                                                    session.rules)):
        m = redex.morphism
        image = sorted(m.image_nodes(), key=node_key)
        covered = [e.to_pair() for e in session.graph.sorted_edges()
                   if all(end.node in m.image_nodes() for end in e.ends())]
        out.append({
            "index": index,
            "rule": redex.rule.name,
            "nodes": image,
            "morphism": m.to_json(),
            "highlight": {"nodes": image, "edges": covered},
        })
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="hoport", version="0.1.0")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    counter = itertools.count(1)

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, detail={"error": "unknown session",
                                             "id": session_id})
        return session

    @app.get("/fixtures")
    def list_fixtures() -> dict:
        return {"fixtures": sorted(fixture_data.fixture_bundles())}

    @app.post("/sessions", response_model=SessionCreated)
    def create_session(request: CreateSessionRequest):
        try:
            if request.fixture is not None:
                bundles = fixture_data.fixture_bundles()
                if request.fixture not in bundles:
                    raise HTTPException(400, detail={
                        "error": f"unknown fixture {request.fixture!r}",
                        "available": sorted(bundles)})
                bundle = bundles[request.fixture]
                graph, rules = bundle["graph"], bundle["rules"]
            elif request.graph is not None:
                sig = (PSignature.from_json(request.signature)
                       if request.signature else None)
                graph = PortGraph.from_json(request.graph, sig)
                rules = [Rule.from_json(doc, graph.sig)
                         for doc in request.rules]
            else:
                raise HTTPException(400, detail={
                    "error": "request must name a fixture or carry a graph"})
        except HoportError as exc:
            raise HTTPException(400, detail={"error": exc.to_json()})

        with registry_lock:
            session_id = f"s{next(counter)}"
            session = Session(
                id=session_id, graph=graph, rules=rules,
                fixture=request.fixture,
                derivation=Derivation(digest(graph), []))
            sessions[session_id] = session
        return SessionCreated(
            id=session_id, fixture=request.fixture,
            rules=[r.name for r in rules], graph=_graph_payload(session))

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            return _graph_payload(session)

    @app.get("/sessions/{session_id}/redexes", response_model=RedexList)
    def list_redexes(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return RedexList(digest=digest(session.graph),
                             redexes=_redex_summaries(session))

    @app.post("/sessions/{session_id}/apply", response_model=ApplyResult)
    def apply_step(session_id: str, request: ApplyRequest):
        session = get_session(session_id)
        with session.lock:
            current = digest(session.graph)
            if request.digest != current:
                raise HTTPException(409, detail={
                    "error": "stale digest: the graph changed since the "
                             "redex list was served",
                    "current": current})
            redexes = enumerate_redexes(session.graph, session.rules)
            if not 0 <= request.index < len(redexes):
                raise HTTPException(400, detail={
                    "error": f"redex index {request.index} out of range",
                    "available": len(redexes)})
            chosen = redexes[request.index]
            try:
                result, report = apply_with_report(
                    session.graph, chosen.rule, chosen.morphism)
            except HoportError as exc:
                raise HTTPException(400, detail={"error": exc.to_json()})
            session.history.append((session.graph, session.derivation))
            session.graph = result
            session.derivation = session.derivation.extended(
                chosen.rule, chosen.morphism, result)
            return ApplyResult(
                applied={"rule": chosen.rule.name, "index": request.index},
                diff=report.to_json(), graph=_graph_payload(session))

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            if not session.history:
                raise HTTPException(409, detail={
                    "error": "nothing to undo: history is empty"})
            session.graph, session.derivation = session.history.pop()
            return _graph_payload(session)

    @app.get("/sessions/{session_id}/derivation")
    def get_derivation(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            return session.derivation.to_json()

    static_dir = os.environ.get(
        "HOPORT_STATIC",
        str(Path(__file__).resolve().parents[2] / "frontend" / "static"))
    if Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")

    return app


app = create_app()
