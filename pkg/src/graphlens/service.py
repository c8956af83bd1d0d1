"""HTTP facade: graph uploads, schema inspection, sessions and operators.

Graphs are content-addressed and frozen on upload (the ingestion text is
kept alongside a binary index cache). Sessions hold a current state plus the
recorded navigation history; the history export on disk is the source of
truth, so a session survives restarts by replay. Operator calls on one
session are serialized by a per-session lock; distinct sessions and all
graph reads run concurrently.
"""

from __future__ import annotations

import hashlib
import json
import os
import pickle
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .core import LabeledGraph, parse_graph_text
from .errors import GraphLensError, UnknownGraph, UnknownSession
from .session import NavGraph, NavState, OpKind, expand, make_state, navigate, parse_history, select
from .views import full_weighted_json, gen_view, minimal_weighted_json


@dataclass
class ServiceConfig:
    data_dir: str = "graphlens_data"
    host: str = "127.0.0.1"
    port: int = 8000
    undirected_mode: bool = True
    entry_l_c: tuple[str, ...] = ()
    entry_l_b: tuple[str, ...] = ()


def _parse_bool(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


def load_config(path: str | None = None, env: dict | None = None) -> ServiceConfig:
    """Config file (JSON) first, then environment overrides."""
    env = dict(os.environ if env is None else env)
    cfg = ServiceConfig()
    path = path or env.get("GRAPHLENS_CONFIG")
    if path:
        data = json.loads(Path(path).read_text())
        cfg.data_dir = data.get("data_dir", cfg.data_dir)
        cfg.host = data.get("host", cfg.host)
        cfg.port = int(data.get("port", cfg.port))
        cfg.undirected_mode = bool(data.get("undirected_mode", cfg.undirected_mode))
        cfg.entry_l_c = tuple(data.get("entry_l_c", ()))
        cfg.entry_l_b = tuple(data.get("entry_l_b", ()))
    if "GRAPHLENS_DATA_DIR" in env:
        cfg.data_dir = env["GRAPHLENS_DATA_DIR"]
    if "GRAPHLENS_HOST" in env:
        cfg.host = env["GRAPHLENS_HOST"]
    if "GRAPHLENS_PORT" in env:
        cfg.port = int(env["GRAPHLENS_PORT"])
    if "GRAPHLENS_UNDIRECTED" in env:
        cfg.undirected_mode = _parse_bool(env["GRAPHLENS_UNDIRECTED"])
    if "GRAPHLENS_ENTRY_LC" in env:
        cfg.entry_l_c = tuple(x for x in env["GRAPHLENS_ENTRY_LC"].split(",") if x)
    if "GRAPHLENS_ENTRY_LB" in env:
        cfg.entry_l_b = tuple(x for x in env["GRAPHLENS_ENTRY_LB"].split(",") if x)
    return cfg


class GraphStore:
    """Frozen graphs on disk: ingestion text plus a pickled index cache."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, LabeledGraph] = {}
        self._lock = threading.Lock()

    def add_text(self, text: str) -> tuple[str, LabeledGraph]:
        graph_id = hashlib.sha256(text.encode()).hexdigest()[:12]
        with self._lock:
            if graph_id in self._cache:
                return graph_id, self._cache[graph_id]
            g = parse_graph_text(text)
            (self.root / f"{graph_id}.graph").write_text(text)
            (self.root / f"{graph_id}.idx").write_bytes(
                pickle.dumps(g, protocol=pickle.HIGHEST_PROTOCOL)
            )
            self._cache[graph_id] = g
            return graph_id, g

    def get(self, graph_id: str) -> LabeledGraph:
        with self._lock:
            if graph_id in self._cache:
                return self._cache[graph_id]
            idx = self.root / f"{graph_id}.idx"
            text = self.root / f"{graph_id}.graph"
            if idx.exists():
                g = pickle.loads(idx.read_bytes())
            elif text.exists():
                g = parse_graph_text(text.read_text())
            else:
                raise UnknownGraph(f"no graph {graph_id!r}")
            self._cache[graph_id] = g
            return g


@dataclass
class Session:
    id: str
    graph_id: str
    current: NavState
    nav: NavGraph
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Sessions snapshotted as history exports; state restores by replay."""

    def __init__(self, root: Path, graphs: GraphStore):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self.graphs = graphs
        self._cache: dict[str, Session] = {}
        self._lock = threading.Lock()
        existing = [int(p.stem[1:]) for p in self.root.glob("s*.session") if p.stem[1:].isdigit()]
        self._counter = max(existing, default=0)

    def create(self, graph_id: str, l_c: set[str], l_b: set[str]) -> Session:
        g = self.graphs.get(graph_id)
        entry = make_state(g, set(), l_c, l_b)
        with self._lock:
            self._counter += 1
            sid = f"s{self._counter:06d}"
            session = Session(id=sid, graph_id=graph_id, current=entry, nav=NavGraph(g, entry))
            self._cache[sid] = session
        self.persist(session)
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            if sid in self._cache:
                return self._cache[sid]
        path = self.root / f"{sid}.session"
        if not path.exists():
            raise UnknownSession(f"no session {sid!r}")
        lines = path.read_text().splitlines()
        if not lines or not lines[0].startswith("graph "):
            raise UnknownSession(f"session file for {sid!r} unreadable")
        graph_id = lines[0].split(" ", 1)[1]
        g = self.graphs.get(graph_id)
        nav = parse_history(g, "\n".join(lines[1:]) + "\n")
        session = Session(id=sid, graph_id=graph_id, current=nav.final_state(), nav=nav)
        with self._lock:
            self._cache.setdefault(sid, session)
            return self._cache[sid]

    def persist(self, session: Session) -> None:
        path = self.root / f"{session.id}.session"
        path.write_text(f"graph {session.graph_id}\n" + session.nav.export())


class SessionCreateBody(BaseModel):
    graph: str
    l_c: list[str] | None = None
    l_b: list[str] | None = None


class SelectBody(BaseModel):
    vertices: list[str]


class ExpandBody(BaseModel):
    l_c: list[str]


class NavigateBody(BaseModel):
    l_c: list[str]
    l_b: list[str]


_STATUS_BY_CODE = {
    "unknown_graph": 404,
    "unknown_session": 404,
}


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or load_config()
    data_dir = Path(config.data_dir)
    graphs = GraphStore(data_dir / "graphs")
    sessions = SessionStore(data_dir / "sessions", graphs)
    undirected = config.undirected_mode

    app = FastAPI(title="graphlens", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.config = config

    @app.exception_handler(GraphLensError)
    async def handle_domain_error(request: Request, exc: GraphLensError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    def view_response(session: Session, full: bool = False) -> Response:
        g = graphs.get(session.graph_id)
        s = session.current
        view = gen_view(g, s.filter_obj(), set(s.l_c), set(s.l_b), undirected=undirected)
        text = full_weighted_json(view) if full else minimal_weighted_json(view)
        return Response(content=text, media_type="application/json")

    @app.post("/graphs")
    async def create_graph(request: Request):
        text = (await request.body()).decode("utf-8")
        graph_id, g = graphs.add_text(text)
        return {
            "graph": graph_id,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "labels": len(g.labels),
            "dropped_self_loops": g.dropped_self_loops,
            "dropped_duplicate_edges": g.dropped_duplicate_edges,
        }

    @app.get("/graphs/{graph_id}/schema")
    def get_schema(graph_id: str):
        schema = graphs.get(graph_id).schema()
        return {
            "labels": sorted(schema.labels),
            "edges": [[a, b] for a, b in sorted(schema.edges)],
        }

    @app.post("/sessions")
    def create_session(body: SessionCreateBody):
        l_c = set(body.l_c) if body.l_c else set(config.entry_l_c)
        l_b = set(body.l_b) if body.l_b else set(config.entry_l_b)
        session = sessions.create(body.graph, l_c, l_b)
        return {
            "session": session.id,
            "graph": session.graph_id,
            "filter": sorted(session.current.filter),
            "l_c": sorted(session.current.l_c),
            "l_b": sorted(session.current.l_b),
        }

    def apply_operator(sid: str, op: OpKind, fn) -> Response:
        session = sessions.get(sid)
        with session.lock:
            g = graphs.get(session.graph_id)
            new_state = fn(g, session.current)
            session.nav.record_step(session.current, new_state, op)
            session.current = new_state
            sessions.persist(session)
            return view_response(session)

    @app.post("/sessions/{sid}/select")
    def do_select(sid: str, body: SelectBody):
        return apply_operator(
            sid,
            OpKind.SELECTION,
            lambda g, s: select(g, s, set(body.vertices), undirected=undirected),
        )

    @app.post("/sessions/{sid}/expand")
    def do_expand(sid: str, body: ExpandBody):
        return apply_operator(sid, OpKind.EXPANSION, lambda g, s: expand(g, s, set(body.l_c)))

    @app.post("/sessions/{sid}/navigate")
    def do_navigate(sid: str, body: NavigateBody):
        return apply_operator(
            sid, OpKind.NAVIGATION, lambda g, s: navigate(g, s, set(body.l_c), set(body.l_b))
        )

    @app.get("/sessions/{sid}/view")
    def get_view(sid: str, full: bool = False):
        session = sessions.get(sid)
        with session.lock:
            return view_response(session, full=full)

    @app.get("/sessions/{sid}/history")
    def get_history(sid: str):
        session = sessions.get(sid)
        with session.lock:
            return PlainTextResponse(session.nav.export())

    return app


def app_factory() -> FastAPI:
    """Entry point for `uvicorn --factory graphlens.service:app_factory`."""
    return create_app()
