"""Session-based game service for the interactive explorer.

Sessions live in memory; all game logic stays server-side.  Requests to
one session are serialized by a per-session lock, different sessions
proceed independently, and analysis is cached per canonical key through
the shared solver table.  Error bodies carry {code, message, detail}.
"""

from __future__ import annotations

import json
import secrets
import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import verify as vf
from .complexes import Complex, make_complex
from .errors import NotAFaceError, ParseError, TakeawayError, UnknownPresetError
from .reductions import find_binary_stars
from .solver import Solver


class ServiceError(TakeawayError):
    status = 400
    code = "bad-request"


class SessionNotFound(ServiceError):
    status = 404
    code = "unknown-session"


class IllegalMove(ServiceError):
    status = 409
    code = "illegal-move"


class SessionFinished(ServiceError):
    status = 409
    code = "session-finished"


class NothingToUndo(ServiceError):
    status = 409
    code = "nothing-to-undo"


class BadInput(ServiceError):
    status = 400
    code = "bad-input"


PLAYERS = ("A", "B")


@dataclass
class Session:
    id: str
    current: Complex
    engine_policy: str = "first-winning"
    to_move: str = "A"
    history: list[tuple[tuple[str, ...], Complex]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def finished(self) -> bool:
        return self.current.is_empty()

    @property
    def winner(self) -> str | None:
        if not self.finished:
            return None
        return PLAYERS[PLAYERS.index(self.to_move) ^ 1]

    def view(self) -> dict:
        faces = [list(self.current.face_names(m)) for m in self.current.faces()]
        return {
            "id": self.id,
            "vertices": list(self.current.vertices),
            "facets": [list(names) for names in self.current.facet_names()],
            "faces": faces,
            "to_move": self.to_move,
            "status": "finished" if self.finished else "in-progress",
            "winner": self.winner,
            "engine_policy": self.engine_policy,
            "history": [list(move) for move, _ in self.history],
        }

    def apply(self, face_names: list[str]) -> None:
        if self.finished:
            raise SessionFinished("the game is over; undo or start a new session")
        try:
            mask = self.current.as_mask(face_names)
        except NotAFaceError as exc:
            raise IllegalMove(str(exc)) from None
        if not self.current.has_face(mask):
            raise IllegalMove(
                f"{' '.join(face_names)} is not a legal move in this position"
            )
        before = self.current
        self.history.append((tuple(face_names), before))
        self.current = before.delete_cofaces(mask)
        self.to_move = PLAYERS[PLAYERS.index(self.to_move) ^ 1]

    def undo(self) -> None:
        if not self.history:
            raise NothingToUndo("no moves have been played")
        _, before = self.history.pop()
        self.current = before
        self.to_move = PLAYERS[PLAYERS.index(self.to_move) ^ 1]


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, position: Complex, engine_policy: str) -> Session:
        with self._lock:
            while True:
                sid = secrets.token_hex(8)
                if sid not in self._sessions:
                    break
            session = Session(id=sid, current=position, engine_policy=engine_policy)
            self._sessions[sid] = session
            return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise SessionNotFound(f"no session with id {sid!r}")
        return session

    def all(self) -> list[Session]:
        with self._lock:
            return list(self._sessions.values())


class CreateGameRequest(BaseModel):
    preset: str | None = None
    facets: list[list[str | int]] | None = None
    engine_policy: str = "first-winning"


class MoveRequest(BaseModel):
    face: list[str | int]


def create_app(solver: Solver | None = None,
               sessions_path: str | None = None) -> FastAPI:
    solver = solver or Solver()
    store = SessionStore()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if sessions_path:
            snapshot = {"sessions": [s.view() for s in store.all()]}
            Path(sessions_path).write_text(json.dumps(snapshot, indent=2))

    app = FastAPI(title="subset take-away service", lifespan=lifespan)

    @app.exception_handler(TakeawayError)
    async def on_error(request: Request, exc: TakeawayError):
        status = getattr(exc, "status", 400)
        code = getattr(exc, "code", "bad-request")
        return JSONResponse(
            status_code=status,
            content={"code": code, "message": str(exc), "detail": type(exc).__name__},
        )

    def build_position(req: CreateGameRequest) -> Complex:
        if (req.preset is None) == (req.facets is None):
            raise BadInput("provide exactly one of 'preset' or 'facets'")
        if req.preset is not None:
            try:
                return vf.preset(req.preset).complex
            except UnknownPresetError as exc:
                raise BadInput(str(exc)) from None
        try:
            return make_complex(req.facets or [])
        except (ValueError, ParseError) as exc:
            raise BadInput(str(exc)) from None

    @app.get("/health")
    async def health():
        return {"status": "ok", "table_entries": len(solver.table)}

    @app.get("/presets")
    async def presets():
        out = []
        for token in vf.preset_tokens():
            p = vf.preset(token)
            out.append({
                "name": p.name,
                "facets": [list(names) for names in p.complex.facet_names()],
                "vertices": list(p.complex.vertices),
                "claim": p.claim,
            })
        return {"presets": out}

    @app.post("/games", status_code=201)
    async def create_game(req: CreateGameRequest):
        if req.engine_policy not in ("first-winning", "stall"):
            raise BadInput(f"unknown engine policy {req.engine_policy!r}")
        position = build_position(req)
        session = store.create(position, req.engine_policy)
        return session.view()

    @app.get("/games/{sid}")
    async def fetch(sid: str):
        return store.get(sid).view()

    @app.post("/games/{sid}/moves")
    async def move(sid: str, req: MoveRequest):
        session = store.get(sid)
        with session.lock:
            session.apply([str(v) for v in req.face])
            return session.view()

    @app.post("/games/{sid}/engine-move")
    async def engine_move(sid: str):
        session = store.get(sid)
        with session.lock:
            if session.finished:
                raise SessionFinished("the game is over")
            mask = solver.best_move(session.current, session.engine_policy)
            assert mask is not None  # unfinished games always have a move
            names = list(session.current.face_names(mask))
            session.apply(names)
            return {"face": names, "session": session.view()}

    @app.post("/games/{sid}/undo")
    async def undo(sid: str):
        session = store.get(sid)
        with session.lock:
            session.undo()
            return session.view()

    @app.get("/games/{sid}/analysis")
    async def analysis(sid: str):
        session = store.get(sid)
        with session.lock:
            current = session.current
            moves = current.faces()
            winning = set(solver.winning_moves(current))
            grundy = solver.grundy(current)
            stars = find_binary_stars(current)
            return {
                "value": "WIN" if grundy else "LOSS",
                "grundy": grundy,
                "winning_moves": [list(current.face_names(m)) for m in moves if m in winning],
                "binary_stars": [
                    [current.vertices[s.x], current.vertices[s.y]] for s in stars
                ],
                "moves": [
                    {"face": list(current.face_names(m)), "winning": m in winning}
                    for m in moves
                ],
            }

    return app
