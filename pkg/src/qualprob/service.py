"""Incremental elicitation sessions over HTTP.

State is event-sourced: every session is an append-only journal of
assert/retract records, and replaying a journal reproduces the derived
state and every query answer exactly (timestamps are recorded but never
influence state).  The HTTP layer is a thin FastAPI wrapper over the
framework-free SessionStore so tests can drive sessions in-process.

Journal grammar, one record per line:

    space worlds: w1 w2 w3
    assert j1 2026-08-19T10:00:00+00:00 w1 > w2
    retract r1 2026-08-19T10:00:05+00:00 j1
"""

import re
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .algebra import AlgebraError, SentenceSyntaxError, Space, UnknownAtom, parse_event
from .axioms import check_partial
from .credal import CredalSet, ZeroProbabilityConditioner, bounds as credal_bounds, cond_bounds, entails
from .ordering import Judgment, PartialOrdering, Relation
from .realize import NonRealizable, Realization, realize_partial


@dataclass(frozen=True)
class ServiceConfig:
    journal_dir: Optional[str] = None
    world_cap: int = 10
    # origins allowed to call from a browser; empty means same-origin only
    allow_origins: tuple = ()
    # directory of static assets to serve beside the API, if any
    static_dir: Optional[str] = None


class SessionError(Exception):
    def __init__(self, status: int, code: str, message: str, offset: Optional[int] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.offset = offset

    def payload(self) -> dict:
        body = {"error": self.code, "message": self.message}
        if self.offset is not None:
            body["offset"] = self.offset
        return body


_SPACE_RE = re.compile(r"^(atoms|worlds):\s*(.+)$")
_REL_RE = re.compile(r"<=|>=|[=<>]")
_WIRE_RELS = {">": Relation.GT, ">=": Relation.GE, "=": Relation.EQ}


def _parse_space_spec(spec: str, world_cap: int) -> Space:
    m = _SPACE_RE.match(spec.strip())
    if not m:
        raise SessionError(400, "invalid_space", "expected 'worlds: ...' or 'atoms: ...'")
    try:
        space = Space(m.group(1), tuple(m.group(2).split()))
    except AlgebraError as err:
        raise SessionError(400, "invalid_space", str(err)) from err
    if space.world_count > world_cap:
        raise SessionError(
            400, "world_cap_exceeded",
            f"{space.world_count} worlds exceeds the session cap of {world_cap}",
        )
    return space


def _parse_sentence(space: Space, text: str, which: str):
    try:
        return parse_event(space, text)
    except SentenceSyntaxError as err:
        raise SessionError(400, "parse_error", f"{which}: {err.message}", err.offset) from err
    except UnknownAtom as err:
        raise SessionError(400, "parse_error", f"{which}: unknown atom '{err.name}'", err.offset) from err


def _a3_trivial(lhs, rel: Relation, rhs) -> bool:
    """Flags judgments no ordering with default certainty sets can honor:
    something strictly above T, F strictly above something, or T = F."""
    if rel == Relation.GT and (rhs.is_top or lhs.is_bottom):
        return True
    if rel == Relation.EQ:
        return (lhs.is_top and rhs.is_bottom) or (lhs.is_bottom and rhs.is_top)
    return False


@dataclass
class _Record:
    kind: str  # "assert" | "retract"
    rid: str
    ts: str
    lhs_text: str = ""
    rel: str = ""
    rhs_text: str = ""
    target: str = ""


class Session:
    """One believer's evolving judgment set; all mutations serialized."""

    def __init__(self, sid: str, space: Space, space_line: str, journal_path: Optional[Path]):
        self.id = sid
        self.space = space
        self._space_line = space_line
        self._journal_path = journal_path
        self._records: list[_Record] = []
        self._active: dict[str, Judgment] = {}
        self._texts: dict[str, tuple[str, str, str]] = {}
        self._asserts = 0
        self._retracts = 0
        self._lock = threading.Lock()
        self._outcome_rev = -1
        self._outcome = None
        if journal_path is not None and not journal_path.exists():
            journal_path.write_text(space_line + "\n", encoding="utf-8")

    # --- journal plumbing ---------------------------------------------------

    @property
    def revision(self) -> int:
        return len(self._records)

    def _append(self, record: _Record, line: str) -> None:
        self._records.append(record)
        if self._journal_path is not None:
            with self._journal_path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def journal_lines(self) -> list[str]:
        lines = [self._space_line]
        for r in self._records:
            if r.kind == "assert":
                lines.append(f"assert {r.rid} {r.ts} {r.lhs_text} {r.rel} {r.rhs_text}")
            else:
                lines.append(f"retract {r.rid} {r.ts} {r.target}")
        return lines

    # --- derived state --------------------------------------------------------

    def _partial(self) -> PartialOrdering:
        return PartialOrdering(self.space, tuple(self._active.values()))

    def _realize(self):
        if self._outcome_rev != self.revision:
            self._outcome = realize_partial(self._partial())
            self._outcome_rev = self.revision
        return self._outcome

    def _minimal_conflict(self, outcome: NonRealizable) -> list[str]:
        """Deletion filtering over the Farkas support: drop members whose
        removal keeps the rest inconsistent."""
        support = [j.id for j in outcome.conflict]
        keep = list(support)
        for jid in support:
            trial = [self._active[k] for k in keep if k != jid]
            if isinstance(realize_partial(PartialOrdering(self.space, tuple(trial))), NonRealizable):
                keep.remove(jid)
        return keep

    def _status_delta(self, judgment_id: Optional[str] = None, a3_flag: bool = False) -> dict:
        outcome = self._realize()
        delta = {
            "revision": self.revision,
            "consistent": isinstance(outcome, Realization),
        }
        if judgment_id is not None:
            delta["judgment_id"] = judgment_id
        if isinstance(outcome, Realization):
            delta["margin"] = str(outcome.margin)
            delta["conflict"] = None
        else:
            delta["margin"] = None
            delta["conflict"] = self._minimal_conflict(outcome)
        if a3_flag:
            delta["a3_trivial"] = True
        return delta

    # --- mutations ------------------------------------------------------------

    def assert_judgment(self, lhs_text: str, rel_text: str, rhs_text: str, ts: Optional[str] = None) -> dict:
        if rel_text not in _WIRE_RELS:
            raise SessionError(400, "invalid_relation", "rel must be one of > >= =")
        with self._lock:
            lhs = _parse_sentence(self.space, lhs_text, "lhs")
            rhs = _parse_sentence(self.space, rhs_text, "rhs")
            rel = _WIRE_RELS[rel_text]
            self._asserts += 1
            jid = f"j{self._asserts}"
            stamp = ts or datetime.now(timezone.utc).isoformat()
            lhs_text = " ".join(lhs_text.split())
            rhs_text = " ".join(rhs_text.split())
            record = _Record("assert", jid, stamp, lhs_text, rel_text, rhs_text)
            self._append(record, f"assert {jid} {stamp} {lhs_text} {rel_text} {rhs_text}")
            self._active[jid] = Judgment(lhs, rel, rhs, jid)
            self._texts[jid] = (lhs_text, rel_text, rhs_text)
            return self._status_delta(jid, a3_flag=_a3_trivial(lhs, rel, rhs))

    def retract_judgment(self, jid: str, ts: Optional[str] = None) -> dict:
        with self._lock:
            if jid not in self._texts:
                raise SessionError(404, "unknown_judgment", f"no judgment {jid}")
            if jid not in self._active:
                raise SessionError(409, "already_retracted", f"judgment {jid} was already retracted")
            self._retracts += 1
            rid = f"r{self._retracts}"
            stamp = ts or datetime.now(timezone.utc).isoformat()
            record = _Record("retract", rid, stamp, target=jid)
            self._append(record, f"retract {rid} {stamp} {jid}")
            del self._active[jid]
            return self._status_delta()

    # --- queries ---------------------------------------------------------------

    def status(self) -> dict:
        with self._lock:
            delta = self._status_delta()
            delta["judgments"] = [
                {"id": jid, "lhs": t[0], "rel": t[1], "rhs": t[2]}
                for jid, t in self._texts.items()
                if jid in self._active
            ]
            return delta

    def report(self) -> dict:
        with self._lock:
            rep = check_partial(self._partial())
            verdict = rep.verdicts["A1"]
            out = {
                "revision": self.revision,
                "verdicts": {
                    "A1": {
                        "passed": verdict.passed,
                        "witness": None
                        if verdict.witness is None
                        else {
                            "events": [e.label() for e in verdict.witness.events],
                            "detail": verdict.witness.detail,
                        },
                        "note": verdict.note,
                    }
                },
                "coverage": str(rep.coverage),
            }
            return out

    def realization(self) -> dict:
        with self._lock:
            outcome = self._realize()
            if isinstance(outcome, NonRealizable):
                raise SessionError(409, "inconsistent_session", "no distribution honors the judgments")
            d = outcome.distribution
            return {
                "revision": self.revision,
                "distribution": {
                    self.space.world_label(i): str(mass) for i, mass in enumerate(d.masses)
                },
                "margin": str(outcome.margin),
            }

    def _consistent_credal(self) -> CredalSet:
        if isinstance(self._realize(), NonRealizable):
            raise SessionError(409, "inconsistent_session", "session is inconsistent; retract something first")
        return CredalSet(self.space, self._partial())

    def entails(self, lhs_text: str, rhs_text: str) -> dict:
        with self._lock:
            cs = self._consistent_credal()
            lhs = _parse_sentence(self.space, lhs_text, "lhs")
            rhs = _parse_sentence(self.space, rhs_text, "rhs")
            got = entails(cs, lhs, rhs)
            out = {"revision": self.revision, "always": got.always}
            out["witness"] = (
                None
                if got.witness is None
                else {
                    self.space.world_label(i): str(m)
                    for i, m in enumerate(got.witness.masses)
                }
            )
            return out

    def bounds(self, event_text: str, given_text: Optional[str] = None) -> dict:
        with self._lock:
            cs = self._consistent_credal()
            event = _parse_sentence(self.space, event_text, "event")
            if given_text is None:
                b = credal_bounds(cs, event)
            else:
                given = _parse_sentence(self.space, given_text, "given")
                try:
                    b = cond_bounds(cs, event, given)
                except ZeroProbabilityConditioner as err:
                    raise SessionError(400, "zero_probability_conditioner", str(err)) from err
            return {
                "revision": self.revision,
                "lower": str(b.lower),
                "upper": str(b.upper),
                "attained_lower": b.attained_lower,
                "attained_upper": b.attained_upper,
            }


def replay_journal(sid: str, text: str, world_cap: int = 10) -> Session:
    """Rebuild a session from journal text; timestamps are carried through
    but contribute nothing to state."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("space "):
        raise SessionError(400, "bad_journal", "journal must start with a space record")
    space = _parse_space_spec(lines[0][len("space "):], world_cap)
    session = Session(sid, space, lines[0], None)
    for ln in lines[1:]:
        parts = ln.split(" ", 3)
        if len(parts) < 4 or parts[0] not in ("assert", "retract"):
            raise SessionError(400, "bad_journal", f"unreadable journal record: {ln!r}")
        kind, rid, ts, rest = parts
        if kind == "assert":
            m = _REL_RE.search(rest)
            if not m or m.group(0) not in _WIRE_RELS:
                raise SessionError(400, "bad_journal", f"unreadable judgment: {rest!r}")
            session.assert_judgment(rest[: m.start()].strip(), m.group(0), rest[m.end():].strip(), ts=ts)
        else:
            session.retract_judgment(rest.strip(), ts=ts)
    return session


class SessionStore:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        if config.journal_dir:
            root = Path(config.journal_dir)
            root.mkdir(parents=True, exist_ok=True)
            for path in sorted(root.glob("*.journal")):
                sid = path.stem
                restored = replay_journal(sid, path.read_text(encoding="utf-8"), config.world_cap)
                restored._journal_path = path
                self._sessions[sid] = restored

    def create(self, space_spec: str) -> Session:
        space = _parse_space_spec(space_spec, self.config.world_cap)
        sid = uuid.uuid4().hex[:16]
        space_line = f"space {space.mode}: {' '.join(space.names)}"
        path = None
        if self.config.journal_dir:
            path = Path(self.config.journal_dir) / f"{sid}.journal"
        session = Session(sid, space, space_line, path)
        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise SessionError(404, "unknown_session", f"no session {sid}")
        return session


def create_app(config: Optional[ServiceConfig] = None):
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse
    from pydantic import BaseModel

    store = SessionStore(config or ServiceConfig())
    app = FastAPI(title="qualprob sessions", version="1")
    app.state.store = store

    if store.config.allow_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(store.config.allow_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    class SpaceIn(BaseModel):
        space: str

    class JudgmentIn(BaseModel):
        lhs: str
        rel: str
        rhs: str

    @app.exception_handler(SessionError)
    async def _session_error(_request: Request, err: SessionError):
        return JSONResponse(status_code=err.status, content=err.payload())

    @app.post("/v1/sessions")
    def create_session(body: SpaceIn):
        session = store.create(body.space)
        return {"id": session.id, "revision": session.revision, "consistent": True}

    @app.post("/v1/sessions/{sid}/judgments")
    def assert_judgment(sid: str, body: JudgmentIn):
        return store.get(sid).assert_judgment(body.lhs, body.rel, body.rhs)

    @app.delete("/v1/sessions/{sid}/judgments/{jid}")
    def retract_judgment(sid: str, jid: str):
        return store.get(sid).retract_judgment(jid)

    @app.get("/v1/sessions/{sid}/status")
    def status(sid: str):
        return store.get(sid).status()

    @app.get("/v1/sessions/{sid}/report")
    def report(sid: str):
        return store.get(sid).report()

    @app.get("/v1/sessions/{sid}/realization")
    def realization(sid: str):
        return store.get(sid).realization()

    @app.get("/v1/sessions/{sid}/entails")
    def entails_query(sid: str, lhs: str, rhs: str):
        return store.get(sid).entails(lhs, rhs)

    @app.get("/v1/sessions/{sid}/bounds")
    def bounds_query(sid: str, event: str, given: Optional[str] = None):
        return store.get(sid).bounds(event, given)

    if store.config.static_dir:
        from fastapi.staticfiles import StaticFiles

        # registered last so /v1/* keeps routing to the handlers above
        app.mount("/", StaticFiles(directory=store.config.static_dir, html=True))

    return app
