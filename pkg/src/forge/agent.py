"""Agent runtime: intent matching, state-machine sessions, WebSocket service.

Matching is deterministic token overlap: a message is scored against each
training sentence as ``|message tokens ∩ sentence tokens| / |sentence
tokens|``; an intent scores as its best sentence. Only intents named by the
current state's ``on`` transitions compete, ties go to declaration order,
and the default threshold is 0.6.

Wire protocol (JSON text frames on ``/ws``, one agent per path):

* server → client ``session_started`` / ``agent_reply``:
  ``{"type": ..., "session_id": ..., "state": ..., "replies": [...]}``
* client → server ``user_message``: ``{"type": "user_message",
  "session_id": ..., "text": ...}``
* any client frame that is not valid JSON, has an unknown type, is missing
  fields, or names a foreign session gets ``{"type": "error", "code":
  "E303", "message": ...}`` and the connection stays open.
"""

from __future__ import annotations

import json
import re
import uuid
from dataclasses import dataclass, field
from typing import Callable, Mapping, Protocol

from starlette.applications import Starlette
from starlette.requests import Request
from starlette.responses import JSONResponse
from starlette.routing import Route, WebSocketRoute
from starlette.websockets import WebSocket, WebSocketDisconnect

from .model import (
    AgentModel,
    Auto,
    CallMethod,
    Fallback,
    IntentDef,
    LlmReply,
    Model,
    OnIntent,
    SayText,
    StateDef,
    normalize_identifier,
)
from .serving import ServiceHandle, start_app

DEFAULT_THRESHOLD = 0.6
AUTO_HOP_LIMIT = 16
LOOP_GUARD_REPLY = "error[E302]: auto-transition limit exceeded"
NO_MATCH_REPLY = "Sorry, I didn't understand."

_NON_ALNUM_RE = re.compile(r"[^0-9a-z]+")


class LlmResponder(Protocol):
    def respond(self, prompt: str, user_text: str) -> str: ...


class StubResponder:
    """Deterministic stand-in for a language model; echoes its inputs."""

    def respond(self, prompt: str, user_text: str) -> str:
        return f"[[llm:{prompt}|{user_text}]]"


ActionHandler = Callable[["AgentSession", str], str]
ActionRegistry = Mapping[str, ActionHandler]  # keyed "Entity.method"


@dataclass
class AgentSession:
    session_id: str
    current_state: str
    transcript: list[tuple[str, str]] = field(default_factory=list)  # ("in"|"out", text)


def normalize_tokens(text: str) -> set[str]:
    """Lowercase, strip non-alphanumerics, split, dedupe."""
    return set(_NON_ALNUM_RE.sub(" ", text.lower()).split())


def match_intent(
    text: str, intents: list[IntentDef] | tuple[IntentDef, ...], threshold: float
) -> tuple[str, float] | None:
    """Best intent for ``text`` with score >= threshold, or None.

    Ties are broken by position in ``intents``; sentences whose token set is
    empty never match.
    """
    message_tokens = normalize_tokens(text)
    if not message_tokens:
        return None
    best: tuple[str, float] | None = None
    for intent in intents:
        score = 0.0
        for sentence in intent.sentences:
            sentence_tokens = normalize_tokens(sentence)
            if not sentence_tokens:
                continue
            overlap = len(message_tokens & sentence_tokens) / len(sentence_tokens)
            score = max(score, overlap)
        if score >= threshold and (best is None or score > best[1]):
            best = (intent.name, score)
    return best


def _execute_actions(
    agent: AgentModel,
    session: AgentSession,
    state: StateDef,
    responder: LlmResponder,
    registry: ActionRegistry,
    user_text: str,
    replies: list[str],
) -> None:
    for action in state.actions:
        if isinstance(action, SayText):
            replies.append(action.text)
        elif isinstance(action, LlmReply):
            replies.append(responder.respond(action.prompt, user_text))
        elif isinstance(action, CallMethod):
            key = f"{action.entity}.{action.method}"
            handler = registry.get(key)
            replies.append(handler(session, user_text) if handler else f"[[unbound:{key}]]")


def _auto_target(state: StateDef) -> str | None:
    for trans in state.transitions:
        if isinstance(trans.trigger, Auto):
            return trans.target
    return None


def _enter_state(
    agent: AgentModel,
    session: AgentSession,
    state: StateDef,
    responder: LlmResponder,
    registry: ActionRegistry,
    user_text: str,
) -> list[str]:
    """Execute a state's actions, then chase auto transitions up to the hop limit."""
    replies: list[str] = []
    session.current_state = state.name
    _execute_actions(agent, session, state, responder, registry, user_text, replies)
    hops = 0
    while True:
        target = _auto_target(state)
        if target is None:
            break
        hops += 1
        if hops > AUTO_HOP_LIMIT:
            replies.append(LOOP_GUARD_REPLY)
            break
        state = agent.state(target)
        assert state is not None, "checker guarantees transition targets"
        session.current_state = state.name
        _execute_actions(agent, session, state, responder, registry, user_text, replies)
    return replies


def start_session(
    agent: AgentModel, responder: LlmResponder, registry: ActionRegistry
) -> tuple[AgentSession, list[str]]:
    """Fresh session in the agent's initial state, with the entry replies."""
    initial = agent.initial_state()
    if initial is None:
        raise ValueError(f"agent {agent.name!r} has no initial state")
    session = AgentSession(session_id=str(uuid.uuid4()), current_state=initial.name)
    replies = _enter_state(agent, session, initial, responder, registry, "")
    for reply in replies:
        session.transcript.append(("out", reply))
    return session, replies


def handle_message(
    session: AgentSession,
    text: str,
    agent: AgentModel,
    responder: LlmResponder,
    registry: ActionRegistry,
    threshold: float = DEFAULT_THRESHOLD,
) -> tuple[list[str], str]:
    """Route one user message through the current state's transitions."""
    state = agent.state(session.current_state)
    assert state is not None, "session state always names a declared state"
    session.transcript.append(("in", text))

    on_targets: dict[str, str] = {}
    for trans in state.transitions:
        if isinstance(trans.trigger, OnIntent) and trans.trigger.intent not in on_targets:
            on_targets[trans.trigger.intent] = trans.target
    candidates = [intent for intent in agent.intents if intent.name in on_targets]

    target: str | None = None
    match = match_intent(text, candidates, threshold)
    if match is not None:
        target = on_targets[match[0]]
    else:
        for trans in state.transitions:
            if isinstance(trans.trigger, Fallback):
                target = trans.target
                break

    if target is None:
        replies = [NO_MATCH_REPLY]
    else:
        next_state = agent.state(target)
        assert next_state is not None
        replies = _enter_state(agent, session, next_state, responder, registry, text)
    for reply in replies:
        session.transcript.append(("out", reply))
    return replies, session.current_state


# --- WebSocket service ----------------------------------------------------

def _error_frame(message: str) -> dict:
    return {"type": "error", "code": "E303", "message": message}


def build_agent_app(
    agents: list[AgentModel] | tuple[AgentModel, ...],
    responder: LlmResponder,
    registry: ActionRegistry,
    threshold: float = DEFAULT_THRESHOLD,
) -> Starlette:
    """WS chat service: one endpoint per agent at ``/ws/<agent_snake_name>``.

    When exactly one agent is served, ``/ws`` answers as well.
    """
    if not agents:
        raise ValueError("at least one agent is required")

    def ws_endpoint(agent: AgentModel):
        async def endpoint(ws: WebSocket) -> None:
            await ws.accept()
            session, replies = start_session(agent, responder, registry)
            await ws.send_text(
                json.dumps(
                    {
                        "type": "session_started",
                        "session_id": session.session_id,
                        "state": session.current_state,
                        "replies": replies,
                    }
                )
            )
            while True:
                try:
                    raw = await ws.receive_text()
                except WebSocketDisconnect:
                    return
                try:
                    frame = json.loads(raw)
                except ValueError:
                    await ws.send_text(json.dumps(_error_frame("frame is not valid JSON")))
                    continue
                if not isinstance(frame, dict) or frame.get("type") != "user_message":
                    await ws.send_text(json.dumps(_error_frame("unknown message type")))
                    continue
                if frame.get("session_id") != session.session_id:
                    await ws.send_text(json.dumps(_error_frame("unknown session_id")))
                    continue
                text = frame.get("text")
                if not isinstance(text, str):
                    await ws.send_text(json.dumps(_error_frame("user_message requires a text field")))
                    continue
                replies, state = handle_message(session, text, agent, responder, registry, threshold)
                await ws.send_text(
                    json.dumps(
                        {
                            "type": "agent_reply",
                            "session_id": session.session_id,
                            "state": state,
                            "replies": replies,
                        }
                    )
                )

        return endpoint

    async def healthz(request: Request) -> JSONResponse:
        return JSONResponse({"status": "ok"})

    routes: list = [Route("/healthz", healthz, methods=["GET"])]
    for agent in agents:
        routes.append(WebSocketRoute(f"/ws/{normalize_identifier(agent.name)}", ws_endpoint(agent)))
    if len(agents) == 1:
        routes.append(WebSocketRoute("/ws", ws_endpoint(agents[0])))
    return Starlette(routes=routes)


def serve_agent(
    agent: AgentModel,
    responder: LlmResponder,
    registry: ActionRegistry,
    port: int,
    threshold: float = DEFAULT_THRESHOLD,
    host: str = "127.0.0.1",
) -> ServiceHandle:
    """Serve one agent's chat endpoint at ``/ws`` on ``port``."""
    return start_app(build_agent_app([agent], responder, registry, threshold), host=host, port=port)


def serve_model_agents(
    model: Model,
    port: int,
    responder: LlmResponder | None = None,
    registry: ActionRegistry | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    host: str = "127.0.0.1",
) -> ServiceHandle:
    """Serve every agent in the model on one port (used by generated bundles)."""
    if not model.agents:
        raise ValueError("model has no agents")
    app = build_agent_app(list(model.agents), responder or StubResponder(), registry or {}, threshold)
    return start_app(app, host=host, port=port)
