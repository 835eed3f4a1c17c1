"""HTTP + WebSocket gateway in front of the pipeline and runtimes.

One writer per session: every mutating request takes the session lock.
Malformed bodies become 4xx responses; provider hard failures surface as
502 with the fizzle fallback still in the body, so a client always gets
an executable script.
"""

from __future__ import annotations

import asyncio
import logging

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from spellforge.battle import instantiate, step
from spellforge.dsl import canonicalize, parse_rule, parse_spell
from spellforge.pipeline import (
    CorruptorProvider,
    EchoDslProvider,
    PromptSpec,
    RetryPolicy,
    build_prompt,
    generate,
    load_provider_configs,
)
from spellforge.pipeline.mocks import AlwaysFailProvider, GameMockProvider
from spellforge.sandbox import grid_hash, snapshot, tick

from .sessions import MODES, Session, SessionStore

log = logging.getLogger("spellforge.service")

CAST_MAX_TICKS = 600
DEFAULT_FRAME_RATE = 30.0


class CreateSession(BaseModel):
    mode: str
    provider: str = "mock"


class CastRequest(BaseModel):
    description: str = Field(min_length=1)


def _provider_registry(provider_config_path: str | None):
    providers = {
        "mock": GameMockProvider,
        "echo-dsl": EchoDslProvider,
        "corrupt": lambda: CorruptorProvider(GameMockProvider(), rate=1.0, modes=("truncate",), seed=1),
        "fail": AlwaysFailProvider,
    }
    if provider_config_path:
        from spellforge.pipeline import HttpProvider

        for name, config in load_provider_configs(provider_config_path).items():
            providers[name] = (lambda cfg: (lambda: HttpProvider(cfg)))(config)
    return providers


def create_app(provider_config_path: str | None = None) -> FastAPI:
    app = FastAPI(title="spellforge gateway")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()
    providers = _provider_registry(provider_config_path)
    app.state.sessions = store

    @app.middleware("http")
    async def request_log(request, call_next):
        response = await call_next(request)
        log.info("%s %s -> %s", request.method, request.url.path, response.status_code)
        return response

    def session_or_none(session_id: str) -> Session | None:
        return store.get(session_id)

    @app.post("/api/session", status_code=201)
    async def create_session(body: CreateSession):
        if body.mode not in MODES:
            return JSONResponse(status_code=400, content={"error": f"unknown mode {body.mode!r}"})
        factory = providers.get(body.provider)
        if factory is None:
            return JSONResponse(status_code=400, content={"error": f"unknown provider {body.provider!r}"})
        session = store.create(body.mode, body.provider, factory())
        return {"session_id": session.session_id, "mode": session.mode, "provider": session.provider_name}

    @app.post("/api/session/{session_id}/cast")
    async def cast(session_id: str, body: CastRequest):
        session = session_or_none(session_id)
        if session is None or session.mode != "battle":
            return JSONResponse(status_code=404, content={"error": "no such battle session"})
        async with session.lock:
            session.touch()
            world = session.world
            prompt = build_prompt(
                PromptSpec(
                    task="spell",
                    shot_strategy="few",
                    cot=False,
                    dynamic_context=session.elements,
                    user_input=body.description,
                )
            )
            response = await asyncio.to_thread(generate, session.provider, prompt, RetryPolicy(backoff_base=0.05))
            script, report = parse_spell(response.raw_text, session.elements)
            trace_start = len(world.trace)
            instantiate(script, world.casters[0], world)
            ticks = 0
            while ticks < CAST_MAX_TICKS and world.live_count() > 0:
                step(world)
                ticks += 1
            payload = {
                "script": canonicalize(script),
                "validation": report.to_dict(),
                "trace": [e.to_dict() for e in world.trace.since(trace_start)],
                "casters": [
                    {"x": c.x, "y": c.y, "team": c.team, "health": c.health, "mana": c.mana}
                    for c in world.casters
                ],
            }
            status = 502 if response.failed else 200
            return JSONResponse(status_code=status, content=payload)

    @app.post("/api/session/{session_id}/material")
    async def material(session_id: str, body: CastRequest):
        session = session_or_none(session_id)
        if session is None or session.mode != "alchemy":
            return JSONResponse(status_code=404, content={"error": "no such alchemy session"})
        async with session.lock:
            session.touch()
            registry = session.registry
            prompt = build_prompt(
                PromptSpec(
                    task="automata",
                    shot_strategy="few",
                    cot=False,
                    dynamic_context=registry.rules(),
                    user_input=body.description,
                )
            )
            response = await asyncio.to_thread(generate, session.provider, prompt, RetryPolicy(backoff_base=0.05))
            rule, report = parse_rule(response.raw_text, registry.names)
            installed = False
            if not response.failed and report.outcome in ("accepted", "repaired"):
                registry.register(rule)
                installed = True
            payload = {
                "rule": canonicalize(rule) if installed else None,
                "validation": report.to_dict(),
                "installed": installed,
                "palette": registry.palette(),
            }
            return JSONResponse(status_code=502 if response.failed else 200, content=payload)

    @app.websocket("/api/session/{session_id}/frames")
    async def frames(ws: WebSocket, session_id: str):
        session = store.get(session_id)
        if session is None:
            await ws.close(code=4404)
            return
        await ws.accept()
        rate = DEFAULT_FRAME_RATE
        battle_cursor = len(session.world.trace) if session.mode == "battle" else 0
        try:
            while True:
                if store.get(session_id) is None:
                    await ws.close(code=4408)  # idle expiry
                    return
                timeout = (1.0 / rate) if rate > 0 else None
                try:
                    message = await asyncio.wait_for(ws.receive_json(), timeout=timeout)
                except asyncio.TimeoutError:
                    message = None
                if message is not None:
                    session.touch()
                    if "set_rate" in message:
                        rate = max(0.0, float(message["set_rate"]))
                        continue
                    if "paint" in message and session.mode == "alchemy":
                        spec = message["paint"]
                        async with session.lock:
                            session.grid.paint(
                                int(spec["x"]),
                                int(spec["y"]),
                                session.registry.type_id(str(spec.get("material", "air"))),
                                radius=int(spec.get("radius", 0)),
                            )
                        continue
                    if "fire_button" in message and session.mode == "battle":
                        from spellforge.battle import fire_trigger

                        async with session.lock:
                            world = session.world
                            holders = [e for e in sorted(world.entities) if world.has(e, "buttonTrigger")]
                            for eid in holders:
                                fire_trigger(world, eid, "buttonTrigger")
                        continue
                    continue
                if rate <= 0:
                    continue
                async with session.lock:
                    if session.mode == "alchemy":
                        tick(session.grid, session.registry, session.rng)
                        frame = snapshot(session.grid, session.registry)
                        frame["tick"] = session.grid.tick_count
                        frame["digest"] = f"{grid_hash(session.grid):016x}"
                        await ws.send_json(frame)
                    else:
                        world = session.world
                        if world.live_count() > 0:
                            step(world)
                        events = [e.to_dict() for e in world.trace.since(battle_cursor)]
                        battle_cursor = len(world.trace)
                        await ws.send_json({"tick": world.tick, "events": events})
        except WebSocketDisconnect:
            return

    return app
