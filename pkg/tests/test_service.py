from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from spellforge.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def open_session(client, mode="alchemy", provider="mock") -> str:
    response = client.post("/api/session", json={"mode": mode, "provider": provider})
    assert response.status_code == 201, response.text
    return response.json()["session_id"]


class TestSessionLifecycle:
    def test_create_alchemy(self, client):
        response = client.post("/api/session", json={"mode": "alchemy", "provider": "mock"})
        assert response.status_code == 201
        body = response.json()
        assert len(body["session_id"]) == 32  # 128-bit hex

    def test_create_battle_default_provider(self, client):
        response = client.post("/api/session", json={"mode": "battle"})
        assert response.status_code == 201

    def test_unknown_mode_rejected(self, client):
        assert client.post("/api/session", json={"mode": "x"}).status_code == 400

    def test_unknown_provider_rejected(self, client):
        assert client.post("/api/session", json={"mode": "battle", "provider": "nope"}).status_code == 400

    def test_sessions_isolated(self, client):
        a = open_session(client, "alchemy")
        b = open_session(client, "alchemy")
        client.post(f"/api/session/{a}/material", json={"description": "a cloudy gas that diffuses randomly"})
        app_sessions = client.app.state.sessions
        assert len(app_sessions.get(a).registry) == 2
        assert len(app_sessions.get(b).registry) == 1

    def test_expired_session_404(self, client):
        sid = open_session(client, "battle")
        session = client.app.state.sessions.get(sid)
        session.last_touch -= 31 * 60
        response = client.post(f"/api/session/{sid}/cast", json={"description": "spark"})
        assert response.status_code == 404


class TestCast:
    def test_wind_scout_fixture(self, client, wind_scout_canonical):
        sid = open_session(client, "battle")
        response = client.post(
            f"/api/session/{sid}/cast",
            json={"description": "A controllable wind pixie that warps me when I call"},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["script"] == wind_scout_canonical
        assert body["validation"]["outcome"] == "accepted"
        kinds = [e["event_kind"] for e in body["trace"]]
        assert "spawn" in kinds

    def test_empty_description_422(self, client):
        sid = open_session(client, "battle")
        assert client.post(f"/api/session/{sid}/cast", json={"description": ""}).status_code == 422

    def test_malformed_body_4xx_never_crash(self, client):
        sid = open_session(client, "battle")
        response = client.post(
            f"/api/session/{sid}/cast",
            content=b"\x00\xff{not json",
            headers={"content-type": "application/json"},
        )
        assert 400 <= response.status_code < 500

    def test_corrupted_provider_output_fizzles_gracefully(self, client, fizzle_canonical):
        sid = open_session(client, "battle", provider="corrupt")
        response = client.post(f"/api/session/{sid}/cast", json={"description": "some grand spell"})
        assert response.status_code == 200
        body = response.json()
        assert body["validation"]["outcome"] == "fizzled"
        assert body["script"] == fizzle_canonical
        assert all(e["event_kind"] != "damage" for e in body["trace"])

    def test_provider_hard_failure_502_with_fizzle(self, client, fizzle_canonical):
        sid = open_session(client, "battle", provider="fail")
        response = client.post(f"/api/session/{sid}/cast", json={"description": "anything"})
        assert response.status_code == 502
        assert response.json()["script"] == fizzle_canonical

    def test_cast_on_alchemy_session_404(self, client):
        sid = open_session(client, "alchemy")
        assert client.post(f"/api/session/{sid}/cast", json={"description": "x"}).status_code == 404


class TestMaterial:
    def test_gas_fixture_installed(self, client, gas_canonical):
        sid = open_session(client, "alchemy")
        response = client.post(
            f"/api/session/{sid}/material", json={"description": "a cloudy gas that diffuses randomly"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["installed"] is True
        assert body["rule"] == gas_canonical
        assert body["palette"]["gas"] == "#CCCCCC"

    def test_duplicate_name_updates_in_place(self, client):
        sid = open_session(client, "alchemy")
        first = client.post(f"/api/session/{sid}/material", json={"description": "a cloudy gas that diffuses randomly"})
        assert first.json()["installed"]
        size = len(first.json()["palette"])
        again = client.post(f"/api/session/{sid}/material", json={"description": "a cloudy gas that diffuses randomly"})
        assert len(again.json()["palette"]) == size

    def test_rejected_rule_not_installed(self, client):
        sid = open_session(client, "alchemy", provider="corrupt")
        response = client.post(f"/api/session/{sid}/material", json={"description": "some dust"})
        assert response.status_code == 200
        body = response.json()
        assert body["validation"]["outcome"] == "fizzled"
        assert body["installed"] is False
        assert list(body["palette"]) == ["air"]


class TestFrames:
    def test_alchemy_stream_paints_and_frames(self, client):
        sid = open_session(client, "alchemy")
        client.post(f"/api/session/{sid}/material", json={"description": "a cloudy gas that diffuses randomly"})
        with client.websocket_connect(f"/api/session/{sid}/frames") as ws:
            ws.send_json({"set_rate": 1000})
            ws.send_json({"paint": {"x": 10, "y": 10, "material": "gas", "radius": 2}})
            frames = [ws.receive_json() for _ in range(10)]
        assert len(frames) == 10
        assert all(f["width"] == 128 and f["height"] == 96 for f in frames)
        assert all("gas" in f["palette"] for f in frames)
        painted = sum(
            run[0] for f in frames for row in f["rows"] for run in row if run[1] == "gas"
        )
        assert painted > 0
        ticks = [f["tick"] for f in frames]
        assert ticks == sorted(ticks)

    def test_battle_stream_emits_trace_events(self, client):
        sid = open_session(client, "battle")
        client.post(
            f"/api/session/{sid}/cast",
            json={"description": "A controllable wind pixie that warps me when I call"},
        )
        with client.websocket_connect(f"/api/session/{sid}/frames") as ws:
            ws.send_json({"set_rate": 1000})
            message = ws.receive_json()
        assert "events" in message

    def test_unknown_session_stream_closed(self, client):
        with pytest.raises(Exception):
            with client.websocket_connect("/api/session/deadbeef/frames") as ws:
                ws.receive_json()

    def test_concurrent_streams_do_not_interleave(self, client):
        a = open_session(client, "alchemy")
        b = open_session(client, "alchemy")
        client.post(f"/api/session/{a}/material", json={"description": "a cloudy gas that diffuses randomly"})
        with client.websocket_connect(f"/api/session/{a}/frames") as wa:
            with client.websocket_connect(f"/api/session/{b}/frames") as wb:
                wa.send_json({"set_rate": 1000})
                wb.send_json({"set_rate": 1000})
                fa = wa.receive_json()
                fb = wb.receive_json()
        assert "gas" in fa["palette"]
        assert "gas" not in fb["palette"]


class TestIsolationFuzz:
    def test_concurrent_session_fuzzing_keeps_sessions_isolated(self, client):
        from spellforge.rng import Stream

        rng = Stream(0x150)
        sids = [open_session(client, "alchemy") for _ in range(3)]
        installed: dict[str, set[str]] = {sid: {"air"} for sid in sids}
        descriptions = [
            "a cloudy gas that diffuses randomly",
            "some sturdy grit",
            "a slow blue ooze",
            "sparkling dust",
        ]
        for _ in range(40):
            sid = sids[rng.below(len(sids))]
            roll = rng.below(3)
            if roll == 0:
                response = client.post(
                    f"/api/session/{sid}/material",
                    json={"description": descriptions[rng.below(len(descriptions))]},
                )
                body = response.json()
                if body.get("installed"):
                    installed[sid] = set(body["palette"])
            elif roll == 1:
                with client.websocket_connect(f"/api/session/{sid}/frames") as ws:
                    ws.send_json({"set_rate": 1000})
                    ws.send_json({"paint": {"x": rng.below(128), "y": rng.below(96), "material": "air", "radius": 1}})
                    ws.receive_json()
            else:
                response = client.post(f"/api/session/{sid}/cast", json={"description": "x"})
                assert response.status_code == 404  # alchemy sessions have no cast
        for sid in sids:
            palette = set(client.app.state.sessions.get(sid).registry.palette())
            assert palette == installed[sid], "another session's installs leaked"

    def test_malformed_bodies_never_crash(self, client):
        sid = open_session(client, "battle")
        from spellforge.rng import Stream

        rng = Stream(0xBAD)
        for _ in range(30):
            blob = bytes(rng.below(256) for _ in range(rng.below(64)))
            response = client.post(
                f"/api/session/{sid}/cast",
                content=blob,
                headers={"content-type": "application/json"},
            )
            assert 400 <= response.status_code < 500
        # the session still works afterwards
        ok = client.post(f"/api/session/{sid}/cast", json={"description": "a spark"})
        assert ok.status_code == 200

    def test_stream_closes_on_session_expiry(self, client):
        sid = open_session(client, "alchemy")
        session = client.app.state.sessions.get(sid)
        with client.websocket_connect(f"/api/session/{sid}/frames") as ws:
            ws.send_json({"set_rate": 1000})
            ws.receive_json()  # stream alive
            session.last_touch -= 31 * 60  # idle past the TTL
            with pytest.raises(Exception):
                for _ in range(5):
                    ws.receive_json()

    def test_set_rate_zero_pauses_but_session_stays_live(self, client):
        sid = open_session(client, "alchemy")
        with client.websocket_connect(f"/api/session/{sid}/frames") as ws:
            ws.send_json({"set_rate": 1000})
            first = ws.receive_json()
            ws.send_json({"set_rate": 0})  # pause: no more frames
            ws.send_json({"paint": {"x": 5, "y": 5, "material": "air", "radius": 1}})
            ws.send_json({"set_rate": 1000})  # resume
            resumed = ws.receive_json()
        assert resumed["tick"] > first["tick"]
        assert client.app.state.sessions.get(sid) is not None
