"""HTTP API contract and SVG rendering."""

import re
from concurrent.futures import ThreadPoolExecutor

import httpx
import pytest
from fastapi.testclient import TestClient

from textplan.core import Layout, RoomType, parse_layout
from textplan.genclient import EndpointClient, GeneratorEndpoint
from textplan.pipeline import reference_from_generator
from textplan.service import ROOM_COLORS, ServiceConfig, create_app, render_svg

from test_core import PAPER_BEDROOM, rect_room
from test_pipeline import FIXED_21


@pytest.fixture(scope="module")
def stats():
    return reference_from_generator(per_category=5, seed=2)


@pytest.fixture(scope="module")
def client(stats):
    app = create_app(ServiceConfig(stats=stats))
    with TestClient(app) as c:
        yield c


class TestRenderSvg:
    def test_paper_bedroom_polygon(self):
        svg = render_svg(parse_layout(PAPER_BEDROOM))
        # y is flipped: (13,12) maps to (13,244).
        assert '<polygon points="13,244 8,244 8,247 13,247"' in svg
        assert svg.count("<polygon") == 1
        assert "bedroom</text>" in svg

    def test_deterministic_bytes(self):
        layout = parse_layout(FIXED_21)
        assert render_svg(layout) == render_svg(layout)

    def test_room_counts_and_colors(self):
        layout = parse_layout(FIXED_21)
        svg = render_svg(layout)
        assert svg.count("<polygon") == 5
        assert svg.count("<text") == 5
        assert ROOM_COLORS["living_room"] in svg
        assert "living room</text>" in svg

    def test_invalid_layout_rejected(self):
        bad = Layout(
            (rect_room(RoomType.BEDROOM, 0, 0, 5, 5), rect_room(RoomType.KITCHEN, 20, 20, 25, 25))
        )
        with pytest.raises(ValueError):
            render_svg(bad)


class TestApi:
    def test_health(self, client):
        assert client.get("/api/health").json() == {"status": "ok"}

    def test_prompts_suite(self, client):
        prompts = client.get("/api/prompts").json()
        assert len(prompts) == 58
        assert prompts[0] == {
            "id": "AN.1",
            "text": "the bedroom is not adjacent to the living room",
            "category": "AN",
        }

    def test_generate_baseline(self, client):
        r = client.post(
            "/api/generate", json={"prompt": "a house with five rooms", "n": 3, "seed": 1}
        )
        assert r.status_code == 200
        items = r.json()["items"]
        assert len(items) == 3
        for item in items:
            assert item["valid"] is True
            assert item["correct"] is True
            assert item["violations"] == []
            assert re.fullmatch(r"\d+/\d+", item["category"])
            assert isinstance(item["ood"], bool)
            assert isinstance(item["spatial_diversity"], float)
            assert item["svg"].startswith("<svg")

    def test_generate_unparseable_prompt_400(self, client):
        r = client.post("/api/generate", json={"prompt": "build me a tower", "n": 1})
        assert r.status_code == 400

    def test_generate_bad_body_400(self, client):
        assert client.post("/api/generate", json={"n": 2}).status_code == 400

    def test_generate_unsatisfiable_422(self, stats):
        app = create_app(ServiceConfig(stats=stats, attempt_cap=3))
        with TestClient(app) as c:
            r = c.post(
                "/api/generate",
                json={"prompt": "a living room is adjacent to the kitchen", "n": 1, "seed": 0},
            )
        assert r.status_code == 422

    def test_check_single_bedroom(self, client):
        r = client.post("/api/check", json={"layout": PAPER_BEDROOM})
        body = r.json()
        assert r.status_code == 200
        assert body["valid"] is True
        assert body["category"] == "1/0"
        assert [a["text"] for a in body["annotations"]] == ["a house with one room"]

    def test_check_invalid_layout(self, client):
        r = client.post("/api/check", json={"layout": "bedroom: (1,1)"})
        body = r.json()
        assert body["valid"] is False
        assert body["violations"][0]["kind"] == "malformed_polygon"
        assert "annotations" not in body

    def test_seeded_requests_reproducible_under_concurrency(self, client):
        payload = {"prompt": "a bedroom is adjacent to the kitchen", "n": 2, "seed": 42}

        def call(_):
            return client.post("/api/generate", json=payload).text

        with ThreadPoolExecutor(max_workers=4) as pool:
            bodies = list(pool.map(call, range(6)))
        assert len(set(bodies)) == 1

    def test_verdicts_match_direct_library_calls(self, client, stats):
        from textplan.metrics import is_ood, spatial_diversity
        from textplan.semantics import check_correctness
        from textplan.validity import validate_text

        r = client.post(
            "/api/generate", json={"prompt": "a house with six rooms", "n": 2, "seed": 9}
        )
        for item in r.json()["items"]:
            layout = parse_layout(item["layout"])
            assert item["valid"] == validate_text(item["layout"]).valid
            assert item["correct"] == check_correctness("a house with six rooms", layout)
            assert item["ood"] == is_ood(layout, stats)
            assert item["spatial_diversity"] == pytest.approx(
                float(spatial_diversity(layout, stats))
            )


class TestEndpointBackedService:
    def test_invalid_completion_fields_consistent(self, stats):
        def handler(request):
            return httpx.Response(
                200, json={"completions": [FIXED_21, "bedroom: (1,1)"]}
            )

        endpoint = GeneratorEndpoint(base_url="http://gen.test")
        injected = EndpointClient(endpoint, transport=httpx.MockTransport(handler))
        app = create_app(
            ServiceConfig(generator="endpoint", endpoint=endpoint, endpoint_client=injected, stats=stats)
        )
        with TestClient(app) as c:
            r = c.post("/api/generate", json={"prompt": "a house with five rooms", "n": 2})
        assert r.status_code == 200
        good, bad = r.json()["items"]
        assert good["valid"] and good["correct"]
        assert bad["valid"] is False
        assert bad["correct"] is False
        assert bad["category"] is None and bad["svg"] is None

    def test_endpoint_failure_502(self, stats):
        def handler(request):
            return httpx.Response(500, json={})

        endpoint = GeneratorEndpoint(base_url="http://gen.test")
        injected = EndpointClient(
            endpoint, transport=httpx.MockTransport(handler), backoff_base=0.0, max_retries=1
        )
        app = create_app(
            ServiceConfig(generator="endpoint", endpoint=endpoint, endpoint_client=injected, stats=stats)
        )
        with TestClient(app) as c:
            r = c.post("/api/generate", json={"prompt": "a house with five rooms", "n": 1})
        assert r.status_code == 502
