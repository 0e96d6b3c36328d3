"""Layout generators behind one interface: text prompt in, layout text out.

Two backends: an HTTP client for an external inference endpoint (opaque
sampling parameters, retries with exponential backoff), and a built-in
baseline that rejection-samples the synthetic generator with the prompt
compiled into the generation spec, so whatever it returns is valid and
correct for the prompt.
"""

from __future__ import annotations

import hashlib
import os
import random
import threading
import time
from dataclasses import dataclass

import httpx

from .core import RoomType, TRAINING_CATEGORIES, serialize_layout
from .semantics import (
    AdjacentTo,
    Annotation,
    CompassOctant,
    LocatedIn,
    NotAdjacentTo,
    RoomCount,
    RoomMix,
    check_correctness,
    parse_prompt,
)
from .synthgen import (
    AREA_RANGES,
    GenerationError,
    GenSpec,
    attach_capacity,
    generate_layout,
)


@dataclass(frozen=True)
class SamplingParams:
    """Nucleus-sampling parameters forwarded verbatim to the endpoint."""

    temperature: float = 1.0
    top_p: float = 0.9
    max_tokens: int = 512
    n: int = 1

    def __post_init__(self):
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if not 0 < self.top_p <= 1:
            raise ValueError("top_p must be in (0, 1]")
        if self.max_tokens < 1 or self.n < 1:
            raise ValueError("max_tokens and n must be at least 1")


@dataclass(frozen=True)
class GeneratorEndpoint:
    """Where and how to reach the inference server. `auth_env` names an
    environment variable holding the bearer token, so configs stay free of
    secrets. `schema` selects the wire format: "neutral" or "openai"."""

    base_url: str
    auth_env: str | None = None
    timeout: float = 30.0
    max_in_flight: int = 4
    schema: str = "neutral"

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be at least 1")
        if self.schema not in ("neutral", "openai"):
            raise ValueError(f"unknown endpoint schema {self.schema!r}")


class EndpointError(RuntimeError):
    """Endpoint interaction failed for good. `retryable` records whether
    the final failure was of a kind that retries could have fixed."""

    def __init__(self, message: str, retryable: bool = False):
        super().__init__(message)
        self.retryable = retryable


class AuthError(EndpointError):
    def __init__(self, message: str):
        super().__init__(message, retryable=False)


class MalformedResponseError(EndpointError):
    def __init__(self, message: str):
        super().__init__(message, retryable=False)


class EndpointClient:
    """Thread-safe client for a completion endpoint.

    Transient failures (transport errors, timeouts, HTTP 429/5xx) are
    retried with exponential backoff up to `max_retries` extra attempts;
    auth failures and malformed responses are not. `max_in_flight`
    requests are enforced with a semaphore.
    """

    def __init__(
        self,
        endpoint: GeneratorEndpoint,
        max_retries: int = 3,
        backoff_base: float = 0.5,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self._client = httpx.Client(transport=transport, timeout=endpoint.timeout)
        self._slots = threading.BoundedSemaphore(endpoint.max_in_flight)

    def close(self) -> None:
        self._client.close()

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.endpoint.auth_env:
            token = os.environ.get(self.endpoint.auth_env)
            if not token:
                raise AuthError(
                    f"auth token environment variable {self.endpoint.auth_env} is not set"
                )
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def _payload(self, prompt: str, params: SamplingParams) -> dict:
        return {
            "prompt": prompt,
            "temperature": params.temperature,
            "top_p": params.top_p,
            "max_tokens": params.max_tokens,
            "n": params.n,
        }

    def _parse_response(self, data: object) -> list[str]:
        try:
            if self.endpoint.schema == "openai":
                completions = [choice["text"] for choice in data["choices"]]
            else:
                completions = data["completions"]
            if not isinstance(completions, list) or not all(
                isinstance(c, str) for c in completions
            ):
                raise TypeError
            return completions
        except (KeyError, TypeError, IndexError):
            raise MalformedResponseError(
                f"endpoint response does not match the {self.endpoint.schema} schema"
            ) from None

    def generate(self, prompt: str, params: SamplingParams) -> list[str]:
        """Request `params.n` completions; returns them verbatim, in the
        order the endpoint produced them."""
        headers = self._headers()
        payload = self._payload(prompt, params)
        url = self.endpoint.base_url.rstrip("/") + "/generate"
        last: EndpointError | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff_base * 2 ** (attempt - 1))
            with self._slots:
                try:
                    response = self._client.post(url, json=payload, headers=headers)
                except httpx.TimeoutException as exc:
                    last = EndpointError(f"request timed out: {exc}", retryable=True)
                    continue
                except httpx.TransportError as exc:
                    last = EndpointError(f"transport failure: {exc}", retryable=True)
                    continue
            if response.status_code in (401, 403):
                raise AuthError(f"endpoint rejected credentials (HTTP {response.status_code})")
            if response.status_code == 429 or response.status_code >= 500:
                last = EndpointError(
                    f"endpoint returned HTTP {response.status_code}", retryable=True
                )
                continue
            if response.status_code != 200:
                raise EndpointError(
                    f"endpoint returned HTTP {response.status_code}", retryable=False
                )
            try:
                data = response.json()
            except ValueError:
                raise MalformedResponseError("endpoint response is not JSON") from None
            return self._parse_response(data)
        assert last is not None
        raise last


class UnsatisfiableError(RuntimeError):
    """The baseline could not produce a correct layout within its budget."""

    def __init__(self, prompt: str, attempts: int):
        super().__init__(f"no layout satisfying {prompt!r} after {attempts} attempts")
        self.prompt = prompt
        self.attempts = attempts


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from arbitrary parts (unlike hash(), identical
    across processes and platforms)."""
    blob = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def _count_constraints(ann: Annotation, rng: random.Random) -> tuple[int, int, int]:
    """Pick (bedrooms, bathrooms, corridors) honoring the annotation.

    Unique subjects force a count of one, non-unique at least two;
    explicitly requested mixes are honored even when out of distribution.
    """
    bed = bath = None
    corr = (rng.random() < 0.5) + (rng.random() < 0.5)

    if isinstance(ann, RoomMix):
        return ann.bedrooms, ann.bathrooms, corr
    if isinstance(ann, RoomCount):
        spare = ann.count - 2  # living room and kitchen are always present
        combos = [
            (b, t, c)
            for b in range(0, spare + 1)
            for t in range(0, spare - b + 1)
            for c in (spare - b - t,)
            if c <= 2 and (b >= 1 and t >= 1 if spare >= 2 else True)
        ]
        if not combos:
            raise UnsatisfiableError(f"room count {ann.count}", 0)
        return rng.choice(combos)

    if isinstance(ann, (AdjacentTo, NotAdjacentTo, LocatedIn)):
        subject = ann.subject
        unique = ann.unique if isinstance(ann, LocatedIn) else ann.subject_unique
        if subject is RoomType.BEDROOM:
            bed = 1 if unique else rng.randint(2, 4)
        elif subject is RoomType.BATHROOM:
            bath = 1 if unique else rng.randint(2, 3)
        elif subject is RoomType.CORRIDOR:
            corr = 1 if unique else 2
        if isinstance(ann, (AdjacentTo, NotAdjacentTo)):
            if ann.obj is RoomType.BEDROOM and bed is None:
                bed = rng.randint(1, 4)
            elif ann.obj is RoomType.BATHROOM and bath is None:
                bath = rng.randint(1, 3)
            elif ann.obj is RoomType.CORRIDOR:
                corr = max(corr, 1)

    if bed is None or bath is None:
        base = rng.choice(sorted(TRAINING_CATEGORIES))
        bed = base.bedrooms if bed is None else bed
        bath = base.bathrooms if bath is None else bath
    return bed, bath, corr


def _biased_spec(ann: Annotation, seed: int) -> GenSpec:
    """Compile an annotation into a GenSpec likely (or guaranteed) to
    satisfy it: counts fixed, and for adjacency prompts the connectivity
    tree is built with (or without) the subject-object edge."""
    rng = random.Random(seed)
    bed, bath, corr = _count_constraints(ann, rng)
    kinds = (
        [RoomType.LIVING_ROOM, RoomType.KITCHEN]
        + [RoomType.BEDROOM] * bed
        + [RoomType.BATHROOM] * bath
        + [RoomType.CORRIDOR] * corr
    )
    rooms = tuple((k, rng.randint(*AREA_RANGES[k])) for k in kinds)
    by_kind: dict[RoomType, list[int]] = {}
    for i, k in enumerate(kinds):
        by_kind.setdefault(k, []).append(i)

    avoid: set[tuple[int, int]] = set()
    require: tuple[int, int] | None = None
    if isinstance(ann, (AdjacentTo, NotAdjacentTo)):
        subjects = by_kind.get(ann.subject, [])
        objects = by_kind.get(ann.obj, [])
        if not subjects or not objects:
            raise UnsatisfiableError(f"spec cannot contain {ann.subject.value}/{ann.obj.value}", 0)
        if isinstance(ann, AdjacentTo):
            require = (rng.choice(subjects), rng.choice(objects))
        else:
            # Keep the tree from wiring the subject to any object room;
            # incidental wall contact is handled by rejection upstream.
            focus = subjects if (len(subjects) == 1) else [rng.choice(subjects)]
            avoid = {(s, o) for s in focus for o in objects}
            avoid |= {(o, s) for s, o in avoid}

    weights = {RoomType.CORRIDOR: 4, RoomType.LIVING_ROOM: 2}
    capacity = [max(2, attach_capacity(area) - 1) for _, area in rooms]
    degree = [0] * len(rooms)
    edges: list[tuple[int, int]] = []

    def connect(a: int, b: int) -> None:
        edges.append((a, b))
        degree[a] += 1
        degree[b] += 1

    attached = [0]
    pending = [i for i in range(1, len(kinds))]
    rng.shuffle(pending)
    pending.sort(key=lambda i: kinds[i] is not RoomType.CORRIDOR)  # corridors first
    if require is not None:
        s, o = require
        # Attach the required pair as a unit so the edge is a tree edge.
        if s != 0 and o != 0:
            pending.remove(s)
            pending.remove(o)
            pending.insert(0, o)
            pending.insert(1, s)
        else:
            pending.remove(s if o == 0 else o)
            pending.insert(0, s if o == 0 else o)

    for i in pending:
        if require is not None and i in require:
            s, o = require
            other = o if i == s else s
            if other in attached:
                connect(other, i)
                attached.append(i)
                continue
        eligible = [
            j
            for j in attached
            if degree[j] < capacity[j] and (j, i) not in avoid
        ] or [j for j in attached if (j, i) not in avoid] or attached
        parent = rng.choices(eligible, weights=[weights.get(kinds[j], 1) for j in eligible])[0]
        connect(parent, i)
        attached.append(i)

    entrance = rng.choice(
        (CompassOctant.N, CompassOctant.E, CompassOctant.S, CompassOctant.W)
    )
    return GenSpec(rooms, tuple(edges), entrance, rng.getrandbits(63))


def baseline_generate(prompt: str, seed: int, attempt_cap: int = 1000) -> str:
    """Generate a layout that is valid and correct for the prompt, or
    raise UnsatisfiableError after `attempt_cap` rejected attempts.

    Raises PromptParseError when the prompt matches no template.
    """
    ann = parse_prompt(prompt)
    rng = random.Random(seed)
    attempts = 0
    for _ in range(attempt_cap):
        attempts += 1
        try:
            spec = _biased_spec(ann, rng.getrandbits(63))
            layout = generate_layout(spec)
        except (GenerationError, UnsatisfiableError):
            continue
        if check_correctness(prompt, layout):
            return serialize_layout(layout)
    raise UnsatisfiableError(prompt, attempts)


class BaselineGenerator:
    """Adapter giving the baseline the same generate() surface as the
    endpoint client. Samples are independently seeded from (seed, prompt,
    index), so a run is reproducible and samples differ."""

    def __init__(self, seed: int = 0, attempt_cap: int = 1000):
        self.seed = seed
        self.attempt_cap = attempt_cap

    def generate(self, prompt: str, params: SamplingParams) -> list[str]:
        out = []
        for i in range(params.n):
            try:
                out.append(
                    baseline_generate(prompt, derive_seed(self.seed, prompt, i), self.attempt_cap)
                )
            except UnsatisfiableError:
                continue
        return out
