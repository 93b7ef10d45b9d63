"""Role-specialized translation agents and the sequential workflow runner.

An agent is a prompt pair (system + user template) sent to a chat backend.
A workflow runs its agents in order; every stage sees the source text and the
draft produced by the stage before it.
"""
from __future__ import annotations

import logging
import string
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Protocol, Sequence

from .config import BackendSettings, RunConfig
from .errors import (
    BackendFailure,
    ConfigError,
    EmptyResponse,
    SamasError,
    TransportError,
)
from .roles import AgentRole, StyleClass
from .router import Workflow, allocate_workflow, classify
from .sfs import StylisticFeatureSpectrum, compute_sfs, low_frequency_energy
from .text_signal import TextSegment, segment_signal

log = logging.getLogger(__name__)

FIRST_STAGE_MARKER = "(none — first stage)"
SYSTEM_FIELDS = frozenset({"source_lang", "target_lang", "style_class"})
USER_FIELDS = frozenset({"source_text", "previous_output"})


def _placeholders(template: str) -> set[str]:
    return {name for _, name, _, _ in string.Formatter().parse(template) if name is not None}


@dataclass(frozen=True)
class AgentSpec:
    role: AgentRole
    system_prompt: str
    user_template: str

    def __post_init__(self):
        extra = _placeholders(self.system_prompt) - SYSTEM_FIELDS
        extra |= _placeholders(self.user_template) - USER_FIELDS
        if extra:
            raise ConfigError(f"{self.role.value}: unknown placeholders {sorted(extra)}")

    def render(self, *, source_lang, target_lang, style_class, source_text, previous_output) -> tuple[str, str]:
        style = style_class.value if isinstance(style_class, StyleClass) else str(style_class)
        system = self.system_prompt.format(
            source_lang=source_lang, target_lang=target_lang, style_class=style
        )
        user = self.user_template.format(source_text=source_text, previous_output=previous_output)
        return system, user


_PREAMBLE = (
    "You are one stage in a multi-agent literary translation pipeline from "
    "{source_lang} into {target_lang}. Stylometric analysis routed this passage "
    "to the {style_class} workflow.\n\n"
)
_REPLY_RULE = (
    "\n\nReply with the full revised {target_lang} translation only, "
    "with no commentary, notes or headings."
)

_ROLE_BRIEFS = {
    AgentRole.CORE_TRANSLATION: (
        "Role: core translation. Produce a complete, accurate translation that "
        "carries over every proposition of the source. If a draft already "
        "exists, correct its meaning errors and omissions while keeping any "
        "stylistic choices that are faithful."
    ),
    AgentRole.LINGUISTIC_STRUCTURE: (
        "Role: linguistic structure. The source relies on long, nested and "
        "interrupted sentences. Map its clause structure (embedding, "
        "parentheticals, deferred main verbs) and render a draft whose "
        "syntax keeps that architecture as far as {target_lang} grammar allows, "
        "rather than splitting it into short sentences."
    ),
    AgentRole.METAPHOR_TRANSLATION: (
        "Role: figurative language. Find the metaphors, similes, imagery and "
        "other rhetorical devices in the source and revise the draft so each "
        "one survives as a figure with equivalent force in {target_lang}; "
        "do not flatten figures into literal paraphrase."
    ),
    AgentRole.EMOTION_TRANSFER: (
        "Role: emotional tone. Identify the register, mood and emotional "
        "undertone of the source and adjust word choice in the draft so a "
        "{target_lang} reader feels the same tone."
    ),
    AgentRole.RHYTHM_PROSODY: (
        "Role: rhythm and prosody. Match the cadence of the source: keep "
        "short sentences short, preserve repetition and parallelism, and "
        "follow the source's punctuation rhythm. Do not add words that slow "
        "the pace."
    ),
    AgentRole.CONSISTENCY_FIDELITY: (
        "Role: consistency and style fidelity. Do a final pass over the draft: "
        "make names, terms and recurring phrases consistent, check that "
        "nothing from the source is missing or invented, and confirm the "
        "overall style still matches the source."
    ),
}

DEFAULT_USER_TEMPLATE = "Source text:\n{source_text}\n\nCurrent draft:\n{previous_output}"


def default_agent_specs() -> dict[AgentRole, AgentSpec]:
    return {
        role: AgentSpec(role, _PREAMBLE + brief + _REPLY_RULE, DEFAULT_USER_TEMPLATE)
        for role, brief in _ROLE_BRIEFS.items()
    }


# -- backend contract ----------------------------------------------------------


@dataclass(frozen=True)
class BackendRequest:
    model: str
    system: str
    user: str
    temperature: float = 0.0
    max_tokens: int = 2048
    # not sent over the wire; lets mocks and logs see which stage is calling
    role: Optional[AgentRole] = None
    context: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class BackendResponse:
    text: str
    latency_ms: int = 0
    prompt_tokens: int = 0
    completion_tokens: int = 0


class ChatBackend(Protocol):
    def complete(self, request: BackendRequest) -> BackendResponse: ...


class MockBackend:
    """Deterministic offline backend.

    Each reply is the incoming draft (or the source text, for the first stage)
    prefixed with ``[role]``, so a trace shows the stage nesting directly.
    ``fail_roles`` fail on every call; ``transient`` maps a role to a number
    of failures before it starts succeeding. Safe to share between threads.
    """

    def __init__(self, fail_roles=(), transient: Optional[Mapping[AgentRole, int]] = None,
                 delay_s: float = 0.0, empty_roles=()):
        self.fail_roles = frozenset(fail_roles)
        self.empty_roles = frozenset(empty_roles)
        self._remaining = dict(transient or {})
        self.delay_s = delay_s
        self.calls: list[BackendRequest] = []
        self.in_flight = 0
        self.max_in_flight = 0
        self._lock = threading.Lock()

    def complete(self, request: BackendRequest) -> BackendResponse:
        with self._lock:
            self.calls.append(request)
            self.in_flight += 1
            self.max_in_flight = max(self.max_in_flight, self.in_flight)
            fail = request.role in self.fail_roles
            if not fail and self._remaining.get(request.role, 0) > 0:
                self._remaining[request.role] -= 1
                fail = True
        try:
            if self.delay_s:
                time.sleep(self.delay_s)
            if fail:
                raise TransportError(f"mock transport failure for {request.role}")
            if request.role in self.empty_roles:
                return BackendResponse(text="   ")
            previous = request.context.get("previous_output", FIRST_STAGE_MARKER)
            draft = request.context.get("source_text", "") if previous == FIRST_STAGE_MARKER else previous
            tag = request.role.value if request.role else "agent"
            text = f"[{tag}] {draft}"
            return BackendResponse(
                text=text,
                prompt_tokens=len(request.system.split()) + len(request.user.split()),
                completion_tokens=len(text.split()),
            )
        finally:
            with self._lock:
                self.in_flight -= 1


class OpenAIChatBackend:
    """Client for any OpenAI-compatible ``/chat/completions`` endpoint."""

    RETRY_STATUS = frozenset({408, 409, 429, 500, 502, 503, 504})

    def __init__(self, base_url: str, api_key: str, timeout_s: float = 120.0, transport=None):
        import httpx

        self._httpx = httpx
        self.base_url = base_url.rstrip("/")
        self.client = httpx.Client(
            base_url=self.base_url,
            headers={"Authorization": f"Bearer {api_key}"},
            timeout=timeout_s,
            transport=transport,
        )

    @staticmethod
    def payload(request: BackendRequest) -> dict:
        return {
            "model": request.model,
            "messages": [
                {"role": "system", "content": request.system},
                {"role": "user", "content": request.user},
            ],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }

    def ping(self) -> None:
        """Cheap reachability probe; raises TransportError if the server cannot be reached."""
        try:
            self.client.get("/models")
        except self._httpx.HTTPError as exc:
            raise TransportError(f"backend unreachable at {self.base_url}: {exc}") from exc

    def complete(self, request: BackendRequest) -> BackendResponse:
        start = time.monotonic()
        try:
            resp = self.client.post("/chat/completions", json=self.payload(request))
        except self._httpx.HTTPError as exc:
            raise TransportError(f"transport error: {exc}") from exc
        latency = int((time.monotonic() - start) * 1000)
        if resp.status_code in self.RETRY_STATUS:
            raise TransportError(f"HTTP {resp.status_code}")
        if resp.status_code >= 400:
            raise SamasError(f"backend rejected request: HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            body = resp.json()
            text = body["choices"][0]["message"]["content"] or ""
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed completion response: {exc}") from exc
        usage = body.get("usage") or {}
        return BackendResponse(
            text=text,
            latency_ms=latency,
            prompt_tokens=int(usage.get("prompt_tokens", 0)),
            completion_tokens=int(usage.get("completion_tokens", 0)),
        )

    def close(self):
        self.client.close()


# -- pipeline ------------------------------------------------------------------


@dataclass(frozen=True)
class TranslationJob:
    segment: TextSegment
    sfs: StylisticFeatureSpectrum
    style_class: StyleClass
    workflow: Workflow

    def __post_init__(self):
        if not self.segment.target_lang:
            raise ConfigError(f"segment {self.segment.id!r} has no target_lang")


@dataclass
class StageRecord:
    role: AgentRole
    rendered_system: str
    rendered_user: str
    response_text: str
    latency_ms: int
    attempt_count: int

    def to_json(self) -> dict:
        return {
            "role": self.role.value,
            "rendered_system": self.rendered_system,
            "rendered_user": self.rendered_user,
            "response_text": self.response_text,
            "latency_ms": self.latency_ms,
            "attempt_count": self.attempt_count,
        }


@dataclass
class PipelineTrace:
    job_id: str
    style_class: StyleClass
    workflow: str
    global_entropy: float
    low_frequency_energy: float
    stages: list[StageRecord] = field(default_factory=list)
    final_translation: str = ""
    total_latency_ms: int = 0

    @property
    def roles(self) -> list[AgentRole]:
        return [s.role for s in self.stages]

    def to_json(self) -> dict:
        return {
            "job_id": self.job_id,
            "style_class": self.style_class.value,
            "workflow": self.workflow,
            "H": self.global_entropy,
            "E_low": self.low_frequency_energy,
            "stages": [s.to_json() for s in self.stages],
            "final_translation": self.final_translation,
            "total_latency_ms": self.total_latency_ms,
        }


def _call_with_retries(backend, request, settings: BackendSettings, sleep) -> tuple[BackendResponse, int]:
    delay = settings.backoff_s
    for attempt in range(1, settings.max_retries + 1):
        try:
            return backend.complete(request), attempt
        except TransportError as exc:
            if attempt == settings.max_retries:
                raise BackendFailure(request.role, attempt, cause=exc) from exc
            log.warning("%s attempt %d failed (%s); retrying in %.2fs",
                        request.role.value, attempt, exc, delay)
            sleep(delay)
            delay *= 2
        except SamasError as exc:
            # rejected outright (bad request, auth); retrying cannot help
            raise BackendFailure(request.role, attempt, cause=exc) from exc
    raise AssertionError("unreachable")


def run_workflow(
    job: TranslationJob,
    specs: Mapping[AgentRole, AgentSpec],
    backend: ChatBackend,
    settings: BackendSettings = BackendSettings(),
    sleep: Callable[[float], None] = time.sleep,
) -> PipelineTrace:
    """Run the job's workflow stage by stage and return the full trace.

    On failure the raised BackendFailure / EmptyResponse carries the partial
    trace (stages that completed) as ``exc.trace``.
    """
    missing = [r.value for r in job.workflow.stages if r not in specs]
    if missing:
        raise ConfigError(f"no agent spec for {', '.join(missing)}")
    trace = PipelineTrace(
        job_id=job.segment.id,
        style_class=job.style_class,
        workflow=job.workflow.name,
        global_entropy=job.sfs.global_entropy,
        low_frequency_energy=low_frequency_energy(job.sfs),
    )
    previous = FIRST_STAGE_MARKER
    for role in job.workflow.stages:
        system, user = specs[role].render(
            source_lang=job.segment.source_lang,
            target_lang=job.segment.target_lang,
            style_class=job.style_class,
            source_text=job.segment.text,
            previous_output=previous,
        )
        request = BackendRequest(
            model=settings.model,
            system=system,
            user=user,
            temperature=settings.temperature,
            max_tokens=settings.max_tokens,
            role=role,
            context={"source_text": job.segment.text, "previous_output": previous},
        )
        try:
            response, attempts = _call_with_retries(backend, request, settings, sleep)
        except BackendFailure as exc:
            exc.trace = trace
            raise
        if not response.text.strip():
            raise EmptyResponse(role, trace=trace)
        trace.stages.append(StageRecord(role, system, user, response.text, response.latency_ms, attempts))
        trace.total_latency_ms += response.latency_ms
        previous = response.text
    trace.final_translation = previous.strip()
    return trace


def prepare_job(segment: TextSegment, config: RunConfig) -> TranslationJob:
    """tokenize -> signal -> SFS -> classify -> allocate."""
    if not segment.target_lang:
        segment = TextSegment(segment.id, segment.text, segment.source_lang,
                              config.target_lang, segment.style_label)
    signal = segment_signal(segment, config.level)
    sfs = compute_sfs(signal, config.filter, config.level)
    style = classify(sfs, config.thresholds)
    return TranslationJob(segment, sfs, style, allocate_workflow(style, config.workflow_library))


def translate_corpus(
    segments: Sequence[TextSegment],
    config: RunConfig,
    backend: ChatBackend,
    specs: Optional[Mapping[AgentRole, AgentSpec]] = None,
    sleep: Callable[[float], None] = time.sleep,
) -> list:
    """Translate every segment; results keep input order.

    Each result is a PipelineTrace or the SamasError that stopped that segment.
    One bad segment never aborts the batch.
    """
    if not isinstance(config, RunConfig):
        raise ConfigError("translate_corpus needs a RunConfig")
    specs = specs or default_agent_specs()

    def one(segment):
        try:
            return run_workflow(prepare_job(segment, config), specs, backend, config.backend, sleep)
        except SamasError as exc:
            return exc

    if not segments:
        return []
    with ThreadPoolExecutor(max_workers=config.backend.concurrency_limit) as pool:
        return list(pool.map(one, segments))

