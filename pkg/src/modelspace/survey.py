"""Batch surveys over matching families and the claims checked on them.

Records are computed independently and merged by enumeration index, so the
result never depends on the number of worker processes.  Timings are kept
on the records but never enter any emitted table.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .homology import AbelianGroup, HomologyProfile, homology, suspension_shift_check
from .matchings import (
    Matching,
    MatchingSystem,
    SignType,
    as_system,
    canonical_descriptor,
    count_single,
    count_systems,
    enumerate_single,
    enumerate_two_simplex,
    trivial_extension,
)
from .pi1 import GroupKind, GroupVerdict, classify, presentation
from .quotient import build_quotient, components, front_face_boundary

log = logging.getLogger(__name__)

#: Largest universe ``survey_single`` accepts by default.
SINGLE_LIMIT = 40320

#: Behaviour markers of the modules a record depends on; any change
#: invalidates cached results.
BEHAVIOR_MARKERS = (
    "quotient: subface closure by union-find, representatives lexicographic",
    "homology: unit-pivot elimination then dense Smith form",
    "pi1: BFS tree, relator [b,c][a,b][a,c]^-1, min-length Tietze elimination",
)


def version_tag() -> str:
    h = hashlib.sha256("\n".join(BEHAVIOR_MARKERS).encode())
    return h.hexdigest()[:12]


class SurveyAbort(RuntimeError):
    """A record failed the abelianization = H_1 cross-check."""


class LimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ComponentResult:
    homology: HomologyProfile
    pi1: GroupVerdict


@dataclass(frozen=True)
class SurveyRecord:
    descriptor: str
    per_component: tuple[ComponentResult, ...]
    ms: float = field(default=0.0, compare=False)

    @property
    def component_count(self) -> int:
        return len(self.per_component)

    def to_json(self) -> dict:
        return {
            "desc": self.descriptor,
            "components": [
                {"H": c.homology.text(), "pi1": c.pi1.text(), "ab": str(c.pi1.abelianization)}
                for c in self.per_component
            ],
            "ms": round(self.ms, 3),
        }

    @classmethod
    def from_json(cls, data: dict) -> SurveyRecord:
        comps = []
        for c in data["components"]:
            comps.append(ComponentResult(HomologyProfile.parse(c["H"]), verdict_from_text(c["pi1"], c["ab"])))
        return cls(data["desc"], tuple(comps), data.get("ms", 0.0))


def verdict_from_text(text: str, ab: str) -> GroupVerdict:
    group = AbelianGroup.parse(ab)
    if text == "1":
        return GroupVerdict(GroupKind.TRIVIAL, group)
    if text == "Z":
        return GroupVerdict(GroupKind.INFINITE_CYCLIC, group)
    if text.startswith("Z/"):
        return GroupVerdict(GroupKind.FINITE_CYCLIC, group, int(text[2:]))
    return GroupVerdict(GroupKind.UNDETERMINED, group)


def compute_record(system: MatchingSystem | Matching | str) -> SurveyRecord:
    system = as_system(system)
    start = time.perf_counter()
    desc = canonical_descriptor(system)
    qc = build_quotient(system)
    results = []
    for comp in components(qc):
        h = homology(comp)
        verdict = classify(presentation(comp))
        if verdict.abelianization != h.group(1):
            raise SurveyAbort(f"{desc}: abelianization {verdict.abelianization} != H1 {h.group(1)}")
        results.append(ComponentResult(h, verdict))
    return SurveyRecord(desc, tuple(results), (time.perf_counter() - start) * 1000)


def iter_records(systems: Sequence, jobs: int = 1, compute: Callable = compute_record) -> Iterator[SurveyRecord]:
    """Yield one record per system, in input order whatever the worker count."""
    systems = list(systems)
    if jobs <= 1 or len(systems) < 2:
        yield from map(compute, systems)
        return
    chunk = max(1, len(systems) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(compute, systems, chunksize=chunk)


def run_records(systems: Sequence, jobs: int = 1, compute: Callable = compute_record) -> list[SurveyRecord]:
    return list(iter_records(systems, jobs, compute))


def _dedup(systems: Iterable[MatchingSystem]) -> list[MatchingSystem]:
    seen = set()
    out = []
    for s in systems:
        key = canonical_descriptor(s, dedup_symmetry=True)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def single_universe(n: int, limit: int = SINGLE_LIMIT) -> list[MatchingSystem]:
    size = count_single(n)
    if size > limit:
        raise LimitExceeded(f"{size} matchings in dimension {n} exceeds the limit {limit}")
    return [m.as_system() for m in enumerate_single(n)]


def two_simplex_universe(n: int, sign: SignType | str, dedup: bool = False) -> list[MatchingSystem]:
    systems = list(enumerate_two_simplex(n, sign))
    expected = count_systems(n, SignType(sign).coeffs)
    if len(systems) != expected:
        raise AssertionError(f"expected {expected} systems, enumerated {len(systems)}")
    return _dedup(systems) if dedup else systems


def survey_single(n: int, jobs: int = 1, limit: int = SINGLE_LIMIT) -> list[SurveyRecord]:
    systems = single_universe(n, limit)
    records = run_records(systems, jobs)
    assert len(records) == count_single(n)
    return records


def survey_two_simplex(n: int, sign: SignType | str, jobs: int = 1, dedup: bool = False) -> list[SurveyRecord]:
    systems = two_simplex_universe(n, sign, dedup)
    records = run_records(systems, jobs)
    assert len(records) == len(systems)
    return records


# -- claims ------------------------------------------------------------------

@dataclass
class ClaimReport:
    claim: str
    universe: int
    passed: int
    counterexamples: list[str]
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.passed + len(self.counterexamples) == self.universe

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.claim}: {status} ({self.passed}/{self.universe})"]
        for key, value in self.details.items():
            lines.append(f"  {key}: {value}")
        lines += [f"  counterexample: {c}" for c in self.counterexamples]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "universe": self.universe,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "details": self.details,
            "ok": self.ok,
        }


def _report(claim: str, items: Iterable[tuple[str, bool]], details: dict | None = None) -> ClaimReport:
    items = list(items)
    bad = [d for d, ok in items if not ok]
    return ClaimReport(claim, len(items), len(items) - len(bad), bad, details or {})


H1_ALLOWED = (AbelianGroup(), AbelianGroup(0, (2,)), AbelianGroup(0, (3,)), AbelianGroup(1))


def verify_h1_membership(records: Sequence[SurveyRecord]) -> ClaimReport:
    """Every component has first homology 0, Z/2, Z/3 or Z."""
    occurring = sorted({str(c.homology.group(1)) for r in records for c in r.per_component})
    return _report(
        "h1-membership",
        ((r.descriptor, all(c.homology.group(1) in H1_ALLOWED for c in r.per_component)) for r in records),
        {"occurring H1": ", ".join(occurring)},
    )


def verify_pi1_cyclic(records: Sequence[SurveyRecord]) -> ClaimReport:
    kinds = sorted({c.pi1.text() for r in records for c in r.per_component})
    return _report(
        "pi1-cyclic",
        ((r.descriptor, all(c.pi1.is_cyclic for c in r.per_component)) for r in records),
        {"occurring pi1": ", ".join(kinds)},
    )


def verify_pi1_trivial(records: Sequence[SurveyRecord]) -> ClaimReport:
    return _report(
        "pi1-trivial",
        ((r.descriptor, all(c.pi1.kind is GroupKind.TRIVIAL for c in r.per_component)) for r in records),
    )


def verify_h2_rank_zero(records: Sequence[SurveyRecord]) -> ClaimReport:
    """No component has a free summand in H_2 (so H_2 cannot surject onto Z)."""
    return _report(
        "h2-rank",
        ((r.descriptor, all(c.homology.betti[2] == 0 for c in r.per_component)) for r in records),
    )


def verify_suspension(base: Matching | MatchingSystem | str, k: int) -> ClaimReport:
    """Each of ``k`` successive trivial extensions shifts homology up by two."""
    m = as_system(base).as_matching()
    h = homology(build_quotient(m))
    items = []
    profiles = {}
    for _ in range(k):
        ext = trivial_extension(m)
        h_ext = homology(build_quotient(ext))
        items.append((ext.descriptor(), suspension_shift_check(h, h_ext)))
        profiles[ext.descriptor()] = h_ext.text()
        m, h = ext, h_ext
    return _report("suspension-shift", items, profiles)


def verify_front_face(base: Matching | MatchingSystem | str, ks: Sequence[int]) -> ClaimReport:
    m = as_system(base).as_matching()
    qc = build_quotient(m)
    items, details = [], {}
    for k in ks:
        label = f"{m.descriptor()} k={k}"
        try:
            rep = front_face_boundary(m, k, qc)
        except AssertionError as exc:
            items.append((label, False))
            details[label] = str(exc)
            continue
        items.append((label, True))
        details[label] = f"sign {rep.sign:+d}, I={list(rep.I)}, pi(I)={list(rep.image_I)}, rest={list(rep.complement)}"
    return _report("front-face", items, details)


# -- cached runs ---------------------------------------------------------------

@dataclass(frozen=True)
class Plan:
    """A survey universe plus the JSON-lines store that caches it."""

    kind: str  # "single" or "two"
    n: int
    store: str
    sign: str | None = None
    dedup: bool = False
    jobs: int = 1

    def systems(self) -> list[MatchingSystem]:
        if self.kind == "single":
            return single_universe(self.n)
        return two_simplex_universe(self.n, self.sign or "same", self.dedup)


def _crc(payload: dict) -> int:
    return zlib.crc32(json.dumps(payload, sort_keys=True, separators=(",", ":")).encode())


def encode_line(record: SurveyRecord, tag: str) -> str:
    payload = record.to_json()
    payload["v"] = tag
    payload["crc"] = _crc(payload)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def load_store(path: str, tag: str) -> dict[str, SurveyRecord]:
    """Valid records of the current version keyed by descriptor."""
    out: dict[str, SurveyRecord] = {}
    if not os.path.exists(path):
        return out
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
                crc = payload.pop("crc")
                if _crc(payload) != crc:
                    raise ValueError("checksum mismatch")
                if payload.get("v") != tag:
                    continue
                record = SurveyRecord.from_json(payload)
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("%s:%d: skipping corrupt line (%s)", path, lineno, exc)
                continue
            out[record.descriptor] = record
    return out


def run_cached(plan: Plan, compute: Callable = compute_record) -> list[SurveyRecord]:
    """Run a plan, reusing records already in its store and appending new ones.

    Each record is flushed as soon as it is computed, so an interrupted run
    resumes where it stopped.
    """
    tag = version_tag()
    systems = plan.systems()
    keys = [canonical_descriptor(s) for s in systems]
    cached = load_store(plan.store, tag)
    pending = [systems[i] for i, k in enumerate(keys) if k not in cached]
    log.info("%d cached, %d to compute", len(systems) - len(pending), len(pending))
    if pending:
        with open(plan.store, "a", encoding="utf-8") as fh:
            for rec in iter_records(pending, plan.jobs, compute):
                fh.write(encode_line(rec, tag) + "\n")
                fh.flush()
                cached[rec.descriptor] = rec
    return [cached[k] for k in keys]
