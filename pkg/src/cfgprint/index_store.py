"""Fingerprint index: add, scan, cluster, persist.

On disk an index is JSON Lines with extension `.cdx`: the first line is
a header stamping the fingerprint configuration, each following line is
one program record. Records append cleanly and the whole file reloads
byte-for-byte reproducibly. Queries are a linear scan: every scoreable
record is scored against the probe, so cost grows with record count and
nothing else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .config import (
    INDEX_FORMAT,
    INDEX_FORMAT_VERSION,
    HASH_NAME,
    NORMALIZATION_VERSION,
    ConfigStamp,
)
from .fingerprint import PathFingerprint, ProgramFingerprint, from_hex, to_hex
from .similarity import PairReport, SimilarityScore, pair_report


class IndexFormatError(ValueError):
    """Unparseable index file; message carries the offending line."""


class IndexCompatibilityError(ValueError):
    """Index built under a configuration this runtime cannot serve."""


@dataclass(frozen=True)
class IndexRecord:
    program_id: str
    source_path: str
    fingerprints: tuple[int, ...]  # ascending bits
    path_count: int
    truncated: bool
    config_stamp: ConfigStamp

    def to_program_fingerprint(self) -> ProgramFingerprint:
        return ProgramFingerprint(
            program_id=self.program_id,
            fingerprints=tuple(
                PathFingerprint(bits, (self.program_id, i), self.config_stamp.r)
                for i, bits in enumerate(self.fingerprints)
            ),
            path_count=self.path_count,
            truncated=self.truncated,
            width=self.config_stamp.r,
        )


def record_from_program(
    program: ProgramFingerprint, source_path: str, stamp: ConfigStamp
) -> IndexRecord:
    if program.width != stamp.r:
        raise IndexCompatibilityError(
            f"incompatible index configuration: fingerprint width {program.width} vs r={stamp.r}"
        )
    return IndexRecord(
        program_id=program.program_id,
        source_path=source_path,
        fingerprints=program.bits,
        path_count=program.path_count,
        truncated=program.truncated,
        config_stamp=stamp,
    )


@dataclass(frozen=True)
class CloneCandidate:
    program_id: str
    score: SimilarityScore
    grade: str
    matched_path_evidence: tuple[tuple[str, str, int], ...]


@dataclass(frozen=True)
class CloneGroup:
    members: tuple[str, ...]
    mean_score: float


@dataclass
class FingerprintIndex:
    config_stamp: ConfigStamp
    records: dict[str, IndexRecord] = field(default_factory=dict)
    last_query_scorings: int = 0

    def add_program(self, record: IndexRecord) -> None:
        """Insert by program_id. The record must carry the index's
        exact configuration stamp; ids are unique."""
        if record.config_stamp != self.config_stamp:
            raise IndexCompatibilityError(
                "incompatible index configuration: "
                f"record stamp {record.config_stamp} vs index stamp {self.config_stamp}"
            )
        if record.program_id in self.records:
            raise ValueError(f"program {record.program_id!r} already indexed")
        self.records[record.program_id] = record

    def query(
        self,
        probe: ProgramFingerprint,
        alpha: int,
        threshold: float,
        mode: str = "containment",
    ) -> list[CloneCandidate]:
        """Scan every scoreable record, keep scores >= threshold, rank
        by score descending then program_id ascending. A record with
        the probe's own id is skipped, as are unscoreable records."""
        from .similarity import classify

        if not probe.scoreable:
            raise ValueError(f"unscoreable program: {probe.program_id!r} has no fingerprints")
        scorings = 0
        candidates: list[CloneCandidate] = []
        for record in self.records.values():
            if record.program_id == probe.program_id:
                continue
            if not record.fingerprints:
                continue
            report = pair_report(probe, record.to_program_fingerprint(), alpha, mode)
            scorings += 1
            if report.score.value >= threshold:
                candidates.append(
                    CloneCandidate(
                        program_id=record.program_id,
                        score=report.score,
                        grade=classify(report.min_distance),
                        matched_path_evidence=report.evidence,
                    )
                )
        self.last_query_scorings = scorings
        candidates.sort(key=lambda c: (-c.score.value, c.program_id))
        return candidates

    def cluster(
        self, alpha: int, threshold: float, mode: str = "containment"
    ) -> list[CloneGroup]:
        """Single-linkage clone groups: connected components of the
        "scores >= threshold" graph over scoreable records. Groups are
        ordered by their smallest member id; singletons are omitted.
        mean_score averages all intra-group pairwise scores."""
        from .similarity import score_pair

        ids = sorted(pid for pid, r in self.records.items() if r.fingerprints)
        n = len(ids)
        if n == 0:
            return []
        programs = {pid: self.records[pid].to_program_fingerprint() for pid in ids}
        score_of: dict[tuple[int, int], float] = {}
        rows, cols = [], []
        for i in range(n):
            for j in range(i + 1, n):
                value = score_pair(programs[ids[i]], programs[ids[j]], alpha, mode).value
                score_of[(i, j)] = value
                if value >= threshold:
                    rows.append(i)
                    cols.append(j)
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        count, labels = connected_components(graph, directed=False)
        members_of: dict[int, list[int]] = {}
        for i, label in enumerate(labels):
            members_of.setdefault(int(label), []).append(i)
        groups = []
        for member_idx in members_of.values():
            if len(member_idx) < 2:
                continue
            pair_scores = [
                score_of[(a, b)]
                for k, a in enumerate(member_idx)
                for b in member_idx[k + 1 :]
            ]
            groups.append(
                CloneGroup(
                    members=tuple(ids[i] for i in sorted(member_idx)),
                    mean_score=sum(pair_scores) / len(pair_scores),
                )
            )
        groups.sort(key=lambda g: g.members[0])
        return groups

    def save(self, path: str | Path) -> None:
        """Write header + records as JSON Lines. Deterministic bytes:
        sorted keys, records in insertion order."""
        stamp = self.config_stamp
        header = {
            "format": INDEX_FORMAT,
            "version": INDEX_FORMAT_VERSION,
            "r": stamp.r,
            "alpha": stamp.alpha,
            "min_blocks": stamp.min_blocks,
            "hash": stamp.hash_name,
            "normalization": stamp.normalization,
        }
        lines = [json.dumps(header, sort_keys=True)]
        for record in self.records.values():
            lines.append(
                json.dumps(
                    {
                        "program_id": record.program_id,
                        "source_path": record.source_path,
                        "fingerprints": [to_hex(b) for b in record.fingerprints],
                        "path_count": record.path_count,
                        "truncated": record.truncated,
                    },
                    sort_keys=True,
                )
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_index(path: str | Path) -> FingerprintIndex:
    """Parse a .cdx file fully before returning; a malformed or
    truncated file raises IndexFormatError naming the bad line, an
    unsupported configuration raises IndexCompatibilityError."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise IndexFormatError(f"{path}: line 1: empty index file")

    def parse_line(i: int) -> dict:
        try:
            value = json.loads(lines[i])
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"{path}: line {i + 1}: malformed JSON ({exc.msg})") from exc
        if not isinstance(value, dict):
            raise IndexFormatError(f"{path}: line {i + 1}: expected a JSON object")
        return value

    header = parse_line(0)
    if header.get("format") != INDEX_FORMAT or header.get("version") != INDEX_FORMAT_VERSION:
        raise IndexCompatibilityError(
            f"incompatible index configuration: format "
            f"{header.get('format')!r} version {header.get('version')!r}"
        )
    if header.get("hash") != HASH_NAME:
        raise IndexCompatibilityError(
            f"incompatible index configuration: hash {header.get('hash')!r} "
            f"is not supported (expected {HASH_NAME!r})"
        )
    if header.get("normalization") != NORMALIZATION_VERSION:
        raise IndexCompatibilityError(
            f"incompatible index configuration: normalization "
            f"{header.get('normalization')!r} (expected {NORMALIZATION_VERSION!r})"
        )
    try:
        stamp = ConfigStamp(
            r=int(header["r"]),
            alpha=int(header["alpha"]),
            min_blocks=int(header["min_blocks"]),
            hash_name=header["hash"],
            normalization=header["normalization"],
        )
    except KeyError as exc:
        raise IndexFormatError(f"{path}: line 1: header missing key {exc}") from exc
    if not 1 <= stamp.r <= 64:
        raise IndexCompatibilityError(f"incompatible index configuration: r={stamp.r}")

    index = FingerprintIndex(config_stamp=stamp)
    for i in range(1, len(lines)):
        row = parse_line(i)
        try:
            record = IndexRecord(
                program_id=str(row["program_id"]),
                source_path=str(row["source_path"]),
                fingerprints=tuple(from_hex(h) for h in row["fingerprints"]),
                path_count=int(row["path_count"]),
                truncated=bool(row["truncated"]),
                config_stamp=stamp,
            )
        except KeyError as exc:
            raise IndexFormatError(f"{path}: line {i + 1}: record missing key {exc}") from exc
        except ValueError as exc:
            raise IndexFormatError(f"{path}: line {i + 1}: {exc}") from exc
        index.records[record.program_id] = record
    return index
