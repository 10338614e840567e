"""Program-level similarity over sets of path fingerprints.

A path "matches" the other program when its nearest fingerprint there
is within alpha bits. Containment asks how much of the smaller program
is matched by the larger one (so a file pasted into a bigger file still
scores 1.0); resemblance is symmetric and rewards mutual coverage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fingerprint import ProgramFingerprint, to_hex

GRADE_IDENTICAL = "identical"
GRADE_NEAR_IDENTICAL = "near-identical"
GRADE_SIMILAR = "similar"
GRADE_DISSIMILAR = "dissimilar"


@dataclass(frozen=True)
class PairDistanceSet:
    """All pairwise Hamming distances between two fingerprint sets,
    row-major: distances[i * size_b + j] pairs fingerprint i of A with
    fingerprint j of B (both sides in ascending bits order)."""

    distances: tuple[int, ...]
    size_a: int
    size_b: int


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    mode: str
    alpha: int
    matched_count: int
    denominator: int


@dataclass(frozen=True)
class PairReport:
    """Everything one probe-record comparison produces: the score, the
    matched-pair evidence (probe hex, other hex, distance; one entry
    per matched probe path, nearest partner wins), and the smallest
    distance overall (grades derive from it)."""

    score: SimilarityScore
    evidence: tuple[tuple[str, str, int], ...]
    min_distance: int


def _require_scoreable(fp: ProgramFingerprint) -> None:
    if not fp.scoreable:
        raise ValueError(f"unscoreable program: {fp.program_id!r} has no fingerprints")


def _distance_matrix(a_bits: tuple[int, ...], b_bits: tuple[int, ...]) -> np.ndarray:
    xa = np.array(a_bits, dtype=np.uint64)[:, None]
    xb = np.array(b_bits, dtype=np.uint64)[None, :]
    return np.bitwise_count(np.bitwise_xor(xa, xb)).astype(np.int64)


def path_distance_set(a: ProgramFingerprint, b: ProgramFingerprint) -> PairDistanceSet:
    _require_scoreable(a)
    _require_scoreable(b)
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    matrix = _distance_matrix(a.bits, b.bits)
    return PairDistanceSet(
        distances=tuple(int(d) for d in matrix.ravel()),
        size_a=len(a.fingerprints),
        size_b=len(b.fingerprints),
    )


def _matched_counts(matrix: np.ndarray, alpha: int) -> tuple[int, int]:
    """(paths of A matched in B, paths of B matched in A)."""
    a_to_b = int((matrix.min(axis=1) <= alpha).sum())
    b_to_a = int((matrix.min(axis=0) <= alpha).sum())
    return a_to_b, b_to_a


def similarity_containment(
    a: ProgramFingerprint, b: ProgramFingerprint, alpha: int
) -> SimilarityScore:
    """Matched share of the smaller program's paths.

    When the sets are the same size, the better direction counts.
    """
    _require_scoreable(a)
    _require_scoreable(b)
    matrix = _distance_matrix(a.bits, b.bits)
    a_to_b, b_to_a = _matched_counts(matrix, alpha)
    na, nb = len(a.fingerprints), len(b.fingerprints)
    if na < nb:
        matched = a_to_b
    elif nb < na:
        matched = b_to_a
    else:
        matched = max(a_to_b, b_to_a)
    denominator = min(na, nb)
    return SimilarityScore(
        value=matched / denominator,
        mode="containment",
        alpha=alpha,
        matched_count=matched,
        denominator=denominator,
    )


def similarity_resemblance(
    a: ProgramFingerprint, b: ProgramFingerprint, alpha: int
) -> SimilarityScore:
    """Mutual matched share: both directions over both sizes."""
    _require_scoreable(a)
    _require_scoreable(b)
    matrix = _distance_matrix(a.bits, b.bits)
    a_to_b, b_to_a = _matched_counts(matrix, alpha)
    na, nb = len(a.fingerprints), len(b.fingerprints)
    return SimilarityScore(
        value=(a_to_b + b_to_a) / (na + nb),
        mode="resemblance",
        alpha=alpha,
        matched_count=a_to_b + b_to_a,
        denominator=na + nb,
    )


def score_pair(
    a: ProgramFingerprint, b: ProgramFingerprint, alpha: int, mode: str = "containment"
) -> SimilarityScore:
    if mode == "containment":
        return similarity_containment(a, b, alpha)
    if mode == "resemblance":
        return similarity_resemblance(a, b, alpha)
    raise ValueError(f"unknown similarity mode {mode!r}")


def pair_report(
    a: ProgramFingerprint, b: ProgramFingerprint, alpha: int, mode: str = "containment"
) -> PairReport:
    """Score plus per-path evidence, computed off one distance matrix."""
    _require_scoreable(a)
    _require_scoreable(b)
    matrix = _distance_matrix(a.bits, b.bits)
    a_to_b, b_to_a = _matched_counts(matrix, alpha)
    na, nb = len(a.fingerprints), len(b.fingerprints)
    if mode == "containment":
        if na < nb:
            matched = a_to_b
        elif nb < na:
            matched = b_to_a
        else:
            matched = max(a_to_b, b_to_a)
        score = SimilarityScore(matched / min(na, nb), mode, alpha, matched, min(na, nb))
    elif mode == "resemblance":
        score = SimilarityScore((a_to_b + b_to_a) / (na + nb), mode, alpha,
                                a_to_b + b_to_a, na + nb)
    else:
        raise ValueError(f"unknown similarity mode {mode!r}")

    evidence = []
    mins = matrix.min(axis=1)
    # ties go to the lowest partner bits; columns are in ascending bits
    # order, so argmin already lands there
    partners = matrix.argmin(axis=1)
    for i in range(na):
        if mins[i] <= alpha:
            evidence.append(
                (to_hex(a.bits[i]), to_hex(b.bits[int(partners[i])]), int(mins[i]))
            )
    return PairReport(
        score=score,
        evidence=tuple(evidence),
        min_distance=int(matrix.min()),
    )


def classify(distance: int) -> str:
    """Distance band for a single fingerprint pair."""
    if distance < 0:
        raise ValueError(f"distance must be >= 0, got {distance}")
    if distance == 0:
        return GRADE_IDENTICAL
    if distance <= 3:
        return GRADE_NEAR_IDENTICAL
    if distance <= 7:
        return GRADE_SIMILAR
    return GRADE_DISSIMILAR
