"""Path fingerprints: per-statement hashing folded into SimHash bits.

Each normalized statement text is hashed to 64 bits with FNV-1a. A
path's fingerprint is the SimHash of its statement multiset: for every
bit position, count +1 when a statement hash has the bit set and -1
when it does not, then emit 1 where the tally is positive. Paths that
share most statements therefore land within a few bits of each other,
and the distance between two fingerprints is a plain Hamming distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cfg_builder import ControlFlowGraph
from .frontend import NormalizedStatement

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def hash_statement(statement: NormalizedStatement) -> int:
    """64-bit digest of the normalized statement text."""
    return fnv1a64(statement.text.encode("utf-8"))


def simhash_bits(hashes: Iterable[int], width: int = 64) -> int:
    """Majority vote per bit over a multiset of hashes.

    Bit i of the result is 1 iff strictly more inputs have bit i set
    than clear (ties produce 0). Order-independent by construction.
    """
    if not 1 <= width <= 64:
        raise ValueError(f"width must be in 1..64, got {width}")
    counts = [0] * width
    n = 0
    for h in hashes:
        n += 1
        for i in range(width):
            counts[i] += 1 if (h >> i) & 1 else -1
    if n == 0:
        raise ValueError("empty path")
    out = 0
    for i in range(width):
        if counts[i] > 0:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class PathFingerprint:
    bits: int
    source_path_id: tuple[str, int]  # (program id, path index)
    width: int = 64


@dataclass(frozen=True)
class ProgramFingerprint:
    """Deduplicated path fingerprints for one program.

    fingerprints are sorted by bits; source_path_id keeps the first
    path that produced each value. path_count is the pre-dedup count,
    truncated echoes the enumeration flag.
    """

    program_id: str
    fingerprints: tuple[PathFingerprint, ...]
    path_count: int
    truncated: bool
    width: int = 64

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(f.bits for f in self.fingerprints)

    @property
    def scoreable(self) -> bool:
        return len(self.fingerprints) > 0


def fingerprint_path(
    path_block_ids: Sequence[int], cfg: ControlFlowGraph, width: int = 64
) -> int:
    """SimHash over every statement in every real block on the path."""
    hashes = [
        hash_statement(s)
        for block_id in path_block_ids
        for s in cfg.blocks[block_id].statements
    ]
    if not hashes:
        raise ValueError("empty path")
    return simhash_bits(hashes, width)


def fingerprint_program(
    paths: Sequence,  # ExecutionPath
    cfg: ControlFlowGraph,
    program_id: str,
    width: int = 64,
    truncated: bool = False,
) -> ProgramFingerprint:
    """Fingerprint each path and deduplicate by bits.

    An empty path list (nothing survived filtering) produces an empty,
    unscoreable fingerprint rather than an error: the caller decides
    how to report it.
    """
    first_seen: dict[int, PathFingerprint] = {}
    for idx, path in enumerate(paths):
        bits = fingerprint_path(path.block_ids, cfg, width)
        if bits not in first_seen:
            first_seen[bits] = PathFingerprint(bits, (program_id, idx), width)
    return ProgramFingerprint(
        program_id=program_id,
        fingerprints=tuple(sorted(first_seen.values(), key=lambda f: f.bits)),
        path_count=len(paths),
        truncated=truncated,
        width=width,
    )


def hamming(a: PathFingerprint, b: PathFingerprint) -> int:
    """Number of differing bits between two path fingerprints."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    return (a.bits ^ b.bits).bit_count()


def hamming_bits(a: int, b: int) -> int:
    """Hamming distance on raw fingerprint values."""
    return (a ^ b).bit_count()


def to_hex(bits: int) -> str:
    """Canonical 16-character lower-case hex form."""
    return format(bits, "016x")


def from_hex(text: str) -> int:
    if len(text) != 16:
        raise ValueError(f"fingerprint hex must be 16 characters, got {text!r}")
    return int(text, 16)
