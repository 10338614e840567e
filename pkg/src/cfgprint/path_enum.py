"""Simple-path enumeration over a CFG.

A path runs from the entry block to the exit block and never repeats a
block, so each loop contributes at most one traversal per path. Search
is depth-first with successors explored in ascending block id, which
makes the output order deterministic (lexicographic by block id).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cfg_builder import ControlFlowGraph


@dataclass(frozen=True)
class ExecutionPath:
    """One entry-to-exit block sequence.

    real_block_count excludes the synthetic exit block, so it reflects
    how much program the path actually covers.
    """

    block_ids: tuple[int, ...]
    real_block_count: int


@dataclass(frozen=True)
class PathSet:
    paths: tuple[ExecutionPath, ...]
    truncated: bool


def enumerate_paths(cfg: ControlFlowGraph, max_paths: int = 10000) -> PathSet:
    """All simple entry-to-exit paths, in deterministic order.

    If more than max_paths exist, the first max_paths (in search order)
    are returned with truncated=True.
    """
    if max_paths < 1:
        raise ValueError(f"max_paths must be >= 1, got {max_paths}")
    virtual = {b.id for b in cfg.blocks if b.is_virtual_exit}
    collected: list[tuple[int, ...]] = []
    # collect one extra path so truncation is detectable without a
    # separate existence probe
    limit = max_paths + 1
    visited: set[int] = set()
    trail: list[int] = []

    def dfs(block_id: int) -> bool:
        trail.append(block_id)
        if block_id == cfg.exit_id:
            collected.append(tuple(trail))
            trail.pop()
            return len(collected) >= limit
        visited.add(block_id)
        for nxt in cfg.successors(block_id):
            if nxt not in visited:
                if dfs(nxt):
                    visited.discard(block_id)
                    trail.pop()
                    return True
        visited.discard(block_id)
        trail.pop()
        return False

    dfs(cfg.entry_id)
    truncated = len(collected) > max_paths
    paths = tuple(
        ExecutionPath(ids, sum(1 for i in ids if i not in virtual))
        for ids in collected[:max_paths]
    )
    return PathSet(paths=paths, truncated=truncated)


def filter_paths(
    paths: Sequence[ExecutionPath], min_blocks: int = 3
) -> list[ExecutionPath]:
    """Keep paths covering at least min_blocks real blocks.

    Short paths are mostly boilerplate and would make unrelated
    programs look alike, so they are dropped before fingerprinting.
    """
    if min_blocks < 1:
        raise ValueError(f"min_blocks must be >= 1, got {min_blocks}")
    return [p for p in paths if p.real_block_count >= min_blocks]
