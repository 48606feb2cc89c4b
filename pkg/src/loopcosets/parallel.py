"""Split the orbit search across worker processes.

The tree is cut a few branch points below the root; each worker replays
one choice prefix in a private copy of the rectangle.  Results are merged
in (size, rectangle) order so the output does not depend on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .bolenum import EnumConfig, Enumeration, build_context, enumerate_orbits
from .loop import LoopTable


def _worker(args):
    cayley, cfg, prefix = args
    ctx = build_context(LoopTable(cayley))
    return enumerate_orbits(ctx, cfg, prefix=prefix)


def enumerate_parallel(S: LoopTable, cfg: EnumConfig | None = None, workers: int = 2, depth: int = 3) -> Enumeration:
    cfg = cfg or EnumConfig()
    ctx = build_context(S)
    top = enumerate_orbits(ctx, cfg, split_depth=depth)
    rects = list(top.rectangles)
    truncated, reason = top.truncated, top.reason
    nodes = top.nodes
    elapsed = top.elapsed
    if top.prefixes:
        jobs = [(S.cayley, cfg, p) for p in top.prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, jobs):
                rects.extend(part.rectangles)
                nodes += part.nodes
                elapsed += part.elapsed
                if part.truncated:
                    truncated, reason = True, part.reason
    rects.sort(key=lambda r: (len(r), r))
    if len(rects) > cfg.max_rectangles:
        rects = rects[: cfg.max_rectangles]
        truncated, reason = True, "max_rectangles"
    return Enumeration(rects, truncated, reason, nodes, elapsed)
