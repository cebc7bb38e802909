"""Weisfeiler-Leman refinement: vertex color refinement (1-WL) and pair
refinement (2-WL) producing the coherent configuration of a graph.

The 2-WL round replaces the color of each pair (u, v) by its old color
together with the sorted multiset over w of the color pairs
(color(u, w), color(w, v)). Rounds are synchronous; refinement only splits
classes, so at most n^2 rounds occur. New color ids are assigned from the
lexicographically sorted distinct signatures, which is deterministic across
platforms, and the final ids are renumbered in first-occurrence (row-major)
order. The stable coloring is the smallest coherent configuration in which
the arc set is a union of classes: the initial (diagonal, arc, non-arc)
classes are unions of classes of any such configuration, and each round
preserves that property because intersection numbers are well defined there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import Graph


@dataclass
class PairColoring:
    """Coloring of V x V with contiguous color ids 0..num_colors-1."""

    n: int
    color: np.ndarray
    num_colors: int


@dataclass
class CoherentConfiguration:
    coloring: PairColoring
    rank: int


def _renumber_first_occurrence(flat: np.ndarray) -> tuple[np.ndarray, int]:
    """Relabel integer array values to 0..r-1 in order of first occurrence."""
    uniq, first_pos, inverse = np.unique(flat, return_index=True, return_inverse=True)
    order = np.argsort(first_pos, kind="stable")
    relabel = np.empty(len(uniq), dtype=np.int64)
    relabel[order] = np.arange(len(uniq))
    return relabel[inverse], len(uniq)


def initial_pair_coloring(g: Graph) -> PairColoring:
    """Diagonal, arc, reverse-arc and non-arc classes, degenerate cases
    collapsing to fewer colors."""
    n = g.n
    a = g.to_matrix().astype(np.int64)
    code = a + 2 * a.T
    np.fill_diagonal(code, 4)
    flat, num = _renumber_first_occurrence(code.ravel())
    return PairColoring(n, flat.reshape(n, n), num)


def _wl2_round(color: np.ndarray, num_colors: int) -> tuple[np.ndarray, int]:
    n = color.shape[0]
    # sig[u, v, w] encodes the pair (color(u, w), color(w, v)).
    sig = color[:, None, :] * np.int64(num_colors) + color.T[None, :, :]
    sig.sort(axis=2)
    full = np.concatenate([color[:, :, None], sig], axis=2).reshape(n * n, n + 1)
    _, inverse = np.unique(full, axis=0, return_inverse=True)
    flat, num = _renumber_first_occurrence(inverse)
    return flat.reshape(n, n), num


def wl2(g: Graph) -> CoherentConfiguration:
    """Stable 2-WL pair coloring of g, verified coherent before returning.

    Raises RuntimeError if the stabilized coloring fails the independent
    coherence recheck (an implementation fault, not a property of g).
    """
    init = initial_pair_coloring(g)
    color, num = init.color, init.num_colors
    if g.n > 0:
        while True:
            new_color, new_num = _wl2_round(color, num)
            if new_num == num:
                break
            color, num = new_color, new_num
    flat, num = _renumber_first_occurrence(color.ravel())
    coloring = PairColoring(g.n, flat.reshape(g.n, g.n), num)
    check = verify_coherence(coloring)
    if not check.ok:
        raise RuntimeError(f"2-WL produced an incoherent coloring: {check.witness}")
    return CoherentConfiguration(coloring, num)


def wl_rank(g: Graph) -> int:
    """Rank of the smallest coherent configuration in which the arc set of g
    is a union of classes."""
    return wl2(g).rank


@dataclass
class CoherenceResult:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_coherence(c: PairColoring) -> CoherenceResult:
    """Independent recheck that a pair coloring is a coherent configuration.

    Checks that the diagonal is a union of classes, that the transpose of
    every class is a class, and that all intersection numbers are well
    defined (counted here by 0/1 matrix products rather than by the
    refinement signatures). Returns a witness describing the first failure.
    """
    n = c.n
    color = c.color
    if n == 0:
        return CoherenceResult(True)

    diag_colors = set(np.unique(np.diagonal(color)).tolist())
    off = color[~np.eye(n, dtype=bool)]
    if diag_colors & set(np.unique(off).tolist()):
        bad = sorted(diag_colors & set(np.unique(off).tolist()))[0]
        return CoherenceResult(False, {"kind": "diagonal", "color": int(bad)})

    for i in range(c.num_colors):
        partners = np.unique(color.T[color == i])
        if len(partners) != 1:
            return CoherenceResult(
                False,
                {"kind": "transpose", "color": int(i),
                 "partners": [int(x) for x in partners]},
            )

    flat = color.ravel()
    order = np.argsort(flat, kind="stable")
    sorted_colors = flat[order]
    boundaries = np.flatnonzero(np.r_[True, sorted_colors[1:] != sorted_colors[:-1]])
    masks = [(color == i).astype(np.float64) for i in range(c.num_colors)]
    for i in range(c.num_colors):
        for j in range(c.num_colors):
            counts = (masks[i] @ masks[j]).ravel()[order]
            lo = np.minimum.reduceat(counts, boundaries)
            hi = np.maximum.reduceat(counts, boundaries)
            bad = np.flatnonzero(lo != hi)
            if len(bad):
                r = int(sorted_colors[boundaries[bad[0]]])
                pairs = np.argwhere(color == r)
                vals = (masks[i] @ masks[j])[color == r]
                p_lo = pairs[int(np.argmin(vals))]
                p_hi = pairs[int(np.argmax(vals))]
                return CoherenceResult(
                    False,
                    {
                        "kind": "intersection",
                        "colors": (i, j),
                        "class": r,
                        "pairs": (tuple(int(x) for x in p_lo),
                                  tuple(int(x) for x in p_hi)),
                        "counts": (int(vals.min()), int(vals.max())),
                    },
                )
    return CoherenceResult(True)


def configuration_to_json(c: CoherentConfiguration, run_length: bool = False) -> str:
    """Serialize a coherent configuration: n, rank and the color matrix in
    row-major order, run-length encoded as [color, count] pairs on request."""
    flat = [int(x) for x in c.coloring.color.ravel()]
    if run_length:
        encoded: list[list[int]] = []
        for value in flat:
            if encoded and encoded[-1][0] == value:
                encoded[-1][1] += 1
            else:
                encoded.append([value, 1])
        obj = {"n": c.coloring.n, "rank": c.rank, "colors_rle": encoded}
    else:
        obj = {"n": c.coloring.n, "rank": c.rank, "colors": flat}
    return json.dumps(obj, sort_keys=True) + "\n"


def wl1(g: Graph) -> list[int]:
    """Stable vertex coloring under color refinement, canonically numbered.

    Each round replaces a vertex color by (old color, sorted multiset of
    out-neighbor colors, sorted multiset of in-neighbor colors); for
    undirected graphs the two multisets coincide.
    """
    n = g.n
    colors = [0] * n
    in_nbrs: list[list[int]] = [[] for _ in range(n)]
    out_nbrs = [g.neighbors(u) for u in range(n)]
    for u in range(n):
        for v in out_nbrs[u]:
            in_nbrs[v].append(u)
    while True:
        sigs = [
            (
                colors[u],
                tuple(sorted(colors[v] for v in out_nbrs[u])),
                tuple(sorted(colors[v] for v in in_nbrs[u])),
            )
            for u in range(n)
        ]
        ordering = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new_colors = [ordering[s] for s in sigs]
        if len(ordering) == len(set(colors)):
            return new_colors
        colors = new_colors


def wl1_distinguishes(g1: Graph, g2: Graph) -> bool:
    """True iff stable color refinement separates g1 from g2.

    Refinement runs on the disjoint union so both graphs share one color
    vocabulary; the graphs are distinguished iff the color histograms of the
    two sides differ. Requires equal vertex counts.
    """
    if g1.n != g2.n:
        raise ValueError("graphs must have the same vertex count")
    if g1.directed != g2.directed:
        raise ValueError("graphs must both be directed or both undirected")
    n = g1.n
    union = Graph(2 * n, directed=g1.directed)
    union.rows = list(g1.rows) + [r << n for r in g2.rows]
    colors = wl1(union)
    return sorted(colors[:n]) != sorted(colors[n:])
