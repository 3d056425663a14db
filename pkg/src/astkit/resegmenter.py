"""Realign an unsegmented hypothesis token stream to a reference segmentation.

Given hypothesis tokens ``h[0:n]`` and reference segments ``r_1 .. r_K``,
choose cut positions ``0 <= b_1 <= ... <= b_(K-1) <= n`` so that the sum
of word-level Levenshtein distances between each induced hypothesis piece
``h[b_(k-1):b_k]`` and its reference segment is minimal. A translation
produced under one audio segmentation can then be scored line-by-line
against references that were segmented differently.

The optimum is found with a dynamic program over (reference segment,
hypothesis position) whose inner edit-distance rows are seeded with the
previous segment's costs, giving O(n * total_ref_len) time. Among equal
cost solutions the lexicographically smallest boundary vector is
returned, which makes results reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

# Exhaustive enumeration guards for brute_force_resegment.
BRUTE_FORCE_MAX_HYP = 14
BRUTE_FORCE_MAX_REFS = 4


@dataclass(frozen=True)
class AlignedSegmentation:
    """Cut positions into the hypothesis stream plus the achieved cost."""

    boundaries: tuple[int, ...]
    total_cost: int

    def split(self, hyp_tokens: list[str]) -> list[list[str]]:
        """Apply the boundaries, yielding one token list per reference segment."""
        cuts = (0, *self.boundaries, len(hyp_tokens))
        return [hyp_tokens[a:b] for a, b in zip(cuts, cuts[1:])]


def edit_distance(a: list[str], b: list[str]) -> int:
    """Levenshtein distance between token sequences, unit costs."""
    if len(a) < len(b):
        a, b = b, a
    # b is the shorter side; row indexed by positions in b
    row = list(range(len(b) + 1))
    for i, ai in enumerate(a, start=1):
        prev_diag = row[0]
        row[0] = i
        for j, bj in enumerate(b, start=1):
            cur = min(
                row[j] + 1,
                row[j - 1] + 1,
                prev_diag + (0 if ai == bj else 1),
            )
            prev_diag = row[j]
            row[j] = cur
    return row[len(b)]


def _forward_costs(hyp: list[str], refs: list[list[str]]) -> list[list[int]]:
    """g[k][j] = min cost of aligning refs[0:k] to hyp[0:j].

    Each reference segment runs one edit-distance table over the whole
    hypothesis whose "empty ref prefix" column may start at any position j
    with the previous layer's cost g[k-1][j], which folds the minimization
    over the segment's start position into the table itself.
    """
    n = len(hyp)
    g = [[j for j in range(n + 1)]]  # zero segments: j leftover tokens to delete
    for ref in refs:
        prev = g[-1]
        m = len(ref)
        # col[t] = best cost using ref[0:t] and hyp[0:j], minimized over start
        col = [prev[0] + t for t in range(m + 1)]
        layer = [col[m]]
        for j in range(1, n + 1):
            new0 = min(col[0] + 1, prev[j])
            new_col = [new0]
            for t in range(1, m + 1):
                sub = col[t - 1] + (0 if hyp[j - 1] == ref[t - 1] else 1)
                new_col.append(min(col[t] + 1, new_col[t - 1] + 1, sub))
            col = new_col
            layer.append(col[m])
        g.append(layer)
    return g


def _suffix_costs(hyp: list[str], refs: list[list[str]]) -> list[list[int]]:
    """h[k][j] = min cost of aligning refs[k:] to hyp[j:].

    Computed by running the forward recursion on the reversed instance;
    Levenshtein distance is invariant under reversing both sequences.
    """
    rev_hyp = hyp[::-1]
    rev_refs = [r[::-1] for r in reversed(refs)]
    g = _forward_costs(rev_hyp, rev_refs)
    n = len(hyp)
    K = len(refs)
    return [[g[K - k][n - j] for j in range(n + 1)] for k in range(K + 1)]


def resegment(hyp: list[str], refs: list[list[str]]) -> AlignedSegmentation:
    """Optimal cut of ``hyp`` into ``len(refs)`` pieces by total edit distance.

    Returns the minimum-cost boundaries; ties resolve to the
    lexicographically smallest boundary vector. Empty induced pieces are
    allowed. An empty hypothesis is valid and costs the total reference
    length.
    """
    if not refs:
        raise ValueError("refs must be non-empty")
    n = len(hyp)
    K = len(refs)
    suffix = _suffix_costs(hyp, refs)
    total = suffix[0][0]

    boundaries: list[int] = []
    j = 0
    cost_so_far = 0
    for k in range(K - 1):
        ref = refs[k]
        m = len(ref)
        # lev(hyp[j:b], ref) for growing b, one row at a time
        row = list(range(m + 1))
        chosen = None
        for b in range(j, n + 1):
            if b > j:
                tok = hyp[b - 1]
                prev_diag = row[0]
                row[0] = b - j
                for t in range(1, m + 1):
                    cur = min(
                        row[t] + 1,
                        row[t - 1] + 1,
                        prev_diag + (0 if tok == ref[t - 1] else 1),
                    )
                    prev_diag = row[t]
                    row[t] = cur
            if cost_so_far + row[m] + suffix[k + 1][b] == total:
                chosen = b
                segment_cost = row[m]
                break
        assert chosen is not None, "no boundary consistent with the optimum"
        boundaries.append(chosen)
        cost_so_far += segment_cost
        j = chosen

    return AlignedSegmentation(tuple(boundaries), total)


def brute_force_resegment(hyp: list[str], refs: list[list[str]]) -> AlignedSegmentation:
    """Exhaustive oracle: try every non-decreasing boundary vector.

    Only intended for tiny instances; refuses anything beyond
    ``BRUTE_FORCE_MAX_HYP`` hypothesis tokens or ``BRUTE_FORCE_MAX_REFS``
    reference segments.
    """
    if not refs:
        raise ValueError("refs must be non-empty")
    if len(hyp) > BRUTE_FORCE_MAX_HYP or len(refs) > BRUTE_FORCE_MAX_REFS:
        raise ValueError(
            f"instance too large for exhaustive search: |hyp|={len(hyp)} "
            f"(max {BRUTE_FORCE_MAX_HYP}), |refs|={len(refs)} (max {BRUTE_FORCE_MAX_REFS})"
        )
    n = len(hyp)
    K = len(refs)
    best: AlignedSegmentation | None = None
    # combinations_with_replacement yields boundary vectors in lexicographic
    # order, so keeping the first strict minimum realizes the tie-break.
    for cuts in itertools.combinations_with_replacement(range(n + 1), K - 1):
        positions = (0, *cuts, n)
        cost = sum(
            edit_distance(hyp[a:b], ref)
            for (a, b), ref in zip(zip(positions, positions[1:]), refs)
        )
        if best is None or cost < best.total_cost:
            best = AlignedSegmentation(tuple(cuts), cost)
    assert best is not None
    return best


def resegment_lines(hyp_text: str, ref_lines: list[str], lowercase: bool = False) -> list[str]:
    """File-level entry point: re-cut a hypothesis document to reference lines.

    The whole hypothesis document is tokenized on whitespace and re-cut
    into one output line per reference line. With ``lowercase`` the
    alignment costs are computed case-insensitively, but the emitted
    tokens keep their original case.
    """
    hyp_tokens = hyp_text.split()
    refs = [line.split() for line in ref_lines]
    if lowercase:
        aligned = resegment(
            [t.lower() for t in hyp_tokens], [[t.lower() for t in r] for r in refs]
        )
    else:
        aligned = resegment(hyp_tokens, refs)
    return [" ".join(piece) for piece in aligned.split(hyp_tokens)]
