"""Independent reference implementations used to cross-check the package."""

from __future__ import annotations

from sigbounds.sigregex import (
    Concat,
    Empty,
    Epsilon,
    Lit,
    Regex,
    Star,
    Union,
)

NEG = float("-inf")


def height_oracle(word: str) -> int:
    """Minimal series height by difference-constraint feasibility.

    Builds the constraint graph of the word (ascent forces +1, descent
    forces -1, equality forces 0), takes all-pairs tightest implied
    differences, and returns the smallest h for which the system fits
    in a window of height h.
    """
    k = len(word)
    n = k + 1
    dist = [[NEG] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for i, ch in enumerate(word):
        if ch == "<":
            dist[i][i + 1] = max(dist[i][i + 1], 1)
        elif ch == ">":
            dist[i + 1][i] = max(dist[i + 1][i], 1)
        else:
            dist[i][i + 1] = max(dist[i][i + 1], 0)
            dist[i + 1][i] = max(dist[i + 1][i], 0)
    for m in range(n):
        dm = dist[m]
        for i in range(n):
            dim = dist[i][m]
            if dim == NEG:
                continue
            di = dist[i]
            for j in range(n):
                alt = dim + dm[j]
                if alt > di[j]:
                    di[j] = alt
    forced = max(max(x for x in row if x != NEG) for row in dist)
    for h in range(0, k + 1):
        if forced <= h:
            return h
    return k


def naive_matches(node: Regex, word: str) -> bool:
    """Structural-recursion matcher, independent of any automaton."""
    memo: dict[tuple[Regex, str], bool] = {}

    def go(n: Regex, w: str) -> bool:
        key = (n, w)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(n, Empty):
            out = False
        elif isinstance(n, Epsilon):
            out = w == ""
        elif isinstance(n, Lit):
            out = w == n.letter
        elif isinstance(n, Union):
            out = any(go(p, w) for p in n.parts)
        elif isinstance(n, Concat):
            out = _concat(n.parts, w)
        elif isinstance(n, Star):
            if w == "":
                out = True
            else:
                out = any(
                    go(n.inner, w[:i]) and go(n, w[i:])
                    for i in range(1, len(w) + 1)
                )
        else:
            raise TypeError(f"unknown node {n!r}")
        memo[key] = out
        return out

    def _concat(parts: tuple[Regex, ...], w: str) -> bool:
        if not parts:
            return w == ""
        head, rest = parts[0], parts[1:]
        return any(
            go(head, w[:i]) and _concat(rest, w[i:])
            for i in range(len(w) + 1)
        )

    return go(node, word)
