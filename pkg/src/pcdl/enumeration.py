"""Enumeration of finite poset isomorphism classes.

Classes on n points are generated by adding one new maximal point over every
down-set of every class on n - 1 points, deduplicating by canonical key.
"""

from __future__ import annotations

from functools import cache

from .posets import Poset, bits


def _add_maximal(base: Poset, down_mask: int, new_label: str) -> Poset:
    labels = list(base.labels) + [new_label]
    pairs = []
    for i in range(base.n):
        for j in bits(base.covers_up[i]):
            pairs.append((base.labels[i], base.labels[j]))
    for i in bits(down_mask):
        pairs.append((base.labels[i], new_label))
    return Poset.from_covers(labels, pairs)


@cache
def poset_classes_exactly(n: int) -> tuple:
    """One representative per isomorphism class on exactly n points."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n == 0:
        return (Poset.from_covers([], []),)
    seen = {}
    for base in poset_classes_exactly(n - 1):
        for dmask in base.down_sets():
            cand = _add_maximal(base, dmask, "p%d" % (n - 1))
            key = cand.canonical_key()
            if key not in seen:
                seen[key] = cand
    return tuple(seen[k] for k in sorted(seen))


@cache
def poset_classes_upto(n: int) -> tuple:
    out = []
    for k in range(n + 1):
        out.extend(poset_classes_exactly(k))
    return tuple(out)


@cache
def classes_with_upsets_bounded(max_upsets: int) -> tuple:
    """All poset classes whose up-set lattice has at most max_upsets members.

    Removing a maximal point strictly shrinks the up-set count, so growing
    by one maximal point at a time with the bound as a prune is exhaustive.
    """
    if max_upsets < 1:
        return ()
    start = Poset.from_covers([], [])
    frontier = {start.canonical_key(): start}
    out = dict(frontier)
    while frontier:
        nxt = {}
        for base in frontier.values():
            ups = base.up_sets()
            for dmask in base.down_sets():
                grown = len(ups) + sum(1 for u in ups if not u & dmask)
                if grown > max_upsets:
                    continue
                cand = _add_maximal(base, dmask, "p%d" % base.n)
                key = cand.canonical_key()
                if key not in out:
                    out[key] = cand
                    nxt[key] = cand
        frontier = nxt
    return tuple(out[k] for k in sorted(out, key=lambda k: (k[0], k)))
