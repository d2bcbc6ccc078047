"""Finite posets on bitmask subsets.

Elements are opaque string labels with a fixed index; any subset of the
carrier is an int whose bit i stands for element i. The order relation is
transitively closed once at construction and instances never mutate.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    up[i] / down[i] are reflexive up-set and down-set masks of element i;
    covers_up[i] / covers_down[i] hold the Hasse relation.
    """

    __slots__ = ("labels", "up", "down", "covers_up", "covers_down",
                 "_index", "_upsets", "_canon")

    def __init__(self, labels: tuple, up: tuple, down: tuple,
                 covers_up: tuple, covers_down: tuple):
        self.labels = labels
        self.up = up
        self.down = down
        self.covers_up = covers_up
        self.covers_down = covers_down
        self._index = {s: i for i, s in enumerate(labels)}
        self._upsets = None
        self._canon = None

    @classmethod
    def from_covers(cls, labels: Iterable[str],
                    covers: Iterable[tuple]) -> "Poset":
        """Build a poset from labels and generating strict-order pairs.

        The pairs need not be a Hasse diagram; any acyclic set of strict
        relations is accepted and the cover relation is recomputed from the
        transitive closure. Cycles and unknown labels raise ValueError.
        """
        labels = tuple(str(s) for s in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate element labels")
        index = {s: i for i, s in enumerate(labels)}
        n = len(labels)
        above = [0] * n
        for lo, hi in covers:
            if lo not in index:
                raise ValueError("unknown element %r in covers" % (lo,))
            if hi not in index:
                raise ValueError("unknown element %r in covers" % (hi,))
            i, j = index[lo], index[hi]
            if i == j:
                raise ValueError("element %r related strictly to itself" % (lo,))
            above[i] |= 1 << j
        # Warshall closure of the strict relation
        for k in range(n):
            kbit = 1 << k
            for i in range(n):
                if above[i] & kbit:
                    above[i] |= above[k]
        for i in range(n):
            if (above[i] >> i) & 1:
                raise ValueError("order cycle through %r" % (labels[i],))
        up = tuple(above[i] | (1 << i) for i in range(n))
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        down = tuple(down)
        covers_up = []
        for i in range(n):
            strict = up[i] ^ (1 << i)
            cov = 0
            for j in bits(strict):
                if not strict & (down[j] ^ (1 << j)):
                    cov |= 1 << j
            covers_up.append(cov)
        covers_up = tuple(covers_up)
        covers_dn = [0] * n
        for i in range(n):
            for j in bits(covers_up[i]):
                covers_dn[j] |= 1 << i
        return cls(labels, up, down, covers_up, tuple(covers_dn))

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index_of(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError("unknown element %r" % (label,)) from None

    def _as_index(self, x) -> int:
        return x if isinstance(x, int) else self.index_of(x)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @property
    def maximals_mask(self) -> int:
        m = 0
        for i in range(len(self.labels)):
            if self.up[i] == 1 << i:
                m |= 1 << i
        return m

    @property
    def minimals_mask(self) -> int:
        m = 0
        for i in range(len(self.labels)):
            if self.down[i] == 1 << i:
                m |= 1 << i
        return m

    def max_above(self, x) -> int:
        """Mask of the maximal elements above x (x included if maximal)."""
        return self.up[self._as_index(x)] & self.maximals_mask

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in bits(mask))

    def mask_of(self, elems: Iterable) -> int:
        m = 0
        for x in elems:
            m |= 1 << self._as_index(x)
        return m

    # -- subset operations -------------------------------------------------

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def is_up_set(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def up_sets(self) -> tuple:
        """All up-set masks, sorted by (size, mask). Computed once."""
        if self._upsets is None:
            n = len(self.labels)
            # visit elements top down so an element may enter only after
            # all of its upper covers had the chance to
            order = sorted(range(n), key=lambda i: (self.up[i].bit_count(), i))
            covers_up = self.covers_up
            acc = []
            def walk(pos: int, mask: int):
                if pos == n:
                    acc.append(mask)
                    return
                e = order[pos]
                walk(pos + 1, mask)
                if not covers_up[e] & ~mask:
                    walk(pos + 1, mask | (1 << e))
            walk(0, 0)
            acc.sort(key=lambda m: (m.bit_count(), m))
            self._upsets = tuple(acc)
        return self._upsets

    def down_sets(self) -> tuple:
        full = self.full_mask
        out = [full ^ u for u in self.up_sets()]
        out.sort(key=lambda m: (m.bit_count(), m))
        return tuple(out)

    # -- derived posets ----------------------------------------------------

    def restrict(self, mask: int) -> "Poset":
        """Induced sub-poset on the elements of mask, labels kept."""
        kept = list(bits(mask))
        labels = [self.labels[i] for i in kept]
        pairs = []
        for i in kept:
            for j in kept:
                if i != j and self.leq(i, j):
                    pairs.append((self.labels[i], self.labels[j]))
        return Poset.from_covers(labels, pairs)

    def dual(self) -> "Poset":
        pairs = []
        for i in range(len(self.labels)):
            for j in bits(self.covers_up[i]):
                pairs.append((self.labels[j], self.labels[i]))
        return Poset.from_covers(self.labels, pairs)

    def components(self) -> list:
        """Masks of the connected components of the comparability graph."""
        n = len(self.labels)
        seen = 0
        out = []
        for i in range(n):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = 1 << i
            while frontier:
                nxt = 0
                for j in bits(frontier):
                    nxt |= (self.up[j] | self.down[j]) & ~comp
                comp |= nxt
                frontier = nxt
            seen |= comp
            out.append(comp)
        return out

    # -- isomorphism -------------------------------------------------------

    def _stable_colors(self) -> list:
        n = len(self.labels)
        color = [(self.up[i].bit_count(), self.down[i].bit_count())
                 for i in range(n)]
        while True:
            comp = {c: r for r, c in enumerate(sorted(set(color)))}
            ranks = [comp[c] for c in color]
            nxt = [(ranks[i],
                    tuple(sorted(ranks[j] for j in bits(self.covers_up[i]))),
                    tuple(sorted(ranks[j] for j in bits(self.covers_down[i]))))
                   for i in range(n)]
            if len(set(nxt)) == len(set(color)):
                return ranks
            color = nxt

    def _canonical_search(self):
        n = len(self.labels)
        if n == 0:
            return (), ()
        colors = self._stable_colors()
        by_color = sorted(range(n), key=lambda i: (colors[i], i))
        target = [colors[i] for i in by_color]
        leq = self.leq
        best = [None]

        def walk(placed, used, code):
            k = len(placed)
            if k == n:
                cand = (tuple(code), tuple(placed))
                if best[0] is None or cand < best[0]:
                    best[0] = cand
                return
            want = target[k]
            exts = {}
            for e in range(n):
                if not used >> e & 1 and colors[e] == want:
                    enc = 0
                    for p in placed:
                        enc = enc << 2 | leq(e, p) << 1 | leq(p, e)
                    exts.setdefault(enc, []).append(e)
            low = min(exts)
            code.append(low)
            for e in exts[low]:
                placed.append(e)
                walk(placed, used | 1 << e, code)
                placed.pop()
            code.pop()

        walk([], 0, [])
        code, perm = best[0]
        return perm, code

    def canonical_key(self):
        """Hashable value equal across isomorphic posets only."""
        if self._canon is None:
            perm, code = self._canonical_search()
            n = len(self.labels)
            round0 = tuple(sorted((self.up[i].bit_count(),
                                   self.down[i].bit_count())
                                  for i in range(n)))
            self._canon = ((n, round0, code), perm)
        return self._canon[0]

    def canonical_perm(self) -> tuple:
        """Canonical ordering as a tuple position -> element index."""
        self.canonical_key()
        return self._canon[1]

    def isomorphic(self, other: "Poset") -> bool:
        return self.canonical_key() == other.canonical_key()

    def find_isomorphism(self, other: "Poset"):
        """Dict old index -> other index realizing an isomorphism, or None."""
        if not self.isomorphic(other):
            return None
        mine = self.canonical_perm()
        theirs = other.canonical_perm()
        return {mine[k]: theirs[k] for k in range(len(mine))}

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        pairs = []
        for i in range(len(self.labels)):
            for j in bits(self.covers_up[i]):
                pairs.append([self.labels[i], self.labels[j]])
        pairs.sort()
        return {"elements": list(self.labels), "covers": pairs}

    @classmethod
    def from_dict(cls, d: dict) -> "Poset":
        if not isinstance(d, dict):
            raise ValueError("poset document must be an object")
        if "elements" not in d or "covers" not in d:
            raise ValueError("poset document needs 'elements' and 'covers'")
        elems = d["elements"]
        covers = d["covers"]
        if not isinstance(elems, list):
            raise ValueError("'elements' must be a list")
        if not isinstance(covers, list):
            raise ValueError("'covers' must be a list of pairs")
        pairs = []
        for entry in covers:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ValueError("cover entry %r is not a pair" % (entry,))
            pairs.append((entry[0], entry[1]))
        return cls.from_covers(elems, pairs)

    def to_dot(self, name: str = "poset") -> str:
        lines = ["digraph %s {" % name, "  rankdir=BT;"]
        for s in self.labels:
            lines.append('  "%s";' % s)
        for i in range(len(self.labels)):
            for j in bits(self.covers_up[i]):
                lines.append('  "%s" -> "%s";' % (self.labels[i],
                                                  self.labels[j]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.labels == other.labels
                and self.up == other.up)

    def __hash__(self):
        return hash((self.labels, self.up))

    def __repr__(self):
        return "Poset(%d points: %s)" % (len(self.labels),
                                         ", ".join(self.labels[:8])
                                         + ("..." if len(self.labels) > 8 else ""))

    def __reduce__(self):
        return (Poset.from_dict, (self.to_dict(),))


class OrderMap:
    """Total map between posets, stored as an index table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: Poset, target: Poset, table: Iterable[int]):
        table = tuple(table)
        if len(table) != source.n:
            raise ValueError("map table does not cover the source")
        for t in table:
            if not 0 <= t < max(target.n, 1):
                raise ValueError("map table lands outside the target")
        if source.n and target.n == 0:
            raise ValueError("no maps into the empty poset")
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_labels(cls, source: Poset, target: Poset,
                    assignment: dict) -> "OrderMap":
        tab = []
        for s in source.labels:
            if s not in assignment:
                raise ValueError("map is not total: %r unassigned" % (s,))
            tab.append(target.index_of(assignment[s]))
        return cls(source, target, tab)

    @classmethod
    def identity(cls, poset: Poset) -> "OrderMap":
        return cls(poset, poset, range(poset.n))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return (isinstance(other, OrderMap) and self.table == other.table
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.source, self.target, self.table))

    def __repr__(self):
        body = ", ".join("%s->%s" % (self.source.labels[i],
                                     self.target.labels[t])
                         for i, t in enumerate(self.table))
        return "OrderMap(%s)" % body

    def image_mask(self) -> int:
        out = 0
        for t in self.table:
            out |= 1 << t
        return out

    def image_of_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.table[i]
        return out

    def preimage_mask(self, target_mask: int) -> int:
        out = 0
        for i, t in enumerate(self.table):
            if target_mask >> t & 1:
                out |= 1 << i
        return out

    def is_order_preserving(self) -> bool:
        # covers generate the order, so checking them is enough
        for i in range(self.source.n):
            fi = self.table[i]
            for j in bits(self.source.covers_up[i]):
                if not self.target.leq(fi, self.table[j]):
                    return False
        return True

    def is_order_embedding(self) -> bool:
        n = self.source.n
        for i in range(n):
            for j in range(n):
                if self.source.leq(i, j) != self.target.leq(self.table[i],
                                                            self.table[j]):
                    return False
        return True

    def is_onto(self) -> bool:
        return self.image_mask() == self.target.full_mask

    def classify(self) -> str:
        if not self.is_order_preserving():
            return "not_order_preserving"
        if not self.is_order_embedding():
            return "order_preserving"
        if not self.is_onto():
            return "order_embedding"
        return "both_embedding_and_onto"

    def compose(self, inner: "OrderMap") -> "OrderMap":
        """The map doing inner first, then self."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        return OrderMap(inner.source, self.target,
                        tuple(self.table[t] for t in inner.table))

    def map_labels(self) -> dict:
        return {self.source.labels[i]: self.target.labels[t]
                for i, t in enumerate(self.table)}

    def to_dict(self) -> dict:
        return {"source": self.source.to_dict(),
                "target": self.target.to_dict(),
                "map": self.map_labels()}

    @classmethod
    def from_dict(cls, d: dict) -> "OrderMap":
        if not isinstance(d, dict) or "map" not in d:
            raise ValueError("map document needs 'source', 'target', 'map'")
        if "source" not in d or "target" not in d:
            raise ValueError("map document needs 'source', 'target', 'map'")
        src = Poset.from_dict(d["source"])
        tgt = Poset.from_dict(d["target"])
        if not isinstance(d["map"], dict):
            raise ValueError("'map' must be an object of label pairs")
        return cls.from_labels(src, tgt, d["map"])


def classify_map(f: OrderMap) -> str:
    return f.classify()


def max_above(poset: Poset, x) -> tuple:
    """Labels of the maximal elements above x."""
    return poset.labels_of(poset.max_above(x))


# -- constructions ----------------------------------------------------------

def antichain(n: int) -> Poset:
    if n < 0:
        raise ValueError("size must be nonnegative")
    return Poset.from_covers(["x%d" % i for i in range(n)], [])


def chain(n: int) -> Poset:
    if n < 0:
        raise ValueError("size must be nonnegative")
    labels = ["c%d" % i for i in range(n)]
    return Poset.from_covers(labels, [(labels[i], labels[i + 1])
                                      for i in range(n - 1)])


def fan(n: int) -> Poset:
    """One bottom below an n-element antichain of tops."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    labels = ["g"] + ["t%d" % (i + 1) for i in range(n)]
    return Poset.from_covers(labels, [("g", t) for t in labels[1:]])


def _relabel(poset: Poset, suffix: str) -> Poset:
    labels = [s + suffix for s in poset.labels]
    pairs = []
    for i in range(poset.n):
        for j in bits(poset.covers_up[i]):
            pairs.append((labels[i], labels[j]))
    return Poset.from_covers(labels, pairs)


def ordinal_sum(lower: Poset, upper: Poset) -> Poset:
    """Stack lower entirely below upper."""
    if set(lower.labels) & set(upper.labels):
        lower = _relabel(lower, ".0")
        upper = _relabel(upper, ".1")
    labels = list(lower.labels) + list(upper.labels)
    pairs = []
    for p in (lower, upper):
        for i in range(p.n):
            for j in bits(p.covers_up[i]):
                pairs.append((p.labels[i], p.labels[j]))
    for i in bits(lower.maximals_mask):
        for j in bits(upper.minimals_mask):
            pairs.append((lower.labels[i], upper.labels[j]))
    return Poset.from_covers(labels, pairs)


class DisjointSum(NamedTuple):
    poset: Poset
    part_of: tuple

    def part_mask(self, k: int) -> int:
        out = 0
        for i, p in enumerate(self.part_of):
            if p == k:
                out |= 1 << i
        return out


def disjoint_sum(parts: Iterable[Poset]) -> DisjointSum:
    """Side-by-side sum; elements of different parts are incomparable."""
    parts = list(parts)
    all_labels = [s for p in parts for s in p.labels]
    if len(set(all_labels)) != len(all_labels):
        parts = [_relabel(p, ".%d" % k) for k, p in enumerate(parts)]
    labels = []
    part_of = []
    pairs = []
    for k, p in enumerate(parts):
        labels.extend(p.labels)
        part_of.extend([k] * p.n)
        for i in range(p.n):
            for j in bits(p.covers_up[i]):
                pairs.append((p.labels[i], p.labels[j]))
    return DisjointSum(Poset.from_covers(labels, pairs), tuple(part_of))
