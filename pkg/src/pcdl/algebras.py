"""Pseudocomplemented distributive lattices over their dual posets.

An algebra is carried by the up-set lattice of a finite poset; the
pseudocomplement of an up-set U is the complement of the down-closure of U,
the largest up-set disjoint from U. Homomorphisms that preserve the star
correspond to maps g between the dual posets satisfying the maximal-point
condition g[M(y)] = M(g(y)), called p-morphisms below.
"""

from __future__ import annotations

from functools import cache

from .duality import LatticeHom, UpSetLattice, dual_space, unit_iso
from .posets import OrderMap, Poset, bits, fan

AXIOM_SCAN_LIMIT = 1024


class PcdLattice:
    """Finite PCDL realized as the up-set lattice of its dual poset."""

    __slots__ = ("base", "lattice", "star_table")

    def __init__(self, base: Poset, lattice: UpSetLattice, star_table: tuple):
        self.base = base
        self.lattice = lattice
        self.star_table = star_table

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def labels(self) -> tuple:
        return self.lattice.labels

    @property
    def carrier(self) -> tuple:
        return self.lattice.carrier

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.lattice.size - 1

    def join(self, i: int, j: int) -> int:
        return self.lattice.join(i, j)

    def meet(self, i: int, j: int) -> int:
        return self.lattice.meet(i, j)

    def leq(self, i: int, j: int) -> bool:
        return self.lattice.leq(i, j)

    def star(self, i: int) -> int:
        return self.star_table[i]

    def star_mask(self, mask: int) -> int:
        return self.base.full_mask & ~self.base.down_closure(mask)

    def index_of_mask(self, mask: int) -> int:
        return self.lattice.index_of_mask(mask)

    def __eq__(self, other):
        return isinstance(other, PcdLattice) and self.base == other.base

    def __hash__(self):
        return hash(("pcdl", self.base))

    def __repr__(self):
        return "PcdLattice(%d elements over %d points)" % (self.size,
                                                           self.base.n)


def pseudocomplement(poset: Poset, mask: int) -> int:
    """The largest up-set disjoint from mask."""
    if not poset.is_up_set(mask):
        raise ValueError("%s is not an up-set"
                         % (poset.labels_of(mask),))
    return poset.full_mask & ~poset.down_closure(mask)


def make_pcdl(poset: Poset) -> PcdLattice:
    """Equip the up-set lattice of a poset with its pseudocomplement.

    The defining biconditional (x below y-star exactly when x meets y at
    bottom) is re-proved by exhaustive pair scan up to AXIOM_SCAN_LIMIT
    carrier elements.
    """
    lattice = UpSetLattice(poset)
    full = poset.full_mask
    star_masks = [full & ~poset.down_closure(u) for u in lattice.carrier]
    star_table = tuple(lattice.index_of_mask(m) for m in star_masks)
    if lattice.size <= AXIOM_SCAN_LIMIT:
        carrier = lattice.carrier
        for j, v in enumerate(carrier):
            sj = star_masks[j]
            for u in carrier:
                if (u & ~sj == 0) != (u & v == 0):
                    raise AssertionError(
                        "pseudocomplement axiom fails at (%s, %s)"
                        % (poset.labels_of(u), poset.labels_of(v)))
    return PcdLattice(poset, lattice, star_table)


@cache
def fan_algebra(n: int) -> PcdLattice:
    """The 2^n-plus-new-unit algebra: up-sets of the n-top fan."""
    return make_pcdl(fan(n))


def abstract_star(lat) -> tuple:
    """Pseudocomplement table of a bounded lattice, by exhaustive scan.

    Raises if some element has no largest disjoint companion, i.e. the
    lattice is not pseudocomplemented.
    """
    n = lat.size
    bottom = lat.bottom
    out = []
    for y in range(n):
        s = bottom
        for x in range(n):
            if lat.meet(x, y) == bottom:
                s = lat.join(s, x)
        for x in range(n):
            if (lat.meet(x, y) == bottom) != lat.leq(x, s):
                raise ValueError("element %r has no pseudocomplement"
                                 % (lat.labels[y],))
        out.append(s)
    return tuple(out)


def pcdl_from_abstract(lat):
    """Rebuild an abstract PCDL over its dual poset.

    Returns (algebra, unit) where unit is the canonical isomorphism from
    lat onto the algebra's carrier. The scanned star of lat must be carried
    onto the dual-side star, which certifies that lat really was a PCDL.
    """
    star_abs = abstract_star(lat)
    unit = unit_iso(lat)
    algebra = make_pcdl(unit.target.base)
    for a in range(lat.size):
        if unit.table[star_abs[a]] != algebra.star(unit.table[a]):
            raise ValueError("star of %r is not carried by the canonical "
                             "isomorphism" % (lat.labels[a],))
    return algebra, unit


# -- p-morphisms -------------------------------------------------------------

def p_morphism_failure(f: OrderMap):
    """None if f is a p-morphism, else a small witness dict."""
    if not f.is_order_preserving():
        return {"reason": "not_order_preserving"}
    for y in range(f.source.n):
        img = f.image_of_mask(f.source.max_above(y))
        want = f.target.max_above(f.table[y])
        if img != want:
            return {"reason": "max_set_mismatch",
                    "point": f.source.labels[y],
                    "image": list(f.target.labels_of(img)),
                    "expected": list(f.target.labels_of(want))}
    return None


def is_p_morphism(f: OrderMap) -> bool:
    return p_morphism_failure(f) is None


def _iter_p_morphisms(source: Poset, target: Poset, onto: bool = False,
                      fibers=None, prefer_max: bool = False):
    """Backtracking generator of p-morphisms source -> target.

    Points are assigned top down, so when a point comes up all maximals
    above it already have images and the maximal-set condition prunes
    exactly. fibers optionally restricts each source point to a candidate
    mask; prefer_max yields candidates that are maximal in target first.
    """
    ns, nt = source.n, target.n
    if ns == 0:
        if nt == 0 or not onto:
            yield OrderMap(source, target, ())
        return
    if nt == 0:
        return
    order = sorted(range(ns), key=lambda i: (source.up[i].bit_count(), i))
    smax = source.maximals_mask
    tmax = target.maximals_mask
    t_above = [target.max_above(p) for p in range(nt)]
    s_above = [source.max_above(y) for y in range(ns)]
    tfull = target.full_mask
    assign = [0] * ns

    if prefer_max:
        def cand_order(mask):
            yield from bits(mask & tmax)
            yield from bits(mask & ~tmax)
    else:
        def cand_order(mask):
            yield from bits(mask)

    def rec(pos: int, image: int):
        if pos == ns:
            if not onto or image == tfull:
                yield OrderMap(source, target, tuple(assign))
            return
        if onto and (tfull & ~image).bit_count() > ns - pos:
            return
        y = order[pos]
        allowed = tfull
        for z in bits(source.covers_up[y]):
            allowed &= target.down[assign[z]]
        if fibers is not None:
            allowed &= fibers[y]
        if smax >> y & 1:
            for p in cand_order(allowed & tmax):
                assign[y] = p
                yield from rec(pos + 1, image | 1 << p)
        else:
            want = 0
            for t in bits(s_above[y]):
                want |= 1 << assign[t]
            for p in cand_order(allowed):
                if t_above[p] == want:
                    assign[y] = p
                    yield from rec(pos + 1, image | 1 << p)

    yield from rec(0, 0)


def p_morphisms(source: Poset, target: Poset, onto: bool = False) -> list:
    """All p-morphisms source -> target, onto ones only if requested."""
    return list(_iter_p_morphisms(source, target, onto=onto))


# -- star homomorphisms ------------------------------------------------------

def hom_of_dual_map(g: OrderMap, A: PcdLattice, B: PcdLattice) -> LatticeHom:
    """Transport a p-morphism g: P(B) -> P(A) to the hom A -> B it encodes.

    The returned hom is re-verified to preserve bounds, join, meet and star.
    """
    if g.source != B.base or g.target != A.base:
        raise ValueError("map does not run between the dual posets")
    table = tuple(B.index_of_mask(g.preimage_mask(u)) for u in A.carrier)
    hom = LatticeHom(A.lattice, B.lattice, table)
    if not hom.is_homomorphism():
        raise AssertionError("dual transport produced a non-homomorphism")
    for i in range(A.size):
        if hom.table[A.star(i)] != B.star(hom.table[i]):
            raise AssertionError("dual transport does not preserve star")
    return hom


def star_hom_pairs(A: PcdLattice, B: PcdLattice) -> list:
    """All (dual p-morphism, hom A -> B) pairs, each hom verified."""
    return [(g, hom_of_dual_map(g, A, B))
            for g in p_morphisms(B.base, A.base)]


def star_homs(A: PcdLattice, B: PcdLattice) -> list:
    """All star-preserving {0,1}-homomorphisms A -> B."""
    return [hom for _, hom in star_hom_pairs(A, B)]


def star_embeddings(A: PcdLattice, B: PcdLattice) -> list:
    """All one-to-one star homs A -> B; dual maps must be onto."""
    out = []
    for g, hom in star_hom_pairs(A, B):
        if g.is_onto():
            if not hom.is_one_to_one():
                raise AssertionError("dual of an onto map is not one-to-one")
            out.append(hom)
    return out


def embedding_p_morphism_witness(A: PcdLattice, i: int):
    """An order-embedding p-morphism from the i-top fan into P(A), or None.

    Such an embedding exists exactly when A has an onto star hom to the
    2^i-plus-unit algebra. For i of at least 2 it is witnessed by a point
    with exactly i maximals above it; for i = 1 the point must also be
    non-maximal, otherwise the dual 2-chain map would collapse.
    """
    if i < 0:
        raise ValueError("fan size must be nonnegative")
    base = A.base
    source = fan(i)
    if i == 0:
        for x in bits(base.maximals_mask):
            return OrderMap(source, base, (x,))
        return None
    max_mask = base.maximals_mask
    for x in range(base.n):
        above = base.max_above(x)
        if above.bit_count() != i:
            continue
        if i == 1 and max_mask >> x & 1:
            continue
        return OrderMap(source, base, tuple([x] + list(bits(above))))
    return None


def onto_star_hom_exists(A: PcdLattice, i: int) -> bool:
    """Whether some star hom maps A onto the 2^i-plus-unit algebra."""
    return embedding_p_morphism_witness(A, i) is not None


def variety_index(A: PcdLattice) -> int:
    """Largest maximal-set size in the dual; 0 for the trivial algebra.

    A lies in the variety generated by the 2^n-plus-unit algebra exactly
    when its index is at most n.
    """
    base = A.base
    if base.n == 0:
        return 0
    return max(base.max_above(x).bit_count() for x in range(base.n))


def in_variety(A: PcdLattice, n: int) -> bool:
    return variety_index(A) <= n
