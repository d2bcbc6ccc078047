import random

import pytest

from pcdl import (DisjointSum, OrderMap, Poset, antichain, bits, chain,
                  classify_map, disjoint_sum, fan, max_above, ordinal_sum)

from _oracles import (check_partial_order, closure_from_covers, iso_brute,
                      random_poset, random_relabel, upsets_brute)


def test_bits():
    assert list(bits(0)) == []
    assert list(bits(0b10110)) == [1, 2, 4]


def test_from_covers_closure_matches_brute():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(1, 8)
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    pairs.append((i, j))
        p = Poset.from_covers(["x%d" % i for i in range(n)],
                              [("x%d" % a, "x%d" % b) for a, b in pairs])
        leq = closure_from_covers(n, pairs)
        for i in range(n):
            for j in range(n):
                assert p.leq(i, j) == leq[i][j]
        assert check_partial_order(n, p.leq)


def test_from_covers_accepts_transitive_generators():
    p = Poset.from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"),
                                            ("a", "c")])
    # the redundant generator must not show up as a cover
    assert sorted(p.to_dict()["covers"]) == [["a", "b"], ["b", "c"]]


def test_from_covers_rejects_cycles():
    with pytest.raises(ValueError, match="cycle"):
        Poset.from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_from_covers_rejects_unknown_labels_and_duplicates():
    with pytest.raises(ValueError):
        Poset.from_covers(["a"], [("a", "zz")])
    with pytest.raises(ValueError):
        Poset.from_covers(["a", "a"], [])


def test_up_sets_match_brute():
    rng = random.Random(11)
    posets = [antichain(0), antichain(3), chain(3), fan(3)]
    posets += [random_poset(rng.randrange(1, 7), rng) for _ in range(25)]
    for p in posets:
        ups = list(p.up_sets())
        assert sorted(ups) == upsets_brute(p)
        assert ups == sorted(ups, key=lambda m: (m.bit_count(), m))


def test_up_set_predicates():
    p = fan(2)
    g = p.index_of("g")
    t1 = p.index_of("t1")
    assert p.is_up_set(1 << t1)
    assert not p.is_up_set(1 << g)
    assert p.up_closure(1 << g) == p.full_mask
    assert p.down_closure(1 << t1) == (1 << t1) | (1 << g)


def test_maximals_and_max_above():
    p = fan(3)
    assert p.maximals_mask == p.mask_of(["t1", "t2", "t3"])
    assert p.minimals_mask == p.mask_of(["g"])
    assert set(max_above(p, "g")) == {"t1", "t2", "t3"}
    assert set(max_above(p, "t2")) == {"t2"}


def test_restrict_and_dual():
    p = fan(3)
    keep = p.mask_of(["g", "t1"])
    sub = p.restrict(keep)
    assert sub.n == 2 and sub.leq(sub.index_of("g"), sub.index_of("t1"))
    d = p.dual()
    assert d.maximals_mask == d.mask_of(["g"])


def test_components():
    two_fans = disjoint_sum([fan(2), fan(1)]).poset
    comps = two_fans.components()
    assert sorted(m.bit_count() for m in comps) == [2, 3]
    assert antichain(0).components() == []


def test_canonical_key_is_isomorphism_invariant():
    rng = random.Random(3)
    for _ in range(30):
        p = random_poset(rng.randrange(1, 8), rng)
        q = random_relabel(p, rng)
        assert p.canonical_key() == q.canonical_key()
        assert p.isomorphic(q)
        iso = p.find_isomorphism(q)
        for i in range(p.n):
            for j in range(p.n):
                assert p.leq(i, j) == q.leq(iso[i], iso[j])


def test_canonical_key_separates_non_isomorphic():
    rng = random.Random(5)
    pool = [random_poset(n, rng) for n in (4, 4, 5, 5, 5) for _ in range(6)]
    for a in pool:
        for b in pool:
            same_key = a.canonical_key() == b.canonical_key()
            assert same_key == (iso_brute(a, b) is not None)


def test_constructions():
    assert chain(3).n == 3 and chain(0).n == 0
    assert antichain(4).maximals_mask == antichain(4).full_mask
    assert fan(0).n == 1
    s = ordinal_sum(antichain(2), antichain(2))
    assert s.n == 4
    lows = [i for i in range(4) if s.up[i].bit_count() == 3]
    assert len(lows) == 2
    d = disjoint_sum([chain(2), chain(2)])
    assert isinstance(d, DisjointSum)
    assert d.poset.n == 4
    assert d.part_mask(0) | d.part_mask(1) == d.poset.full_mask
    assert d.part_mask(0) & d.part_mask(1) == 0


def test_ordinal_sum_relabels_on_collision():
    s = ordinal_sum(chain(2), chain(2))
    assert s.n == 4 and len(set(s.labels)) == 4
    assert s.up[0].bit_count() == 4 or s.up[s.n - 1].bit_count() == 1


def test_dict_round_trip_and_validation():
    p = fan(2)
    q = Poset.from_dict(p.to_dict())
    assert q == p
    with pytest.raises(ValueError):
        Poset.from_dict({"elements": "bad", "covers": []})
    with pytest.raises(ValueError):
        Poset.from_dict({"elements": ["a"], "covers": [["a"]]})


def test_to_dot():
    dot = fan(2).to_dot("fan2")
    assert "digraph" in dot and "rankdir=BT" in dot
    assert dot.count("->") == 2


def test_order_map_basics():
    p, q = fan(2), fan(1)
    f = OrderMap.from_labels(p, q, {"g": "g", "t1": "t1", "t2": "t1"})
    assert f(p.index_of("g")) == q.index_of("g")
    assert f.is_order_preserving() and f.is_onto()
    assert not f.is_order_embedding()
    assert classify_map(f) == "order_preserving"
    ident = OrderMap.identity(p)
    assert classify_map(ident) == "both_embedding_and_onto"
    assert f.compose(ident).table == f.table
    assert f.map_labels()["t2"] == "t1"
    assert f.image_mask() == q.full_mask
    assert f.preimage_mask(1 << q.index_of("t1")) == \
        p.mask_of(["t1", "t2"])


def test_order_map_validation():
    p, q = fan(2), fan(1)
    with pytest.raises(ValueError, match="total"):
        OrderMap.from_labels(p, q, {"g": "g"})
    with pytest.raises(ValueError):
        OrderMap(p, q, (0, 1))
    with pytest.raises(ValueError, match="empty"):
        OrderMap(fan(1), antichain(0), (0, 0))
    f = OrderMap.from_labels(p, q, {"g": "t1", "t1": "g", "t2": "g"})
    assert classify_map(f) == "not_order_preserving"
    with pytest.raises(ValueError, match="composition"):
        OrderMap.identity(p).compose(OrderMap.identity(q))


def test_order_map_embedding_checks_all_pairs():
    # covers alone cannot tell an embedding: incomparability must reflect
    p = antichain(2)
    q = chain(2)
    f = OrderMap.from_labels(p, q, {"x0": "c0", "x1": "c1"})
    assert f.is_order_preserving()
    assert not f.is_order_embedding()
