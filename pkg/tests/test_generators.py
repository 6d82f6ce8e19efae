import pytest

from pgmatch import gen_chain, gen_cycle, gen_random, search_iso, validate


def test_chain_shape():
    g = gen_chain(1)
    assert len(g.nodes) == 2 and len(g.edges) == 1
    g10 = gen_chain(10)
    assert len(g10.nodes) == 11 and len(g10.edges) == 10
    assert not g10.props


def test_chain_validates_for_all_k():
    for k in (1, 2, 5, 17, 100):
        assert validate(gen_chain(k)) == []


def test_chain_rejects_k_below_one():
    with pytest.raises(ValueError):
        gen_chain(0)


def test_cycle_self_loop():
    g = gen_cycle(1)
    assert len(g.nodes) == 1 and len(g.edges) == 1
    (s, t, _), = g.edges.values()
    assert s == t


def test_cycle_rotation_is_isomorphic():
    w = search_iso(gen_cycle(3, "a"), gen_cycle(3, "b"))
    assert w is not None


def test_chain_never_isomorphic_to_cycle():
    for k in (1, 3, 6):
        assert search_iso(gen_chain(k, "a"), gen_cycle(k, "b")) is None


def test_cycle_validates():
    for k in (1, 2, 9, 50):
        assert validate(gen_cycle(k)) == []


def test_random_edge_probability_extremes():
    assert len(gen_random(5, 0.0, seed=1).edges) == 0
    assert len(gen_random(5, 1.0, seed=1).edges) == 20  # all ordered non-self pairs


def test_random_is_deterministic():
    assert gen_random(6, 0.4, seed=9) == gen_random(6, 0.4, seed=9)
    assert gen_random(6, 0.4, seed=9) != gen_random(6, 0.4, seed=10)


def test_random_validates_and_has_no_self_loops():
    g = gen_random(8, 0.5, seed=3)
    assert validate(g) == []
    assert all(s != t for s, t, _ in g.edges.values())


def test_random_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gen_random(-1, 0.1, seed=0)
    with pytest.raises(ValueError):
        gen_random(3, 1.5, seed=0)


def test_prefix_keeps_id_spaces_disjoint():
    a = gen_chain(3, "a")
    b = gen_chain(3, "b")
    assert not (set(a.nodes) | set(a.edges)) & (set(b.nodes) | set(b.edges))
