"""Twin partitions, quotients, the quotient index, and distributivity
over split composition."""

import itertools
import random

import pytest

from switchlab.errors import DomainError
from switchlab.graphs import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    diameter,
    distance,
    empty_graph,
    enumerate_unlabeled,
    graph_union,
    is_connected,
    is_isomorphic,
    is_tree,
    path_graph,
    star_graph,
)
from switchlab.splits import (
    bipartitions,
    compose,
    is_balanced,
    is_split,
    split_bipartition,
)
from switchlab.switching import degree_brute, is_active
from switchlab.twins import (
    are_twins,
    is_twin_free,
    iterated_quotient,
    quotient,
    quotient_compose_check,
    quotient_index,
    quotient_split,
    slow_iteration_family,
    twin_partition,
)


def rep_map(g):
    part = twin_partition(g)
    reps = part.representatives()
    pos = {r: i for i, r in enumerate(reps)}
    out = {}
    for c in part.classes:
        for v in c:
            out[v] = pos[c[0]]
    return out


def test_twin_partition_shapes():
    part = twin_partition(complete_graph(4))
    assert part.classes == ((0, 1, 2, 3),)
    assert part.kinds == ("clique",)
    part = twin_partition(path_graph(4))
    assert len(part) == 4
    assert part.kinds == ("singleton",) * 4
    part = twin_partition(star_graph(5))
    assert sorted(map(len, part.classes)) == [1, 4]
    assert set(part.kinds) == {"singleton", "independent"}


def test_twin_relation_is_equivalence():
    for n in range(1, 8):
        for g in enumerate_unlabeled(n):
            part = twin_partition(g)  # raises if a class is impure
            for cls in part.classes:
                for u, v in itertools.combinations(cls, 2):
                    assert are_twins(g, u, v)
            for a, b in itertools.combinations(range(len(part.classes)), 2):
                assert not are_twins(g, part.classes[a][0], part.classes[b][0])


def test_equal_degree_inactive_vertices_are_twins():
    for n in range(1, 8):
        for g in enumerate_unlabeled(n):
            if degree_brute(g) > 0:
                continue
            degs = g.degrees()
            for u, v in itertools.combinations(range(n), 2):
                if degs[u] == degs[v]:
                    assert are_twins(g, u, v)


def test_quotient_examples():
    assert is_isomorphic(quotient(cycle_graph(4)), path_graph(2))
    assert is_isomorphic(quotient(graph_union(path_graph(2), path_graph(2))),
                         empty_graph(2))
    for g in (path_graph(4), cycle_graph(5), path_graph(5)):
        assert is_twin_free(g)
        assert quotient(g) == g


def test_quotient_commutes_with_complement():
    for n in range(1, 7):
        for g in enumerate_unlabeled(n):
            assert is_isomorphic(quotient(complement(g)),
                                 complement(quotient(g)))
            assert quotient_index(g) == quotient_index(complement(g))


def test_edge_transfer():
    for n in range(1, 6):
        for g in enumerate_unlabeled(n):
            q = quotient(g)
            rm = rep_map(g)
            for u, v in itertools.combinations(range(n), 2):
                if rm[u] != rm[v]:
                    assert g.has_edge(u, v) == q.has_edge(rm[u], rm[v])


def test_twins_persist_in_induced_subgraphs():
    from switchlab.graphs import induced_subgraph

    for n in range(2, 7):
        for g in enumerate_unlabeled(n):
            for keep in itertools.combinations(range(n), n - 1):
                h = induced_subgraph(g, keep)
                back = {i: v for i, v in enumerate(keep)}
                for i, j in itertools.combinations(range(n - 1), 2):
                    if are_twins(g, back[i], back[j]):
                        assert are_twins(h, i, j)


def test_quotient_index_examples():
    assert quotient_index(cycle_graph(4)) == 2
    assert quotient_index(complete_graph(3)) == 1
    assert quotient_index(path_graph(4)) == 0
    assert quotient_index(Graph(1, [0])) == 0
    # stars collapse to K2 and then to K1: two steps
    assert quotient_index(star_graph(5)) == 2
    assert is_isomorphic(iterated_quotient(star_graph(5), 1), path_graph(2))


def test_quotient_index_bound():
    for n in range(1, 7):
        for g in enumerate_unlabeled(n):
            assert quotient_index(g) <= n - 1


def test_slow_iteration_family():
    for n in range(1, 10):
        g = slow_iteration_family(n)
        assert g.n == n
        assert is_split(g)
        assert quotient_index(g) == n - 1
        if n >= 2:
            assert is_isomorphic(quotient(g), slow_iteration_family(n - 1))


def test_distance_at_least_three_is_preserved():
    for n in range(2, 7):
        for g in enumerate_unlabeled(n):
            q = quotient(g)
            rm = rep_map(g)
            for u, v in itertools.combinations(range(n), 2):
                d = distance(g, u, v)
                if d != float("inf") and d >= 3:
                    assert distance(q, rm[u], rm[v]) == d
            dm = diameter(g)
            if dm != float("inf") and dm >= 3 and g.edge_count() > 0:
                assert diameter(q) == dm
                if is_connected(g):
                    assert quotient_index(g) <= n - 4


def test_quotient_activity():
    # active quotient forces an active graph, but not conversely
    for n in range(1, 7):
        for g in enumerate_unlabeled(n):
            if is_active(quotient(g)):
                assert is_active(g)
    wit = Graph.from_edges(4, [(0, 3), (1, 2)])  # 2K2: active, quotient 2K1
    assert is_active(wit) and not is_active(quotient(wit))


def test_split_quotient_equivalences():
    for n in range(1, 7):
        for g in enumerate_unlabeled(n):
            if not is_split(g):
                continue
            q = quotient(g)
            assert is_split(q)
            assert is_active(g) == is_active(q)
            assert is_balanced(g) == is_balanced(q)
            if is_balanced(g):
                assert quotient_index(g) <= 1


def test_class_completion_only_coarsens():
    # Editing away (or in) all internal edges of a twin class keeps old
    # twins twinned.  The quotient itself may still shrink further: in
    # K2 u K1 the clique class {0,2} loses its edge and the survivors merge
    # with the isolated vertex, so the full invariance claim fails.
    for n in range(2, 6):
        for g in enumerate_unlabeled(n):
            part = twin_partition(g)
            for cls, kind in zip(part.classes, part.kinds):
                if len(cls) < 2:
                    continue
                pairs = set(map(tuple, itertools.combinations(cls, 2)))
                if kind == "clique":
                    h = Graph.from_edges(
                        n, [e for e in g.edges() if tuple(sorted(e)) not in pairs])
                else:
                    h = Graph.from_edges(n, list(g.edges()) + sorted(pairs))
                for u, v in itertools.combinations(range(n), 2):
                    if are_twins(g, u, v):
                        assert are_twins(h, u, v)
    k2_k1 = Graph.from_edges(3, [(0, 2)])
    dropped = Graph.from_edges(3, [])
    assert quotient(k2_k1).n == 2
    assert quotient(dropped).n == 1  # the advertised equality breaks here


def test_quotient_compose_distributivity():
    random.seed(7)
    pool = []
    for n in range(1, 7):
        for g in enumerate_unlabeled(n):
            if is_split(g) and is_balanced(g):
                pool.append(split_bipartition(g))
    graphs = [g for n in range(0, 7) for g in enumerate_unlabeled(n)]
    graphs.append(empty_graph(0))
    for _ in range(200):
        sb = random.choice(pool)
        g = random.choice(graphs)
        assert quotient_compose_check(sb, g)


def test_quotient_compose_check_rejects_unbalanced():
    sb = split_bipartition(path_graph(3))
    with pytest.raises(DomainError):
        quotient_compose_check(sb, path_graph(2))


def test_quotient_split_keeps_sides():
    from switchlab.splits import SplitBipartition

    star = star_graph(5)
    sb = SplitBipartition(star, [0], [1, 2, 3, 4])
    q = quotient_split(sb)
    assert q.graph.n == 2
    assert len(q.clique) == 1 and len(q.independent) == 1
    # canonical bipartition pulls one leaf into K; its class rep stays there
    q2 = quotient_split(split_bipartition(star))
    assert q2.clique == (0, 1) and q2.independent == ()


def test_twin_free_trees():
    for n in range(2, 8):
        for g in enumerate_unlabeled(n):
            if not is_tree(g):
                continue
            if diameter(g) >= 3:
                assert quotient_index(g) <= 1
            else:
                assert quotient_index(g) <= 3
            if not is_isomorphic(g, path_graph(2)):
                at_most_one_leaf_nbr = all(
                    sum(1 for w in g.neighbors(v) if g.degree(w) == 1) <= 1
                    for v in range(n))
                assert is_twin_free(g) == at_most_one_leaf_nbr
