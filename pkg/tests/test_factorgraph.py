"""Factor multigraphs: the sigma oracle, flow configurations, triangle and
4-cycle catalogs, linearity, structural laws, the divisor-gap split
constructor, pendant models, and (d, d-1)-intersecting set families.

The sweeps build split graphs directly from (clique size, neighborhood
multiset), which reaches every split graph with every choice of
bipartition -- the statements under test are claimed for a *chosen*
bipartition, not just the canonical one.
"""

import itertools
import random

import pytest

from switchlab.deltanumbers import d_star, is_delta_member
from switchlab.errors import DomainError, LimitExceeded
from switchlab.factorgraph import (
    FactorGraph,
    analyze_set_family,
    build_split_from_delta,
    c4_forbidden_orientations,
    c4_type_catalog,
    classify_induced_c4,
    classify_triangle,
    eta,
    factor_graph,
    family_split,
    flow_configuration,
    induced_cycles,
    induced_paths,
    is_homogeneous,
    linearity_report,
    pendant_model,
    sigma,
    triangle_type_catalog,
    validate_structure,
)
from switchlab.graphs import (
    Graph,
    clique_number,
    complement,
    cycle_graph,
    diameter,
    distance,
    empty_graph,
    independence_number,
    is_connected,
    is_isomorphic,
    path_graph,
)
from switchlab.splits import (
    SplitBipartition,
    a4_graph,
    complement_split,
    compose,
    interchangeable_vertices,
    invert,
    is_irreducible,
    is_split,
    split_bipartition,
)
from switchlab.switching import degree_formula, is_active


def make_split(k, neighborhoods):
    """Split graph with clique 0..k-1 and one I-vertex per neighborhood."""
    edges = list(itertools.combinations(range(k), 2))
    for j, nb in enumerate(neighborhoods):
        edges.extend((k + j, w) for w in nb)
    g = Graph.from_edges(k + len(neighborhoods), edges)
    return SplitBipartition(g, range(k), range(k, k + len(neighborhoods)))


def split_structures(n):
    """Every split graph of order n, with every bipartition, once each."""
    for k in range(n + 1):
        subsets = [frozenset(s) for r in range(k + 1)
                   for s in itertools.combinations(range(k), r)]
        for nbhds in itertools.combinations_with_replacement(subsets, n - k):
            yield make_split(k, nbhds)


def random_split(rng, n):
    k = rng.randint(1, n - 1)
    nbhds = [frozenset(w for w in range(k) if rng.random() < rng.random())
             for _ in range(n - k)]
    return make_split(k, nbhds)


def count_paths_through(g, u, v):
    """Induced 4-vertex paths of g containing both u and v."""
    count = 0
    for quad in itertools.combinations(range(g.n), 4):
        if u not in quad or v not in quad:
            continue
        deg = [sum(1 for w in quad if w != t and g.has_edge(t, w))
               for t in quad]
        m = sum(deg) // 2
        if m == 3 and sorted(deg) == [1, 1, 2, 2]:
            count += 1
    return count


# -- sigma ---------------------------------------------------------------


def figure_split():
    """K = five vertices; N_a = {0,3,4}, N_b = {0,1,2}, N_c = {1,2}."""
    return make_split(5, [{0, 3, 4}, {0, 1, 2}, {1, 2}])


def test_sigma_figure_values():
    sb = figure_split()
    a, b, c = sb.independent
    assert sigma(sb, a, b) == 4
    assert sigma(sb, a, c) == 6
    assert sigma(sb, b, c) == 0
    assert (eta(sb, a, b), eta(sb, a, c), eta(sb, b, c)) == (1, 0, 2)
    assert factor_graph(sb).size() == 10 == degree_formula(sb.graph)


def test_sigma_counts_induced_paths_exhaustive():
    for sb in split_structures(6):
        g = sb.graph
        for u, v in itertools.combinations(sb.independent, 2):
            assert sigma(sb, u, v) == count_paths_through(g, u, v)


def test_sigma_counts_induced_paths_random():
    rng = random.Random(20240)
    for _ in range(150):
        sb = random_split(rng, rng.randint(7, 9))
        for u, v in itertools.combinations(sb.independent, 2):
            assert sigma(sb, u, v) == count_paths_through(sb.graph, u, v)


def test_sigma_is_bipartition_independent():
    # unbalanced split: every bipartition yields the same sigma on shared
    # I-pairs because path interiors always land in K
    from switchlab.splits import bipartitions
    for sb in split_structures(5):
        g = sb.graph
        for other in bipartitions(g):
            shared = set(sb.independent) & set(other.independent)
            for u, v in itertools.combinations(sorted(shared), 2):
                assert sigma(sb, u, v) == sigma(other, u, v)


def test_sigma_product_iff_disjoint_neighborhoods():
    for sb in split_structures(6):
        g = sb.graph
        for u, v in itertools.combinations(sb.independent, 2):
            du, dv = g.degree(u), g.degree(v)
            if eta(sb, u, v) == 0:
                assert sigma(sb, u, v) == du * dv
            elif du and dv:
                assert sigma(sb, u, v) != du * dv


def test_sigma_zero_with_equal_degrees_iff_twins():
    for sb in split_structures(6):
        g = sb.graph
        for u, v in itertools.combinations(sb.independent, 2):
            lhs = sigma(sb, u, v) == 0 and g.degree(u) == g.degree(v)
            assert lhs == (g.rows[u] == g.rows[v])


def test_sigma_rejects_clique_vertices():
    sb = figure_split()
    with pytest.raises(DomainError):
        sigma(sb, 0, sb.independent[0])
    with pytest.raises(DomainError):
        eta(sb, 0, 1)
    with pytest.raises(DomainError):
        sigma(sb, sb.independent[0], sb.independent[0])


def test_factor_graph_rejects_non_split():
    with pytest.raises(DomainError):
        factor_graph(cycle_graph(4))
    with pytest.raises(DomainError):
        factor_graph(cycle_graph(5))
    with pytest.raises(DomainError):
        sigma(cycle_graph(5), 0, 1)


def test_factor_graph_accepts_plain_graph():
    phi = factor_graph(path_graph(4))
    assert phi.size() == 1
    assert phi.is_simple()


# -- the FactorGraph object ------------------------------------------------


def test_factor_graph_api():
    sb = figure_split()
    phi = factor_graph(sb)
    a, b, c = sb.independent
    assert phi.vertices == (a, b, c)
    assert phi.multiplicity(b, a) == 4
    assert phi.multiplicity(b, c) == 0
    assert phi.overlap(b, c) == 2
    assert phi.edges() == [(a, b), (a, c)]
    assert phi.degree(a) == 10 and phi.degree(b) == 4 and phi.degree(c) == 6
    assert not phi.is_simple()
    assert phi.is_connected()
    mg = phi.multigraph()
    assert mg.size() == 10 and mg.multiplicity(0, 1) == 4
    simple = phi.simple_graph()
    assert sorted(simple.edges()) == [(0, 1), (0, 2)]
    with pytest.raises(DomainError):
        phi.multiplicity(0, a)
    with pytest.raises(DomainError):
        phi.degree(0)
    doc = phi.to_json()
    assert doc["type"] == "factor_graph" and doc["degree"] == 10
    assert {"u": a, "v": b, "sigma": 4, "overlap": 1} in doc["edges"]
    dot = phi.to_dot()
    assert f"{a} -- {b}" in dot and 'label="4"' in dot


def test_size_equals_switch_degree_sweep():
    for sb in split_structures(6):
        assert factor_graph(sb).size() == degree_formula(sb.graph)


def test_twins_in_s_are_phi_twins():
    for sb in split_structures(6):
        g = sb.graph
        phi = factor_graph(sb)
        for u, v in itertools.combinations(sb.independent, 2):
            if g.rows[u] == g.rows[v]:
                assert phi.multiplicity(u, v) == 0
                assert phi.are_phi_twins(u, v)


# -- connectivity: prime detection and composition --------------------------


def test_prime_iff_phi_connected_for_active_splits():
    found_prime = 0
    for n in range(4, 8):
        for sb in split_structures(n):
            g = sb.graph
            if not is_active(g):
                continue
            phi = factor_graph(sb)
            assert is_irreducible(g) == phi.is_connected()
            if phi.is_connected():
                found_prime += 1
    assert found_prime
    # reducible active splits start at order 8: glue two paths together
    p4 = make_split(2, [{0}, {1}])
    glued = SplitBipartition(compose(p4, p4.graph), [0, 1, 4, 5], [2, 3, 6, 7])
    assert is_active(glued.graph)
    assert not is_irreducible(glued.graph)
    assert not factor_graph(glued).is_connected()


def test_phi_connected_does_not_imply_prime_without_activity():
    # balanced but non-active: Phi connected yet the split is reducible
    sb = make_split(3, [{0, 1}, {0, 2}])
    g = sb.graph
    phi = factor_graph(sb)
    assert phi.is_connected()
    assert len(interchangeable_vertices(sb)) == 0  # balanced nevertheless
    assert not is_active(g)
    assert not is_irreducible(g)
    assert not is_connected(a4_graph(g))


def test_a4_connected_implies_phi_connected():
    checked = 0
    for sb in split_structures(6):
        g = sb.graph
        if g.n and len(sb.independent) > 1 and is_connected(a4_graph(g)):
            assert factor_graph(sb).is_connected()
            checked += 1
    assert checked


def test_phi_of_composition_is_disjoint_union():
    rng = random.Random(99)
    for _ in range(40):
        s = random_split(rng, rng.randint(4, 6))
        t = random_split(rng, rng.randint(4, 6))
        shift = s.graph.n
        glued = SplitBipartition(
            compose(s, t.graph),
            list(s.clique) + [v + shift for v in t.clique],
            list(s.independent) + [v + shift for v in t.independent])
        phi = factor_graph(glued)
        expect = dict(factor_graph(s).mult)
        for (u, v), m in factor_graph(t).mult.items():
            expect[(u + shift, v + shift)] = m
        assert phi.mult == expect


# -- inversion and complement ------------------------------------------------


def test_phi_invariant_under_complement_of_inverse():
    for sb in split_structures(6):
        assert factor_graph(sb) == factor_graph(complement_split(invert(sb)))


def test_complement_of_inverse_preserves_active_set():
    from switchlab.switching import active_vertices
    for sb in split_structures(5):
        g = sb.graph
        gi = invert(sb).graph
        gci = complement_split(invert(sb)).graph
        assert active_vertices(g) == active_vertices(gi) == active_vertices(gci)


def test_interchangeable_vertices_under_inversion():
    for sb in split_structures(6):
        g = sb.graph
        inv = invert(sb)
        for w in interchangeable_vertices(sb):
            if w in sb.independent:
                # adjacent to all of K, becomes adjacent to everything
                assert inv.graph.degree(w) == g.n - 1
            else:
                assert inv.graph.degree(w) == 0
        for w in sb.clique:
            if g.degree(w) == g.n - 1:
                assert w in interchangeable_vertices(inv)


# -- flow configurations and triangles -----------------------------------------


def test_flow_arcs_follow_degrees():
    sb = figure_split()
    a, b, c = sb.independent
    fc = flow_configuration(sb)
    assert fc.has_arc(a, b) and fc.has_arc(b, a)  # equal degrees
    assert fc.has_arc(c, a) and not fc.has_arc(a, c)  # d_c < d_a
    assert not fc.has_arc(b, c) and not fc.has_arc(c, b)  # sigma = 0
    assert fc.bidirected_pairs() == [(a, b)]
    dg = fc.digraph()
    assert dg.has_arc(0, 1) and dg.has_arc(1, 0) and dg.has_arc(2, 0)
    doc = fc.to_json()
    assert doc["type"] == "flow_configuration"
    assert [c, a] in doc["arcs"]


def test_bidirected_iff_equal_degrees_with_sigma():
    for sb in split_structures(6):
        g = sb.graph
        fc = flow_configuration(sb)
        phi = factor_graph(sb)
        for u, v in itertools.combinations(sb.independent, 2):
            both = fc.has_arc(u, v) and fc.has_arc(v, u)
            assert both == (phi.multiplicity(u, v) > 0
                            and g.degree(u) == g.degree(v))
            # underlying simple graph of the flow matches Phi
            assert (fc.has_arc(u, v) or fc.has_arc(v, u)) == \
                (phi.multiplicity(u, v) > 0)


def test_triangle_catalog():
    cat = triangle_type_catalog()
    assert sorted(cat) == ["0", "1+", "1-", "3"]
    assert len(cat["0"].arcs) == 3
    assert len(cat["3"].arcs) == 6
    assert len(cat["1+"].arcs) == 4 == len(cat["1-"].arcs)
    assert cat["1+"].has_arc(0, 1) and cat["1+"].has_arc(1, 0)
    assert cat["1-"].has_arc(1, 2) and cat["1-"].has_arc(2, 1)


def test_classify_triangle_by_construction():
    # degrees 1 < 2 < 3: transitive
    sb = make_split(6, [{0}, {1, 2}, {3, 4, 5}])
    a, b, c = sb.independent
    assert classify_triangle(flow_configuration(sb), a, b, c) == "0"
    # tied pair below the third
    sb = make_split(4, [{0}, {1}, {2, 3}])
    a, b, c = sb.independent
    assert classify_triangle(flow_configuration(sb), c, a, b) == "1+"
    # tied pair above
    sb = make_split(5, [{0}, {1, 2}, {3, 4}])
    a, b, c = sb.independent
    assert classify_triangle(flow_configuration(sb), a, b, c) == "1-"
    # all tied
    sb = make_split(3, [{0}, {1}, {2}])
    a, b, c = sb.independent
    assert classify_triangle(flow_configuration(sb), a, b, c) == "3"


def test_classify_triangle_rejects_non_triangles():
    sb = figure_split()
    a, b, c = sb.independent
    fc = flow_configuration(sb)
    with pytest.raises(DomainError):
        classify_triangle(fc, a, b, c)  # sigma_bc = 0
    with pytest.raises(DomainError):
        classify_triangle(fc, a, a, b)


def test_all_phi_triangles_classify():
    seen = set()
    pool = list(split_structures(7))
    pool.append(make_split(6, [{0}, {1, 2}, {3, 4, 5}]))  # transitive
    for sb in pool:
        phi = factor_graph(sb)
        fc = flow_configuration(sb)
        for tri in itertools.combinations(sb.independent, 3):
            u, v, w = tri
            if (phi.multiplicity(u, v) and phi.multiplicity(v, w)
                    and phi.multiplicity(u, w)):
                name = classify_triangle(fc, u, v, w)
                seen.add(name)
                both = sum(1 for x, y in itertools.combinations(tri, 2)
                           if fc.has_arc(x, y) and fc.has_arc(y, x))
                assert both in (0, 1, 3)
    assert seen == {"0", "1+", "1-", "3"}


def test_square_free_triangles_are_transitive():
    from switchlab.factorgraph import _is_square
    for sb in split_structures(6):
        phi = factor_graph(sb)
        if not phi.mult or any(_is_square(m) for m in phi.mult.values()):
            continue
        fc = flow_configuration(sb)
        for u, v, w in itertools.combinations(sb.independent, 3):
            if (phi.multiplicity(u, v) and phi.multiplicity(v, w)
                    and phi.multiplicity(u, w)):
                assert classify_triangle(fc, u, v, w) == "0"


def test_tied_pair_sigma_agrees_iff_overlap_agrees():
    # in a "1+" triangle, the two arcs into the top carry equal sigma
    # exactly when the overlaps agree (sigma is injective in eta)
    for sb in split_structures(6):
        g = sb.graph
        phi = factor_graph(sb)
        fc = flow_configuration(sb)
        for tri in itertools.combinations(sb.independent, 3):
            u, v, w = tri
            if not (phi.multiplicity(u, v) and phi.multiplicity(v, w)
                    and phi.multiplicity(u, w)):
                continue
            if classify_triangle(fc, u, v, w) != "1+":
                continue
            pair = sorted(tri, key=g.degree)[:2]
            top = next(t for t in tri if t not in pair)
            s_eq = phi.multiplicity(pair[0], top) == phi.multiplicity(pair[1], top)
            e_eq = phi.overlap(pair[0], top) == phi.overlap(pair[1], top)
            assert s_eq == e_eq


# -- induced 4-cycle catalog ----------------------------------------------------


def test_c4_catalog_counts():
    cat = c4_type_catalog()
    forb = c4_forbidden_orientations()
    assert len(cat) == 10
    assert len(forb) == 5
    assert len(set(cat.values()) | set(forb)) == 15
    assert "0101" in cat and "0121" in cat
    assert "0000" in cat and "0123" in cat


def test_classify_induced_c4_examples():
    # all four I-degrees equal: every edge bidirected
    sb = pendant_model([2, 2])
    fc = flow_configuration(sb)
    assert classify_induced_c4(fc, sb.independent) == "0000"
    # degrees 1, 2, 3, 2 around the cycle
    sb = make_split(5, [{0}, {3, 4}, {0, 1, 2}, {3, 4}])
    a, b, c, d = sb.independent
    phi = factor_graph(sb)
    assert phi.multiplicity(a, c) == 0 and phi.multiplicity(b, d) == 0
    assert all(phi.multiplicity(u, v)
               for u, v in [(a, b), (b, c), (c, d), (d, a)])
    assert classify_induced_c4(flow_configuration(sb), (a, b, c, d)) == "0121"
    # degrees 1, 1, 2, 2 around the cycle: diagonals vanish by nesting
    sb = make_split(5, [{1}, {3}, {1, 2}, {3, 4}])
    a, b, c, d = sb.independent  # cycle order a-b-c-d
    phi = factor_graph(sb)
    assert phi.multiplicity(a, c) == 0 and phi.multiplicity(b, d) == 0
    name = classify_induced_c4(flow_configuration(sb), (a, b, c, d))
    assert name == "0011"


def test_classify_induced_c4_rejects_non_cycles():
    sb = pendant_model([3, 1])
    fc = flow_configuration(sb)
    with pytest.raises(DomainError):
        classify_induced_c4(fc, sb.independent)  # K_{1,3}, not a cycle


def test_all_induced_c4s_classify_in_catalog():
    names = set()
    rng = random.Random(4242)
    pool = list(split_structures(6))
    pool += [random_split(rng, 8) for _ in range(200)]
    for sb in pool:
        phi = factor_graph(sb)
        fc = flow_configuration(sb)
        simple = phi.simple_graph()
        for cyc in induced_cycles(simple):
            if len(cyc) == 4:
                quad = tuple(phi.vertices[i] for i in cyc)
                names.add(classify_induced_c4(fc, quad))
    assert names  # sweeps really did contain induced 4-cycles
    assert names <= set(c4_type_catalog())


# -- homogeneity and linearity ---------------------------------------------------


def test_homogeneous_detection():
    assert is_homogeneous(pendant_model([2, 2]))
    assert is_homogeneous(make_split(2, [{0}, {1}]))  # path on 4 vertices
    assert not is_homogeneous(figure_split())  # unequal I-degrees
    # interchangeable vertex: not balanced, so not homogeneous
    assert not is_homogeneous(make_split(2, [{0, 1}]))


def test_homogeneous_properties_sweep():
    from switchlab.factorgraph import _is_square
    found = 0
    for sb in split_structures(6):
        if not is_homogeneous(sb) or not sb.independent:
            continue
        found += 1
        g = sb.graph
        phi = factor_graph(sb)
        assert all(_is_square(m) for m in phi.mult.values())
        for u, v in itertools.combinations(sb.independent, 2):
            assert (phi.multiplicity(u, v) == 0) == (g.rows[u] == g.rows[v])
        if phi.mult:
            simple = phi.simple_graph()
            assert is_connected(simple) and diameter(simple) <= 2
    assert found > 3


def test_linearity_report_figure():
    rep = linearity_report(figure_split())
    assert rep.n_simple is None
    assert not rep.square_free  # sigma_ab = 4 is a square
    assert rep.epsilon is None
    assert rep.connected
    assert rep.class_path is None


def test_linearity_n_simple_examples():
    sb = build_split_from_delta(24, 2, 3, 3, 3)
    rep = linearity_report(sb)
    assert rep.n_simple == 24
    assert rep.square_free is False or rep.square_free is True  # well-formed
    sb = make_split(3, [{0}, {1}, {2}])
    rep = linearity_report(sb)
    assert rep.n_simple == 1 and rep.epsilon is None


def test_linear_splits_have_no_simple_edges_and_no_triangles():
    for sb in split_structures(6):
        rep = linearity_report(sb)
        if rep.epsilon is None:
            continue
        phi = factor_graph(sb)
        assert all(m != 1 for m in phi.mult.values())
        simple = phi.simple_graph()
        assert all(len(c) != 3 for c in induced_cycles(simple))
        # epsilon lies in every edge's divisor-gap set
        assert all(rep.epsilon in d_star(m) for m in phi.mult.values())


def test_linear_connected_class_path():
    found = 0
    for sb in split_structures(7):
        rep = linearity_report(sb)
        if rep.class_path is None or interchangeable_vertices(sb):
            continue
        found += 1
        cp = rep.class_path
        assert cp.is_path and cp.degree_identity
        assert list(cp.level_degrees) == sorted(cp.level_degrees)
        # levels are exactly the Phi-twin classes
        phi = factor_graph(sb)
        for level in cp.levels:
            for u, v in itertools.combinations(level, 2):
                assert phi.are_phi_twins(u, v)
        # distances: |degree gap| / epsilon between non-twins, 2 on twins
        g = sb.graph
        simple = phi.simple_graph()
        pos = {v: i for i, v in enumerate(phi.vertices)}
        for u, v in itertools.combinations(phi.vertices, 2):
            gap = abs(g.degree(u) - g.degree(v))
            dist = distance(simple, pos[u], pos[v])
            if gap:
                assert dist == gap // rep.epsilon
            else:
                assert dist == 2
    assert found


def test_p_simple_implies_p_minus_1_linear():
    found = 0
    for sb in split_structures(7):
        rep = linearity_report(sb)
        if rep.n_simple in (2, 3, 5, 7, 11):
            found += 1
            assert rep.epsilon == rep.n_simple - 1
    assert found


# -- induced paths, cycles, and the validator -------------------------------------


def test_induced_path_enumeration():
    g = path_graph(4)
    paths = induced_paths(g)
    assert (0, 1, 2, 3) in paths
    assert (0, 1) in paths and (1, 2) in paths
    assert all(p[0] < p[-1] for p in paths)
    assert len(paths) == len(set(paths))
    g = cycle_graph(5)
    assert max(len(p) for p in induced_paths(g)) == 4


def test_induced_cycle_enumeration():
    assert induced_cycles(cycle_graph(3)) == [(0, 1, 2)]
    assert induced_cycles(cycle_graph(5)) == [(0, 1, 2, 3, 4)]
    assert induced_cycles(path_graph(5)) == []
    k4 = Graph.from_edges(4, list(itertools.combinations(range(4), 2)))
    assert sorted(induced_cycles(k4)) == [
        (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    # C4 has no chords: the one 4-cycle, no triangles
    assert induced_cycles(cycle_graph(4)) == [(0, 1, 3, 2)] or \
        induced_cycles(cycle_graph(4)) == [(0, 1, 2, 3)]


def test_enumeration_size_guard():
    with pytest.raises(LimitExceeded):
        induced_paths(empty_graph(13))
    with pytest.raises(LimitExceeded):
        induced_cycles(empty_graph(13))


def test_validator_clean_on_all_small_splits():
    for sb in split_structures(6):
        report = validate_structure(factor_graph(sb))
        assert report.ok, report.violations
        assert "degree_sum" in report.checks


def test_validator_clean_on_random_splits():
    rng = random.Random(31337)
    for _ in range(250):
        sb = random_split(rng, rng.randint(7, 9))
        report = validate_structure(factor_graph(sb))
        assert report.ok, (sb, report.violations)


def test_validator_json():
    doc = validate_structure(factor_graph(figure_split())).to_json()
    assert doc["ok"] is True and doc["violations"] == []
    assert "cycle_length" in doc["checks"]


def test_induced_cycles_of_phi_have_length_at_most_4():
    # stressed beyond the validator's own sweep: bigger random splits
    rng = random.Random(777)
    for _ in range(120):
        sb = random_split(rng, 10)
        phi = factor_graph(sb)
        for cyc in induced_cycles(phi.simple_graph()):
            assert len(cyc) <= 4


def test_n_simple_non_member_cycles_have_length_4():
    import math
    for sb in split_structures(6):
        rep = linearity_report(sb)
        n = rep.n_simple
        if n is None or math.isqrt(n) ** 2 == n or is_delta_member(n):
            continue
        simple = factor_graph(sb).simple_graph()
        for cyc in induced_cycles(simple):
            assert len(cyc) == 4


def test_n_simple_transitive_triangle_implies_member():
    # the positive instances come from the divisor-gap constructor
    for n, w in ((24, (2, 3, 3)), (40, (4, 5, 5)), (60, (2, 3, 4))):
        sb = build_split_from_delta(n, *w, w[2])
        a, b, c = sb.independent
        fc = flow_configuration(sb)
        assert classify_triangle(fc, a, b, c) == "0"
        assert linearity_report(sb).n_simple == n
        assert is_delta_member(n)
    # and the sweep direction: any n-simple transitive Phi-triangle
    for sb in split_structures(6):
        rep = linearity_report(sb)
        if rep.n_simple is None:
            continue
        phi = factor_graph(sb)
        fc = flow_configuration(sb)
        for u, v, w in itertools.combinations(sb.independent, 3):
            if (phi.multiplicity(u, v) and phi.multiplicity(v, w)
                    and phi.multiplicity(u, w)
                    and classify_triangle(fc, u, v, w) == "0"):
                assert is_delta_member(rep.n_simple)


def test_edge_gap_lies_in_gap_set_of_sigma():
    rng = random.Random(555)
    for _ in range(150):
        sb = random_split(rng, rng.randint(6, 9))
        g = sb.graph
        phi = factor_graph(sb)
        for (u, v), m in phi.mult.items():
            gap = abs(g.degree(u) - g.degree(v))
            assert gap in d_star(m)
            assert gap <= m - 1 or m == 1


# -- simple connected Phi: the pendant characterization ----------------------------


def sigma_zero_classes(sb):
    phi = factor_graph(sb)
    verts = list(phi.vertices)
    classes = []
    for v in verts:
        for cls in classes:
            if phi.multiplicity(cls[0], v) == 0:
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


def test_pendant_model_shape():
    sb = pendant_model([2, 2, 1])
    phi = factor_graph(sb)
    assert phi.is_simple() and phi.is_connected()
    assert is_active(sb.graph)
    assert len(sb.clique) == 3 and len(sb.independent) == 5
    # complete multipartite over the fibers
    fibers = sigma_zero_classes(sb)
    assert sorted(len(f) for f in fibers) == [1, 2, 2]
    with pytest.raises(DomainError):
        pendant_model([])
    with pytest.raises(DomainError):
        pendant_model([2, 0])


def test_simple_connected_active_iff_pendant_or_coinverse():
    # forward: every active split with Phi simple & connected matches a
    # pendant model or the complement of its inverse
    matched = 0
    for n in range(4, 8):
        for sb in split_structures(n):
            g = sb.graph
            if not is_active(g):
                continue
            phi = factor_graph(sb)
            if not (phi.mult and phi.is_simple() and phi.is_connected()):
                continue
            assert len(sb.clique) <= len(sb.independent)
            sizes = sorted(len(c) for c in sigma_zero_classes(sb))
            r = pendant_model(sizes)
            alt = complement_split(invert(r)).graph
            assert is_isomorphic(g, r.graph) or is_isomorphic(g, alt)
            matched += 1
    assert matched >= 4


def test_pendant_models_realize_simple_connected_phi():
    # reverse direction of the characterization
    for sizes in [(1, 1), (2, 1), (2, 2), (3, 1), (2, 2, 1), (1, 1, 1, 2)]:
        for sb in (pendant_model(sizes),
                   complement_split(invert(pendant_model(sizes)))):
            g = sb.graph
            phi = factor_graph(sb)
            assert is_active(g)
            assert phi.is_simple() and phi.is_connected()
            assert factor_graph(pendant_model(sizes)) == factor_graph(
                complement_split(invert(pendant_model(sizes))))


def test_simple_connected_dichotomy():
    # exactly one of: Phi complete with |K| = |I|, or |K| = omega(Phi) < |I|
    import math as _math
    for n in range(4, 8):
        for sb in split_structures(n):
            g = sb.graph
            if not is_active(g):
                continue
            phi = factor_graph(sb)
            if not (phi.mult and phi.is_simple() and phi.is_connected()):
                continue
            k, alpha = len(sb.clique), len(sb.independent)
            simple = phi.simple_graph()
            complete = all(phi.multiplicity(u, v)
                           for u, v in itertools.combinations(phi.vertices, 2))
            omega_phi = clique_number(simple)
            if complete:
                assert k == alpha
                assert phi.size() == alpha * (alpha - 1) // 2
            else:
                assert k == omega_phi < alpha
                lo = -(-alpha * (omega_phi - 1) // 2)
                assert lo <= phi.size() < alpha * (alpha - 1) // 2
                # the complemented split has complete, non-simple Phi
                cphi = factor_graph(complement_split(sb))
                assert all(cphi.multiplicity(u, v)
                           for u, v in itertools.combinations(cphi.vertices, 2))
                assert not cphi.is_simple()
            assert clique_number(g) == omega_phi <= alpha


# -- the divisor-gap constructor ----------------------------------------------------


def test_build_split_24_worked_example():
    sb = build_split_from_delta(24, 2, 3, 3, 3)
    g = sb.graph
    a, b, c = sb.independent
    assert len(sb.clique) == 18 and g.n == 21
    assert (g.degree(a), g.degree(b), g.degree(c)) == (3, 8, 13)
    assert (eta(sb, a, b), eta(sb, b, c), eta(sb, a, c)) == (0, 5, 1)
    assert sigma(sb, a, b) == sigma(sb, a, c) == sigma(sb, b, c) == 24
    assert sorted(v for v in range(18) if g.has_edge(a, v)) == [0, 1, 2]
    assert sorted(v for v in range(18) if g.has_edge(b, v)) == list(range(3, 11))
    assert sorted(v for v in range(18) if g.has_edge(c, v)) == \
        list(range(2, 8)) + list(range(11, 18))
    assert is_active(g)
    fc = flow_configuration(sb)
    assert classify_triangle(fc, a, b, c) == "0"
    assert not interchangeable_vertices(sb)


def test_build_split_40():
    sb = build_split_from_delta(40, 4, 5, 5, 5)
    a, b, c = sb.independent
    assert sigma(sb, a, b) == sigma(sb, a, c) == sigma(sb, b, c) == 40
    assert is_active(sb.graph)
    assert linearity_report(sb).n_simple == 40


def test_build_split_activity_threshold():
    # d_a = z activates; d_a > x + z creates a universal vertex
    for d_a in (3, 4, 5):
        sb = build_split_from_delta(24, 2, 3, 3, d_a)
        g = sb.graph
        universal = [v for v in range(g.n) if g.degree(v) == g.n - 1]
        if d_a == 3:
            assert is_active(g)
        if d_a <= 5:
            assert not universal
    sb = build_split_from_delta(24, 2, 3, 3, 6)
    g = sb.graph
    assert any(g.degree(v) == g.n - 1 for v in range(g.n))
    assert not is_active(g)


def test_build_split_always_n_simple_and_ordered():
    for n, w in ((24, (2, 3, 3)), (40, (4, 5, 5)), (60, (2, 3, 4)),
                 (105, (3, 5, 5)), (84, (3, 4, 6)), (120, (4, 5, 8))):
        for bump in (0, 1, 2):
            sb = build_split_from_delta(n, *w, w[2] + bump)
            a, b, c = sb.independent
            g = sb.graph
            assert sigma(sb, a, b) == sigma(sb, a, c) == sigma(sb, b, c) == n
            assert g.degree(a) < g.degree(b) < g.degree(c)
            assert not interchangeable_vertices(sb)


def test_build_split_rejections():
    with pytest.raises(DomainError):
        build_split_from_delta(24, 2, 3, 5, 3)   # 5 does not satisfy the gap
    with pytest.raises(DomainError):
        build_split_from_delta(24, 3, 2, 3, 3)   # unordered
    with pytest.raises(DomainError):
        build_split_from_delta(24, 2, 3, 3, 2)   # d_a < z
    with pytest.raises(DomainError):
        build_split_from_delta(25, 2, 3, 3, 3)   # 2 does not divide 25
    with pytest.raises(DomainError):
        build_split_from_delta(36, 2, 3, 6, 6)   # z*z = n violates z < sqrt(n)
    with pytest.raises(DomainError):
        build_split_from_delta(24, 2, 4, 4, 4)   # equation fails


# -- set families ---------------------------------------------------------------------


def test_family_sunflower():
    fam = {"u": {1, 2, 3}, "v": {1, 2, 4}, "w": {1, 2, 5}}
    rep = analyze_set_family(fam)
    assert rep.branch == "common_core"
    assert rep.d == 3 and rep.alpha == 3
    assert rep.omega == 5 == rep.union_size
    assert rep.witness == ("u", "v", "w")
    doc = rep.to_json()
    assert doc["branch"] == "common_core" and doc["omega"] == 5


def test_family_point_complements():
    d = 3
    fam = [set(range(d + 1)) - {v} for v in range(d + 1)]
    rep = analyze_set_family(fam)
    assert rep.branch == "point_complements"
    assert rep.omega == d + 1 == rep.union_size
    # the witnessing triple really has a (d-2)-sized intersection
    i, j, k = rep.witness
    assert len(fam[i] & fam[j] & fam[k]) == d - 2


def test_family_rejections():
    with pytest.raises(DomainError):
        analyze_set_family([{1, 2}, {1, 3}])          # too few sets
    with pytest.raises(DomainError):
        analyze_set_family([{1, 2}, {1, 3}, {1}])      # sizes differ
    with pytest.raises(DomainError):
        analyze_set_family([{1, 2}, {3, 4}, {1, 3}])   # bad intersection


def test_family_random_both_branches():
    rng = random.Random(2718)
    for _ in range(60):
        d = rng.randint(2, 7)
        if rng.random() < 0.5:
            core = set(range(100, 100 + d - 1))
            alpha = rng.randint(3, 6)
            fam = [core | {v} for v in range(alpha)]
            rep = analyze_set_family(fam)
            assert rep.branch == "common_core"
            assert rep.omega == alpha + d - 1
        else:
            alpha = rng.randint(3, d + 1)
            points = rng.sample(range(50), d + 1)
            fam = [set(points) - {points[i]} for i in range(alpha)]
            rep = analyze_set_family(fam)
            assert rep.branch == "point_complements"
            assert rep.omega == d + 1
        # omega is the clique number of the realizing split graph
        sb = family_split(fam)
        assert clique_number(sb.graph) == rep.omega


def test_phi_simple_complete_neighborhood_families():
    # splits with complete simple Phi whose clique is covered by the
    # I-neighborhoods: the common intersection is the universal-vertex set
    # and controls the clique number and activity
    found = 0
    for sb in split_structures(7):
        g = sb.graph
        phi = factor_graph(sb)
        alpha = len(sb.independent)
        if alpha < 2 or not phi.is_simple() or not phi.mult:
            continue
        if not all(phi.multiplicity(u, v) for u, v
                   in itertools.combinations(phi.vertices, 2)):
            continue
        hoods = [frozenset(w for w in sb.clique if g.has_edge(v, w))
                 for v in sb.independent]
        if frozenset.union(*hoods) != frozenset(sb.clique):
            continue
        omega = len(sb.clique)
        common = frozenset.intersection(*hoods)
        universal = {v for v in range(g.n) if g.degree(v) == g.n - 1}
        assert common == universal
        assert is_homogeneous(sb)
        d = len(hoods[0])
        assert all(len(h) == d for h in hoods)
        assert 1 <= d <= omega - 1
        assert len(common) in (d - 1, d + 1 - alpha)
        assert omega == alpha + len(common) == clique_number(g)
        assert is_active(g) == (not common)
        if is_active(g):
            assert omega == alpha and d in (1, omega - 1)
        if omega == alpha or d == 1:
            assert is_active(g)
        if alpha >= 3:
            rep = analyze_set_family(dict(zip(sb.independent, hoods)))
            assert rep.omega == alpha + len(common)
            found += 1
    assert found


def test_equal_degree_omega_minus_one_does_not_force_activity():
    # both I-vertices have degree omega - 1 and Phi is simple complete,
    # yet two clique vertices are universal
    sb = make_split(4, [{0, 1, 2}, {1, 2, 3}])
    g = sb.graph
    a, b = sb.independent
    assert sigma(sb, a, b) == 1
    assert g.degree(a) == g.degree(b) == clique_number(g) - 1
    assert not is_active(g)
    assert sorted(v for v in range(g.n) if g.degree(v) == g.n - 1) == [1, 2]


def test_family_split_realizes_neighborhoods():
    fam = {"u": {10, 20}, "v": {10, 30}, "w": {10, 40}}
    sb = family_split(fam)
    g = sb.graph
    assert is_split(g)
    assert len(sb.clique) == 4 and len(sb.independent) == 3
    # element order: 10, 20, 30, 40 -> labels 0..3
    assert sorted(w for w in sb.clique if g.has_edge(sb.independent[0], w)) \
        == [0, 1]
