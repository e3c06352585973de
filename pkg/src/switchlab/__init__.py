"""switchlab: degree-preserving 2-switches and the structures they organize.

The package revolves around one move: pick two disjoint edges ab, cd of a
simple graph whose replacement pair ac, bd is absent, and swap them.  The
move preserves the degree sequence, and counting the available moves at a
graph ("its switch degree") turns the set of realizations of a degree
sequence into a connected transition space with a lot of structure: split
graphs decompose it, twin quotients compress it, a multigraph on the
independent side of a split graph ("the factor graph") computes it, and a
divisor-arithmetic condition decides which switch degrees are achievable
with all factor multiplicities equal.
"""

from .errors import SwitchlabError, DomainError, LimitExceeded
from .graphs import (
    Graph,
    Multigraph,
    Digraph,
    canonical_form,
    automorphism_count,
    is_isomorphic,
    enumerate_unlabeled,
    complement,
    induced_subgraph,
    relabel,
    empty_graph,
    complete_graph,
    path_graph,
    cycle_graph,
    star_graph,
    complete_bipartite,
    graph_union,
    random_graph,
    realize_degree_sequence,
    is_graphical,
    components,
    is_connected,
    distance,
    diameter,
    eccentricity,
    girth,
    is_forest,
    is_tree,
    is_unicyclic,
    graph_to_json,
    graph_from_json,
    graph_to_dot,
)

__version__ = "0.1.0"
