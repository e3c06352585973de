"""Census of graphs with small 2-switch degree.

Degrees 1-3 admit a complete list of active graphs, and degree 4 a
complete list of split primes; both lists are rederived here from scratch
rather than hard-coded.  Two independent routes are kept deliberately
separate so they can cross-check each other:

* a structural route that walks candidate factor multigraphs (the
  connected multigraphs of size 4) and keeps the split graphs realizing
  them, restricted to |K| >= |I| and then closed under complement;
* a brute route that enumerates every split structure within the proven
  side bounds |K|, |I| <= degree + 1 and filters by switch degree.

The named catalog pins down the graphs the lists are expected to hit,
built from explicit clique/neighborhood data.  `regularity_audit` checks
how realization spaces of the classified graphs behave: all of them are
degree-regular except the two spaces contaminated by a U6 factor, and the
path on five vertices witnesses that degree 4 is never preserved.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import DomainError, LimitExceeded
from .graphs import (
    CANON_MAX_N,
    Graph,
    Multigraph,
    canonical_form,
    complement,
    cycle_graph,
    enumerate_unlabeled,
    from_canonical,
    is_connected,
    is_isomorphic,
    multigraph_canonical_form,
    path_graph,
)
from .factorgraph import factor_graph
from .spaces import realization_space
from .splits import (
    SplitBipartition,
    compose,
    decompose,
    is_prime,
    is_split,
    split_bipartition,
)
from .switching import TwoSwitch, apply, degree_formula, is_active


# -- the named catalog -----------------------------------------------------

# clique size and I-neighborhoods (as clique labels) for the split members
_SPLIT_DATA = {
    "D5": (3, ({0}, {1, 2})),
    "D6": (4, ({0}, {1, 2, 3})),
    "T6": (3, ({0}, {1}, {2})),
    "U6": (3, ({1}, {0, 2}, {0, 1})),
    "D41": (5, ({0}, {1, 2, 3, 4})),
    "D22": (4, ({0, 1}, {2, 3})),
    "F311": (4, ({1}, {0}, {1, 2, 3})),
    "F331": (4, ({0, 1, 2}, {1, 2, 3}, {0})),
    "R211": (3, ({0}, {1, 2}, {0})),
    "R321": (4, ({0}, {1, 2}, {0, 1, 3})),
}


def split_graph(clique_size, neighborhoods):
    """Split graph on fresh labels: clique 0..k-1, one I-vertex per set."""
    k = clique_size
    edges = list(itertools.combinations(range(k), 2))
    for j, hood in enumerate(neighborhoods):
        edges.extend((k + j, w) for w in hood)
    return Graph.from_edges(k + len(neighborhoods), edges)


@lru_cache(maxsize=1)
def named_catalog():
    """name -> Graph for every graph the small-degree censuses single out.

    Split members come from their clique/neighborhood data; each "Xbar"
    entry is the complement of X.  P4 is self-complementary and the C4 /
    2K2 pair are each other's complements, so those three carry no bar
    names.
    """
    catalog = {
        "P4": path_graph(4),
        "C4": cycle_graph(4),
        "2K2": complement(cycle_graph(4)),
    }
    for name, (k, hoods) in _SPLIT_DATA.items():
        g = split_graph(k, hoods)
        catalog[name] = g
        catalog[name + "bar"] = complement(g)
    return catalog


@lru_cache(maxsize=1)
def _name_by_form():
    forms = {}
    for name, g in named_catalog().items():
        forms.setdefault(canonical_form(g), name)
    return forms


def graph_form(g):
    """Isomorphism-invariant key for classification output.

    Graphs that fit the canonicalizer get its plain (n, mask) form.
    Larger graphs fall back on the uniqueness of the split decomposition:
    the tag "composite" followed by each factor's form.  Classified graphs
    beyond the canonicalizer cap are always compositions of small factors,
    so the fallback never recurses.
    """
    if g.n <= CANON_MAX_N:
        return canonical_form(g)
    parts = [f.graph if isinstance(f, SplitBipartition) else f
             for f in decompose(g).factors]
    if len(parts) == 1 or any(p.n > CANON_MAX_N for p in parts):
        raise LimitExceeded(f"no canonical key for order {g.n} graph")
    return ("composite",) + tuple(canonical_form(p) for p in parts)


def form_graph(form):
    """A representative graph of a `graph_form` key."""
    if form and form[0] == "composite":
        parts = [from_canonical(f) for f in form[1:]]
        g = parts[-1]
        for p in reversed(parts[:-1]):
            g = compose(split_bipartition(p), g)
        return g
    return from_canonical(form)


def name_of(g):
    """Catalog name of g, factor names joined by "*" for compositions,
    None if unrecognized."""
    if g.n <= CANON_MAX_N:
        direct = _name_by_form().get(canonical_form(g))
        if direct is not None:
            return direct
    parts = [f.graph if isinstance(f, SplitBipartition) else f
             for f in decompose(g).factors]
    if len(parts) == 1:
        return None
    names = [_name_by_form().get(canonical_form(p)) if p.n <= CANON_MAX_N
             else None for p in parts]
    if None in names:
        return None
    return "*".join(names)


# -- connected multigraph census --------------------------------------------


def _compositions(total, parts):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_connected_multigraphs(size):
    """Connected multigraphs with `size` edges (counting multiplicity), no
    isolated vertices, one representative per isomorphism class."""
    if size < 1:
        raise DomainError("size must be >= 1")
    seen = {}
    for order in range(2, size + 2):
        for skeleton in enumerate_unlabeled(order):
            edges = list(skeleton.edges())
            if not edges or len(edges) > size or not is_connected(skeleton):
                continue
            for mults in _compositions(size, len(edges)):
                mg = Multigraph(order, dict(zip(edges, mults)))
                form = multigraph_canonical_form(mg)
                if form not in seen:
                    seen[form] = mg
    return tuple(seen[f] for f in sorted(seen))


# -- split structure enumeration ---------------------------------------------


def _structures(max_clique, max_ind, clique_at_least_ind=False):
    """All (clique size, I-neighborhood masks) pairs within the side bounds.

    Neighborhoods are bitmasks over the clique, taken as multisets, so
    every split graph with every bipartition inside the bounds shows up
    exactly once.
    """
    for k in range(max_clique + 1):
        masks = list(range(1 << k))
        top = min(max_ind, k) if clique_at_least_ind else max_ind
        for i in range(top + 1):
            for hoods in itertools.combinations_with_replacement(masks, i):
                yield k, hoods


def _sigma_total(hoods):
    total = 0
    for a, b in itertools.combinations(hoods, 2):
        shared = (a & b).bit_count()
        total += (a.bit_count() - shared) * (b.bit_count() - shared)
    return total


def _materialize(k, hoods):
    edges = list(itertools.combinations(range(k), 2))
    for j, mask in enumerate(hoods):
        edges.extend((k + j, w) for w in range(k) if mask >> w & 1)
    g = Graph.from_edges(k + len(hoods), edges)
    return SplitBipartition(g, range(k), range(k, g.n))


# -- the classification pipelines ----------------------------------------------


@lru_cache(maxsize=None)
def classify_active(k):
    """Canonical forms of every unlabeled active graph of 2-switch degree k.

    Degrees 1 and 2 come from a full sweep of the order bound
    4 <= |G| <= 4k.  For degree 3 the sweep is out of reach (order up to
    12), so the list splits along reducibility: reducibles are Tyshkevich
    compositions of an already-classified split prime with an
    already-classified active graph of complementary degree, and primes
    live within |K|, |I| <= 4 where the split structures can be walked
    directly.
    """
    if k not in (1, 2, 3):
        raise DomainError("classification supports degrees 1, 2 and 3")
    if k <= 2:
        forms = []
        for n in range(4, 4 * k + 1):
            for g in enumerate_unlabeled(n):
                if degree_formula(g) == k and is_active(g):
                    forms.append(canonical_form(g))
        return tuple(sorted(forms))

    forms = set(split_primes_by_search(3))
    outers = []
    for a in (1, 2):
        for form in classify_active(a):
            g = form_graph(form)
            if is_split(g) and is_prime(g):
                outers.append((a, split_bipartition(g)))
    for a, outer in outers:
        for form in classify_active(3 - a):
            forms.add(graph_form(compose(outer, form_graph(form))))
    return tuple(sorted(forms, key=repr))


@lru_cache(maxsize=None)
def split_primes_by_search(k):
    """Split primes of degree k by brute enumeration within |K|, |I| <= k+1.

    The switch degree is recomputed per survivor straight from the
    switch-counting formula, independently of the sigma arithmetic used to
    preselect candidates.
    """
    if k < 1:
        raise DomainError("degree must be >= 1")
    found = set()
    for kk, hoods in _structures(k + 1, k + 1):
        if _sigma_total(hoods) != k:
            continue
        g = _materialize(kk, hoods).graph
        if degree_formula(g) == k and is_prime(g):
            found.add(canonical_form(g))
    return tuple(sorted(found))


@lru_cache(maxsize=1)
def classify_split_primes_deg4():
    """Canonical forms of every split prime graph of 2-switch degree 4.

    Walks split structures with |K| >= |I| (both <= 5), keeps the ones
    whose factor multigraph is connected of size 4 -- a member of the
    twelve-candidate pool -- and is prime, then closes under complement.
    Complements preserve primality and degree, and every split graph or
    its complement has |K| >= |I|, so the closure restores everything the
    side restriction hid.
    """
    pool = {multigraph_canonical_form(mg)
            for mg in enumerate_connected_multigraphs(4)}
    found = set()
    for kk, hoods in _structures(5, 5, clique_at_least_ind=True):
        if _sigma_total(hoods) != 4:
            continue
        sb = _materialize(kk, hoods)
        phi = factor_graph(sb)
        if not phi.is_connected():
            continue
        if not is_prime(sb.graph):
            continue
        form = multigraph_canonical_form(phi.multigraph())
        if form not in pool:
            raise AssertionError("factor graph escaped the size-4 pool")
        found.add(canonical_form(sb.graph))
    closed = set()
    for form in found:
        g = from_canonical(form)
        closed.add(form)
        closed.add(canonical_form(complement(g)))
    return tuple(sorted(closed))


# -- regularity of realization spaces --------------------------------------------


def p5_witness():
    """Degree 4 is not preserved: a switch on the 5-path raises it to 6."""
    g = path_graph(5)
    h = apply(g, TwoSwitch(0, 1, 4, 3))
    return {
        "graph": "P5",
        "degree_before": degree_formula(g),
        "degree_after": degree_formula(h),
        "image_degree_sequence": list(h.degree_sequence()),
    }


def _has_u6_factor(g):
    u6 = named_catalog()["U6"]
    for factor in decompose(g).factors:
        part = factor.graph if isinstance(factor, SplitBipartition) else factor
        if part.n == 6 and (is_isomorphic(part, u6)
                            or is_isomorphic(part, complement(u6))):
            return True
    return False


class RegularityReport:
    """Space-degree behavior of every classified degree-k graph of order <= 8."""

    __slots__ = ("degree", "entries", "p5")

    def __init__(self, degree, entries, p5):
        self.degree = degree
        self.entries = entries
        self.p5 = p5

    @property
    def exceptions(self):
        return [e for e in self.entries if not e["regular"]]

    @property
    def all_clean_regular(self):
        """True when exactly the U6-contaminated spaces are irregular."""
        return all(e["regular"] != e["u6_factor"] for e in self.entries)

    def to_json(self):
        return {
            "type": "regularity_report",
            "degree": self.degree,
            "entries": self.entries,
            "exceptions": [e["name"] for e in self.exceptions],
            "p5_witness": self.p5,
        }

    def __repr__(self):
        bad = len(self.exceptions)
        return (f"RegularityReport(degree={self.degree}, "
                f"spaces={len(self.entries)}, irregular={bad})")


def regularity_audit(k):
    """Check k-regularity of the realization space of each degree-k graph.

    Audits every classified active graph of degree k with order <= 8.  A
    space is recorded with its member count, the set of space degrees, and
    the name of a maximum-space-degree member; `u6_factor` flags graphs
    whose decomposition contains U6 or its complement, the only source of
    irregularity.
    """
    if k not in (1, 2, 3):
        raise DomainError("regularity audit supports degrees 1, 2 and 3")
    entries = []
    for form in classify_active(k):
        g = form_graph(form)
        if g.n > 8:
            continue
        space = realization_space(g.degree_sequence())
        degs = space.degrees()
        hub = max(range(len(degs)), key=degs.__getitem__)
        entries.append({
            "name": name_of(g) or f"order{g.n}#{form[1]}",
            "order": g.n,
            "space_size": len(space.members),
            "space_degrees": sorted(set(degs)),
            "regular": set(degs) == {k},
            "u6_factor": _has_u6_factor(g),
            "hub_name": name_of(space.members[hub]),
            "hub_degree": degs[hub],
        })
    return RegularityReport(k, entries, p5_witness())
