"""Command-line interface: the whole package behind one entry point.

Graphs are passed as JSON files ({"schema": "switchlab/1", "n": ..,
"edges": [[u, v], ..]}), "-" for stdin, a catalog name (P4, U6, D41bar,
...), or a builder shorthand like path:5, cycle:6, complete:4, star:5,
empty:0.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from .classify import (
    classify_active,
    classify_split_primes_deg4,
    enumerate_connected_multigraphs,
    form_graph,
    name_of,
    named_catalog,
    regularity_audit,
)
from .deltanumbers import (
    delta_members,
    generator_polynomial,
    has_delta,
    is_delta_member,
)
from .errors import SwitchlabError
from .factorgraph import (
    build_split_from_delta,
    factor_graph,
    flow_configuration,
    linearity_report,
    sigma,
    validate_structure,
)
from .graphs import (
    SCHEMA,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    path_graph,
    star_graph,
)
from .spaces import active_space, forest_space, realization_space, unicyclic_space
from .splits import (
    SplitBipartition,
    compose as compose_split,
    decompose,
    interchangeable_vertices,
    split_bipartition,
)
from .switching import (
    TwoSwitch,
    active_vertices,
    apply as apply_switch,
    degree_brute,
    degree_formula,
    is_active,
)
from .twins import quotient as twin_quotient, quotient_index, twin_partition


_BUILDERS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
    "empty": empty_graph,
}


def _load_graph(src):
    if src == "-":
        return graph_from_json(json.load(sys.stdin))
    if os.path.exists(src):
        with open(src, encoding="utf-8") as fh:
            return graph_from_json(json.load(fh))
    head, _, tail = src.partition(":")
    if head in _BUILDERS and tail.isdigit():
        return _BUILDERS[head](int(tail))
    catalog = named_catalog()
    if src in catalog:
        return catalog[src]
    raise click.UsageError(
        f"{src!r} is not a file, catalog name, or builder shorthand")


def _parse_sequence(text):
    seq = []
    try:
        for part in filter(None, text.replace(" ", "").split(",")):
            base, _, power = part.partition("^")
            seq.extend([int(base)] * (int(power) if power else 1))
    except ValueError:
        raise click.UsageError(f"bad degree sequence {text!r}; "
                               "use forms like 2,2,1,1 or 2^3,1^2")
    if not seq and text.strip() not in ("", "0^0"):
        raise click.UsageError(f"bad degree sequence {text!r}")
    return tuple(seq)


def _echo_json(doc):
    click.echo(json.dumps(doc, indent=2))


def _domain_errors(f):
    """Map library errors to exit code 1 with the message on stderr."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except SwitchlabError as exc:
            raise click.ClickException(str(exc)) from exc
    return wrapper


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "dot", "text"]),
    default="json", show_default=True, help="Output format.")


@click.group()
def main():
    """Degree-preserving 2-switches: spaces, splits, factor graphs, and
    the divisor arithmetic behind them."""


@main.command()
@click.argument("graph")
@_domain_errors
def deg(graph):
    """2-switch degree and active set of GRAPH."""
    g = _load_graph(graph)
    act = active_vertices(g)
    _echo_json({
        "schema": SCHEMA,
        "type": "degree",
        "n": g.n,
        "deg": degree_formula(g),
        "active": is_active(g),
        "active_vertices": sorted(act),
    })


@main.command()
@click.argument("graph")
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.argument("c", type=int)
@click.argument("d", type=int)
@_format_option
@_domain_errors
def switch(graph, a, b, c, d, fmt):
    """Apply the 2-switch (A B; C D): drop AB, CD; add AC, BD."""
    g = _load_graph(graph)
    tau = TwoSwitch(a, b, c, d)
    h = apply_switch(g, tau)
    if fmt == "dot":
        click.echo(graph_to_dot(h))
    elif fmt == "text":
        click.echo(f"n={h.n} edges={sorted(h.edges())} changed={h != g}")
    else:
        _echo_json(graph_to_json(h, changed=h != g))


@main.command()
@click.argument("sequence")
@click.option("--kind", type=click.Choice(["all", "forest", "unicyclic",
                                           "active"]), default="all",
              show_default=True, help="Which realization space to build.")
@click.option("--members", is_flag=True, help="Include the member list.")
@_domain_errors
def space(sequence, kind, members):
    """Realization space of a degree SEQUENCE such as 2^3,1^2."""
    seq = _parse_sequence(sequence)
    if kind == "forest":
        sp = forest_space(seq)
    elif kind == "unicyclic":
        sp = unicyclic_space(seq)
    elif kind == "active":
        sp = active_space(realization_space(seq))
    else:
        sp = realization_space(seq)
    _echo_json(sp.to_json(include_members=members))


@main.command()
@click.argument("graph")
@_domain_errors
def split(graph):
    """Canonical clique/independent bipartition of a split GRAPH."""
    g = _load_graph(graph)
    sb = split_bipartition(g)
    doc = sb.to_json()
    inter = sorted(interchangeable_vertices(sb))
    doc["interchangeable"] = inter
    doc["balanced"] = not inter
    _echo_json(doc)


@main.command(name="decompose")
@click.argument("graph")
@_domain_errors
def decompose_cmd(graph):
    """Canonical composition series of GRAPH, outermost factor first."""
    g = _load_graph(graph)
    dec = decompose(g)
    factors = []
    for factor, verts in zip(dec.factors, dec.vertex_sets):
        if isinstance(factor, SplitBipartition):
            doc = factor.to_json()
        else:
            doc = graph_to_json(factor)
        doc["vertices"] = list(verts)
        part = factor.graph if isinstance(factor, SplitBipartition) else factor
        doc["name"] = name_of(part)
        factors.append(doc)
    _echo_json({
        "schema": SCHEMA,
        "type": "decomposition",
        "n": g.n,
        "irreducible": len(factors) == 1,
        "factor_count": len(factors),
        "factors": factors,
        "name": name_of(g),
    })


@main.command(name="compose")
@click.argument("outer")
@click.argument("inner")
@_format_option
@_domain_errors
def compose_cmd(outer, inner, fmt):
    """Composition: clique of split OUTER joined to every vertex of INNER."""
    s = split_bipartition(_load_graph(outer))
    g = _load_graph(inner)
    h = compose_split(s, g)
    if fmt == "dot":
        click.echo(graph_to_dot(h))
    elif fmt == "text":
        click.echo(f"n={h.n} edges={sorted(h.edges())}")
    else:
        _echo_json(graph_to_json(h))


@main.command()
@click.argument("graph")
@_format_option
@_domain_errors
def quotient(graph, fmt):
    """Twin classes of GRAPH and the quotient they induce."""
    g = _load_graph(graph)
    tp = twin_partition(g)
    q = twin_quotient(g)
    if fmt == "dot":
        click.echo(graph_to_dot(q))
        return
    doc = {
        "schema": SCHEMA,
        "type": "quotient",
        "n": g.n,
        "classes": [sorted(c) for c in tp.classes],
        "kinds": list(tp.kinds),
        "index": quotient_index(g),
        "quotient": graph_to_json(q),
    }
    if fmt == "text":
        click.echo(f"classes={doc['classes']} index={doc['index']}")
    else:
        _echo_json(doc)


@main.command()
@click.argument("graph")
@_format_option
@_domain_errors
def phi(graph, fmt):
    """Factor multigraph of a split GRAPH, with flow, linearity and checks."""
    sb = split_bipartition(_load_graph(graph))
    fg = factor_graph(sb)
    if fmt == "dot":
        click.echo(fg.to_dot())
        return
    report = validate_structure(fg)
    doc = {
        "schema": SCHEMA,
        "type": "phi_report",
        "phi": fg.to_json(),
        "flow": flow_configuration(sb).to_json(),
        "linearity": linearity_report(sb).to_json(),
        "structure": report.to_json(),
    }
    if fmt == "text":
        click.echo(f"deg={fg.size()} edges={fg.edges()} ok={report.ok}")
    else:
        _echo_json(doc)


@main.command()
@click.argument("n", type=int, required=False)
@click.option("--sieve", nargs=2, type=int, metavar="LO HI",
              help="List members in [LO, HI].")
@click.option("--primitive", is_flag=True,
              help="With --sieve, keep only primitive members.")
@click.option("--poly", nargs=3, type=int, metavar="A B C",
              help="Cubic member family from factor slopes/intercepts.")
@click.option("--range", "xrange", nargs=2, type=int, default=(1, 10),
              show_default=True, metavar="X0 X1",
              help="With --poly, evaluate on x in [X0, X1].")
@_domain_errors
def delta(n, sieve, primitive, poly, xrange):
    """Divisor-gap membership: certificate for N, a sieve, or a family."""
    chosen = [x for x in (n is not None, bool(sieve), bool(poly)) if x]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of N, --sieve, or --poly")
    if n is not None:
        _echo_json(has_delta(n).to_json())
    elif sieve:
        lo, hi = sieve
        members = list(delta_members(lo, hi, primitive_only=primitive))
        _echo_json({
            "schema": SCHEMA,
            "type": "delta_sieve",
            "lo": lo, "hi": hi,
            "primitive_only": primitive,
            "members": members,
        })
    else:
        gp = generator_polynomial(*poly)
        x0, x1 = xrange
        doc = gp.to_json()
        doc["values"] = [
            {"x": x, "n": gp.value(x), "member": is_delta_member(gp.value(x))}
            for x in range(x0, x1 + 1)
        ]
        _echo_json(doc)


@main.command(name="delta-build")
@click.argument("n", type=int)
@click.argument("x", type=int)
@click.argument("y", type=int)
@click.argument("z", type=int)
@click.argument("d_a", type=int)
@_format_option
@_domain_errors
def delta_build(n, x, y, z, d_a, fmt):
    """Balanced split with every sigma equal to N, from witness (X, Y, Z)."""
    sb = build_split_from_delta(n, x, y, z, d_a)
    if fmt == "dot":
        click.echo(graph_to_dot(sb.graph))
        return
    doc = sb.to_json()
    a, b, c = sb.independent
    doc["sigma"] = {f"{u},{v}": sigma(sb, u, v)
                    for u, v in ((a, b), (a, c), (b, c))}
    doc["degrees"] = [sb.graph.degree(v) for v in (a, b, c)]
    doc["active"] = is_active(sb.graph)
    if fmt == "text":
        click.echo(f"|K|={len(sb.clique)} degrees={doc['degrees']} "
                   f"sigma={sorted(set(doc['sigma'].values()))} "
                   f"active={doc['active']}")
    else:
        _echo_json(doc)


@main.command()
@click.option("--degree", type=int, help="Classify active graphs of this degree.")
@click.option("--split-primes", is_flag=True,
              help="The twelve split primes of degree 4.")
@click.option("--audit", is_flag=True,
              help="With --degree, audit how regular the members' spaces are.")
@_format_option
@_domain_errors
def classify(degree, split_primes, audit, fmt):
    """Complete censuses for small 2-switch degree."""
    if audit:
        if degree is None:
            raise click.UsageError("--audit needs --degree K")
        _echo_json(regularity_audit(degree).to_json())
        return
    if split_primes:
        forms = classify_split_primes_deg4()
        label = "split primes of degree 4"
        k = 4
    elif degree is not None:
        forms = classify_active(degree)
        label = f"active graphs of degree {degree}"
        k = degree
    else:
        raise click.UsageError("give --degree K or --split-primes")
    members = sorted(
        ((name_of(g) or f"order{g.n}", g) for g in map(form_graph, forms)),
        key=lambda pair: (pair[1].n, pair[0]))
    entries = [{"name": name, "order": g.n,
                "degree_sequence": list(g.degree_sequence())}
               for name, g in members]
    if fmt == "dot":
        click.echo("\n".join(
            f"// {name}\n" + graph_to_dot(g, name=f"G{i}")
            for i, (name, g) in enumerate(members)))
    elif fmt == "text":
        click.echo(f"{label}: {len(entries)}")
        for e in entries:
            seq = ",".join(map(str, e["degree_sequence"]))
            click.echo(f"  {e['name']:<10} order {e['order']}  degrees {seq}")
    else:
        _echo_json({
            "schema": SCHEMA,
            "type": "classification",
            "degree": k,
            "count": len(entries),
            "graphs": entries,
        })


@main.command()
@click.pass_context
def selftest(ctx):
    """Fast end-to-end checks across every module."""
    import random as _random
    from .graphs import enumerate_unlabeled, random_graph
    from .splits import is_split

    rng = _random.Random(11)
    failures = 0

    def check(label, fn):
        nonlocal failures
        try:
            ok = bool(fn())
        except Exception as exc:           # pragma: no cover - defensive
            ok = False
            label = f"{label} ({exc})"
        click.echo(("ok   - " if ok else "FAIL - ") + label)
        failures += 0 if ok else 1

    check("switch degree formula matches brute count (all n <= 5)",
          lambda: all(degree_formula(g) == degree_brute(g)
                      for n in range(6) for g in enumerate_unlabeled(n)))
    check("switch degree formula matches brute count (random n = 7)",
          lambda: all(degree_formula(g) == degree_brute(g)
                      for g in (random_graph(7, 0.5, rng) for _ in range(25))))
    check("path and cycle degree laws (5 <= n <= 9)",
          lambda: all(degree_formula(path_graph(n)) == (n - 3) ** 2
                      and degree_formula(cycle_graph(n)) == n * (n - 4)
                      for n in range(5, 10)))
    check("factor graph size equals switch degree on random splits",
          lambda: all(
              factor_graph(sb).size() == degree_formula(sb.graph)
              for sb in (build_split_from_delta(24, 2, 3, 3, d) for d in (3, 4, 5))))
    check("divisor-gap members below 130",
          lambda: list(delta_members(1, 130)) ==
          [24, 40, 60, 84, 96, 105, 120])
    check("connected multigraph census (1, 2, 5, 12)",
          lambda: [len(enumerate_connected_multigraphs(s))
                   for s in (1, 2, 3, 4)] == [1, 2, 5, 12])
    check("catalog graphs all active, split except C4 and 2K2",
          lambda: all(is_active(g) and (is_split(g) or name in ("C4", "2K2"))
                      for name, g in named_catalog().items()))
    check("degree-1 classification is the 4-path",
          lambda: [name_of(form_graph(f)) for f in classify_active(1)] == ["P4"])
    check("composition degree is additive on a sample pair",
          lambda: degree_formula(
              compose_split(split_bipartition(path_graph(4)),
                            named_catalog()["D5"])) == 1 + 2)
    click.echo(f"{'FAILED' if failures else 'passed'} "
               f"({failures} failing check{'s' if failures != 1 else ''})")
    if failures:
        ctx.exit(1)


if __name__ == "__main__":
    main()
