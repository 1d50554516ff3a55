"""Finite crystal graphs with cached statistics.

A graph holds the elements produced by a bounded generation pass, the
full lowering fan of every interior node, the raising results of every
node, and cached wt / eps / phi.  Truncation is explicit: lowering
successors that fall outside the generated set are recorded as CUT and
any check that would need them is skipped, never guessed.

Two generation modes:

* ``bfs_component``     -- all elements reachable from a root by at most
  ``depth`` lowerings, expanded in index order, node ids assigned layer
  by layer in element order (deterministic, stable across runs);
* ``graph_from_universe`` -- an explicitly given finite element set,
  used to audit products of truncated crystals.

Raising is expected to stay inside a generated component; a raising
result outside the node set is recorded in ``closure_failures`` (for a
component, that indicates an operator bug).
"""

from __future__ import annotations

import json

from .cartan import Weight, ext_to_json, is_neg_inf
from .crystals import (
    ElementaryElement,
    ShiftElement,
    UnitElement,
    sort_key,
)


class GraphStructureError(ValueError):
    """A graph whose node or edge tables are internally inconsistent."""


class _CutType:
    """Marker for a lowering/raising result cut off by the truncation."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CUT"


CUT = _CutType()


class NodeRecord:
    __slots__ = ("elt", "depth", "wt", "eps", "phi", "e_ids", "f_ids", "frontier")

    def __init__(self, elt, depth=None):
        self.elt = elt
        self.depth = depth
        self.wt = None
        self.eps = None
        self.phi = None
        self.e_ids = None
        self.f_ids = None
        self.frontier = False


class CrystalGraph:
    """Rooted, edge-labeled digraph of crystal elements.

    ``nodes[k]`` is the record of node id k; ``ids`` maps elements back
    to ids.  Edges are implicit in the per-node lowering fans and can be
    iterated with :meth:`edges`.  Graphs are built single-threaded and
    should be treated as immutable afterwards (tests that inject faults
    mutate records deliberately).
    """

    def __init__(self, datum, crystal=None, depth_bound=None):
        self.datum = datum
        self.crystal = crystal
        self.depth_bound = depth_bound
        self.root = 0
        self.nodes = []
        self.ids = {}
        self.closure_failures = []

    def __len__(self):
        return len(self.nodes)

    def add_node(self, elt, depth=None) -> int:
        if elt in self.ids:
            raise GraphStructureError(f"duplicate node {elt!r}")
        node_id = len(self.nodes)
        self.ids[elt] = node_id
        self.nodes.append(NodeRecord(elt, depth))
        return node_id

    def node(self, node_id) -> NodeRecord:
        return self.nodes[node_id]

    def elements(self):
        return [n.elt for n in self.nodes]

    def edges(self):
        """Yield (from_id, index, to_id) for every known lowering edge."""
        for u, node in enumerate(self.nodes):
            for i, v in enumerate(node.f_ids):
                if v is not None and v is not CUT:
                    yield (u, i, v)

    def in_edges(self):
        """Map node id -> sorted list of (parent_id, index)."""
        incoming = {u: [] for u in range(len(self.nodes))}
        for u, i, v in self.edges():
            incoming[v].append((u, i))
        for v in incoming:
            incoming[v].sort()
        return incoming


def _annotate(graph, crystal, mode):
    """Fill stats and operator fans.  mode is "bfs" or "universe"."""
    datum = crystal.datum
    indices = range(datum.size)
    bound = graph.depth_bound
    for u, node in enumerate(graph.nodes):
        elt = node.elt
        node.wt = crystal.wt(elt)
        node.eps = tuple(crystal.eps(i, elt) for i in indices)
        node.phi = tuple(crystal.phi(i, elt) for i in indices)
        e_ids = []
        for i in indices:
            r = crystal.e(i, elt)
            if r is None:
                e_ids.append(None)
            elif r in graph.ids:
                e_ids.append(graph.ids[r])
            else:
                e_ids.append(CUT)
                if mode == "bfs":
                    graph.closure_failures.append((u, i, r))
        node.e_ids = tuple(e_ids)
        f_ids = []
        at_bound = mode == "bfs" and bound is not None and node.depth == bound
        for i in indices:
            r = crystal.f(i, elt)
            if r is None:
                f_ids.append(None)
            elif at_bound:
                f_ids.append(CUT)
            elif r in graph.ids:
                f_ids.append(graph.ids[r])
            elif mode == "universe":
                f_ids.append(CUT)
            else:
                raise GraphStructureError(
                    f"interior node {u} has an uncollected lowering successor {r!r}"
                )
        node.f_ids = tuple(f_ids)
        if mode == "bfs":
            node.frontier = bool(at_bound)
        else:
            node.frontier = any(v is CUT for v in f_ids)
    return graph


def bfs_component(crystal, root, depth: int) -> CrystalGraph:
    """Generate all elements within ``depth`` lowerings of ``root``.

    Layers are expanded in index order and each new layer is sorted by
    element order before ids are assigned, so ids, edges and exports are
    reproducible byte for byte.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    graph = CrystalGraph(crystal.datum, crystal, depth_bound=depth)
    graph.add_node(root, depth=0)
    layer = [0]
    for d in range(1, depth + 1):
        found = set()
        for u in layer:
            elt = graph.nodes[u].elt
            for i in range(crystal.datum.size):
                r = crystal.f(i, elt)
                if r is not None and r not in graph.ids:
                    found.add(r)
        if not found:
            break
        layer = [graph.add_node(elt, depth=d) for elt in sorted(found, key=sort_key)]
    return _annotate(graph, crystal, "bfs")


def graph_from_universe(crystal, elements) -> CrystalGraph:
    """Graph over an explicit finite element set (no reachability claim).

    Operator results outside the set are recorded as CUT; a node with a
    cut lowering entry is flagged frontier.
    """
    graph = CrystalGraph(crystal.datum, crystal, depth_bound=None)
    for elt in sorted(set(elements), key=sort_key):
        graph.add_node(elt)
    if not graph.nodes:
        raise ValueError("universe must be nonempty")
    return _annotate(graph, crystal, "universe")


def validate_structure(graph):
    """Raise GraphStructureError unless all node/edge tables are sane."""
    n = len(graph.nodes)
    if not 0 <= graph.root < n:
        raise GraphStructureError(f"root id {graph.root} out of range")
    for u, node in enumerate(graph.nodes):
        for label, fan in (("e", node.e_ids), ("f", node.f_ids)):
            if fan is None or len(fan) != graph.datum.size:
                raise GraphStructureError(f"node {u} has a malformed {label}-fan")
            for v in fan:
                if v is None or v is CUT:
                    continue
                if not (isinstance(v, int) and 0 <= v < n):
                    raise GraphStructureError(f"node {u} {label}-edge to missing node {v!r}")
        if node.eps is None or node.phi is None or len(node.eps) != graph.datum.size:
            raise GraphStructureError(f"node {u} is missing cached statistics")


def manual_graph(datum, weights, edges, root=0, elements=None, eps=None, phi=None):
    """Hand-build a graph from weights and lowering edges (tests, docs).

    ``edges`` is a list of (from_id, index, to_id); raising fans are the
    mirror of the lowering fans.  Statistics default to 0 everywhere and
    can be overridden per node.
    """
    graph = CrystalGraph(datum, None, depth_bound=None)
    for k, w in enumerate(weights):
        elt = elements[k] if elements is not None else ("node", k)
        node_id = graph.add_node(elt)
        node = graph.nodes[node_id]
        node.wt = w
        node.eps = tuple(eps[k]) if eps is not None else (0,) * datum.size
        node.phi = tuple(phi[k]) if phi is not None else (0,) * datum.size
        node.e_ids = tuple([None] * datum.size)
        node.f_ids = tuple([None] * datum.size)
    for u, i, v in edges:
        fu = list(graph.nodes[u].f_ids)
        fu[i] = v
        graph.nodes[u].f_ids = tuple(fu)
        ev = list(graph.nodes[v].e_ids)
        ev[i] = u
        graph.nodes[v].e_ids = tuple(ev)
    graph.root = root
    return graph


def weight_token(w: Weight) -> str:
    return "[%s|%s]" % (",".join(map(str, w.lam)), ",".join(map(str, w.rt)))


def element_token(elt, datum) -> str:
    """Compact printable form of an element (export and diagnostics)."""
    from .tensor import TensorElement
    from .binfinity import StringElement

    if isinstance(elt, ElementaryElement):
        return "b%s(-%d)" % (datum.index_names[elt.index], elt.steps)
    if isinstance(elt, ShiftElement):
        return "t" + weight_token(elt.weight)
    if isinstance(elt, UnitElement):
        return "c"
    if isinstance(elt, StringElement):
        return "x[%s]" % ",".join(map(str, elt.x))
    if isinstance(elt, TensorElement):
        return "*".join(element_token(f, datum) for f in elt.factors)
    return repr(elt)


def graph_to_json_dict(graph) -> dict:
    datum = graph.datum
    names = datum.index_names
    nodes = []
    for k, node in enumerate(graph.nodes):
        nodes.append(
            {
                "id": k,
                "elt": element_token(node.elt, datum),
                "wt": {"lam": list(node.wt.lam), "rt": list(node.wt.rt)},
                "eps": {names[i]: ext_to_json(node.eps[i]) for i in range(datum.size)},
                "phi": {names[i]: ext_to_json(node.phi[i]) for i in range(datum.size)},
                "frontier": node.frontier,
            }
        )
    edges = [
        {"from": u, "to": v, "i": names[i]}
        for (u, i, v) in sorted(graph.edges())
    ]
    return {"root": graph.root, "nodes": nodes, "edges": edges}


def graph_to_json(graph) -> str:
    return json.dumps(graph_to_json_dict(graph), sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_dot(graph) -> str:
    """DOT export: nodes labeled by the root-coefficient vector of wt,
    edges labeled by the index name."""
    lines = ["digraph crystal {"]
    for k, node in enumerate(graph.nodes):
        label = "[%s]" % ",".join(map(str, node.wt.rt))
        shape = ' shape=box' if node.frontier else ""
        lines.append('  n%d [label="%s"%s];' % (k, label, shape))
    for u, i, v in sorted(graph.edges()):
        lines.append('  n%d -> n%d [label="%s"];' % (u, v, graph.datum.index_names[i]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def canonical_form(graph) -> dict:
    """Key every node by its minimal lowering-label path from the root.

    Paths are compared by (length, labels); for the graphs produced here
    all paths to a node have equal length, so this is the lexicographic
    minimum.  Raises if some node is unreachable along known edges.
    """
    out_edges = {u: [] for u in range(len(graph.nodes))}
    for u, i, v in graph.edges():
        out_edges[u].append((i, v))
    assigned = {graph.root: ()}
    current = {graph.root: ()}
    while current:
        upcoming = {}
        for u, path in current.items():
            for i, v in out_edges[u]:
                if v in assigned:
                    continue
                cand = path + (i,)
                if v not in upcoming or cand < upcoming[v]:
                    upcoming[v] = cand
        assigned.update(upcoming)
        current = upcoming
    if len(assigned) != len(graph.nodes):
        missing = sorted(set(range(len(graph.nodes))) - set(assigned))
        raise GraphStructureError(f"nodes unreachable from the root: {missing}")
    return assigned


def graphs_isomorphic(g1, g2) -> bool:
    """Rooted edge-labeled isomorphism via canonical path labels."""
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if set(c1.values()) != set(c2.values()):
        return False
    e1 = {(c1[u], i, c1[v]) for (u, i, v) in g1.edges()}
    e2 = {(c2[u], i, c2[v]) for (u, i, v) in g2.edges()}
    return e1 == e2


def weight_multiplicities(graph):
    """Sorted (weight, multiplicity) table of the graph's nodes."""
    counts = {}
    for node in graph.nodes:
        counts[node.wt] = counts.get(node.wt, 0) + 1
    return sorted(counts.items(), key=lambda kv: kv[0].sort_key())
