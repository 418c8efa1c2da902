"""Splice diagrams: data model, file parser, and tree queries.

A splice diagram is a finite tree with no valence-2 vertices.  Vertices of
valence >= 3 are *nodes* and carry a sign; vertices of valence 1 are
*leaves*.  Every edge end sitting at a node carries one nonnegative integer
weight; leaf ends carry nothing.  Degenerate diagrams without nodes (the
empty diagram, or a single edge between two leaves) are accepted, but all
weight queries on them fail.

The file grammar (UTF-8, line based, ``#`` comments):

    splice
    node <id> <+|->
    leaf <id>
    edge <idA> <idB> <wA> [<wB>]

An edge line carries two weights iff both endpoints are nodes (wA at A's
end, wB at B's end), one weight iff exactly one endpoint is a node (at the
node end), and none iff both endpoints are leaves.
"""

from math import prod
from typing import NamedTuple

from .errors import InputError, ParseError

NODE = "node"
LEAF = "leaf"


class EdgeEnd(NamedTuple):
    """The end of the edge {vertex, other} sitting at ``vertex``.

    In a tree the unordered endpoint pair identifies the edge, so this pair
    doubles as the (edge, vertex) index used for weights and ideal
    generators.
    """

    vertex: str
    other: str

    def reversed(self):
        return EdgeEnd(self.other, self.vertex)


class SpliceDiagram:
    """Immutable validated splice diagram.

    Construct via :func:`parse_diagram` or :meth:`from_parts`; both run the
    full invariant check.  All query methods are pure, and any ordering in
    the results is the lexicographic order of the vertex id tokens, so a
    diagram's behaviour does not depend on declaration order.
    """

    def __init__(self, kinds, signs, adjacency):
        # kinds: id -> NODE|LEAF; signs: node id -> +-1;
        # adjacency: id -> {neighbor id: weight at this end or None}
        self._kinds = dict(kinds)
        self._signs = dict(signs)
        self._adj = {v: dict(nbrs) for v, nbrs in adjacency.items()}
        self._validate()

    @classmethod
    def from_parts(cls, nodes, leaves, edges):
        """Build and validate a diagram from raw pieces.

        nodes: mapping id -> sign (+1/-1); leaves: iterable of ids;
        edges: iterables (a, b, weight_at_a, weight_at_b) where the weight
        slots must be None exactly at leaf endpoints.
        """
        kinds = {}
        signs = {}
        for v, sign in nodes.items():
            if sign not in (1, -1):
                raise InputError(f"node {v!r}: sign must be +1 or -1")
            kinds[v] = NODE
            signs[v] = sign
        for v in leaves:
            if v in kinds:
                raise InputError(f"duplicate vertex id {v!r}")
            kinds[v] = LEAF
        adjacency = {v: {} for v in kinds}
        for a, b, wa, wb in edges:
            for v in (a, b):
                if v not in kinds:
                    raise InputError(f"edge references unknown vertex {v!r}")
            if a == b:
                raise InputError(f"self-loop at {a!r}")
            if b in adjacency[a]:
                raise InputError(f"duplicate edge {a!r}-{b!r}")
            for v, w in ((a, wa), (b, wb)):
                if kinds[v] == NODE:
                    if w is None:
                        raise InputError(f"edge {a!r}-{b!r}: missing weight at node {v!r}")
                    if not isinstance(w, int) or w < 0:
                        raise InputError(f"edge {a!r}-{b!r}: weight at {v!r} must be a nonnegative integer")
                elif w is not None:
                    raise InputError(f"edge {a!r}-{b!r}: leaf end {v!r} cannot carry a weight")
            adjacency[a][b] = wa
            adjacency[b][a] = wb
        return cls(kinds, signs, adjacency)

    def _validate(self):
        for v, kind in self._kinds.items():
            valence = len(self._adj[v])
            if valence == 2:
                raise InputError(f"valence two vertex {v!r}")
            if kind == NODE:
                if v not in self._signs:
                    raise InputError(f"missing node sign at {v!r}")
                if valence < 3:
                    raise InputError(f"node {v!r} has valence {valence}, needs >= 3")
            elif valence != 1:
                raise InputError(f"leaf {v!r} has valence {valence}, needs exactly 1")
        n_vertices = len(self._kinds)
        n_edges = sum(len(nbrs) for nbrs in self._adj.values()) // 2
        if n_vertices:
            seen = set()
            stack = [min(self._kinds)]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(self._adj[v])
            if len(seen) != n_vertices:
                raise InputError("diagram is not connected")
            if n_edges != n_vertices - 1:
                raise InputError("diagram is not a tree (cyclic)")

    # -- basic queries ------------------------------------------------

    def vertex_ids(self):
        return sorted(self._kinds)

    def node_ids(self):
        return sorted(v for v, k in self._kinds.items() if k == NODE)

    def leaf_ids(self):
        return sorted(v for v, k in self._kinds.items() if k == LEAF)

    def has_vertex(self, v):
        return v in self._kinds

    def is_node(self, v):
        self._require(v)
        return self._kinds[v] == NODE

    def sign(self, v):
        if not self.is_node(v):
            raise InputError(f"{v!r} is not a node")
        return self._signs[v]

    def neighbors(self, v):
        self._require(v)
        return sorted(self._adj[v])

    def edges(self):
        """All edges as (a, b) pairs with a < b, sorted."""
        return sorted(
            (min(v, u), max(v, u)) for v in self._adj for u in self._adj[v] if v < u
        )

    def internode_edges(self):
        return [(a, b) for a, b in self.edges() if self.is_node(a) and self.is_node(b)]

    def has_edge(self, a, b):
        self._require(a)
        self._require(b)
        return b in self._adj[a]

    def weight_at(self, v, u):
        """Weight at v's end of the edge v-u.  v must be a node."""
        if not self.has_edge(v, u):
            raise InputError(f"no edge {v!r}-{u!r}")
        if self._kinds[v] != NODE:
            raise InputError(f"no weight at leaf end {v!r}")
        return self._adj[v][u]

    def node_weights(self, v):
        """Weights on all edge ends at node v, in neighbor order."""
        if not self.is_node(v):
            raise InputError(f"{v!r} is not a node")
        return [self._adj[v][u] for u in self.neighbors(v)]

    def _require(self, v):
        if v not in self._kinds:
            raise InputError(f"unknown vertex {v!r}")

    # -- tree walks ----------------------------------------------------

    def path(self, v, w):
        """Vertices of the unique v-w path, inclusive."""
        self._require(v)
        self._require(w)
        parent = {v: None}
        stack = [v]
        while stack:
            x = stack.pop()
            if x == w:
                break
            for y in self._adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        out = [w]
        while out[-1] != v:
            out.append(parent[out[-1]])
        out.reverse()
        return out

    def component_beyond(self, v, u):
        """Vertex set of the component of u after the vertex v is deleted."""
        if not self.has_edge(v, u):
            raise InputError(f"no edge {v!r}-{u!r}")
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y != v and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def leaves_beyond(self, v, u):
        """Leaves in the component of u after deleting v, sorted."""
        return sorted(x for x in self.component_beyond(v, u) if self._kinds[x] == LEAF)

    def __eq__(self, other):
        if not isinstance(other, SpliceDiagram):
            return NotImplemented
        return (
            self._kinds == other._kinds
            and self._signs == other._signs
            and self._adj == other._adj
        )

    def __repr__(self):
        return (
            f"SpliceDiagram(nodes={len(self.node_ids())}, "
            f"leaves={len(self.leaf_ids())})"
        )


# -- parsing and rendering --------------------------------------------


def _tokenize(text):
    """Yield (line_number, tokens) for non-empty lines, comments stripped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def parse_diagram(text):
    """Parse splice-file text into a validated SpliceDiagram."""
    lines = list(_tokenize(text))
    if not lines or lines[0][1] != ["splice"]:
        line = lines[0][0] if lines else 1
        raise ParseError("expected 'splice' header", line=line)

    nodes = {}
    leaves = []
    edge_lines = []
    declared = {}
    for number, tokens in lines[1:]:
        keyword = tokens[0]
        if keyword == "node":
            if len(tokens) == 2:
                raise ParseError(f"missing node sign for {tokens[1]!r}", line=number)
            if len(tokens) != 3:
                raise ParseError("expected 'node <id> <+|->'", line=number)
            _, vid, sign = tokens
            if vid in declared:
                raise ParseError(f"duplicate vertex id {vid!r}", line=number)
            if sign not in ("+", "-"):
                raise ParseError(f"sign must be '+' or '-', got {sign!r}", line=number, column=len(" ".join(tokens[:2])) + 2)
            declared[vid] = NODE
            nodes[vid] = 1 if sign == "+" else -1
        elif keyword == "leaf":
            if len(tokens) != 2:
                raise ParseError("expected 'leaf <id>'", line=number)
            vid = tokens[1]
            if vid in declared:
                raise ParseError(f"duplicate vertex id {vid!r}", line=number)
            declared[vid] = LEAF
            leaves.append(vid)
        elif keyword == "edge":
            if len(tokens) < 3:
                raise ParseError("expected 'edge <idA> <idB> [<wA> [<wB>]]'", line=number)
            edge_lines.append((number, tokens[1], tokens[2], tokens[3:]))
        else:
            raise ParseError(f"unknown directive {keyword!r}", line=number, column=1)

    edges = []
    for number, a, b, weight_tokens in edge_lines:
        for v in (a, b):
            if v not in declared:
                raise ParseError(f"edge references undeclared vertex {v!r}", line=number)
        expected = (declared[a] == NODE) + (declared[b] == NODE)
        if len(weight_tokens) != expected:
            raise ParseError(
                f"edge {a!r}-{b!r} needs {expected} weight(s), got {len(weight_tokens)}",
                line=number,
            )
        weights = []
        for token in weight_tokens:
            try:
                w = int(token)
            except ValueError:
                raise ParseError(f"weight {token!r} is not an integer", line=number) from None
            if w < 0:
                raise ParseError(f"weight {token!r} is negative", line=number)
            weights.append(w)
        weights_iter = iter(weights)
        wa = next(weights_iter) if declared[a] == NODE else None
        wb = next(weights_iter) if declared[b] == NODE else None
        edges.append((a, b, wa, wb))

    try:
        return SpliceDiagram.from_parts(nodes, leaves, edges)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def render_diagram(d):
    """Canonical splice-file text for a diagram; parses back to an equal one."""
    out = ["splice"]
    for v in d.node_ids():
        out.append(f"node {v} {'+' if d.sign(v) == 1 else '-'}")
    for v in d.leaf_ids():
        out.append(f"leaf {v}")
    for a, b in d.edges():
        parts = [f"edge {a} {b}"]
        if d.is_node(a):
            parts.append(str(d.weight_at(a, b)))
        if d.is_node(b):
            parts.append(str(d.weight_at(b, a)))
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


# -- the queries the invariants are built from -------------------------


def sees(d, end, target):
    """Whether the edge end sees the target vertex or edge.

    Delete the node the end sits at; the end sees the target iff the end's
    edge and the target land in the same connected component.  An edge
    target incident to the deleted node is located by its surviving
    endpoint.  ``target`` is a vertex id or an (a, b) pair.
    """
    v, u = end
    if not d.is_node(v):
        raise InputError(f"edge end must sit at a node, got {v!r}")
    if not d.has_edge(v, u):
        raise InputError(f"no edge {v!r}-{u!r}")
    if isinstance(target, tuple):
        a, b = target
        if not d.has_edge(a, b):
            raise InputError(f"no edge {a!r}-{b!r}")
        probe = b if a == v else a
    else:
        if target == v:
            raise InputError("target equals the end's own vertex")
        d._require(target)
        probe = target
    return probe in d.component_beyond(v, u)


def weight_toward(d, v_prime, v):
    """The unique edge end at node v_prime seeing v, and its weight."""
    if v_prime == v:
        raise InputError("weight_toward: vertices must differ")
    if not d.is_node(v_prime):
        raise InputError(f"{v_prime!r} is not a node")
    d._require(v)
    for u in d.neighbors(v_prime):
        if v == u or v in d.component_beyond(v_prime, u):
            return EdgeEnd(v_prime, u), d.weight_at(v_prime, u)
    raise AssertionError("tree connectivity guarantees a seeing end")


def linking(d, v, w, primed=False):
    """Product of the edge weights adjacent to (never on) the v-w path.

    A weight qualifies when it sits at a path vertex on an edge that is not
    itself a path edge.  The primed variant drops the weights sitting at v
    and at w.  Empty products are 1.
    """
    if v == w:
        raise InputError("linking: vertices must differ")
    if not d.node_ids():
        raise InputError("degenerate diagram carries no weights")
    path = d.path(v, w)
    factors = []
    for i, x in enumerate(path):
        if not d.is_node(x):
            continue
        if primed and (x == v or x == w):
            continue
        path_nbrs = set()
        if i > 0:
            path_nbrs.add(path[i - 1])
        if i + 1 < len(path):
            path_nbrs.add(path[i + 1])
        for u in d.neighbors(x):
            if u not in path_nbrs:
                factors.append(d.weight_at(x, u))
    return prod(factors)
