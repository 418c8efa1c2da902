"""Plumbing graphs: intersection matrices, |H1|, and splice conversion.

A plumbing graph here is a finite graph of vertices weighted by an euler
number and a genus.  A plumbed 3-manifold is a rational homology sphere
exactly when the graph is a tree of spheres (genus 0 everywhere) with
nondegenerate intersection form, and in that case |H1| is the absolute
value of the intersection determinant.

Splice conversion: branch vertices (valence >= 3) become nodes, maximal
chains become edges, and the weight at a node end is |det| of the
intersection matrix of the subtree cut off in that direction.  The sign at
a node is the sign of -(A^-1)_vv, the self-linking of a nonsingular fiber
in the linking form of the plumbed manifold.

File grammar (UTF-8, line based, ``#`` comments):

    plumbing
    vertex <id> <euler> [<genus>]
    edge <idA> <idB>
"""

import random
from dataclasses import dataclass

from .diagram import SpliceDiagram
from .errors import InputError, ParseError
from .exact import exact_determinant, is_negative_definite


@dataclass(frozen=True)
class PlumbingVertex:
    id: str
    euler: int
    genus: int = 0


class PlumbingGraph:
    def __init__(self, vertices, edges):
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate plumbing vertex id")
        self._index = {v.id: i for i, v in enumerate(self.vertices)}
        adj = {v.id: set() for v in self.vertices}
        canonical = set()
        for a, b in edges:
            if a not in adj or b not in adj:
                raise InputError(f"edge references unknown vertex {a!r} or {b!r}")
            if a == b:
                raise InputError(f"self-loop at {a!r}")
            pair = (min(a, b), max(a, b))
            if pair in canonical:
                raise InputError(f"duplicate edge {a!r}-{b!r}")
            canonical.add(pair)
            adj[a].add(b)
            adj[b].add(a)
        self.edges = tuple(sorted(canonical))
        self._adj = {v: sorted(nbrs) for v, nbrs in adj.items()}

    def ids(self):
        return [v.id for v in self.vertices]

    def vertex(self, vid):
        return self.vertices[self._index[vid]]

    def neighbors(self, vid):
        return self._adj[vid]

    def is_tree(self):
        n = len(self.vertices)
        if n == 0:
            return True
        if len(self.edges) != n - 1:
            return False
        seen = set()
        stack = [self.vertices[0].id]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(self._adj[v])
        return len(seen) == n

    def __eq__(self, other):
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges


def parse_plumbing(text):
    """Parse plumbing-file text into a PlumbingGraph."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped.split()))
    if not lines or lines[0][1] != ["plumbing"]:
        line = lines[0][0] if lines else 1
        raise ParseError("expected 'plumbing' header", line=line)
    vertices = []
    edges = []
    for number, tokens in lines[1:]:
        keyword = tokens[0]
        if keyword == "vertex":
            if len(tokens) not in (3, 4):
                raise ParseError("expected 'vertex <id> <euler> [<genus>]'", line=number)
            try:
                euler = int(tokens[2])
                genus = int(tokens[3]) if len(tokens) == 4 else 0
            except ValueError:
                raise ParseError("euler and genus must be integers", line=number) from None
            if genus < 0:
                raise ParseError("genus must be nonnegative", line=number)
            vertices.append(PlumbingVertex(tokens[1], euler, genus))
        elif keyword == "edge":
            if len(tokens) != 3:
                raise ParseError("expected 'edge <idA> <idB>'", line=number)
            edges.append((tokens[1], tokens[2]))
        else:
            raise ParseError(f"unknown directive {keyword!r}", line=number)
    try:
        return PlumbingGraph(vertices, edges)
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def render_plumbing(p):
    out = ["plumbing"]
    for v in p.vertices:
        if v.genus:
            out.append(f"vertex {v.id} {v.euler} {v.genus}")
        else:
            out.append(f"vertex {v.id} {v.euler}")
    for a, b in p.edges:
        out.append(f"edge {a} {b}")
    return "\n".join(out) + "\n"


def intersection_matrix(p):
    """Symmetric integer matrix: euler weights on the diagonal, 1 per edge.

    Rows and columns follow the sorted vertex-id order of ``p.ids()``.
    """
    ids = p.ids()
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    m = [[0] * n for _ in range(n)]
    for i, vid in enumerate(ids):
        m[i][i] = p.vertex(vid).euler
    for a, b in p.edges:
        m[index[a]][index[b]] = 1
        m[index[b]][index[a]] = 1
    return m


def h1_order(p):
    """|H1| of the plumbed manifold of a tree of spheres; 0 means infinite."""
    if not p.is_tree():
        raise InputError("h1_order needs a tree plumbing graph")
    if any(v.genus != 0 for v in p.vertices):
        raise InputError("h1_order needs genus 0 at every vertex")
    det = exact_determinant(intersection_matrix(p))
    return abs(int(det))


def plumbing_is_qhs(p):
    """Tree of spheres with nondegenerate intersection form."""
    if not p.is_tree():
        return False
    if any(v.genus != 0 for v in p.vertices):
        return False
    return exact_determinant(intersection_matrix(p)) != 0


def _subtree_determinant(p, exclude, start):
    """det of the intersection form of the component of start in p - exclude."""
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in p.neighbors(v):
            if u != exclude and u not in seen:
                seen.add(u)
                stack.append(u)
    ids = sorted(seen)
    index = {v: i for i, v in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for i, vid in enumerate(ids):
        m[i][i] = p.vertex(vid).euler
    for a, b in p.edges:
        if a in index and b in index:
            m[index[a]][index[b]] = 1
            m[index[b]][index[a]] = 1
    return int(exact_determinant(m))


def plumbing_to_splice(p):
    """Splice diagram of a plumbed rational homology sphere.

    Branch vertices become nodes; each maximal chain off a branch vertex
    becomes a single splice edge ending either at another node or at a leaf
    named after the chain's terminal vertex.  With no branch vertex at all
    the manifold is a lens space (or S^3) and the degenerate two-leaf
    diagram is returned.
    """
    if not plumbing_is_qhs(p):
        raise InputError("plumbing graph is not a rational homology sphere")
    branch = [v for v in p.ids() if len(p.neighbors(v)) >= 3]
    if not branch:
        return SpliceDiagram.from_parts({}, ["l0", "l1"], [("l0", "l1", None, None)])

    det_full = int(exact_determinant(intersection_matrix(p)))
    nodes = {}
    for v in branch:
        minor = 1
        for u in p.neighbors(v):
            minor *= _subtree_determinant(p, v, u)
        # sign of -(A^-1)_vv = sign of -minor/det
        value = -minor * det_full
        if value == 0:
            raise InputError(f"node sign undetermined at {v!r} (zero linking)")
        nodes[v] = 1 if value > 0 else -1

    leaves = []
    splice_edges = []
    seen_pairs = set()
    for v in branch:
        for u in p.neighbors(v):
            weight_v = abs(_subtree_determinant(p, v, u))
            prev, cur = v, u
            while len(p.neighbors(cur)) == 2:
                nxt = [x for x in p.neighbors(cur) if x != prev][0]
                prev, cur = cur, nxt
            if len(p.neighbors(cur)) == 1:
                leaves.append(cur)
                splice_edges.append((v, cur, weight_v, None))
            else:
                pair = (min(v, cur), max(v, cur))
                if pair in seen_pairs:
                    continue
                seen_pairs.add(pair)
                weight_cur = abs(_subtree_determinant(p, cur, prev))
                splice_edges.append((v, cur, weight_v, weight_cur))
    return SpliceDiagram.from_parts(nodes, leaves, splice_edges)


def random_plumbing(seed, max_vertices, _max_attempts=100000):
    """Deterministic-from-seed random negative-definite tree of spheres.

    Euler weights are drawn from [-9, -1]; samples are rejected until the
    intersection form is negative definite, which guarantees the manifold
    is a rational homology sphere and a singularity link.
    """
    if max_vertices < 1:
        raise InputError("max_vertices must be >= 1")
    rng = random.Random(seed)
    for _ in range(_max_attempts):
        n = rng.randint(1, max_vertices)
        vertices = [PlumbingVertex(f"p{i}", rng.randint(-9, -1)) for i in range(n)]
        edges = [(f"p{rng.randrange(i)}", f"p{i}") for i in range(1, n)]
        p = PlumbingGraph(vertices, edges)
        if is_negative_definite(intersection_matrix(p)):
            return p
    raise RuntimeError("random_plumbing: no negative-definite sample found")
