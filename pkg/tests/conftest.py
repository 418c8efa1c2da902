"""Shared fixtures: worked diagrams, oracles, and seeded diagram generators."""

import random
from fractions import Fraction
from math import gcd

import pytest

from splicekit.diagram import SpliceDiagram, parse_diagram
from splicekit.invariants import check_ideal_condition, ideal_generator
from splicekit.diagram import EdgeEnd

# Three-node worked example: nodes v0(+), v1(-), v2(+); leaves 3,5 at v0,
# 7 at v1, 3,2 at v2; inter-node weight pairs (22,10) and (2,6).
THREE_NODE_TEXT = """\
splice
node v0 +
node v1 -
node v2 +
leaf a3
leaf a5
leaf b7
leaf c3
leaf c2
edge v0 a3 3
edge v0 a5 5
edge v0 v1 22 10
edge v1 b7 7
edge v1 v2 2 6
edge v2 c3 3
edge v2 c2 2
"""

# Two-node example with one nontrivial generator: A(+; leaves 4,2; 7 toward
# B) -- B(+; leaves 3,5; 2 toward A).  Generator 2 at B's end, 1 at A's.
TWO_NODE_TEXT = """\
splice
node A +
node B +
leaf x4
leaf x2
leaf y3
leaf y5
edge A x4 4
edge A x2 2
edge A B 7 2
edge B y3 3
edge B y5 5
"""

ONE_NODE_235_TEXT = """\
splice
node n +
leaf a
leaf b
leaf c
edge n a 2
edge n b 3
edge n c 5
"""


@pytest.fixture
def three_node():
    return parse_diagram(THREE_NODE_TEXT)


@pytest.fixture
def two_node():
    return parse_diagram(TWO_NODE_TEXT)


@pytest.fixture
def one_node_235():
    return parse_diagram(ONE_NODE_235_TEXT)


def cofactor_determinant(m):
    """Independent determinant oracle: Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * Fraction(m[0][j]) * cofactor_determinant(minor)
    return total


def one_node_diagram(weights, sign=1):
    """Star diagram: one node with the given leaf weights."""
    leaves = [f"l{i}" for i in range(len(weights))]
    edges = [("n", leaf, w, None) for leaf, w in zip(leaves, weights)]
    return SpliceDiagram.from_parts({"n": sign}, leaves, edges)


def two_node_diagram(leaves_a, r_a, r_b, leaves_b, sign_a=1, sign_b=1):
    """Two nodes A-B with the given leaf weights and facing weights."""
    nodes = {"A": sign_a, "B": sign_b}
    leaves = [f"a{i}" for i in range(len(leaves_a))] + [f"b{i}" for i in range(len(leaves_b))]
    edges = [(f"a{i}", "A", None, w) for i, w in enumerate(leaves_a)]
    edges += [(f"b{i}", "B", None, w) for i, w in enumerate(leaves_b)]
    edges.append(("A", "B", r_a, r_b))
    return SpliceDiagram.from_parts(nodes, leaves, edges)


_COPRIME_POOL = [2, 3, 5, 7, 11, 13, 4, 9, 25, 49, 8, 27, 17, 19, 23]


def coprime_weights(rng, count):
    """Random pairwise-coprime weights drawn from a prime-power pool."""
    picks = []
    pool = _COPRIME_POOL[:]
    rng.shuffle(pool)
    for candidate in pool:
        if all(gcd(candidate, p) == 1 for p in picks):
            picks.append(candidate)
            if len(picks) == count:
                return picks
    raise AssertionError("pool exhausted")


def random_splice_diagram(rng, max_nodes=4, max_weight=12):
    """Random valid splice diagram with positive weights (no other constraints)."""
    n_nodes = rng.randint(1, max_nodes)
    nodes = {f"n{i}": rng.choice([1, -1]) for i in range(n_nodes)}
    node_ids = list(nodes)
    tree_edges = [(node_ids[rng.randrange(i)], node_ids[i]) for i in range(1, n_nodes)]
    degree = {v: 0 for v in node_ids}
    for a, b in tree_edges:
        degree[a] += 1
        degree[b] += 1
    leaves = []
    edges = [(a, b, rng.randint(1, max_weight), rng.randint(1, max_weight)) for a, b in tree_edges]
    for v in node_ids:
        wanted = max(3 - degree[v], 0) + rng.randint(0, 2)
        for _ in range(wanted):
            leaf = f"{v}_l{len(leaves)}"
            leaves.append(leaf)
            edges.append((v, leaf, rng.randint(1, max_weight), None))
    return SpliceDiagram.from_parts(nodes, leaves, edges)


def _force_ideal_condition(d, rounds=12):
    """Scale inter-node weights until every generator divides its weight."""
    for _ in range(rounds):
        report = check_ideal_condition(d)
        if report.holds:
            return d
        nodes = {v: d.sign(v) for v in d.node_ids()}
        leaves = d.leaf_ids()
        bump = {(end.vertex, end.other): g // gcd(g, w) if g else 1
                for end, g, w in report.violations}
        edges = []
        for a, b in d.edges():
            wa = d.weight_at(a, b) * bump.get((a, b), 1) if d.is_node(a) else None
            wb = d.weight_at(b, a) * bump.get((b, a), 1) if d.is_node(b) else None
            edges.append((a, b, wa, wb))
        d = SpliceDiagram.from_parts(nodes, leaves, edges)
    return None


def seeded_ideal_condition_diagrams(count, require_nontrivial_generator=True, start_seed=0):
    """Deterministic stream of valid ideal-condition diagrams.

    Each diagram plants a non-coprime leaf pair at one node so that some
    ideal generator exceeds 1 (when required).  Candidates that the weight
    fixer cannot settle are skipped, so the output is reproducible.
    """
    out = []
    seed = start_seed
    while len(out) < count:
        rng = random.Random(seed)
        seed += 1
        n_nodes = rng.randint(2, 3)
        nodes = {f"n{i}": rng.choice([1, -1]) for i in range(n_nodes)}
        node_ids = list(nodes)
        tree_edges = [(node_ids[rng.randrange(i)], node_ids[i]) for i in range(1, n_nodes)]
        degree = {v: len([e for e in tree_edges if v in e]) for v in node_ids}
        leaves, edges = [], []
        planted = rng.choice(node_ids)
        for v in node_ids:
            n_leaves = max(3 - degree[v], 2)
            if v == planted:
                common = rng.choice([2, 2, 3])
                ws = [common * rng.randint(1, 3), common * rng.randint(1, 3)]
                ws += [rng.randint(1, 9) for _ in range(n_leaves - 2)]
            else:
                ws = [rng.randint(1, 9) for _ in range(n_leaves)]
            for w in ws:
                leaf = f"{v}_l{len(leaves)}"
                leaves.append(leaf)
                edges.append((v, leaf, w, None))
        for a, b in tree_edges:
            edges.append((a, b, rng.randint(1, 9), rng.randint(1, 9)))
        try:
            d = SpliceDiagram.from_parts(nodes, leaves, edges)
        except Exception:
            continue
        d = _force_ideal_condition(d)
        if d is None:
            continue
        if require_nontrivial_generator:
            gens = [
                ideal_generator(d, EdgeEnd(v, u))
                for v in d.node_ids()
                for u in d.neighbors(v)
            ]
            if max(gens) <= 1:
                continue
        out.append(d)
    return out
