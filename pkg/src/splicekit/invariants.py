"""Edge determinants, ideal generators, and the divisibility reports.

The edge determinant of an edge between nodes v0, v1 carrying weights
r0, r1 (and signs eps0, eps1) is

    D(e) = r0*r1 - eps0*eps1 * (product of other weights at v0)
                             * (product of other weights at v1).

The ideal generator dbar(v, e) is the positive gcd of the primed linking
numbers from v to the leaves of the component of the diagram minus e that
does not contain v.  A diagram satisfies the *ideal condition* when every
generator divides the weight sitting at its own end; diagrams of actual
graph manifolds always do.
"""

from dataclasses import dataclass, field
from math import gcd, prod

from .diagram import EdgeEnd, linking, sees, weight_toward
from .errors import InputError
from .exact import divides, gcd_list


def edge_determinant(d, a, b):
    """Exact edge determinant of the edge between nodes a and b."""
    if not d.has_edge(a, b):
        raise InputError(f"no edge {a!r}-{b!r}")
    if not (d.is_node(a) and d.is_node(b)):
        raise InputError(f"edge {a!r}-{b!r} is not between two nodes")
    r0 = d.weight_at(a, b)
    r1 = d.weight_at(b, a)
    others0 = prod(d.weight_at(a, u) for u in d.neighbors(a) if u != b)
    others1 = prod(d.weight_at(b, u) for u in d.neighbors(b) if u != a)
    return r0 * r1 - d.sign(a) * d.sign(b) * others0 * others1


def ideal_generator(d, end):
    """gcd of primed linking numbers to the leaves beyond the end's edge.

    A far component consisting of a single leaf contributes the empty
    product, so generators at leaf edges are always 1.  The result is 0
    only in the degenerate situation where every linking product vanishes
    (possible only with zero weights around).
    """
    v, u = end
    if not d.is_node(v):
        raise InputError(f"edge end must sit at a node, got {v!r}")
    if not d.has_edge(v, u):
        raise InputError(f"no edge {v!r}-{u!r}")
    far_leaves = d.leaves_beyond(v, u)
    if far_leaves == [u]:
        return 1
    return gcd_list(linking(d, v, w, primed=True) for w in far_leaves)


@dataclass
class IdealConditionReport:
    holds: bool
    violations: list = field(default_factory=list)  # (EdgeEnd, generator, weight)


def check_ideal_condition(d):
    """Check dbar(v, e) | weight(v, e) at every node-edge end."""
    violations = []
    for v in d.node_ids():
        for u in d.neighbors(v):
            end = EdgeEnd(v, u)
            g = ideal_generator(d, end)
            w = d.weight_at(v, u)
            if not divides(g, w):
                violations.append((end, g, w))
    return IdealConditionReport(holds=not violations, violations=violations)


def is_singularity_link(d):
    """All node signs + and every inter-node edge determinant positive."""
    if any(d.sign(v) != 1 for v in d.node_ids()):
        return False
    return all(edge_determinant(d, a, b) > 0 for a, b in d.internode_edges())


@dataclass
class DivisibilityFailure:
    end: EdgeEnd          # the end whose generator/weight should be divisible
    seen_node: str
    divisor: int
    dividend: int
    kind: str             # "generator-by-generator", "generator-by-pair-gcd",
                          # "weight-by-generator", "weight-by-pair-gcd"


@dataclass
class SeenDivisibilityReport:
    holds: bool
    ideal_condition_holds: bool
    checked: int
    failures: list = field(default_factory=list)


def verify_seen_divisibility(d):
    """Verify the divisibility chain between generators, weights, and gcds.

    For every node-edge end (v, e): every ideal generator seen by the end
    divides dbar(v, e), and for every seen node v' the gcd of any two
    weights at v' on distinct edges away from v divides dbar(v, e).  The
    same divisibilities for the edge weight at (v, e) are asserted only
    when the diagram satisfies the ideal condition.
    """
    ideal_holds = check_ideal_condition(d).holds
    failures = []
    checked = 0

    for v in d.node_ids():
        for u in d.neighbors(v):
            end = EdgeEnd(v, u)
            g = ideal_generator(d, end)
            r = d.weight_at(v, u)
            for v2 in d.node_ids():
                if v2 == v or not sees(d, end, v2):
                    continue
                facing_end, _ = weight_toward(d, v2, v)
                away = [x for x in d.neighbors(v2) if x != facing_end.other]
                for x in away:
                    g2 = ideal_generator(d, EdgeEnd(v2, x))
                    checked += 1
                    if not divides(g2, g):
                        failures.append(DivisibilityFailure(end, v2, g2, g, "generator-by-generator"))
                    if ideal_holds:
                        checked += 1
                        if not divides(g2, r):
                            failures.append(DivisibilityFailure(end, v2, g2, r, "weight-by-generator"))
                for i, x in enumerate(away):
                    for y in away[i + 1:]:
                        c = gcd(d.weight_at(v2, x), d.weight_at(v2, y))
                        checked += 1
                        if not divides(c, g):
                            failures.append(DivisibilityFailure(end, v2, c, g, "generator-by-pair-gcd"))
                        if ideal_holds:
                            checked += 1
                            if not divides(c, r):
                                failures.append(DivisibilityFailure(end, v2, c, r, "weight-by-pair-gcd"))

    return SeenDivisibilityReport(
        holds=not failures,
        ideal_condition_holds=ideal_holds,
        checked=checked,
        failures=failures,
    )
