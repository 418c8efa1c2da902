"""Rational-homology-sphere test for Brieskorn complete intersection links.

A link Sigma(a1, ..., an) is a rational homology sphere exactly when its
base orbifold has genus 0, which happens in three mutually exclusive
situations: all exponents pairwise coprime, exactly one non-coprime pair,
or exactly one triple whose three pairwise gcds all equal 2 with every
other pair coprime.  The genus-0 test itself is the vanishing of

    2 + (n-2) * prod(a)/lcm(a) - sum_i prod(a_j, j!=i)/lcm(a_j, j!=i),

an exact integer.  ``rhs_equivalence_scan`` checks the two criteria agree
on a whole box of tuples, which is how the classification is validated.
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd, prod

from .errors import InputError
from .exact import lcm_list

CONDITION1 = "condition1"
CONDITION2 = "condition2"
CONDITION3 = "condition3"
NOT_RHS = "not_rhs"


@dataclass(frozen=True)
class BrieskornTuple:
    """Multiset of n >= 3 positive exponents, stored sorted."""

    alphas: tuple

    def __init__(self, alphas):
        alphas = tuple(sorted(alphas))
        if len(alphas) < 3:
            raise InputError(f"need at least 3 exponents, got {len(alphas)}")
        for a in alphas:
            if not isinstance(a, int) or a < 1:
                raise InputError(f"exponents must be positive integers, got {a!r}")
        object.__setattr__(self, "alphas", alphas)

    def __iter__(self):
        return iter(self.alphas)

    def __len__(self):
        return len(self.alphas)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.alphas) + ")"


def _as_alphas(t):
    if isinstance(t, BrieskornTuple):
        return t.alphas
    return BrieskornTuple(t).alphas


def genus_indicator(t):
    """Exact integer that vanishes iff the base orbifold genus is 0."""
    alphas = _as_alphas(t)
    n = len(alphas)
    total = prod(alphas)
    a_all = total // lcm_list(alphas)
    correction = 0
    for i in range(n):
        rest = alphas[:i] + alphas[i + 1:]
        correction += prod(rest) // lcm_list(rest)
    return 2 + (n - 2) * a_all - correction


def classify_rhs(t):
    """Which of the three rational-homology-sphere conditions holds, if any.

    The conditions are checked by literal pair/triple counting; they are
    mutually exclusive, so the order of the checks does not matter.
    """
    alphas = _as_alphas(t)
    bad_pairs = [
        (i, j)
        for i, j in combinations(range(len(alphas)), 2)
        if gcd(alphas[i], alphas[j]) != 1
    ]
    if not bad_pairs:
        return CONDITION1
    if len(bad_pairs) == 1:
        return CONDITION2
    if len(bad_pairs) == 3:
        triple = set(bad_pairs[0]) | set(bad_pairs[1]) | set(bad_pairs[2])
        if len(triple) == 3 and all(
            gcd(alphas[i], alphas[j]) == 2 for i, j in bad_pairs
        ):
            return CONDITION3
    return NOT_RHS


@dataclass
class ScanReport:
    all_agree: bool
    checked: int
    counterexamples: list  # (alphas, verdict, indicator)


def rhs_equivalence_scan(max_alpha, n_range):
    """Exhaustively check classify_rhs != not_rhs  <=>  genus_indicator == 0.

    Scans every ordered tuple with entries in [1..max_alpha] for each n in
    n_range.  Bounds (n <= 6, max_alpha <= 1000) keep desk-scale runs
    desk-scale; the underlying operations themselves have no cap.
    """
    if max_alpha < 2:
        raise InputError("max_alpha must be >= 2")
    if max_alpha > 1000:
        raise InputError("scan capped at max_alpha <= 1000")
    ns = sorted(set(n_range))
    if any(n < 3 or n > 6 for n in ns):
        raise InputError("scan supports n in [3..6] only")
    counterexamples = []
    checked = 0
    for n in ns:
        for alphas in product(range(1, max_alpha + 1), repeat=n):
            checked += 1
            verdict = classify_rhs(alphas)
            indicator = genus_indicator(alphas)
            if (verdict != NOT_RHS) != (indicator == 0):
                counterexamples.append((alphas, verdict, indicator))
    return ScanReport(
        all_agree=not counterexamples,
        checked=checked,
        counterexamples=counterexamples,
    )
