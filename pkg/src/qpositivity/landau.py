"""Exact decision of the floor-sum integrality criterion, plus tuple utilities.

For a tuple pair (a, b) define f(x) = sum(floor(a_i*x)) - sum(floor(b_j*x)).
The criterion holds when f(x) >= 0 for all real x >= 0; it is necessary and
sufficient for every scaled factorial ratio to be an integer.  f is piecewise
constant and right-continuous, jumping only at rationals k/d where d is a
tuple entry, and f(x+1) = f(x) + (sum(a) - sum(b)).  So:

* if sum(a) < sum(b), f eventually goes negative — report a witness;
* otherwise the minimum over x >= 0 is the minimum over the breakpoints in
  [0, 1), evaluated in exact rational arithmetic (floats never enter).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import Degenerate
from .qfactor import TupleSpec


@dataclass(frozen=True)
class LandauVerdict:
    """Outcome of the criterion check.

    `witness` is a rational point (lowest terms) where the floor sum is
    negative, present exactly when the criterion fails; `min_value` is the
    minimum of the floor sum over the checked points (the breakpoints of one
    period, extended by the shifted witness for sum-deficient tuples).
    """

    holds: bool
    witness: Fraction | None
    min_value: int


@dataclass(frozen=True)
class CanonicalTuple:
    """A tuple pair after cancellation and sorting, with its primitivity flag."""

    spec: TupleSpec
    primitive: bool


def floor_sum(t: TupleSpec, x: Fraction) -> int:
    """f(x) = sum(floor(a_i*x)) - sum(floor(b_j*x)), exactly."""
    num, den = x.numerator, x.denominator
    return sum(ai * num // den for ai in t.a) - sum(bj * num // den for bj in t.b)


def landau_check(t: TupleSpec) -> LandauVerdict:
    """Decide the criterion exactly via breakpoint evaluation on [0, 1).

    The breakpoints are all k/d for d a tuple entry and 0 <= k < d; f is
    evaluated AT each breakpoint (right-continuous convention), which attains
    the infimum over the period.  Sum-deficient tuples get a witness beyond
    the first period by shifting the period minimizer.
    """
    points = {Fraction(k, d) for d in (*t.a, *t.b) for k in range(d)}
    min_value = 0
    min_point = Fraction(0)
    for x in sorted(points):
        v = floor_sum(t, x)
        if v < min_value:
            min_value = v
            min_point = x
    if min_value < 0:
        return LandauVerdict(holds=False, witness=min_point, min_value=min_value)
    drop = t.sum_b - t.sum_a
    if drop <= 0:
        return LandauVerdict(holds=True, witness=None, min_value=min_value)
    # f(k + x) = f(x) - k*drop: shift the period minimizer until negative.
    shifts = min_value // drop + 1
    witness = min_point + shifts
    value = min_value - shifts * drop
    return LandauVerdict(holds=False, witness=witness, min_value=value)


def canonicalize(t: TupleSpec) -> CanonicalTuple:
    """Cancel entries common to both sides, sort descending, record primitivity.

    Cancellation removes matched pairs, which leaves the floor sum f (and so
    the criterion verdict, and every scaled ratio) pointwise unchanged.  When
    removing the last pair would empty one side, that pair is kept instead:
    padding an emptied side with a fresh entry would alter f by a floor term.
    Both sides cancelling completely means a = b as multisets, so the whole
    scaled family is identically 1; that raises Degenerate carrying the
    conventional (1,),(1,) representation.
    """
    ca, cb = Counter(t.a), Counter(t.b)
    common = ca & cb
    a = sorted((ca - common).elements(), reverse=True)
    b = sorted((cb - common).elements(), reverse=True)
    if not a and not b:
        raise Degenerate(
            "both sides cancel: every scaled ratio is 1",
            canonical=TupleSpec((1,), (1,)),
        )
    if not a or not b:
        keep = min(common.elements())
        a.append(keep)
        b.append(keep)
        a.sort(reverse=True)
        b.sort(reverse=True)
    spec = TupleSpec(tuple(a), tuple(b))
    return CanonicalTuple(spec, primitive=gcd(*spec.a, *spec.b) == 1)


def _descending_tuples(size: int, total: int, cap: int | None = None):
    """All weakly-decreasing positive tuples of the given size and exact sum."""
    if cap is None:
        cap = total
    if size == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    for first in range(min(cap, total - size + 1), 0, -1):
        for rest in _descending_tuples(size - 1, total - first, first):
            yield (first, *rest)


def enumerate_tuples(
    r: int,
    s: int,
    sum_bound: int,
    balanced_only: bool,
    primitive_only: bool = True,
) -> list[TupleSpec]:
    """All canonical criterion-satisfying tuple pairs with |a| = r, |b| = s.

    Canonical means: both sides weakly decreasing and no entry common to both.
    Candidates range over sum(a) <= sum_bound, with sum(b) = sum(a) when
    balanced_only (never above sum(a): a sum-deficient numerator always fails
    the criterion).  Imprimitive pairs (gcd of all entries > 1) are scale-ups
    of primitive ones and are filtered out unless primitive_only is False.
    Output is deduplicated and in lexicographic order.
    """
    if r < 1 or s < 1:
        raise ValueError("tuple sizes must be >= 1")
    if sum_bound < 2:
        raise ValueError("sum_bound must be >= 2")
    found = set()
    for total_a in range(r, sum_bound + 1):
        for a in _descending_tuples(r, total_a):
            b_sums = (total_a,) if balanced_only else range(s, total_a + 1)
            for total_b in b_sums:
                if total_b < s:
                    continue
                for b in _descending_tuples(s, total_b):
                    if set(a) & set(b):
                        continue
                    if primitive_only and gcd(*a, *b) != 1:
                        continue
                    t = TupleSpec(a, b)
                    if landau_check(t).holds:
                        found.add(t)
    return sorted(found, key=lambda t: (t.a, t.b))
