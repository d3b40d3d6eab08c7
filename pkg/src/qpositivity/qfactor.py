"""q-integers, q-factorials, Gaussian polynomials and factorial-ratio polynomials.

A factorial ratio is named by a pair of positive-integer tuples (a, b): the
numerator carries the factorials of the a-entries, the denominator those of
the b-entries.  Its q-analogue replaces every factorial by a q-factorial; the
result, when it is a polynomial at all, factors over the integers as a product
of cyclotomic polynomials Phi_ell with exponents given by a floor sum.

Two independent routes compute the same polynomial and act as oracles for one
another:

* ``d_polynomial``      — product of cyclotomic powers (the fast path);
* ``d_polynomial_naive``— multiply the numerator q-factorials, then exactly
                          divide by each denominator q-factorial in turn.

``classical_ratio`` is the q=1 shadow, assembled from prime valuations of the
ordinary factorials, again independently of both polynomial routes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDivisible, NotPolynomial
from .polyring import IntPoly, cyclotomic


@dataclass(frozen=True)
class TupleSpec:
    """A pair of positive-integer tuples naming a factorial ratio.

    Both sides must be nonempty; a ratio with an empty denominator is written
    with b = (1,) since [1]! = 1.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if not self.a or not self.b:
            raise ValueError("both tuple sides must be nonempty")
        if any(x < 1 for x in self.a) or any(x < 1 for x in self.b):
            raise ValueError("tuple entries must be positive integers")

    def scaled(self, n: int) -> TupleSpec:
        """The tuple with every entry multiplied by n."""
        if n < 1:
            raise ValueError("scale must be >= 1")
        return TupleSpec(tuple(x * n for x in self.a), tuple(x * n for x in self.b))

    @property
    def sum_a(self) -> int:
        return sum(self.a)

    @property
    def sum_b(self) -> int:
        return sum(self.b)

    @property
    def max_entry(self) -> int:
        return max(max(self.a), max(self.b))


@dataclass(frozen=True)
class CycloExponents:
    """Exponent of Phi_ell in a factorial ratio, for every ell with a nonzero one.

    Indices ell run over 2..max_ell; anything above max_ell (the largest tuple
    entry) is zero and is not stored, and neither are interior zeros.
    """

    exponents: dict[int, int]
    max_ell: int

    def smallest_negative(self) -> int | None:
        neg = [ell for ell, e in self.exponents.items() if e < 0]
        return min(neg) if neg else None


def q_integer(n: int) -> IntPoly:
    """The q-analogue of n: 1 + q + ... + q**(n-1).  Requires n >= 1."""
    if n < 1:
        raise ValueError("q_integer is defined for n >= 1")
    return IntPoly((1,) * n)


_QFACT: dict[int, IntPoly] = {0: IntPoly.one()}


def q_factorial(n: int) -> IntPoly:
    """The q-factorial: product of q_integer(i) for i = 1..n (1 for n = 0).

    Degree is n(n-1)/2.  Memoized; values are immutable and shared.
    """
    if n < 0:
        raise ValueError("q_factorial is defined for n >= 0")
    top = len(_QFACT) - 1  # keys are always contiguous 0..top
    if n <= top:
        return _QFACT[n]
    poly = _QFACT[top]
    for i in range(top + 1, n + 1):
        poly = poly * q_integer(i)
        _QFACT[i] = poly
    return poly


_QBINOM: dict[tuple[int, int], IntPoly] = {}


def q_binomial(n: int, m: int) -> IntPoly:
    """The Gaussian polynomial, by the q-Pascal recurrence.

    [n, m] = [n-1, m-1] + q**m * [n-1, m], with [n, 0] = [n, n] = 1.
    Returns the zero polynomial when m < 0 or m > n.  Memoized on (n, m); the
    work list below replaces recursion so deep triangles cannot overflow the
    interpreter stack.
    """
    if n < 0:
        raise ValueError("q_binomial upper index must be >= 0")
    if m < 0 or m > n:
        return IntPoly.zero()
    memo = _QBINOM
    top = (n, m)
    if top in memo:
        return memo[top]
    stack = [top]
    while stack:
        nn, mm = stack[-1]
        if (nn, mm) in memo:
            stack.pop()
            continue
        if mm == 0 or mm == nn:
            memo[(nn, mm)] = IntPoly.one()
            stack.pop()
            continue
        left = (nn - 1, mm - 1)
        right = (nn - 1, mm)
        missing = [k for k in (left, right) if k not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo[(nn, mm)] = memo[left] + memo[right].shifted(mm)
        stack.pop()
    return memo[top]


def ratio_exponents(t: TupleSpec) -> CycloExponents:
    """Cyclotomic exponents of the ratio: e_ell = sum(a_i//ell) - sum(b_j//ell)."""
    mx = t.max_entry
    exps: dict[int, int] = {}
    a, b = t.a, t.b
    for ell in range(2, mx + 1):
        e = sum(x // ell for x in a) - sum(x // ell for x in b)
        if e:
            exps[ell] = e
    return CycloExponents(exps, mx)


def d_polynomial(t: TupleSpec) -> IntPoly:
    """The ratio as a polynomial, via its cyclotomic factorization.

    Raises NotPolynomial (carrying the smallest offending ell) when some
    cyclotomic exponent is negative.
    """
    ce = ratio_exponents(t)
    bad = ce.smallest_negative()
    if bad is not None:
        raise NotPolynomial(
            f"ratio {t.a}/{t.b} is not a polynomial: exponent of Phi_{bad} is "
            f"{ce.exponents[bad]}",
            ell=bad,
        )
    factors = [cyclotomic(ell) ** e for ell, e in sorted(ce.exponents.items())]
    total_degree = sum(len(f) - 1 for f in factors)
    if total_degree <= 2048:
        # multiply in increasing ell
        poly = IntPoly.one()
        for f in factors:
            poly = poly * f
        return poly
    return _balanced_product(factors)


def _balanced_product(factors: list[IntPoly]) -> IntPoly:
    """Product of many polynomials, smallest pairs first (near-balanced tree)."""
    if not factors:
        return IntPoly.one()
    heap = [(len(f), i, f) for i, f in enumerate(factors)]
    heapq.heapify(heap)
    counter = len(factors)
    while len(heap) > 1:
        _, _, x = heapq.heappop(heap)
        _, _, y = heapq.heappop(heap)
        p = x * y
        heapq.heappush(heap, (len(p), counter, p))
        counter += 1
    return heap[0][2]


def d_polynomial_naive(t: TupleSpec) -> IntPoly:
    """Oracle route: multiply numerator q-factorials, divide denominator ones in turn.

    Raises NotPolynomial as soon as an exact division fails; this is how a
    non-polynomial ratio announces itself on this route.
    """
    poly = IntPoly.one()
    for x in t.a:
        poly = poly * q_factorial(x)
    for x in t.b:
        try:
            poly = poly.divide_exact(q_factorial(x))
        except NotDivisible as exc:
            raise NotPolynomial(
                f"ratio {t.a}/{t.b} is not a polynomial: division by [{x}]! fails"
            ) from exc
    return poly


def _primes_upto(n: int) -> list[int]:
    """Simple sieve up to n inclusive."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : n + 1 : p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def _factorial_valuation(n: int, p: int) -> int:
    """Order of the prime p in n!: floor(n/p) + floor(n/p^2) + ..."""
    total = 0
    pk = p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


def classical_ratio(t: TupleSpec) -> Fraction:
    """The ordinary factorial ratio as an exact rational in lowest terms.

    Assembled prime by prime from factorial valuations, so non-integral ratios
    come back as honest fractions rather than errors; the result is an integer
    exactly when every prime valuation is >= 0.
    """
    num = 1
    den = 1
    for p in _primes_upto(t.max_entry):
        v = sum(_factorial_valuation(x, p) for x in t.a) - sum(
            _factorial_valuation(x, p) for x in t.b
        )
        if v > 0:
            num *= p**v
        elif v < 0:
            den *= p**-v
    return Fraction(num, den)


def d_n_sweep(t: TupleSpec, n_max: int) -> list[IntPoly]:
    """The scaled ratio polynomial for every n = 1..n_max.

    The caller is expected to have checked the integrality criterion; if it
    does not hold, the n at which a cyclotomic exponent first goes negative
    raises NotPolynomial carrying that n.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        try:
            out.append(d_polynomial(t.scaled(n)))
        except NotPolynomial as exc:
            raise NotPolynomial(f"at n={n}: {exc}", ell=exc.ell, n=n) from None
    return out
