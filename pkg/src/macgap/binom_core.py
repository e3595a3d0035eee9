"""Exact binomial coefficients, Macaulay representations, and index-shift operations.

Every positive integer A has a unique expansion at each level n >= 1,

    A = C(a_n, n) + C(a_{n-1}, n-1) + ... + C(a_delta, delta)

with strictly decreasing tops a_n > a_{n-1} > ... > a_delta, a_j >= j and
delta >= 1 (the classical Macaulay representation).  Three index-shift
operations act on this expansion:

    lower  A_<n>   : decrement every top index,
    minus  A^-<n>  : decrement top and level,
    upper  A^<n>   : increment top and level.

Throughout, results are read with the convention C(a, b) = 0 whenever b = 0
or a < b; the raw Pascal table (with C(a, 0) = 1) is kept internally because
the triangle cannot be built without it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_BOUND = 256


class CapacityError(Exception):
    """A binomial lookup exceeded the configured table bound."""


class BinomTable:
    """Eagerly built Pascal rectangle C(a, b) for a <= bound, b <= lower_bound.

    The table is immutable after construction, so concurrent readers need no
    locking.  ``lower_bound`` caps the second argument separately; Macaulay
    levels stay small even when values A (and hence top indices) are large,
    which keeps memory proportional to bound * lower_bound.
    """

    def __init__(self, bound: int = DEFAULT_BOUND, lower_bound: int | None = None):
        if bound < 1:
            raise ValueError("table bound must be positive")
        self.bound = bound
        self.lower_bound = bound if lower_bound is None else lower_bound
        if not 1 <= self.lower_bound <= bound:
            raise ValueError("lower_bound must lie in [1, bound]")
        width = self.lower_bound
        rows = []
        prev: list[int] = []
        for a in range(bound + 1):
            row = [1] * (min(a, width) + 1)
            for b in range(1, len(row)):
                row[b] = prev[b - 1] + (prev[b] if b < len(prev) else 0)
            rows.append(row)
            prev = row
        self._rows = rows

    def pascal(self, a: int, b: int) -> int:
        """Raw Pascal value: C(a, 0) = 1, C(a, b) = 0 for a < b."""
        if a < 0 or b < 0:
            raise ValueError("binomial arguments must be nonnegative")
        if a > self.bound or b > self.lower_bound:
            raise CapacityError(
                f"C({a},{b}) outside table bound ({self.bound},{self.lower_bound})"
            )
        if b > a:
            return 0
        return self._rows[a][b]

    def binom(self, a: int, b: int) -> int:
        """Binomial coefficient under the convention C(a,b) = 0 if b = 0 or a < b."""
        if b == 0:
            if a < 0 or a > self.bound:
                raise CapacityError(f"C({a},0) outside table bound {self.bound}")
            return 0
        return self.pascal(a, b)


_default: BinomTable | None = None


def default_table() -> BinomTable:
    """Shared table at the default bound, built once on first use."""
    global _default
    if _default is None:
        _default = BinomTable()
    return _default


def binom(a: int, b: int, table: BinomTable | None = None) -> int:
    """C(a, b) with the zero convention for b = 0 and a < b."""
    return (table or default_table()).binom(a, b)


@dataclass(frozen=True)
class MacaulayRep:
    """Macaulay representation: (top, level) pairs, level descending n..delta."""

    level: int
    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        """Re-evaluate the sum of binomials (independent of any table)."""
        return sum(math.comb(top, lev) for top, lev in self.terms)

    def __str__(self) -> str:
        return "+".join(f"C({top},{lev})" for top, lev in self.terms)


def _largest_top(rem: int, level: int, table: BinomTable) -> int:
    # Largest a with C(a, level) <= rem; C(., level) is strictly increasing
    # for a >= level, so bisection is safe.
    if level > table.lower_bound or level > table.bound:
        raise CapacityError(f"level {level} exceeds table bound")
    if table.pascal(table.bound, level) < rem:
        raise CapacityError(
            f"representation of remainder {rem} at level {level} needs tops "
            f"beyond table bound {table.bound}"
        )
    lo, hi = level, table.bound  # C(level, level) = 1 <= rem
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if table.pascal(mid, level) <= rem:
            lo = mid
        else:
            hi = mid - 1
    return lo


def macaulay_rep(A: int, n: int, table: BinomTable | None = None) -> MacaulayRep:
    """Greedy construction of the level-n Macaulay representation of A >= 1.

    At each level pick the largest top whose binomial fits the remainder;
    strict decrease of the tops is automatic.
    """
    if A < 1:
        raise ValueError("Macaulay representation is defined for positive integers")
    if n < 1:
        raise ValueError("level must be positive")
    table = table or default_table()
    terms = []
    rem = A
    level = n
    while rem > 0:
        top = _largest_top(rem, level, table)
        terms.append((top, level))
        rem -= table.pascal(top, level)
        level -= 1
    return MacaulayRep(level=n, terms=tuple(terms))


def op_lower(A: int, n: int, table: BinomTable | None = None) -> int:
    """A_<n>: decrement every top index of the level-n representation; 0 maps to 0."""
    if A == 0:
        return 0
    table = table or default_table()
    rep = macaulay_rep(A, n, table)
    return sum(table.binom(top - 1, lev) for top, lev in rep.terms)


def op_minus(A: int, n: int, table: BinomTable | None = None) -> int:
    """A^-<n>: decrement tops and levels; terms reaching level 0 vanish."""
    if A == 0:
        return 0
    table = table or default_table()
    rep = macaulay_rep(A, n, table)
    return sum(table.binom(top - 1, lev - 1) for top, lev in rep.terms)


def op_upper(A: int, n: int, table: BinomTable | None = None) -> int:
    """A^<n>: increment tops and levels; 0 maps to 0."""
    if A == 0:
        return 0
    table = table or default_table()
    rep = macaulay_rep(A, n, table)
    return sum(table.binom(top + 1, lev + 1) for top, lev in rep.terms)


@dataclass
class LemmaSweepReport:
    """Outcome of the exhaustive split-identity sweep."""

    m_max: int
    k_max: int
    checks: int
    counterexamples: list[tuple[int, int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def lemma_table(m_max: int, k_max: int) -> BinomTable:
    """Table sized so every split of C(m+k, k) - 1 can be represented."""
    top = math.comb(m_max + k_max, min(m_max, k_max))
    return BinomTable(max(top, DEFAULT_BOUND), max(m_max, k_max) + 1)


def verify_lemma_binom(
    m_max: int, k_max: int, table: BinomTable | None = None
) -> LemmaSweepReport:
    """Check A^-<m> + B_<k> = C(m+k-1, k) - 1 over every split A + B = C(m+k, k) - 1.

    Runs for all 1 <= m <= m_max, 1 <= k <= k_max and all A, B >= 0.  A failing
    quadruple (m, k, A, B) is recorded, not raised.
    """
    if m_max < 1 or k_max < 1:
        raise ValueError("sweep bounds must be positive")
    table = table or lemma_table(m_max, k_max)
    checks = 0
    bad: list[tuple[int, int, int, int]] = []
    for m in range(1, m_max + 1):
        for k in range(1, k_max + 1):
            total = math.comb(m + k, k) - 1
            target = math.comb(m + k - 1, k) - 1
            for A in range(total + 1):
                B = total - A
                checks += 1
                if op_minus(A, m, table) + op_lower(B, k, table) != target:
                    bad.append((m, k, A, B))
    return LemmaSweepReport(m_max=m_max, k_max=k_max, checks=checks, counterexamples=bad)
