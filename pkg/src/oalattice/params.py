"""Parameter sets of mixed-level, strength-2 orthogonal arrays.

A parameter set records a run count N together with a multiset of factors,
each factor having a number of levels s >= 2.  We write them in the usual
exponent notation, e.g. ``64: 2^5 4^17 8^1`` for an array with 64 runs,
five 2-level factors, seventeen 4-level factors and one 8-level factor.
The trivial set with a single 1-level factor, written ``N: 1^1``, is the
root of the lattice built in :mod:`oalattice.lattice`.

A parameter set is *admissible* if it satisfies the four classical
necessary conditions for a strength-2 array to exist:

  (C1) every level divides N;
  (C2) s^2 divides N whenever the s-level factor count is at least 2;
  (C3) s*t divides N for every pair of distinct levels s, t;
  (C4) the degrees of freedom, sum of k_i (s_i - 1), do not exceed N - 1.

All arithmetic is exact integer arithmetic; nothing here uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


@dataclass(frozen=True, order=True)
class ParameterSet:
    """Canonical parameter set: factors sorted by level, levels >= 2.

    The root (N, 1^1) is stored with an empty factor tuple.  Equality and
    ordering are componentwise on (runs, factors), so canonical sets can be
    used directly as dict keys and sorted deterministically.
    """

    runs: int
    factors: tuple[tuple[int, int], ...]

    @property
    def is_root(self) -> bool:
        return not self.factors

    @property
    def is_top(self) -> bool:
        return self.factors == ((self.runs, 1),)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.factors)

    @property
    def factor_count(self) -> int:
        return sum(k for _, k in self.factors)

    def __str__(self) -> str:
        return format_parameter_set(self)


def canonicalize(runs: int, raw_factors: Iterable[tuple[int, int]]) -> ParameterSet:
    """Merge duplicate levels, drop 1-level factors, sort levels ascending.

    An empty result (all factors at one level, or no factors at all) is the
    root (runs, 1^1).
    """
    if runs < 1:
        raise ValueError(f"run count must be positive, got {runs}")
    merged: dict[int, int] = {}
    for level, count in raw_factors:
        if level < 1:
            raise ValueError(f"level must be positive, got {level}")
        if count < 1:
            raise ValueError(f"factor count must be positive, got {count}")
        if level == 1:
            continue
        merged[level] = merged.get(level, 0) + count
    return ParameterSet(runs, tuple(sorted(merged.items())))


def root_set(runs: int) -> ParameterSet:
    return canonicalize(runs, ())


def top_set(runs: int) -> ParameterSet:
    if runs == 1:
        return root_set(1)
    return ParameterSet(runs, ((runs, 1),))


def degrees_of_freedom(ps: ParameterSet) -> int:
    """Sum of k_i (s_i - 1); zero for the root."""
    return sum(k * (s - 1) for s, k in ps.factors)


def satisfies_conditions(ps: ParameterSet) -> bool:
    """Check the admissibility conditions (C1) through (C4).

    The root passes vacuously.  Exact integer arithmetic throughout.
    """
    n = ps.runs
    dof = 0
    for s, k in ps.factors:
        if n % s:
            return False
        if k >= 2 and n % (s * s):
            return False
        dof += k * (s - 1)
    if dof > n - 1:
        return False
    lv = ps.levels
    for i in range(len(lv)):
        for j in range(i + 1, len(lv)):
            if n % (lv[i] * lv[j]):
                return False
    return True


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("divisors() needs a positive integer")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n == p**m, or None if n is not a prime power."""
    ps = prime_divisors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    m = 0
    while n > 1:
        n //= p
        m += 1
    return p, m


def _candidate_levels(n: int) -> list[int]:
    return [d for d in divisors(n) if d >= 2]


@lru_cache(maxsize=None)
def enumerate_parameter_sets(n: int) -> tuple[ParameterSet, ...]:
    """All admissible parameter sets with n runs, sorted by factor list.

    Recursion over the divisors of n as candidate levels, ascending, with a
    running degrees-of-freedom budget.  (C3) is enforced incrementally: a
    level is skipped as soon as its product with an already chosen level
    fails to divide n.  Includes the root and the top (n, n^1).
    """
    if n < 1:
        raise ValueError(f"run count must be positive, got {n}")
    levels = _candidate_levels(n)
    unlimited = {s: n % (s * s) == 0 for s in levels}
    found: list[tuple[tuple[int, int], ...]] = []
    chosen: list[tuple[int, int]] = []

    def rec(start: int, budget: int) -> None:
        found.append(tuple(chosen))
        for i in range(start, len(levels)):
            s = levels[i]
            w = s - 1
            if w > budget:
                break  # levels ascend, so no later candidate fits either
            if any(n % (s * t) for t, _ in chosen):
                continue
            kmax = budget // w if unlimited[s] else 1
            for k in range(1, kmax + 1):
                chosen.append((s, k))
                rec(i + 1, budget - k * w)
                chosen.pop()

    rec(0, n - 1)
    return tuple(ParameterSet(n, f) for f in sorted(found))


def count_parameter_sets(n: int) -> int:
    """Number of admissible parameter sets with n runs, without materializing.

    Same search tree as :func:`enumerate_parameter_sets`, collapsed by
    memoizing on (remaining compatible levels, remaining budget).  Handles
    run counts whose lattices are far too large to enumerate.
    """
    if n < 1:
        raise ValueError(f"run count must be positive, got {n}")
    levels = tuple(_candidate_levels(n))
    unlimited = {s: n % (s * s) == 0 for s in levels}
    memo: dict[tuple[tuple[int, ...], int], int] = {}

    def rec(allowed: tuple[int, ...], budget: int) -> int:
        key = (allowed, budget)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 1  # stopping here yields one completed set
        for i, s in enumerate(allowed):
            w = s - 1
            if w > budget:
                break
            nxt = tuple(t for t in allowed[i + 1:] if n % (s * t) == 0)
            kmax = budget // w if unlimited[s] else 1
            for k in range(1, kmax + 1):
                total += rec(nxt, budget - k * w)
        memo[key] = total
        return total

    return rec(levels, n - 1)


# ---------------------------------------------------------------------------
# text and JSON forms


def format_parameter_set(ps: ParameterSet) -> str:
    """Render as ``"N: s^k s^k ..."``; the root renders as ``"N: 1^1"``."""
    if ps.is_root:
        return f"{ps.runs}: 1^1"
    body = " ".join(f"{s}^{k}" for s, k in ps.factors)
    return f"{ps.runs}: {body}"


def parse_parameter_set(text: str) -> ParameterSet:
    """Parse ``"N: s^k s^k ..."`` (whitespace-separated level^count tokens).

    A bare count suffix is required; ``1^1`` tokens are accepted and folded
    into the root.  Raises ValueError on malformed input.
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"expected 'N: s^k ...', got {text!r}")
    try:
        runs = int(head.strip())
    except ValueError:
        raise ValueError(f"bad run count in {text!r}") from None
    factors = []
    for tok in body.split():
        base, sep, exp = tok.partition("^")
        if not sep:
            raise ValueError(f"bad factor token {tok!r} in {text!r}")
        try:
            factors.append((int(base), int(exp)))
        except ValueError:
            raise ValueError(f"bad factor token {tok!r} in {text!r}") from None
    return canonicalize(runs, factors)


def parameter_set_to_json(ps: ParameterSet) -> dict:
    return {
        "runs": ps.runs,
        "factors": [{"level": s, "count": k} for s, k in ps.factors],
    }


def parameter_set_from_json(obj: dict) -> ParameterSet:
    try:
        runs = obj["runs"]
        raw = [(f["level"], f["count"]) for f in obj["factors"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed parameter-set object: {obj!r}") from exc
    return canonicalize(runs, raw)
