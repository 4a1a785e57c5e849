"""Exact linear algebra over prime fields GF(p).

Vectors are tuples of residues, matrices are tuples of row tuples, and a
subspace is identified with the unique reduced row-echelon basis of its row
space.  Everything is a small immutable value: hashable, safe to share, and
deterministic to sort.  Intended for small p (p <= 251) and small ambient
dimension; enumeration routines guard against combinatorial blow-ups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

POINT_GUARD = 1 << 24       # max points enumerated from one subspace
SUBSPACE_GUARD = 1 << 20    # max subspaces enumerated from one ambient space


class GuardExceeded(RuntimeError):
    """An enumeration was refused because its size exceeds a safety bound."""


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if p > 251:
        raise ValueError(f"prime {p} exceeds the supported bound 251")


def rref(rows: Iterable[Iterable[int]], p: int, width: int | None = None) -> tuple[Matrix, int]:
    """Reduced row-echelon form over GF(p).

    Args:
        rows: matrix rows; entries are reduced mod p.
        p: a prime, at most 251.
        width: row length, required when ``rows`` is empty.

    Returns:
        (basis, rank): ``basis`` is the canonical RREF with zero rows
        dropped (so two inputs with the same row space give identical
        output), and ``rank`` is its number of rows.
    """
    _check_prime(p)
    work = [[x % p for x in row] for row in rows]
    if work:
        n = len(work[0])
        if any(len(r) != n for r in work):
            raise ValueError("ragged matrix")
    else:
        if width is None:
            raise ValueError("width required for an empty matrix")
        n = width
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [(x * inv) % p for x in work[r]]
        lead = work[r]
        for i in range(len(work)):
            f = work[i][c]
            if i != r and f:
                work[i] = [(a - f * b) % p for a, b in zip(work[i], lead)]
        r += 1
        if r == len(work):
            break
    basis = tuple(tuple(row) for row in work[:r])
    return basis, r


@dataclass(frozen=True, order=True)
class Subspace:
    """A linear subspace of GF(p)^n held as its canonical RREF basis.

    ``dim`` is the vector-space dimension (number of basis rows), which for
    the zero subspace is 0 and the basis is empty.  Identity, hashing and
    ordering all come from the canonical basis, so equal row spaces compare
    equal no matter how they were produced.
    """

    p: int
    n: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __str__(self) -> str:
        return format_subspace(self)


def subspace(p: int, n: int, rows: Iterable[Iterable[int]]) -> Subspace:
    """Build the subspace spanned by ``rows`` inside GF(p)^n."""
    basis, _ = rref(rows, p, width=n)
    if basis and len(basis[0]) != n:
        raise ValueError(f"rows have length {len(basis[0])}, ambient is {n}")
    return Subspace(p, n, basis)


def zero_subspace(p: int, n: int) -> Subspace:
    _check_prime(p)
    return Subspace(p, n, ())


def full_space(p: int, n: int) -> Subspace:
    rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return subspace(p, n, rows)


def _same_ambient(subspaces: Iterable[Subspace]) -> tuple[int, int]:
    it = iter(subspaces)
    try:
        first = next(it)
    except StopIteration:
        raise ValueError("need at least one subspace") from None
    for v in it:
        if (v.p, v.n) != (first.p, first.n):
            raise ValueError(
                f"mismatched ambient spaces: GF({first.p})^{first.n} vs GF({v.p})^{v.n}"
            )
    return first.p, first.n


def rank_of_union(subspaces: list[Subspace]) -> int:
    """Dimension of the span of all the given subspaces (stacked bases)."""
    p, n = _same_ambient(subspaces)
    stacked = [row for v in subspaces for row in v.basis]
    _, rank = rref(stacked, p, width=n)
    return rank


def subspace_points(v: Subspace) -> frozenset[Vector]:
    """All p^dim points of the subspace, including zero.

    Refuses subspaces with more than 2^24 points.
    """
    if v.p ** v.dim > POINT_GUARD:
        raise GuardExceeded(f"subspace has {v.p}^{v.dim} points, over the guard")
    pts = set()
    for coeffs in product(range(v.p), repeat=v.dim):
        w = [0] * v.n
        for c, row in zip(coeffs, v.basis):
            if c:
                for i in range(v.n):
                    w[i] = (w[i] + c * row[i]) % v.p
        pts.add(tuple(w))
    return frozenset(pts)


def gaussian_binomial(n: int, d: int, p: int) -> int:
    """Number of d-dimensional subspaces of GF(p)^n, by the product formula."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= p ** (n - i) - 1
        den *= p ** (d - i) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(p: int, n: int, d: int) -> Iterator[Subspace]:
    """Yield every d-dimensional subspace of GF(p)^n exactly once.

    Output is in lexicographic order of the canonical RREF basis.  Raises
    GuardExceeded when the Gaussian binomial count is over 2^20.
    """
    _check_prime(p)
    if d < 0 or d > n:
        raise ValueError(f"dimension {d} out of range for ambient {n}")
    total = gaussian_binomial(n, d, p)
    if total > SUBSPACE_GUARD:
        raise GuardExceeded(f"{total} subspaces requested, over the guard")
    if d == 0:
        yield zero_subspace(p, n)
        return
    out = []
    for pivots in combinations(range(n), d):
        pivot_set = set(pivots)
        # free entries sit to the right of each row's pivot, off other pivots
        free = [
            (ri, c)
            for ri, pc in enumerate(pivots)
            for c in range(pc + 1, n)
            if c not in pivot_set
        ]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for ri, pc in enumerate(pivots):
                rows[ri][pc] = 1
            for (ri, c), val in zip(free, vals):
                rows[ri][c] = val
            out.append(tuple(tuple(r) for r in rows))
    out.sort()
    for basis in out:
        yield Subspace(p, n, basis)


def solve_in_span(v: Subspace, target: Vector) -> Vector | None:
    """Coefficients expressing ``target`` over ``v.basis``, or None.

    RREF bases make this a single elimination pass against the pivots.
    """
    p = v.p
    residual = [x % p for x in target]
    coeffs = []
    for row in v.basis:
        pc = next(i for i, x in enumerate(row) if x)
        c = residual[pc] % p
        coeffs.append(c)
        if c:
            for i in range(v.n):
                residual[i] = (residual[i] - c * row[i]) % p
    if any(residual):
        return None
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# text form: one basis row per line, digits over the field


def format_subspace(v: Subspace) -> str:
    if v.p <= 10:
        return "\n".join("".join(str(x) for x in row) for row in v.basis)
    return "\n".join(" ".join(str(x) for x in row) for row in v.basis)


def parse_subspace(p: int, n: int, text: str) -> Subspace:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if p <= 10:
            row = [int(ch) for ch in line]
        else:
            row = [int(tok) for tok in line.split()]
        if len(row) != n:
            raise ValueError(f"row {line!r} has length {len(row)}, ambient is {n}")
        rows.append(row)
    return subspace(p, n, rows)


@lru_cache(maxsize=None)
def point_index(p: int, n: int) -> dict[Vector, int]:
    """Stable index of every point of GF(p)^n (lexicographic order)."""
    if p ** n > POINT_GUARD:
        raise GuardExceeded(f"GF({p})^{n} has too many points to index")
    return {pt: i for i, pt in enumerate(product(range(p), repeat=n))}


def point_mask(v: Subspace) -> int:
    """Bitmask of the subspace's nonzero points within GF(p)^n.

    Masks make pairwise-trivial-intersection tests a single AND: two
    subspaces meet only in zero exactly when their masks are disjoint.
    """
    index = point_index(v.p, v.n)
    m = 0
    for pt in subspace_points(v):
        if any(pt):
            m |= 1 << index[pt]
    return m
