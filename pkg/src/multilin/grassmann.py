"""Subspaces of F_q^n in canonical form, Grassmannian enumeration, and
exact counting of intersection strata.

A subspace is stored as its reduced row echelon basis, which is the unique
canonical representative: two Subspace values are equal iff they are equal
as subspaces iff their basis matrices coincide.  Enumeration is ordered by
pivot-column set (lexicographic) and then by the free entries in row-major
element order, so every count here is reproducible bit for bit.

Counting strata of pairs by intersection dimension is done by enumeration;
when the full pair scan exceeds the cap, the count for one fixed first
factor is multiplied by the Grassmannian size (the general linear group
acts transitively on k-subspaces, so the fixed-factor count is independent
of the choice).  Both routes agree wherever both run.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import DEFAULT_CAP, PreconditionError, check_cap
from .field import Field

# ---------------------------------------------------------------------------
# exact linear algebra over a Field
# ---------------------------------------------------------------------------


def rref(field: Field, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form.  Returns (rows, pivot_columns) with zero
    rows dropped, pivot entries one, zeros above and below pivots."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != field.one:
            inv = field.inv(pv)
            work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                row_r = work[r]
                work[i] = [
                    field.sub(work[i][j], field.mul(f, row_r[j]))
                    for j in range(ncols)
                ]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[0])


def kernel_basis(field: Field, rows: Sequence[Sequence[int]], n: int) -> list:
    """Basis of {x in F^n : row . x = 0 for each row}."""
    red, pivots = rref(field, [r for r in rows if any(r)])
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][f])
        basis.append(tuple(v))
    return basis


class Subspace:
    """A k-dimensional subspace of F^n, basis in reduced row echelon form."""

    __slots__ = ("field", "n", "k", "rows", "pivots")

    def __init__(self, field: Field, n: int, rows: tuple, pivots: tuple):
        self.field = field
        self.n = n
        self.k = len(rows)
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, n: int, vectors: Sequence[Sequence[int]]):
        for v in vectors:
            if len(v) != n:
                raise PreconditionError("spanning vector has wrong length")
        rows, pivots = rref(field, vectors)
        return cls(field, n, rows, pivots)

    @classmethod
    def zero(cls, field: Field, n: int):
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int):
        one = field.one
        rows = tuple(
            tuple(one if j == i else 0 for j in range(n)) for i in range(n)
        )
        return cls(field, n, rows, tuple(range(n)))

    def contains(self, v: Sequence[int]) -> bool:
        field = self.field
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                for j in range(self.n):
                    v[j] = field.sub(v[j], field.mul(c, row[j]))
        return not any(v)

    def vectors(self) -> Iterator[tuple]:
        """All q^k vectors of the subspace (coefficient order)."""
        field = self.field
        for coefs in itertools.product(field.elements(), repeat=self.k):
            v = [0] * self.n
            for c, row in zip(coefs, self.rows):
                if c:
                    for j in range(self.n):
                        v[j] = field.add(v[j], field.mul(c, row[j]))
            yield tuple(v)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, k={self.k}, rows={self.rows})"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, field: Field, data: dict):
        rows, pivots = rref(field, data["rows"])
        if len(rows) != data["k"]:
            raise PreconditionError("serialized basis is not independent")
        return cls(field, data["n"], rows, pivots)


# ---------------------------------------------------------------------------
# enumeration and counting
# ---------------------------------------------------------------------------


def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial [n choose k]_q, exact."""
    if n < 0 or k < 0:
        raise PreconditionError("negative arguments")
    if k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_grassmannian(
    field: Field, n: int, k: int, cap: int = DEFAULT_CAP
) -> Iterator[Subspace]:
    """Yield all k-subspaces of F^n in canonical order."""
    if not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n, got k={k}, n={n}")
    check_cap(gauss_binom(n, k, field.q), cap, f"Gr({k}, F_{field.q}^{n})")
    one = field.one
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivset
        ]
        for values in itertools.product(field.elements(), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = one
            for (i, j), val in zip(free, values):
                rows[i][j] = val
            yield Subspace(field, n, tuple(tuple(r) for r in rows), pivots)


def intersection_dim(U: Subspace, V: Subspace) -> int:
    """dim(U cap V) = dim U + dim V - rank of the stacked bases."""
    if U.field != V.field or U.n != V.n:
        raise PreconditionError("subspaces live in different ambient spaces")
    return U.k + V.k - rank(U.field, list(U.rows) + list(V.rows))


def stratum_dim(n: int, k: int, l: int) -> int:
    """Dimension of the stratum of k-subspace pairs meeting in dimension l."""
    return 2 * k * (n - k + l) - l * (n + l)


def stratum_profile(
    field: Field, n: int, k: int, cap: int = DEFAULT_CAP, method: str = "auto"
) -> dict:
    """Counts of ordered pairs (U, V) in Gr(k)^2 by intersection dimension.

    method 'pairs' scans the full square; 'fixed' counts against one fixed
    U and multiplies by |Gr| (valid by transitivity); 'auto' picks 'pairs'
    while the square fits the cap.
    """
    total = gauss_binom(n, k, field.q)
    if method == "auto":
        method = "pairs" if total * total <= cap else "fixed"
    lo = max(0, 2 * k - n)
    profile = {l: 0 for l in range(lo, k + 1)}
    if method == "pairs":
        check_cap(total * total, cap, "stratum pair scan")
        subs = list(enumerate_grassmannian(field, n, k, cap))
        for U in subs:
            for V in subs:
                profile[intersection_dim(U, V)] += 1
    elif method == "fixed":
        check_cap(total, cap, "stratum scan")
        for V in enumerate_grassmannian(field, n, k, cap):
            # against U0 = span(e_1..e_k): dim(U0 cap V) = k - rank(V[:, k:])
            block = [row[k:] for row in V.rows]
            profile[k - rank(field, block)] += 1
        for l in profile:
            profile[l] *= total
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return profile


def stratum_count(
    field: Field,
    n: int,
    k: int,
    l: int,
    cap: int = DEFAULT_CAP,
    method: str = "auto",
) -> int:
    """|{(U, V) in Gr(k)^2 : dim(U cap V) = l}| over F_q, exact."""
    if not max(0, 2 * k - n) <= l <= k:
        raise PreconditionError(
            f"l={l} outside admissible range [{max(0, 2 * k - n)}, {k}]"
        )
    return stratum_profile(field, n, k, cap, method)[l]


# ---------------------------------------------------------------------------
# closed-form dimension formulas for the two incidence varieties
# ---------------------------------------------------------------------------


def alt_incidence_dim(n: int, d: int, m: int, k: int) -> int:
    """Dimension of the incidence variety of pairs (V, [T]) with V a
    k-subspace isotropic for the alternating map T."""
    return (n - k) * k + m * (comb(n, d) - comb(k, d)) - 1


def hom_incidence_dim(n: int, d: int, m: int) -> int:
    """Dimension of the incidence variety of tuples (U_1..U_d, [T]) with T
    multilinear vanishing on the product of the 2-dimensional U_i."""
    return 2 * d * (n - 2) + m * (n**d - 2**d) - 1


# ---------------------------------------------------------------------------
# exact interpolation (degree read-off for point-count polynomials)
# ---------------------------------------------------------------------------


def interpolate_coeffs(samples: Sequence[tuple]) -> list:
    """Coefficients (Fraction, ascending degree) of the unique polynomial of
    degree < len(samples) through the given (x, y) points."""
    xs = [Fraction(x) for x, _ in samples]
    ys = [Fraction(y) for _, y in samples]
    npts = len(xs)
    if len(set(xs)) != npts:
        raise PreconditionError("interpolation nodes must be distinct")
    newton = ys[:]
    for j in range(1, npts):
        for i in range(npts - 1, j - 1, -1):
            newton[i] = (newton[i] - newton[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * npts
    basis = [Fraction(1)] + [Fraction(0)] * (npts - 1)
    for i in range(npts):
        for t in range(i + 1):
            poly[t] += newton[i] * basis[t]
        if i + 1 < npts:
            shifted = [Fraction(0)] * npts
            for t in range(i + 1):
                shifted[t + 1] += basis[t]
                shifted[t] -= xs[i] * basis[t]
            basis = shifted
    return poly


def interpolated_degree(samples: Sequence[tuple]) -> int:
    """Degree of the interpolating polynomial (-1 for the zero polynomial).
    The caller must supply at least degree+1 sample points."""
    poly = interpolate_coeffs(samples)
    for i in range(len(poly) - 1, -1, -1):
        if poly[i]:
            return i
    return -1
