"""Zero-set counting and analytic rank of multilinear maps over F_q.

The analytic rank of T: (F_q^N)^d -> F_q^m is dN - log_q |Z_T| where Z_T
is the set of argument tuples mapped to zero.  It is stored exactly as the
pair (dN, |Z_T|) and compared through integer inequalities; the decimal
log is presentation only.  The partition rank is never computed, only its
coordinate-decomposition bound m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log

from .errors import DEFAULT_CAP, InvariantViolation, PreconditionError, check_cap
from .grassmann import rank as matrix_rank
from .tensor import Tensor, _contract_first, all_vectors


def _move_slot_first(T: Tensor, slot: int) -> Tensor:
    if slot == 0:
        return T
    n, d, m = T.n, T.d, T.m
    strides = [n ** (d - 1 - j) for j in range(d)]
    order = [slot] + [j for j in range(d) if j != slot]
    flat = [0] * len(T.coeffs)
    for o in range(m):
        base = o * n**d
        for idx in range(n**d):
            rem = idx
            digits = []
            for s in strides:
                digits.append(rem // s)
                rem %= s
            new_idx = sum(digits[order[j]] * strides[j] for j in range(d))
            flat[base + new_idx] = T.coeffs[base + idx]
    return Tensor(T.field, n, d, m, flat)


def zero_count(
    T: Tensor, cap: int = DEFAULT_CAP, method: str = "kernel", kernel_slot: int = 0
) -> int:
    """Exact |{(x_1..x_d) : T(x_1..x_d) = 0}|.

    'kernel' fixes all slots but one and adds q^(N - rank) for the induced
    linear map; 'raw' scans every tuple.  Both give the same count, and any
    choice of kernel slot does too (multilinearity).
    """
    if not isinstance(T, Tensor):
        raise PreconditionError("zero counting needs a dense multilinear tensor")
    field = T.field
    q, n, d, m = field.q, T.n, T.d, T.m
    if n == 0:
        return 1
    if method == "raw":
        check_cap(q ** (d * n), cap, "raw zero-set scan")
        vectors = list(all_vectors(field, n))
        count = 0

        def rec(flat, order):
            nonlocal count
            if order == 0:
                if all(c == 0 for c in flat):
                    count += 1
                return
            for v in vectors:
                rec(_contract_first(field, flat, m, n, order, v), order - 1)

        rec(T.coeffs, d)
        return count
    if method != "kernel":
        raise PreconditionError(f"unknown method {method!r}")
    if not 0 <= kernel_slot < d:
        raise PreconditionError("kernel slot out of range")
    check_cap(q ** ((d - 1) * n), cap, "zero-set kernel scan")
    T = _move_slot_first(T, kernel_slot)
    vectors = list(all_vectors(field, n))
    count = 0

    def rec(flat, order):
        nonlocal count
        if order == 1:
            rows = [flat[o * n : (o + 1) * n] for o in range(m)]
            count += q ** (n - matrix_rank(field, rows))
            return
        for v in vectors:
            # contract the trailing slot, keeping the kernel slot in front
            rec(_contract_last(field, flat, m, n, order, v), order - 1)

    rec(list(T.coeffs), d)
    return count


def _contract_last(field, flat, m, n, d, v):
    mul = field.mul_func()
    add = field.add_func()
    out = []
    blocks = m * n ** (d - 1)
    for b in range(blocks):
        base = b * n
        acc = 0
        for j in range(n):
            w = v[j]
            if w:
                c = flat[base + j]
                if c:
                    acc = add(acc, mul(c, w))
        out.append(acc)
    return out


@dataclass(frozen=True)
class RankReport:
    """Exact analytic-rank data: AR = dn - log_q(zero_count)."""

    q: int
    dn: int  # d * (domain dimension)
    zero_count: int
    bound_m: int

    @property
    def ar_leq_m(self) -> bool:
        return self.zero_count >= self.q ** (self.dn - self.bound_m)

    @property
    def ar_nonnegative(self) -> bool:
        return self.zero_count <= self.q**self.dn

    @property
    def ar_decimal(self) -> float:
        return self.dn - log(self.zero_count) / log(self.q)

    def to_dict(self) -> dict:
        return {
            "zero_count": str(self.zero_count),
            "dn1": self.dn,
            "ar_leq_m": self.ar_leq_m,
            "ar_decimal": self.ar_decimal,
        }


def analytic_rank(T: Tensor, cap: int = DEFAULT_CAP) -> RankReport:
    """Zero count plus the exact analytic-rank inequalities.  The report is
    checked against 0 <= AR <= m before being returned; a failure would
    falsify the partition-rank bound and is raised as a hard error."""
    zc = zero_count(T, cap)
    report = RankReport(q=T.field.q, dn=T.d * T.n, zero_count=zc, bound_m=T.m)
    if not report.ar_nonnegative:
        raise InvariantViolation("zero count exceeds the domain size")
    if not report.ar_leq_m:
        raise InvariantViolation(
            f"analytic rank above m: |Z| = {zc} < q^(dn - m) "
            f"= {T.field.q ** (report.dn - T.m)}"
        )
    return report


def partition_rank_bound(T: Tensor) -> int:
    """The coordinate-decomposition bound m; no partition rank is computed."""
    return T.m
