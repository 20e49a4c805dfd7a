import itertools

import pytest

from multilin.errors import CapExceededError
from multilin.field import field_make
from multilin.rank import analytic_rank, partition_rank_bound, zero_count
from multilin.tensor import Tensor, random_tensor

F2 = field_make(2)
F3 = field_make(3)


def test_zero_count_identity_form():
    # x . y on F_2^2: x = 0 gives 4 pairs, each nonzero x a 2-element kernel
    T = Tensor(F2, 2, 2, 1, (1, 0, 0, 1))
    assert zero_count(T) == 10
    assert zero_count(T, method="raw") == 10


def test_zero_count_rank_one_form():
    T = Tensor(F2, 1, 2, 1, (1,))
    assert zero_count(T) == 3  # only (1, 1) is nonzero


def test_zero_count_zero_tensor():
    Z = Tensor.zero(F2, 2, 2, 1)
    assert zero_count(Z) == 2**4


def test_kernel_equals_raw_exhaustive():
    for m in (1, 2):
        for bits in range(2 ** (m * 4)):
            coeffs = [(bits >> i) & 1 for i in range(m * 4)]
            T = Tensor(F2, 2, 2, m, coeffs)
            assert zero_count(T) == zero_count(T, method="raw")


def test_kernel_equals_raw_odd_characteristic():
    for s in range(4):
        T = random_tensor(F3, 2, 2, 2, "hom", seed=555_000 + s)
        assert zero_count(T) == zero_count(T, method="raw")
        T = random_tensor(F3, 2, 3, 1, "hom", seed=556_000 + s)
        assert zero_count(T) == zero_count(T, method="raw")


def test_kernel_slot_invariance():
    for i, (q, d, n, m) in enumerate(itertools.product((2, 3), (2, 3), (2,), (1, 2))):
        T = random_tensor(field_make(q), n, d, m, "hom", seed=400 + i)
        counts = {zero_count(T, kernel_slot=s) for s in range(d)}
        assert len(counts) == 1


def test_analytic_rank_zero_tensor():
    report = analytic_rank(Tensor.zero(F2, 2, 2, 1))
    assert report.ar_decimal == 0.0
    assert report.zero_count == 16


def test_analytic_rank_identity_form():
    report = analytic_rank(Tensor(F2, 2, 2, 1, (1, 0, 0, 1)))
    assert report.zero_count == 10
    assert abs(report.ar_decimal - 0.678) < 0.001
    assert report.ar_leq_m and report.ar_nonnegative


def test_rank_bound_on_random_samples():
    for i, (q, d, N, m) in enumerate(
        itertools.product((2, 3), (2, 3), (2, 3), (1, 2))
    ):
        F = field_make(q)
        T = random_tensor(F, N, d, m, "hom", seed=900 + i)
        zc = zero_count(T)
        assert zc >= q ** (d * N - m)  # AR <= m as an integer inequality
        report = analytic_rank(T)
        assert report.ar_decimal <= partition_rank_bound(T) + 1e-9


def test_ar_zero_iff_zero_map():
    for n, d in [(1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)]:
        for bits in range(2 ** (n**d)):
            coeffs = [(bits >> i) & 1 for i in range(n**d)]
            T = Tensor(F2, n, d, 1, coeffs)
            assert (zero_count(T) == 2 ** (d * n)) == T.is_zero()


def test_report_serialization():
    report = analytic_rank(Tensor(F2, 2, 2, 1, (1, 0, 0, 1)))
    data = report.to_dict()
    assert data["zero_count"] == "10"
    assert data["dn1"] == 4
    assert data["ar_leq_m"] is True


def test_zero_count_cap():
    T = Tensor.zero(F3, 4, 3, 1)
    with pytest.raises(CapExceededError):
        zero_count(T, cap=10)
