from fractions import Fraction

import pytest

from multilin.boxfree import (
    Hypergraph,
    admissible,
    box_copies,
    box_pipeline,
    build_hypergraph,
    copies_span_annihilated_tuples,
    delete_and_verify,
    edge_lower_bound,
    freeness_check,
    pigeonhole_search,
    plane_tuple_bound,
    projective_points,
)
from multilin.errors import PreconditionError
from multilin.field import field_make
from multilin.isotropy import isotropic_plane_tuples
from multilin.tensor import Tensor, random_tensor

F2 = field_make(2)
F3 = field_make(3)


def test_projective_points_counts():
    for q, dim in [(2, 2), (2, 3), (2, 4), (3, 3), (4, 2)]:
        F = field_make(2, 2) if q == 4 else field_make(q)
        pts = projective_points(F, dim)
        assert len(pts) == (q**dim - 1) // (q - 1)
        assert len(set(pts)) == len(pts)
        for v in pts:
            first = next(c for c in v if c)
            assert first == F.one


def test_build_zero_tensor_is_complete():
    H = build_hypergraph(Tensor.zero(F2, 2, 2, 1))
    assert len(H.parts[0]) == 3
    assert H.edge_count == 9
    free, witness = freeness_check(H)
    assert not free and witness is not None


def test_build_identity_form_edges():
    # projective pairs with x . y = 0 over F_2^2: exactly 3
    H = build_hypergraph(Tensor(F2, 2, 2, 1, (1, 0, 0, 1)))
    assert H.edge_count == 3
    assert freeness_check(H)[0]


def test_part_sizes():
    T = random_tensor(F2, 4, 2, 1, "hom", seed=3)
    H = build_hypergraph(T)
    assert all(len(part) == 15 for part in H.parts)


def test_edge_lower_bound_values():
    # q=2, d=2, N=4, m=1: (2^7 - 2 * 2^4) / 1 = 96
    T = random_tensor(F2, 4, 2, 1, "hom", seed=3)
    result = edge_lower_bound(T)
    assert result.bound == 96
    assert result.ok
    Z = Tensor.zero(F2, 4, 2, 1)
    full = edge_lower_bound(Z)
    assert full.edge_count == 15**2
    # large m makes the bound negative (vacuous)
    small = edge_lower_bound(Tensor.zero(F2, 2, 2, 3))
    assert small.bound < 0 and small.ok


def test_edge_bound_holds_on_many_random_tensors():
    # the bound follows from the zero-count inequality, so it can never fail
    for seed in range(100):
        T = random_tensor(F2, 4, 2, 1, "hom", seed=60_000 + seed)
        assert edge_lower_bound(T).ok


def test_empty_hypergraph_is_free():
    H = Hypergraph(d=2, parts=((), ()), edges=frozenset())
    assert freeness_check(H) == (True, None)


def test_plane_tuple_bound_and_admissibility():
    assert plane_tuple_bound(F2, 3, 2, 1) == 76
    assert admissible(3, 2, 1)
    assert not admissible(2, 2, 3)
    with pytest.raises(PreconditionError):
        pigeonhole_search(F2, 2, 2, 3)


def test_pigeonhole_search_exhaustive_mode():
    T, info = pigeonhole_search(F2, 3, 2, 1, seed=42)
    assert info["exhaustive"] and info["met"]
    assert info["tuple_count"] <= info["tuple_bound"] == 76
    assert len(isotropic_plane_tuples(T)) == info["tuple_count"]
    # reproducible for a fixed seed
    T2, info2 = pigeonhole_search(F2, 3, 2, 1, seed=42)
    assert T2 == T and info2 == info


def test_pigeonhole_search_sampling_mode():
    T, info = pigeonhole_search(F2, 3, 2, 1, seed=1, tensor_cap=10, max_trials=50)
    assert not info["exhaustive"]
    assert info["tuple_count"] <= 76 and info["met"]


def test_delete_and_verify_zero_tensor():
    Z = Tensor.zero(F2, 2, 2, 1)
    H = build_hypergraph(Z)
    tuples = isotropic_plane_tuples(Z)
    H2, deleted = delete_and_verify(Z, H, tuples)
    assert H2.edge_count == 0
    assert deleted == 9
    assert freeness_check(H2)[0]


def test_pipeline_certificate():
    result = box_pipeline(F2, 3, 2, 1, seed=42)
    cert = result.certificate
    assert cert.tuple_bound == 76 and cert.tuple_bound_ok
    assert cert.edge_bound == Fraction(96) and cert.edge_bound_ok
    assert cert.freeness_verified
    assert cert.edge_count_before - cert.deleted_count == cert.edge_count_after
    assert cert.deleted_count <= 9 * cert.plane_tuple_count  # (q+1)^d budget
    data = cert.to_dict()
    assert data["edge_bound_num"] == "96"
    assert data["freeness_verified"] is True


def test_every_box_spans_an_annihilated_tuple():
    result = box_pipeline(F2, 3, 2, 1, seed=42)
    assert copies_span_annihilated_tuples(result.tensor, result.before, result.tuples)
    # and after deletion the hypergraph carries no boxes at all
    assert box_copies(result.after) == []


def test_hypergraph_serialization_roundtrip():
    H = build_hypergraph(Tensor(F2, 2, 2, 1, (1, 0, 0, 1)))
    again = Hypergraph.from_dict(H.to_dict())
    assert again == H
    text = H.to_text("# 2 1 2 1")
    lines = text.strip().splitlines()
    assert lines[0] == "# 2 1 2 1"
    assert len(lines) == 1 + H.edge_count


def test_hypergraph_text_roundtrip():
    from multilin.boxfree import hypergraph_from_text

    H = build_hypergraph(Tensor(F2, 2, 2, 1, (1, 0, 0, 1)))
    again = hypergraph_from_text(H.to_text("# 2 1 2 1"))
    assert again == H
    with pytest.raises(PreconditionError):
        hypergraph_from_text("0 1\n1 0\n")  # missing header


def test_pipeline_other_seed_still_verifies():
    result = box_pipeline(F2, 3, 2, 1, seed=7)
    assert result.certificate.freeness_verified
    assert result.certificate.tuple_bound_ok


def test_pipeline_odd_characteristic_sampling():
    # the coefficient space exceeds the exhaustive ceiling, so the search
    # samples; the certificate must still verify everything it reports
    assert plane_tuple_bound(F3, 3, 2, 1) == 208
    result = box_pipeline(F3, 3, 2, 1, seed=11, max_trials=64)
    cert = result.certificate
    assert not cert.search_exhaustive
    assert cert.tuple_bound_ok and cert.plane_tuple_count <= 208
    assert cert.edge_bound_ok and cert.freeness_verified
    assert len(result.before.parts[0]) == 40  # (3^4 - 1) / 2
