"""Box-free hypergraph construction from multilinear maps over F_q.

A map T: (F_q^(n+1))^d -> F_q^m induces a d-partite d-uniform hypergraph
on d copies of the projective space P^n(F_q) whose edges are the
projective zero tuples of T.  Any complete d-partite sub-box with two
vertices per part spans a d-tuple of 2-dimensional subspaces annihilating
T, so deleting all edges inside products of such tuples leaves a box-free
hypergraph.  This module builds the hypergraph, finds a map with few
annihilated plane tuples by a seeded pigeonhole scan, performs the
deletion, and verifies freeness by brute force, recording every exact
count in a certificate.

The certificate never asserts the asymptotic edge-retention claim: at
small q the deletion budget (q+1)^d |D| can exceed the edge count, so
only the exact inequalities and verified freeness are recorded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DEFAULT_CAP,
    InvariantViolation,
    PreconditionError,
    check_cap,
)
from .field import Field
from .grassmann import Subspace, gauss_binom
from .isotropy import DEFAULT_TENSOR_CAP, count_plane_tuples, isotropic_plane_tuples
from .prng import SplitMix64
from .tensor import Tensor, tensor_eval
from .rank import zero_count


def projective_points(field: Field, dim: int, cap: int = DEFAULT_CAP) -> list:
    """Canonical representatives of P(F^dim): first nonzero coordinate one,
    in lexicographic vector order."""
    q = field.q
    check_cap(q**dim, cap, "projective point scan")
    one = field.one
    out = []
    for v in itertools.product(field.elements(), repeat=dim):
        for c in v:
            if c:
                if c == one:
                    out.append(v)
                break
    expected = (q**dim - 1) // (q - 1)
    if len(out) != expected:  # pragma: no cover
        raise InvariantViolation("projective point count mismatch")
    return out


def _canonical_point(field: Field, v: Sequence[int]) -> tuple:
    for c in v:
        if c:
            if c == field.one:
                return tuple(v)
            inv = field.inv(c)
            return tuple(field.mul(inv, x) for x in v)
    raise PreconditionError("zero vector has no projective class")


@dataclass(frozen=True)
class Hypergraph:
    """d-partite d-uniform hypergraph; parts hold projective points as
    canonical vectors, edges reference vertex indices per part."""

    d: int
    parts: tuple
    edges: frozenset

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "parts": [[list(v) for v in part] for part in self.parts],
            "edges": [list(e) for e in self.sorted_edges()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        return cls(
            d=data["d"],
            parts=tuple(
                tuple(tuple(v) for v in part) for part in data["parts"]
            ),
            edges=frozenset(tuple(e) for e in data["edges"]),
        )

    def to_text(self, header: str = "") -> str:
        """Plain edge list, one 'v1 v2 ... vd' line per edge."""
        lines = [header] if header else []
        lines.extend(" ".join(str(i) for i in e) for e in self.sorted_edges())
        return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    """Parse the plain edge-list format: a '# d n q m' header line, then
    one 'v1 v2 ... vd' line of vertex indices per edge.  Parts are the
    canonical projective points of P^n(F_q)."""
    from .field import field_of_order

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise PreconditionError("missing '# d n q m' header line")
    try:
        d, n, q, m = (int(tok) for tok in lines[0][1:].split())
    except ValueError as exc:
        raise PreconditionError(f"malformed header {lines[0]!r}") from exc
    points = tuple(projective_points(field_of_order(q), n + 1))
    edges = set()
    for ln in lines[1:]:
        edge = tuple(int(tok) for tok in ln.split())
        if len(edge) != d or any(not 0 <= i < len(points) for i in edge):
            raise PreconditionError(f"bad edge line {ln!r}")
        edges.add(edge)
    return Hypergraph(d=d, parts=(points,) * d, edges=frozenset(edges))


def build_hypergraph(T: Tensor, cap: int = DEFAULT_CAP) -> Hypergraph:
    """Hypergraph on d copies of P^(n)(F_q) (ambient dimension T.n) whose
    edges are exactly the projective zero tuples of T."""
    if not isinstance(T, Tensor):
        raise PreconditionError("the hypergraph needs a dense multilinear tensor")
    field = T.field
    points = projective_points(field, T.n, cap)
    npts = len(points)
    check_cap(npts**T.d, cap, "edge enumeration")
    zero = (0,) * T.m
    edges = []
    for combo in itertools.product(range(npts), repeat=T.d):
        if tensor_eval(T, [points[i] for i in combo]) == zero:
            edges.append(combo)
    return Hypergraph(d=T.d, parts=(tuple(points),) * T.d, edges=frozenset(edges))


@dataclass(frozen=True)
class EdgeBound:
    """Exact edge count against the analytic-rank lower bound
    (q^(dN - m) - d q^((d-1)N)) / (q-1)^d, N the ambient dimension."""

    edge_count: int
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.edge_count >= self.bound


def edge_lower_bound(T: Tensor, H: Optional[Hypergraph] = None, cap: int = DEFAULT_CAP) -> EdgeBound:
    if H is None:
        H = build_hypergraph(T, cap)
    q, N, d, m = T.field.q, T.n, T.d, T.m
    bound = Fraction(q ** (d * N - m) - d * q ** ((d - 1) * N), (q - 1) ** d)
    result = EdgeBound(H.edge_count, bound)
    if not result.ok:
        # would contradict the zero-count bound AR <= m; re-derive for the report
        raise InvariantViolation(
            f"edge count {H.edge_count} below bound {bound}; "
            f"zero count was {zero_count(T, cap)}"
        )
    return result


def freeness_check(H: Hypergraph, cap: int = DEFAULT_CAP):
    """Scan all coordinate-disjoint edge pairs for a complete sub-box with
    two vertices per part.  Returns (True, None) or (False, witness) with
    the first violation in sorted edge order."""
    edges = H.sorted_edges()
    d = H.d
    check_cap(len(edges) ** 2 * 2**d, cap, "freeness pair scan")
    edge_set = H.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if any(e[t] == f[t] for t in range(d)):
                continue
            if all(
                combo in edge_set
                for combo in itertools.product(*[(e[t], f[t]) for t in range(d)])
            ):
                witness = tuple((e[t], f[t]) for t in range(d))
                return False, witness
    return True, None


def box_copies(H: Hypergraph, cap: int = DEFAULT_CAP):
    """All complete 2-per-part sub-boxes, as tuples of vertex-index pairs
    (unordered within a part, ordered by the generating edge pair)."""
    edges = H.sorted_edges()
    d = H.d
    check_cap(len(edges) ** 2 * 2**d, cap, "box enumeration")
    edge_set = H.edges
    out = []
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if any(e[t] == f[t] for t in range(d)):
                continue
            if all(
                combo in edge_set
                for combo in itertools.product(*[(e[t], f[t]) for t in range(d)])
            ):
                out.append(tuple((e[t], f[t]) for t in range(d)))
    return out


# ---------------------------------------------------------------------------
# the pigeonhole search and the deletion certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxCertificate:
    """Exact bookkeeping of one construction run; all quantities integers
    (the edge lower bound is a fraction with denominator (q-1)^d)."""

    q: int
    n: int  # projective dimension; ambient is n + 1
    d: int
    m: int
    seed: int
    edge_count_before: int
    edge_count_after: int
    deleted_count: int
    plane_tuple_count: int
    tuple_bound: int
    tuple_bound_ok: bool
    edge_bound: Fraction
    edge_bound_ok: bool
    freeness_verified: bool
    search_exhaustive: bool
    trials: int

    def to_dict(self) -> dict:
        return {
            "params": {
                "q": self.q,
                "n": self.n,
                "d": self.d,
                "m": self.m,
                "seed": str(self.seed),
            },
            "edge_count_before": str(self.edge_count_before),
            "edge_count_after": str(self.edge_count_after),
            "deleted_count": str(self.deleted_count),
            "plane_tuple_count": str(self.plane_tuple_count),
            "tuple_bound": str(self.tuple_bound),
            "tuple_bound_ok": self.tuple_bound_ok,
            "edge_bound_num": str(self.edge_bound.numerator),
            "edge_bound_den": str(self.edge_bound.denominator),
            "edge_bound_ok": self.edge_bound_ok,
            "freeness_verified": self.freeness_verified,
            "search_exhaustive": self.search_exhaustive,
            "trials": self.trials,
        }


def plane_tuple_bound(field: Field, n: int, d: int, m: int) -> int:
    """floor(q^(-m 2^d) |Gr(2, F^(n+1))|^d): some map meets this count by
    averaging over the projectivized map space."""
    q = field.q
    return gauss_binom(n + 1, 2, q) ** d // q ** (m * 2**d)


def admissible(n: int, d: int, m: int) -> bool:
    """Hypothesis for the sparse-tuple guarantee: m(2^d - 1) < (n-1)d."""
    return m * (2**d - 1) < (n - 1) * d


def _tensor_from_index(field: Field, n1: int, d: int, m: int, idx: int) -> Tensor:
    q = field.q
    count = m * n1**d
    coeffs = []
    for _ in range(count):
        coeffs.append(idx % q)
        idx //= q
    return Tensor(field, n1, d, m, coeffs)


def pigeonhole_search(
    field: Field,
    n: int,
    d: int,
    m: int,
    seed: int = 0,
    max_trials: int = 512,
    tensor_cap: int = DEFAULT_TENSOR_CAP,
    cap: int = DEFAULT_CAP,
):
    """Find T over F_q^(n+1) whose annihilated plane-tuple count is within
    the pigeonhole bound.

    When the whole coefficient space fits ``tensor_cap`` the scan order is
    a seeded permutation of all maps, so a qualifying map is certain to be
    found (exhaustive mode).  Otherwise ``max_trials`` seeded samples are
    drawn and the best map is returned along with whether it met the bound.

    Returns (tensor, info dict with tuple_count / bound / exhaustive /
    trials / met).
    """
    if n < 2 or d < 2:
        raise PreconditionError("need n >= 2 and d >= 2")
    if not admissible(n, d, m):
        raise PreconditionError(
            f"inadmissible parameters: m(2^d - 1) = {m * (2 ** d - 1)} "
            f">= (n-1)d = {(n - 1) * d}"
        )
    n1 = n + 1
    q = field.q
    bound = plane_tuple_bound(field, n, d, m)
    total = q ** (m * n1**d)
    rng = SplitMix64(seed)
    if total <= tensor_cap:
        order = rng.shuffle(list(range(total)))
        for trials, idx in enumerate(order, start=1):
            T = _tensor_from_index(field, n1, d, m, idx)
            count = count_plane_tuples(T, limit=bound, cap=cap)
            if count <= bound:
                info = {
                    "tuple_count": count,
                    "tuple_bound": bound,
                    "exhaustive": True,
                    "trials": trials,
                    "met": True,
                }
                return T, info
        raise InvariantViolation(
            "no map met the pigeonhole bound despite the averaging guarantee"
        )
    best_T = None
    best_count = None
    for trials in range(1, max_trials + 1):
        coeffs = tuple(rng.below(q) for _ in range(m * n1**d))
        T = Tensor(field, n1, d, m, coeffs)
        count = count_plane_tuples(T, limit=bound, cap=cap)
        if best_count is None or count < best_count:
            best_T, best_count = T, count
        if count <= bound:
            return T, {
                "tuple_count": count,
                "tuple_bound": bound,
                "exhaustive": False,
                "trials": trials,
                "met": True,
            }
    # best effort: recount without the early-abort limit for honest reporting
    best_count = count_plane_tuples(best_T, cap=cap)
    return best_T, {
        "tuple_count": best_count,
        "tuple_bound": bound,
        "exhaustive": False,
        "trials": max_trials,
        "met": best_count <= bound,
    }


def _plane_points(field: Field, V: Subspace) -> list:
    """The q + 1 projective points of a 2-dimensional subspace."""
    out = []
    r0, r1 = V.rows
    n = V.n
    out.append(_canonical_point(field, r0))
    for c in field.elements():
        v = tuple(field.add(r1[j], field.mul(c, r0[j])) for j in range(n))
        out.append(_canonical_point(field, v))
    return out


def delete_and_verify(
    T: Tensor,
    H: Hypergraph,
    tuples: Sequence[tuple],
    cap: int = DEFAULT_CAP,
):
    """Remove every edge inside P(V_1) x ... x P(V_d) for some annihilated
    plane tuple, then verify the result is box-free (a failure would break
    the span argument and raises).  Returns (hypergraph, deleted_count)."""
    field = T.field
    index_maps = [{v: i for i, v in enumerate(part)} for part in H.parts]
    deleted = set()
    for tup in tuples:
        point_lists = [
            [index_maps[slot][p] for p in _plane_points(field, V)]
            for slot, V in enumerate(tup)
        ]
        for combo in itertools.product(*point_lists):
            if combo in H.edges:
                deleted.add(combo)
    remaining = H.edges - deleted
    H2 = Hypergraph(d=H.d, parts=H.parts, edges=frozenset(remaining))
    free, witness = freeness_check(H2, cap)
    if not free:
        raise InvariantViolation(
            f"deletion left a complete sub-box: {witness}; this would "
            "falsify the span argument"
        )
    return H2, len(deleted)


def copies_span_annihilated_tuples(
    T: Tensor, H: Hypergraph, tuples: Sequence[tuple], cap: int = DEFAULT_CAP
) -> bool:
    """Key step of the deletion argument: every complete 2-per-part sub-box
    of the undeleted hypergraph spans a d-tuple of planes annihilating T,
    and that tuple appears in the enumerated list."""
    field = T.field
    tuple_set = {tuple(V.rows for V in tup) for tup in tuples}
    for copy in box_copies(H, cap):
        spans = []
        for t, (i, j) in enumerate(copy):
            V = Subspace.span(
                field, T.n, [H.parts[t][i], H.parts[t][j]]
            )
            if V.k != 2:  # pragma: no cover - distinct projective points
                raise InvariantViolation("sub-box pair is projectively equal")
            spans.append(V)
        if tuple(V.rows for V in spans) not in tuple_set:
            return False
    return True


@dataclass(frozen=True)
class PipelineResult:
    tensor: Tensor
    before: Hypergraph
    after: Hypergraph
    tuples: tuple
    certificate: BoxCertificate


def box_pipeline(
    field: Field,
    n: int,
    d: int,
    m: int,
    seed: int = 0,
    max_trials: int = 512,
    tensor_cap: int = DEFAULT_TENSOR_CAP,
    cap: int = DEFAULT_CAP,
) -> PipelineResult:
    """Full construction: search a sparse map, build the hypergraph, check
    the edge lower bound, delete annihilated products, verify freeness."""
    T, info = pigeonhole_search(field, n, d, m, seed, max_trials, tensor_cap, cap)
    H = build_hypergraph(T, cap)
    bound = edge_lower_bound(T, H, cap)
    tuples = isotropic_plane_tuples(T, cap)
    if len(tuples) != info["tuple_count"]:  # pragma: no cover
        raise InvariantViolation("tuple enumeration disagrees with the count")
    H2, deleted = delete_and_verify(T, H, tuples, cap)
    cert = BoxCertificate(
        q=field.q,
        n=n,
        d=d,
        m=m,
        seed=seed,
        edge_count_before=H.edge_count,
        edge_count_after=H2.edge_count,
        deleted_count=deleted,
        plane_tuple_count=len(tuples),
        tuple_bound=info["tuple_bound"],
        tuple_bound_ok=info["met"],
        edge_bound=bound.bound,
        edge_bound_ok=bound.ok,
        freeness_verified=True,
        search_exhaustive=info["exhaustive"],
        trials=info["trials"],
    )
    return PipelineResult(T, H, H2, tuple(tuples), cert)
