"""Dense multilinear and alternating maps (F^n)^d -> F^m.

A ``Tensor`` stores all m * n^d coefficients, index order
(output coordinate, i_1, ..., i_d) row-major.  An ``AltTensor`` stores one
coefficient per strictly increasing index tuple i_1 < ... < i_d (m * C(n,d)
total), which encodes alternation exactly -- including characteristic 2,
where mere antisymmetry would be weaker.

Coefficients and vector entries are field element integers (see
:mod:`multilin.field`); vectors are tuples of length n.
"""

from __future__ import annotations

import functools
import itertools
from math import comb
from typing import Iterator, Sequence

from .errors import PreconditionError
from .field import Field, embedding_map
from .prng import SplitMix64


@functools.lru_cache(maxsize=None)
def increasing_tuples(n: int, d: int) -> tuple:
    """All strictly increasing d-tuples over range(n), lexicographic."""
    return tuple(itertools.combinations(range(n), d))


@functools.lru_cache(maxsize=None)
def _tuple_pos(n: int, d: int) -> dict:
    return {t: i for i, t in enumerate(increasing_tuples(n, d))}


@functools.lru_cache(maxsize=None)
def _signed_perms(d: int) -> tuple:
    out = []
    for perm in itertools.permutations(range(d)):
        inversions = sum(
            1 for a in range(d) for b in range(a + 1, d) if perm[a] > perm[b]
        )
        out.append((1 if inversions % 2 == 0 else -1, perm))
    return tuple(out)


def all_vectors(field: Field, n: int) -> Iterator[tuple]:
    """All q^n coordinate vectors, lexicographic in element order."""
    return itertools.product(field.elements(), repeat=n)


def _det(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a small square matrix by signed permutation expansion."""
    d = len(rows)
    if d == 0:
        return field.one
    mul = field.mul
    acc = 0
    for sign, perm in _signed_perms(d):
        prod = field.one
        for i in range(d):
            prod = mul(prod, rows[i][perm[i]])
            if prod == 0:
                break
        if prod:
            acc = field.add(acc, prod if sign > 0 else field.neg(prod))
    return acc


def _contract_first(field: Field, flat, m: int, n: int, d: int, v) -> list:
    """Contract the first argument slot against vector v."""
    stride = n ** (d - 1)
    mul = field.mul_func()
    add = field.add_func()
    out = []
    for o in range(m):
        base = o * n * stride
        for r in range(stride):
            acc = 0
            for i in range(n):
                w = v[i]
                if w:
                    c = flat[base + i * stride + r]
                    if c:
                        acc = add(acc, mul(c, w))
            out.append(acc)
    return out


def _contract_slot(field: Field, flat, m: int, n: int, d: int, v, slot: int) -> list:
    if slot == 0:
        return _contract_first(field, flat, m, n, d, v)
    left = n**slot
    right = n ** (d - 1 - slot)
    mul = field.mul_func()
    add = field.add_func()
    out = []
    block = n**d
    for o in range(m):
        for l in range(left):
            base = o * block + l * n * right
            for r in range(right):
                acc = 0
                for j in range(n):
                    w = v[j]
                    if w:
                        c = flat[base + j * right + r]
                        if c:
                            acc = add(acc, mul(c, w))
                out.append(acc)
    return out


class Tensor:
    """Order-d multilinear map as a dense coefficient hypermatrix."""

    __slots__ = ("field", "n", "d", "m", "coeffs")

    kind = "hom"

    def __init__(self, field: Field, n: int, d: int, m: int, coeffs: Sequence[int]):
        if n < 0 or d < 1 or m < 1:
            raise PreconditionError("need n >= 0, d >= 1, m >= 1")
        coeffs = tuple(coeffs)
        if len(coeffs) != m * n**d:
            raise PreconditionError(
                f"expected {m * n ** d} coefficients, got {len(coeffs)}"
            )
        self.field = field
        self.n = n
        self.d = d
        self.m = m
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field: Field, n: int, d: int, m: int) -> "Tensor":
        return cls(field, n, d, m, (0,) * (m * n**d))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and (self.field, self.n, self.d, self.m, self.coeffs)
            == (other.field, other.n, other.d, other.m, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.d, self.m, self.coeffs))

    def __repr__(self):
        return f"Tensor(q={self.field.q}, n={self.n}, d={self.d}, m={self.m})"

    def contract(self, v: Sequence[int], slot: int = 0) -> "Tensor":
        """Plug vector v into one argument slot; order drops by one."""
        if self.d == 1:
            raise PreconditionError("cannot contract an order-1 map to order 0")
        flat = _contract_slot(
            self.field, self.coeffs, self.m, self.n, self.d, v, slot
        )
        return Tensor(self.field, self.n, self.d - 1, self.m, flat)

    def apply_last(self, v: Sequence[int]) -> tuple:
        """Value of an order-1 map, as a vector in F^m."""
        assert self.d == 1
        flat = _contract_first(self.field, self.coeffs, self.m, self.n, 1, v)
        return tuple(flat)

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "kind": "hom",
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "coeffs": list(self.coeffs),
        }


class AltTensor:
    """Order-d alternating multilinear map on strictly increasing tuples."""

    __slots__ = ("field", "n", "d", "m", "coeffs")

    kind = "alt"

    def __init__(self, field: Field, n: int, d: int, m: int, coeffs: Sequence[int]):
        if n < 0 or d < 1 or m < 1:
            raise PreconditionError("need n >= 0, d >= 1, m >= 1")
        coeffs = tuple(coeffs)
        if len(coeffs) != m * comb(n, d):
            raise PreconditionError(
                f"expected {m * comb(n, d)} coefficients, got {len(coeffs)}"
            )
        self.field = field
        self.n = n
        self.d = d
        self.m = m
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field: Field, n: int, d: int, m: int) -> "AltTensor":
        return cls(field, n, d, m, (0,) * (m * comb(n, d)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, AltTensor)
            and (self.field, self.n, self.d, self.m, self.coeffs)
            == (other.field, other.n, other.d, other.m, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.d, self.m, self.coeffs))

    def __repr__(self):
        return f"AltTensor(q={self.field.q}, n={self.n}, d={self.d}, m={self.m})"

    def coeff(self, out: int, idx: tuple) -> int:
        pos = _tuple_pos(self.n, self.d)[idx]
        return self.coeffs[out * comb(self.n, self.d) + pos]

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "kind": "alt",
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "coeffs": list(self.coeffs),
        }


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def tensor_eval(T: Tensor, vectors: Sequence[Sequence[int]]) -> tuple:
    """T(v_1, ..., v_d) as a vector in F^m."""
    if len(vectors) != T.d:
        raise PreconditionError(f"expected {T.d} argument vectors")
    for v in vectors:
        if len(v) != T.n:
            raise PreconditionError("argument vector has wrong length")
    flat = T.coeffs
    d = T.d
    for v in vectors[:-1]:
        flat = _contract_first(T.field, flat, T.m, T.n, d, v)
        d -= 1
    return tuple(_contract_first(T.field, flat, T.m, T.n, 1, vectors[-1]))


def alt_eval(T: AltTensor, vectors: Sequence[Sequence[int]]) -> tuple:
    """Alternating evaluation: sum over increasing tuples of coefficient
    times the minor determinant of the argument matrix."""
    if len(vectors) != T.d:
        raise PreconditionError(f"expected {T.d} argument vectors")
    for v in vectors:
        if len(v) != T.n:
            raise PreconditionError("argument vector has wrong length")
    field = T.field
    tuples = increasing_tuples(T.n, T.d)
    ntup = len(tuples)
    out = []
    for o in range(T.m):
        base = o * ntup
        acc = 0
        for pos, idx in enumerate(tuples):
            c = T.coeffs[base + pos]
            if c:
                minor = [[v[j] for j in idx] for v in vectors]
                det = _det(field, minor)
                if det:
                    acc = field.add(acc, field.mul(c, det))
        out.append(acc)
    return tuple(out)


def expand(T: AltTensor) -> Tensor:
    """Dense Tensor with the same evaluations: sign(perm) * coefficient on
    permuted increasing tuples, zero on repeated indices."""
    n, d, m = T.n, T.d, T.m
    field = T.field
    flat = [0] * (m * n**d)
    tuples = increasing_tuples(n, d)
    ntup = len(tuples)
    strides = [n ** (d - 1 - j) for j in range(d)]
    for o in range(m):
        for pos, idx in enumerate(tuples):
            c = T.coeffs[o * ntup + pos]
            if not c:
                continue
            neg_c = field.neg(c)
            for sign, perm in _signed_perms(d):
                flat_idx = o * n**d + sum(
                    idx[perm[j]] * strides[j] for j in range(d)
                )
                flat[flat_idx] = c if sign > 0 else neg_c
    return Tensor(field, n, d, m, flat)


# ---------------------------------------------------------------------------
# restriction to subspaces
# ---------------------------------------------------------------------------


def _rows_of(space) -> tuple:
    rows = getattr(space, "rows", None)
    if rows is None:
        rows = tuple(space)
    return rows


def restrict_zero(T: Tensor, spaces: Sequence) -> bool:
    """True iff T vanishes on V_1 x ... x V_d.  By multilinearity it is
    enough to test all tuples of basis vectors."""
    if len(spaces) != T.d:
        raise PreconditionError(f"expected {T.d} subspaces")
    blocks = [T.coeffs]
    order = T.d
    for space in spaces:
        rows = _rows_of(space)
        for r in rows:
            if len(r) != T.n:
                raise PreconditionError("subspace ambient dimension mismatch")
        if not rows:
            return True  # zero subspace annihilates everything
        blocks = [
            _contract_first(T.field, b, T.m, T.n, order, r)
            for b in blocks
            for r in rows
        ]
        order -= 1
    return all(c == 0 for b in blocks for c in b)


def alt_restricts_zero(T: AltTensor, space) -> bool:
    """True iff the alternating map vanishes on the subspace.  Subspaces of
    dimension below d are isotropic automatically (alternation kills any
    tuple with a linear dependence)."""
    rows = _rows_of(space)
    if len(rows) < T.d:
        return True
    zero = (0,) * T.m
    for idx in itertools.combinations(range(len(rows)), T.d):
        if alt_eval(T, [rows[i] for i in idx]) != zero:
            return False
    return True


# ---------------------------------------------------------------------------
# base change and sampling
# ---------------------------------------------------------------------------


def base_change(T, target: Field):
    """Same tensor with coefficients embedded into an extension field."""
    phi = embedding_map(T.field, target)
    cls = type(T)
    return cls(target, T.n, T.d, T.m, tuple(phi(c) for c in T.coeffs))


def random_tensor(
    field: Field, n: int, d: int, m: int, kind: str = "hom", seed: int = 0
):
    """Uniform coefficients from the seeded splitmix64 stream, drawn in
    storage order.  Same seed gives a bit-identical tensor everywhere."""
    rng = SplitMix64(seed)
    if kind == "hom":
        count = m * n**d
        cls = Tensor
    elif kind == "alt":
        count = m * comb(n, d)
        cls = AltTensor
    else:
        raise PreconditionError(f"kind must be 'hom' or 'alt', got {kind!r}")
    coeffs = tuple(rng.below(field.q) for _ in range(count))
    return cls(field, n, d, m, coeffs)


def tensor_from_dict(data: dict) -> "Tensor | AltTensor":
    field = Field.from_dict(data["field"])
    cls = {"hom": Tensor, "alt": AltTensor}.get(data.get("kind"))
    if cls is None:
        raise PreconditionError(f"unknown tensor kind {data.get('kind')!r}")
    return cls(field, data["n"], data["d"], data["m"], data["coeffs"])
