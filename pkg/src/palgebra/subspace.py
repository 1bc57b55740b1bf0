"""Subspaces of Q^n with exact rational arithmetic.

A subspace is stored by its reduced row echelon basis, which is unique, so
structural equality is subspace equality.  Complement is the orthogonal
complement for the standard dot product and ``a · b`` is the projection of
``a`` onto ``b``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

from .core import PAlgebraModel

__all__ = [
    "Subspace",
    "SubspaceModel",
    "canonicalize",
    "complement",
    "project",
    "span_sum",
    "contains",
    "random_subspace",
    "as_model",
    "parse_subspace",
    "format_subspace",
    "zero_space",
    "full_space",
    "line",
]

Row = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ambient_dim, self.basis))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        return format_subspace(self)

    def __repr__(self):
        return f"Subspace({self.ambient_dim}, {format_subspace(self)})"


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(v) for v in row]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in fr]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _int_rref(rows: list[list[int]], ncols: int, stop: Optional[int] = None):
    """Fraction-free Gauss-Jordan over the integers.

    Returns ``(rows, pivots)``: nonzero rows, each with a nonzero pivot and
    zeros in every other pivot column.  Pivots are sought only among the
    first ``stop`` columns (default: all).
    """
    rows = [r for r in (_primitive(list(r)) for r in rows) if any(r)]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols if stop is None else stop):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                g = gcd(pv, f)
                a, b = pv // g, f // g
                rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _from_int_rows(rows: list[list[int]], ambient_dim: int) -> Subspace:
    reduced, pivots = _int_rref(rows, ambient_dim)
    basis = []
    for row, c in zip(reduced, pivots):
        pv = row[c]
        basis.append(tuple(Fraction(v, pv) for v in row))
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return Subspace(ambient_dim, tuple(basis[i] for i in order))


def canonicalize(rows: Iterable[Sequence], ambient_dim: Optional[int] = None) -> Subspace:
    """Span of ``rows`` in reduced row echelon form (zero rows dropped)."""
    rows = [list(r) for r in rows]
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient_dim is required for an empty row set")
        ambient_dim = len(rows[0])
    for row in rows:
        if len(row) != ambient_dim:
            raise ValueError(f"ragged input: row of length {len(row)} in Q^{ambient_dim}")
    return _from_int_rows([_integer_row(r) for r in rows], ambient_dim)


@lru_cache(maxsize=1 << 16)
def _int_basis(s: Subspace) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(_integer_row(r)) for r in s.basis)


def zero_space(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return canonicalize([[int(i == j) for j in range(n)] for i in range(n)], n)


def line(*coords) -> Subspace:
    return canonicalize([coords])


def _check_dims(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"dimension mismatch: Q^{a.ambient_dim} vs Q^{b.ambient_dim}")


@lru_cache(maxsize=1 << 16)
def complement(s: Subspace) -> Subspace:
    """Orthogonal complement: the null space of the basis matrix."""
    n = s.ambient_dim
    pivots = [next(j for j, v in enumerate(row) if v) for row in s.basis]
    vectors = []
    for f in range(n):
        if f in pivots:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(s.basis, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return canonicalize(vectors, n)


@lru_cache(maxsize=1 << 17)
def project(a: Subspace, b: Subspace) -> Subspace:
    """``a · b``: span of the projections of ``a``'s basis onto ``b``.

    For each basis vector v of a, the coefficients c of its projection in
    b's basis solve ``G c = B v`` with Gram matrix ``G = B Bᵀ``.  The solve
    runs fraction-free; only the span of the images matters, so each image
    is scaled by a common denominator.
    """
    _check_dims(a, b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return zero_space(n)
    if a == b:
        return a
    B = _int_basis(b)
    A = _int_basis(a)
    k = len(B)
    gram = [[sum(x * y for x, y in zip(B[i], B[j])) for j in range(k)] for i in range(k)]
    # augmented [G | B·v_1 ... B·v_m]
    aug = [gram[i] + [sum(x * y for x, y in zip(B[i], v)) for v in A] for i in range(k)]
    reduced, pivots = _int_rref(aug, k + len(A), stop=k)
    if pivots != list(range(k)):
        raise ArithmeticError("singular Gram matrix")
    diag = [reduced[i][i] for i in range(k)]
    lcm = 1
    for d in diag:
        lcm = lcm * abs(d) // gcd(lcm, abs(d))
    scale = [lcm // d for d in diag]
    images = []
    for t in range(len(A)):
        coeff = [scale[i] * reduced[i][k + t] for i in range(k)]
        images.append([sum(coeff[i] * B[i][j] for i in range(k)) for j in range(n)])
    return _from_int_rows(images, n)


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return canonicalize(list(a.basis) + list(b.basis), a.ambient_dim)


def contains(s: Subspace, v: Sequence) -> bool:
    """Membership of a vector, by rank comparison."""
    return span_sum(s, canonicalize([v], s.ambient_dim)).dim == s.dim


def random_subspace(ambient_dim: int, seed=None, rng: Optional[random.Random] = None,
                    entry_range: int = 5, dim: Optional[int] = None) -> Subspace:
    """Random subspace: dimension uniform on 0..n unless ``dim`` is given,
    integer entries in [-r, r].

    Draws that would be linearly dependent on the rows so far are rejected.
    """
    if rng is None:
        rng = random.Random(seed)
    n = ambient_dim
    target = rng.randint(0, n) if dim is None else dim
    if not 0 <= target <= n:
        raise ValueError(f"dim must lie in 0..{n}")
    rows: list[list[int]] = []
    current = zero_space(n)
    while len(rows) < target:
        v = [rng.randint(-entry_range, entry_range) for _ in range(n)]
        nxt = canonicalize(rows + [v], n)
        if nxt.dim == len(rows) + 1:
            rows.append(v)
            current = nxt
    return current


# ---------------------------------------------------------------- literals

_SPAN = re.compile(r"\s*span\s*\{(.*)\}\s*$", re.S)
_VEC = re.compile(r"\(([^()]*)\)")


def parse_subspace(text: str, ambient_dim: Optional[int] = None) -> Subspace:
    """Parse ``span{(1,0,0),(0,1/2,0)}``; ``span{}`` needs ``ambient_dim``."""
    m = _SPAN.match(text)
    if not m:
        raise ValueError(f"not a subspace literal: {text!r}")
    body = m.group(1).strip()
    vectors = []
    if body:
        pieces = _VEC.findall(body)
        leftover = _VEC.sub("", body).replace(",", "").strip()
        if not pieces or leftover:
            raise ValueError(f"malformed vector list in {text!r}")
        for piece in pieces:
            vectors.append([Fraction(x.strip()) for x in piece.split(",")])
    if ambient_dim is None:
        if not vectors:
            raise ValueError("span{} needs an explicit ambient dimension")
        ambient_dim = len(vectors[0])
    return canonicalize(vectors, ambient_dim)


def format_subspace(s: Subspace) -> str:
    vecs = ",".join("(" + ",".join(str(x) for x in row) + ")" for row in s.basis)
    return "span{" + vecs + "}"


# ------------------------------------------------------------------- model

class SubspaceModel(PAlgebraModel):
    """Subspaces of Q^n as a P-algebra; the carrier is infinite."""

    def __init__(self, ambient_dim: int):
        if ambient_dim < 1:
            raise ValueError("ambient_dim must be at least 1")
        self.ambient_dim = ambient_dim
        self.name = f"subspace:dim={ambient_dim}"
        self._zero = zero_space(ambient_dim)

    def __reduce__(self):
        return (SubspaceModel, (self.ambient_dim,))

    def __eq__(self, other):
        return isinstance(other, SubspaceModel) and other.ambient_dim == self.ambient_dim

    def __hash__(self):
        return hash(("subspace", self.ambient_dim))

    def zero(self):
        return self._zero

    def comp(self, x):
        return complement(x)

    def dot(self, x, y):
        return project(x, y)

    def sample(self, rng):
        return random_subspace(self.ambient_dim, rng=rng)

    def format(self, x):
        return format_subspace(x)

    def parse(self, text):
        return parse_subspace(text, self.ambient_dim)

    def atom_test(self, x):
        return x.dim == 1

    def atom_below(self, x):
        if not x.basis:
            return None
        return canonicalize([x.basis[0]], self.ambient_dim)

    def random_atom(self, rng):
        n = self.ambient_dim
        while True:
            v = [rng.randint(-5, 5) for _ in range(n)]
            if any(v):
                return canonicalize([v], n)

    def glb_direct(self, items):
        acc = full_space(self.ambient_dim)
        for x in items:
            acc = complement(span_sum(complement(acc), complement(x)))
        return acc

    def below_probe(self, x):
        """Deterministic sample of the down-set: 0, x, a line of x, and
        the projections of the coordinate axes onto x."""
        n = self.ambient_dim
        out = [self._zero, x]
        a = self.atom_below(x)
        if a is not None:
            out.append(a)
        for i in range(n):
            axis = canonicalize([[int(i == j) for j in range(n)]], n)
            out.append(project(axis, x))
        return out

    def lub_direct(self, items):
        acc = self._zero
        for x in items:
            acc = span_sum(acc, x)
        return acc


def as_model(ambient_dim: int) -> SubspaceModel:
    return SubspaceModel(ambient_dim)

