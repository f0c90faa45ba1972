"""Exact linear algebra over prime fields GF(p).

Matrices are small and dense; entries are plain Python ints reduced mod p.
Subspaces are kept in reduced row-echelon form so that two subspaces are
equal exactly when their basis matrices are identical entry-wise.  This
canonical form is what makes every duality statement in the rest of the
library testable by plain equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p)."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"field modulus must be prime, got {self.p}")

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


@dataclass(frozen=True)
class Mat:
    """A dense matrix over GF(p), row-major, entries reduced mod p."""

    field: FieldSpec
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        p = self.field.p
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for x in row:
                if not 0 <= x < p:
                    raise ValueError(f"entry {x} not reduced mod {p}")

    @classmethod
    def from_rows(cls, field: FieldSpec, cols: int, rows: Iterable[Sequence[int]]) -> "Mat":
        p = field.p
        return cls(field, cols, tuple(tuple(x % p for x in row) for row in rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls(field, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Mat":
        if not self.entries:
            return Mat(self.field, 0, tuple(() for _ in range(self.cols)))
        return Mat(self.field, self.rows, tuple(zip(*self.entries)))

    def times(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        p = self.field.p
        ot = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in ot)
            for row in self.entries
        )
        return Mat(self.field, other.cols, out)


def _rref_rows(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """In-place Gaussian elimination; returns (nonzero reduced rows, pivot cols)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][c] % p
        if lead != 1:
            inv = pow(lead, p - 2, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rr = rows[r]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(m: Mat) -> Mat:
    """Canonical reduced row-echelon form with zero rows removed."""
    reduced, _ = _rref_rows(m.row_list(), m.field.p)
    return Mat(m.field, m.cols, tuple(tuple(r) for r in reduced))


def rank(m: Mat) -> int:
    _, pivots = _rref_rows(m.row_list(), m.field.p)
    return len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of GF(p)^n held as a canonical RREF basis.

    Equality is entry-wise equality of the basis matrices, which by the
    RREF normalization coincides with equality of subspaces.
    """

    field: FieldSpec
    ambient_dim: int
    basis: Mat

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width does not match ambient dimension")
        if self.basis.entries != rref(self.basis).entries:
            raise ValueError("basis is not in canonical reduced form")

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        m = Mat.from_rows(field, ambient_dim, vectors)
        return cls(field, ambient_dim, rref(m))

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Mat(field, ambient_dim, ()))

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Mat.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def pivots(self) -> list[int]:
        piv = []
        for row in self.basis.entries:
            piv.append(next(i for i, x in enumerate(row) if x))
        return piv

    def contains(self, vector: Sequence[int]) -> bool:
        p = self.field.p
        v = [x % p for x in vector]
        if len(v) != self.ambient_dim:
            raise ValueError("vector has wrong length")
        for row, c in zip(self.basis.entries, self.pivots()):
            f = v[c]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return not any(v)

    def coords(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of a member vector over the RREF basis (pivot read-off)."""
        if not self.contains(vector):
            raise ValueError("vector is not in the subspace")
        p = self.field.p
        return tuple(vector[c] % p for c in self.pivots())

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.entries)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All p^dim members, in coefficient-lexicographic order."""
        p = self.field.p
        rows = self.basis.entries
        for coeffs in iter_product(range(p), repeat=self.dim):
            v = [0] * self.ambient_dim
            for c, row in zip(coeffs, rows):
                if c:
                    v = [(x + c * y) % p for x, y in zip(v, row)]
            yield tuple(v)

    def sorted_vectors(self) -> list[tuple[int, ...]]:
        return sorted(self.vectors())


def kernel(m: Mat) -> Subspace:
    """Right kernel {x : m x^T = 0}, returned as a subspace of row vectors."""
    p = m.field.p
    reduced, pivots = _rref_rows(m.row_list(), p)
    n = m.cols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(reduced, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    return Subspace.span(m.field, n, basis)


def orthogonal(s: Subspace) -> Subspace:
    """Orthogonal complement under the standard inner product."""
    return kernel(s.basis)


def lattice(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two subspaces of a common ambient space.

    The sum is the row space of the stacked bases.  The intersection uses
    the kernel construction: coefficient pairs (u, v) with u A + v B = 0
    give intersection elements u A.
    """
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise ValueError("ambient mismatch")
    field, n = a.field, a.ambient_dim
    total = Subspace.span(field, n, list(a.basis.entries) + list(b.basis.entries))
    stacked = Mat.from_rows(field, n, list(a.basis.entries) + list(b.basis.entries))
    coeffs = kernel(stacked.transpose())
    p = field.p
    inter_vecs = []
    for cv in coeffs.basis.entries:
        u = cv[: a.dim]
        v = [0] * n
        for c, row in zip(u, a.basis.entries):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, row)]
        inter_vecs.append(v)
    inter = Subspace.span(field, n, inter_vecs)
    return total, inter


def complement(s: Subspace, within: Subspace) -> Subspace:
    """A deterministic direct complement of s inside `within`.

    Extends s's basis by the rows of `within`'s canonical basis in order,
    keeping each row that is independent of what has been collected so far.
    The span of the kept rows c satisfies c + s = within and c ∩ s = 0.
    """
    if s.field != within.field or s.ambient_dim != within.ambient_dim:
        raise ValueError("ambient mismatch")
    if not within.contains_space(s):
        raise ValueError("subspace is not contained in the enclosing space")
    field = s.field
    collected = list(s.basis.entries)
    added: list[tuple[int, ...]] = []
    current_rank = s.dim
    for row in within.basis.entries:
        trial = Mat.from_rows(field, s.ambient_dim, collected + [row])
        if rank(trial) > current_rank:
            collected.append(row)
            added.append(row)
            current_rank += 1
        if current_rank == within.dim:
            break
    return Subspace.span(field, s.ambient_dim, added)


def project(s: Subspace, cols: Sequence[int]) -> Subspace:
    """Projection onto the listed coordinates (in the listed order)."""
    rows = [[row[c] for c in cols] for row in s.basis.entries]
    return Subspace.span(s.field, len(cols), rows)


def coordinate_space(field: FieldSpec, n: int, cols: Sequence[int]) -> Subspace:
    """Span of the unit vectors at the listed coordinates."""
    vecs = []
    for c in cols:
        v = [0] * n
        v[c] = 1
        vecs.append(v)
    return Subspace.span(field, n, vecs)


def cross_section(s: Subspace, cols: Sequence[int]) -> Subspace:
    """Cross-section on the listed coordinates: members vanishing elsewhere,
    restricted to those coordinates."""
    axis = coordinate_space(s.field, s.ambient_dim, cols)
    _, inter = lattice(s, axis)
    return project(inter, cols)


def apply_map(s: Subspace, m: Mat) -> Subspace:
    """Image {x · m : x in s}."""
    if m.rows != s.ambient_dim:
        raise ValueError("map shape mismatch")
    return Subspace.span(s.field, m.cols, s.basis.times(m).entries)


def embed(s: Subspace, ambient_dim: int, positions: Sequence[int]) -> Subspace:
    """Embed into a larger space by scattering coordinates to `positions`."""
    rows = []
    for row in s.basis.entries:
        v = [0] * ambient_dim
        for x, pos in zip(row, positions):
            v[pos] = x
        rows.append(v)
    return Subspace.span(s.field, ambient_dim, rows)


def negate_columns(s: Subspace, cols: Sequence[int]) -> Subspace:
    """Apply the diagonal sign map flipping the listed coordinates."""
    p = s.field.p
    colset = set(cols)
    rows = [
        [(-x) % p if i in colset else x for i, x in enumerate(row)]
        for row in s.basis.entries
    ]
    return Subspace.span(s.field, s.ambient_dim, rows)


def direct_sum(a: Subspace, b: Subspace) -> Subspace:
    """External direct sum on concatenated coordinates."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    n = a.ambient_dim + b.ambient_dim
    rows = [list(r) + [0] * b.ambient_dim for r in a.basis.entries]
    rows += [[0] * a.ambient_dim + list(r) for r in b.basis.entries]
    return Subspace.span(a.field, n, rows)


def invert(m: Mat) -> Mat:
    """Inverse of a square matrix; raises if singular."""
    if m.rows != m.cols:
        raise ValueError("only square matrices have inverses")
    n = m.rows
    p = m.field.p
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m.entries)]
    reduced, pivots = _rref_rows(aug, p)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat.from_rows(m.field, n, [row[n:] for row in reduced])


def solve_particular(m: Mat, rhs: Sequence[int]) -> tuple[int, ...] | None:
    """One solution x of m x^T = rhs^T, or None if inconsistent."""
    p = m.field.p
    aug = [list(row) + [rhs[i] % p] for i, row in enumerate(m.entries)]
    reduced, pivots = _rref_rows(aug, p)
    n = m.cols
    x = [0] * n
    for row, c in zip(reduced, pivots):
        if c == n:
            return None
        x[c] = row[n]
    return tuple(x)
