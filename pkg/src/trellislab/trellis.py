"""Tail-biting trellis data model: constructors, behavior, duality, isomorphism.

A trellis of length m has symbol spaces A_i, state spaces S_i, and constraint
codes C_i inside S_i x A_i x S_{i+1}, all indexed mod m.  Constraint-code
coordinates are always ordered (state-in | symbol | state-out).  Behavior and
code subspaces use the coordinate order (all symbols a_0..a_{m-1}, then all
states s_0..s_{m-1}).

Trellis values are immutable; the attached cache only memoizes derived
immutable values (behavior, dual, fragments), so sharing across threads is
safe for readers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product

from .galois import (
    FieldSpec,
    Mat,
    Subspace,
    kernel,
    negate_columns,
    orthogonal,
    project,
    rank,
)


@dataclass(frozen=True)
class Span:
    """A possibly circular interval [start, start+length) on the axis Z_m.

    length m means the whole axis starting at `start`; length 0 is the empty
    interval at `start` (the single cut edge S_start).
    """

    start: int
    length: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("axis length must be positive")
        if not 0 <= self.start < self.m:
            raise ValueError("span start out of range")
        if not 0 <= self.length <= self.m:
            raise ValueError("span length out of range")

    def times(self) -> list[int]:
        """Constraint/symbol indices covered by the interval."""
        return [(self.start + u) % self.m for u in range(self.length)]

    def interior(self) -> list[int]:
        """State indices strictly inside the interval."""
        return [(self.start + u) % self.m for u in range(1, self.length)]

    @property
    def end(self) -> int:
        return (self.start + self.length) % self.m

    def complement(self) -> "Span":
        return Span(self.end, self.m - self.length, self.m)

    def covers(self, index: int) -> bool:
        return (index - self.start) % self.m < self.length


@dataclass(frozen=True)
class Generator:
    """A codeword together with a circular span covering its support."""

    word: tuple[int, ...]
    span: Span


@dataclass(frozen=True)
class Trellis:
    field: FieldSpec
    m: int
    symbol_dims: tuple[int, ...]
    state_dims: tuple[int, ...]
    constraints: tuple[Subspace, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("trellis length must be at least 1")
        if len(self.symbol_dims) != self.m or len(self.state_dims) != self.m:
            raise ValueError("dimension lists must have length m")
        if len(self.constraints) != self.m:
            raise ValueError("need one constraint code per time index")

    def constraint_ambient(self, i: int) -> int:
        return self.state_dims[i] + self.symbol_dims[i] + self.state_dims[(i + 1) % self.m]

    def symbol_total(self) -> int:
        return sum(self.symbol_dims)

    def state_total(self) -> int:
        return sum(self.state_dims)

    def symbol_offset(self, i: int) -> int:
        return sum(self.symbol_dims[:i])

    def state_offset(self, i: int) -> int:
        return self.symbol_total() + sum(self.state_dims[:i])

    def constraint_dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.constraints)


def validate(t: Trellis) -> list[str]:
    """Report-style invariant check; empty list means valid."""
    problems = []
    for i, c in enumerate(t.constraints):
        want = t.constraint_ambient(i)
        if c.ambient_dim != want:
            problems.append(
                f"constraint {i}: ambient dim {c.ambient_dim}, expected {want}"
            )
        if c.field != t.field:
            problems.append(f"constraint {i}: field mismatch")
    for i, d in enumerate(t.state_dims):
        if d < 0:
            problems.append(f"state dim {i} negative")
    for i, d in enumerate(t.symbol_dims):
        if d < 0:
            problems.append(f"symbol dim {i} negative")
    return problems


def elementary(field: FieldSpec, g: Generator, symbol_dims: tuple[int, ...]) -> Trellis:
    """One-dimensional trellis carrying a single codeword on its span.

    States are one-dimensional exactly at the interior times of the span;
    the path leaves the zero state on the branch at the span start and
    returns to zero at the span end.
    """
    span = g.span
    m = span.m
    if len(symbol_dims) != m:
        raise ValueError("symbol dims must have length m")
    if span.length == 0:
        raise ValueError("generator span must be nonempty")
    total = sum(symbol_dims)
    if len(g.word) != total:
        raise ValueError("word length does not match symbol dims")
    if not any(g.word):
        raise ValueError("generator word must be nonzero")
    offsets = [sum(symbol_dims[:i]) for i in range(m)]
    for i in range(m):
        block = g.word[offsets[i]:offsets[i] + symbol_dims[i]]
        if any(block) and not span.covers(i):
            raise ValueError(f"word has support at time {i} outside its span")
    interior = set(span.interior())
    state_dims = tuple(1 if i in interior else 0 for i in range(m))
    constraints = []
    for i in range(m):
        amb = state_dims[i] + symbol_dims[i] + state_dims[(i + 1) % m]
        if not span.covers(i):
            constraints.append(Subspace.zero(field, amb))
            continue
        row = []
        if state_dims[i]:
            row.append(1)
        row.extend(g.word[offsets[i]:offsets[i] + symbol_dims[i]])
        if state_dims[(i + 1) % m]:
            row.append(1)
        constraints.append(Subspace.span(field, amb, [row]))
    return Trellis(field, m, tuple(symbol_dims), state_dims, tuple(constraints))


def product(trellises: list[Trellis] | tuple[Trellis, ...]) -> Trellis:
    """Product trellis: state spaces direct-sum, symbols add."""
    if not trellises:
        raise ValueError("product of no trellises")
    first = trellises[0]
    for t in trellises[1:]:
        if t.m != first.m or t.field != first.field or t.symbol_dims != first.symbol_dims:
            raise ValueError("product requires equal length, field, and symbol dims")
    m = first.m
    field_ = first.field
    adims = first.symbol_dims
    sdims = tuple(sum(t.state_dims[i] for t in trellises) for i in range(m))
    constraints = []
    for i in range(m):
        nxt = (i + 1) % m
        amb = sdims[i] + adims[i] + sdims[nxt]
        rows = []
        left_off = 0
        right_off = 0
        for t in trellises:
            dl = t.state_dims[i]
            da = adims[i]
            dr = t.state_dims[nxt]
            for b in t.constraints[i].basis.entries:
                v = [0] * amb
                for k in range(dl):
                    v[left_off + k] = b[k]
                for k in range(da):
                    v[sdims[i] + k] = b[dl + k]
                for k in range(dr):
                    v[sdims[i] + da + right_off + k] = b[dl + da + k]
                rows.append(v)
            left_off += dl
            right_off += dr
        constraints.append(Subspace.span(field_, amb, rows))
    return Trellis(field_, m, adims, sdims, tuple(constraints))


def behavior(t: Trellis) -> Subspace:
    """All valid trajectories, as a subspace of A x S.

    Each constraint code is imposed through its orthogonal complement as a
    block of parity checks on the global configuration vector.
    """
    cached = t._cache.get("behavior")
    if cached is not None:
        return cached
    problems = validate(t)
    if problems:
        raise ValueError("malformed trellis: " + "; ".join(problems))
    n = t.symbol_total() + t.state_total()
    rows = []
    for i in range(t.m):
        nxt = (i + 1) % t.m
        checks = orthogonal(t.constraints[i])
        dl = t.state_dims[i]
        da = t.symbol_dims[i]
        dr = t.state_dims[nxt]
        for h in checks.basis.entries:
            row = [0] * n
            off = t.state_offset(i)
            for k in range(dl):
                row[off + k] = (row[off + k] + h[k]) % t.field.p
            off = t.symbol_offset(i)
            for k in range(da):
                row[off + k] = (row[off + k] + h[dl + k]) % t.field.p
            off = t.state_offset(nxt)
            for k in range(dr):
                row[off + k] = (row[off + k] + h[dl + da + k]) % t.field.p
            rows.append(row)
    result = kernel(Mat.from_rows(t.field, n, rows))
    t._cache["behavior"] = result
    return result


def realized_code(t: Trellis) -> Subspace:
    """Symbol projection of the behavior."""
    cached = t._cache.get("code")
    if cached is not None:
        return cached
    b = behavior(t)
    result = project(b, list(range(t.symbol_total())))
    t._cache["code"] = result
    return result


def dualize(t: Trellis) -> Trellis:
    """Dual trellis: orthogonal constraint codes with the sign of each
    outgoing state variable inverted.  An exact involution."""
    cached = t._cache.get("dual")
    if cached is not None:
        return cached
    constraints = []
    for i in range(t.m):
        dl = t.state_dims[i]
        da = t.symbol_dims[i]
        dr = t.state_dims[(i + 1) % t.m]
        perp = orthogonal(t.constraints[i])
        flipped = negate_columns(perp, range(dl + da, dl + da + dr))
        constraints.append(flipped)
    result = Trellis(t.field, t.m, t.symbol_dims, t.state_dims, tuple(constraints))
    result._cache["dual"] = t
    t._cache["dual"] = result
    return result


@dataclass(frozen=True)
class IsoResult:
    """Outcome of the bounded isomorphism search.

    `isomorphic` is None when the search was abandoned above the dimension
    cap; otherwise a witness list of invertible state maps is included for
    positive answers.
    """

    isomorphic: bool | None
    witness: tuple[Mat, ...] | None = None
    note: str = ""


_GL_CACHE: dict[tuple[int, int], list[tuple[tuple[int, ...], ...]]] = {}


def _general_linear(p: int, n: int) -> list[tuple[tuple[int, ...], ...]]:
    key = (p, n)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    out = []
    if n == 0:
        out.append(())
    else:
        field = FieldSpec(p)
        for flat in iter_product(range(p), repeat=n * n):
            rows = tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))
            if rank(Mat(field, n, rows)) == n:
                out.append(rows)
    _GL_CACHE[key] = out
    return out


def _map_constraint(c: Subspace, left: tuple, right: tuple, dl: int, da: int, dr: int) -> Subspace:
    p = c.field.p
    rows = []
    for b in c.basis.entries:
        v = [0] * c.ambient_dim
        for j in range(dl):
            v[j] = sum(b[k] * left[k][j] for k in range(dl)) % p
        for j in range(da):
            v[dl + j] = b[dl + j]
        for j in range(dr):
            v[dl + da + j] = sum(b[dl + da + k] * right[k][j] for k in range(dr)) % p
        rows.append(v)
    return Subspace.span(c.field, c.ambient_dim, rows)


def is_isomorphic(a: Trellis, b: Trellis, dim_cap: int = 3, p_cap: int = 3) -> IsoResult:
    """Decide linear trellis isomorphism by exhaustive search over invertible
    state maps, with pruning by dimension profiles.

    Above the cap (any state dim > dim_cap or p > p_cap) the search is
    abandoned and reported as undecided rather than silently false.
    """
    if a.m != b.m or a.field != b.field or a.symbol_dims != b.symbol_dims:
        raise ValueError("isomorphism requires equal length, field, and symbol dims")
    if a.state_dims != b.state_dims:
        return IsoResult(False, note="state dimension profiles differ")
    if a.constraint_dims() != b.constraint_dims():
        return IsoResult(False, note="constraint dimension profiles differ")
    if max(a.state_dims, default=0) > dim_cap or a.field.p > p_cap:
        return IsoResult(None, note="search abandoned above the dimension cap")
    m = a.m
    p = a.field.p
    start = min(range(m), key=lambda i: a.state_dims[i])
    order = [(start + k) % m for k in range(m)]
    groups = {i: _general_linear(p, a.state_dims[i]) for i in set(order)}

    def extend(pos: int, maps: dict[int, tuple]) -> dict[int, tuple] | None:
        if pos == m:
            return maps
        i = order[pos]
        nxt = (i + 1) % m
        dl, da, dr = a.state_dims[i], a.symbol_dims[i], a.state_dims[nxt]
        left = maps[i]
        candidates = [maps[nxt]] if nxt in maps else groups[nxt]
        for cand in candidates:
            mapped = _map_constraint(a.constraints[i], left, cand, dl, da, dr)
            if mapped != b.constraints[i]:
                continue
            added = nxt not in maps
            if added:
                maps[nxt] = cand
            got = extend(pos + 1, maps)
            if got is not None:
                return got
            if added:
                del maps[nxt]
        return None

    for phi0 in groups[start]:
        got = extend(0, {start: phi0})
        if got is not None:
            field_ = a.field
            witness = tuple(
                Mat(field_, a.state_dims[i], got[i]) for i in range(m)
            )
            return IsoResult(True, witness=witness)
    return IsoResult(False)


def time_reversed(t: Trellis) -> Trellis:
    """Reverse the time axis: state spaces re-indexed i -> m-i, constraints
    re-indexed and their state blocks swapped.  An exact involution."""
    m = t.m
    sdims = tuple(t.state_dims[(m - i) % m] for i in range(m))
    adims = tuple(t.symbol_dims[m - 1 - i] for i in range(m))
    constraints = []
    for i in range(m):
        src = m - 1 - i
        c = t.constraints[src]
        dl = t.state_dims[src]
        da = t.symbol_dims[src]
        dr = t.state_dims[(src + 1) % m]
        rows = []
        for b in c.basis.entries:
            rows.append(list(b[dl + da:]) + list(b[dl:dl + da]) + list(b[:dl]))
        constraints.append(Subspace.span(t.field, dr + da + dl, rows))
    return Trellis(t.field, m, adims, sdims, tuple(constraints))
